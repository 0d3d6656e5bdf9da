//! `fiedler` command-line front end.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{default_bipartition, sweep, sweep_csv, ClassDescriptor, SweepConfig};
use crate::error::Error;
use crate::fmt::round_json;
use crate::graph::{complete_join, generate, Family, Graph};
use crate::io::{read_edge_list, write_edge_list};
use crate::separators::{four_point_solve, sep_upper_bound, Strategy};
use crate::shallow::{
    bipdens2_check, bipdens_check, contains_k_sub, grad_report, greedy_half_minor, mad, CheckStatus, GradBounds,
    KSubResult, SearchBudget, DEFAULT_NODE_BUDGET,
};
use crate::spectra::{
    closed_form_lambda2, fiedler_vector, join_lambda2, lambda2_or_infinite, laplacian, laplacian_spectrum,
    rayleigh_quotient, Embedding, EIGEN_TOL,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_EIGEN: i32 = 3;
pub const EXIT_NO_SPLIT: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "fiedler", version, about = "Fiedler values, separator bounds and shallow-minor certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct Input {
    /// Generator spec, e.g. `grid:3,3`, `random-planar:100`, `planar-witness:50`.
    #[arg(long = "gen", value_name = "SPEC")]
    pub generator: Option<String>,
    /// Edge-list file (`n m` header, one `u v` per line).
    #[arg(long = "in", value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Seed for seeded generators.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args, Clone)]
pub struct Output {
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Edges,
}

#[derive(Debug, Args, Clone)]
pub struct Budget {
    /// Node budget for subdivision searches.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    pub budget: u64,
    /// Wall-clock cap for subdivision searches; results past it are "unknown".
    #[arg(long = "budget-ms")]
    pub budget_ms: Option<u64>,
}

impl Budget {
    fn search(&self) -> SearchBudget {
        SearchBudget {
            nodes: self.budget,
            deadline: self.budget_ms.map(|ms| Instant::now() + Duration::from_millis(ms)),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// λ₂ and the smallest Laplacian eigenvalues.
    Lambda2 {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Separator upper bound on λ₂ with its decomposition and test vector check.
    SepBound {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "bfs-level")]
        strategy: Strategy,
        #[command(flatten)]
        output: Output,
    },
    /// Topological grads ∇̃₀, ∇̃½ and ω of the depth-½ minors.
    Grad {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        output: Output,
    },
    /// Largest k with a ≤1-subdivision of K_k.
    OmegaHalf {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        output: Output,
    },
    /// Unit complex numbers with zero weighted sum for four part sizes.
    Fourpoint {
        n11: u64,
        n12: u64,
        n21: u64,
        n22: u64,
        #[command(flatten)]
        output: Output,
    },
    /// λ₂ of a complete join, by formula and by eigensolve.
    Join {
        /// Generator spec of the left operand.
        left: String,
        /// Generator spec of the right operand.
        right: String,
        #[command(flatten)]
        output: Output,
    },
    /// Run every applicable invariant check on one graph.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "bfs-level")]
        strategy: Strategy,
        /// Class the graph is asserted to belong to (default: genus:0 for
        /// planar generators, custom otherwise).
        #[arg(long)]
        class: Option<String>,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        output: Output,
    },
    /// CSV rows over sizes and seeds for a graph class.
    Sweep {
        #[arg(long)]
        class: String,
        /// Comma-separated sizes.
        #[arg(long = "n", value_name = "LIST")]
        ns: String,
        /// `a..b` (inclusive) or a comma-separated list.
        #[arg(long, default_value = "1")]
        seeds: String,
        /// Family kind (`grid`, `random-planar`, …); the class default if omitted.
        #[arg(long)]
        family: Option<String>,
        #[arg(long, default_value = "bfs-level")]
        strategy: Strategy,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Fill the runtime_ms column (breaks byte-identical output).
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Write a generated or loaded graph.
    Gen {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
}

/// Failure with its exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
    /// Report still worth printing (failed verification).
    pub output: Option<String>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NoConvergence { .. } | Error::NotZeroSum(_) | Error::ZeroNorm => EXIT_EIGEN,
            Error::NoSplit(_) => EXIT_NO_SPLIT,
            Error::Invariant(_) | Error::BudgetExceeded => EXIT_VERIFY_FAILED,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string(), output: None }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: msg.into(), output: None }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// A loaded graph and the name it is reported under.
struct Loaded {
    graph: Graph,
    name: String,
    family: Option<Family>,
}

fn load(input: &Input) -> CliResult<Loaded> {
    match (&input.generator, &input.input) {
        (Some(_), Some(_)) => Err(usage("give exactly one of --gen and --in, not both")),
        (None, None) => Err(usage("an input is required: --gen SPEC or --in PATH")),
        (Some(spec), None) => {
            let mut family: Family = spec.parse()?;
            if let Some(seed) = input.seed {
                family = family.with_seed(seed);
            }
            Ok(Loaded { graph: generate(family)?, name: family.to_string(), family: Some(family) })
        }
        (None, Some(path)) => Ok(Loaded { graph: read_edge_list(path)?, name: path.display().to_string(), family: None }),
    }
}

fn json_text<T: Serialize>(value: &T) -> String {
    let mut v = serde_json::to_value(value).expect("reports serialize");
    round_json(&mut v);
    let mut s = serde_json::to_string_pretty(&v).expect("json value prints");
    s.push('\n');
    s
}

fn json_only(output: &Output) -> CliResult<()> {
    match output.format {
        None | Some(Format::Json) => Ok(()),
        Some(f) => Err(usage(format!("--format {f:?} is not supported by this command").to_lowercase())),
    }
}

fn need_two(g: &Graph) -> CliResult<()> {
    if g.order() < 2 {
        return Err(Error::TooFewVertices(g.order()).into());
    }
    Ok(())
}

fn cmd_lambda2(input: &Input) -> CliResult<Value> {
    let l = load(input)?;
    need_two(&l.graph)?;
    let s = laplacian_spectrum(&l.graph, false)?;
    Ok(json!({
        "graph": l.name,
        "n": l.graph.order(),
        "lambda2": s.eigenvalues[1],
        "spectrum_head": s.eigenvalues.iter().take(5).collect::<Vec<_>>(),
        "residual": s.residual,
    }))
}

fn cmd_sep_bound(input: &Input, strategy: Strategy) -> CliResult<Value> {
    let l = load(input)?;
    let b = sep_upper_bound(&l.graph, strategy)?;
    Ok(json!({
        "graph": l.name,
        "strategy": strategy,
        "bound": b.bound,
        "cut": b.cut,
        "separator_size": b.separator_size,
        "lambda2": b.lambda2,
        "phi_check": { "rayleigh": b.rayleigh, "difference": (b.rayleigh - b.bound).abs() },
        "decomposition": b.decomposition,
    }))
}

fn cmd_grad(input: &Input, budget: &Budget) -> CliResult<Value> {
    let l = load(input)?;
    let report = grad_report(&l.graph, budget.search())?;
    Ok(json!({ "graph": l.name, "mad": mad(&l.graph), "grads": report }))
}

fn cmd_omega_half(input: &Input, budget: &Budget) -> CliResult<Value> {
    let l = load(input)?;
    let search = budget.search();
    let omega = crate::shallow::omega_half(&l.graph, search)?;
    let witness = match omega.lower() {
        k if k >= 2 => match contains_k_sub(&l.graph, k, search)? {
            KSubResult::Found { witness } => Some(witness),
            _ => None,
        },
        _ => None,
    };
    Ok(json!({ "graph": l.name, "omega_half": omega, "witness": witness }))
}

fn cmd_fourpoint(w: [u64; 4]) -> CliResult<Value> {
    let sol = four_point_solve(w[0], w[1], w[2], w[3])?;
    Ok(json!({
        "weights": sol.weights,
        "points": sol.points.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
        "moduli": sol.points.iter().map(|z| z.norm()).collect::<Vec<_>>(),
        "defect": sol.defect(),
        "valid": sol.is_valid(),
    }))
}

fn cmd_join(left: &str, right: &str) -> CliResult<Value> {
    let (f1, f2): (Family, Family) = (left.parse()?, right.parse()?);
    let (g1, g2) = (generate(f1)?, generate(f2)?);
    let (l1, l2) = (lambda2_or_infinite(&g1)?, lambda2_or_infinite(&g2)?);
    let joined = complete_join(&g1, &g2);
    need_two(&joined)?;
    let formula = join_lambda2(l1, g1.order(), l2, g2.order());
    let eig = crate::spectra::fiedler_value(&joined)?;
    let finite = |x: f64| if x.is_finite() { json!(x) } else { json!("inf") };
    Ok(json!({
        "left": { "graph": f1.to_string(), "n": g1.order(), "lambda2": finite(l1) },
        "right": { "graph": f2.to_string(), "n": g2.order(), "lambda2": finite(l2) },
        "formula": formula,
        "eigensolved": eig,
        "difference": (formula - eig).abs(),
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckState {
    Pass,
    Fail,
    Skipped,
    Info,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckLine {
    pub name: &'static str,
    pub status: CheckState,
    pub detail: String,
}

fn line(name: &'static str, ok: bool, detail: String) -> CheckLine {
    CheckLine { name, status: if ok { CheckState::Pass } else { CheckState::Fail }, detail }
}

fn skipped(name: &'static str, detail: String) -> CheckLine {
    CheckLine { name, status: CheckState::Skipped, detail }
}

/// Operands of a family that is a complete join.
fn join_parts(f: Family) -> Option<(Graph, Graph)> {
    let (a, b) = match f {
        Family::MinorFreeWitness { h, n } if h >= 3 => (Family::Complete(h - 2), Family::Empty(n - h + 2)),
        Family::PlanarWitness(n) => (Family::Complete(2), Family::Path(n - 2)),
        Family::CompleteBipartite(a, b) => (Family::Empty(a), Family::Empty(b)),
        Family::Star(m) if m >= 2 => (Family::Complete(1), Family::Empty(m - 1)),
        Family::Complete(m) if m >= 2 => (Family::Complete(1), Family::Complete(m - 1)),
        _ => return None,
    };
    Some((generate(a).ok()?, generate(b).ok()?))
}

fn status_check(name: &'static str, status: CheckStatus, detail: String) -> CheckLine {
    match status {
        CheckStatus::Holds | CheckStatus::Certified => line(name, true, detail),
        CheckStatus::Violated => line(name, false, detail),
        CheckStatus::NotCertified => skipped(name, format!("not settled by the known grad bounds; {detail}")),
    }
}

/// The full invariant battery on one graph.
pub fn verify_graph(
    g: &Graph,
    family: Option<Family>,
    class: ClassDescriptor,
    strategy: Strategy,
    budget: SearchBudget,
) -> crate::error::Result<Vec<CheckLine>> {
    let n = g.order();
    let mut out = Vec::new();
    if n < 2 {
        return Err(Error::TooFewVertices(n));
    }
    let spec = laplacian_spectrum(g, true)?;
    let lambda2 = spec.eigenvalues[1];
    let tol = 1e-10 * laplacian(g).norm_inf().max(1.0);
    out.push(line(
        "laplacian-spectrum",
        spec.residual <= tol && spec.eigenvalues[0].abs() <= EIGEN_TOL,
        format!("residual {:e}, smallest eigenvalue {:e}", spec.residual, spec.eigenvalues[0]),
    ));

    if let Some(cf) = family.and_then(|f| closed_form_lambda2(f).ok()) {
        out.push(line("closed-form", (cf - lambda2).abs() <= EIGEN_TOL, format!("closed form {cf}, eigensolved {lambda2}")));
    }
    if let Some((g1, g2)) = family.and_then(join_parts) {
        let f = join_lambda2(lambda2_or_infinite(&g1)?, g1.order(), lambda2_or_infinite(&g2)?, g2.order());
        out.push(line("join-spectrum", (f - lambda2).abs() <= EIGEN_TOL, format!("join formula {f}, eigensolved {lambda2}")));
    }

    let phi = fiedler_vector(g)?;
    let rq = rayleigh_quotient(g, &phi)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst = f64::INFINITY;
    for _ in 0..8 {
        let mut x: Vec<f64> = (0..2 * n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        for d in 0..2 {
            let mean = (0..n).map(|v| x[2 * v + d]).sum::<f64>() / n as f64;
            (0..n).for_each(|v| x[2 * v + d] -= mean);
        }
        worst = worst.min(rayleigh_quotient(g, &Embedding::new(2, x)?)?);
    }
    out.push(line(
        "embedding-rayleigh",
        (rq - lambda2).abs() <= EIGEN_TOL && worst >= lambda2 - EIGEN_TOL,
        format!("Fiedler vector quotient {rq}, smallest random zero-sum quotient {worst}"),
    ));

    let sep = if n >= 8 {
        match sep_upper_bound(g, strategy) {
            Ok(b) => {
                let sol = b.decomposition.solve_points()?;
                out.push(line(
                    "separator-bound",
                    lambda2 <= b.bound + crate::separators::BOUND_TOL,
                    format!("lambda2 {lambda2} <= {} = {}/{}", b.bound, b.cut, n - b.separator_size),
                ));
                out.push(line(
                    "four-point",
                    sol.is_valid(),
                    format!("weights {:?}, defect {:e}, fallback {}", sol.weights, sol.defect(), b.decomposition.fallback),
                ));
                Some(b)
            }
            Err(Error::NoSplit(s)) => {
                out.push(skipped("separator-bound", format!("no balanced split ({s})")));
                None
            }
            Err(e) => return Err(e),
        }
    } else {
        out.push(skipped("separator-bound", format!("needs n >= 8, got {n}")));
        None
    };

    let report = grad_report(g, budget)?;
    let grads = GradBounds::from_report(g, &report, &class.hints());
    let exact_ok = report.nabla_half_exact.is_none_or(|t| t >= report.nabla0);
    out.push(line(
        "grads",
        exact_ok && report.witness.verify(g),
        format!(
            "nabla0 {}, nabla_half >= {}, exact {}, omega {:?}",
            report.nabla0,
            report.nabla_half_lower,
            report.nabla_half_exact.map_or("n/a".into(), |t| t.to_string()),
            report.omega_half
        ),
    ));
    if let Some(bound) = class.omega_half_bound() {
        if let Some(w) = report.omega_half.exact() {
            out.push(line("class-omega", w <= bound, format!("omega {w} <= class bound {bound}")));
        }
    }

    let (a, b) = match &sep {
        Some(s) => {
            let b = s.decomposition.separator();
            (b.complement(n), b)
        }
        None => default_bipartition(g)?,
    };
    let (a, b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    match report.omega_half.exact() {
        Some(w) if w >= 2 => {
            let c = greedy_half_minor(g, &a, &b, w)?;
            out.push(line(
                "greedy-omega",
                c.violation.is_none() && c.verify(g, &a, &b),
                format!("|A2| = {}, |H| = {}, H edges {}", c.a2.len(), b.len(), c.minor.size()),
            ));
        }
        _ => out.push(skipped("greedy-omega", "omega not known exactly".into())),
    }

    let r = bipdens_check(g, &a, &b, &grads)?;
    out.push(status_check(
        "edge-bound",
        r.corrected.status,
        format!("e(A,B) = {} <= {} (slack {})", r.corrected.lhs, r.corrected.rhs, r.corrected.slack),
    ));
    out.push(CheckLine {
        name: "edge-bound-printed-form",
        status: CheckState::Info,
        detail: format!("{:?}: rhs {}, slack {}", r.printed.status, r.printed.rhs, r.printed.slack),
    });

    let p = class.kpq_p().or_else(|| family.filter(Family::is_planar).map(|_| 3));
    if let Some(p) = p {
        match bipdens2_check(g, &a, &b, p, &grads) {
            Ok(r) => {
                out.push(status_check(
                    "kpq-edge-bound",
                    r.corrected.status,
                    format!("p = {p}: e(A,B) = {} <= {} (slack {})", r.corrected.lhs, r.corrected.rhs, r.corrected.slack),
                ));
                out.push(line(
                    "triangle-bound",
                    r.triangles.holds && r.triple_sets_bounded && r.certificate.verify(g, &a, &b),
                    format!("{} triangles <= {}, |Z_i| = {:?}", r.triangles.triangles, r.triangles.limit, r.z_sizes),
                ));
                out.push(CheckLine {
                    name: "kpq-edge-bound-printed-form",
                    status: CheckState::Info,
                    detail: format!("{:?}: rhs {}, slack {}", r.printed.status, r.printed.rhs, r.printed.slack),
                });
            }
            Err(Error::Precondition(m)) => out.push(skipped("kpq-edge-bound", m)),
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn cmd_verify(input: &Input, strategy: Strategy, class: Option<&str>, budget: &Budget) -> CliResult<(Value, bool)> {
    let l = load(input)?;
    need_two(&l.graph)?;
    let class = match class {
        Some(c) => c.parse()?,
        None if l.family.is_some_and(|f| f.is_planar()) => ClassDescriptor::Genus(0),
        None => ClassDescriptor::Custom,
    };
    if let Some(f) = l.family {
        if !class.admits(&f) {
            return Err(usage(format!("{f} is not a known member of {class}")));
        }
    }
    let checks = verify_graph(&l.graph, l.family, class, strategy, budget.search())?;
    let passed = checks.iter().all(|c| c.status != CheckState::Fail);
    Ok((json!({ "graph": l.name, "n": l.graph.order(), "class": class.to_string(), "passed": passed, "checks": checks }), passed))
}

/// `a..b` (inclusive), `a,b,c` or a single value.
pub fn parse_seeds(s: &str) -> std::result::Result<Vec<u64>, String> {
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| format!("bad seed `{t}` in `{s}`"));
    if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
        if a > b {
            return Err(format!("empty seed range `{s}`"));
        }
        return Ok((a..=b).collect());
    }
    s.split(',').filter(|t| !t.trim().is_empty()).map(num).collect()
}

fn parse_sizes(s: &str) -> std::result::Result<Vec<usize>, String> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<usize>().map_err(|_| format!("bad size `{t}`")))
        .collect()
}

/// Runs a parsed command, returning the text to write.
pub fn run(cli: Cli) -> CliResult<(String, Option<PathBuf>)> {
    let (text, out) = match cli.command {
        Command::Lambda2 { input, output } => {
            json_only(&output)?;
            (json_text(&cmd_lambda2(&input)?), output.out)
        }
        Command::SepBound { input, strategy, output } => {
            json_only(&output)?;
            (json_text(&cmd_sep_bound(&input, strategy)?), output.out)
        }
        Command::Grad { input, budget, output } => {
            json_only(&output)?;
            (json_text(&cmd_grad(&input, &budget)?), output.out)
        }
        Command::OmegaHalf { input, budget, output } => {
            json_only(&output)?;
            (json_text(&cmd_omega_half(&input, &budget)?), output.out)
        }
        Command::Fourpoint { n11, n12, n21, n22, output } => {
            json_only(&output)?;
            (json_text(&cmd_fourpoint([n11, n12, n21, n22])?), output.out)
        }
        Command::Join { left, right, output } => {
            json_only(&output)?;
            (json_text(&cmd_join(&left, &right)?), output.out)
        }
        Command::Verify { input, strategy, class, budget, output } => {
            json_only(&output)?;
            let (report, passed) = cmd_verify(&input, strategy, class.as_deref(), &budget)?;
            let text = json_text(&report);
            if !passed {
                if let Some(path) = &output.out {
                    write_out(&text, Some(path))?;
                }
                return Err(Failure { code: EXIT_VERIFY_FAILED, message: "verification failed".into(), output: Some(text) });
            }
            (text, output.out)
        }
        Command::Sweep { class, ns, seeds, family, strategy, jobs, timing, output } => {
            let cfg = SweepConfig {
                class: class.parse()?,
                ns: parse_sizes(&ns).map_err(usage)?,
                seeds: parse_seeds(&seeds).map_err(usage)?,
                strategy,
                family,
                jobs,
                timing,
            };
            let rows = sweep(&cfg)?;
            let text = match output.format {
                None | Some(Format::Csv) => sweep_csv(&rows),
                Some(Format::Json) => json_text(&rows),
                Some(Format::Edges) => return Err(usage("sweep writes csv or json")),
            };
            (text, output.out)
        }
        Command::Gen { input, output } => {
            let l = load(&input)?;
            let text = match output.format {
                None | Some(Format::Edges) => write_edge_list(&l.graph),
                Some(Format::Json) => json_text(&json!({ "graph": l.name, "n": l.graph.order(), "edges": l.graph.edges() })),
                Some(Format::Csv) => return Err(usage("gen writes edges or json")),
            };
            (text, output.out)
        }
    };
    Ok((text, out))
}

fn write_out(text: &str, path: Option<&PathBuf>) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Entry point for the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(cli).and_then(|(text, out)| write_out(&text, out.as_ref())) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            if let Some(text) = &f.output {
                print!("{text}");
            }
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds() {
        assert_eq!(parse_seeds("1..5").unwrap(), vec![1, 2, 3, 4, 5]);
        assert_eq!(parse_seeds("3,9").unwrap(), vec![3, 9]);
        assert_eq!(parse_seeds("7").unwrap(), vec![7]);
        assert!(parse_seeds("5..1").is_err());
        assert!(parse_seeds("x").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Failure::from(Error::NoSplit("x".into())).code, EXIT_NO_SPLIT);
        assert_eq!(Failure::from(Error::NoConvergence { iterations: 1 }).code, EXIT_EIGEN);
        assert_eq!(Failure::from(Error::TooFewVertices(1)).code, EXIT_USAGE);
    }

    #[test]
    fn verify_battery_on_witness() {
        let f = Family::PlanarWitness(20);
        let g = generate(f).unwrap();
        let checks = verify_graph(&g, Some(f), ClassDescriptor::Genus(0), Strategy::BfsLevel, DEFAULT_NODE_BUDGET.into())
            .unwrap();
        let names: Vec<_> = checks.iter().map(|c| c.name).collect();
        assert!(names.contains(&"closed-form") && names.contains(&"join-spectrum"));
        assert!(checks.iter().all(|c| c.status != CheckState::Fail), "{checks:#?}");
    }

    #[test]
    fn join_parts_match_generators() {
        for f in [Family::MinorFreeWitness { h: 5, n: 9 }, Family::PlanarWitness(7), Family::Star(5), Family::Complete(4)] {
            let (a, b) = join_parts(f).unwrap();
            assert_eq!(complete_join(&a, &b), generate(f).unwrap(), "{f}");
        }
    }

    #[test]
    fn both_inputs_rejected() {
        let input = Input { generator: Some("path:3".into()), input: Some("x".into()), seed: None };
        assert_eq!(load(&input).err().unwrap().code, EXIT_USAGE);
    }
}
