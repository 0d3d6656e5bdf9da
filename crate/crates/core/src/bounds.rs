//! Class-level bounds on λ₂: descriptors for minor-free and bounded-genus
//! classes, the extremal witnesses, per-graph bound reports and sweeps.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fmt::sig;
use crate::graph::{generate, Family, Graph, VertexSet};
use crate::rational::Rational;
use crate::separators::{sep_upper_bound, SeparatorDecomposition, Strategy, BOUND_TOL};
use crate::shallow::{
    bipdens2_check, bipdens_check, grad_report, BipDens2Report, BipDensReport, GradBounds, GradHints, SearchBudget,
    DEFAULT_NODE_BUDGET,
};
use crate::spectra::{closed_form_lambda2, fiedler_value, join_lambda2, EIGEN_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "param", rename_all = "kebab-case")]
pub enum ClassDescriptor {
    /// Graphs with no `K_h` minor.
    MinorFree(usize),
    /// Graphs embeddable on the orientable surface of genus `g`.
    Genus(usize),
    /// No class information: only the graph's own grads are used.
    Custom,
}

impl ClassDescriptor {
    pub fn new_minor_free(h: usize) -> Result<Self> {
        if h < 2 {
            return Err(Error::OutOfRange(format!("minor-free needs h >= 2, got {h}")));
        }
        Ok(ClassDescriptor::MinorFree(h))
    }

    /// Upper bound on `ω(C∇̃½)`. A ≤1-subdivision of `K_h` is a `K_h`
    /// minor; a subdivided `K5` is not planar.
    pub fn omega_half_bound(&self) -> Option<usize> {
        match *self {
            ClassDescriptor::MinorFree(h) => Some(h - 1),
            ClassDescriptor::Genus(0) => Some(4),
            _ => None,
        }
    }

    /// Upper bound on `∇̃½` of members. `K_h`-minor-free graphs have fewer
    /// than `(h−2)n` edges for `h ≤ 7`; genus-`g` graphs at most
    /// `3n − 6 + 6g`.
    pub fn nabla_half_bound(&self) -> Option<Rational> {
        match *self {
            ClassDescriptor::MinorFree(h) if h <= 7 => Some(Rational::from(h - 2)),
            ClassDescriptor::Genus(g) => Some(Rational::from(3 + 6 * g)),
            _ => None,
        }
    }

    pub fn hints(&self) -> GradHints {
        GradHints { omega_hi: self.omega_half_bound(), nabla_half_hi: self.nabla_half_bound() }
    }

    /// `p` with `K_{3,p}` excluded: `4g + 3` for genus `g`.
    pub fn kpq_p(&self) -> Option<usize> {
        match *self {
            ClassDescriptor::Genus(g) => Some(4 * g + 3),
            _ => None,
        }
    }

    /// Leading coefficient of the edge bound between a separator and the
    /// rest: `ω − 1` for minor-free classes, `2` for genus classes.
    pub fn leading_coefficient(&self) -> Option<usize> {
        match *self {
            ClassDescriptor::MinorFree(h) => Some(h - 2),
            ClassDescriptor::Genus(_) => Some(2),
            ClassDescriptor::Custom => None,
        }
    }

    /// Largest λ₂ of a known `n`-vertex member (the class lower bound).
    pub fn floor(&self, n: usize) -> Option<f64> {
        match *self {
            ClassDescriptor::MinorFree(h) if n >= h => Some((h - 2) as f64),
            ClassDescriptor::Genus(_) if n >= 4 => closed_form_lambda2(Family::PlanarWitness(n)).ok(),
            _ => None,
        }
    }

    /// The member attaining [`floor`](Self::floor).
    pub fn floor_witness(&self, n: usize) -> Option<Family> {
        match *self {
            ClassDescriptor::MinorFree(h) if n >= h => Some(Family::MinorFreeWitness { h, n }),
            ClassDescriptor::Genus(_) if n >= 4 => Some(Family::PlanarWitness(n)),
            _ => None,
        }
    }

    /// Membership by construction. Families whose membership is not
    /// evident are rejected rather than tested.
    pub fn admits(&self, family: &Family) -> bool {
        match *self {
            ClassDescriptor::Custom => true,
            ClassDescriptor::Genus(_) => family.is_planar(),
            ClassDescriptor::MinorFree(h) => match *family {
                Family::Empty(_) => h >= 2,
                Family::Path(_) | Family::Star(_) => h >= 3,
                Family::Grid(a, b) if a == 1 || b == 1 => h >= 3,
                Family::CompleteBipartite(a, b) if a.min(b) == 1 => h >= 3,
                Family::Cycle(_) => h >= 4,
                Family::CompleteBipartite(a, b) if a.min(b) == 2 => h >= 4,
                Family::Complete(m) => h > m,
                Family::MinorFreeWitness { h: w, .. } => w <= h,
                f => f.is_planar() && h >= 5,
            },
        }
    }

    /// Default member family for sweeps.
    pub fn default_family(&self, n: usize, seed: u64) -> Result<Family> {
        match *self {
            ClassDescriptor::MinorFree(h) if h < 5 => Ok(Family::MinorFreeWitness { h, n }),
            ClassDescriptor::MinorFree(_) | ClassDescriptor::Genus(_) => Ok(Family::RandomPlanar(n, seed)),
            ClassDescriptor::Custom => Err(Error::Precondition("custom class needs an explicit family".into())),
        }
    }
}

impl fmt::Display for ClassDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassDescriptor::MinorFree(h) => write!(f, "minor-free:{h}"),
            ClassDescriptor::Genus(g) => write!(f, "genus:{g}"),
            ClassDescriptor::Custom => write!(f, "custom"),
        }
    }
}

impl FromStr for ClassDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, arg) = s.split_once(':').unwrap_or((s, ""));
        let num = || -> Result<usize> {
            arg.trim().parse().map_err(|_| Error::OutOfRange(format!("bad class parameter in `{s}`")))
        };
        match kind.trim().replace('_', "-").as_str() {
            "minor-free" => Self::new_minor_free(num()?),
            "genus" => Ok(ClassDescriptor::Genus(num()?)),
            "custom" if arg.is_empty() => Ok(ClassDescriptor::Custom),
            _ => Err(Error::OutOfRange(format!("unknown class `{s}` (minor-free:H, genus:G, custom)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FloorInterval {
    pub n: usize,
    /// Exact class lower bound at `n`.
    pub lower: f64,
    pub witness: Family,
    pub witness_lambda2: f64,
    /// How the upper side is obtained: never an invented constant.
    pub upper_form: String,
}

/// `K_h`-minor-free floor: `λ₂(K_{h−2} ⊕ (n−h+2)K₁) = h − 2`.
pub fn minor_free_floor(h: usize, n: usize) -> Result<FloorInterval> {
    if h < 2 || n < h {
        return Err(Error::OutOfRange(format!("need 2 <= h <= n, got h={h}, n={n}")));
    }
    let witness = Family::MinorFreeWitness { h, n };
    Ok(FloorInterval {
        n,
        lower: (h - 2) as f64,
        witness,
        witness_lambda2: fiedler_value(&generate(witness)?)?,
        upper_form: format!("{} + measured separator slack e(S,V-S)/(n-|S|) - {}", h - 2, h - 2),
    })
}

/// Genus-`g` floor: `λ₂(K₂ ⊕ P_{n−2}) = 4 − 2cos(π/(n−2)) > 2`.
pub fn genus_floor(g: usize, n: usize) -> Result<FloorInterval> {
    if n < 4 {
        return Err(Error::OutOfRange(format!("need n >= 4, got {n}")));
    }
    let witness = Family::PlanarWitness(n);
    Ok(FloorInterval {
        n,
        lower: closed_form_lambda2(witness)?,
        witness,
        witness_lambda2: fiedler_value(&generate(witness)?)?,
        upper_form: format!("2 + measured separator slack, edge bound with p = {}", 4 * g + 3),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JoinCheck {
    pub h: usize,
    pub n: usize,
    pub verdict: Verdict,
    pub base_lambda2: Option<f64>,
    pub joined_lambda2: Option<f64>,
    pub formula_lambda2: Option<f64>,
}

/// `λ₂(K₁ ⊕ W) = λ₂(W) + 1` for the `K_h`-minor-free witness `W` on `n`
/// vertices, whose join with `K₁` is the `K_{h+1}` witness on `n+1`.
pub fn join_monotonicity_check(h: usize, n: usize) -> Result<JoinCheck> {
    if h < 3 {
        return Err(Error::OutOfRange(format!("need h >= 3, got {h}")));
    }
    if n <= h {
        return Ok(JoinCheck { h, n, verdict: Verdict::Skipped, base_lambda2: None, joined_lambda2: None, formula_lambda2: None });
    }
    let base = generate(Family::MinorFreeWitness { h, n })?;
    let joined = crate::graph::complete_join(&Graph::empty(1), &base);
    let (lb, lj) = (fiedler_value(&base)?, fiedler_value(&joined)?);
    let formula = join_lambda2(f64::INFINITY, 1, lb, n);
    let ok = (lj - (lb + 1.0)).abs() <= EIGEN_TOL
        && (formula - lj).abs() <= EIGEN_TOL
        && joined == generate(Family::MinorFreeWitness { h: h + 1, n: n + 1 })?;
    Ok(JoinCheck {
        h,
        n,
        verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        base_lambda2: Some(lb),
        joined_lambda2: Some(lj),
        formula_lambda2: Some(formula),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SepSummary {
    pub bound: f64,
    pub cut: usize,
    pub separator_size: usize,
    pub rayleigh: f64,
    pub decomposition: SeparatorDecomposition,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub graph: String,
    pub class: ClassDescriptor,
    pub n: usize,
    pub lambda2: f64,
    pub sep: Option<SepSummary>,
    /// `c·n/(n−|S|)` with `c` the class leading coefficient.
    pub omega_term: Option<f64>,
    /// `sep_bound − omega_term`: the measured `O(s(n)/n)` part.
    pub residual: Option<f64>,
    pub class_floor: Option<f64>,
    pub witness_lambda2: Option<f64>,
    pub grads: GradBounds,
    pub bipdens: Option<BipDensReport>,
    pub bipdens2: Option<BipDens2Report>,
    pub flags: Vec<String>,
}

impl BoundReport {
    /// `λ₂ ≤ sep_bound + 1e−9` whenever a separator bound exists.
    pub fn consistent(&self) -> bool {
        self.sep.as_ref().is_none_or(|s| self.lambda2 <= s.bound + BOUND_TOL)
    }
}

/// Bound report for `g`, asserted to be a member of `class`. The edge
/// bound between `S` and `V − S` is checked with the `K_{3,p}` form for
/// genus classes and the `ω` form otherwise.
pub fn bound_certificate(
    g: &Graph,
    name: &str,
    class: ClassDescriptor,
    strategy: Strategy,
    budget: impl Into<SearchBudget>,
) -> Result<BoundReport> {
    let n = g.order();
    let lambda2 = fiedler_value(g)?;
    let mut flags = Vec::new();
    let sep = match sep_upper_bound(g, strategy) {
        Ok(b) => {
            if b.decomposition.fallback {
                flags.push("polygon-fallback".to_string());
            }
            Some(SepSummary {
                bound: b.bound,
                cut: b.cut,
                separator_size: b.separator_size,
                rayleigh: b.rayleigh,
                decomposition: b.decomposition,
            })
        }
        Err(e @ (Error::NoSplit(_) | Error::OutOfRange(_))) => {
            flags.push(format!("no-separator-bound: {e}"));
            None
        }
        Err(e) => return Err(e),
    };
    let report = grad_report(g, budget)?;
    let grads = GradBounds::from_report(g, &report, &class.hints());
    let coeff = class
        .leading_coefficient()
        .unwrap_or_else(|| grads.omega.lower().saturating_sub(1));
    let omega_term = sep.as_ref().map(|s| coeff as f64 * n as f64 / (n - s.separator_size) as f64);
    let residual = sep.as_ref().zip(omega_term).map(|(s, t)| s.bound - t);

    let (mut bipdens, mut bipdens2) = (None, None);
    if let Some(s) = &sep {
        let b = s.decomposition.separator();
        let a = b.complement(n);
        let result = match class.kpq_p() {
            Some(p) => bipdens2_check(g, &a, &b, p, &grads).map(|r| {
                flag_status(&mut flags, "kpq", r.printed.status, r.corrected.status);
                bipdens2 = Some(r);
            }),
            None => bipdens_check(g, &a, &b, &grads).map(|r| {
                flag_status(&mut flags, "omega", r.printed.status, r.corrected.status);
                bipdens = Some(r);
            }),
        };
        if let Err(e) = result {
            flags.push(format!("edge-bound-skipped: {e}"));
        }
    }
    let (class_floor, witness_lambda2) = match class.floor_witness(n) {
        Some(w) => (class.floor(n), Some(fiedler_value(&generate(w)?)?)),
        None => (None, None),
    };
    let out = BoundReport {
        graph: name.to_string(),
        class,
        n,
        lambda2,
        sep,
        omega_term,
        residual,
        class_floor,
        witness_lambda2,
        grads,
        bipdens,
        bipdens2,
        flags,
    };
    if !out.consistent() {
        return Err(Error::Invariant(format!("lambda2 {lambda2} exceeds the separator bound")));
    }
    Ok(out)
}

fn flag_status(flags: &mut Vec<String>, which: &str, printed: crate::shallow::CheckStatus, corrected: crate::shallow::CheckStatus) {
    if !printed.ok() {
        flags.push(format!("{which}-edge-bound-printed-{}", status_name(printed)));
    }
    if !corrected.ok() {
        flags.push(format!("{which}-edge-bound-{}", status_name(corrected)));
    }
}

fn status_name(s: crate::shallow::CheckStatus) -> &'static str {
    use crate::shallow::CheckStatus::*;
    match s {
        Holds => "holds",
        Violated => "violated",
        Certified => "certified",
        NotCertified => "not-certified",
    }
}

pub const CSV_HEADER: &str = "n,seed,family,lambda2,sep_bound,sep_size,omega_term,witness_floor,flags,runtime_ms";

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub class: ClassDescriptor,
    pub ns: Vec<usize>,
    pub seeds: Vec<u64>,
    pub strategy: Strategy,
    /// Family kind (`grid`, `random-planar`, …); the class default if `None`.
    pub family: Option<String>,
    pub jobs: usize,
    pub timing: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub seed: u64,
    pub family: String,
    pub lambda2: Option<f64>,
    pub sep_bound: Option<f64>,
    pub sep_size: Option<usize>,
    pub omega_term: Option<f64>,
    pub witness_floor: Option<f64>,
    pub flags: Vec<String>,
    pub runtime_ms: Option<f64>,
}

impl SweepRow {
    /// Fields in [`CSV_HEADER`] order.
    pub fn csv_record(&self) -> [String; 10] {
        let f = |x: Option<f64>| x.map(sig).unwrap_or_default();
        [
            self.n.to_string(),
            self.seed.to_string(),
            self.family.clone(),
            f(self.lambda2),
            f(self.sep_bound),
            self.sep_size.map(|s| s.to_string()).unwrap_or_default(),
            f(self.omega_term),
            f(self.witness_floor),
            self.flags.join(";"),
            self.runtime_ms.map(|t| format!("{t:.3}")).unwrap_or_default(),
        ]
    }
}

/// Family of kind `kind` with `n` vertices (grids must be square).
pub fn family_of_order(kind: &str, n: usize, seed: u64, class: ClassDescriptor) -> Result<Family> {
    let f = match kind.replace('_', "-").as_str() {
        "grid" => {
            let side = (n as f64).sqrt().round() as usize;
            if side * side != n {
                return Err(Error::OutOfRange(format!("grid sweep needs square n, got {n}")));
            }
            Family::Grid(side, side)
        }
        "random-planar" => Family::RandomPlanar(n, seed),
        "path" => Family::Path(n),
        "cycle" => Family::Cycle(n),
        "star" => Family::Star(n),
        "complete" => Family::Complete(n),
        "empty" => Family::Empty(n),
        "planar-witness" => Family::PlanarWitness(n),
        "minor-free-witness" => match class {
            ClassDescriptor::MinorFree(h) => Family::MinorFreeWitness { h, n },
            _ => return Err(Error::Precondition("minor-free-witness sweeps need a minor-free class".into())),
        },
        other => return Err(Error::OutOfRange(format!("unknown sweep family `{other}`"))),
    };
    Ok(f)
}

fn sweep_row(cfg: &SweepConfig, n: usize, seed: u64) -> SweepRow {
    let start = Instant::now();
    let mut row = SweepRow {
        n,
        seed,
        family: String::new(),
        lambda2: None,
        sep_bound: None,
        sep_size: None,
        omega_term: None,
        witness_floor: cfg.class.floor(n),
        flags: Vec::new(),
        runtime_ms: None,
    };
    let family = match &cfg.family {
        Some(kind) => family_of_order(kind, n, seed, cfg.class),
        None => cfg.class.default_family(n, seed),
    };
    let result = family.and_then(|f| {
        row.family = f.to_string();
        if !cfg.class.admits(&f) {
            return Err(Error::Precondition(format!("{f} is not a known member of {}", cfg.class)));
        }
        let g = generate(f)?;
        row.lambda2 = Some(fiedler_value(&g)?);
        match sep_upper_bound(&g, cfg.strategy) {
            Ok(b) => {
                row.sep_bound = Some(b.bound);
                row.sep_size = Some(b.separator_size);
                if let Some(c) = cfg.class.leading_coefficient() {
                    row.omega_term = Some(c as f64 * n as f64 / (n - b.separator_size) as f64);
                }
                if b.decomposition.fallback {
                    row.flags.push("polygon-fallback".into());
                }
            }
            Err(e) => row.flags.push(format!("no-separator-bound: {e}")),
        }
        Ok(())
    });
    if let Err(e) = result {
        row.flags.push(format!("error: {e}"));
    }
    if cfg.timing {
        row.runtime_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    row
}

/// One row per `(n, seed)`, sorted by `(n, seed)`. Failures are recorded
/// in the row's flags.
pub fn sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    let mut tasks: Vec<(usize, u64)> = cfg.ns.iter().flat_map(|&n| cfg.seeds.iter().map(move |&s| (n, s))).collect();
    tasks.sort_unstable();
    tasks.dedup();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    let mut rows: Vec<SweepRow> = pool.install(|| tasks.par_iter().map(|&(n, s)| sweep_row(cfg, n, s)).collect());
    rows.sort_by_key(|r| (r.n, r.seed));
    Ok(rows)
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let written = w
        .write_record(CSV_HEADER.split(','))
        .and_then(|_| rows.iter().try_for_each(|r| w.write_record(r.csv_record())));
    written.expect("writing CSV to memory");
    String::from_utf8(w.into_inner().expect("flushing CSV to memory")).expect("CSV of UTF-8 fields")
}

/// Bipartition used by the triple-set checks in verification: the
/// separator against the rest, or the Fiedler median split.
pub fn default_bipartition(g: &Graph) -> Result<(VertexSet, VertexSet)> {
    let n = g.order();
    let phi = crate::spectra::fiedler_vector(g)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| phi.vector(a)[0].total_cmp(&phi.vector(b)[0]).then(a.cmp(&b)));
    let b: VertexSet = order[..n / 2].iter().copied().collect();
    Ok((b.complement(n), b))
}

pub const DEFAULT_BUDGET: u64 = DEFAULT_NODE_BUDGET;
