//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Runtime limits are part of each criterion.

mod common;

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use common::*;
use fiedler_core::bounds::ClassDescriptor;
use fiedler_core::separators::{
    anchor_preconditions, find_balanced_split, four_point_solve, polygon_inequality, sep_upper_bound, Strategy,
};
use fiedler_core::shallow::{
    bipdens2_check, bipdens_check, contains_k_sub, densest_subgraph, find_k3p, greedy_half_minor,
    greedy_half_minor_ordered, greedy_half_minor_triples, omega_half, CheckStatus, GradBounds, GradHints, GreedyOrder,
    KSubResult, DEFAULT_NODE_BUDGET,
};
use fiedler_core::spectra::{fiedler_value, join_lambda2, lambda2_or_infinite};
use fiedler_core::{complete_join, Error, Family, Graph, VertexSet};
use rand::Rng;

const EIGEN_TOL: f64 = 1e-8;
const BOUND_TOL: f64 = 1e-9;
const MODULUS_TOL: f64 = 1e-12;
const DEFECT_TOL: f64 = 1e-9;

struct Outcome {
    pass: bool,
    summary: String,
    /// Deterministic record of every computed value, compared by criterion 9.
    record: String,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { pass: true, summary: String::new(), record: String::new(), notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            if self.pass {
                self.notes.push(format!("first failure: {}", what()));
            }
            self.pass = false;
        }
    }

    fn log(&mut self, args: std::fmt::Arguments) {
        let _ = self.record.write_fmt(args);
        self.record.push('\n');
    }
}

fn generate(f: Family) -> Graph {
    f.generate().unwrap()
}

fn join_spectrum() -> Outcome {
    let mut o = Outcome::new();
    let mut r = rng(1001);
    let mut worst = 0.0f64;
    for i in 0..200 {
        let (n1, n2) = (r.gen_range(1..=12), r.gen_range(1..=12));
        let (p1, p2) = (r.gen_range(0.1..0.9), r.gen_range(0.1..0.9));
        let (h1, h2) = (gnp(n1, p1, &mut r), gnp(n2, p2, &mut r));
        let j = complete_join(&h1, &h2);
        let got = fiedler_value(&j).unwrap();
        let want = join_lambda2(lambda2_or_infinite(&h1).unwrap(), n1, lambda2_or_infinite(&h2).unwrap(), n2);
        let err = (got - want).abs();
        worst = worst.max(err);
        o.check(err <= EIGEN_TOL, || format!("pair {i}: {got} vs {want}"));
        o.log(format_args!("{i} {n1} {n2} {got:?} {want:?}"));
    }
    o.summary = format!("200 pairs, max |error| {worst:.1e}");
    o
}

fn minor_free_floor() -> Outcome {
    let mut o = Outcome::new();
    let mut worst = 0.0f64;
    let mut count = 0;
    for h in 3..=8 {
        for n in h..=60 {
            let l2 = fiedler_value(&generate(Family::MinorFreeWitness { h, n })).unwrap();
            let err = (l2 - (h - 2) as f64).abs();
            worst = worst.max(err);
            count += 1;
            o.check(err <= EIGEN_TOL, || format!("h={h} n={n}: {l2}"));
            o.log(format_args!("{h} {n} {l2:?}"));
        }
    }
    o.summary = format!("{count} witnesses K_(h-2) join (n-h+2)K_1, max |error| {worst:.1e}");
    o
}

fn planar_floor() -> Outcome {
    let mut o = Outcome::new();
    let mut worst = 0.0f64;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for n in 4..=200 {
        let l2 = fiedler_value(&generate(Family::PlanarWitness(n))).unwrap();
        let m = (n - 2) as f64;
        let want = 4.0 - 2.0 * (std::f64::consts::PI / m).cos();
        let err = (l2 - want).abs();
        worst = worst.max(err);
        o.check(err <= EIGEN_TOL, || format!("n={n}: {l2} vs {want}"));
        o.check(l2 > 2.0, || format!("n={n}: {l2} <= 2"));
        if n >= 50 {
            let scaled = (l2 - 2.0) * m * m;
            lo = lo.min(scaled);
            hi = hi.max(scaled);
            o.check((9.5..=10.5).contains(&scaled), || format!("n={n}: (l2-2)(n-2)^2 = {scaled}"));
        }
        o.log(format_args!("{n} {l2:?}"));
    }
    let k4 = fiedler_value(&generate(Family::PlanarWitness(4))).unwrap();
    let with_n_minus_1 = 4.0 - 2.0 * (std::f64::consts::PI / 3.0).cos();
    o.notes.push(format!(
        "n=4 is K4 with eigensolved 4; the argument pi/(n-1) would give {with_n_minus_1}, off by {:.3}",
        (k4 - with_n_minus_1).abs()
    ));
    o.summary = format!("n=4..200 K_2 join P_(n-2), max |error| {worst:.1e}, (l2-2)(n-2)^2 in [{lo:.4}, {hi:.4}] for n>=50");
    o
}

fn four_points() -> Outcome {
    let mut o = Outcome::new();
    let mut r = rng(4004);
    let (mut worst_mod, mut worst_def) = (0.0f64, 0.0f64);
    let mut done = 0;
    while done < 1000 {
        let w: [u64; 4] = std::array::from_fn(|_| r.gen_range(1..=50));
        if !anchor_preconditions(w) {
            continue;
        }
        match four_point_solve(w[0], w[1], w[2], w[3]) {
            Ok(s) => {
                let rel = s.defect() / s.weight_sum() as f64;
                worst_mod = worst_mod.max(s.max_modulus_error());
                worst_def = worst_def.max(rel);
                o.check(s.max_modulus_error() <= MODULUS_TOL, || format!("{w:?}: modulus error {}", s.max_modulus_error()));
                o.check(rel <= DEFECT_TOL, || format!("{w:?}: defect {}", s.defect()));
                o.log(format_args!("{w:?} {:?}", s.points));
            }
            Err(e) => o.check(false, || format!("{w:?}: {e}")),
        }
        done += 1;
    }
    let mut implications = 0;
    for a in 1..=12u64 {
        for b in 1..=12 {
            for c in 1..=12 {
                for d in 1..=12 {
                    let w = [a, b, c, d];
                    if anchor_preconditions(w) {
                        implications += 1;
                        o.check(polygon_inequality(w), || format!("{w:?} satisfies the chain but not the polygon inequality"));
                    }
                }
            }
        }
    }
    o.summary = format!(
        "1000 quadruples, max modulus error {worst_mod:.1e}, max defect/sum {worst_def:.1e}; {implications} chain quadruples <= 12 all polygonal"
    );
    o
}

fn separator_bounds() -> Outcome {
    let mut o = Outcome::new();
    let mut r = rng(5005);
    let mut graphs: Vec<(String, Graph)> = Vec::new();
    for _ in 0..50 {
        let (rows, cols) = (r.gen_range(4..=20), r.gen_range(4..=20));
        graphs.push((format!("grid:{rows},{cols}"), generate(Family::Grid(rows, cols))));
    }
    for seed in 1..=50u64 {
        let n = r.gen_range(40..=400);
        graphs.push((format!("random-planar:{n},{seed}"), generate(Family::RandomPlanar(n, seed))));
    }
    let mut worst_gap = 0.0f64;
    for (name, g) in &graphs {
        match sep_upper_bound(g, Strategy::BfsLevel) {
            Ok(sb) => {
                let valid = sb.decomposition.validate(g).is_ok();
                let l2 = fiedler_value(g).unwrap();
                let gap = (sb.bound - sb.rayleigh).abs();
                worst_gap = worst_gap.max(gap);
                o.check(valid, || format!("{name}: invalid decomposition"));
                o.check(gap <= BOUND_TOL, || format!("{name}: bound {} vs quotient {}", sb.bound, sb.rayleigh));
                o.check(l2 <= sb.bound + BOUND_TOL, || format!("{name}: lambda2 {l2} > bound {}", sb.bound));
                o.log(format_args!("{name} {:?} {:?} {} {}", sb.bound, l2, sb.cut, sb.separator_size));
            }
            Err(e) => o.check(false, || format!("{name}: {e}")),
        }
    }
    o.summary = format!("50 grids up to 20x20 + 50 random planar up to n=400, max |bound - quotient| {worst_gap:.1e}");
    o
}

fn oracle_equivalences() -> Outcome {
    let mut o = Outcome::new();
    let mut r = rng(6006);
    for i in 0..100 {
        let n = r.gen_range(1..=12);
        let g = gnp(n, r.gen_range(0.1..0.8), &mut r);
        let (_, d) = densest_subgraph(&g);
        let want = brute_densest(&g);
        o.check(d == want, || format!("densest graph {i}: {d} vs {want}"));
        o.log(format_args!("densest {i} {d}"));
    }
    for i in 0..100 {
        let n = r.gen_range(3..=9);
        let k = r.gen_range(2..=4);
        let g = gnp(n, r.gen_range(0.2..0.8), &mut r);
        let want = naive_k_sub(&g, k);
        let got = match contains_k_sub(&g, k, u64::MAX).unwrap() {
            KSubResult::Found { witness } => {
                o.check(witness.verify(&g) && witness.is_complete(), || format!("k-sub graph {i}: bad witness"));
                Some(true)
            }
            KSubResult::NotFound => Some(false),
            KSubResult::Unknown => None,
        };
        o.check(got == Some(want), || format!("k-sub graph {i} k={k}: {got:?} vs {want}"));
        o.log(format_args!("ksub {i} {k} {got:?}"));
    }
    for i in 0..50 {
        let n = r.gen_range(4..=14);
        let g = gnp(n, r.gen_range(0.15..0.6), &mut r);
        let want = brute_min_separator(&g);
        let got = match find_balanced_split(&g, Strategy::Exhaustive) {
            Ok(s) => Some(s.separator.len()),
            Err(Error::NoSplit(_)) => None,
            Err(e) => {
                o.check(false, || format!("separator graph {i}: {e}"));
                continue;
            }
        };
        o.check(got == want, || format!("separator graph {i}: {got:?} vs {want:?}"));
        o.log(format_args!("sep {i} {got:?}"));
    }
    o.summary = "densest 100/100, <=1-subdivided K_k 100/100, minimum separator 50/50 compared".into();
    o
}

struct EdgeTally {
    form: &'static str,
    total: usize,
    printed_ok: usize,
    corrected_ok: usize,
    first_printed_failure: Option<String>,
}

impl EdgeTally {
    fn new(form: &'static str) -> Self {
        EdgeTally { form, total: 0, printed_ok: 0, corrected_ok: 0, first_printed_failure: None }
    }

    fn add(&mut self, name: &str, printed: CheckStatus, slack: fiedler_core::Rational, corrected: CheckStatus) {
        self.total += 1;
        self.printed_ok += printed.ok() as usize;
        self.corrected_ok += corrected.ok() as usize;
        if !printed.ok() && self.first_printed_failure.is_none() {
            self.first_printed_failure = Some(format!("{} form on {name}: slack {slack}", self.form));
        }
    }
}

fn random_split(n: usize, r: &mut impl Rng) -> (VertexSet, VertexSet) {
    let mut a: VertexSet = (0..n).filter(|_| r.gen_bool(0.5)).collect();
    let mut b = a.complement(n);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    (a, b)
}

fn edge_bounds() -> Outcome {
    let mut o = Outcome::new();
    let mut r = rng(7007);
    let (mut omega_form, mut kpq_form) = (EdgeTally::new("omega"), EdgeTally::new("K_3,p"));
    let mut witnesses = 0;
    let mut instances: Vec<(String, Graph, VertexSet, VertexSet, GradBounds, usize)> = Vec::new();

    for i in 0..60 {
        let n = r.gen_range(4..=10);
        let g = gnp(n, [0.3, 0.5, 0.7][i % 3], &mut r);
        let (a, b) = random_split(n, &mut r);
        let gb = GradBounds::compute(&g, &GradHints::default(), DEFAULT_NODE_BUDGET).unwrap();
        let p = (3..=n + 1).find(|&p| find_k3p(&g, p).is_none()).unwrap();
        instances.push((format!("gnp#{i} n={n}"), g, a, b, gb, p));
    }
    let planar = ClassDescriptor::Genus(0);
    for seed in 1..=40u64 {
        let n = r.gen_range(20..=150);
        let g = generate(Family::RandomPlanar(n, seed));
        let sb = sep_upper_bound(&g, Strategy::BfsLevel).unwrap();
        let b = sb.decomposition.separator();
        let a = b.complement(n);
        let gb = GradBounds::compute(&g, &planar.hints(), DEFAULT_NODE_BUDGET).unwrap();
        instances.push((format!("random-planar:{n},{seed}"), g, a, b, gb, planar.kpq_p().unwrap()));
    }

    for (name, g, a, b, gb, p) in &instances {
        let rep = bipdens_check(g, a, b, gb).unwrap();
        omega_form.add(name, rep.printed.status, rep.printed.slack, rep.corrected.status);
        o.check(rep.certificate.verify(g, a, b), || format!("{name}: omega certificate fails verification"));
        o.log(format_args!("{name} omega {} {} {}", rep.edges_between, rep.printed.rhs, rep.corrected.rhs));

        let rep2 = bipdens2_check(g, a, b, *p, gb).unwrap();
        kpq_form.add(name, rep2.printed.status, rep2.printed.slack, rep2.corrected.status);
        o.check(rep2.certificate.verify(g, a, b), || format!("{name}: triple certificate fails verification"));
        o.log(format_args!("{name} kpq p={p} {} {} {}", rep2.edges_between, rep2.printed.rhs, rep2.corrected.rhs));

        if let Some(w) = gb.omega.exact() {
            for order in [GreedyOrder::Ascending, GreedyOrder::Shuffled(7), GreedyOrder::Shuffled(11)] {
                let cert = greedy_half_minor_ordered(g, a, b, w.max(2), order).unwrap();
                o.check(cert.violation.is_none(), || format!("{name}: clique violation at omega = {w}"));
            }
        }

        // Below ω and at p = 2 the constructions do emit witnesses.
        let low = greedy_half_minor(g, a, b, 2).unwrap();
        let triples = greedy_half_minor_triples(g, a, b, 2).unwrap();
        for v in low.violation.iter().chain(triples.violation.iter()) {
            witnesses += 1;
            o.check(v.verify(g), || format!("{name}: emitted witness is not a subgraph"));
        }
    }

    let both_printed = omega_form.printed_ok == omega_form.total && kpq_form.printed_ok == kpq_form.total;
    o.check(both_printed, || {
        omega_form
            .first_printed_failure
            .clone()
            .or(kpq_form.first_printed_failure.clone())
            .unwrap_or_default()
    });
    o.notes.push(format!(
        "corrected forms (multiplier 1 for a negative coefficient; factor 2 on the triangle count): omega {}/{}, K_3,p {}/{} nonnegative",
        omega_form.corrected_ok, omega_form.total, kpq_form.corrected_ok, kpq_form.total
    ));
    if omega_form.corrected_ok != omega_form.total || kpq_form.corrected_ok != kpq_form.total {
        o.check(false, || "corrected form has negative slack".into());
    }
    o.summary = format!(
        "100 instances (60 exact, 40 certified): omega form {}/{}, K_3,p form {}/{} nonnegative as stated; {witnesses} emitted witnesses verified",
        omega_form.printed_ok, omega_form.total, kpq_form.printed_ok, kpq_form.total
    );
    o
}

fn planar_omega() -> Outcome {
    let mut o = Outcome::new();
    let mut r = rng(8008);
    let mut max = 0;
    for seed in 1..=50u64 {
        let n = r.gen_range(5..=40);
        let g = generate(Family::RandomPlanar(n, seed));
        let w = omega_half(&g, DEFAULT_NODE_BUDGET).unwrap();
        match w.exact() {
            Some(w) => {
                max = max.max(w);
                o.check(w <= 4, || format!("random-planar:{n},{seed}: omega {w}"));
            }
            None => o.check(false, || format!("random-planar:{n},{seed}: search did not finish")),
        }
        o.log(format_args!("{n} {seed} {w:?}"));
    }
    o.summary = format!("50 seeds, n <= 40, largest omega {max}");
    o
}

type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

const CRITERIA: [Criterion; 8] = [
    (1, "join spectrum exactness", Duration::from_secs(30), join_spectrum),
    (2, "minor-free floor witnesses", Duration::from_secs(30), minor_free_floor),
    (3, "planar floor witnesses", Duration::from_secs(60), planar_floor),
    (4, "four-point solver", Duration::from_secs(10), four_points),
    (5, "separator bound end to end", Duration::from_secs(180), separator_bounds),
    (6, "oracle equivalences", Duration::from_secs(120), oracle_equivalences),
    (7, "bipartite edge bounds", Duration::from_secs(120), edge_bounds),
    (8, "planar omega consistency", Duration::from_secs(120), planar_omega),
];

fn main() {
    let mut failed = 0;
    let mut records = Vec::new();
    for &(id, name, limit, run) in &CRITERIA {
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let pass = out.pass && took <= limit;
        failed += !pass as usize;
        println!(
            "{} criterion {id} ({name}): {} [{:.2}s, limit {}s]",
            if pass { "PASS" } else { "FAIL" },
            out.summary,
            took.as_secs_f64(),
            limit.as_secs()
        );
        for note in &out.notes {
            println!("     note: {note}");
        }
        if took > limit {
            println!("     note: over the time limit");
        }
        records.push(out.record);
    }

    let start = Instant::now();
    let mut differing = Vec::new();
    for (&(id, _, _, run), first) in CRITERIA.iter().zip(&records) {
        if run().record != *first {
            differing.push(id);
        }
    }
    let pass = differing.is_empty();
    failed += !pass as usize;
    println!(
        "{} criterion 9 (determinism): criteria 1-8 rerun with identical seeds, {} [{:.2}s]",
        if pass { "PASS" } else { "FAIL" },
        if pass { "all records byte-identical".to_string() } else { format!("records differ for {differing:?}") },
        start.elapsed().as_secs_f64()
    );

    println!("acceptance: {} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
