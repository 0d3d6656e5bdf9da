//! Topological grads at depth 0 and ½, clique detection in `G∇̃½`, and the
//! greedy constructions behind the bipartite edge bounds.
//!
//! `∇̃₀(G)` is exact (max-flow). `ω(G∇̃½)` is exact up to `n ≤ 40` and a
//! search budget. `∇̃½(G)` is exact for `n ≤ 10`; beyond that only a
//! certified lower bound and a simple upper bound are known, and checks
//! that depend on it report whether the bounds settle them.

mod bipdens;
mod densest;
mod greedy;
mod subdivision;

pub use bipdens::{
    bipdens2_check, bipdens_check, count_triangles, BipDens2Report, BipDensReport, CheckStatus, InequalityCheck,
    TriangleCheck,
};
pub use densest::{densest_subgraph, induced_density, mad};
pub use greedy::{
    find_k3p, greedy_half_minor, greedy_half_minor_ordered, greedy_half_minor_triples,
    greedy_half_minor_triples_ordered, GreedyOrder, ShallowMinorCertificate, Violation, WitnessedTriple,
};
pub use subdivision::{
    best_half_minor_on, contains_k_sub, nabla_half_exact, nabla_half_lower, omega_half, HalfEdge, HalfMinor,
    KSubResult, OmegaHalf, SearchBudget, DEFAULT_NODE_BUDGET, K_SUB_MAX_K, K_SUB_MAX_N, NABLA_HALF_EXACT_MAX_N,
};

use serde::Serialize;

use crate::error::Result;
use crate::graph::{Graph, VertexSet};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GradReport {
    pub nabla0: Rational,
    pub nabla_half_lower: Rational,
    pub nabla_half_exact: Option<Rational>,
    pub omega_half: OmegaHalf,
    /// Depth-½ minor realising `nabla_half_lower`.
    pub witness: HalfMinor,
}

/// Starting vertices tried by [`omega_half_or_range`] on large graphs.
const LOCAL_STARTS: usize = 8;
const LOCAL_NODE_BUDGET: u64 = 200_000;

/// `ω(G∇̃½)` where searchable. Larger graphs get a lower bound from exact
/// searches on BFS balls of 40 vertices around the highest-degree vertices.
pub fn omega_half_or_range(g: &Graph, budget: impl Into<SearchBudget>) -> Result<OmegaHalf> {
    let budget = budget.into();
    if g.order() <= K_SUB_MAX_N {
        return omega_half(g, budget);
    }
    let mut at_least = if g.size() > 0 { 2 } else { 1 };
    let mut starts: Vec<usize> = (0..g.order()).collect();
    starts.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let local = SearchBudget { nodes: budget.nodes.min(LOCAL_NODE_BUDGET), ..budget };
    for &v in starts.iter().take(LOCAL_STARTS) {
        let ball = bfs_ball(g, v, K_SUB_MAX_N);
        at_least = at_least.max(omega_half(&g.induced_subgraph(&ball), local)?.lower());
    }
    Ok(OmegaHalf::Range { at_least, unknown_from: at_least + 1 })
}

fn bfs_ball(g: &Graph, v: usize, limit: usize) -> VertexSet {
    let mut seen = vec![false; g.order()];
    let mut order = vec![v];
    seen[v] = true;
    let mut i = 0;
    while i < order.len() && order.len() < limit {
        for &w in g.neighbors(order[i]) {
            if !seen[w] && order.len() < limit {
                seen[w] = true;
                order.push(w);
            }
        }
        i += 1;
    }
    VertexSet::from_vec(order)
}

pub fn grad_report(g: &Graph, budget: impl Into<SearchBudget>) -> Result<GradReport> {
    let (_, nabla0) = densest_subgraph(g);
    let (nabla_half_lower, witness) = nabla_half_lower(g);
    let nabla_half_exact = match g.order() {
        0 => None,
        n if n <= NABLA_HALF_EXACT_MAX_N => Some(nabla_half_exact(g)?.0),
        _ => None,
    };
    Ok(GradReport { nabla0, nabla_half_lower, nabla_half_exact, omega_half: omega_half_or_range(g, budget)?, witness })
}

/// Upper bounds known for a graph class, used when the exact values are
/// out of reach.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct GradHints {
    pub omega_hi: Option<usize>,
    pub nabla_half_hi: Option<Rational>,
}

/// Known values or intervals for the three grads of one graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GradBounds {
    pub nabla0: Rational,
    pub omega: OmegaHalf,
    pub omega_hi: usize,
    pub nabla_half_lo: Rational,
    pub nabla_half_hi: Rational,
    pub nabla_half_exact: Option<Rational>,
}

impl GradBounds {
    /// Trivial upper bounds: a branch vertex of `K_k` needs degree `k−1`,
    /// and `‖H‖/|H| ≤ Δ/2` for every depth-½ minor `H` (each `H`-edge at a
    /// branch set `S` uses a host edge inside `S` or two edges leaving it).
    pub fn compute(g: &Graph, hints: &GradHints, budget: impl Into<SearchBudget>) -> Result<GradBounds> {
        let report = grad_report(g, budget)?;
        Ok(Self::from_report(g, &report, hints))
    }

    pub fn from_report(g: &Graph, report: &GradReport, hints: &GradHints) -> GradBounds {
        let omega = report.omega_half;
        let omega_hi = match omega.exact() {
            Some(w) => w,
            None => {
                let trivial = g.max_degree() + 1;
                hints.omega_hi.map_or(trivial, |h| h.min(trivial)).max(omega.lower())
            }
        };
        let (lo, hi) = match report.nabla_half_exact {
            Some(t) => (t, t),
            None => {
                let lo = report.nabla_half_lower.max(report.nabla0);
                let trivial = Rational::new(g.max_degree() as i64, 2);
                let hi = hints.nabla_half_hi.map_or(trivial, |h| h.min(trivial)).max(lo);
                (lo, hi)
            }
        };
        GradBounds {
            nabla0: report.nabla0,
            omega,
            omega_hi,
            nabla_half_lo: lo,
            nabla_half_hi: hi,
            nabla_half_exact: report.nabla_half_exact,
        }
    }
}
