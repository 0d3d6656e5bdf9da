//! Depth-½ topological minors: graphs `H` whose edges are realised in `G`
//! either directly or by a path of length two through a private vertex.

use std::time::Instant;

use serde::Serialize;

use super::densest::densest_subgraph;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::rational::Rational;

pub const K_SUB_MAX_N: usize = 40;
pub const K_SUB_MAX_K: usize = 8;
pub const NABLA_HALF_EXACT_MAX_N: usize = 10;
/// Default number of search nodes for subdivision searches.
pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

/// Limits for subdivision searches. Results past a limit are reported
/// as unknown, never guessed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub nodes: u64,
    pub deadline: Option<Instant>,
}

impl From<u64> for SearchBudget {
    fn from(nodes: u64) -> Self {
        SearchBudget { nodes, deadline: None }
    }
}

/// One edge of `H` with its realisation in the host.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HalfEdge {
    pub u: usize,
    pub v: usize,
    /// Subdivision vertex, or `None` for a host edge.
    pub via: Option<usize>,
}

/// A graph `H ∈ G∇̃½` given by its branch vertices (host ids) and the
/// realisation of each of its edges.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HalfMinor {
    pub branches: VertexSet,
    pub edges: Vec<HalfEdge>,
}

impl HalfMinor {
    pub fn order(&self) -> usize {
        self.branches.len()
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn density(&self) -> Rational {
        Rational::new(self.size() as i64, self.order().max(1) as i64)
    }

    /// Realisations are host edges or 2-paths through distinct non-branch
    /// vertices; no pair appears twice.
    pub fn verify(&self, g: &Graph) -> bool {
        let mut used = vec![false; g.order()];
        let mut pairs = std::collections::HashSet::new();
        for b in self.branches.iter() {
            if b >= g.order() {
                return false;
            }
        }
        for e in &self.edges {
            if e.u == e.v || !self.branches.contains(e.u) || !self.branches.contains(e.v) {
                return false;
            }
            if !pairs.insert((e.u.min(e.v), e.u.max(e.v))) {
                return false;
            }
            match e.via {
                None => {
                    if !g.has_edge(e.u, e.v) {
                        return false;
                    }
                }
                Some(x) => {
                    if x >= g.order() || used[x] || self.branches.contains(x) {
                        return false;
                    }
                    if !g.has_edge(e.u, x) || !g.has_edge(x, e.v) {
                        return false;
                    }
                    used[x] = true;
                }
            }
        }
        true
    }

    /// `H` as a standalone graph on `0..|branches|`.
    pub fn to_graph(&self) -> Graph {
        let local = |v: usize| self.branches.as_slice().binary_search(&v).expect("branch vertex");
        Graph::from_edges(self.order(), self.edges.iter().map(|e| (local(e.u), local(e.v))))
            .expect("verified half minor is simple")
    }

    /// Every pair of branches is joined, i.e. this witnesses `K_k`.
    pub fn is_complete(&self) -> bool {
        let k = self.order();
        self.size() == k * k.saturating_sub(1) / 2
    }
}

/// Maximum bipartite matching of `left` items to right vertices
/// (augmenting paths). `options[i]` lists the right vertices item `i` may
/// use. Returns the matched right vertex per item.
pub(crate) fn max_matching(options: &[Vec<usize>], right_n: usize) -> Vec<Option<usize>> {
    fn try_item(
        i: usize,
        options: &[Vec<usize>],
        owner: &mut [Option<usize>],
        seen: &mut [bool],
    ) -> bool {
        for &r in &options[i] {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            if owner[r].is_none_or(|j| try_item(j, options, owner, seen)) {
                owner[r] = Some(i);
                return true;
            }
        }
        false
    }
    let mut owner: Vec<Option<usize>> = vec![None; right_n];
    let mut seen = vec![false; right_n];
    for i in 0..options.len() {
        seen.fill(false);
        try_item(i, options, &mut owner, &mut seen);
    }
    let mut matched = vec![None; options.len()];
    for (r, o) in owner.iter().enumerate() {
        if let Some(i) = o {
            matched[*i] = Some(r);
        }
    }
    matched
}

/// Largest depth-½ minor with branch set `s`: all host edges inside `s`
/// plus a maximum matching of the non-adjacent pairs onto common
/// neighbours outside `s`.
pub fn best_half_minor_on(g: &Graph, s: &VertexSet) -> HalfMinor {
    let inside = g.mask(s);
    let mut edges = Vec::new();
    let mut pairs = Vec::new();
    let mut options = Vec::new();
    let verts = s.as_slice();
    for (i, &u) in verts.iter().enumerate() {
        for &v in &verts[i + 1..] {
            if g.has_edge(u, v) {
                edges.push(HalfEdge { u, v, via: None });
                continue;
            }
            let common: Vec<usize> = g
                .neighbors(u)
                .iter()
                .copied()
                .filter(|&x| !inside[x] && g.has_edge(x, v))
                .collect();
            if !common.is_empty() {
                pairs.push((u, v));
                options.push(common);
            }
        }
    }
    for (k, m) in max_matching(&options, g.order()).into_iter().enumerate() {
        if let Some(x) = m {
            let (u, v) = pairs[k];
            edges.push(HalfEdge { u, v, via: Some(x) });
        }
    }
    HalfMinor { branches: s.clone(), edges }
}

/// Result of a bounded search.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum KSubResult {
    Found { witness: HalfMinor },
    NotFound,
    Unknown,
}

/// Searches for a ≤1-subdivision of `K_k` in `g` (`2 ≤ k ≤ 8`, `n ≤ 40`),
/// visiting at most `budget.nodes` partial branch sets.
pub fn contains_k_sub(g: &Graph, k: usize, budget: impl Into<SearchBudget>) -> Result<KSubResult> {
    let budget = budget.into();
    let n = g.order();
    if !(2..=K_SUB_MAX_K).contains(&k) {
        return Err(Error::OutOfRange(format!("k must be in 2..={K_SUB_MAX_K}, got {k}")));
    }
    if n > K_SUB_MAX_N {
        return Err(Error::TooLarge(format!("subdivision search supports n <= {K_SUB_MAX_N}, got {n}")));
    }
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | (1 << w)))
        .collect();
    let candidates: Vec<usize> = (0..n).filter(|&v| g.degree(v) >= k - 1).collect();
    let mut search = KSearch { adj: &adj, k, budget, nodes: 0, chosen: Vec::new() };
    match search.extend(&candidates, 0) {
        Some(true) => {
            let branches = VertexSet::from_vec(search.chosen.clone());
            let witness = realise(g, &branches).expect("search only accepts realisable sets");
            debug_assert!(witness.verify(g) && witness.is_complete());
            Ok(KSubResult::Found { witness })
        }
        Some(false) => Ok(KSubResult::NotFound),
        None => Ok(KSubResult::Unknown),
    }
}

struct KSearch<'a> {
    adj: &'a [u64],
    k: usize,
    budget: SearchBudget,
    nodes: u64,
    chosen: Vec<usize>,
}

impl KSearch<'_> {
    /// `Some(true)` found, `Some(false)` exhausted, `None` out of budget.
    fn extend(&mut self, candidates: &[usize], from: usize) -> Option<bool> {
        if self.chosen.len() == self.k {
            return Some(true);
        }
        let need = self.k - self.chosen.len();
        for idx in from..candidates.len() {
            if candidates.len() - idx < need {
                break;
            }
            let v = candidates[idx];
            self.nodes += 1;
            if self.nodes > self.budget.nodes {
                return None;
            }
            if self.nodes.is_multiple_of(1024) && self.budget.deadline.is_some_and(|d| Instant::now() >= d) {
                return None;
            }
            self.chosen.push(v);
            if self.feasible() && self.extend(candidates, idx + 1)? {
                return Some(true);
            }
            self.chosen.pop();
        }
        Some(false)
    }

    /// All non-adjacent chosen pairs can be given distinct private common
    /// neighbours. Adding branches only adds pairs and removes options, so
    /// an infeasible set has no feasible superset.
    fn feasible(&self) -> bool {
        let branch_mask = self.chosen.iter().fold(0u64, |m, &v| m | (1 << v));
        let mut options = Vec::new();
        for (i, &u) in self.chosen.iter().enumerate() {
            for &v in &self.chosen[i + 1..] {
                if self.adj[u] >> v & 1 == 1 {
                    continue;
                }
                let common = self.adj[u] & self.adj[v] & !branch_mask;
                if common == 0 {
                    return false;
                }
                options.push(common);
            }
        }
        matches_all(&options)
    }
}

/// Every option mask can take a distinct bit.
fn matches_all(options: &[u64]) -> bool {
    fn try_item(i: usize, options: &[u64], owner: &mut [usize; 64], seen: &mut u64) -> bool {
        let mut avail = options[i] & !*seen;
        while avail != 0 {
            let r = avail.trailing_zeros() as usize;
            avail &= avail - 1;
            *seen |= 1 << r;
            if owner[r] == usize::MAX || try_item(owner[r], options, owner, seen) {
                owner[r] = i;
                return true;
            }
        }
        false
    }
    if options.len() > 64 {
        return false;
    }
    let mut owner = [usize::MAX; 64];
    (0..options.len()).all(|i| {
        let mut seen = 0u64;
        try_item(i, options, &mut owner, &mut seen)
    })
}

/// Realises `K_{|branches|}` on the given branch set, if possible.
fn realise(g: &Graph, branches: &VertexSet) -> Option<HalfMinor> {
    let h = best_half_minor_on(g, branches);
    h.is_complete().then_some(h)
}

/// `ω(G∇̃½)`: exact, or a half-open range when the search budget ran out
/// (or the size cap was reached).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum OmegaHalf {
    Exact { omega: usize },
    /// `at_least ≤ ω`, and `K_{unknown_from}` was not decided.
    Range { at_least: usize, unknown_from: usize },
}

impl OmegaHalf {
    pub fn lower(&self) -> usize {
        match *self {
            OmegaHalf::Exact { omega } => omega,
            OmegaHalf::Range { at_least, .. } => at_least,
        }
    }

    pub fn exact(&self) -> Option<usize> {
        match *self {
            OmegaHalf::Exact { omega } => Some(omega),
            OmegaHalf::Range { .. } => None,
        }
    }
}

pub fn omega_half(g: &Graph, budget: impl Into<SearchBudget>) -> Result<OmegaHalf> {
    let budget = budget.into();
    if g.order() == 0 {
        return Ok(OmegaHalf::Exact { omega: 0 });
    }
    let mut best = 1;
    for k in 2..=K_SUB_MAX_K {
        if k > g.order() {
            return Ok(OmegaHalf::Exact { omega: best });
        }
        match contains_k_sub(g, k, budget)? {
            KSubResult::Found { .. } => best = k,
            KSubResult::NotFound => return Ok(OmegaHalf::Exact { omega: best }),
            KSubResult::Unknown => return Ok(OmegaHalf::Range { at_least: best, unknown_from: k }),
        }
    }
    if g.order() == K_SUB_MAX_K {
        return Ok(OmegaHalf::Exact { omega: best });
    }
    Ok(OmegaHalf::Range { at_least: best, unknown_from: K_SUB_MAX_K + 1 })
}

/// Exact `∇̃½(G)` for `n ≤ 10`, with a maximising `H`.
pub fn nabla_half_exact(g: &Graph) -> Result<(Rational, HalfMinor)> {
    let n = g.order();
    if n > NABLA_HALF_EXACT_MAX_N {
        return Err(Error::TooLarge(format!(
            "exact depth-1/2 grad supports n <= {NABLA_HALF_EXACT_MAX_N}, got {n}"
        )));
    }
    let mut best: Option<(Rational, HalfMinor)> = None;
    for mask in 1u32..(1 << n) {
        let s: VertexSet = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let h = best_half_minor_on(g, &s);
        let d = h.density();
        if best.as_ref().is_none_or(|(bd, _)| d > *bd) {
            best = Some((d, h));
        }
    }
    best.ok_or_else(|| Error::OutOfRange("empty graph".into()))
}

/// Lower bound on `∇̃½(G)` with an explicit certificate. Tries a few
/// branch sets (all vertices; vertices of degree ≥ 3; the complement of a
/// greedy independent set of low-degree vertices), builds the largest `H`
/// on each, and keeps the densest subgraph of the best.
pub fn nabla_half_lower(g: &Graph) -> (Rational, HalfMinor) {
    let n = g.order();
    let mut branch_sets = vec![VertexSet::range(n)];
    branch_sets.push((0..n).filter(|&v| g.degree(v) >= 3).collect());
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| (g.degree(v), v));
    let mut independent = vec![false; n];
    for &v in &by_degree {
        if !g.neighbors(v).iter().any(|&w| independent[w]) {
            independent[v] = true;
        }
    }
    branch_sets.push((0..n).filter(|&v| !independent[v]).collect());

    let mut best: Option<(Rational, HalfMinor)> = None;
    for s in branch_sets.into_iter().filter(|s| !s.is_empty()) {
        let h = best_half_minor_on(g, &s);
        let dense = restrict_to_densest(&h);
        let d = dense.density();
        if best.as_ref().is_none_or(|(bd, _)| d > *bd) {
            best = Some((d, dense));
        }
    }
    best.unwrap_or_else(|| (Rational::integer(0), HalfMinor { branches: VertexSet::new(), edges: vec![] }))
}

/// Sub-minor of `h` induced by the densest subgraph of `H`.
pub(crate) fn restrict_to_densest(h: &HalfMinor) -> HalfMinor {
    if h.order() == 0 {
        return h.clone();
    }
    let hg = h.to_graph();
    let (local, _) = densest_subgraph(&hg);
    let branches = h.branches.lift(&local);
    let edges = h
        .edges
        .iter()
        .filter(|e| branches.contains(e.u) && branches.contains(e.v))
        .copied()
        .collect();
    HalfMinor { branches, edges }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    const B: u64 = DEFAULT_NODE_BUDGET;

    #[test]
    fn c4_has_subdivided_triangle() {
        let g = generate(Family::Cycle(4)).unwrap();
        match contains_k_sub(&g, 3, B).unwrap() {
            KSubResult::Found { witness } => {
                assert_eq!(witness.branches.as_slice(), &[0, 1, 2]);
                assert!(witness.edges.contains(&HalfEdge { u: 0, v: 2, via: Some(3) }));
                assert!(witness.verify(&g));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(omega_half(&g, B).unwrap(), OmegaHalf::Exact { omega: 3 });
    }

    #[test]
    fn trees_and_stars() {
        let g = generate(Family::Star(4)).unwrap();
        assert_eq!(contains_k_sub(&g, 3, B).unwrap(), KSubResult::NotFound);
        assert_eq!(omega_half(&g, B).unwrap(), OmegaHalf::Exact { omega: 2 });
        assert_eq!(omega_half(&Graph::empty(3), B).unwrap(), OmegaHalf::Exact { omega: 1 });
    }

    #[test]
    fn complete_graphs() {
        let g = generate(Family::Complete(5)).unwrap();
        assert_eq!(omega_half(&g, B).unwrap(), OmegaHalf::Exact { omega: 5 });
    }

    #[test]
    fn one_subdivision_of_k5() {
        // branches 0..5, one subdivision vertex per pair
        let mut edges = vec![];
        let mut next = 5;
        for u in 0..5 {
            for v in u + 1..5 {
                edges.push((u, next));
                edges.push((v, next));
                next += 1;
            }
        }
        let g = Graph::from_edges(next, edges).unwrap();
        match contains_k_sub(&g, 5, B).unwrap() {
            KSubResult::Found { witness } => {
                assert!(witness.verify(&g));
                assert_eq!(witness.branches.as_slice(), &[0, 1, 2, 3, 4]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tiny_budget_is_unknown() {
        let g = generate(Family::Complete(6)).unwrap();
        assert_eq!(contains_k_sub(&g, 6, 3).unwrap(), KSubResult::Unknown);
        // the budget applies per k: K2 and K3 fit in 3 nodes, K4 does not
        assert_eq!(
            omega_half(&g, 3).unwrap(),
            OmegaHalf::Range { at_least: 3, unknown_from: 4 }
        );
    }

    #[test]
    fn rejects_out_of_range() {
        let g = generate(Family::Path(41)).unwrap();
        assert!(matches!(contains_k_sub(&g, 3, B), Err(Error::TooLarge(_))));
        let g = generate(Family::Path(4)).unwrap();
        assert!(contains_k_sub(&g, 9, B).is_err());
        assert!(contains_k_sub(&g, 1, B).is_err());
    }

    #[test]
    fn exact_nabla_half() {
        let k4 = generate(Family::Complete(4)).unwrap();
        assert_eq!(nabla_half_exact(&k4).unwrap().0, Rational::new(3, 2));
        let c6 = generate(Family::Cycle(6)).unwrap();
        let (d, h) = nabla_half_exact(&c6).unwrap();
        assert_eq!(d, Rational::integer(1));
        assert!(h.verify(&c6));
        let tree = generate(Family::Star(6)).unwrap();
        assert!(nabla_half_exact(&tree).unwrap().0 < Rational::integer(1));
        assert!(nabla_half_exact(&generate(Family::Path(11)).unwrap()).is_err());
    }

    #[test]
    fn lower_bound_is_certified() {
        for seed in 0..5 {
            let g = generate(Family::RandomPlanar(9, seed)).unwrap();
            let (lo, h) = nabla_half_lower(&g);
            assert!(h.verify(&g));
            assert_eq!(h.density(), lo);
            assert!(lo <= nabla_half_exact(&g).unwrap().0);
        }
    }

    #[test]
    fn matching_handles_contention() {
        let m = max_matching(&[vec![0, 1], vec![0], vec![1]], 2);
        assert_eq!(m.iter().filter(|x| x.is_some()).count(), 2);
        assert!(matches_all(&[0b11, 0b01]));
        assert!(!matches_all(&[0b1, 0b1]));
    }
}
