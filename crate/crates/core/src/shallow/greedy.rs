//! Greedy depth-½ minor constructions on a bipartition `(A, B)`.
//!
//! Each `x ∈ A` with many neighbours in `B` either subdivides a new edge of
//! `H` (a graph on `B`) or, when its neighbourhood is already saturated,
//! exposes a large clique in `G∇̃½` or a `K_{3,p}` subgraph.

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::subdivision::{HalfEdge, HalfMinor};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Order in which the high-degree part of `A` is processed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GreedyOrder {
    #[default]
    Ascending,
    /// Seeded random permutation.
    Shuffled(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessedTriple {
    pub triple: [usize; 3],
    pub witness: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `x` together with its `B`-neighbourhood (a clique of `H`) is a
    /// ≤1-subdivided clique larger than the supplied `ω`.
    Clique { vertex: usize, minor: HalfMinor },
    /// A triple of `B` with `p` common neighbours in `A`.
    KThreeP { triple: [usize; 3], side: Vec<usize> },
}

impl Violation {
    pub fn verify(&self, g: &Graph) -> bool {
        match self {
            Violation::Clique { minor, .. } => minor.verify(g) && minor.is_complete(),
            Violation::KThreeP { triple, side } => {
                let distinct: HashSet<usize> = triple.iter().chain(side).copied().collect();
                distinct.len() == 3 + side.len()
                    && side.iter().all(|&x| triple.iter().all(|&t| g.has_edge(x, t)))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShallowMinorCertificate {
    pub a1: VertexSet,
    pub a2: VertexSet,
    /// Vertices of `A2` that subdivide an edge of `H`.
    pub z0: VertexSet,
    /// `H` on branch set `B`; every edge is realised through a `Z0` vertex.
    pub minor: HalfMinor,
    /// `Z1 … Z_{p−1}`, for the triple construction only.
    pub triple_sets: Option<Vec<Vec<WitnessedTriple>>>,
    pub violation: Option<Violation>,
}

impl ShallowMinorCertificate {
    /// Machine check of the certificate against the host.
    pub fn verify(&self, g: &Graph, a: &VertexSet, b: &VertexSet) -> bool {
        if self.minor.branches != *b || !self.a1.union(&self.a2).eq(a) || !self.a1.is_disjoint(&self.a2) {
            return false;
        }
        if !self.minor.verify(g) || self.minor.size() != self.z0.len() {
            return false;
        }
        let witnesses: VertexSet = self.minor.edges.iter().filter_map(|e| e.via).collect();
        if witnesses != self.z0 || self.minor.edges.iter().any(|e| e.via.is_none()) {
            return false;
        }
        if !self.z0.iter().all(|x| self.a2.contains(x)) {
            return false;
        }
        if let Some(sets) = &self.triple_sets {
            let h = self.minor.to_graph();
            let local = |v: usize| b.as_slice().binary_search(&v).ok();
            let mut seen = HashSet::new();
            for set in sets {
                let mut in_set = HashSet::new();
                for t in set {
                    if !in_set.insert(t.triple) || !seen.insert(t.witness) || !self.a2.contains(t.witness) {
                        return false;
                    }
                    if self.z0.contains(t.witness) {
                        return false;
                    }
                    let Some(l) = t.triple.iter().map(|&v| local(v)).collect::<Option<Vec<_>>>() else {
                        return false;
                    };
                    let triangle = h.has_edge(l[0], l[1]) && h.has_edge(l[0], l[2]) && h.has_edge(l[1], l[2]);
                    if !triangle || !t.triple.iter().all(|&v| g.has_edge(t.witness, v)) {
                        return false;
                    }
                }
            }
        }
        self.violation.as_ref().is_none_or(|v| v.verify(g))
    }
}

pub(crate) fn check_bipartition(g: &Graph, a: &VertexSet, b: &VertexSet) -> Result<()> {
    let n = g.order();
    if a.iter().chain(b.iter()).any(|v| v >= n) {
        return Err(Error::Precondition("A or B contains a vertex outside the graph".into()));
    }
    if !a.is_disjoint(b) {
        return Err(Error::Precondition("A and B must be disjoint".into()));
    }
    Ok(())
}

fn b_neighbors(g: &Graph, x: usize, b: &VertexSet) -> Vec<usize> {
    g.neighbors(x).iter().copied().filter(|&v| b.contains(v)).collect()
}

fn processing_order(a2: &VertexSet, order: GreedyOrder) -> Vec<usize> {
    let mut xs = a2.clone().into_vec();
    if let GreedyOrder::Shuffled(seed) = order {
        xs.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    xs
}

struct HBuilder {
    adjacent: HashSet<(usize, usize)>,
    edges: Vec<HalfEdge>,
    z0: Vec<usize>,
}

impl HBuilder {
    fn new() -> Self {
        Self { adjacent: HashSet::new(), edges: Vec::new(), z0: Vec::new() }
    }

    fn has(&self, u: usize, v: usize) -> bool {
        self.adjacent.contains(&(u.min(v), u.max(v)))
    }

    /// Adds the lexicographically first missing pair among `nbrs`.
    fn try_add(&mut self, x: usize, nbrs: &[usize]) -> bool {
        for (i, &u) in nbrs.iter().enumerate() {
            for &v in &nbrs[i + 1..] {
                if !self.has(u, v) {
                    self.adjacent.insert((u, v));
                    self.edges.push(HalfEdge { u, v, via: Some(x) });
                    self.z0.push(x);
                    return true;
                }
            }
        }
        false
    }

    fn minor(&self, b: &VertexSet) -> HalfMinor {
        let mut edges = self.edges.clone();
        edges.sort_by_key(|e| (e.u, e.v));
        HalfMinor { branches: b.clone(), edges }
    }
}

pub fn greedy_half_minor(g: &Graph, a: &VertexSet, b: &VertexSet, omega: usize) -> Result<ShallowMinorCertificate> {
    greedy_half_minor_ordered(g, a, b, omega, GreedyOrder::Ascending)
}

/// `A1` = vertices of `A` with at most `ω − 1` neighbours in `B`. Each
/// `x ∈ A2` subdivides the first pair of its `B`-neighbours not yet joined
/// in `H`; if none is left, `x ⊕ N_B(x)` is a subdivided `K_{deg+1}`.
pub fn greedy_half_minor_ordered(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    omega: usize,
    order: GreedyOrder,
) -> Result<ShallowMinorCertificate> {
    check_bipartition(g, a, b)?;
    if omega < 2 {
        return Err(Error::Precondition(format!("omega must be at least 2, got {omega}")));
    }
    let (a1, a2): (Vec<usize>, Vec<usize>) = a.iter().partition(|&x| b_neighbors(g, x, b).len() < omega);
    let a2 = VertexSet::from_vec(a2);
    let mut h = HBuilder::new();
    let mut violation = None;
    for x in processing_order(&a2, order) {
        let nbrs = b_neighbors(g, x, b);
        if h.try_add(x, &nbrs) {
            continue;
        }
        let mut edges: Vec<HalfEdge> = h
            .edges
            .iter()
            .filter(|e| nbrs.contains(&e.u) && nbrs.contains(&e.v))
            .copied()
            .collect();
        edges.extend(nbrs.iter().map(|&v| HalfEdge { u: x.min(v), v: x.max(v), via: None }));
        let branches: VertexSet = nbrs.iter().copied().chain([x]).collect();
        violation = Some(Violation::Clique { vertex: x, minor: HalfMinor { branches, edges } });
        break;
    }
    Ok(ShallowMinorCertificate {
        a1: VertexSet::from_vec(a1),
        a2,
        z0: VertexSet::from_vec(h.z0.clone()),
        minor: h.minor(b),
        triple_sets: None,
        violation,
    })
}

pub fn greedy_half_minor_triples(g: &Graph, a: &VertexSet, b: &VertexSet, p: usize) -> Result<ShallowMinorCertificate> {
    greedy_half_minor_triples_ordered(g, a, b, p, GreedyOrder::Ascending)
}

/// `A1` = vertices of `A` with at most 2 neighbours in `B`. Each `x ∈ A2`
/// subdivides a new `H`-edge when it can (`x ∈ Z0`); otherwise the first
/// triple of its neighbours (a triangle of `H`) goes into the first
/// `Z_i`, `1 ≤ i ≤ p−1`, not containing it. A triple already in every
/// `Z_i` yields `K_{3,p}`.
pub fn greedy_half_minor_triples_ordered(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    p: usize,
    order: GreedyOrder,
) -> Result<ShallowMinorCertificate> {
    check_bipartition(g, a, b)?;
    if p < 2 {
        return Err(Error::Precondition(format!("p must be at least 2, got {p}")));
    }
    let (a1, a2): (Vec<usize>, Vec<usize>) = a.iter().partition(|&x| b_neighbors(g, x, b).len() <= 2);
    let a2 = VertexSet::from_vec(a2);
    let mut h = HBuilder::new();
    let mut sets: Vec<Vec<WitnessedTriple>> = vec![Vec::new(); p - 1];
    let mut owners: Vec<HashMap<[usize; 3], usize>> = vec![HashMap::new(); p - 1];
    let mut violation = None;
    'outer: for x in processing_order(&a2, order) {
        let nbrs = b_neighbors(g, x, b);
        if h.try_add(x, &nbrs) {
            continue;
        }
        let mut first = None;
        for (i, &u) in nbrs.iter().enumerate() {
            for (j, &v) in nbrs.iter().enumerate().skip(i + 1) {
                for &w in &nbrs[j + 1..] {
                    let triple = [u, v, w];
                    first.get_or_insert(triple);
                    if let Some(slot) = owners.iter().position(|o| !o.contains_key(&triple)) {
                        owners[slot].insert(triple, x);
                        sets[slot].push(WitnessedTriple { triple, witness: x });
                        continue 'outer;
                    }
                }
            }
        }
        let triple = first.expect("vertices of A2 have at least three B-neighbours");
        let mut side: Vec<usize> = owners.iter().map(|o| o[&triple]).collect();
        side.push(x);
        violation = Some(Violation::KThreeP { triple, side });
        break;
    }
    Ok(ShallowMinorCertificate {
        a1: VertexSet::from_vec(a1),
        a2,
        z0: VertexSet::from_vec(h.z0.clone()),
        minor: h.minor(b),
        triple_sets: Some(sets),
        violation,
    })
}

/// Brute-force `K_{3,p}` search (for small hosts): a triple with `p`
/// common neighbours.
pub fn find_k3p(g: &Graph, p: usize) -> Option<([usize; 3], Vec<usize>)> {
    let n = g.order();
    for u in 0..n {
        for v in u + 1..n {
            let uv: Vec<usize> = g.neighbors(u).iter().copied().filter(|&x| g.has_edge(x, v)).collect();
            if uv.len() < p {
                continue;
            }
            for w in v + 1..n {
                let common: Vec<usize> = uv.iter().copied().filter(|&x| x != w && g.has_edge(x, w)).collect();
                if common.len() >= p {
                    return Some(([u, v, w], common[..p].to_vec()));
                }
            }
        }
    }
    None
}
