//! Undirected simple graphs on dense `0..n` vertex ids, the generator
//! families used throughout the crate, and cut statistics.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sorted, duplicate-free list of vertex ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn from_vec(mut v: Vec<usize>) -> Self {
        v.sort_unstable();
        v.dedup();
        Self(v)
    }

    pub fn range(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Self::from_vec(v)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.first_common(other).is_none()
    }

    fn first_common(&self, other: &VertexSet) -> Option<usize> {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return Some(self.0[i]),
            }
        }
        None
    }

    /// Vertices of `0..n` not in `self`.
    pub fn complement(&self, n: usize) -> VertexSet {
        Self((0..n).filter(|&v| !self.contains(v)).collect())
    }

    /// Map local ids (indices into `self`) back to host ids.
    pub fn lift(&self, local: &VertexSet) -> VertexSet {
        Self::from_vec(local.iter().map(|i| self.0[i]).collect())
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::from_vec(iter.into_iter().collect())
    }
}

/// Undirected simple graph. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Graph", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("edges", &self.edges)?;
        st.end()
    }
}

impl Graph {
    /// Builds a graph, rejecting self-loops, parallel edges and
    /// out-of-range endpoints. Edge orientation is irrelevant.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge ({u},{v}) out of range for n={n}")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!("duplicate edge ({},{})", w[0].0, w[0].1)));
        }
        Ok(Self::from_sorted_unique(n, list))
    }

    fn from_sorted_unique(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Self { n, edges, adj }
    }

    /// Same as [`Graph::from_edges`] but silently drops duplicates.
    fn from_edges_dedup(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut list: Vec<_> = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        list.sort_unstable();
        list.dedup();
        debug_assert!(list.iter().all(|&(u, v)| u != v && v < n));
        Self::from_sorted_unique(n, list)
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_unique(n, Vec::new())
    }

    /// `|G|`
    pub fn order(&self) -> usize {
        self.n
    }

    /// `‖G‖`
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Induced subgraph on `s`; vertex `i` of the result is `s[i]`.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Graph {
        let mut local = vec![usize::MAX; self.n];
        for (i, v) in s.iter().enumerate() {
            local[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| local[u] != usize::MAX && local[v] != usize::MAX)
            .map(|&(u, v)| (local[u], local[v]));
        Self::from_edges_dedup(s.len(), edges)
    }

    /// Connected components ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        self.components_avoiding(&VertexSet::new())
    }

    /// Connected components of `G - removed`, ordered by smallest vertex.
    pub fn components_avoiding(&self, removed: &VertexSet) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n];
        for v in removed.iter() {
            seen[v] = true;
        }
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            out.push(VertexSet::from_vec(comp));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Number of edges with one endpoint in `a` and the other in `b`.
    pub fn cut_size(&self, a: &VertexSet, b: &VertexSet) -> Result<usize> {
        if let Some(v) = a.first_common(b) {
            return Err(Error::Overlap(v));
        }
        let mut side = vec![0u8; self.n];
        for v in a.iter() {
            side[v] = 1;
        }
        for v in b.iter() {
            side[v] = 2;
        }
        Ok(self
            .edges
            .iter()
            .filter(|&&(u, v)| side[u] | side[v] == 3)
            .count())
    }

    pub(crate) fn mask(&self, s: &VertexSet) -> Vec<bool> {
        let mut m = vec![false; self.n];
        for v in s.iter() {
            m[v] = true;
        }
        m
    }

    pub fn degree_sum(&self) -> usize {
        2 * self.edges.len()
    }
}

/// Complete join `g1 ⊕ g2`. Vertices of `g2` are shifted by `|g1|`.
pub fn complete_join(g1: &Graph, g2: &Graph) -> Graph {
    let n1 = g1.order();
    let mut edges = Vec::with_capacity(g1.size() + g2.size() + n1 * g2.order());
    edges.extend_from_slice(g1.edges());
    for u in 0..n1 {
        for v in 0..g2.order() {
            edges.push((u, n1 + v));
        }
    }
    edges.extend(g2.edges().iter().map(|&(u, v)| (u + n1, v + n1)));
    edges.sort_unstable();
    Graph::from_sorted_unique(n1 + g2.order(), edges)
}

/// Disjoint union; vertices of `g2` are shifted by `|g1|`.
pub fn disjoint_union(g1: &Graph, g2: &Graph) -> Graph {
    let n1 = g1.order();
    let mut edges = g1.edges().to_vec();
    edges.extend(g2.edges().iter().map(|&(u, v)| (u + n1, v + n1)));
    Graph::from_sorted_unique(n1 + g2.order(), edges)
}

/// Generator families. `Path(m)` has `m` vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    Empty(usize),
    Star(usize),
    CompleteBipartite(usize, usize),
    Grid(usize, usize),
    RandomPlanar(usize, u64),
    /// `K_{h-2} ⊕ (n-h+2)K_1`
    MinorFreeWitness { h: usize, n: usize },
    /// `K_2 ⊕ P_{n-2}`
    PlanarWitness(usize),
}

impl Family {
    /// Short family name as used on the command line and in CSV rows.
    pub fn name(&self) -> &'static str {
        match self {
            Family::Path(_) => "path",
            Family::Cycle(_) => "cycle",
            Family::Complete(_) => "complete",
            Family::Empty(_) => "empty",
            Family::Star(_) => "star",
            Family::CompleteBipartite(..) => "complete-bipartite",
            Family::Grid(..) => "grid",
            Family::RandomPlanar(..) => "random-planar",
            Family::MinorFreeWitness { .. } => "minor-free-witness",
            Family::PlanarWitness(_) => "planar-witness",
        }
    }

    /// Every family here except the joins and complete graphs is planar.
    pub fn is_planar(&self) -> bool {
        match *self {
            Family::Complete(m) => m <= 4,
            Family::CompleteBipartite(a, b) => a.min(b) <= 2,
            Family::MinorFreeWitness { h, n } => h <= 4 || n - (h - 2) <= 2,
            _ => true,
        }
    }

    /// Replace the seed of a seeded family; other families are unchanged.
    pub fn with_seed(self, seed: u64) -> Family {
        match self {
            Family::RandomPlanar(n, _) => Family::RandomPlanar(n, seed),
            other => other,
        }
    }

    pub fn generate(&self) -> Result<Graph> {
        generate(*self)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Path(m)
            | Family::Cycle(m)
            | Family::Complete(m)
            | Family::Empty(m)
            | Family::Star(m)
            | Family::PlanarWitness(m) => write!(f, "{}:{m}", self.name()),
            Family::CompleteBipartite(a, b) | Family::Grid(a, b) => write!(f, "{}:{a},{b}", self.name()),
            Family::RandomPlanar(n, seed) => write!(f, "{}:{n},{seed}", self.name()),
            Family::MinorFreeWitness { h, n } => write!(f, "{}:{h},{n}", self.name()),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Parses `name:a[,b]`, e.g. `grid:3,3`, `random-planar:100,7`.
    /// `random-planar:n` defaults the seed to 0.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse { line: 0, msg: format!("generator `{s}`: {msg}") };
        let (name, args) = s.split_once(':').ok_or_else(|| bad("expected name:args"))?;
        let nums: Vec<u64> = args
            .split(',')
            .map(|a| a.trim().parse::<u64>().map_err(|_| bad("non-integer argument")))
            .collect::<Result<_>>()?;
        let one = || match nums.as_slice() {
            [a] => Ok(*a as usize),
            _ => Err(bad("expected one argument")),
        };
        let two = || match nums.as_slice() {
            [a, b] => Ok((*a as usize, *b)),
            _ => Err(bad("expected two arguments")),
        };
        Ok(match name.replace('_', "-").as_str() {
            "path" => Family::Path(one()?),
            "cycle" => Family::Cycle(one()?),
            "complete" => Family::Complete(one()?),
            "empty" => Family::Empty(one()?),
            "star" => Family::Star(one()?),
            "complete-bipartite" => {
                let (a, b) = two()?;
                Family::CompleteBipartite(a, b as usize)
            }
            "grid" => {
                let (a, b) = two()?;
                Family::Grid(a, b as usize)
            }
            "random-planar" => match nums.as_slice() {
                [n] => Family::RandomPlanar(*n as usize, 0),
                [n, seed] => Family::RandomPlanar(*n as usize, *seed),
                _ => return Err(bad("expected n[,seed]")),
            },
            "minor-free-witness" => {
                let (h, n) = two()?;
                Family::MinorFreeWitness { h, n: n as usize }
            }
            "planar-witness" => Family::PlanarWitness(one()?),
            _ => return Err(bad("unknown family")),
        })
    }
}

/// Deterministic generator dispatch.
pub fn generate(family: Family) -> Result<Graph> {
    let need = |ok: bool, msg: String| if ok { Ok(()) } else { Err(Error::OutOfRange(msg)) };
    match family {
        Family::Path(m) => {
            need(m >= 1, format!("path needs m >= 1, got {m}"))?;
            Ok(path(m))
        }
        Family::Cycle(m) => {
            need(m >= 3, format!("cycle needs m >= 3, got {m}"))?;
            Ok(Graph::from_sorted_unique(
                m,
                {
                    let mut e: Vec<_> = (0..m - 1).map(|i| (i, i + 1)).collect();
                    e.push((0, m - 1));
                    e.sort_unstable();
                    e
                },
            ))
        }
        Family::Complete(m) => {
            need(m >= 1, format!("complete needs m >= 1, got {m}"))?;
            Ok(complete(m))
        }
        Family::Empty(m) => {
            need(m >= 1, format!("empty needs m >= 1, got {m}"))?;
            Ok(Graph::empty(m))
        }
        Family::Star(m) => {
            need(m >= 1, format!("star needs m >= 1, got {m}"))?;
            Ok(Graph::from_sorted_unique(m, (1..m).map(|v| (0, v)).collect()))
        }
        Family::CompleteBipartite(a, b) => {
            need(a >= 1 && b >= 1, format!("complete-bipartite needs a,b >= 1, got {a},{b}"))?;
            Ok(complete_join(&Graph::empty(a), &Graph::empty(b)))
        }
        Family::Grid(a, b) => {
            need(a >= 1 && b >= 1, format!("grid needs a,b >= 1, got {a},{b}"))?;
            Ok(grid(a, b))
        }
        Family::RandomPlanar(n, seed) => random_planar(n, seed).map(|t| t.graph),
        Family::MinorFreeWitness { h, n } => {
            need(h >= 2 && n >= h, format!("minor-free-witness needs 2 <= h <= n, got h={h}, n={n}"))?;
            let core = complete(h - 2);
            Ok(complete_join(&core, &Graph::empty(n - h + 2)))
        }
        Family::PlanarWitness(n) => {
            need(n >= 4, format!("planar-witness needs n >= 4, got {n}"))?;
            Ok(complete_join(&complete(2), &path(n - 2)))
        }
    }
}

fn path(m: usize) -> Graph {
    Graph::from_sorted_unique(m, (1..m).map(|i| (i - 1, i)).collect())
}

fn complete(m: usize) -> Graph {
    let mut e = Vec::with_capacity(m * m.saturating_sub(1) / 2);
    for u in 0..m {
        for v in u + 1..m {
            e.push((u, v));
        }
    }
    Graph::from_sorted_unique(m, e)
}

/// `a` rows by `b` columns; vertex `(r, c)` has id `r * b + c`.
fn grid(a: usize, b: usize) -> Graph {
    let id = |r: usize, c: usize| r * b + c;
    let mut e = Vec::new();
    for r in 0..a {
        for c in 0..b {
            if c + 1 < b {
                e.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < a {
                e.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    e.sort_unstable();
    Graph::from_sorted_unique(a * b, e)
}

/// A maximal planar graph together with the face list that proves it.
#[derive(Debug, Clone)]
pub struct Triangulation {
    pub graph: Graph,
    /// Triangular faces, including the outer one.
    pub faces: Vec<[usize; 3]>,
}

impl Triangulation {
    /// Euler's formula plus every edge lying on exactly two faces.
    pub fn check_planarity_log(&self) -> bool {
        let (n, m, f) = (self.graph.order(), self.graph.size(), self.faces.len());
        if n + f != m + 2 {
            return false;
        }
        let mut count = std::collections::HashMap::new();
        for face in &self.faces {
            for k in 0..3 {
                let (u, v) = (face[k], face[(k + 1) % 3]);
                if !self.graph.has_edge(u, v) {
                    return false;
                }
                *count.entry((u.min(v), u.max(v))).or_insert(0usize) += 1;
            }
        }
        count.len() == m && count.values().all(|&c| c == 2)
    }
}

/// Stacked triangulation: start from a triangle (two faces) and repeatedly
/// insert a vertex into a uniformly chosen face, joining it to the corners.
pub fn random_planar(n: usize, seed: u64) -> Result<Triangulation> {
    if n < 3 {
        return Err(Error::OutOfRange(format!("random-planar needs n >= 3, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut faces = vec![[0, 1, 2], [0, 2, 1]];
    let mut edges = vec![(0, 1), (0, 2), (1, 2)];
    for v in 3..n {
        let k = rng.gen_range(0..faces.len());
        let [a, b, c] = faces[k];
        faces[k] = [a, b, v];
        faces.push([b, c, v]);
        faces.push([c, a, v]);
        edges.extend([(a, v), (b, v), (c, v)]);
    }
    edges.sort_unstable();
    Ok(Triangulation { graph: Graph::from_sorted_unique(n, edges), faces })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(v: &[usize]) -> VertexSet {
        VertexSet::from_vec(v.to_vec())
    }

    #[test]
    fn join_of_completes_is_complete() {
        let k2 = generate(Family::Complete(2)).unwrap();
        let j = complete_join(&k2, &k2);
        assert_eq!((j.order(), j.size()), (4, 6));
        let k1 = generate(Family::Complete(1)).unwrap();
        assert_eq!(complete_join(&k1, &k1), generate(Family::Complete(2)).unwrap());
        let j = complete_join(&k2, &Graph::empty(3));
        assert_eq!((j.order(), j.size()), (5, 7));
    }

    #[test]
    fn generator_counts() {
        let g = generate(Family::Grid(3, 3)).unwrap();
        assert_eq!((g.order(), g.size()), (9, 12));
        let g = generate(Family::MinorFreeWitness { h: 4, n: 10 }).unwrap();
        assert_eq!((g.order(), g.size()), (10, 17));
        assert_eq!(generate(Family::PlanarWitness(4)).unwrap(), generate(Family::Complete(4)).unwrap());
        assert!(generate(Family::PlanarWitness(3)).is_err());
        assert!(generate(Family::MinorFreeWitness { h: 5, n: 4 }).is_err());
        assert!(generate(Family::Cycle(2)).is_err());
    }

    #[test]
    fn random_planar_is_maximal_and_logged() {
        for seed in 0..20 {
            for n in [3, 4, 10, 57] {
                let t = random_planar(n, seed).unwrap();
                assert_eq!(t.graph.size(), 3 * n - 6);
                assert!(t.check_planarity_log());
            }
        }
        assert_eq!(random_planar(30, 5).unwrap().graph, random_planar(30, 5).unwrap().graph);
    }

    #[test]
    fn cut_sizes() {
        let k4 = generate(Family::Complete(4)).unwrap();
        assert_eq!(k4.cut_size(&vs(&[0]), &vs(&[1, 2, 3])).unwrap(), 3);
        assert_eq!(k4.cut_size(&VertexSet::new(), &vs(&[1, 2])).unwrap(), 0);
        assert_eq!(k4.cut_size(&vs(&[0, 1]), &vs(&[1, 2])), Err(Error::Overlap(1)));
        // plus-shape against the four corners
        let g = generate(Family::Grid(3, 3)).unwrap();
        assert_eq!(g.cut_size(&vs(&[1, 3, 4, 5, 7]), &vs(&[0, 2, 6, 8])).unwrap(), 8);
    }

    #[test]
    fn plumbing_ops() {
        let g = Graph::empty(3);
        assert_eq!(g.components(), vec![vs(&[0]), vs(&[1]), vs(&[2])]);
        let k4 = generate(Family::Complete(4)).unwrap();
        assert_eq!(k4.induced_subgraph(&vs(&[0, 1, 2])), generate(Family::Complete(3)).unwrap());
        assert_eq!(generate(Family::Star(5)).unwrap().degree(0), 4);
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Graph::from_edges(3, [(0, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
    }

    #[test]
    fn family_round_trips_through_text() {
        for f in [
            Family::Grid(3, 4),
            Family::RandomPlanar(100, 7),
            Family::MinorFreeWitness { h: 5, n: 40 },
            Family::PlanarWitness(50),
            Family::Path(1),
        ] {
            assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
        }
        assert!("grid:3".parse::<Family>().is_err());
        assert!("blob:3".parse::<Family>().is_err());
    }
}
