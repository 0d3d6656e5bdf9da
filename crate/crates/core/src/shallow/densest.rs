//! Exact densest subgraph (`∇̃₀`) by parametric min cut.

use std::collections::VecDeque;

use crate::graph::{Graph, VertexSet};
use crate::rational::Rational;

/// Dinic's max-flow on an adjacency-list residual network.
struct FlowNetwork {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        Self { head: vec![Vec::new(); nodes], to: Vec::new(), cap: Vec::new() }
    }

    fn add_edge(&mut self, u: usize, v: usize, cap_uv: i64, cap_vu: i64) {
        self.head[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(cap_uv);
        self.head[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(cap_vu);
    }

    fn levels(&self, s: usize) -> Vec<usize> {
        let mut level = vec![usize::MAX; self.head.len()];
        level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &e in &self.head[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && level[v] == usize::MAX {
                    level[v] = level[u] + 1;
                    q.push_back(v);
                }
            }
        }
        level
    }

    fn augment(&mut self, u: usize, t: usize, pushed: i64, level: &[usize], iter: &mut [usize]) -> i64 {
        if u == t {
            return pushed;
        }
        while iter[u] < self.head[u].len() {
            let e = self.head[u][iter[u]];
            let v = self.to[e];
            if self.cap[e] > 0 && level[v] == level[u] + 1 {
                let d = self.augment(v, t, pushed.min(self.cap[e]), level, iter);
                if d > 0 {
                    self.cap[e] -= d;
                    self.cap[e ^ 1] += d;
                    return d;
                }
            }
            iter[u] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut flow = 0;
        loop {
            let level = self.levels(s);
            if level[t] == usize::MAX {
                return flow;
            }
            let mut iter = vec![0; self.head.len()];
            loop {
                let f = self.augment(s, t, i64::MAX, &level, &mut iter);
                if f == 0 {
                    break;
                }
                flow += f;
            }
        }
    }

    /// Nodes reachable from `s` in the residual network.
    fn source_side(&self, s: usize) -> Vec<bool> {
        let level = self.levels(s);
        level.iter().map(|&l| l != usize::MAX).collect()
    }
}

/// Returns a vertex set `S` with `‖G[S]‖/|S| > k/scale` if one exists.
///
/// Network: `s→v` capacity `scale·m`, `v→t` capacity `scale·m + 2k − scale·deg(v)`,
/// and capacity `scale` both ways on each edge. A cut `{s} ∪ S` costs
/// `scale·m·n + 2(k·|S| − scale·‖G[S]‖)`.
fn denser_than(g: &Graph, k: i64, scale: i64) -> Option<VertexSet> {
    let n = g.order();
    let m = g.size() as i64;
    let (s, t) = (n, n + 1);
    let mut net = FlowNetwork::new(n + 2);
    for v in 0..n {
        net.add_edge(s, v, scale * m, 0);
        net.add_edge(v, t, scale * m + 2 * k - scale * g.degree(v) as i64, 0);
    }
    for &(u, v) in g.edges() {
        net.add_edge(u, v, scale, scale);
    }
    let flow = net.max_flow(s, t);
    if flow >= scale * m * n as i64 {
        return None;
    }
    let side = net.source_side(s);
    let set: VertexSet = (0..n).filter(|&v| side[v]).collect();
    (!set.is_empty()).then_some(set)
}

/// Densest subgraph: a vertex set maximizing `‖G[S]‖/|S|` and that density.
///
/// Binary search over the grid `k / (2n²)`: two distinct densities with
/// denominators at most `n` differ by at least `1/(n(n−1))`, so the
/// maximizer found at the last feasible grid point is optimal.
pub fn densest_subgraph(g: &Graph) -> (VertexSet, Rational) {
    let n = g.order();
    if n == 0 {
        return (VertexSet::new(), Rational::integer(0));
    }
    if g.size() == 0 {
        return (VertexSet::from_vec(vec![0]), Rational::integer(0));
    }
    let scale = 2 * (n as i64) * (n as i64);
    let (mut lo, mut hi) = (0i64, scale * n as i64);
    let mut best = denser_than(g, 0, scale).expect("an edge is denser than 0");
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        match denser_than(g, mid, scale) {
            Some(set) => {
                lo = mid;
                best = set;
            }
            None => hi = mid,
        }
    }
    let density = induced_density(g, &best);
    (best, density)
}

pub fn induced_density(g: &Graph, s: &VertexSet) -> Rational {
    if s.is_empty() {
        return Rational::integer(0);
    }
    let mask = g.mask(s);
    let e = g.edges().iter().filter(|&&(u, v)| mask[u] && mask[v]).count();
    Rational::new(e as i64, s.len() as i64)
}

/// Maximum average degree, `2·∇̃₀`.
pub fn mad(g: &Graph) -> Rational {
    Rational::integer(2) * densest_subgraph(g).1
}
