//! Brute-force oracles and seeded instance generators shared by the
//! integration tests. Nothing here calls into the algorithms it checks.

#![allow(dead_code)]

use fiedler_core::{Graph, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn adjacency_masks(g: &Graph) -> Vec<u64> {
    (0..g.order()).map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w)).collect()
}

/// Dense Laplacian eigenvalues by cyclic Jacobi rotations, ascending.
pub fn jacobi_spectrum(g: &Graph) -> Vec<f64> {
    let n = g.order();
    let mut a = vec![vec![0.0f64; n]; n];
    for v in 0..n {
        a[v][v] = g.degree(v) as f64;
    }
    for &(u, v) in g.edges() {
        a[u][v] = -1.0;
        a[v][u] = -1.0;
    }
    for _sweep in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j).map(|(i, j)| a[i][j] * a[i][j]).sum();
        if off < 1e-26 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                let t = sign / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// `max ‖G[S]‖/|S|` over all non-empty `S`.
pub fn brute_densest(g: &Graph) -> Rational {
    let n = g.order();
    assert!(n <= 20);
    let adj = adjacency_masks(g);
    let mut best = Rational::integer(0);
    for s in 1u64..1 << n {
        let edges: u32 = (0..n).filter(|&v| s >> v & 1 == 1).map(|v| (adj[v] & s).count_ones()).sum::<u32>() / 2;
        let d = Rational::new(edges as i64, s.count_ones() as i64);
        if d > best {
            best = d;
        }
    }
    best
}

/// Does `g` contain a subdivision of `K_k` with every edge subdivided at
/// most once? Tries every branch set and every assignment of private
/// middle vertices.
pub fn naive_k_sub(g: &Graph, k: usize) -> bool {
    let n = g.order();
    if k > n {
        return false;
    }
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let mut branch = Vec::with_capacity(k);
    choose(n, k, 0, &mut branch, &mut |b| {
        let mut used = vec![false; n];
        for &v in b {
            used[v] = true;
        }
        assign(g, b, &pairs, 0, &mut used)
    })
}

fn choose(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if cur.len() == k {
        return f(cur);
    }
    for v in from..n {
        cur.push(v);
        if choose(n, k, v + 1, cur, f) {
            return true;
        }
        cur.pop();
    }
    false
}

fn assign(g: &Graph, b: &[usize], pairs: &[(usize, usize)], i: usize, used: &mut [bool]) -> bool {
    let Some(&(x, y)) = pairs.get(i) else { return true };
    let (u, v) = (b[x], b[y]);
    if g.has_edge(u, v) && assign(g, b, pairs, i + 1, used) {
        return true;
    }
    for w in 0..g.order() {
        if !used[w] && g.has_edge(u, w) && g.has_edge(w, v) {
            used[w] = true;
            if assign(g, b, pairs, i + 1, used) {
                return true;
            }
            used[w] = false;
        }
    }
    false
}

/// Smallest `|S|` such that `V − S` splits into `Z1`, `Z2` with no edge
/// between them and `1 ≤ |Z1| ≤ |Z2| ≤ 2|Z1|`.
pub fn brute_min_separator(g: &Graph) -> Option<usize> {
    let n = g.order();
    assert!(n <= 20);
    let adj = adjacency_masks(g);
    let full = (1u64 << n) - 1;
    for size in 0..=n {
        for s in 0..=full {
            if s.count_ones() as usize != size {
                continue;
            }
            let rest = full & !s;
            let total = rest.count_ones() as usize;
            let mut z1 = rest;
            loop {
                let a = z1.count_ones() as usize;
                let b = total - a;
                if a >= 1 && a <= b && b <= 2 * a {
                    let z2 = rest & !z1;
                    if (0..n).filter(|&v| z1 >> v & 1 == 1).all(|v| adj[v] & z2 == 0) {
                        return Some(size);
                    }
                }
                if z1 == 0 {
                    break;
                }
                z1 = (z1 - 1) & rest;
            }
        }
    }
    None
}

/// Closed-form `λ₂` values, frozen to 15 significant digits.
pub const FROZEN_LAMBDA2: &[(&str, f64)] = &[
    ("path:10", 0.0978869674096782),
    ("cycle:7", 0.753020396282532),
    ("grid:10,10", 0.0978869674096782),
    ("grid:3,5", 0.381966011250105),
    ("complete:6", 6.0),
    ("star:9", 1.0),
    ("complete-bipartite:3,5", 3.0),
    ("minor-free-witness:6,20", 4.0),
    ("planar-witness:12", 2.09788696740968),
    ("planar-witness:4", 4.0),
    ("cycle:4", 2.0),
];
