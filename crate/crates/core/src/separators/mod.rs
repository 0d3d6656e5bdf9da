//! Separator-based upper bounds on λ₂.
//!
//! A two-level balanced decomposition `S0, S1, S2` with four parts carries a
//! test vector that is a unit complex constant on each part and zero on the
//! separators. The constants come from [`four_point_solve`] so the vector
//! sums to zero; since no edge joins two parts, its Rayleigh quotient is
//! exactly `e(S, V − S) / (n − |S|)`.

mod fourpoint;
mod split;

pub use fourpoint::{
    four_point_solve, anchor_preconditions, polygon_inequality, polygon_solve, FourPointSolution,
    BISECTION_MAX_ITER, BISECTION_TOL,
};
pub use split::{find_balanced_split, is_balanced, BalancedSplit, Strategy, EXHAUSTIVE_MAX_N, MAX_RESPLIT_DEPTH};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::spectra::{fiedler_value, rayleigh_quotient, Embedding};

/// Absolute agreement required between the cut ratio and the Rayleigh
/// quotient of the test vector, and between λ₂ and the bound.
pub const BOUND_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeparatorDecomposition {
    #[serde(skip)]
    pub n: usize,
    #[serde(rename = "S0")]
    pub s0: VertexSet,
    #[serde(rename = "S1")]
    pub s1: VertexSet,
    #[serde(rename = "S2")]
    pub s2: VertexSet,
    /// `[Z11, Z12, Z21, Z22]` as produced by the two splits.
    pub parts: [VertexSet; 4],
    /// `assignment[slot]` is the part placed in weight slot
    /// `(1,1), (1,2), (2,1), (2,2)`.
    pub assignment: [usize; 4],
    /// Part sizes fail the four-point preconditions under every assignment;
    /// the polygon solver supplies the constants instead.
    pub fallback: bool,
}

/// The 8 assignments reachable by swapping within each pair and swapping
/// the pairs.
const ASSIGNMENTS: [[usize; 4]; 8] = [
    [0, 1, 2, 3],
    [1, 0, 2, 3],
    [0, 1, 3, 2],
    [1, 0, 3, 2],
    [2, 3, 0, 1],
    [3, 2, 0, 1],
    [2, 3, 1, 0],
    [3, 2, 1, 0],
];

impl SeparatorDecomposition {
    /// `S0 ∪ S1 ∪ S2`
    pub fn separator(&self) -> VertexSet {
        self.s0.union(&self.s1).union(&self.s2)
    }

    /// Part sizes in slot order.
    pub fn weights(&self) -> [u64; 4] {
        self.assignment.map(|p| self.parts[p].len() as u64)
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        let n = g.order();
        if n != self.n {
            return Err(Error::Invariant(format!("decomposition built for n={}, graph has {n}", self.n)));
        }
        let mut owner = vec![usize::MAX; n];
        let sets = [&self.s0, &self.s1, &self.s2, &self.parts[0], &self.parts[1], &self.parts[2], &self.parts[3]];
        for (k, set) in sets.iter().enumerate() {
            for v in set.iter() {
                if v >= n || owner[v] != usize::MAX {
                    return Err(Error::Invariant(format!("vertex {v} is not in exactly one set")));
                }
                owner[v] = k;
            }
        }
        if owner.contains(&usize::MAX) {
            return Err(Error::Invariant("decomposition does not cover V".into()));
        }
        if let Some(&(u, v)) = g
            .edges()
            .iter()
            .find(|&&(u, v)| owner[u] >= 3 && owner[v] >= 3 && owner[u] != owner[v])
        {
            return Err(Error::Invariant(format!("edge ({u},{v}) joins two parts")));
        }
        let mut slots = self.assignment;
        slots.sort_unstable();
        if slots != [0, 1, 2, 3] {
            return Err(Error::Invariant("assignment is not a permutation".into()));
        }
        if self.parts.iter().any(VertexSet::is_empty) {
            return Err(Error::Invariant("empty part".into()));
        }
        if !self.fallback && !anchor_preconditions(self.weights()) {
            return Err(Error::Invariant(format!(
                "part sizes {:?} fail the four-point preconditions",
                self.weights()
            )));
        }
        Ok(())
    }

    /// Unit constants for each slot.
    pub fn solve_points(&self) -> Result<FourPointSolution> {
        let [a, b, c, d] = self.weights();
        if self.fallback {
            polygon_solve([a, b, c, d])
        } else {
            four_point_solve(a, b, c, d)
        }
    }
}

/// Split `G`, then split each side, and search the part assignments for one
/// meeting the four-point preconditions (`n ≥ 8`).
pub fn recursive_split(g: &Graph, strategy: Strategy) -> Result<SeparatorDecomposition> {
    let n = g.order();
    if n < 8 {
        return Err(Error::OutOfRange(format!("recursive_split needs n >= 8, got {n}")));
    }
    let top = find_balanced_split(g, strategy)?;
    let halves = [&top.z1, &top.z2].map(|z| -> Result<BalancedSplit> {
        let sub = g.induced_subgraph(z);
        Ok(split::split_graph(&sub, strategy)?.lift(z))
    });
    let [h1, h2] = halves;
    let (h1, h2) = (h1?, h2?);

    let parts = [h1.z1, h1.z2, h2.z1, h2.z2];
    let sizes = parts.each_ref().map(|p| p.len() as u64);
    let found = ASSIGNMENTS
        .iter()
        .find(|a| anchor_preconditions(a.map(|p| sizes[p])));
    let (assignment, fallback) = match found {
        Some(a) => (*a, false),
        None => (ASSIGNMENTS[0], true),
    };
    let d = SeparatorDecomposition {
        n,
        s0: top.separator,
        s1: h1.separator,
        s2: h2.separator,
        parts,
        assignment,
        fallback,
    };
    d.validate(g)?;
    Ok(d)
}

/// `φ(v) = z_slot` on each part, `0` on the separators.
pub fn test_vector(d: &SeparatorDecomposition) -> Result<Embedding> {
    let sol = d.solve_points()?;
    let mut phi = vec![Complex64::new(0.0, 0.0); d.n];
    for (slot, &part) in d.assignment.iter().enumerate() {
        for v in d.parts[part].iter() {
            phi[v] = sol.points[slot];
        }
    }
    Ok(Embedding::from_complex(&phi))
}

#[derive(Debug, Clone, Serialize)]
pub struct SepBound {
    /// `e(S, V − S) / (n − |S|)`
    pub bound: f64,
    pub cut: usize,
    pub separator_size: usize,
    /// Rayleigh quotient of the test vector.
    pub rayleigh: f64,
    pub lambda2: f64,
    pub decomposition: SeparatorDecomposition,
    #[serde(skip)]
    pub phi: Embedding,
}

pub fn sep_upper_bound(g: &Graph, strategy: Strategy) -> Result<SepBound> {
    let d = recursive_split(g, strategy)?;
    let s = d.separator();
    let rest = s.complement(g.order());
    let cut = g.cut_size(&s, &rest)?;
    let bound = cut as f64 / rest.len() as f64;
    let phi = test_vector(&d)?;
    let rayleigh = rayleigh_quotient(g, &phi)?;
    if (rayleigh - bound).abs() > BOUND_TOL {
        return Err(Error::Invariant(format!(
            "cut ratio {bound} differs from test-vector Rayleigh quotient {rayleigh}"
        )));
    }
    let lambda2 = fiedler_value(g)?;
    if lambda2 > bound + BOUND_TOL {
        return Err(Error::Invariant(format!("lambda2 {lambda2} exceeds separator bound {bound}")));
    }
    Ok(SepBound {
        bound,
        cut,
        separator_size: s.len(),
        rayleigh,
        lambda2,
        decomposition: d,
        phi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    #[test]
    fn grid3_plus_shape() {
        let g = generate(Family::Grid(3, 3)).unwrap();
        let d = recursive_split(&g, Strategy::Exhaustive).unwrap();
        assert_eq!(d.separator().as_slice(), &[1, 3, 4, 5, 7]);
        let mut corners: Vec<_> = d.parts.iter().flat_map(|p| p.iter()).collect();
        corners.sort_unstable();
        assert_eq!(corners, vec![0, 2, 6, 8]);
        assert_eq!(d.weights(), [1, 1, 1, 1]);
        assert!(!d.fallback);

        let phi = test_vector(&d).unwrap();
        for v in [1, 3, 4, 5, 7] {
            assert_eq!(phi.vector(v), &[0.0, 0.0]);
        }
        for v in [0, 2, 6, 8] {
            let z = phi.vector(v);
            assert!((z[0].abs() - 2.0 / 3.0).abs() < 1e-12);
            assert!((z[1].abs() - 5f64.sqrt() / 3.0).abs() < 1e-12);
        }

        let b = sep_upper_bound(&g, Strategy::Exhaustive).unwrap();
        assert!((b.bound - 2.0).abs() < 1e-12);
        assert!((b.lambda2 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn grid10_level_separators() {
        let g = generate(Family::Grid(10, 10)).unwrap();
        let b = sep_upper_bound(&g, Strategy::BfsLevel).unwrap();
        assert!(b.separator_size <= 10 + 2 * 7, "{}", b.separator_size);
        let lambda = 2.0 - 2.0 * (std::f64::consts::PI / 10.0).cos();
        assert!(b.bound >= lambda);
    }

    #[test]
    fn dense_join_fails_or_is_large() {
        let g = generate(Family::MinorFreeWitness { h: 8, n: 9 }).unwrap();
        assert!(recursive_split(&g, Strategy::BfsLevel).is_err());
        let g = generate(Family::Complete(8)).unwrap();
        assert!(matches!(sep_upper_bound(&g, Strategy::BfsLevel), Err(Error::NoSplit(_))));
    }

    #[test]
    fn test_vector_is_balanced_unit() {
        for seed in 0..10 {
            let g = generate(Family::RandomPlanar(80, seed)).unwrap();
            let d = recursive_split(&g, Strategy::BfsLevel).unwrap();
            let phi = test_vector(&d).unwrap();
            assert!(phi.is_zero_sum());
            for v in 0..g.order() {
                let m = phi.vector(v).iter().map(|c| c * c).sum::<f64>().sqrt();
                assert!(m < 1e-12 || (m - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn all_strategies_bound_lambda2() {
        let g = generate(Family::Grid(6, 7)).unwrap();
        for st in [Strategy::BfsLevel, Strategy::DegeneracyColoring, Strategy::FiedlerSweep] {
            let b = sep_upper_bound(&g, st).unwrap();
            assert!(b.lambda2 <= b.bound + BOUND_TOL, "{st}");
        }
    }
}
