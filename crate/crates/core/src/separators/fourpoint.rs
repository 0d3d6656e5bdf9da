//! Four unit complex numbers balancing four positive integer weights.
//!
//! [`four_point_solve`] follows the two-anchor construction: each pair of
//! weights is balanced around a real anchor `x` inside the unit disc by a
//! chord through `x`, and the anchors themselves balance (`n1·x1 + n2·x2 = 0`).
//! [`polygon_solve`] is the general fallback that needs only the polygon
//! inequality.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

pub const BISECTION_TOL: f64 = 1e-13;
pub const BISECTION_MAX_ITER: usize = 200;

/// Weights, with points aligned, in slot order `(1,1), (1,2), (2,1), (2,2)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FourPointSolution {
    pub weights: [u64; 4],
    pub points: [Complex64; 4],
    /// `(x1, x2)` when produced by the anchor construction.
    pub anchors: Option<(f64, f64)>,
}

impl FourPointSolution {
    /// `|Σ w·z|`
    pub fn defect(&self) -> f64 {
        self.weights
            .iter()
            .zip(&self.points)
            .map(|(&w, z)| z * w as f64)
            .sum::<Complex64>()
            .norm()
    }

    pub fn max_modulus_error(&self) -> f64 {
        self.points.iter().map(|z| (z.norm() - 1.0).abs()).fold(0.0, f64::max)
    }

    pub fn weight_sum(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub fn is_valid(&self) -> bool {
        self.max_modulus_error() <= 1e-12 && self.defect() <= 1e-9 * self.weight_sum() as f64
    }
}

/// `n11 ≤ n12 ≤ 2·n11`, `n21 ≤ n22 ≤ 2·n21`, `n1 ≤ n2 ≤ 2·n1` with all
/// weights positive.
pub fn anchor_preconditions(w: [u64; 4]) -> bool {
    let [a, b, c, d] = w;
    let chain = |lo: u64, hi: u64| lo <= hi && hi <= 2 * lo;
    w.iter().all(|&x| x > 0) && chain(a, b) && chain(c, d) && chain(a + b, c + d)
}

/// Largest weight at most the sum of the other three.
pub fn polygon_inequality(w: [u64; 4]) -> bool {
    let total: u64 = w.iter().sum();
    w.iter().all(|&x| 2 * x <= total)
}

/// `g(x, e^{iθ}) = |f_x(z) − x| / |x − z| = (1 − x²) / (1 + x² − 2x·cosθ)`.
fn chord_ratio(x: f64, theta: f64) -> f64 {
    (1.0 - x * x) / (1.0 + x * x - 2.0 * x * theta.cos())
}

/// Second intersection of the unit circle with the line through `z` and `x`.
fn chord_end(x: f64, z: Complex64) -> Complex64 {
    let dir = Complex64::new(x, 0.0) - z;
    let t = 2.0 * (1.0 - x * z.re) / dir.norm_sqr();
    let w = z + dir * t;
    w / w.norm()
}

/// Finds `θ ∈ [0, π]` with `g(x, e^{iθ}) = target`. `g` is monotone in θ
/// for `x ≠ 0`: decreasing when `x > 0`, increasing when `x < 0`.
fn solve_angle(x: f64, target: f64) -> Result<f64> {
    let h = |theta: f64| chord_ratio(x, theta) - target;
    let (mut lo, mut hi) = (0.0, std::f64::consts::PI);
    let (h_lo, h_hi) = (h(lo), h(hi));
    if h_lo == 0.0 {
        return Ok(lo);
    }
    if h_hi == 0.0 {
        return Ok(hi);
    }
    if h_lo.signum() == h_hi.signum() {
        return Err(Error::Invariant(format!(
            "ratio {target} outside the chord range at anchor {x}"
        )));
    }
    let rising = h_lo < 0.0;
    for _ in 0..BISECTION_MAX_ITER {
        if hi - lo <= BISECTION_TOL {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if (h(mid) < 0.0) == rising {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Balances one pair `(a, b)` around the real anchor `x`: returns
/// `(z_a, z_b)` on the unit circle with `a·z_a + b·z_b = (a + b)·x`.
fn balance_pair(x: f64, a: u64, b: u64) -> Result<(Complex64, Complex64)> {
    // x splits the chord z_a→z_b in the ratio |x − z_a| : |z_b − x| = b : a.
    let theta = solve_angle(x, a as f64 / b as f64)?;
    let za = Complex64::from_polar(1.0, theta);
    Ok((za, chord_end(x, za)))
}

pub fn four_point_solve(n11: u64, n12: u64, n21: u64, n22: u64) -> Result<FourPointSolution> {
    let weights = [n11, n12, n21, n22];
    if !anchor_preconditions(weights) {
        return Err(Error::Precondition(format!(
            "weights {weights:?} violate n11<=n12<=2n11, n21<=n22<=2n21, n1<=n2<=2n1"
        )));
    }
    let (n1, n2) = ((n11 + n12) as f64, (n21 + n22) as f64);
    let x1 = 2.0 / 3.0;
    let x2 = -x1 * n1 / n2;
    let (z11, z12) = balance_pair(x1, n11, n12)?;
    let (z21, z22) = balance_pair(x2, n21, n22)?;
    let sol = FourPointSolution {
        weights,
        points: [z11, z12, z21, z22],
        anchors: Some((x1, x2)),
    };
    debug_assert!(sol.is_valid(), "{sol:?}");
    Ok(sol)
}

/// Places the pair `(p, q)` so that `p·u + q·v = target`, given
/// `|p − q| ≤ |target| ≤ p + q`.
fn place_pair(p: f64, q: f64, target: Complex64) -> (Complex64, Complex64) {
    let r = target.norm();
    if r == 0.0 {
        return (Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0));
    }
    let cos_beta = ((r * r + p * p - q * q) / (2.0 * p * r)).clamp(-1.0, 1.0);
    let u = Complex64::from_polar(1.0, target.arg() + cos_beta.acos());
    let v = (target - u * p) / q;
    (u, v / v.norm())
}

pub fn polygon_solve(weights: [u64; 4]) -> Result<FourPointSolution> {
    if weights.contains(&0) || !polygon_inequality(weights) {
        return Err(Error::Precondition(format!(
            "weights {weights:?} violate the polygon inequality"
        )));
    }
    let pairings = [[0, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2]];
    let [i, j, k, l] = *pairings
        .iter()
        .min_by_key(|p| {
            let a = weights[p[0]] + weights[p[1]];
            let b = weights[p[2]] + weights[p[3]];
            a.abs_diff(b)
        })
        .expect("three pairings");
    let w = |s: usize| weights[s] as f64;
    let lo = (w(i) - w(j)).abs().max((w(k) - w(l)).abs());
    let hi = (w(i) + w(j)).min(w(k) + w(l));
    let r = 0.5 * (lo + hi);

    let mut points = [Complex64::new(0.0, 0.0); 4];
    (points[i], points[j]) = place_pair(w(i), w(j), Complex64::new(r, 0.0));
    (points[k], points[l]) = place_pair(w(k), w(l), Complex64::new(-r, 0.0));
    let sol = FourPointSolution { weights, points, anchors: None };
    debug_assert!(sol.is_valid(), "{sol:?}");
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn near(z: Complex64, re: f64, im: f64, tol: f64) -> bool {
        (z.re - re).abs() < tol && (z.im - im).abs() < tol
    }

    #[test]
    fn symmetric_weights() {
        let s = four_point_solve(1, 1, 1, 1).unwrap();
        let r5 = 5f64.sqrt() / 3.0;
        assert!(near(s.points[0], 2.0 / 3.0, r5, 1e-12));
        assert!(near(s.points[1], 2.0 / 3.0, -r5, 1e-12));
        assert!(near(s.points[2], -2.0 / 3.0, r5, 1e-12));
        assert!(near(s.points[3], -2.0 / 3.0, -r5, 1e-12));
        assert!(s.is_valid());
    }

    #[test]
    fn doubled_weights() {
        let s = four_point_solve(1, 2, 2, 4).unwrap();
        let r15 = 15f64.sqrt();
        assert!(near(s.points[0], 0.25, r15 / 4.0, 1e-12));
        assert!(near(s.points[1], 7.0 / 8.0, -r15 / 8.0, 1e-12));
        // θ = 0 is the bisection endpoint: accurate to the angle tolerance
        assert!(near(s.points[2], 1.0, 0.0, 1e-12));
        assert!(near(s.points[3], -1.0, 0.0, 1e-12));
        assert_eq!(s.anchors, Some((2.0 / 3.0, -1.0 / 3.0)));
        assert!(s.is_valid());
    }

    #[test]
    fn rejects_bad_order() {
        assert!(matches!(four_point_solve(3, 1, 1, 1), Err(Error::Precondition(_))));
        assert!(four_point_solve(0, 1, 1, 1).is_err());
    }

    #[test]
    fn chord_ratio_endpoints() {
        assert!((chord_ratio(2.0 / 3.0, 0.0) - 5.0).abs() < 1e-12);
        assert!((chord_ratio(2.0 / 3.0, std::f64::consts::PI) - 0.2).abs() < 1e-12);
        assert!((chord_ratio(-1.0 / 3.0, 0.0) - 0.5).abs() < 1e-12);
        assert!((chord_ratio(-1.0 / 3.0, std::f64::consts::PI) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn polygon_examples() {
        assert!(polygon_solve([1, 1, 1, 1]).unwrap().is_valid());
        assert!(polygon_solve([5, 3, 4, 4]).unwrap().is_valid());
        assert!(polygon_solve([3, 1, 1, 1]).unwrap().is_valid());
        assert!(polygon_solve([1, 7, 2, 4]).unwrap().is_valid());
        assert!(polygon_solve([10, 1, 1, 1]).is_err());
    }
}
