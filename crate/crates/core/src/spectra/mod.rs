//! Laplacian spectra: the eigensolver, Fiedler values and vectors,
//! Rayleigh quotients of vertex embeddings, and the complete-join formula.

mod eigen;
mod matrix;

pub use eigen::{eigen_spectrum, SpectrumResult, ITERATIONS_PER_DIM};
pub use matrix::SymmetricMatrix;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Family, Graph};

/// Absolute tolerance on eigenvalues of integer Laplacians.
pub const EIGEN_TOL: f64 = 1e-8;

/// Relative tolerance for the zero-sum side condition of an embedding.
pub const ZERO_SUM_TOL: f64 = 1e-9;

/// `L(G) = D(G) − A(G)`.
pub fn laplacian(g: &Graph) -> SymmetricMatrix {
    let mut m = SymmetricMatrix::zeros(g.order());
    for v in 0..g.order() {
        m.set(v, v, g.degree(v) as f64);
    }
    for &(u, v) in g.edges() {
        m.set(u, v, -1.0);
    }
    m
}

pub fn laplacian_spectrum(g: &Graph, want_vectors: bool) -> Result<SpectrumResult> {
    eigen_spectrum(&laplacian(g), want_vectors)
}

/// Second-smallest Laplacian eigenvalue.
pub fn fiedler_value(g: &Graph) -> Result<f64> {
    if g.order() < 2 {
        return Err(Error::TooFewVertices(g.order()));
    }
    let s = eigen_spectrum(&laplacian(g), false)?;
    Ok(s.eigenvalues[1])
}

/// Like [`fiedler_value`] but `+∞` for a single vertex, which makes the
/// join formula total.
pub fn lambda2_or_infinite(g: &Graph) -> Result<f64> {
    match g.order() {
        1 => Ok(f64::INFINITY),
        _ => fiedler_value(g),
    }
}

/// Unit-norm, zero-sum eigenvector for λ₂.
pub fn fiedler_vector(g: &Graph) -> Result<Embedding> {
    let n = g.order();
    if n < 2 {
        return Err(Error::TooFewVertices(n));
    }
    let s = eigen_spectrum(&laplacian(g), true)?;
    let vecs = s.eigenvectors.expect("requested vectors");
    // With a disconnected graph λ₂ = 0 shares its eigenspace with the
    // all-ones vector, so project that component out.
    let centered = |x: &[f64]| {
        let mean = x.iter().sum::<f64>() / n as f64;
        let y: Vec<f64> = x.iter().map(|v| v - mean).collect();
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        (y, norm)
    };
    let (mut y, mut norm) = centered(&vecs[1]);
    if norm < 1e-6 {
        (y, norm) = centered(&vecs[0]);
    }
    y.iter_mut().for_each(|v| *v /= norm);
    Embedding::from_real(y)
}

/// Per-vertex vectors in `ℝ^dim`, stored row-major. Complex values use
/// `dim = 2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Embedding {
    dim: usize,
    coords: Vec<f64>,
}

impl Embedding {
    pub fn new(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 || !coords.len().is_multiple_of(dim) {
            return Err(Error::Precondition(format!(
                "embedding of {} coordinates is not a whole number of {dim}-vectors",
                coords.len()
            )));
        }
        Ok(Self { dim, coords })
    }

    pub fn from_real(values: Vec<f64>) -> Result<Self> {
        Self::new(1, values)
    }

    pub fn from_complex(values: &[Complex64]) -> Self {
        Self {
            dim: 2,
            coords: values.iter().flat_map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn vector(&self, v: usize) -> &[f64] {
        &self.coords[v * self.dim..(v + 1) * self.dim]
    }

    /// `(‖Σᵢ vᵢ‖, Σᵢ ‖vᵢ‖)`
    pub fn sum_defect(&self) -> (f64, f64) {
        let mut sum = vec![0.0; self.dim];
        let mut mass = 0.0;
        for v in 0..self.len() {
            let x = self.vector(v);
            for (s, xi) in sum.iter_mut().zip(x) {
                *s += xi;
            }
            mass += x.iter().map(|c| c * c).sum::<f64>().sqrt();
        }
        (sum.iter().map(|s| s * s).sum::<f64>().sqrt(), mass)
    }

    pub fn is_zero_sum(&self) -> bool {
        let (defect, mass) = self.sum_defect();
        defect <= ZERO_SUM_TOL * mass.max(1.0)
    }
}

/// `Σ_{ij∈E} ‖vᵢ − vⱼ‖² / Σᵢ ‖vᵢ‖²` for a zero-sum embedding.
pub fn rayleigh_quotient(g: &Graph, e: &Embedding) -> Result<f64> {
    if e.len() != g.order() {
        return Err(Error::Precondition(format!(
            "embedding has {} vectors for {} vertices",
            e.len(),
            g.order()
        )));
    }
    let (defect, mass) = e.sum_defect();
    if defect > ZERO_SUM_TOL * mass.max(1.0) {
        return Err(Error::NotZeroSum(defect));
    }
    let den: f64 = e.coords.iter().map(|c| c * c).sum();
    if den == 0.0 {
        return Err(Error::ZeroNorm);
    }
    let num: f64 = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            e.vector(u)
                .iter()
                .zip(e.vector(v))
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
        })
        .sum();
    Ok(num / den)
}

/// λ₂ of the complete join from the operands' λ₂ and orders. A singleton
/// operand passes `f64::INFINITY`. The join spectrum also contains
/// `n1 + n2`, which is the minimum when both operands are tiny.
pub fn join_lambda2(l1: f64, n1: usize, l2: f64, n2: usize) -> f64 {
    (l1 + n2 as f64).min(l2 + n1 as f64).min((n1 + n2) as f64)
}

/// Known λ₂ for families with a closed-form spectrum.
pub fn closed_form_lambda2(family: Family) -> Result<f64> {
    use std::f64::consts::PI;
    let unsupported = || Error::OutOfRange(format!("no closed form for {family}"));
    let at_least = |m: usize, lo: usize| {
        if m >= lo {
            Ok(m as f64)
        } else {
            Err(Error::OutOfRange(format!("{family}: needs m >= {lo}")))
        }
    };
    match family {
        Family::Path(m) => at_least(m, 2).map(|m| 2.0 - 2.0 * (PI / m).cos()),
        Family::Cycle(m) => at_least(m, 3).map(|m| 2.0 - 2.0 * (2.0 * PI / m).cos()),
        Family::Complete(m) => at_least(m, 2),
        // star(2) is K2
        Family::Star(m) => at_least(m, 2).map(|m| if m == 2.0 { 2.0 } else { 1.0 }),
        // K2 ⊕ P_{n−2}: λ₂(P_{n−2}) + 2
        Family::PlanarWitness(n) => at_least(n, 4).map(|n| 4.0 - 2.0 * (PI / (n - 2.0)).cos()),
        _ => Err(unsupported()),
    }
}
