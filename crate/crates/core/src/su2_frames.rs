//! Left-invariant frames on S^3 = SU(2).
//!
//! The standard frame `X'_1, X'_2, X'_3` satisfies `[X'_i, X'_j] = -2 X'_k`
//! for cyclic `(i, j, k)`, equivalently `dω'_1 = 2 ω'_2 ∧ ω'_3` and cyclic.
//! Any other frame is described by a matrix `A` with `ω_i = Σ_j A_{ji} ω'_j`;
//! its structure constants are collected in the symmetric matrix
//!
//! ```text
//!     C = [ c¹₂₃ c¹₃₁ c¹₁₂ ]
//!         [ c²₂₃ c²₃₁ c²₁₂ ]      with  -dω_i = Σ_{j<k} c^i_{jk} ω_j ∧ ω_k,
//!         [ c³₂₃ c³₃₁ c³₁₂ ]            [X_j, X_k] = Σ_i c^i_{jk} X_i.
//! ```
//!
//! For this bracket the cofactor transform of the wedge basis collapses to
//! `C = -(2 / det A) Aᵀ A`.

use nalgebra::{Matrix3, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::surface_algebra::SpherePoint;
use crate::tolerance::MATRIX_INVARIANT;

/// `X'_1 = i(z, w)`, `X'_2 = (-w̄, z̄)`, `X'_3 = i(-w̄, z̄)` at a point.
pub fn standard_vectors(p: &SpherePoint) -> [[Complex64; 2]; 3] {
    let i = Complex64::new(0.0, 1.0);
    let (z, w) = (p.z, p.w);
    [[i * z, i * w], [-w.conj(), z.conj()], [-i * w.conj(), i * z.conj()]]
}

fn to_rows(m: &Matrix3<f64>) -> [f64; 9] {
    let mut out = [0.0; 9];
    for r in 0..3 {
        for c in 0..3 {
            out[3 * r + c] = m[(r, c)];
        }
    }
    out
}

fn from_rows(v: &[f64; 9]) -> Matrix3<f64> {
    Matrix3::from_row_slice(v)
}

/// Transition from the standard coframe: `ω_i = Σ_j A_{ji} ω'_j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameMatrix(Matrix3<f64>);

impl FrameMatrix {
    pub fn new(a: Matrix3<f64>) -> Result<Self> {
        let det = a.determinant();
        if !det.is_finite() || det.abs() <= MATRIX_INVARIANT {
            return Err(Error::SingularFrame { det: det.abs() });
        }
        Ok(Self(a))
    }

    pub fn from_rows(v: [f64; 9]) -> Result<Self> {
        Self::new(from_rows(&v))
    }

    pub fn identity() -> Self {
        Self(Matrix3::identity())
    }

    /// The frame `X_1 = X'_1 · √c / b`, `X_{2,3} = X'_{2,3} · √c`.
    pub fn berger(b: f64, c: f64) -> Result<Self> {
        let s = c.sqrt();
        Self::new(Matrix3::from_diagonal(&nalgebra::Vector3::new(b / s, 1.0 / s, 1.0 / s)))
    }

    /// A frame realizing a given definite structure matrix.
    ///
    /// With `C = 2 s S²` (`S` the positive square root of `|C|/2`, `s = ±1`),
    /// `A = -(s / det S) S` reproduces `C` through `structure_matrix`.
    pub fn from_structure(c: &StructureMatrix) -> Self {
        let eig = SymmetricEigen::new(c.0);
        let s = eig.eigenvalues[0].signum();
        let root = eig.eigenvalues.map(|l| (l.abs() / 2.0).sqrt());
        let sq = eig.eigenvectors * Matrix3::from_diagonal(&root) * eig.eigenvectors.transpose();
        let det = root.iter().product::<f64>();
        Self(sq * (-s / det))
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.0
    }

    pub fn rows(&self) -> [f64; 9] {
        to_rows(&self.0)
    }

    /// Row `k` holds the coefficients of `X_k` in the standard frame.
    pub fn dual_vectors(&self) -> Matrix3<f64> {
        self.0.try_inverse().expect("validated nonsingular")
    }

    /// Gram matrix of the metric in the standard frame: `g(X'_i, X'_j) = (A Aᵀ)_{ij}`.
    pub fn gram(&self) -> Matrix3<f64> {
        self.0 * self.0.transpose()
    }

    /// Frame obtained by post-composing with `T`, i.e. `X̃_j = Σ_i T_{ij} X_i`.
    pub fn transformed(&self, t: &Matrix3<f64>) -> Result<Self> {
        Self::new(self.0 * t)
    }
}

impl Serialize for FrameMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FrameMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = <[f64; 9]>::deserialize(d)?;
        Self::from_rows(v).map_err(serde::de::Error::custom)
    }
}

/// Column of `C` holding the pair `(i, j)` (0-based, `i != j`) and the sign
/// picked up when the pair is not in cyclic order.
fn pair_column(i: usize, j: usize) -> (usize, f64) {
    match (i, j) {
        (1, 2) => (0, 1.0),
        (2, 1) => (0, -1.0),
        (2, 0) => (1, 1.0),
        (0, 2) => (1, -1.0),
        (0, 1) => (2, 1.0),
        (1, 0) => (2, -1.0),
        _ => unreachable!("pair_column on a diagonal pair"),
    }
}

/// Symmetric structure matrix of an orthonormal frame of a left-invariant metric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StructureMatrix(Matrix3<f64>);

impl StructureMatrix {
    /// Validates symmetry, nonsingularity and definiteness.
    ///
    /// Every left-invariant metric yields `C = -(2/det A) AᵀA`, which is
    /// definite; an indefinite matrix has no metric behind it.
    pub fn new(c: Matrix3<f64>) -> Result<Self> {
        if c.iter().any(|x| !x.is_finite()) {
            return Err(Error::AsymmetricStructure { defect: f64::NAN });
        }
        let defect = (c - c.transpose()).abs().max();
        if defect > MATRIX_INVARIANT {
            return Err(Error::AsymmetricStructure { defect });
        }
        let c = (c + c.transpose()) * 0.5;
        let det = c.determinant();
        if det.abs() <= MATRIX_INVARIANT {
            return Err(Error::SingularStructure { det: det.abs() });
        }
        let ev = SymmetricEigen::new(c).eigenvalues;
        if !(ev.iter().all(|l| *l > 0.0) || ev.iter().all(|l| *l < 0.0)) {
            return Err(Error::IndefiniteStructure { eigenvalues: [ev[0], ev[1], ev[2]] });
        }
        Ok(Self(c))
    }

    pub fn from_rows(v: [f64; 9]) -> Result<Self> {
        Self::new(from_rows(&v))
    }

    pub fn round() -> Self {
        Self(Matrix3::identity() * -2.0)
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.0
    }

    pub fn rows(&self) -> [f64; 9] {
        to_rows(&self.0)
    }

    /// `c^k_{ij}` with 0-based indices; antisymmetric in `(i, j)`.
    pub fn c(&self, k: usize, i: usize, j: usize) -> f64 {
        if i == j {
            return 0.0;
        }
        let (col, sign) = pair_column(i, j);
        sign * self.0[(k, col)]
    }

    pub fn a(&self) -> f64 {
        -self.0.trace() / 2.0
    }
}

impl Serialize for StructureMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for StructureMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = <[f64; 9]>::deserialize(d)?;
        Self::from_rows(v).map_err(serde::de::Error::custom)
    }
}

pub fn structure_matrix(a: &FrameMatrix) -> StructureMatrix {
    let m = a.0;
    let c = m.transpose() * m * (-2.0 / m.determinant());
    StructureMatrix((c + c.transpose()) * 0.5)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrameInvariants {
    pub a: f64,
    pub mu: Complex64,
    pub tau: Complex64,
    pub c231: f64,
}

/// `a = -tr C / 2`, `μ = c¹₁₂ + i c¹₁₃`, `τ = c²₂₁ + (i/2)(c²₃₁ - c³₁₂)`, `c¹₂₃`.
pub fn invariants(c: &StructureMatrix) -> FrameInvariants {
    let mu = Complex64::new(c.c(0, 0, 1), c.c(0, 0, 2));
    let tau = Complex64::new(c.c(1, 1, 0), 0.5 * (c.c(1, 2, 0) - c.c(2, 0, 1)));
    FrameInvariants { a: c.a(), mu, tau, c231: c.c(0, 1, 2) }
}

/// `T = diag(ε, 1, 1) · R₂₃(t)` as acting on frames (`X̃_j = Σ_i T_{ij} X_i`).
pub fn rotation(t: f64, eps: f64) -> Matrix3<f64> {
    let (s, co) = t.sin_cos();
    Matrix3::new(eps, 0.0, 0.0, 0.0, co, s, 0.0, -s, co)
}

/// Structure matrix of the frame `X̃_1 = ε X_1`, `X̃_2 + i X̃_3 = e^{-it}(X_2 + i X_3)`.
///
/// Under an orthogonal change of frame `T` the matrix transforms as
/// `C̃ = det(T) · Tᵀ C T`.
pub fn rotate_frame(c: &StructureMatrix, t: f64, eps: f64) -> StructureMatrix {
    transform(c, &rotation(t, eps))
}

/// `det(T) · Tᵀ C T` for orthogonal `T`.
pub fn transform(c: &StructureMatrix, t: &Matrix3<f64>) -> StructureMatrix {
    let m = t.transpose() * c.0 * t * t.determinant().signum();
    StructureMatrix((m + m.transpose()) * 0.5)
}

/// Orthogonal `T` with `det T = +1` and diagonal `D = Tᵀ C T`, ordered by
/// descending absolute value (ties by value).
pub fn normalize(c: &StructureMatrix) -> (Matrix3<f64>, StructureMatrix) {
    let eig = SymmetricEigen::new(c.0);
    let mut order = [0usize, 1, 2];
    order.sort_by(|&x, &y| {
        let (lx, ly) = (eig.eigenvalues[x], eig.eigenvalues[y]);
        ly.abs().total_cmp(&lx.abs()).then(ly.total_cmp(&lx))
    });
    let mut t = Matrix3::zeros();
    for (dst, &src) in order.iter().enumerate() {
        let mut col = eig.eigenvectors.column(src).into_owned();
        // Deterministic column sign: largest component positive.
        let imax = col.iamax();
        if col[imax] < 0.0 {
            col = -col;
        }
        t.set_column(dst, &col);
    }
    if t.determinant() < 0.0 {
        let last = -t.column(2).into_owned();
        t.set_column(2, &last);
    }
    let d = Matrix3::from_diagonal(&nalgebra::Vector3::from_fn(|i, _| eig.eigenvalues[order[i]]));
    (t, StructureMatrix(d))
}
