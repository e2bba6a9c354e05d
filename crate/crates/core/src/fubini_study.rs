//! Extrinsic geometry of `φ = [e₀] : S^3 → CP^n` through a unit polynomial lift.
//!
//! A tangent vector of `CP^n` at `[e₀]` is represented by its horizontal lift
//! `u ⊥ e₀`; the Fubini–Study metric (holomorphic sectional curvature 4) is
//! `Re <u, v>` on such representatives and `J` is multiplication by `i`.
//!
//! `φ_* X` is represented by `X(e₀) - <X(e₀), e₀> e₀`. The Levi-Civita
//! derivative of a horizontal field `W` along `φ_* X` is
//! `P(X W) - i ρ₀(X) W`, where `P` removes the `e₀` component and
//! `ρ₀(X) = -i <X(e₀), e₀>` is the connection form of the tautological line.
//!
//! All derivatives are exact polynomial derivations; only the evaluation at
//! sample points is floating-point.

use nalgebra::{Matrix3, SymmetricEigen, Vector3};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::intrinsic_geometry::{connection, curvature};
use crate::su2_frames::{invariants, rotation, structure_matrix, FrameMatrix, StructureMatrix};
use crate::surface_algebra::{
    hermitian_dot, hermitian_pair, hermitian_pair_scaled, InvariantField, PolyVector, SpherePoint,
};
use crate::tolerance::{CR_TYPE, EQUIVARIANCE, HORIZONTAL, RANK, TOTALLY_REAL, UNIT_LIFT};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Minimum number of sample points accepted by [`cr_data`].
pub const MIN_SAMPLES: usize = 8;

/// A lift `e₀` with `<e₀, e₀> = 1` identically.
#[derive(Debug, Clone, PartialEq)]
pub struct ImmersionLift {
    e0: PolyVector,
}

impl ImmersionLift {
    pub fn new(e0: PolyVector) -> Result<Self> {
        let defect = unit_norm_defect(&e0);
        if defect > UNIT_LIFT {
            return Err(Error::NotUnit { defect });
        }
        Ok(Self { e0 })
    }

    pub fn e0(&self) -> &PolyVector {
        &self.e0
    }

    pub fn n(&self) -> usize {
        self.e0.len() - 1
    }

    pub fn unit_norm_defect(&self) -> f64 {
        unit_norm_defect(&self.e0)
    }
}

/// Coefficient defect of `<e₀, e₀> - 1`, relative to the largest intermediate
/// term of the reduction (see [`hermitian_pair_scaled`]).
fn unit_norm_defect(e0: &PolyVector) -> f64 {
    match hermitian_pair_scaled(e0, e0) {
        Ok((p, scale)) => p.distance_to_constant(Complex64::new(1.0, 0.0)) / scale.max(1.0),
        Err(_) => f64::INFINITY,
    }
}

/// `max | |e₀(p)|² - 1 |` over a set of points.
pub fn pointwise_unit_defect(lift: &ImmersionLift, pts: &[SpherePoint]) -> f64 {
    pts.iter()
        .map(|p| {
            let v = lift.e0.eval(p);
            (re_dot(&v, &v) - 1.0).abs()
        })
        .fold(0.0, f64::max)
}

/// Horizontal representative of a tangent vector of `CP^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentVectorAtPoint {
    pub ambient: Vec<Complex64>,
    pub base: SpherePoint,
}

/// `X(e₀) - <X(e₀), e₀> e₀`.
///
/// Exact in the quotient ring, but the reduced product loses accuracy at high
/// degree; numeric work goes through [`LiftJet`] instead.
pub fn pushforward(lift: &ImmersionLift, x: &InvariantField) -> Result<PolyVector> {
    if x.is_zero() {
        return Err(Error::ZeroField);
    }
    Ok(horizontal_part(lift, &lift.e0.apply(x)))
}

fn horizontal_part(lift: &ImmersionLift, v: &PolyVector) -> PolyVector {
    let coeff = hermitian_pair(v, &lift.e0).expect("same length");
    v.sub(&lift.e0.times(&coeff)).expect("same length")
}

/// `Re <u, v>`; both must be horizontal at the same point.
pub fn fs_metric(u: &TangentVectorAtPoint, v: &TangentVectorAtPoint) -> Result<f64> {
    if u.base != v.base {
        return Err(Error::BaseMismatch);
    }
    if u.ambient.len() != v.ambient.len() {
        return Err(Error::Dimension { expected: u.ambient.len(), actual: v.ambient.len() });
    }
    Ok(re_dot(&u.ambient, &v.ambient))
}

pub fn complex_structure(u: &TangentVectorAtPoint) -> TangentVectorAtPoint {
    TangentVectorAtPoint { ambient: scaled(&u.ambient, I), base: u.base }
}

/// `ρ₀(X) = -i <X(e₀), e₀>` at a point.
pub fn rho0(lift: &ImmersionLift, x: &InvariantField, pt: &SpherePoint) -> f64 {
    let de0 = lift.e0.apply(x).eval(pt);
    (-I * hermitian_dot(&de0, &lift.e0.eval(pt))).re
}

/// `∇̄_{φ_* X} W = P(X W) - i ρ₀(X) W` at a point, for `W` horizontal against `e₀`.
pub fn covariant_derivative(
    lift: &ImmersionLift,
    w: &PolyVector,
    x: &InvariantField,
    pt: &SpherePoint,
) -> Result<TangentVectorAtPoint> {
    let defect = hermitian_pair(w, &lift.e0)?.max_abs_coefficient();
    if defect > HORIZONTAL {
        return Err(Error::NotHorizontal { defect });
    }
    let e0 = lift.e0.eval(pt);
    let xw = w.apply(x).eval(pt);
    let wv = w.eval(pt);
    let r = rho0(lift, x, pt);
    let mut out = project_off(&xw, &e0);
    axpy(&mut out, -I * r, &wv);
    Ok(TangentVectorAtPoint { ambient: out, base: *pt })
}

/// Sectional curvature of `CP^n(4)` on the plane of two horizontal vectors:
/// `1 + 3 <Ju, v>² / (|u|²|v|² - <u, v>²)`.
pub fn fs_sectional_curvature(u: &[Complex64], v: &[Complex64]) -> f64 {
    let area = re_dot(u, u) * re_dot(v, v) - re_dot(u, v).powi(2);
    1.0 + 3.0 * re_dot(&scaled(u, I), v).powi(2) / area
}

pub(crate) fn re_dot(u: &[Complex64], v: &[Complex64]) -> f64 {
    hermitian_dot(u, v).re
}

fn scaled(u: &[Complex64], s: Complex64) -> Vec<Complex64> {
    u.iter().map(|x| x * s).collect()
}

fn axpy(acc: &mut [Complex64], s: Complex64, x: &[Complex64]) {
    for (a, b) in acc.iter_mut().zip(x) {
        *a += s * b;
    }
}

fn sub(u: &[Complex64], v: &[Complex64]) -> Vec<Complex64> {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

fn norm(u: &[Complex64]) -> f64 {
    re_dot(u, u).sqrt()
}

fn project_off(v: &[Complex64], e0: &[Complex64]) -> Vec<Complex64> {
    let c = hermitian_dot(v, e0);
    let mut out = v.to_vec();
    axpy(&mut out, -c, e0);
    out
}

/// Exact derivatives of a lift up to second order: `e₀`, `X'_p e₀`, `X'_q X'_p e₀`.
///
/// Horizontal projections and their derivatives are assembled pointwise by
/// the product rule,
///
/// ```text
/// V_p = E_p - <E_p, e₀> e₀
/// X'_q V_p = E_qp - (<E_qp, e₀> + <E_p, E_q>) e₀ - <E_p, e₀> E_q
/// ```
///
/// which keeps evaluation well-conditioned at high degree where symbolic
/// products of the lift with itself would not be.
#[derive(Debug, Clone)]
pub struct LiftJet {
    e0: PolyVector,
    de0: [PolyVector; 3],
    dde0: [[PolyVector; 3]; 3],
}

impl LiftJet {
    pub fn new(lift: &ImmersionLift) -> Self {
        let de0: [PolyVector; 3] = std::array::from_fn(|p| lift.e0.apply(&InvariantField::basis(p)));
        let dde0 = std::array::from_fn(|q| std::array::from_fn(|p| de0[p].apply(&InvariantField::basis(q))));
        Self { e0: lift.e0.clone(), de0, dde0 }
    }

    pub fn at(&self, pt: &SpherePoint) -> PointJet {
        let e0 = self.e0.eval(pt);
        let de: [Vec<Complex64>; 3] = std::array::from_fn(|p| self.de0[p].eval(pt));
        let s: [Complex64; 3] = std::array::from_fn(|p| hermitian_dot(&de[p], &e0));
        let v = std::array::from_fn(|p| {
            let mut out = de[p].clone();
            axpy(&mut out, -s[p], &e0);
            out
        });
        let dv = std::array::from_fn(|q| {
            std::array::from_fn(|p| {
                let mut out = self.dde0[q][p].eval(pt);
                let ds = hermitian_dot(&out, &e0) + hermitian_dot(&de[p], &de[q]);
                axpy(&mut out, -ds, &e0);
                axpy(&mut out, -s[p], &de[q]);
                out
            })
        });
        PointJet { base: *pt, rho0: std::array::from_fn(|q| (-I * s[q]).re), e0, v, dv }
    }

    pub fn at_points(&self, pts: &[SpherePoint]) -> Vec<PointJet> {
        pts.par_iter().map(|p| self.at(p)).collect()
    }
}

/// Numeric values of a [`LiftJet`] at one point.
#[derive(Debug, Clone)]
pub struct PointJet {
    pub base: SpherePoint,
    pub e0: Vec<Complex64>,
    /// `ρ₀(X'_q)`.
    pub rho0: [f64; 3],
    /// `φ_* X'_p`.
    pub v: [Vec<Complex64>; 3],
    /// `dv[q][p] = X'_q (φ_* X'_p)`.
    pub dv: [[Vec<Complex64>; 3]; 3],
}

impl PointJet {
    /// `φ_* X` for `X = Σ x_p X'_p`.
    pub fn tangent(&self, x: &[f64; 3]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.e0.len()];
        for p in 0..3 {
            axpy(&mut out, Complex64::new(x[p], 0.0), &self.v[p]);
        }
        out
    }

    /// `∇̄_{φ_* X} φ_* Y`.
    pub fn nabla(&self, x: &[f64; 3], y: &[f64; 3]) -> Vec<Complex64> {
        let mut raw = vec![Complex64::new(0.0, 0.0); self.e0.len()];
        for q in 0..3 {
            for p in 0..3 {
                axpy(&mut raw, Complex64::new(x[q] * y[p], 0.0), &self.dv[q][p]);
            }
        }
        let mut out = project_off(&raw, &self.e0);
        let r: f64 = (0..3).map(|q| x[q] * self.rho0[q]).sum();
        axpy(&mut out, -I * r, &self.tangent(y));
        out
    }

    /// `G'_{pq} = <φ_* X'_p, φ_* X'_q>` and `J'_{pq} = <J φ_* X'_p, φ_* X'_q>`.
    pub fn standard_gram(&self) -> (Matrix3<f64>, Matrix3<f64>) {
        let g = Matrix3::from_fn(|p, q| re_dot(&self.v[p], &self.v[q]));
        let j = Matrix3::from_fn(|p, q| re_dot(&scaled(&self.v[p], I), &self.v[q]));
        (g, j)
    }
}

/// Induced metric, Kähler-form pullback and the CR-aligned frame.
#[derive(Debug, Clone, PartialEq)]
pub struct CrData {
    /// Induced metric in the standard frame (sample mean).
    pub gram: Matrix3<f64>,
    /// `J'_{pq}` in the standard frame (sample mean).
    pub j_standard: Matrix3<f64>,
    /// Orthonormal frame with `J_{12} = J_{13} = 0`, `J_{23} ≥ 0`, `c¹₂₃ < 0`
    /// and `τ` real nonnegative.
    pub frame: FrameMatrix,
    pub structure: StructureMatrix,
    /// `J_{ij} = <J φ_* X_i, φ_* X_j>` in the aligned frame.
    pub j_matrix: Matrix3<f64>,
    pub kahler_angle: f64,
    pub is_cr: bool,
    pub totally_real: bool,
    /// Largest deviation of `G'`, `J'` from their means across samples.
    pub spread: f64,
}

impl CrData {
    /// Rows: coefficients of `X_i` in the standard frame.
    pub fn dual(&self) -> Matrix3<f64> {
        self.frame.dual_vectors()
    }

    pub fn field(&self, i: usize) -> [f64; 3] {
        let d = self.dual();
        [d[(i, 0)], d[(i, 1)], d[(i, 2)]]
    }
}

pub fn cr_data(lift: &ImmersionLift, samples: &[SpherePoint]) -> Result<CrData> {
    cr_data_from_jets(&LiftJet::new(lift).at_points(samples))
}

pub fn cr_data_from_jets(jets: &[PointJet]) -> Result<CrData> {
    if jets.len() < MIN_SAMPLES {
        return Err(Error::TooFewSamples { needed: MIN_SAMPLES, got: jets.len() });
    }
    let data: Vec<_> = jets.iter().map(PointJet::standard_gram).collect();
    let count = data.len() as f64;
    let gram = data.iter().fold(Matrix3::zeros(), |acc, (g, _)| acc + g) / count;
    let j_standard = data.iter().fold(Matrix3::zeros(), |acc, (_, j)| acc + j) / count;

    // Rank is checked pointwise first: a degenerate tangent map is not an
    // equivariance failure.
    for (g, _) in &data {
        let ev = SymmetricEigen::new(*g).eigenvalues;
        let min = ev.min();
        if min < RANK {
            let rank = ev.iter().filter(|l| **l >= RANK).count();
            return Err(Error::DegenerateRank { rank, min_eigenvalue: min });
        }
    }
    let spread = data.iter().map(|(g, j)| (g - gram).abs().max().max((j - j_standard).abs().max())).fold(0.0, f64::max);
    if spread > EQUIVARIANCE {
        return Err(Error::Inconsistent { max_deviation: spread });
    }

    let a = gram.cholesky().ok_or(Error::DegenerateRank { rank: 0, min_eigenvalue: 0.0 })?.l();
    let frame = FrameMatrix::new(a)?;
    let j0 = kahler_in_frame(&frame, &j_standard);
    let axial = Vector3::new(j0[(1, 2)], j0[(2, 0)], j0[(0, 1)]);
    let totally_real = axial.norm() < TOTALLY_REAL;

    let mut frame = if totally_real { frame } else { frame.transformed(&align_axis(&axial))? };
    if structure_matrix(&frame).matrix()[(0, 0)] > 0.0 {
        frame = frame.transformed(&rotation(0.0, -1.0))?;
    }
    let tau = invariants(&structure_matrix(&frame)).tau;
    if tau.norm() > 1e-12 {
        let candidates = [tau.arg() / 2.0, -tau.arg() / 2.0];
        let best = candidates
            .iter()
            .map(|t| (*t, frame.transformed(&rotation(*t, 1.0)).expect("orthogonal")))
            .min_by(|(_, a), (_, b)| {
                let ta = invariants(&structure_matrix(a)).tau;
                let tb = invariants(&structure_matrix(b)).tau;
                (ta.im.abs() - ta.re).total_cmp(&(tb.im.abs() - tb.re))
            })
            .expect("two candidates");
        frame = best.1;
    }

    let j_matrix = kahler_in_frame(&frame, &j_standard);
    if !totally_real {
        let residual = j_matrix[(0, 1)].abs().max(j_matrix[(0, 2)].abs());
        if residual > CR_TYPE {
            return Err(Error::Alignment { residual });
        }
    }
    let j23 = j_matrix[(1, 2)];
    Ok(CrData {
        gram,
        j_standard,
        frame,
        structure: structure_matrix(&frame),
        j_matrix,
        kahler_angle: j23.clamp(-1.0, 1.0).acos(),
        is_cr: (j23 - 1.0).abs() < CR_TYPE,
        totally_real,
        spread,
    })
}

/// `J = D J' Dᵀ` with `D = A⁻¹`.
fn kahler_in_frame(frame: &FrameMatrix, j_standard: &Matrix3<f64>) -> Matrix3<f64> {
    let d = frame.dual_vectors();
    let j = d * j_standard * d.transpose();
    (j - j.transpose()) * 0.5
}

/// Rotation `Q = [ĵ, u, ĵ × u]` taking the axial vector to the first axis.
fn align_axis(axial: &Vector3<f64>) -> Matrix3<f64> {
    let jh = axial.normalize();
    // Seed with the standard axis least aligned with ĵ.
    let k = jh.iamin();
    let mut e = Vector3::zeros();
    e[k] = 1.0;
    let u = (e - jh * jh.dot(&e)).normalize();
    let w = jh.cross(&u);
    Matrix3::from_columns(&[jh, u, w])
}

/// Extrinsic quantities at one point, in the aligned frame of a [`CrData`].
#[derive(Debug, Clone)]
pub struct PointGeometry {
    pub base: SpherePoint,
    /// `φ_* X_i`.
    pub tangent: [Vec<Complex64>; 3],
    /// `nabla[i][j] = ∇̄_{X_i} φ_* X_j`.
    pub nabla: [[Vec<Complex64>; 3]; 3],
    /// Real orthonormal basis of the tangent space.
    basis: Vec<Vec<Complex64>>,
}

impl PointGeometry {
    pub fn new(jet: &PointJet, cr: &CrData) -> Result<Self> {
        let x: [[f64; 3]; 3] = std::array::from_fn(|i| cr.field(i));
        let tangent: [Vec<Complex64>; 3] = std::array::from_fn(|i| jet.tangent(&x[i]));
        let nabla = std::array::from_fn(|i| std::array::from_fn(|j| jet.nabla(&x[i], &x[j])));
        let basis = real_orthonormal_basis(&tangent)?;
        Ok(Self { base: jet.base, tangent, nabla, basis })
    }

    pub fn tangential(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
        for q in &self.basis {
            axpy(&mut out, Complex64::new(re_dot(v, q), 0.0), q);
        }
        out
    }

    pub fn normal(&self, v: &[Complex64]) -> Vec<Complex64> {
        sub(v, &self.tangential(v))
    }

    /// `B(X_i, X_j)`, the normal part of `∇̄_{X_i} φ_* X_j`.
    pub fn second_fundamental_form(&self) -> SecondFundamentalForm {
        let b: [[Vec<Complex64>; 3]; 3] =
            std::array::from_fn(|i| std::array::from_fn(|j| self.normal(&self.nabla[i][j])));
        let mut h = vec![Complex64::new(0.0, 0.0); b[0][0].len()];
        for (i, row) in b.iter().enumerate() {
            axpy(&mut h, Complex64::new(1.0 / 3.0, 0.0), &row[i]);
        }
        let mut sym: f64 = 0.0;
        let mut sq = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                sym = sym.max(norm(&sub(&b[i][j], &b[j][i])));
                sq += re_dot(&b[i][j], &b[i][j]);
            }
        }
        SecondFundamentalForm {
            mean_curvature_norm: norm(&h),
            mean_curvature: h,
            norm: sq.sqrt(),
            symmetry_defect: sym,
            b,
        }
    }

    /// `<∇̄_{X_i} φ_* X_j, φ_* X_k>`: the induced connection read off extrinsically.
    pub fn tangential_connection(&self, i: usize, j: usize) -> [f64; 3] {
        std::array::from_fn(|k| re_dot(&self.nabla[i][j], &self.tangent[k]))
    }

    /// `ξ₀ = J φ_* X₁`.
    pub fn xi0(&self) -> Vec<Complex64> {
        scaled(&self.tangent[0], I)
    }

    /// Part of `∇⊥ ξ₀` orthogonal to `ξ₀`, per direction, and the part of `B`
    /// orthogonal to `ξ₀`.
    pub fn normal_connection_xi0(&self) -> NormalConnectionXi0 {
        let xi = self.xi0();
        let xi_hat = scaled(&xi, Complex64::new(1.0 / norm(&xi), 0.0));
        let drop_xi = |v: &[Complex64]| {
            let mut out = v.to_vec();
            axpy(&mut out, Complex64::new(-re_dot(v, &xi_hat), 0.0), &xi_hat);
            out
        };
        let per_direction = std::array::from_fn(|i| {
            let d = scaled(&self.nabla[i][0], I);
            norm(&drop_xi(&self.normal(&d)))
        });
        let sff = self.second_fundamental_form();
        let mut w2_shape: f64 = 0.0;
        for row in &sff.b {
            for bij in row {
                w2_shape = w2_shape.max(norm(&drop_xi(bij)));
            }
        }
        let xi0_b11 = re_dot(&self.nabla[0][0], &xi);
        NormalConnectionXi0 {
            norm: per_direction.iter().copied().fold(0.0, f64::max),
            per_direction,
            w2_shape_norm: w2_shape,
            xi0_b11,
        }
    }

    /// `|R_{ijij} - (1 + 3 J_{ij}² + <B_ii, B_jj> - |B_ij|²)|` for the planes
    /// `(1,2), (1,3), (2,3)`.
    pub fn gauss_residual(&self, cr: &CrData, c: &StructureMatrix) -> [f64; 3] {
        let r = curvature(c);
        let b = self.second_fundamental_form().b;
        let planes = [(0, 1), (0, 2), (1, 2)];
        planes.map(|(i, j)| {
            let jij = re_dot(&scaled(&self.tangent[i], I), &self.tangent[j]);
            debug_assert!((jij - cr.j_matrix[(i, j)]).abs() < 1e-6);
            let ext = 1.0 + 3.0 * jij * jij + re_dot(&b[i][i], &b[j][j]) - re_dot(&b[i][j], &b[i][j]);
            (r.sectional(i, j) - ext).abs()
        })
    }

    /// Largest gap between the tangential part of `∇̄` and the intrinsic connection.
    pub fn connection_defect(&self, cr: &CrData) -> f64 {
        let w = connection(&cr.structure);
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let ext = self.tangential_connection(i, j);
                let int = w.covariant(i, j);
                for k in 0..3 {
                    worst = worst.max((ext[k] - int[k]).abs());
                }
            }
        }
        worst
    }
}

/// Modified Gram–Schmidt over the reals, reorthogonalized once.
fn real_orthonormal_basis(vs: &[Vec<Complex64>]) -> Result<Vec<Vec<Complex64>>> {
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(vs.len());
    for (idx, v) in vs.iter().enumerate() {
        let mut u = v.clone();
        for _ in 0..2 {
            for q in &basis {
                let c = re_dot(&u, q);
                axpy(&mut u, Complex64::new(-c, 0.0), q);
            }
        }
        let n2 = re_dot(&u, &u);
        if n2 < RANK {
            return Err(Error::DegenerateRank { rank: idx, min_eigenvalue: n2 });
        }
        basis.push(scaled(&u, Complex64::new(1.0 / n2.sqrt(), 0.0)));
    }
    Ok(basis)
}

#[derive(Debug, Clone)]
pub struct SecondFundamentalForm {
    pub b: [[Vec<Complex64>; 3]; 3],
    pub mean_curvature: Vec<Complex64>,
    pub mean_curvature_norm: f64,
    /// `(Σ_ij |B_ij|²)^{1/2}`.
    pub norm: f64,
    pub symmetry_defect: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalConnectionXi0 {
    /// `|∇⊥_{X_i} ξ₀ - <∇⊥_{X_i} ξ₀, ξ₀> ξ₀|`.
    pub per_direction: [f64; 3],
    pub norm: f64,
    /// Largest component of `B` orthogonal to `ξ₀`.
    pub w2_shape_norm: f64,
    /// `<B(X₁, X₁), ξ₀>`; equals `c¹₂₃` when `H` has no `ξ₀` component.
    pub xi0_b11: f64,
}

pub fn second_fundamental_form(lift: &ImmersionLift, cr: &CrData, pt: &SpherePoint) -> Result<SecondFundamentalForm> {
    let jet = LiftJet::new(lift).at(pt);
    Ok(PointGeometry::new(&jet, cr)?.second_fundamental_form())
}

pub fn normal_connection_xi0(lift: &ImmersionLift, cr: &CrData, pt: &SpherePoint) -> Result<NormalConnectionXi0> {
    if !cr.is_cr {
        return Err(Error::NotCr { j23: cr.j_matrix[(1, 2)] });
    }
    let jet = LiftJet::new(lift).at(pt);
    Ok(PointGeometry::new(&jet, cr)?.normal_connection_xi0())
}

pub fn gauss_residual(lift: &ImmersionLift, cr: &CrData, c: &StructureMatrix, pt: &SpherePoint) -> Result<[f64; 3]> {
    let jet = LiftJet::new(lift).at(pt);
    Ok(PointGeometry::new(&jet, cr)?.gauss_residual(cr, c))
}
