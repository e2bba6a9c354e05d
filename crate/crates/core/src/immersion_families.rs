//! Explicit polynomial lifts and closed-form parameter solvers.
//!
//! `f = Σ_α √C(k,α) z^{k-α} w^α ε_α` is the unit holomorphic vector of degree
//! `k`, and `f_α = Z^α f / (α! √C(k,α))` its harmonic sequence. The family
//! lift is `e₀ = cos t · f ⊕ i sin t · h` with `h` of degree `l`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_8};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fubini_study::ImmersionLift;
use crate::surface_algebra::{Derivation, Monomial, PolyVector, ReducedPolynomial};
use crate::tolerance::{BISECTION, BISECTION_MAX_ITER, INTEGER_RECOVERY};

/// Largest supported degree.
pub const MAX_DEGREE: u32 = 30;

/// `√C(k, α)` as a running product, no factorials.
pub fn sqrt_binomial(k: u32, alpha: u32) -> f64 {
    (0..alpha).fold(1.0, |acc, j| acc * (f64::from(k - j) / f64::from(j + 1)).sqrt())
}

fn check_degree(k: u32) -> Result<()> {
    if k > MAX_DEGREE {
        return Err(Error::InvalidParams(format!("degree {k} exceeds supported maximum {MAX_DEGREE}")));
    }
    Ok(())
}

pub fn holomorphic_vector(k: u32) -> Result<PolyVector> {
    check_degree(k)?;
    let entries = (0..=k)
        .map(|alpha| {
            ReducedPolynomial::monomial(
                Monomial([k - alpha, alpha, 0, 0]),
                Complex64::new(sqrt_binomial(k, alpha), 0.0),
            )
        })
        .collect();
    Ok(PolyVector::new(entries))
}

/// `f_α` for the degree-`k` holomorphic vector.
///
/// Applied one step at a time: `Z f_{j-1} = √(j (k + 1 - j)) f_j`, and the
/// product of these factors over `j = 1..α` is `α! √C(k, α)`.
pub fn harmonic_sequence(k: u32, alpha: u32) -> Result<PolyVector> {
    if alpha > k {
        return Err(Error::InvalidParams(format!("alpha = {alpha} out of range 0..={k}")));
    }
    let mut f = holomorphic_vector(k)?;
    for j in 1..=alpha {
        let s = (f64::from(j) * f64::from(k + 1 - j)).sqrt();
        f = f.derive(Derivation::Z).scale(Complex64::new(1.0 / s, 0.0));
    }
    Ok(f)
}

/// `e₀ = cos(π/8) f₀ + i sin(π/8) f₂` with `k = 2`.
pub fn phi1_lift() -> ImmersionLift {
    let f0 = harmonic_sequence(2, 0).expect("k = 2 is supported");
    let f2 = harmonic_sequence(2, 2).expect("k = 2 is supported");
    let (s, c) = FRAC_PI_8.sin_cos();
    let e0 = f0.scale(Complex64::new(c, 0.0)).add(&f2.scale(Complex64::new(0.0, s))).expect("same length");
    ImmersionLift::new(e0).expect("unitary combination")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub k: u32,
    pub l: u32,
    pub t: f64,
}

impl FamilyParams {
    pub fn new(k: u32, l: u32, t: f64) -> Result<Self> {
        check_pair(k, l)?;
        if !(t > 0.0 && t < FRAC_PI_2) {
            return Err(Error::InvalidParams(format!("t = {t} outside (0, π/2)")));
        }
        Ok(Self { k, l, t })
    }

    /// The member at the closed-form minimal parameter.
    pub fn minimal(k: u32, l: u32) -> Result<Self> {
        Self::new(k, l, minimal_t(k, l)?.t)
    }

    pub fn n(&self) -> u32 {
        self.k + self.l + 1
    }

    pub fn m(&self) -> f64 {
        0.5 * f64::from(self.k - self.l)
    }

    pub fn a0(&self) -> f64 {
        a0(self.k, self.l, self.t)
    }
}

fn check_pair(k: u32, l: u32) -> Result<()> {
    if k <= l {
        return Err(Error::InvalidParams(format!("need k > l, got k = {k}, l = {l}")));
    }
    check_degree(k)
}

fn a0(k: u32, l: u32, t: f64) -> f64 {
    let (s, c) = t.sin_cos();
    f64::from(k) * c * c + f64::from(l) * s * s
}

/// `e₀ = cos t · f ⊕ i sin t · h` in `C^{k+1} ⊕ C^{l+1}`.
pub fn family_lift(p: &FamilyParams) -> Result<ImmersionLift> {
    let p = FamilyParams::new(p.k, p.l, p.t)?;
    let (s, c) = p.t.sin_cos();
    let f = holomorphic_vector(p.k)?.scale(Complex64::new(c, 0.0));
    let h = holomorphic_vector(p.l)?.scale(Complex64::new(0.0, s));
    ImmersionLift::new(f.direct_sum(&h))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MinimalT {
    /// Closed form, the value of record.
    pub t: f64,
    /// Root of `cos 2t · a₀(t) = m sin² 2t` found by bisection.
    pub t_bisection: f64,
}

/// `tan² t = 2k / (3(k - l) + √((k + l)² + 8(k - l)²))`.
pub fn minimal_t(k: u32, l: u32) -> Result<MinimalT> {
    check_pair(k, l)?;
    let (kf, lf) = (f64::from(k), f64::from(l));
    let d = kf - lf;
    let tan2 = 2.0 * kf / (3.0 * d + ((kf + lf).powi(2) + 8.0 * d * d).sqrt());
    let t = tan2.sqrt().atan();
    Ok(MinimalT { t, t_bisection: minimal_t_bisection(k, l) })
}

/// Minimality as `cot 2t = m sin 2t / a₀`, cleared of denominators:
/// `g(t) = cos 2t · a₀(t) - m sin² 2t`, with `g(0) = k > 0` and `g < 0` near π/2.
pub fn minimality_function(k: u32, l: u32, t: f64) -> f64 {
    let m = 0.5 * (f64::from(k) - f64::from(l));
    (2.0 * t).cos() * a0(k, l, t) - m * (2.0 * t).sin().powi(2)
}

fn minimal_t_bisection(k: u32, l: u32) -> f64 {
    // For l = 0 the function has a double zero at π/2; stay clear of it.
    let (mut lo, mut hi) = (0.0, FRAC_PI_2 - 1e-6);
    for _ in 0..BISECTION_MAX_ITER {
        if hi - lo <= BISECTION {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if minimality_function(k, l, mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `cos 2t = (√((n-1)² + 32 m²) - (n-1)) / (8m)` at the minimal parameter.
pub fn minimal_cos2t(k: u32, l: u32) -> Result<f64> {
    check_pair(k, l)?;
    let n1 = f64::from(k + l);
    let m = 0.5 * f64::from(k - l);
    Ok(((n1 * n1 + 32.0 * m * m).sqrt() - n1) / (8.0 * m))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BergerParams {
    pub b: f64,
    pub c: f64,
    pub lambda3: f64,
}

/// Induced metric `m² sin² 2t ω'₁² + a₀ (ω'₂² + ω'₃²)`: Berger with
/// `c = 1/a₀`, `b = m √c sin 2t`; `λ₃ = √(k l) / a₀`.
pub fn berger_params(p: &FamilyParams) -> BergerParams {
    let a0 = p.a0();
    let c = 1.0 / a0;
    let b = p.m() * c.sqrt() * (2.0 * p.t).sin();
    let lambda3 = (f64::from(p.k) * f64::from(p.l)).sqrt() / a0;
    BergerParams { b, c, lambda3 }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Recovered {
    pub k: f64,
    pub l: f64,
    pub t: f64,
    pub integer: bool,
}

/// `k, l = c⁻¹ - b² ± b √(c⁻¹ + b²)`, `tan t = √(1 + b² c) - b √c`.
pub fn recover_integers(b: f64, c: f64) -> Result<Recovered> {
    if !(b > 0.0 && c > 0.0 && b.is_finite() && c.is_finite()) {
        return Err(Error::InvalidParams(format!("need b, c > 0, got b = {b}, c = {c}")));
    }
    let base = 1.0 / c - b * b;
    let disc = b * (1.0 / c + b * b).sqrt();
    let (k, l) = (base + disc, base - disc);
    let t = ((1.0 + b * b * c).sqrt() - b * c.sqrt()).atan();
    let near = |x: f64| x > -INTEGER_RECOVERY && (x - x.round()).abs() < INTEGER_RECOVERY;
    Ok(Recovered { k, l, t, integer: near(k) && near(l) })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstantCase {
    pub m: u32,
    pub c: f64,
    pub n: u32,
}

/// The minimal member of the `(k, l)` family has constant curvature exactly
/// when its Berger parameter is `b = 1`; then `m = (k - l)/2`,
/// `c = 1/(m² - 1)` and `n = 2m² - 3`.
pub fn constant_curvature_case(k: u32, l: u32) -> Result<Option<ConstantCase>> {
    let p = FamilyParams::minimal(k, l)?;
    let bp = berger_params(&p);
    if (bp.b - 1.0).abs() > 1e-9 {
        return Ok(None);
    }
    if !(k - l).is_multiple_of(2) || (k - l) / 2 < 2 {
        return Err(Error::InvalidParams(format!("b = 1 at ({k}, {l}) but m = (k - l)/2 is not an integer ≥ 2")));
    }
    let m = (k - l) / 2;
    let n = 2 * m * m - 3;
    if n != k + l + 1 {
        return Err(Error::InvalidParams(format!("b = 1 at ({k}, {l}) but n = {} ≠ 2m² - 3 = {n}", k + l + 1)));
    }
    Ok(Some(ConstantCase { m, c: 1.0 / f64::from(m * m - 1), n }))
}
