//! Exact function algebra on S^3 = {(z, w) : z z̄ + w w̄ = 1}.
//!
//! Elements of ℂ[z, w, z̄, w̄] / (z z̄ + w w̄ - 1) are stored in a canonical
//! normal form: the rewrite `w w̄ -> 1 - z z̄` is applied until no monomial
//! carries both `w` and `w̄`. The relation has a single leading monomial, so
//! the normal form is unique and two elements are equal iff their term maps
//! agree (up to the coefficient drop threshold).
//!
//! The left-invariant operators of the standard frame act as derivations:
//!
//! * `X1   = i (z ∂z + w ∂w - z̄ ∂z̄ - w̄ ∂w̄)`
//! * `Z    = -w̄ ∂z + z̄ ∂w`
//! * `Zbar = -w ∂z̄ + z ∂w̄`
//!
//! with `X'_2 = Z + Zbar` and `X'_3 = i (Z - Zbar)`. Each of them kills
//! `z z̄ + w w̄ - 1`, so they descend to the quotient.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance::{COEFF_DROP, ON_SPHERE};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Exponents `(a, b, c, d)` of `z^a w^b z̄^c w̄^d`.
///
/// The derived order is lexicographic on the quadruple, which fixes the
/// iteration order of term maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial(pub [u32; 4]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0, 0]);

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn times(self, other: Monomial) -> Monomial {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = other.0;
        Monomial([a + e, b + f, c + g, d + h])
    }

    fn conj(self) -> Monomial {
        let [a, b, c, d] = self.0;
        Monomial([c, d, a, b])
    }

    fn is_canonical(&self) -> bool {
        self.0[1] == 0 || self.0[3] == 0
    }

    fn eval(&self, p: &SpherePoint) -> Complex64 {
        let [a, b, c, d] = self.0;
        p.z.powu(a) * p.w.powu(b) * p.z.conj().powu(c) * p.w.conj().powu(d)
    }
}

/// A point of S^3 ⊂ ℂ².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint {
    pub z: Complex64,
    pub w: Complex64,
}

impl SpherePoint {
    pub fn new(z: Complex64, w: Complex64) -> Result<Self> {
        let defect = z.norm_sqr() + w.norm_sqr() - 1.0;
        if defect.abs() > ON_SPHERE {
            return Err(Error::OffSphere { defect });
        }
        Ok(Self { z, w })
    }

    /// Radial projection of a nonzero vector of ℂ² onto the sphere.
    pub fn normalized(z: Complex64, w: Complex64) -> Self {
        let r = (z.norm_sqr() + w.norm_sqr()).sqrt();
        Self { z: z / r, w: w / r }
    }
}

/// Elementary derivations of the standard frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Derivation {
    X1,
    Z,
    Zbar,
}

/// A left-invariant vector field `Σ x_j X'_j` with real coefficients in the
/// standard frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantField(pub [f64; 3]);

impl InvariantField {
    pub const X1: InvariantField = InvariantField([1.0, 0.0, 0.0]);
    pub const X2: InvariantField = InvariantField([0.0, 1.0, 0.0]);
    pub const X3: InvariantField = InvariantField([0.0, 0.0, 1.0]);

    pub fn basis(i: usize) -> InvariantField {
        let mut x = [0.0; 3];
        x[i] = 1.0;
        InvariantField(x)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| *x == 0.0)
    }

    /// `X = x1 X1 + (x2 + i x3) Z + (x2 - i x3) Zbar`.
    pub fn apply(&self, p: &ReducedPolynomial) -> ReducedPolynomial {
        let [x1, x2, x3] = self.0;
        let mut raw = BTreeMap::new();
        if x1 != 0.0 {
            p.accumulate_derivative(Derivation::X1, Complex64::new(x1, 0.0), &mut raw);
        }
        if x2 != 0.0 || x3 != 0.0 {
            p.accumulate_derivative(Derivation::Z, Complex64::new(x2, x3), &mut raw);
            p.accumulate_derivative(Derivation::Zbar, Complex64::new(x2, -x3), &mut raw);
        }
        ReducedPolynomial::reduce(raw)
    }

    /// Tangent vector of the field at a point, as an element of ℂ².
    pub fn at(&self, p: &SpherePoint) -> [Complex64; 2] {
        let [x1, x2, x3] = self.0;
        let [v1, v2, v3] = crate::su2_frames::standard_vectors(p);
        [v1[0] * x1 + v2[0] * x2 + v3[0] * x3, v1[1] * x1 + v2[1] * x2 + v3[1] * x3]
    }
}

/// Canonical representative of an element of the function algebra of S^3.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ReducedPolynomial {
    terms: BTreeMap<Monomial, Complex64>,
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * f64::from(n - j) / f64::from(j + 1))
}

fn push(raw: &mut BTreeMap<Monomial, Complex64>, m: Monomial, c: Complex64) {
    *raw.entry(m).or_insert(Complex64::new(0.0, 0.0)) += c;
}

impl ReducedPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Complex64) -> Self {
        Self::monomial(Monomial::ONE, c)
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    pub fn monomial(m: Monomial, c: Complex64) -> Self {
        let mut raw = BTreeMap::new();
        raw.insert(m, c);
        Self::reduce(raw)
    }

    pub fn z() -> Self {
        Self::monomial(Monomial([1, 0, 0, 0]), Complex64::new(1.0, 0.0))
    }

    pub fn w() -> Self {
        Self::monomial(Monomial([0, 1, 0, 0]), Complex64::new(1.0, 0.0))
    }

    pub fn zbar() -> Self {
        Self::monomial(Monomial([0, 0, 1, 0]), Complex64::new(1.0, 0.0))
    }

    pub fn wbar() -> Self {
        Self::monomial(Monomial([0, 0, 0, 1]), Complex64::new(1.0, 0.0))
    }

    /// Normal form of an arbitrary term map modulo `z z̄ + w w̄ - 1`.
    ///
    /// A monomial with `r = min(b, d) > 0` is rewritten in one step through
    /// `(w w̄)^r = (1 - z z̄)^r`.
    pub fn reduce(raw: BTreeMap<Monomial, Complex64>) -> Self {
        let mut out: BTreeMap<Monomial, Complex64> = BTreeMap::new();
        for (m, c) in raw {
            let [a, b, cc, d] = m.0;
            let r = b.min(d);
            if r == 0 {
                push(&mut out, m, c);
                continue;
            }
            for j in 0..=r {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                push(&mut out, Monomial([a + j, b - r, cc + j, d - r]), c * (sign * binomial(r, j)));
            }
        }
        out.retain(|_, c| c.norm() >= COEFF_DROP);
        Self { terms: out }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Complex64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: Monomial) -> Complex64 {
        self.terms.get(&m).copied().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Complex64 {
        self.coefficient(Monomial::ONE)
    }

    pub fn max_abs_coefficient(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest coefficient deviation from the constant `c`.
    pub fn distance_to_constant(&self, c: Complex64) -> f64 {
        (self - &Self::constant(c)).max_abs_coefficient()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn is_canonical(&self) -> bool {
        self.terms.keys().all(Monomial::is_canonical) && self.terms.values().all(|c| c.norm() >= COEFF_DROP)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let raw = self.terms.iter().map(|(m, c)| (*m, c * s)).collect();
        Self::reduce(raw)
    }

    pub fn conj(&self) -> Self {
        let raw = self.terms.iter().map(|(m, c)| (m.conj(), c.conj())).collect();
        Self::reduce(raw)
    }

    fn accumulate_derivative(&self, op: Derivation, factor: Complex64, raw: &mut BTreeMap<Monomial, Complex64>) {
        for (m, c) in &self.terms {
            let [a, b, cc, d] = m.0;
            let c = c * factor;
            match op {
                Derivation::X1 => {
                    let charge = f64::from(a + b) - f64::from(cc + d);
                    if charge != 0.0 {
                        push(raw, *m, c * I * charge);
                    }
                }
                Derivation::Z => {
                    if a > 0 {
                        push(raw, Monomial([a - 1, b, cc, d + 1]), -c * f64::from(a));
                    }
                    if b > 0 {
                        push(raw, Monomial([a, b - 1, cc + 1, d]), c * f64::from(b));
                    }
                }
                Derivation::Zbar => {
                    if cc > 0 {
                        push(raw, Monomial([a, b + 1, cc - 1, d]), -c * f64::from(cc));
                    }
                    if d > 0 {
                        push(raw, Monomial([a + 1, b, cc, d - 1]), c * f64::from(d));
                    }
                }
            }
        }
    }

    pub fn derive(&self, op: Derivation) -> Self {
        let mut raw = BTreeMap::new();
        self.accumulate_derivative(op, Complex64::new(1.0, 0.0), &mut raw);
        Self::reduce(raw)
    }

    pub fn eval(&self, p: &SpherePoint) -> Complex64 {
        self.terms.iter().map(|(m, c)| c * m.eval(p)).sum()
    }

    /// Evaluates an unreduced term map; agrees with `reduce(raw).eval(p)` on S^3.
    pub fn eval_raw(raw: &BTreeMap<Monomial, Complex64>, p: &SpherePoint) -> Complex64 {
        raw.iter().map(|(m, c)| c * m.eval(p)).sum()
    }

    fn product_raw(&self, other: &Self, raw: &mut BTreeMap<Monomial, Complex64>) {
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                push(raw, m1.times(*m2), c1 * c2);
            }
        }
    }
}

impl Add for &ReducedPolynomial {
    type Output = ReducedPolynomial;
    fn add(self, rhs: &ReducedPolynomial) -> ReducedPolynomial {
        let mut raw = self.terms.clone();
        for (m, c) in &rhs.terms {
            push(&mut raw, *m, *c);
        }
        ReducedPolynomial::reduce(raw)
    }
}

impl Sub for &ReducedPolynomial {
    type Output = ReducedPolynomial;
    fn sub(self, rhs: &ReducedPolynomial) -> ReducedPolynomial {
        let mut raw = self.terms.clone();
        for (m, c) in &rhs.terms {
            push(&mut raw, *m, -c);
        }
        ReducedPolynomial::reduce(raw)
    }
}

impl Mul for &ReducedPolynomial {
    type Output = ReducedPolynomial;
    fn mul(self, rhs: &ReducedPolynomial) -> ReducedPolynomial {
        let mut raw = BTreeMap::new();
        self.product_raw(rhs, &mut raw);
        ReducedPolynomial::reduce(raw)
    }
}

impl Neg for &ReducedPolynomial {
    type Output = ReducedPolynomial;
    fn neg(self) -> ReducedPolynomial {
        let terms = self.terms.iter().map(|(m, c)| (*m, -c)).collect();
        ReducedPolynomial { terms }
    }
}

impl fmt::Display for ReducedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = ["z", "w", "z̄", "w̄"];
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({:.6}{:+.6}i)", c.re, c.im)?;
            for (e, name) in m.0.iter().zip(names) {
                match e {
                    0 => {}
                    1 => write!(f, "·{name}")?,
                    _ => write!(f, "·{name}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    expo: [u32; 4],
    re: f64,
    im: f64,
}

impl Serialize for ReducedPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let records: Vec<TermRecord> =
            self.terms.iter().map(|(m, c)| TermRecord { expo: m.0, re: c.re, im: c.im }).collect();
        records.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ReducedPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let records = Vec::<TermRecord>::deserialize(d)?;
        let mut raw = BTreeMap::new();
        for r in records {
            if !(r.re.is_finite() && r.im.is_finite()) {
                return Err(serde::de::Error::custom("non-finite coefficient"));
            }
            push(&mut raw, Monomial(r.expo), Complex64::new(r.re, r.im));
        }
        Ok(ReducedPolynomial::reduce(raw))
    }
}

/// A ℂ^{n+1}-valued function on S^3, one reduced polynomial per component.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PolyVector {
    entries: Vec<ReducedPolynomial>,
}

impl PolyVector {
    pub fn new(entries: Vec<ReducedPolynomial>) -> Self {
        Self { entries }
    }

    pub fn zeros(len: usize) -> Self {
        Self { entries: vec![ReducedPolynomial::zero(); len] }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[ReducedPolynomial] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<ReducedPolynomial> {
        self.entries
    }

    pub fn map(&self, f: impl Fn(&ReducedPolynomial) -> ReducedPolynomial) -> Self {
        Self { entries: self.entries.iter().map(f).collect() }
    }

    pub fn derive(&self, op: Derivation) -> Self {
        self.map(|p| p.derive(op))
    }

    pub fn apply(&self, field: &InvariantField) -> Self {
        self.map(|p| field.apply(p))
    }

    pub fn conj(&self) -> Self {
        self.map(ReducedPolynomial::conj)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.map(|p| p.scale(s))
    }

    /// Componentwise product with a scalar function.
    pub fn times(&self, f: &ReducedPolynomial) -> Self {
        self.map(|p| p * f)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(Self { entries })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(Self { entries })
    }

    /// Concatenation `self ⊕ other` in ℂ^{p} ⊕ ℂ^{q}.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Self { entries }
    }

    pub fn eval(&self, p: &SpherePoint) -> Vec<Complex64> {
        self.entries.iter().map(|e| e.eval(p)).collect()
    }

    pub fn max_abs_coefficient(&self) -> f64 {
        self.entries.iter().map(ReducedPolynomial::max_abs_coefficient).fold(0.0, f64::max)
    }

    pub fn max_degree(&self) -> u32 {
        self.entries.iter().map(ReducedPolynomial::degree).max().unwrap_or(0)
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::Dimension { expected: self.len(), actual: other.len() });
        }
        Ok(())
    }
}

/// `Σ_A u_A · conj(v_A)`, reduced.
pub fn hermitian_pair(u: &PolyVector, v: &PolyVector) -> Result<ReducedPolynomial> {
    u.check_len(v)?;
    let mut raw = BTreeMap::new();
    for (a, b) in u.entries.iter().zip(&v.entries) {
        a.product_raw(&b.conj(), &mut raw);
    }
    Ok(ReducedPolynomial::reduce(raw))
}

/// `hermitian_pair` together with the largest absolute sum of contributions
/// to any single output coefficient.
///
/// Reduction of high-degree products cancels terms much larger than the
/// result (the normal form of `(zz̄ + ww̄)^k` sums alternating binomials of
/// size up to about `3^k`), so the absolute rounding error of the output
/// scales with this number rather than with the output itself.
pub fn hermitian_pair_scaled(u: &PolyVector, v: &PolyVector) -> Result<(ReducedPolynomial, f64)> {
    u.check_len(v)?;
    let mut raw = BTreeMap::new();
    for (a, b) in u.entries.iter().zip(&v.entries) {
        a.product_raw(&b.conj(), &mut raw);
    }
    let scale = reduction_scale(&raw);
    Ok((ReducedPolynomial::reduce(raw), scale))
}

fn reduction_scale(raw: &BTreeMap<Monomial, Complex64>) -> f64 {
    let mut acc: BTreeMap<Monomial, f64> = BTreeMap::new();
    for (m, c) in raw {
        let [a, b, cc, d] = m.0;
        let r = b.min(d);
        for j in 0..=r {
            *acc.entry(Monomial([a + j, b - r, cc + j, d - r])).or_insert(0.0) += c.norm() * binomial(r, j);
        }
    }
    acc.values().copied().fold(0.0, f64::max)
}

/// Pointwise Hermitian product `Σ u_A conj(v_A)` of evaluated vectors.
pub fn hermitian_dot(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a * b.conj()).sum()
}
