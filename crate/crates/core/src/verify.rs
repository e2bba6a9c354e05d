//! End-to-end verification of a lift: fit, classify, and check every
//! pointwise quantity at seeded sample points.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fubini_study::{cr_data_from_jets, pointwise_unit_defect, ImmersionLift, LiftJet, PointGeometry};
use crate::immersion_families::{family_lift, recover_integers, FamilyParams, Recovered};
use crate::intrinsic_geometry::{classify, MetricClass, MetricKind};
use crate::sampling::{sample_points, DEFAULT_COUNT, DEFAULT_SEED};
use crate::su2_frames::invariants;
use crate::tolerance::{GAUSS, NOT_TOTALLY_GEODESIC, VERIFY_DEFAULT};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { samples: DEFAULT_COUNT, seed: DEFAULT_SEED, tol: VERIFY_DEFAULT }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrSummary {
    pub is_cr: bool,
    pub kahler_angle: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InvariantSummary {
    pub a: f64,
    pub abs_mu: f64,
    pub abs_tau: f64,
    pub c231: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Xi0Summary {
    pub parallel: bool,
    /// Max over samples and directions of the part of `∇⊥ξ₀` orthogonal to `ξ₀`.
    pub norm: f64,
}

/// Which of the three possible shapes a CR minimal immersion takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MinimalCase {
    /// Non-Berger induced metric, `n = 2`.
    Generic,
    /// Berger or round metric with `∇⊥ξ₀ = 0`.
    ParallelXi0,
    /// Berger metric with `∇⊥ξ₀ ≠ 0`, `n ≥ 3`.
    BergerNonParallel,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl Check {
    fn at_most(name: &'static str, value: f64, threshold: f64) -> Self {
        Self { name, value, threshold, passed: value <= threshold }
    }

    fn above(name: &'static str, value: f64, threshold: f64) -> Self {
        Self { name, value, threshold, passed: value > threshold }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub lift_id: String,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    /// `max | |e₀(p)|² - 1 |` over the samples.
    pub unit_norm_defect: f64,
    /// Coefficient defect of the reduced `<e₀, e₀> - 1`, relative to the
    /// largest intermediate term.
    pub unit_norm_defect_symbolic: f64,
    pub equivariance_spread: f64,
    pub cr: CrSummary,
    /// `max ‖H‖` over the samples.
    pub minimality_residual: f64,
    pub classification: MetricClass,
    pub structure_matrix: [f64; 9],
    pub invariants: InvariantSummary,
    /// Absent unless the lift is of CR type.
    pub xi0_parallel: Option<Xi0Summary>,
    /// Largest component of `B` orthogonal to `ξ₀`.
    pub w2_shape_norm: f64,
    pub min_sff_norm: f64,
    pub sff_symmetry_defect: f64,
    pub connection_defect: f64,
    pub gauss_residual_max: f64,
    pub berger_roundtrip: Option<Recovered>,
    pub minimal_case: Option<MinimalCase>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Per-sample scalars whose constancy witnesses equivariance.
#[derive(Debug, Clone, Copy)]
struct Sample {
    h: f64,
    b2: f64,
    xi0: f64,
    w2_shape: f64,
    gauss: [f64; 3],
    symmetry: f64,
    connection: f64,
}

#[derive(Debug, Clone, Copy)]
struct Range {
    min: f64,
    max: f64,
}

impl Range {
    fn of(it: impl Iterator<Item = f64>) -> Self {
        it.fold(Range { min: f64::INFINITY, max: f64::NEG_INFINITY }, |r, v| Range {
            min: r.min.min(v),
            max: r.max.max(v),
        })
    }

    fn spread(&self) -> f64 {
        self.max - self.min
    }
}

pub fn verify(lift: &ImmersionLift, lift_id: &str, opts: &VerifyOptions) -> Result<VerificationReport> {
    let pts = sample_points(opts.samples, opts.seed);
    let jets = LiftJet::new(lift).at_points(&pts);
    let cr = cr_data_from_jets(&jets)?;
    let per_point: Vec<Sample> = jets
        .par_iter()
        .map(|jet| {
            let g = PointGeometry::new(jet, &cr)?;
            let sff = g.second_fundamental_form();
            let nc = g.normal_connection_xi0();
            Ok(Sample {
                h: sff.mean_curvature_norm,
                b2: sff.norm * sff.norm,
                xi0: nc.norm,
                w2_shape: nc.w2_shape_norm,
                gauss: g.gauss_residual(&cr, &cr.structure),
                symmetry: sff.symmetry_defect,
                connection: g.connection_defect(&cr),
            })
        })
        .collect::<Result<_>>()?;

    let h = Range::of(per_point.iter().map(|s| s.h));
    let b2 = Range::of(per_point.iter().map(|s| s.b2));
    let xi0 = Range::of(per_point.iter().map(|s| s.xi0));
    let gauss: Vec<Range> = (0..3).map(|p| Range::of(per_point.iter().map(|s| s.gauss[p]))).collect();
    let spread = [h.spread(), b2.spread(), xi0.spread()]
        .into_iter()
        .chain(gauss.iter().map(Range::spread))
        .fold(cr.spread, f64::max);

    let classification = classify(&cr.structure);
    let inv = invariants(&cr.structure);
    let xi0_parallel = cr.is_cr.then_some(Xi0Summary { parallel: xi0.max <= opts.tol, norm: xi0.max });
    let w2_shape_norm = per_point.iter().map(|s| s.w2_shape).fold(0.0, f64::max);
    let gauss_residual_max = gauss.iter().map(|r| r.max).fold(0.0, f64::max);
    let sff_symmetry_defect = per_point.iter().map(|s| s.symmetry).fold(0.0, f64::max);
    let connection_defect = per_point.iter().map(|s| s.connection).fold(0.0, f64::max);
    let min_sff_norm = b2.min.sqrt();

    let berger_roundtrip = match classification.kind {
        MetricKind::Berger { b, c } => recover_integers(b, c).ok(),
        MetricKind::Constant { c } => recover_integers(1.0, c).ok(),
        MetricKind::Generic => None,
    };
    let minimal = h.max <= opts.tol;
    let minimal_case = match (cr.is_cr && minimal, classification.kind, xi0_parallel) {
        (false, ..) => None,
        (true, MetricKind::Generic, _) => Some(MinimalCase::Generic),
        (true, _, Some(x)) if x.parallel => Some(MinimalCase::ParallelXi0),
        (true, MetricKind::Berger { .. }, _) => Some(MinimalCase::BergerNonParallel),
        _ => None,
    };

    let unit_norm_defect = pointwise_unit_defect(lift, &pts);
    let unit_norm_defect_symbolic = lift.unit_norm_defect();
    let checks = vec![
        Check::at_most("unit_norm", unit_norm_defect.max(unit_norm_defect_symbolic), opts.tol),
        Check::at_most("equivariance", spread, opts.tol),
        Check::at_most("cr_type", (cr.j_matrix[(1, 2)] - 1.0).abs(), opts.tol),
        Check::at_most("minimality", h.max, opts.tol),
        Check::at_most("sff_symmetry", sff_symmetry_defect, opts.tol),
        Check::at_most("tangential_connection", connection_defect, opts.tol),
        Check::at_most("gauss", gauss_residual_max, GAUSS.max(opts.tol)),
        Check::above("not_totally_geodesic", min_sff_norm, NOT_TOTALLY_GEODESIC),
    ];
    let passed = checks.iter().all(|c| c.passed);
    Ok(VerificationReport {
        lift_id: lift_id.to_owned(),
        n: lift.n(),
        samples: opts.samples,
        seed: opts.seed,
        tol: opts.tol,
        unit_norm_defect,
        unit_norm_defect_symbolic,
        equivariance_spread: spread,
        cr: CrSummary { is_cr: cr.is_cr, kahler_angle: cr.kahler_angle },
        minimality_residual: h.max,
        classification,
        structure_matrix: cr.structure.rows(),
        invariants: InvariantSummary { a: inv.a, abs_mu: inv.mu.norm(), abs_tau: inv.tau.norm(), c231: inv.c231 },
        xi0_parallel,
        w2_shape_norm,
        min_sff_norm,
        sff_symmetry_defect,
        connection_defect,
        gauss_residual_max,
        berger_roundtrip,
        minimal_case,
        checks,
        passed,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub t: f64,
    pub mean_curvature_norm: f64,
    pub b: f64,
    pub c: f64,
    pub lambda3: f64,
    pub kahler_angle: f64,
}

/// Samples the `(k, l)` family at `steps` equally spaced `t` in `[t_min, t_max]`.
///
/// `b, c` come from classifying the fitted metric (NaN if it is not Berger);
/// `lambda3` is the measured `|∇⊥_{X₂} ξ₀|` orthogonal to `ξ₀`.
pub fn sweep(k: u32, l: u32, t_min: f64, t_max: f64, steps: usize, samples: usize, seed: u64) -> Result<Vec<SweepRow>> {
    if steps < 2 || !(t_min > 0.0 && t_min < t_max && t_max < std::f64::consts::FRAC_PI_2) {
        return Err(Error::InvalidParams(format!(
            "need 0 < t_min < t_max < π/2 and steps ≥ 2, got [{t_min}, {t_max}] with {steps} steps"
        )));
    }
    FamilyParams::new(k, l, t_min)?;
    let pts = sample_points(samples, seed);
    (0..steps)
        .into_par_iter()
        .map(|i| {
            let t = t_min + (t_max - t_min) * i as f64 / (steps - 1) as f64;
            let lift = family_lift(&FamilyParams::new(k, l, t)?)?;
            let jets = LiftJet::new(&lift).at_points(&pts);
            let cr = cr_data_from_jets(&jets)?;
            let mut h: f64 = 0.0;
            let mut lambda3: f64 = 0.0;
            for jet in &jets {
                let g = PointGeometry::new(jet, &cr)?;
                h = h.max(g.second_fundamental_form().mean_curvature_norm);
                lambda3 = lambda3.max(g.normal_connection_xi0().per_direction[1]);
            }
            let (b, c) = match classify(&cr.structure).kind {
                MetricKind::Berger { b, c } => (b, c),
                MetricKind::Constant { c } => (1.0, c),
                MetricKind::Generic => (f64::NAN, f64::NAN),
            };
            Ok(SweepRow { t, mean_curvature_norm: h, b, c, lambda3, kahler_angle: cr.kahler_angle })
        })
        .collect()
}
