//! Subcommand implementations. Each returns the process exit code or a
//! [`Failure`] carrying one.

use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use crsphere_core::fubini_study::{ImmersionLift, MIN_SAMPLES};
use crsphere_core::immersion_families::{family_lift, minimal_t, phi1_lift, recover_integers, FamilyParams};
use crsphere_core::intrinsic_geometry::{classify as classify_metric, curvature, MetricClass};
use crsphere_core::su2_frames::StructureMatrix;
use crsphere_core::verify::{self as verifier, VerifyOptions};
use crsphere_core::Error;
use serde::Serialize;

use crate::lift_file::{Family, LiftFile};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INVARIANT: u8 = 3;
pub const EXIT_NOT_IMMERSION: u8 = 4;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidParams(_) | Error::TooFewSamples { .. } => EXIT_USAGE,
            Error::AsymmetricStructure { .. }
            | Error::SingularStructure { .. }
            | Error::IndefiniteStructure { .. }
            | Error::NotUnit { .. }
            | Error::Dimension { .. } => EXIT_INVARIANT,
            Error::DegenerateRank { .. } => EXIT_NOT_IMMERSION,
            _ => EXIT_FAILED,
        };
        Self { code, message: e.to_string() }
    }
}

type Outcome = std::result::Result<u8, Failure>;

fn read_input(path: Option<&Path>) -> std::result::Result<String, Failure> {
    let mut s = String::new();
    match path {
        None => io::stdin().read_to_string(&mut s).map(|_| ()),
        Some(p) if p == Path::new("-") => io::stdin().read_to_string(&mut s).map(|_| ()),
        Some(p) => fs::read_to_string(p).map(|t| s = t),
    }
    .map_err(|e| Failure::usage(format!("cannot read input: {e}")))?;
    Ok(s)
}

fn emit(bytes: &[u8], out: Option<&Path>) -> std::result::Result<(), Failure> {
    let res = match out {
        Some(p) => fs::write(p, bytes),
        None => io::stdout().lock().write_all(bytes),
    };
    res.map_err(|e| Failure { code: EXIT_FAILED, message: format!("cannot write output: {e}") })
}

fn emit_json<T: Serialize>(value: &T, out: Option<&Path>) -> std::result::Result<(), Failure> {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    emit(s.as_bytes(), out)
}

/// Nine numbers, flat or as three rows.
fn parse_structure(text: &str) -> std::result::Result<[f64; 9], Failure> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Failure::usage(format!("malformed JSON: {e}")))?;
    let flat: Vec<&serde_json::Value> = match value.as_array() {
        Some(rows) if rows.len() == 3 && rows.iter().all(|r| r.is_array()) => {
            if rows.iter().any(|r| r.as_array().map_or(0, Vec::len) != 3) {
                return Err(Failure::usage("expected three rows of three numbers"));
            }
            rows.iter().flat_map(|r| r.as_array().unwrap()).collect()
        }
        Some(items) if items.len() == 9 => items.iter().collect(),
        _ => return Err(Failure::usage("expected 9 numbers or a 3x3 array")),
    };
    let mut out = [0.0; 9];
    for (slot, v) in out.iter_mut().zip(flat) {
        *slot = v.as_f64().ok_or_else(|| Failure::usage(format!("not a number: {v}")))?;
    }
    Ok(out)
}

#[derive(Serialize)]
struct ClassifyOutput {
    #[serde(flatten)]
    class: MetricClass,
    /// `R₁₂₁₂, R₁₃₁₃, R₂₃₂₃` in the given frame.
    sectional: [f64; 3],
}

pub fn classify(input: Option<&Path>, out: Option<&Path>) -> Outcome {
    let rows = parse_structure(&read_input(input)?)?;
    let c = StructureMatrix::from_rows(rows)?;
    let output = ClassifyOutput { class: classify_metric(&c), sectional: curvature(&c).sectional_diagonal() };
    emit_json(&output, out)?;
    Ok(EXIT_OK)
}

pub fn build(phi1: bool, k: Option<u32>, l: Option<u32>, t: Option<f64>, minimal: bool, out: Option<&Path>) -> Outcome {
    let (family, lift) = match (phi1, k, l) {
        (true, ..) => (Family::Phi1, phi1_lift()),
        (false, Some(k), Some(l)) => {
            let t = match (t, minimal) {
                (Some(t), false) => t,
                (None, true) => minimal_t(k, l)?.t,
                _ => return Err(Failure::usage("give exactly one of --t and --minimal")),
            };
            let p = FamilyParams::new(k, l, t)?;
            (Family::Family { k, l, t, minimal }, family_lift(&p)?)
        }
        _ => return Err(Failure::usage("give --phi1 or --k and --l")),
    };
    let file = LiftFile { id: family.id(), family, n: lift.n(), e0: lift.e0().clone() };
    emit_json(&file, out)?;
    Ok(EXIT_OK)
}

pub fn verify(lift: &Path, samples: usize, seed: u64, tol: f64, out: Option<&Path>) -> Outcome {
    if samples < MIN_SAMPLES {
        return Err(Failure::usage(format!("need at least {MIN_SAMPLES} samples, got {samples}")));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Failure::usage(format!("tolerance must be positive, got {tol}")));
    }
    let text = read_input(Some(lift))?;
    let file: LiftFile =
        serde_json::from_str(&text).map_err(|e| Failure::usage(format!("malformed lift file: {e}")))?;
    let lift = ImmersionLift::new(file.e0)?;
    if lift.n() != file.n {
        return Err(Failure {
            code: EXIT_INVARIANT,
            message: format!("header n = {} but lift has n = {}", file.n, lift.n()),
        });
    }
    let report = verifier::verify(&lift, &file.id, &VerifyOptions { samples, seed, tol })?;
    emit_json(&report, out)?;
    if report.passed {
        return Ok(EXIT_OK);
    }
    for c in report.failures() {
        eprintln!("FAILED {}: {:e} (threshold {:e})", c.name, c.value, c.threshold);
    }
    Ok(EXIT_FAILED)
}

#[allow(clippy::too_many_arguments)]
pub fn sweep(
    k: u32,
    l: u32,
    t_min: f64,
    t_max: f64,
    steps: usize,
    samples: usize,
    seed: u64,
    out: Option<&Path>,
) -> Outcome {
    if samples < MIN_SAMPLES {
        return Err(Failure::usage(format!("need at least {MIN_SAMPLES} samples, got {samples}")));
    }
    let rows = verifier::sweep(k, l, t_min, t_max, steps, samples, seed)?;
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    for row in &rows {
        w.serialize(row).map_err(|e| Failure { code: EXIT_FAILED, message: e.to_string() })?;
    }
    let bytes = w.into_inner().map_err(|e| Failure { code: EXIT_FAILED, message: e.to_string() })?;
    emit(&bytes, out)?;
    Ok(EXIT_OK)
}

pub fn recover(b: f64, c: f64, out: Option<&Path>) -> Outcome {
    let r = recover_integers(b, c)?;
    emit_json(&r, out)?;
    Ok(EXIT_OK)
}
