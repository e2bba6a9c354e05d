//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::f64::consts::PI;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use crsphere_core::fubini_study::cr_data;
use crsphere_core::immersion_families::{
    berger_params, constant_curvature_case, family_lift, harmonic_sequence, minimal_t, phi1_lift, recover_integers,
    FamilyParams,
};
use crsphere_core::intrinsic_geometry::{curvature, MetricKind};
use crsphere_core::sampling::sample_points;
use crsphere_core::su2_frames::{invariants, rotate_frame, structure_matrix, FrameMatrix, StructureMatrix};
use crsphere_core::surface_algebra::{hermitian_pair, Derivation, PolyVector};
use crsphere_core::verify::{verify, MinimalCase, VerificationReport, VerifyOptions};
use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use support::{fd_sectional, Su2Chart};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Check {
    ensure(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crsphere")).args(args).output().expect("binary runs")
}

fn cli_json(args: &[&str]) -> Result<(i32, Value), String> {
    let out = cli(args);
    let code = out.status.code().unwrap_or(-1);
    let v = serde_json::from_slice(&out.stdout)
        .map_err(|e| format!("{args:?}: bad JSON ({e}); stderr: {}", String::from_utf8_lossy(&out.stderr)))?;
    Ok((code, v))
}

fn build_and_verify(build: &[&str], samples: usize) -> Result<(i32, Value), String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("lift.json");
    let path = path.to_str().unwrap();
    let mut args = vec!["build"];
    args.extend_from_slice(build);
    args.extend_from_slice(&["--out", path]);
    let out = cli(&args);
    ensure(out.status.success(), || format!("build {build:?} failed: {}", String::from_utf8_lossy(&out.stderr)))?;
    cli_json(&["verify", path, "--samples", &samples.to_string()])
}

fn max_coefficient(v: &PolyVector) -> f64 {
    v.max_abs_coefficient()
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let c = |x: f64| Complex64::new(x, 0.0);
    for k in 0..=6u32 {
        let f: Vec<PolyVector> = (0..=k).map(|a| harmonic_sequence(k, a).unwrap()).collect();
        for a in 0..=k {
            let af = f64::from(a);
            let kf = f64::from(k);
            let zf = f[a as usize].derive(Derivation::Z);
            let up =
                if a < k { zf.sub(&f[a as usize + 1].scale(c(((af + 1.0) * (kf - af)).sqrt()))).unwrap() } else { zf };
            let zbf = f[a as usize].derive(Derivation::Zbar);
            let down =
                if a > 0 { zbf.add(&f[a as usize - 1].scale(c((af * (kf + 1.0 - af)).sqrt()))).unwrap() } else { zbf };
            let x1 = f[a as usize]
                .derive(Derivation::X1)
                .sub(&f[a as usize].scale(Complex64::new(0.0, kf - 2.0 * af)))
                .unwrap();
            for (name, r) in [("Z", &up), ("Zbar", &down), ("X1", &x1)] {
                let m = max_coefficient(r);
                ensure(m < 1e-12, || format!("{name} recursion residual {m:e} at k = {k}, alpha = {a}"))?;
            }
        }
        for l in 0..k {
            let h: Vec<PolyVector> = (0..=l).map(|a| harmonic_sequence(l, a).unwrap()).collect();
            let zero_h = h[0].scale(c(0.0));
            let zero_f = f[0].scale(c(0.0));
            let frame: Vec<PolyVector> =
                f.iter().map(|v| v.direct_sum(&zero_h)).chain(h.iter().map(|v| zero_f.direct_sum(v))).collect();
            for (i, u) in frame.iter().enumerate() {
                for (j, v) in frame.iter().enumerate().skip(i) {
                    let d = hermitian_pair(u, v).unwrap().distance_to_constant(c(if i == j { 1.0 } else { 0.0 }));
                    ensure(d < 1e-12, || format!("unitarity defect {d:e} for ({k}, {l}), pair ({i}, {j})"))?;
                }
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(5))
}

fn random_frame(rng: &mut ChaCha8Rng) -> FrameMatrix {
    loop {
        let m: Matrix3<f64> = Matrix3::from_fn(|i, j| rng.random_range(-0.6..0.6) + if i == j { 1.0 } else { 0.0 });
        if m.determinant().abs() > 0.2 {
            return FrameMatrix::new(m).unwrap();
        }
    }
}

fn criterion_2() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for trial in 0..5 {
        let frame = random_frame(&mut rng);
        let r = curvature(&structure_matrix(&frame));
        let chart = Su2Chart { gram: frame.gram() };
        let d = frame.dual_vectors();
        let u = Vector3::from_fn(|_, _| rng.random_range(-1.0..1.0));
        let v = Vector3::from_fn(|_, _| rng.random_range(-1.0..1.0));
        let planes = [(Vector3::x(), Vector3::y()), (Vector3::x(), Vector3::z()), (Vector3::y(), Vector3::z()), (u, v)];
        for (p, q) in planes {
            let fd =
                fd_sectional(&chart, &[0.0; 3], (d.transpose() * p).as_slice(), (d.transpose() * q).as_slice(), 1e-3);
            let exact = r.sectional_of_plane(&p, &q);
            ensure((fd - exact).abs() < 1e-4, || {
                format!("metric {trial}: finite differences {fd} vs closed form {exact}")
            })?;
        }
    }
    for _ in 0..20 {
        let b = rng.random_range(0.1..2.0);
        let c = rng.random_range(0.1..3.0);
        let k = curvature(&structure_matrix(&FrameMatrix::berger(b, c).unwrap())).sectional_diagonal();
        let expect = [b * b * c, b * b * c, (4.0 - 3.0 * b * b) * c];
        for i in 0..3 {
            ensure((k[i] - expect[i]).abs() < 1e-12, || format!("Berger (b, c) = ({b}, {c}): {k:?} vs {expect:?}"))?;
        }
    }
    within(start.elapsed(), Duration::from_secs(10))
}

fn report(lift_params: Option<FamilyParams>, samples: usize) -> VerificationReport {
    let (lift, id) = match lift_params {
        None => (phi1_lift(), "phi1".to_owned()),
        Some(p) => (family_lift(&p).unwrap(), format!("({}, {}, {})", p.k, p.l, p.t)),
    };
    verify(&lift, &id, &VerifyOptions { samples, ..Default::default() }).unwrap()
}

fn criterion_3() -> Check {
    let phi1 = report(None, 50);
    ensure(phi1.cr.is_cr, || "phi1 not CR".into())?;
    ensure(phi1.minimality_residual < 1e-9, || format!("phi1 |H| = {:e}", phi1.minimality_residual))?;
    ensure(phi1.classification.kind == MetricKind::Generic, || format!("phi1 class {:?}", phi1.classification.kind))?;
    ensure(phi1.min_sff_norm > 0.0, || "phi1 has B = 0".into())?;
    ensure(phi1.w2_shape_norm < 1e-8, || format!("phi1 W2 shape {:e}", phi1.w2_shape_norm))?;
    ensure(phi1.minimal_case == Some(MinimalCase::Generic) && phi1.n == 2, || "phi1 case".into())?;
    for k in 1..=6 {
        let r = report(Some(FamilyParams::minimal(k, 0).unwrap()), 32);
        ensure(!matches!(r.classification.kind, MetricKind::Generic), || format!("({k}, 0) generic"))?;
        let x = r.xi0_parallel.ok_or(format!("({k}, 0) not CR"))?;
        ensure(x.norm < 1e-9, || format!("({k}, 0) |∇⊥ξ₀| = {:e}", x.norm))?;
        ensure(r.minimal_case == Some(MinimalCase::ParallelXi0), || format!("({k}, 0) case {:?}", r.minimal_case))?;
    }
    for (k, l) in [(2, 1), (4, 1)] {
        let r = report(Some(FamilyParams::minimal(k, l).unwrap()), 32);
        ensure(matches!(r.classification.kind, MetricKind::Berger { .. }), || format!("({k}, {l}) class"))?;
        let x = r.xi0_parallel.ok_or(format!("({k}, {l}) not CR"))?;
        ensure(x.norm > 1e-3, || format!("({k}, {l}) |∇⊥ξ₀| = {:e}", x.norm))?;
        ensure(r.n >= 3 && r.minimal_case == Some(MinimalCase::BergerNonParallel), || format!("({k}, {l}) case"))?;
    }
    Ok(())
}

fn criterion_4() -> Check {
    for k in 1..=10 {
        for l in 0..k {
            let m = minimal_t(k, l).unwrap();
            ensure((m.t - m.t_bisection).abs() < 1e-12, || format!("({k}, {l}): {} vs {}", m.t, m.t_bisection))?;
        }
    }
    for (k, l) in [(1, 0), (4, 0)] {
        let t = minimal_t(k, l).unwrap().t;
        ensure(t == PI / 6.0, || format!("({k}, {l}): t = {t:?}"))?;
    }
    let centre = PI / 6.0;
    let (lo, hi) = (format!("{}", centre - 0.45), format!("{}", centre + 0.45));
    let out = cli(&["sweep", "--k", "1", "--l", "0", "--t-min", &lo, "--t-max", &hi, "--steps", "25"]);
    ensure(out.status.success(), || String::from_utf8_lossy(&out.stderr).into_owned())?;
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let rows: Vec<(f64, f64)> = reader
        .records()
        .map(|r| {
            let r = r.unwrap();
            (r[0].parse().unwrap(), r[1].parse().unwrap())
        })
        .collect();
    ensure(rows.len() == 25, || format!("{} rows", rows.len()))?;
    let nearest =
        (0..rows.len()).min_by(|a, b| (rows[*a].0 - centre).abs().total_cmp(&(rows[*b].0 - centre).abs())).unwrap();
    for (i, (t, h)) in rows.iter().enumerate() {
        if i == nearest {
            ensure(*h < 1e-9, || format!("|H| = {h:e} at t = {t}"))?;
        } else {
            ensure(*h > 1e-4, || format!("|H| = {h:e} at t = {t}, away from the minimum"))?;
        }
    }
    Ok(())
}

fn constant_c(v: &Value) -> Option<f64> {
    (v["classification"]["class"] == "constant").then(|| v["classification"]["c"].as_f64()).flatten()
}

fn criterion_5() -> Check {
    let case = constant_curvature_case(4, 0).unwrap().ok_or("(4, 0) is not a constant-curvature case")?;
    ensure(case.m == 2 && case.n == 5 && case.n == 2 * case.m * case.m - 3, || format!("{case:?}"))?;
    let (code, v) = build_and_verify(&["--k", "4", "--l", "0", "--t", &format!("{}", PI / 6.0)], 32)?;
    ensure(code == 0, || format!("(4, 0) verify exit {code}"))?;
    let c = constant_c(&v).ok_or(format!("(4, 0) class {}", v["classification"]))?;
    ensure((c - 1.0 / 3.0).abs() < 1e-10 && v["n"] == 5, || format!("(4, 0): c = {c}, n = {}", v["n"]))?;

    let case = constant_curvature_case(18, 10).unwrap().ok_or("(18, 10) is not a constant-curvature case")?;
    ensure(case.m == 4 && case.n == 29, || format!("{case:?}"))?;
    let (code, v) = build_and_verify(&["--k", "18", "--l", "10", "--minimal"], 32)?;
    ensure(code == 0, || format!("(18, 10) verify exit {code}"))?;
    let c = constant_c(&v).ok_or(format!("(18, 10) class {}", v["classification"]))?;
    ensure((c - 1.0 / 15.0).abs() < 1e-10 && v["n"] == 29, || format!("(18, 10): c = {c}, n = {}", v["n"]))
}

fn criterion_6() -> Check {
    let lifts = [
        None,
        Some(FamilyParams::new(4, 0, PI / 6.0).unwrap()),
        Some(FamilyParams::minimal(3, 1).unwrap()),
        Some(FamilyParams::new(2, 1, 0.3).unwrap()),
    ];
    for p in lifts {
        let r = report(p, 16);
        ensure(r.gauss_residual_max < 1e-7, || format!("{}: Gauss residual {:e}", r.lift_id, r.gauss_residual_max))?;
    }
    let lift = family_lift(&FamilyParams::new(4, 0, PI / 6.0).unwrap()).unwrap();
    let cr = cr_data(&lift, &sample_points(16, 42)).map_err(|e| e.to_string())?;
    let k = curvature(&cr.structure).sectional_diagonal();
    ensure(k.iter().all(|x| (x - 1.0 / 3.0).abs() < 1e-9), || format!("(4, 0) sectional curvatures {k:?}"))
}

fn criterion_7() -> Check {
    for k in 1..=8 {
        for l in 0..k {
            let p = FamilyParams::minimal(k, l).unwrap();
            let bp = berger_params(&p);
            let r = recover_integers(bp.b, bp.c).unwrap();
            let ok = r.integer
                && (r.k - f64::from(k)).abs() < 1e-8
                && (r.l - f64::from(l)).abs() < 1e-8
                && (r.t - p.t).abs() < 1e-8;
            ensure(ok, || format!("({k}, {l}) recovered as {r:?}"))?;
        }
    }
    Ok(())
}

fn built_lifts() -> Vec<Option<FamilyParams>> {
    let mut v = vec![None];
    for (k, l) in [(1, 0), (2, 0), (4, 0), (2, 1), (3, 1), (4, 1), (5, 2)] {
        v.push(Some(FamilyParams::minimal(k, l).unwrap()));
    }
    v.push(Some(FamilyParams::new(2, 1, 0.4).unwrap()));
    v.push(Some(FamilyParams::new(3, 0, 1.2).unwrap()));
    v
}

fn criterion_8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut cs: Vec<StructureMatrix> = (0..4).map(|_| structure_matrix(&random_frame(&mut rng))).collect();
    cs.push(StructureMatrix::from_rows([-2.0, 0.0, 0.0, 0.0, -3.0, 1.0, 0.0, 1.0, -1.0]).unwrap());
    for c0 in cs {
        let key = |c: &StructureMatrix| {
            let i = invariants(c);
            [i.mu.norm(), i.tau.norm(), i.c231.abs(), i.a * i.a]
        };
        let base = key(&c0);
        let mut c = c0;
        for _ in 0..50 {
            let eps = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            c = rotate_frame(&c, rng.random_range(-PI..PI), eps);
            let now = key(&c);
            let drift = (0..4).map(|i| (now[i] - base[i]).abs()).fold(0.0, f64::max);
            ensure(drift < 1e-12, || format!("invariant drift {drift:e}"))?;
        }
    }
    for p in built_lifts() {
        let r = report(p, 32);
        ensure(r.equivariance_spread < 1e-8, || format!("{}: spread {:e}", r.lift_id, r.equivariance_spread))?;
    }
    Ok(())
}

fn criterion_9() -> Check {
    let (code, v) = build_and_verify(&["--k", "2", "--l", "1", "--t", "0.4"], 32)?;
    let h = v["minimality_residual"].as_f64().unwrap_or(0.0);
    ensure(code == 1 && h > 1e-3, || format!("(2, 1, 0.4): exit {code}, |H| = {h:e}"))?;
    for p in built_lifts() {
        let r = report(p, 32);
        ensure(r.min_sff_norm > 0.1, || format!("{}: min |B| = {}", r.lift_id, r.min_sff_norm))?;
    }
    let (code, v) = cli_json(&["recover", "--b", "0.7", "--c", "1.0"])?;
    ensure(code == 0 && v["integer"] == false, || format!("recover (0.7, 1.0): exit {code}, {v}"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("exact symbolic suite", criterion_1),
        ("curvature oracle", criterion_2),
        ("classification trichotomy", criterion_3),
        ("minimal parameter", criterion_4),
        ("constant-curvature family", criterion_5),
        ("Gauss equation cross-check", criterion_6),
        ("uniqueness round-trip", criterion_7),
        ("invariance suite", criterion_8),
        ("negative controls", criterion_9),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match run() {
            Ok(()) => println!("PASS criterion {} ({name}) [{:.2?}]", i + 1, t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {} ({name}) [{:.2?}]: {why}", i + 1, t.elapsed());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed in {:.2?}", criteria.len() - failed, start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
