//! Seeded sample points on S^3.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::surface_algebra::SpherePoint;

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_COUNT: usize = 32;

/// Normalized 4-vectors of independent standard normals: uniform on S^3.
pub fn sample_points(count: usize, seed: u64) -> Vec<SpherePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let x: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(&mut rng));
        let r2: f64 = x.iter().map(|v| v * v).sum();
        if r2 < 1e-12 {
            continue;
        }
        out.push(SpherePoint::normalized(Complex64::new(x[0], x[1]), Complex64::new(x[2], x[3])));
    }
    out
}
