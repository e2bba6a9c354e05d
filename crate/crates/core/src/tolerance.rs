//! Numerical thresholds shared by every module.
//!
//! Symbolic work (polynomial reduction and derivation) is exact up to the
//! coefficient drop threshold; everything else is point evaluation in f64.

/// Coefficients smaller than this are dropped after every polynomial operation.
pub const COEFF_DROP: f64 = 1e-14;

/// Allowed defect of |z|^2 + |w|^2 - 1 for a point handed to `eval`.
pub const ON_SPHERE: f64 = 1e-12;

/// Symmetry defect and |det| floor for structure and frame matrices.
pub const MATRIX_INVARIANT: f64 = 1e-10;

/// Relative eigenvalue equality used by the round / Berger / generic split.
pub const EIGEN_RELATIVE: f64 = 1e-8;

/// Maximum coefficient defect of <e0, e0> - 1 for a unit lift, relative to
/// the largest intermediate term of the reduction.
pub const UNIT_LIFT: f64 = 1e-10;

/// Horizontality of a tangent representative against the lift.
pub const HORIZONTAL: f64 = 1e-10;

/// Rank threshold on the Gram eigenvalues of the tangent map.
pub const RANK: f64 = 1e-9;

/// Maximum spread of the induced metric and Kähler data across samples.
pub const EQUIVARIANCE: f64 = 1e-9;

/// |J23 - 1| below this means CR type.
pub const CR_TYPE: f64 = 1e-8;

/// Below this |J| the pullback of the Kähler form counts as zero.
pub const TOTALLY_REAL: f64 = 1e-9;

/// Default pass/fail threshold for the verification driver.
pub const VERIFY_DEFAULT: f64 = 1e-8;

/// Lower bound on the norm of the second fundamental form of a built lift.
pub const NOT_TOTALLY_GEODESIC: f64 = 0.1;

/// Distance to the nearest integer accepted by the eigenvalue recovery.
pub const INTEGER_RECOVERY: f64 = 1e-8;

/// Bisection stopping width for the minimal-parameter cross-check.
pub const BISECTION: f64 = 1e-14;

/// Iteration cap for the bisection.
pub const BISECTION_MAX_ITER: usize = 200;

/// Threshold for the intrinsic / extrinsic curvature comparison.
pub const GAUSS: f64 = 1e-7;
