//! Equivariant CR immersions S^3 → CP^n: exact polynomial lifts, left-invariant
//! geometry of SU(2), and numeric verification in the Fubini–Study metric.

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod fubini_study;
pub mod immersion_families;
pub mod intrinsic_geometry;
pub mod sampling;
pub mod su2_frames;
pub mod surface_algebra;
pub mod tolerance;
pub mod verify;

pub use error::{Error, Result};
