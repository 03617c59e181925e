//! Numerical engine for the Prytz ("hatchet") planimeter.
//!
//! The planimeter is a rod of length `ell` with a tracer point at one end and a
//! chisel edge at the other. The chisel can only move along the rod, which makes
//! the instrument a non-holonomic system: tracing a closed loop leaves the rod
//! rotated, and that rotation is an element of SU(1,1) acting on the circle of
//! rod directions.
//!
//! Modules:
//! - [`geom2d`]: points, sampled paths and polygon moments.
//! - [`su11`]: the group SU(1,1), its Lie algebra and the Möbius action.
//! - [`dynamics`]: RK4 integration of the constraint along a tracer path.
//! - [`holonomy`]: the su(1,1)-valued connection, transports and loop holonomy.
//! - [`menzin`]: closed-form parallelogram holonomy and attractor checks.
//! - [`estimator`]: the Prytz–Hill moment series and error-order studies.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod dynamics;
pub mod error;
pub mod estimator;
pub mod geom2d;
pub mod holonomy;
pub mod menzin;
pub mod su11;

mod quad;

pub use error::{Error, Result};
pub use geom2d::{PlanarPath, Point2, RegionMoments};
pub use su11::{HolonomyClass, HolonomyKind, Su11, Su11Algebra};

/// Complex scalar used throughout the crate.
pub type Complex = num_complex::Complex64;
