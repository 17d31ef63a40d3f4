//! Validated numerics for certifying solutions of polynomial systems.
//!
//! The crate provides rigorous interval arithmetic over two scalar backends
//! (hardware `f64` with outward rounding, and an arbitrary-precision binary
//! float with a configurable mantissa width), complex rectangular intervals,
//! interval linear algebra with dual-interval (Kaucher) cancellation, and
//! alpha-theory certification of polynomial system solutions over boxes.
//!
//! Everything here is `no_std` + `alloc`; IO, file formats, and the CLI live
//! in the companion `alphabox` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod alphacert;
pub mod complex;
pub mod error;
pub mod interval;
pub mod linalg;
pub mod mp;
pub mod polysys;
pub mod scalar;

pub use complex::ComplexInterval;
pub use error::Error;
pub use interval::{PrecisionContext, RealInterval};
pub use mp::MpFloat;
pub use scalar::{Dir, Endpoint};
