//! Validated numerics for the anti-holomorphic quadratic family
//! `f_c(z) = conj(z)² + c`: interval kernels, orbit certification,
//! argument-principle counting, parameter-space scans and rendering.

pub mod combinatorics;
pub mod dynamics;
pub mod interval;
pub mod krawczyk;
pub mod render;
pub mod scan;
pub mod verify;

pub use interval::{ComplexBox, Interval};

/// Version string echoed into certificate headers.
pub const TOOL_VERSION: &str = concat!("tricorn ", env!("CARGO_PKG_VERSION"));
