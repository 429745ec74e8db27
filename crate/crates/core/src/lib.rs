//! Frenet frames, focal curves and slant helices for curves in `E^{m+1}`.
//!
//! The crate computes the Frenet apparatus of a curve of any dimension from
//! its derivatives, the focal curve (the locus of centres of osculating
//! hyperspheres) together with its focal curvatures, and detects `k`-slant
//! helices, i.e. curves whose `k`-th Frenet vector makes a constant angle with
//! a fixed direction. The focal curve of a `k`-slant helix is again a slant
//! helix with index `m − k + 2`; [`slant::verify_focal_slant`] checks this
//! numerically.

pub mod curve;
pub mod error;
pub mod focal;
pub mod frenet;
pub mod jet;
pub mod linalg;
pub mod quadrature;
pub mod slant;
pub mod stencil;

pub use curve::{Curve, CurveKind, CurveOracle};
pub use error::{GeomError, Result};
pub use linalg::VectorN;
