//! Geometric algebra over arbitrary, possibly degenerate, metrics.
//!
//! The crate hosts three conformal models built on one generic kernel:
//!
//! * [`cga5`]: the five-dimensional conformal model of Euclidean 3-space.
//! * [`cga7`]: a seven-dimensional conformal model of Minkowski spacetime with
//!   separate timelike and spacelike infinities, whose lightlike infinity spans
//!   the radical of the metric, and its effective six-dimensional reduction.
//! * [`dynamics`]: versor kinematics of charged particles in constant fields.

pub mod algebra;
pub mod cga5;
pub mod cga7;
pub mod dynamics;
pub mod error;
pub mod multivector;
pub mod serial;

pub use algebra::{signature_of, Algebra, Blade, Signature};
pub use error::{Error, Result};
pub use multivector::{apply_versor, exp_bivector, meet, Multivector};
