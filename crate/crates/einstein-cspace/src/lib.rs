//! Invariant Einstein metrics on the torus bundles
//! `SU(l+m+n)/SU(l)xSU(m)xSU(n)` over flag manifolds.
//!
//! The crate assembles the homogeneous Einstein equation from closed-form
//! structure constants, finds all solutions of the reduced two-variable
//! system (homotopy continuation, multistart Newton and closed-form
//! polynomial branches), groups them into isometry classes, certifies
//! existence through Brouwer mapping degrees, and classifies the ambient
//! family of homogeneous complex spaces. See the `examples/` directory for
//! one runnable entry point per capability, and the `einstein-cspace` binary
//! for the command-line interface.

pub mod classify;
mod dd;
pub mod cli;
pub mod error;
pub mod flag;
pub mod isometry;
mod newton;
pub mod num;
pub mod reference;
pub mod ricci;
pub mod solver;
pub mod space;

pub use error::{Error, Result};
pub use num::{Dd, Precision, Real};
pub use ricci::{einstein_residual, ricci, EinsteinResidual, RicciComponents};
pub use solver::{solve, EinsteinSolution, Method, MethodChoice, SolveOptions, SolveReport};
pub use space::{InvariantMetric, SpaceParams};
