//! Differential geometry of surfaces in isotropic 3-space.

pub mod calculus;
pub mod cli;
pub mod curves;
pub mod error;
pub mod families;
pub mod isotropic;
pub mod numdiff;
pub mod verify;

pub use error::{GeometryError, Result};
