pub mod bounds;
pub mod cli;
pub mod coefficients;
pub mod error;
pub mod estimators;
pub mod experiment;
pub mod kernels;
pub mod measures;
pub mod quadrature;
pub mod rng;
pub mod verify;

pub use error::{Error, Result};
