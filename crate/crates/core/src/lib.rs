pub mod algebroid;
pub mod cohomology;
pub mod constructions;
pub mod error;
pub mod exterior;
pub mod lefschetz;
pub mod linalg;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{GaussianRational, Rational, Scalar};
