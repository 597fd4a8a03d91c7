//! Exterior algebra of a rank-`r` fiber and the operators built on it.

mod algebra;
pub mod bigrading;
mod form;
mod graded;
pub mod hodge;
pub mod symplectic;

pub use algebra::{wedge_sign, ExteriorAlgebra, MultiIndex};
pub use bigrading::Bigrading;
pub use form::FormVector;
pub use graded::{GradedOperator, Residual};
pub use symplectic::{LefschetzTriple, StarOperator};
