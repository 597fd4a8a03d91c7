//! Exact linear algebra: ranks, kernels, subspace arithmetic and maps
//! induced on subquotients.

mod matrix;
mod subspace;

pub use matrix::{bareiss_rank, Matrix};
pub use subspace::{
    induced_map_between, induced_map_on_quotient, normalize_leading, subspace_ops, Quotient, Subspace,
};
