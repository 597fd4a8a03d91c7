//! Hodge star of a fiber metric, extended complex-linearly.
//!
//! The hermitian product on `Λ^k` is `⟨α, β⟩ = Σ α_I H_k[I, J] conj(β_J)`
//! where `H_k` collects the `k × k` minors of the dual metric `G⁻¹`.
//! The star solves `α ∧ conj(⋆β) = ⟨α, β⟩ vol`.

use crate::error::{Error, Result};
use crate::exterior::symplectic::solve_star;
use crate::exterior::{ExteriorAlgebra, StarOperator};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Dual metric `G⁻¹` on covectors, after checking `G` is hermitian
/// positive definite.
pub fn dual_metric<S: Scalar>(g: &Matrix<S>) -> Result<Matrix<S>> {
    if !g.is_square() {
        return Err(Error::DimensionMismatch {
            expected: g.rows(),
            found: g.cols(),
        });
    }
    if !g.is_hermitian_positive_definite() {
        return Err(Error::Degenerate("metric is not positive definite".into()));
    }
    g.inverse()
        .ok_or_else(|| Error::Degenerate("metric is singular".into()))
}

/// Gram matrix of the induced hermitian product on `Λ^k`.
pub fn form_gram<S: Scalar>(ext: &ExteriorAlgebra, dual: &Matrix<S>, k: usize) -> Matrix<S> {
    ext.minor_matrix(dual, k)
}

/// Gram matrices for every degree.
pub fn form_grams<S: Scalar>(ext: &ExteriorAlgebra, dual: &Matrix<S>) -> Vec<Matrix<S>> {
    (0..=ext.rank()).map(|k| form_gram(ext, dual, k)).collect()
}

/// `⋆_h` relative to the volume form `vol · e^{1..r}`.
pub fn hodge_star<S: Scalar>(ext: &ExteriorAlgebra, g: &Matrix<S>, vol: &S) -> Result<StarOperator<S>> {
    let dual = dual_metric(g)?;
    let v = vol.conj();
    Ok(StarOperator::from_blocks(ext, |k| {
        let gram = form_gram(ext, &dual, k);
        solve_star(ext, k, &gram, |x| x.conj() * v.clone())
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{integer, GaussianRational};
    use num_traits::One;

    #[test]
    fn standard_plane_rotates_one_forms() {
        let ext = ExteriorAlgebra::new(2);
        let g: Matrix<GaussianRational> = Matrix::identity(2);
        let star = hodge_star(&ext, &g, &GaussianRational::one()).unwrap();
        // ⋆1 = e12, ⋆e1 = e2, ⋆e2 = -e1, ⋆e12 = 1
        assert_eq!(star.block(0).to_rows(), vec![vec![GaussianRational::one()]]);
        let one = GaussianRational::one();
        let zero = GaussianRational::from(integer(0));
        assert_eq!(star.block(1).to_rows(), vec![vec![zero.clone(), -one.clone()], vec![one.clone(), zero]]);
        assert_eq!(star.block(2).to_rows(), vec![vec![one]]);
    }

    #[test]
    fn indefinite_metric_rejected() {
        let g = Matrix::from_i64_rows(&[&[1, 0], &[0, -1]]);
        assert!(dual_metric::<crate::Rational>(&g).is_err());
    }
}
