use crate::error::{Error, Result};
use crate::exterior::GradedOperator;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Adjoint of a graded operator for the hermitian products
/// `⟨x, y⟩_k = xᵀ G_k conj(y)`: the block on degree `t` is
/// `conj(G_{t-s})⁻¹ conj(A_{t-s})ᵀ conj(G_t)`.
pub fn gram_adjoint<S: Scalar>(a: &GradedOperator<S>, grams: &[Matrix<S>]) -> Result<GradedOperator<S>> {
    let dims = a.dims().to_vec();
    if grams.len() != dims.len() {
        return Err(Error::DimensionMismatch {
            expected: dims.len(),
            found: grams.len(),
        });
    }
    let inverses: Vec<Matrix<S>> = grams
        .iter()
        .map(|g| {
            g.conj()
                .inverse()
                .ok_or_else(|| Error::Degenerate("Gram matrix is singular".into()))
        })
        .collect::<Result<_>>()?;
    let s = a.shift();
    let d = dims.clone();
    Ok(GradedOperator::from_fn(dims, -s, |t| {
        let src = t as isize - s;
        if src < 0 || src as usize >= d.len() {
            return Matrix::zeros(GradedOperator::<S>::target_dim(&d, t, -s), d[t]);
        }
        let src = src as usize;
        inverses[src]
            .mul(&a.block(src).conj().transpose())
            .mul(&grams[t].conj())
    }))
}

/// `⟨x, y⟩ = xᵀ G conj(y)`.
pub fn hermitian_product<S: Scalar>(gram: &Matrix<S>, x: &[S], y: &[S]) -> S {
    let gy = gram.apply(&y.iter().map(Scalar::conj).collect::<Vec<_>>());
    x.iter()
        .zip(gy)
        .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{integer, Rational};

    #[test]
    fn adjoint_satisfies_defining_relation() {
        let dims = vec![2, 3];
        let a = GradedOperator::from_fn(dims.clone(), 1, |k| {
            if k == 0 {
                Matrix::from_i64_rows(&[&[1, 2], &[0, -1], &[3, 1]])
            } else {
                Matrix::zeros(0, 3)
            }
        });
        let grams = vec![
            Matrix::from_i64_rows(&[&[2, 1], &[1, 2]]),
            Matrix::from_i64_rows(&[&[1, 0, 0], &[0, 3, 1], &[0, 1, 1]]),
        ];
        let b = gram_adjoint::<Rational>(&a, &grams).unwrap();
        for x in [[1, 0], [0, 1], [2, -1]] {
            for y in [[1, 0, 0], [0, 1, 0], [1, 1, -2]] {
                let x: Vec<Rational> = x.iter().map(|&v| integer(v)).collect();
                let y: Vec<Rational> = y.iter().map(|&v| integer(v)).collect();
                let lhs = hermitian_product(&grams[1], &a.apply(0, &x), &y);
                let rhs = hermitian_product(&grams[0], &x, &b.apply(1, &y));
                assert_eq!(lhs, rhs);
            }
        }
    }
}
