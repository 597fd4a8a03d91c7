//! Lefschetz operators and the symplectic star of a nondegenerate 2-form.
//!
//! The dual bivector is `Π = -Ω⁻¹` where `Ω_ij = ω(e_i, e_j)`, and
//! `Λ = Σ_{i<j} Π^{ij} ι_{e_j} ι_{e_i}`. With this sign `[L, Λ] = (k - m)`
//! on `Λ^k`, which the tests lock in.

use crate::error::{Error, Result};
use crate::exterior::{ExteriorAlgebra, FormVector, GradedOperator};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// `Ω_ij = ω(e_i, e_j)` for a 2-form.
pub fn skew_matrix<S: Scalar>(ext: &ExteriorAlgebra, omega: &FormVector<S>) -> Matrix<S> {
    assert_eq!(omega.degree, 2, "expected a 2-form");
    let r = ext.rank();
    let mut m = Matrix::zeros(r, r);
    for (c, idx) in omega.coeffs.iter().zip(ext.basis(2)) {
        let ij = idx.indices();
        m[(ij[0], ij[1])] = c.clone();
        m[(ij[1], ij[0])] = -c.clone();
    }
    m
}

/// 2-form with `ω(e_i, e_j) = m[i][j]` for `i < j`.
pub fn two_form_from_skew<S: Scalar>(ext: &ExteriorAlgebra, m: &Matrix<S>) -> FormVector<S> {
    let coeffs = ext
        .basis(2)
        .iter()
        .map(|idx| {
            let ij = idx.indices();
            m[(ij[0], ij[1])].clone()
        })
        .collect();
    FormVector::new(2, coeffs)
}

/// `Π = -Ω⁻¹`, entries `Π^{ij} = Π(e^i, e^j)`.
pub fn dual_bivector<S: Scalar>(ext: &ExteriorAlgebra, omega: &FormVector<S>) -> Result<Matrix<S>> {
    skew_matrix(ext, omega)
        .inverse()
        .map(|inv| inv.neg())
        .ok_or_else(|| Error::Degenerate("2-form is not nondegenerate".into()))
}

pub fn half_rank(ext: &ExteriorAlgebra) -> Result<usize> {
    if !ext.rank().is_multiple_of(2) {
        return Err(Error::Model(format!(
            "fiber rank {} is odd; a symplectic fiber has even rank",
            ext.rank()
        )));
    }
    Ok(ext.rank() / 2)
}

/// `ω^m / m!`, the reference volume form.
pub fn volume_form<S: Scalar>(ext: &ExteriorAlgebra, omega: &FormVector<S>) -> Result<FormVector<S>> {
    let m = half_rank(ext)?;
    let factorial = (1..=m as i64).fold(S::one(), |acc, i| acc * S::from_i64(i));
    Ok(ext.wedge_power(omega, m).scale(&(S::one() / factorial)))
}

/// Top coefficient of `ω^m / m!`; zero exactly when `ω` is degenerate.
pub fn volume_coefficient<S: Scalar>(ext: &ExteriorAlgebra, omega: &FormVector<S>) -> Result<S> {
    Ok(ext.top_coefficient(&volume_form(ext, omega)?))
}

/// The sl2 triple `(L, Λ, H)` of a symplectic form.
#[derive(Debug, Clone)]
pub struct LefschetzTriple<S: Scalar> {
    pub l: GradedOperator<S>,
    pub lambda: GradedOperator<S>,
    pub h: GradedOperator<S>,
}

pub fn lefschetz_triple<S: Scalar>(ext: &ExteriorAlgebra, omega: &FormVector<S>) -> Result<LefschetzTriple<S>> {
    let m = half_rank(ext)?;
    let pi = dual_bivector(ext, omega)?;
    let l = ext.wedge_operator(omega);
    let r = ext.rank();
    let mut lambda = GradedOperator::zero(ext.dims(), -2);
    let contractions: Vec<GradedOperator<S>> = (0..r).map(|i| ext.contraction(i)).collect();
    for i in 0..r {
        for j in i + 1..r {
            if pi[(i, j)].is_zero() {
                continue;
            }
            let term = contractions[j].compose(&contractions[i]).scale(&pi[(i, j)]);
            lambda = lambda.add(&term);
        }
    }
    let h = GradedOperator::diagonal(ext.dims(), |k| S::from_i64(k as i64 - m as i64));
    Ok(LefschetzTriple { l, lambda, h })
}

/// Gram matrices of the pairing `Π(α, β) = det Π(ξ_a, ζ_b)` on `Λ^k`.
pub fn bivector_pairing<S: Scalar>(ext: &ExteriorAlgebra, pi: &Matrix<S>, k: usize) -> Matrix<S> {
    ext.minor_matrix(pi, k)
}

/// `⋆_ω` characterized by `α ∧ ⋆_ω β = Π(α, β) ω^m/m!`.
pub fn symplectic_star<S: Scalar>(ext: &ExteriorAlgebra, omega: &FormVector<S>) -> Result<StarOperator<S>> {
    let pi = dual_bivector(ext, omega)?;
    let v = volume_coefficient(ext, omega)?;
    Ok(StarOperator::from_blocks(ext, |k| {
        let pairing = bivector_pairing(ext, &pi, k);
        solve_star(ext, k, &pairing, |x| x.clone() * v.clone())
    }))
}

/// Matrix `S: Λ^k → Λ^{r-k}` with `(S β)_{I^c} = sign(I) · f(P[I, ·] β)`,
/// i.e. the solution of `e^I ∧ S β = (P β)_I · vol` when `f` multiplies by
/// the volume coefficient.
pub(crate) fn solve_star<S: Scalar>(
    ext: &ExteriorAlgebra,
    k: usize,
    pairing: &Matrix<S>,
    f: impl Fn(&S) -> S,
) -> Matrix<S> {
    let r = ext.rank();
    let mut m = Matrix::zeros(ext.dim(r - k), ext.dim(k));
    for (i, &idx) in ext.basis(k).iter().enumerate() {
        let row = ext.position(ext.complement(idx));
        let sign = S::from_i64(ext.complement_sign(idx));
        for j in 0..ext.dim(k) {
            let p = &pairing[(i, j)];
            if !p.is_zero() {
                m[(row, j)] = sign.clone() * f(p);
            }
        }
    }
    m
}

/// An operator `Λ^k → Λ^{r-k}` for every `k`.
#[derive(Clone, PartialEq)]
pub struct StarOperator<S> {
    rank: usize,
    blocks: Vec<Matrix<S>>,
}

impl<S: Scalar> StarOperator<S> {
    pub fn from_blocks(ext: &ExteriorAlgebra, f: impl FnMut(usize) -> Matrix<S>) -> Self {
        Self {
            rank: ext.rank(),
            blocks: (0..=ext.rank()).map(f).collect(),
        }
    }

    /// Block on `Λ^k`, landing in `Λ^{r-k}`.
    pub fn block(&self, k: usize) -> &Matrix<S> {
        &self.blocks[k]
    }

    /// `⋆ ∘ ⋆`, block `k` maps `Λ^k → Λ^k`.
    pub fn squared(&self) -> GradedOperator<S> {
        let dims: Vec<usize> = self.blocks.iter().map(Matrix::cols).collect();
        GradedOperator::from_fn(dims, 0, |k| self.blocks[self.rank - k].mul(&self.blocks[k]))
    }

    /// `⋆ ∘ A ∘ ⋆` for a graded operator `A` of shift `s`; the result has
    /// shift `-s`.
    pub fn conjugate(&self, a: &GradedOperator<S>) -> GradedOperator<S> {
        let dims: Vec<usize> = self.blocks.iter().map(Matrix::cols).collect();
        let s = a.shift();
        let r = self.rank as isize;
        GradedOperator::from_fn(dims.clone(), -s, |k| {
            let mid = r - k as isize;
            let after = mid + s;
            let target = k as isize - s;
            if after < 0 || after > r || target < 0 || target > r {
                return Matrix::zeros(GradedOperator::<S>::target_dim(&dims, k, -s), dims[k]);
            }
            let first = &self.blocks[k];
            let middle = a.block(mid as usize);
            let last = &self.blocks[after as usize];
            last.mul(&middle.mul(first))
        })
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> StarOperator<T> {
        StarOperator {
            rank: self.rank,
            blocks: self.blocks.iter().map(|b| b.map(&f)).collect(),
        }
    }
}

impl<S: Scalar> std::fmt::Debug for StarOperator<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("StarOperator")
            .field("rank", &self.rank)
            .field("blocks", &self.blocks)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{integer, rational, Rational};

    fn skewed_omega(ext: &ExteriorAlgebra) -> FormVector<Rational> {
        ext.form_from_terms(
            2,
            &[
                (&[0, 1], integer(2)),
                (&[2, 3], rational(1, 3)),
                (&[0, 2], integer(1)),
                (&[1, 3], integer(-1)),
            ],
        )
    }

    #[test]
    fn sl2_relations_hold() {
        let ext = ExteriorAlgebra::new(4);
        let t = lefschetz_triple(&ext, &skewed_omega(&ext)).unwrap();
        assert_eq!(t.l.commutator(&t.lambda), t.h);
        assert_eq!(t.h.commutator(&t.l), t.l.scale(&integer(2)));
        assert_eq!(t.h.commutator(&t.lambda), t.lambda.scale(&integer(-2)));
    }

    #[test]
    fn lambda_of_area_form_is_reciprocal() {
        let ext = ExteriorAlgebra::new(2);
        let omega = ext.form_from_terms(2, &[(&[0, 1], integer(5))]);
        let t = lefschetz_triple(&ext, &omega).unwrap();
        assert_eq!(t.lambda.block(2).to_rows(), vec![vec![rational(1, 5)]]);
    }

    #[test]
    fn symplectic_star_solves_its_defining_equation() {
        let ext = ExteriorAlgebra::new(4);
        let omega = skewed_omega(&ext);
        let pi = dual_bivector(&ext, &omega).unwrap();
        let v = volume_coefficient(&ext, &omega).unwrap();
        let star = symplectic_star(&ext, &omega).unwrap();
        for k in 0..=4 {
            let pairing = bivector_pairing(&ext, &pi, k);
            for (a, &ia) in ext.basis(k).iter().enumerate() {
                for (b, &ib) in ext.basis(k).iter().enumerate() {
                    let alpha = ext.basis_form::<Rational>(ia);
                    let beta = ext.basis_form::<Rational>(ib);
                    let sb = FormVector::new(4 - k, star.block(k).apply(&beta.coeffs));
                    let lhs = ext.top_coefficient(&ext.wedge(&alpha, &sb));
                    assert_eq!(lhs, pairing[(a, b)].clone() * v.clone());
                }
            }
        }
        assert_eq!(star.squared(), GradedOperator::identity(ext.dims()));
    }

    #[test]
    fn degenerate_and_odd_rank_are_errors() {
        let ext = ExteriorAlgebra::new(4);
        let omega = ext.form_from_terms(2, &[(&[0, 1], integer(1))]);
        assert!(matches!(dual_bivector(&ext, &omega), Err(Error::Degenerate(_))));
        let ext3 = ExteriorAlgebra::new(3);
        let omega3 = ext3.form_from_terms(2, &[(&[0, 1], integer(1))]);
        assert!(matches!(lefschetz_triple(&ext3, &omega3), Err(Error::Model(_))));
    }
}
