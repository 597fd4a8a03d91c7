//! Type decomposition of complex forms under a fiber complex structure.
//!
//! `J` acts on covectors by its transpose. `P = (1 - i Jᵀ)/2` projects onto
//! the `(1,0)` covectors, its derivation extension `N` counts holomorphic
//! degree, and the `(p, q)` projector on `Λ^k` is a Lagrange polynomial in
//! `N`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exterior::{ExteriorAlgebra, GradedOperator};
use crate::linalg::Matrix;
use crate::scalar::{complexify, imag_unit, GaussianRational, Rational};

#[derive(Debug, Clone)]
pub struct Bigrading {
    m: usize,
    /// `projectors[k][p]`, zero when `(p, k-p)` is out of range.
    projectors: Vec<Vec<Matrix<GaussianRational>>>,
    form_action: GradedOperator<GaussianRational>,
}

impl Bigrading {
    pub fn new(ext: &ExteriorAlgebra, j: &Matrix<Rational>) -> Result<Self> {
        let r = ext.rank();
        if j.rows() != r || j.cols() != r {
            return Err(Error::DimensionMismatch {
                expected: r,
                found: j.rows(),
            });
        }
        let minus_id = Matrix::<Rational>::identity(r).neg();
        if j.mul(j) != minus_id {
            return Err(Error::Model("J does not square to -1".into()));
        }
        let m = r / 2;
        let jt = j.transpose().complexify();
        let half = complexify(&crate::scalar::rational(1, 2));
        let p10 = Matrix::identity(r)
            .sub(&jt.scale(&imag_unit()))
            .scale(&half);
        let n = ext.derivation_extension(&p10);
        let projectors = (0..=r)
            .map(|k| {
                let lo = k.saturating_sub(m);
                let hi = k.min(m);
                (0..=m)
                    .map(|p| {
                        let d = ext.dim(k);
                        if p < lo || p > hi {
                            return Matrix::zeros(d, d);
                        }
                        let mut acc = Matrix::identity(d);
                        for other in lo..=hi {
                            if other == p {
                                continue;
                            }
                            let shifted = n
                                .block(k)
                                .sub(&Matrix::identity(d).scale(&GaussianRational::from(crate::scalar::integer(other as i64))));
                            let denom = GaussianRational::one()
                                / GaussianRational::from(crate::scalar::integer(p as i64 - other as i64));
                            acc = acc.mul(&shifted).scale(&denom);
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        let form_action = ext.multiplicative_extension(&jt);
        Ok(Self {
            m,
            projectors,
            form_action,
        })
    }

    pub fn half_rank(&self) -> usize {
        self.m
    }

    /// Projector onto `Λ^{p,q}` inside `Λ^{p+q}`; `None` off the diamond.
    pub fn projector(&self, p: usize, q: usize) -> Option<&Matrix<GaussianRational>> {
        if p > self.m || q > self.m {
            return None;
        }
        Some(&self.projectors[p + q][p])
    }

    /// `π^{p,q}` as a block-diagonal graded operator.
    pub fn graded_projector(&self, p: usize, q: usize) -> GradedOperator<GaussianRational> {
        let dims: Vec<usize> = self.projectors.iter().map(|v| v[0].rows()).collect();
        let d = dims.clone();
        GradedOperator::from_fn(dims, 0, |k| {
            if k == p + q && p <= self.m && q <= self.m {
                self.projectors[k][p].clone()
            } else {
                Matrix::zeros(d[k], d[k])
            }
        })
    }

    pub fn type_dim(&self, p: usize, q: usize) -> usize {
        self.projector(p, q).map_or(0, Matrix::rank)
    }

    /// Action of `J` on forms; `i^{p-q}` on `Λ^{p,q}`.
    pub fn form_action(&self) -> &GradedOperator<GaussianRational> {
        &self.form_action
    }

    /// Bidegree of a nonzero form, when it is pure.
    pub fn pure_type(&self, degree: usize, v: &[GaussianRational]) -> Option<(usize, usize)> {
        if v.iter().all(Zero::is_zero) {
            return None;
        }
        (0..=self.m).find_map(|p| {
            let q = degree.checked_sub(p)?;
            let proj = self.projector(p, q)?;
            (proj.apply(v) == v).then_some((p, q))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn standard(r: usize) -> Matrix<Rational> {
        let mut j = Matrix::zeros(r, r);
        for a in 0..r / 2 {
            j[(2 * a + 1, 2 * a)] = crate::scalar::integer(1);
            j[(2 * a, 2 * a + 1)] = crate::scalar::integer(-1);
        }
        j
    }

    #[test]
    fn projectors_are_complete_idempotent_and_orthogonal() {
        let ext = ExteriorAlgebra::new(4);
        let b = Bigrading::new(&ext, &standard(4)).unwrap();
        for k in 0..=4 {
            let d = ext.dim(k);
            let mut sum = Matrix::zeros(d, d);
            for p in 0..=2 {
                let Some(q) = k.checked_sub(p) else { continue };
                let Some(pr) = b.projector(p, q) else { continue };
                assert_eq!(pr.mul(pr), *pr);
                sum = sum.add(pr);
                for p2 in 0..=2 {
                    if p2 == p {
                        continue;
                    }
                    if let Some(pr2) = k.checked_sub(p2).and_then(|q2| b.projector(p2, q2)) {
                        assert!(pr.mul(pr2).is_zero());
                    }
                }
            }
            assert_eq!(sum, Matrix::identity(d));
        }
        assert_eq!(b.type_dim(1, 1), 4);
        assert_eq!(b.type_dim(2, 0), 1);
    }

    #[test]
    fn holomorphic_covector_has_type_one_zero() {
        let ext = ExteriorAlgebra::new(2);
        let b = Bigrading::new(&ext, &standard(2)).unwrap();
        let v = vec![GaussianRational::one(), imag_unit()];
        assert_eq!(b.pure_type(1, &v), Some((1, 0)));
        let w = vec![GaussianRational::one(), -imag_unit()];
        assert_eq!(b.pure_type(1, &w), Some((0, 1)));
        // J acts by i on (1,0)
        assert_eq!(b.form_action().apply(1, &v), v.iter().map(|x| x * imag_unit()).collect::<Vec<_>>());
    }

    #[test]
    fn non_complex_structure_rejected() {
        let ext = ExteriorAlgebra::new(2);
        assert!(Bigrading::new(&ext, &Matrix::identity(2)).is_err());
    }
}
