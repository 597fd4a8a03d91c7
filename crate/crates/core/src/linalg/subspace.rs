use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// A linear subspace of `S^n`, stored as a list of independent columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<S> {
    ambient_dim: usize,
    basis: Vec<Vec<S>>,
}

impl<S: Scalar> Subspace<S> {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![S::zero(); ambient_dim];
                v[i] = S::one();
                v
            })
            .collect();
        Self { ambient_dim, basis }
    }

    /// Trusts the caller that `basis` is linearly independent.
    pub(crate) fn from_independent(ambient_dim: usize, basis: Vec<Vec<S>>) -> Self {
        debug_assert!(basis.iter().all(|v| v.len() == ambient_dim));
        Self { ambient_dim, basis }
    }

    /// Span of the given vectors. Keeps the first independent vectors in
    /// order, so the basis choice is deterministic.
    pub fn spanned_by(ambient_dim: usize, vectors: &[Vec<S>]) -> Self {
        assert!(vectors.iter().all(|v| v.len() == ambient_dim));
        if vectors.is_empty() {
            return Self::zero(ambient_dim);
        }
        let m = Matrix::from_columns(ambient_dim, vectors);
        let (_, pivots) = m.rref();
        Self {
            ambient_dim,
            basis: pivots.iter().map(|&p| vectors[p].clone()).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<S>] {
        &self.basis
    }

    /// `ambient_dim x dim` matrix of basis columns.
    pub fn to_matrix(&self) -> Matrix<S> {
        Matrix::from_columns(self.ambient_dim, &self.basis)
    }

    pub fn contains(&self, v: &[S]) -> bool {
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        if self.basis.is_empty() {
            return false;
        }
        self.to_matrix().solve(v).is_some()
    }

    /// Coordinates of `v` in this basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[S]) -> Option<Vec<S>> {
        if self.basis.is_empty() {
            return v.iter().all(Zero::is_zero).then(Vec::new);
        }
        self.to_matrix().solve(v)
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis.iter().all(|v| other.contains(v))
    }

    pub fn same_as(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.is_subspace_of(other)
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Ok(Self::spanned_by(self.ambient_dim, &all))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        if self.basis.is_empty() || other.basis.is_empty() {
            return Ok(Self::zero(self.ambient_dim));
        }
        // a x = b y  <=>  [a | -b] (x, y) = 0
        let a = self.to_matrix();
        let joint = a.hstack(&other.to_matrix().neg());
        let vectors: Vec<Vec<S>> = joint
            .kernel()
            .basis()
            .iter()
            .map(|xy| a.apply(&xy[..self.dim()]))
            .collect();
        Ok(Self::spanned_by(self.ambient_dim, &vectors))
    }

    /// Image of the subspace under a linear map.
    pub fn image_under(&self, op: &Matrix<S>) -> Self {
        assert_eq!(op.cols(), self.ambient_dim);
        let imgs: Vec<Vec<S>> = self.basis.iter().map(|v| op.apply(v)).collect();
        Self::spanned_by(op.rows(), &imgs)
    }

    /// `{ v in self : op v = 0 }`
    pub fn kernel_within(&self, op: &Matrix<S>) -> Self {
        assert_eq!(op.cols(), self.ambient_dim);
        if self.basis.is_empty() {
            return self.clone();
        }
        let b = self.to_matrix();
        let vectors: Vec<Vec<S>> = op
            .mul(&b)
            .kernel()
            .basis()
            .iter()
            .map(|c| b.apply(c))
            .collect();
        Self::spanned_by(self.ambient_dim, &vectors)
    }
}

/// Sum and intersection of two subspaces of the same ambient space.
pub fn subspace_ops<S: Scalar>(a: &Subspace<S>, b: &Subspace<S>) -> Result<(Subspace<S>, Subspace<S>)> {
    Ok((a.sum(b)?, a.intersection(b)?))
}

/// A chosen basis of a subquotient `ker / im`: the basis of `im` followed
/// by representatives that complete it to a basis of `ker`.
#[derive(Debug, Clone)]
pub struct Quotient<S> {
    ker: Subspace<S>,
    im: Subspace<S>,
    representatives: Vec<Vec<S>>,
}

impl<S: Scalar> Quotient<S> {
    /// Representatives are the first `ker` basis vectors independent of
    /// `im` and of each other.
    pub fn new(ker: &Subspace<S>, im: &Subspace<S>) -> Result<Self> {
        if !im.is_subspace_of(ker) {
            return Err(Error::ContractViolation(
                "image is not contained in kernel".into(),
            ));
        }
        let mut all = im.basis().to_vec();
        all.extend(ker.basis().iter().cloned());
        let span = Subspace::spanned_by(ker.ambient_dim(), &all);
        let representatives = span.basis()[im.dim()..].to_vec();
        Ok(Self {
            ker: ker.clone(),
            im: im.clone(),
            representatives,
        })
    }

    /// Uses the given representatives, which must be closed and independent
    /// modulo `im`.
    pub fn with_representatives(ker: &Subspace<S>, im: &Subspace<S>, reps: Vec<Vec<S>>) -> Result<Self> {
        let q = Self::new(ker, im)?;
        if reps.len() != q.dim() {
            return Err(Error::DimensionMismatch {
                expected: q.dim(),
                found: reps.len(),
            });
        }
        let mut all = im.basis().to_vec();
        all.extend(reps.iter().cloned());
        let span = Subspace::spanned_by(ker.ambient_dim(), &all);
        if span.dim() != ker.dim() || !reps.iter().all(|r| ker.contains(r)) {
            return Err(Error::ContractViolation(
                "representatives do not form a basis of the quotient".into(),
            ));
        }
        Ok(Self {
            ker: ker.clone(),
            im: im.clone(),
            representatives: reps,
        })
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[Vec<S>] {
        &self.representatives
    }

    pub fn ker(&self) -> &Subspace<S> {
        &self.ker
    }

    pub fn im(&self) -> &Subspace<S> {
        &self.im
    }

    /// Quotient coordinates of a vector of `ker`; `None` if `v` is not in `ker`.
    pub fn project(&self, v: &[S]) -> Option<Vec<S>> {
        let mut cols = self.im.basis().to_vec();
        cols.extend(self.representatives.iter().cloned());
        if cols.is_empty() {
            return v.iter().all(Zero::is_zero).then(Vec::new);
        }
        let m = Matrix::from_columns(self.ker.ambient_dim(), &cols);
        m.solve(v).map(|c| c[self.im.dim()..].to_vec())
    }

    /// Vector representing the class with the given coordinates.
    pub fn lift(&self, coords: &[S]) -> Vec<S> {
        let n = self.ker.ambient_dim();
        let mut out = vec![S::zero(); n];
        for (c, rep) in coords.iter().zip(&self.representatives) {
            for (o, x) in out.iter_mut().zip(rep) {
                *o = o.clone() + c.clone() * x.clone();
            }
        }
        out
    }
}

/// Matrix of the map induced by `op` between subquotients, in the
/// representative bases of [`Quotient::new`].
pub fn induced_map_on_quotient<S: Scalar>(
    op: &Matrix<S>,
    src_ker: &Subspace<S>,
    src_im: &Subspace<S>,
    dst_ker: &Subspace<S>,
    dst_im: &Subspace<S>,
) -> Result<Matrix<S>> {
    let src = Quotient::new(src_ker, src_im)?;
    let dst = Quotient::new(dst_ker, dst_im)?;
    induced_map_between(op, &src, &dst)
}

/// Matrix of the induced map for explicit source and target quotient bases.
pub fn induced_map_between<S: Scalar>(op: &Matrix<S>, src: &Quotient<S>, dst: &Quotient<S>) -> Result<Matrix<S>> {
    if op.cols() != src.ker().ambient_dim() || op.rows() != dst.ker().ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: src.ker().ambient_dim(),
            found: op.cols(),
        });
    }
    for v in src.im().basis() {
        if !dst.im().contains(&op.apply(v)) {
            return Err(Error::ContractViolation(
                "operator does not map the source image into the target image".into(),
            ));
        }
    }
    let mut columns = Vec::with_capacity(src.dim());
    for rep in src.representatives() {
        let w = op.apply(rep);
        let coords = dst.project(&w).ok_or_else(|| {
            Error::ContractViolation("operator does not map the source kernel into the target kernel".into())
        })?;
        columns.push(coords);
    }
    Ok(Matrix::from_columns(dst.dim(), &columns))
}

/// Scales a vector so its first nonzero coefficient is one.
pub fn normalize_leading<S: Scalar>(v: &[S]) -> Vec<S> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(lead) => {
            let inv = S::one() / lead.clone();
            v.iter().map(|x| x.clone() * inv.clone()).collect()
        }
        None => v.to_vec(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{integer, Rational};

    type Q = Rational;

    fn unit(n: usize, i: usize) -> Vec<Q> {
        let mut v = vec![integer(0); n];
        v[i] = integer(1);
        v
    }

    #[test]
    fn equal_subspaces() {
        let a = Subspace::spanned_by(3, &[unit(3, 0), unit(3, 1)]);
        let (s, i) = subspace_ops(&a, &a).unwrap();
        assert!(s.same_as(&a));
        assert!(i.same_as(&a));
    }

    #[test]
    fn complementary_planes() {
        let a = Subspace::spanned_by(4, &[unit(4, 0), unit(4, 1)]);
        let b = Subspace::spanned_by(4, &[unit(4, 2), unit(4, 3)]);
        let (s, i) = subspace_ops(&a, &b).unwrap();
        assert_eq!((s.dim(), i.dim()), (4, 0));
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = Subspace::<Q>::full(2);
        let b = Subspace::<Q>::full(3);
        assert!(matches!(
            subspace_ops(&a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn induced_identity_and_zero() {
        let ker = Subspace::<Q>::full(3);
        let im = Subspace::zero(3);
        let id = induced_map_on_quotient(&Matrix::identity(3), &ker, &im, &ker, &im).unwrap();
        assert_eq!(id, Matrix::identity(3));
        let zero = induced_map_on_quotient(&Matrix::zeros(3, 3), &ker, &im, &ker, &im).unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn induced_map_rejects_operators_leaving_the_kernel() {
        let src = Subspace::<Q>::full(2);
        let dst_ker = Subspace::spanned_by(2, &[unit(2, 0)]);
        let err = induced_map_on_quotient(&Matrix::identity(2), &src, &Subspace::zero(2), &dst_ker, &Subspace::zero(2));
        assert!(matches!(err, Err(Error::ContractViolation(_))));
    }

    #[test]
    fn quotient_projection_kills_the_image() {
        let ker = Subspace::<Q>::full(3);
        let im = Subspace::spanned_by(3, &[unit(3, 1)]);
        let q = Quotient::new(&ker, &im).unwrap();
        assert_eq!(q.dim(), 2);
        assert!(q.project(&unit(3, 1)).unwrap().iter().all(Zero::is_zero));
    }
}
