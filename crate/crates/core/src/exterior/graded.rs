use crate::linalg::Matrix;
use crate::scalar::{GaussianRational, Rational, Scalar};

/// A linear operator on the graded space `⊕_k Λ^k` that raises degree by a
/// fixed `shift`. Block `k` maps `Λ^k → Λ^{k+shift}`; blocks whose target
/// degree is out of range have zero rows.
#[derive(Clone, PartialEq)]
pub struct GradedOperator<S> {
    dims: Vec<usize>,
    shift: isize,
    blocks: Vec<Matrix<S>>,
}

/// Location and value of the first nonzero entry of a graded operator.
#[derive(Debug, Clone, PartialEq)]
pub struct Residual<S> {
    pub degree: usize,
    pub row: usize,
    pub col: usize,
    pub value: S,
}

impl<S: Scalar> GradedOperator<S> {
    pub fn target_dim(dims: &[usize], k: usize, shift: isize) -> usize {
        let t = k as isize + shift;
        if t < 0 || t as usize >= dims.len() {
            0
        } else {
            dims[t as usize]
        }
    }

    pub fn from_fn(dims: Vec<usize>, shift: isize, mut f: impl FnMut(usize) -> Matrix<S>) -> Self {
        let blocks: Vec<Matrix<S>> = (0..dims.len()).map(&mut f).collect();
        for (k, b) in blocks.iter().enumerate() {
            assert_eq!(
                (b.rows(), b.cols()),
                (Self::target_dim(&dims, k, shift), dims[k]),
                "block {k} has the wrong shape"
            );
        }
        Self { dims, shift, blocks }
    }

    pub fn zero(dims: Vec<usize>, shift: isize) -> Self {
        let d = dims.clone();
        Self::from_fn(dims, shift, |k| Matrix::zeros(Self::target_dim(&d, k, shift), d[k]))
    }

    pub fn identity(dims: Vec<usize>) -> Self {
        let d = dims.clone();
        Self::from_fn(dims, 0, |k| Matrix::identity(d[k]))
    }

    /// `Σ_k c_k π_k`
    pub fn diagonal(dims: Vec<usize>, mut c: impl FnMut(usize) -> S) -> Self {
        let d = dims.clone();
        Self::from_fn(dims, 0, |k| Matrix::identity(d[k]).scale(&c(k)))
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn shift(&self) -> isize {
        self.shift
    }

    pub fn block(&self, k: usize) -> &Matrix<S> {
        &self.blocks[k]
    }

    pub fn blocks(&self) -> &[Matrix<S>] {
        &self.blocks
    }

    /// Degrees `k` whose target `k + shift` exists.
    pub fn active_degrees(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.dims.len()).filter(move |&k| {
            let t = k as isize + self.shift;
            t >= 0 && (t as usize) < self.dims.len()
        })
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.dims, other.dims);
        let shift = self.shift + other.shift;
        let dims = self.dims.clone();
        Self::from_fn(self.dims.clone(), shift, |k| {
            let mid = k as isize + other.shift;
            if mid < 0 || mid as usize >= dims.len() {
                return Matrix::zeros(Self::target_dim(&dims, k, shift), dims[k]);
            }
            self.blocks[mid as usize].mul(&other.blocks[k])
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.dims.as_slice(), self.shift), (other.dims.as_slice(), other.shift));
        Self::from_fn(self.dims.clone(), self.shift, |k| self.blocks[k].add(&other.blocks[k]))
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.dims.as_slice(), self.shift), (other.dims.as_slice(), other.shift));
        Self::from_fn(self.dims.clone(), self.shift, |k| self.blocks[k].sub(&other.blocks[k]))
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::from_fn(self.dims.clone(), self.shift, |k| self.blocks[k].scale(s))
    }

    /// Scales block `k` by `c(k)`.
    pub fn scale_by_degree(&self, mut c: impl FnMut(usize) -> S) -> Self {
        Self::from_fn(self.dims.clone(), self.shift, |k| self.blocks[k].scale(&c(k)))
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(self.dims.clone(), self.shift, |k| self.blocks[k].conj())
    }

    /// `[a, b] = a b - b a`
    pub fn commutator(&self, other: &Self) -> Self {
        self.compose(other).sub(&other.compose(self))
    }

    /// `{a, b} = a b + b a`
    pub fn anticommutator(&self, other: &Self) -> Self {
        self.compose(other).add(&other.compose(self))
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Self::identity(self.dims.clone()), |acc, _| self.compose(&acc))
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn first_nonzero(&self) -> Option<Residual<S>> {
        self.blocks.iter().enumerate().find_map(|(k, b)| {
            b.first_nonzero().map(|(row, col, value)| Residual {
                degree: k,
                row,
                col,
                value,
            })
        })
    }

    /// Applies block `degree` to a coefficient vector.
    pub fn apply(&self, degree: usize, v: &[S]) -> Vec<S> {
        self.blocks[degree].apply(v)
    }
}

impl GradedOperator<Rational> {
    pub fn complexify(&self) -> GradedOperator<GaussianRational> {
        GradedOperator::from_fn(self.dims.clone(), self.shift, |k| self.blocks[k].complexify())
    }
}

impl<S: Scalar> std::fmt::Debug for GradedOperator<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GradedOperator")
            .field("dims", &self.dims)
            .field("shift", &self.shift)
            .field("blocks", &self.blocks)
            .finish()
    }
}
