//! Products of presentations and the Künneth formula against a Kähler ring.

use crate::algebroid::Presentation;
use crate::cohomology::betti_numbers;
use crate::error::{Error, Result};
use crate::lefschetz::SymplecticData;
use crate::linalg::{induced_map_between, Matrix};
use crate::scalar::Rational;

use super::ring::FiniteKahlerRing;

/// Two factors and their assembled product.
#[derive(Debug, Clone)]
pub struct ProductModel {
    pub left: Presentation,
    pub right: Presentation,
    pub product: Presentation,
}

impl ProductModel {
    /// Both factors must satisfy Jacobi.
    pub fn new(left: Presentation, right: Presentation) -> Result<Self> {
        for (side, p) in [("left", &left), ("right", &right)] {
            if let Some(w) = p.validate_jacobi().witness {
                return Err(Error::Model(format!("{side} factor violates Jacobi at {w}")));
            }
        }
        let product = left.product(&right);
        Ok(Self { left, right, product })
    }

    /// Kähler verdicts of the two factors and of the product.
    pub fn kahler_verdicts(&self) -> Result<(bool, bool, bool)> {
        let v = |p: &Presentation| -> Result<bool> {
            match p.validate_kahler() {
                Ok(v) => Ok(v.passed),
                Err(Error::IncompleteModel(_)) => Ok(false),
                Err(e) => Err(e),
            }
        };
        Ok((v(&self.left)?, v(&self.right)?, v(&self.product)?))
    }
}

/// `c_k = Σ_{i+j=k} a_i b_j`
pub fn convolve(a: &[usize], b: &[usize]) -> Vec<usize> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `[L_total]^k : T^{N-k} → T^{N+k}` on the tensor model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorLefschetzStep {
    pub k: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub iso: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KunnethReport {
    pub ce_dims: Vec<usize>,
    pub ring_dims: Vec<usize>,
    pub dims: Vec<usize>,
    /// Present when the presentation carries a symplectic form.
    pub lefschetz: Option<Vec<TensorLefschetzStep>>,
}

impl KunnethReport {
    pub fn lefschetz_passed(&self) -> Option<bool> {
        self.lefschetz.as_ref().map(|s| s.iter().all(|x| x.iso))
    }
}

fn kron(a: &Matrix<Rational>, b: &Matrix<Rational>) -> Matrix<Rational> {
    Matrix::from_fn(a.rows() * b.rows(), a.cols() * b.cols(), |i, j| {
        a[(i / b.rows(), j / b.cols())].clone() * b[(i % b.rows(), j % b.cols())].clone()
    })
}

/// Tensor model `T^k = ⊕_{i+j=k} H^i ⊗ R^j` with its block offsets.
struct TensorModel {
    ce: Vec<usize>,
    ring: Vec<usize>,
}

impl TensorModel {
    fn components(&self, k: usize) -> Vec<(usize, usize, usize)> {
        let mut offset = 0;
        let mut out = Vec::new();
        for i in 0..self.ce.len() {
            if let Some(j) = k.checked_sub(i).filter(|&j| j < self.ring.len()) {
                out.push((i, j, offset));
                offset += self.ce[i] * self.ring[j];
            }
        }
        out
    }

    fn dim(&self, k: usize) -> usize {
        self.components(k).iter().map(|&(i, j, _)| self.ce[i] * self.ring[j]).sum()
    }

    /// `L ⊗ 1 + 1 ⊗ ω` from degree `k` to `k + 2`.
    fn total_l(&self, k: usize, ce_l: &[Matrix<Rational>], ring_l: &[Matrix<Rational>]) -> Matrix<Rational> {
        let mut out = Matrix::zeros(self.dim(k + 2), self.dim(k));
        let targets = self.components(k + 2);
        let place = |out: &mut Matrix<Rational>, block: &Matrix<Rational>, row0: usize, col0: usize| {
            for r in 0..block.rows() {
                for c in 0..block.cols() {
                    out[(row0 + r, col0 + c)] += block[(r, c)].clone();
                }
            }
        };
        for (i, j, col0) in self.components(k) {
            if let Some(&(_, _, row0)) = targets.iter().find(|t| t.0 == i + 2 && t.1 == j) {
                place(&mut out, &kron(&ce_l[i], &Matrix::identity(self.ring[j])), row0, col0);
            }
            if let Some(&(_, _, row0)) = targets.iter().find(|t| t.0 == i && t.1 == j + 2) {
                place(&mut out, &kron(&Matrix::identity(self.ce[i]), &ring_l[j]), row0, col0);
            }
        }
        out
    }
}

/// Künneth dimensions of the presentation times a Kähler ring, and Hard
/// Lefschetz for the class `[ω] ⊗ 1 + 1 ⊗ [ω_M]` on the tensor model.
pub fn kunneth_dims(p: &Presentation, ring: &FiniteKahlerRing) -> Result<KunnethReport> {
    ring.validate()?;
    let ce_dims = betti_numbers(&crate::cohomology::build_complex(p)?.d);
    let ring_dims = ring.dims().to_vec();
    let dims = convolve(&ce_dims, &ring_dims);
    let lefschetz = match p.omega() {
        None => None,
        Some(_) => {
            let data = SymplecticData::new(p)?;
            let ce_l: Vec<Matrix<Rational>> = (0..ce_dims.len())
                .map(|i| {
                    if i + 2 < ce_dims.len() {
                        induced_map_between(data.triple.l.block(i), &data.cohomology[i], &data.cohomology[i + 2])
                    } else {
                        Ok(Matrix::zeros(0, ce_dims[i]))
                    }
                })
                .collect::<Result<_>>()?;
            let ring_l: Vec<Matrix<Rational>> = (0..ring_dims.len())
                .map(|j| {
                    if j + 2 < ring_dims.len() {
                        ring.left_multiplication(2, ring.kahler_class(), j)
                    } else {
                        Matrix::zeros(0, ring_dims[j])
                    }
                })
                .collect();
            let model = TensorModel {
                ce: ce_dims.clone(),
                ring: ring_dims.clone(),
            };
            let n = (dims.len() - 1) / 2;
            let steps = (0..=n)
                .map(|k| {
                    let start = n - k;
                    let mut acc = Matrix::identity(model.dim(start));
                    for step in 0..k {
                        acc = model.total_l(start + 2 * step, &ce_l, &ring_l).mul(&acc);
                    }
                    let rank = acc.rank();
                    let (source_dim, target_dim) = (dims[n - k], dims[n + k]);
                    TensorLefschetzStep {
                        k,
                        source_dim,
                        target_dim,
                        rank,
                        iso: rank == source_dim && rank == target_dim,
                    }
                })
                .collect();
            Some(steps)
        }
    };
    Ok(KunnethReport {
        ce_dims,
        ring_dims,
        dims,
        lefschetz,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::cohomology_with;
    use crate::constructions::presets::{abelian, kodaira_thurston};

    #[test]
    fn projective_line_examples() {
        let cp1 = FiniteKahlerRing::projective_line();
        let r = kunneth_dims(&abelian(1), &cp1).unwrap();
        assert_eq!(r.dims, vec![1, 2, 2, 2, 1]);
        assert_eq!(r.lefschetz_passed(), Some(true));
        let r2 = kunneth_dims(&abelian(2), &cp1).unwrap();
        assert_eq!(r2.dims, vec![1, 4, 7, 8, 7, 4, 1]);
        assert_eq!(r2.lefschetz_passed(), Some(true));
    }

    #[test]
    fn point_ring_is_neutral() {
        let r = kunneth_dims(&kodaira_thurston(), &FiniteKahlerRing::point()).unwrap();
        assert_eq!(r.dims, vec![1, 3, 4, 3, 1]);
        assert_eq!(r.lefschetz_passed(), Some(false));
    }

    #[test]
    fn product_matches_convolution() {
        let models = [abelian(1), kodaira_thurston()];
        for a in &models {
            for b in &models {
                if a.rank() + b.rank() > 8 {
                    continue;
                }
                let prod = ProductModel::new(a.clone(), b.clone()).unwrap();
                let dims = cohomology_with(&prod.product, Default::default()).unwrap().dims;
                let da = cohomology_with(a, Default::default()).unwrap().dims;
                let db = cohomology_with(b, Default::default()).unwrap().dims;
                assert_eq!(dims, convolve(&da, &db));
            }
        }
    }

    #[test]
    fn product_of_planes_is_standard() {
        let prod = ProductModel::new(abelian(1), abelian(1)).unwrap();
        assert_eq!(prod.product, abelian(2));
        assert_eq!(prod.kahler_verdicts().unwrap(), (true, true, true));
        let mixed = ProductModel::new(kodaira_thurston(), abelian(1)).unwrap();
        assert!(mixed.product.validate_omega_closed().unwrap().passed);
        assert_eq!(mixed.kahler_verdicts().unwrap(), (false, true, false));
    }
}
