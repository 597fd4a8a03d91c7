//! Structure-constant presentations of Lie algebroids over a point.
//!
//! The base is a point with a formal tangent dimension `n_base`; sections
//! are constant, so the anchor term of the differential vanishes and only
//! the bracket contributes.

mod validate;

pub use validate::{ValidationReport, Verdict, Witness};

use crate::error::{Error, Result};
use crate::exterior::symplectic::{skew_matrix, volume_coefficient};
use crate::exterior::{ExteriorAlgebra, FormVector, GradedOperator};
use crate::linalg::Matrix;
use crate::scalar::{Rational, Scalar};

/// `[e_i, e_j] = Σ_k c_ijk e_k` together with optional metric, complex
/// structure, symplectic form and integrating-section coefficient.
///
/// All indices are 0-based. `J` acts on the fiber by columns:
/// `J e_j = Σ_i J[i][j] e_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebroidPresentation<S: Scalar> {
    rank: usize,
    structure: Vec<S>,
    anchor: Matrix<S>,
    metric: Option<Matrix<S>>,
    complex_structure: Option<Matrix<S>>,
    omega: Option<FormVector<S>>,
    eta: Option<S>,
}

pub type Presentation = AlgebroidPresentation<Rational>;

impl<S: Scalar> AlgebroidPresentation<S> {
    /// Abelian presentation of the given rank with zero anchor.
    pub fn new(rank: usize) -> Self {
        assert!(rank <= 16, "fiber rank above 16 is not supported");
        Self {
            rank,
            structure: vec![S::zero(); rank * rank * rank],
            anchor: Matrix::zeros(rank, 0),
            metric: None,
            complex_structure: None,
            omega: None,
            eta: None,
        }
    }

    fn slot(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.rank + j) * self.rank + k
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn exterior(&self) -> ExteriorAlgebra {
        ExteriorAlgebra::new(self.rank)
    }

    /// `c_ijk`, antisymmetric in `(i, j)`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &S {
        &self.structure[self.slot(i, j, k)]
    }

    /// Sets `c_ijk` and `c_jik = -c_ijk`.
    pub fn set_bracket(&mut self, i: usize, j: usize, k: usize, c: S) -> Result<()> {
        let r = self.rank;
        if i >= r || j >= r || k >= r {
            return Err(Error::Model(format!(
                "structure index ({}, {}, {}) outside 1..{r}",
                i + 1,
                j + 1,
                k + 1
            )));
        }
        if i == j {
            if c.is_zero() {
                return Ok(());
            }
            return Err(Error::Model(format!("[e{0}, e{0}] must vanish", i + 1)));
        }
        let a = self.slot(i, j, k);
        let b = self.slot(j, i, k);
        self.structure[b] = -c.clone();
        self.structure[a] = c;
        Ok(())
    }

    /// Builder form of [`set_bracket`](Self::set_bracket) for several
    /// targets at once.
    pub fn with_bracket(mut self, i: usize, j: usize, terms: &[(usize, S)]) -> Result<Self> {
        for (k, c) in terms {
            self.set_bracket(i, j, *k, c.clone())?;
        }
        Ok(self)
    }

    pub fn anchor(&self) -> &Matrix<S> {
        &self.anchor
    }

    pub fn base_dim(&self) -> usize {
        self.anchor.cols()
    }

    /// Anchor as an `r × n_base` matrix: row `i` is `ρ(e_i)`.
    pub fn with_anchor(mut self, anchor: Matrix<S>) -> Result<Self> {
        if anchor.rows() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                found: anchor.rows(),
            });
        }
        self.anchor = anchor;
        Ok(self)
    }

    pub fn metric(&self) -> Option<&Matrix<S>> {
        self.metric.as_ref()
    }

    /// Symmetric positive definite fiber metric `G_ij = g(e_i, e_j)`.
    pub fn with_metric(mut self, g: Matrix<S>) -> Result<Self> {
        self.check_square(&g)?;
        if g.transpose() != g {
            return Err(Error::Model("metric is not symmetric".into()));
        }
        if !g.is_hermitian_positive_definite() {
            return Err(Error::Model("metric is not positive definite".into()));
        }
        self.metric = Some(g);
        Ok(self)
    }

    pub fn complex_structure(&self) -> Option<&Matrix<S>> {
        self.complex_structure.as_ref()
    }

    pub fn with_complex_structure(mut self, j: Matrix<S>) -> Result<Self> {
        self.check_square(&j)?;
        if j.mul(&j) != Matrix::identity(self.rank).neg() {
            return Err(Error::Model("J does not square to -1".into()));
        }
        self.complex_structure = Some(j);
        Ok(self)
    }

    pub fn omega(&self) -> Option<&FormVector<S>> {
        self.omega.as_ref()
    }

    pub fn with_omega(mut self, omega: FormVector<S>) -> Result<Self> {
        if omega.degree != 2 || omega.coeffs.len() != self.exterior().dim(2) {
            return Err(Error::Model("omega must be a 2-form on the fiber".into()));
        }
        self.omega = Some(omega);
        Ok(self)
    }

    pub fn eta(&self) -> Option<&S> {
        self.eta.as_ref()
    }

    pub fn with_eta(mut self, eta: S) -> Result<Self> {
        if eta.is_zero() {
            return Err(Error::Model("integrating section must be nonvanishing".into()));
        }
        self.eta = Some(eta);
        Ok(self)
    }

    fn check_square(&self, m: &Matrix<S>) -> Result<()> {
        if m.rows() != self.rank || m.cols() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                found: if m.rows() != self.rank { m.rows() } else { m.cols() },
            });
        }
        Ok(())
    }

    /// Bracket of two fiber vectors given in the basis `e_i`.
    pub fn bracket(&self, x: &[S], y: &[S]) -> Vec<S> {
        let r = self.rank;
        let mut out = vec![S::zero(); r];
        for i in 0..r {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..r {
                if y[j].is_zero() || i == j {
                    continue;
                }
                let xy = x[i].clone() * y[j].clone();
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.structure_constant(i, j, k);
                    if !c.is_zero() {
                        *o = o.clone() + xy.clone() * c.clone();
                    }
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<S> {
        let mut v = vec![S::zero(); self.rank];
        v[i] = S::one();
        v
    }

    /// `d` on covectors, `d e^k = -Σ_{i<j} c_ijk e^i ∧ e^j`, as a
    /// `dim Λ² × r` matrix.
    pub fn covector_differential(&self) -> Matrix<S> {
        let ext = self.exterior();
        let mut m = Matrix::zeros(ext.dim(2), self.rank);
        for (row, idx) in ext.basis(2).iter().enumerate() {
            let ij = idx.indices();
            for k in 0..self.rank {
                m[(row, k)] = -self.structure_constant(ij[0], ij[1], k).clone();
            }
        }
        m
    }

    /// The Chevalley–Eilenberg differential on every degree. Squares to
    /// zero exactly when the bracket satisfies Jacobi.
    pub fn differential(&self) -> GradedOperator<S> {
        self.exterior().derivation_from_covectors(&self.covector_differential())
    }

    /// `Ω_ij = ω(e_i, e_j)`.
    pub fn omega_matrix(&self) -> Result<Matrix<S>> {
        let omega = self.omega.as_ref().ok_or_else(|| Error::IncompleteModel("omega".into()))?;
        Ok(skew_matrix(&self.exterior(), omega))
    }

    /// Top coefficient of `ω^m / m!`.
    pub fn volume_coefficient(&self) -> Result<S> {
        let omega = self.omega.as_ref().ok_or_else(|| Error::IncompleteModel("omega".into()))?;
        volume_coefficient(&self.exterior(), omega)
    }

    /// `∫ f = top(f) · eta` for a top-degree form.
    pub fn integrate(&self, top: &FormVector<S>) -> Result<S> {
        let eta = self.eta.as_ref().ok_or_else(|| Error::IncompleteModel("eta".into()))?;
        Ok(self.exterior().top_coefficient(top) * eta.clone())
    }

    /// Rescales eta so that `ω^m/m!` integrates to 1.
    pub fn normalize_integrating_section(&self) -> Result<Self> {
        if self.eta.is_none() {
            return Err(Error::IncompleteModel("eta".into()));
        }
        let v = self.volume_coefficient()?;
        if v.is_zero() {
            return Err(Error::Degenerate("omega^m vanishes; omega is degenerate".into()));
        }
        let mut out = self.clone();
        out.eta = Some(S::one() / v);
        Ok(out)
    }

    /// Product presentation on `A₁ ⊕ A₂`: block-diagonal brackets, anchor,
    /// metric, J and ω, integrating sections multiplied. Optional data is
    /// kept only when both factors carry it.
    pub fn product(&self, other: &Self) -> Self {
        let r1 = self.rank;
        let r = r1 + other.rank;
        let mut out = Self::new(r);
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let c = if i < r1 && j < r1 && k < r1 {
                        self.structure_constant(i, j, k).clone()
                    } else if i >= r1 && j >= r1 && k >= r1 {
                        other.structure_constant(i - r1, j - r1, k - r1).clone()
                    } else {
                        continue;
                    };
                    let s = out.slot(i, j, k);
                    out.structure[s] = c;
                }
            }
        }
        out.anchor = self.anchor.block_diag(&other.anchor);
        out.metric = both(&self.metric, &other.metric).map(|(a, b)| a.block_diag(b));
        out.complex_structure =
            both(&self.complex_structure, &other.complex_structure).map(|(a, b)| a.block_diag(b));
        let ext = out.exterior();
        out.omega = both(&self.omega, &other.omega).map(|(a, b)| {
            let m = skew_matrix(&self.exterior(), a).block_diag(&skew_matrix(&other.exterior(), b));
            crate::exterior::symplectic::two_form_from_skew(&ext, &m)
        });
        out.eta = both(&self.eta, &other.eta).map(|(a, b)| a.clone() * b.clone());
        out
    }

    /// Same data in a new basis `f_j = Σ_i P[i][j] e_i`.
    pub fn change_basis(&self, p: &Matrix<S>) -> Result<Self> {
        let r = self.rank;
        if p.rows() != r || p.cols() != r {
            return Err(Error::DimensionMismatch {
                expected: r,
                found: p.rows(),
            });
        }
        let pinv = p
            .inverse()
            .ok_or_else(|| Error::Degenerate("change of basis is singular".into()))?;
        let cols = p.columns();
        let mut out = Self::new(r);
        for i in 0..r {
            for j in i + 1..r {
                let b = self.bracket(&cols[i], &cols[j]);
                let coords = pinv.apply(&b);
                for (k, c) in coords.into_iter().enumerate() {
                    out.set_bracket(i, j, k, c)?;
                }
            }
        }
        out.anchor = p.transpose().mul(&self.anchor);
        out.metric = self.metric.as_ref().map(|g| p.transpose().mul(g).mul(p));
        out.complex_structure = self.complex_structure.as_ref().map(|j| pinv.mul(j).mul(p));
        let ext = self.exterior();
        if let Some(omega) = &self.omega {
            let om = p.transpose().mul(&skew_matrix(&ext, omega)).mul(p);
            out.omega = Some(crate::exterior::symplectic::two_form_from_skew(&ext, &om));
        }
        // f_1 ∧ .. ∧ f_r = det P · e_1 ∧ .. ∧ e_r
        let det = p.determinant();
        out.eta = self.eta.as_ref().map(|e| e.clone() / det.clone());
        Ok(out)
    }
}

fn both<'a, T>(a: &'a Option<T>, b: &'a Option<T>) -> Option<(&'a T, &'a T)> {
    Some((a.as_ref()?, b.as_ref()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::integer;

    fn kt() -> Presentation {
        Presentation::new(4).with_bracket(0, 1, &[(2, integer(-1))]).unwrap()
    }

    #[test]
    fn kt_differential_follows_maurer_cartan() {
        let p = kt();
        let ext = p.exterior();
        let d = p.differential();
        let e3 = ext.form_from_terms::<Rational>(1, &[(&[2], integer(1))]);
        assert_eq!(d.apply(1, &e3.coeffs), ext.form_from_terms(2, &[(&[0, 1], integer(1))]).coeffs);
        let e34 = ext.form_from_terms::<Rational>(2, &[(&[2, 3], integer(1))]);
        assert_eq!(d.apply(2, &e34.coeffs), ext.form_from_terms(3, &[(&[0, 1, 3], integer(1))]).coeffs);
        assert!(d.compose(&d).is_zero());
    }

    #[test]
    fn bracket_is_antisymmetric_by_storage() {
        let p = kt();
        assert_eq!(p.bracket(&p.basis_vector(1), &p.basis_vector(0)), vec![integer(0), integer(0), integer(1), integer(0)]);
    }

    #[test]
    fn invariants_reject_bad_data() {
        let p = Presentation::new(2);
        assert!(p.clone().with_complex_structure(Matrix::identity(2)).is_err());
        assert!(p.clone().with_eta(integer(0)).is_err());
        assert!(p.clone().with_metric(Matrix::from_i64_rows(&[&[1, 2], &[2, 1]])).is_err());
        assert!(p.clone().set_bracket(0, 0, 1, integer(1)).is_err());
    }

    #[test]
    fn normalization_is_idempotent() {
        let ext = ExteriorAlgebra::new(2);
        let p = Presentation::new(2)
            .with_omega(ext.form_from_terms(2, &[(&[0, 1], integer(1))]))
            .unwrap()
            .with_eta(integer(5))
            .unwrap();
        let n = p.normalize_integrating_section().unwrap();
        assert_eq!(n.eta(), Some(&integer(1)));
        assert_eq!(n.normalize_integrating_section().unwrap(), n);
    }
}
