//! Chevalley–Eilenberg cohomology, Dolbeault cohomology, Laplacians and
//! the finite-dimensional Hodge decomposition.
//!
//! Over a point every section space is finite dimensional, so the analytic
//! statements reduce to exact linear algebra on `⊕_k Λ^k`.

mod adjoint;
mod hodge;

pub use adjoint::{gram_adjoint, hermitian_product};
pub(crate) use hodge::subcomplex_quasi_isomorphism;
pub use hodge::{
    harmonic_bigraded, hodge_decomposition, laplacians, DecompositionReport, DegreeDecomposition, HermitianPackage,
    Laplacians,
};

use crate::algebroid::Presentation;
use crate::error::{Error, Result};
use crate::exterior::{Bigrading, ExteriorAlgebra, FormVector, GradedOperator};
use crate::linalg::{normalize_leading, Matrix, Quotient, Subspace};
use crate::scalar::{GaussianRational, Rational, Scalar};

/// `d` on every degree, with the type components when a complex structure
/// is integrable.
#[derive(Debug, Clone)]
pub struct DifferentialComplex {
    pub d: GradedOperator<Rational>,
    pub split: Option<SplitDifferential>,
}

/// `d = ∂ + ∂̄` on complex forms.
#[derive(Debug, Clone)]
pub struct SplitDifferential {
    pub partial: GradedOperator<GaussianRational>,
    pub partial_bar: GradedOperator<GaussianRational>,
}

/// `h^{p,q}` for `0 ≤ p, q ≤ m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigradedTable {
    pub m: usize,
    pub entries: Vec<Vec<usize>>,
}

impl BigradedTable {
    pub fn get(&self, p: usize, q: usize) -> usize {
        self.entries[p][q]
    }

    /// `Σ_{p+q=k} h^{p,q}`
    pub fn total(&self, k: usize) -> usize {
        (0..=self.m)
            .filter_map(|p| k.checked_sub(p).filter(|&q| q <= self.m).map(|q| self.entries[p][q]))
            .sum()
    }
}

#[derive(Debug, Clone)]
pub struct CohomologyResult {
    pub dims: Vec<usize>,
    /// `ker d_k / im d_{k-1}` with harmonic representatives when a metric
    /// is present.
    pub quotients: Vec<Quotient<Rational>>,
    pub harmonic: Option<Vec<Vec<FormVector<Rational>>>>,
    /// Harmonic `(p, q)` dimensions (unimodular Kähler models).
    pub bigraded: Option<BigradedTable>,
    /// `∂̄`-cohomology dimensions (integrable `J`).
    pub dolbeault: Option<BigradedTable>,
}

impl CohomologyResult {
    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }
}

/// Which optional parts of [`cohomology_with`] to compute.
#[derive(Debug, Clone, Copy, Default)]
pub struct CohomologyOptions {
    pub harmonic: bool,
    pub bigraded: bool,
}

/// The CE complex; fails on presentations violating Jacobi.
pub fn build_complex(p: &Presentation) -> Result<DifferentialComplex> {
    let jac = p.validate_jacobi();
    if let Some(w) = jac.witness {
        return Err(Error::Model(format!("bracket violates Jacobi at {w}")));
    }
    let d = p.differential();
    if let Some(r) = d.compose(&d).first_nonzero() {
        return Err(Error::InternalConsistency(format!(
            "d squared is nonzero in degree {} although Jacobi holds",
            r.degree
        )));
    }
    let split = match p.complex_structure() {
        Some(j) => {
            let big = Bigrading::new(&p.exterior(), j)?;
            split_differential(p, &big).ok()
        }
        None => None,
    };
    Ok(DifferentialComplex { d, split })
}

/// `∂ = Σ π^{p+1,q} d π^{p,q}` and `∂̄ = Σ π^{p,q+1} d π^{p,q}`; fails if
/// `d` has components of any other type.
pub fn split_differential(p: &Presentation, big: &Bigrading) -> Result<SplitDifferential> {
    if let Some(w) = p.bigrading_defect(big) {
        return Err(Error::IntegrabilityViolation(w.to_string()));
    }
    let d = p.differential().complexify();
    let m = big.half_rank();
    let dims = d.dims().to_vec();
    let mut partial = GradedOperator::zero(dims.clone(), 1);
    let mut partial_bar = GradedOperator::zero(dims, 1);
    for pp in 0..=m {
        for q in 0..=m {
            let src = big.graded_projector(pp, q);
            let piece = d.compose(&src);
            partial = partial.add(&big.graded_projector(pp + 1, q).compose(&piece));
            partial_bar = partial_bar.add(&big.graded_projector(pp, q + 1).compose(&piece));
        }
    }
    let split = SplitDifferential { partial, partial_bar };
    if split.partial.add(&split.partial_bar) != d {
        return Err(Error::InternalConsistency("d differs from its type components".into()));
    }
    Ok(split)
}

fn kernel_image<S: Scalar>(d: &GradedOperator<S>, k: usize) -> (Subspace<S>, Subspace<S>) {
    let ker = d.block(k).kernel();
    let im = if k == 0 {
        Subspace::zero(d.dims()[0])
    } else {
        d.block(k - 1).column_space()
    };
    (ker, im)
}

/// `dim ker d_k - rank d_{k-1}` for every degree.
pub fn betti_numbers<S: Scalar>(d: &GradedOperator<S>) -> Vec<usize> {
    (0..d.dims().len())
        .map(|k| {
            let rank_out = d.block(k).rank();
            let rank_in = if k == 0 { 0 } else { d.block(k - 1).rank() };
            d.dims()[k] - rank_out - rank_in
        })
        .collect()
}

pub fn cohomology(p: &Presentation) -> Result<CohomologyResult> {
    cohomology_with(
        p,
        CohomologyOptions {
            harmonic: true,
            bigraded: true,
        },
    )
}

/// Cohomology with the optional parts that the model's data allows.
/// `bigraded` requires an integrable `J`; the harmonic table additionally
/// needs a Kähler model.
pub fn cohomology_with(p: &Presentation, opts: CohomologyOptions) -> Result<CohomologyResult> {
    let complex = build_complex(p)?;
    let d = &complex.d;
    let dims = betti_numbers(d);
    let complex_dims = betti_numbers(&d.complexify());
    if complex_dims != dims {
        return Err(Error::InternalConsistency(
            "real and complex cohomology dimensions differ".into(),
        ));
    }
    let ext = p.exterior();
    let harmonic = match (opts.harmonic, p.metric()) {
        (true, Some(g)) => Some(real_harmonic_basis(&ext, d, g)?),
        _ => None,
    };
    let mut quotients = Vec::with_capacity(dims.len());
    for k in 0..dims.len() {
        let (ker, im) = kernel_image(d, k);
        let q = match &harmonic {
            Some(h) => Quotient::with_representatives(&ker, &im, h[k].iter().map(|f| f.coeffs.clone()).collect())?,
            None => Quotient::new(&ker, &im)?,
        };
        quotients.push(q);
    }
    let (mut bigraded, mut dolbeault) = (None, None);
    if opts.bigraded {
        let j = p
            .complex_structure()
            .ok_or_else(|| Error::IncompleteModel("J (needed for the bigraded table)".into()))?;
        let big = Bigrading::new(&ext, j)?;
        let split = complex
            .split
            .clone()
            .ok_or_else(|| Error::IntegrabilityViolation(p.bigrading_defect(&big).map(|w| w.to_string()).unwrap_or_default()))?;
        dolbeault = Some(dolbeault_dims(&big, &split.partial_bar));
        let kahler = p.metric().is_some() && p.validate_kahler().map(|v| v.passed).unwrap_or(false);
        let unimodular = p.check_unimodular().map(|v| v.passed).unwrap_or(false);
        if kahler && unimodular {
            let pkg = HermitianPackage::new(p)?;
            bigraded = Some(harmonic_bigraded(&pkg)?.0);
        }
    }
    Ok(CohomologyResult {
        dims,
        quotients,
        harmonic,
        bigraded,
        dolbeault,
    })
}

/// Kernel of the real Laplacian, one normalized basis per degree.
fn real_harmonic_basis(
    ext: &ExteriorAlgebra,
    d: &GradedOperator<Rational>,
    g: &Matrix<Rational>,
) -> Result<Vec<Vec<FormVector<Rational>>>> {
    let dual = crate::exterior::hodge::dual_metric(g)?;
    let grams = crate::exterior::hodge::form_grams(ext, &dual);
    let dd = gram_adjoint(d, &grams)?;
    let delta = d.anticommutator(&dd);
    Ok((0..=ext.rank())
        .map(|k| {
            delta
                .block(k)
                .kernel()
                .basis()
                .iter()
                .map(|v| FormVector::new(k, normalize_leading(v)))
                .collect()
        })
        .collect())
}

/// `dim H^{p,q}_{∂̄}` via ranks of `∂̄` restricted to each type.
pub fn dolbeault_dims(big: &Bigrading, partial_bar: &GradedOperator<GaussianRational>) -> BigradedTable {
    let m = big.half_rank();
    let restricted_rank = |p: usize, q: usize| -> (usize, usize) {
        let proj = big.projector(p, q).expect("in range");
        let basis = proj.column_space();
        if basis.dim() == 0 {
            return (0, 0);
        }
        let b = basis.to_matrix();
        (basis.dim(), partial_bar.block(p + q).mul(&b).rank())
    };
    let mut entries = vec![vec![0; m + 1]; m + 1];
    for p in 0..=m {
        for q in 0..=m {
            let (dim, rank_out) = restricted_rank(p, q);
            let rank_in = if q == 0 { 0 } else { restricted_rank(p, q - 1).1 };
            entries[p][q] = dim - rank_out - rank_in;
        }
    }
    BigradedTable { m, entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::presets::{abelian, affine_plane, euclidean_flat, kodaira_thurston};

    #[test]
    fn corpus_dimensions() {
        assert_eq!(cohomology(&abelian(1)).unwrap().dims, vec![1, 2, 1]);
        let kt = cohomology_with(&kodaira_thurston(), CohomologyOptions::default()).unwrap();
        assert_eq!(kt.dims, vec![1, 3, 4, 3, 1]);
        assert_eq!(kt.euler_characteristic(), 0);
        let aff = cohomology(&affine_plane()).unwrap();
        assert_eq!(aff.dims, vec![1, 1, 0]);
        let e2 = cohomology(&euclidean_flat()).unwrap();
        assert_eq!(e2.dims, vec![1, 2, 2, 2, 1]);
    }

    #[test]
    fn abelian_bigraded_tables_are_binomial() {
        for m in 1..=3usize {
            let res = cohomology(&abelian(m)).unwrap();
            let table = res.bigraded.unwrap();
            let dol = res.dolbeault.unwrap();
            for p in 0..=m {
                for q in 0..=m {
                    let expected = binomial(m, p) * binomial(m, q);
                    assert_eq!(table.get(p, q), expected);
                    assert_eq!(dol.get(p, q), expected);
                }
            }
            for k in 0..=2 * m {
                assert_eq!(table.total(k), res.dims[k]);
            }
        }
    }

    #[test]
    fn euclidean_flat_tables_sum_to_betti() {
        let res = cohomology(&euclidean_flat()).unwrap();
        let table = res.bigraded.unwrap();
        for k in 0..=4 {
            assert_eq!(table.total(k), res.dims[k]);
        }
    }

    #[test]
    fn harmonic_representatives_span_the_quotients() {
        let res = cohomology(&euclidean_flat()).unwrap();
        let h = res.harmonic.unwrap();
        for (k, q) in res.quotients.iter().enumerate() {
            assert_eq!(h[k].len(), q.dim());
        }
    }

    #[test]
    fn bigraded_requires_complex_structure() {
        let err = cohomology(&kodaira_thurston()).unwrap_err();
        assert!(matches!(err, Error::IncompleteModel(_)));
    }

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }
}
