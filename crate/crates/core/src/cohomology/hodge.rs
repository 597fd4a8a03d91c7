use num_traits::Zero;

use crate::algebroid::{Presentation, Verdict};
use crate::cohomology::{gram_adjoint, hermitian_product, split_differential, BigradedTable};
use crate::error::{Error, Result};
use crate::exterior::hodge::{dual_metric, form_grams, hodge_star};
use crate::exterior::{Bigrading, ExteriorAlgebra, FormVector, GradedOperator, StarOperator};
use crate::linalg::{normalize_leading, Matrix, Quotient, Subspace};
use crate::scalar::{GaussianRational, Rational};

type C = GaussianRational;

/// Complexified operators of a model with metric, integrable `J` and `ω`.
#[derive(Debug, Clone)]
pub struct HermitianPackage {
    pub ext: ExteriorAlgebra,
    pub big: Bigrading,
    pub grams: Vec<Matrix<C>>,
    pub d: GradedOperator<C>,
    /// Gram adjoint of `d`.
    pub d_dag: GradedOperator<C>,
    pub partial: GradedOperator<C>,
    pub partial_bar: GradedOperator<C>,
    pub partial_dag: GradedOperator<C>,
    pub partial_bar_dag: GradedOperator<C>,
    pub star_h: StarOperator<C>,
    pub unimodular: Verdict,
}

impl HermitianPackage {
    pub fn new(p: &Presentation) -> Result<Self> {
        let g = p.metric().ok_or_else(|| Error::IncompleteModel("metric".into()))?;
        let j = p
            .complex_structure()
            .ok_or_else(|| Error::IncompleteModel("J".into()))?;
        let ext = p.exterior();
        let big = Bigrading::new(&ext, j)?;
        let split = split_differential(p, &big)?;
        let dual = dual_metric(g)?;
        let grams: Vec<Matrix<C>> = form_grams(&ext, &dual).iter().map(Matrix::complexify).collect();
        let d = p.differential().complexify();
        let d_dag = gram_adjoint(&d, &grams)?;
        let partial_dag = gram_adjoint(&split.partial, &grams)?;
        let partial_bar_dag = gram_adjoint(&split.partial_bar, &grams)?;
        let vol = p.volume_coefficient()?;
        if vol.is_zero() {
            return Err(Error::Degenerate("omega is degenerate".into()));
        }
        let star_h = hodge_star(&ext, g, &vol)?.map(crate::scalar::complexify);
        let unimodular = match p.check_unimodular() {
            Ok(v) => v,
            Err(Error::IncompleteModel(_)) => Verdict::fail(crate::algebroid::Witness::new(
                vec![],
                "",
                "no integrating section",
            )),
            Err(e) => return Err(e),
        };
        Ok(Self {
            ext,
            big,
            grams,
            d,
            d_dag,
            partial: split.partial,
            partial_bar: split.partial_bar,
            partial_dag,
            partial_bar_dag,
            star_h,
            unimodular,
        })
    }

    pub fn half_rank(&self) -> usize {
        self.big.half_rank()
    }

    /// `Δ = d d† + d† d`
    pub fn delta(&self) -> GradedOperator<C> {
        self.d.anticommutator(&self.d_dag)
    }

    pub fn delta_partial(&self) -> GradedOperator<C> {
        self.partial.anticommutator(&self.partial_dag)
    }

    pub fn delta_partial_bar(&self) -> GradedOperator<C> {
        self.partial_bar.anticommutator(&self.partial_bar_dag)
    }

    /// `-⋆ d ⋆`, the adjoint through the star when Stokes holds.
    pub fn d_dag_by_star(&self) -> GradedOperator<C> {
        self.star_h.conjugate(&self.d).scale(&-C::from(Rational::from_integer(1.into())))
    }
}

/// Laplacians and the two routes to `d†`.
#[derive(Debug, Clone)]
pub struct Laplacians {
    pub d_dag: GradedOperator<C>,
    pub d_dag_star: GradedOperator<C>,
    pub partial_dag: GradedOperator<C>,
    pub partial_bar_dag: GradedOperator<C>,
    pub delta: GradedOperator<C>,
    pub delta_partial: GradedOperator<C>,
    pub delta_partial_bar: GradedOperator<C>,
    pub routes_agree: bool,
    /// Set when the star route differs from the Gram adjoint, which happens
    /// exactly when Stokes fails.
    pub diagnostic: Option<String>,
}

pub fn laplacians(p: &Presentation) -> Result<Laplacians> {
    let pkg = HermitianPackage::new(p)?;
    let kahler = p.validate_kahler()?;
    if !kahler.passed {
        return Err(Error::Model(format!(
            "Laplacian identities need a Kähler model: {}",
            kahler.witness.map(|w| w.to_string()).unwrap_or_default()
        )));
    }
    let star = pkg.d_dag_by_star();
    let routes_agree = star == pkg.d_dag;
    let diagnostic = match (routes_agree, pkg.unimodular.passed) {
        (true, _) => None,
        (false, false) => Some(format!(
            "star formula differs from the Gram adjoint on a non-unimodular model; Stokes witness {}",
            pkg.unimodular.witness.as_ref().map(|w| w.to_string()).unwrap_or_default()
        )),
        (false, true) => {
            return Err(Error::InternalConsistency(
                "star formula and Gram adjoint disagree on a unimodular model".into(),
            ))
        }
    };
    Ok(Laplacians {
        delta: pkg.delta(),
        delta_partial: pkg.delta_partial(),
        delta_partial_bar: pkg.delta_partial_bar(),
        d_dag: pkg.d_dag,
        d_dag_star: star,
        partial_dag: pkg.partial_dag,
        partial_bar_dag: pkg.partial_bar_dag,
        routes_agree,
        diagnostic,
    })
}

/// Harmonic bases indexed `[p][q]`.
pub type BigradedBases = Vec<Vec<Vec<FormVector<C>>>>;

/// Harmonic `(p, q)` dimensions `dim(ker Δ ∩ Λ^{p,q})` with bases.
pub fn harmonic_bigraded(pkg: &HermitianPackage) -> Result<(BigradedTable, BigradedBases)> {
    if !pkg.unimodular.passed {
        return Err(Error::NonUnimodular(format!(
            "harmonic types need Stokes; witness {}",
            pkg.unimodular.witness.as_ref().map(|w| w.to_string()).unwrap_or_default()
        )));
    }
    let m = pkg.half_rank();
    let delta = pkg.delta();
    for p in 0..=m {
        for q in 0..=m {
            let pr = pkg.big.graded_projector(p, q);
            if !delta.commutator(&pr).is_zero() {
                return Err(Error::InternalConsistency(format!(
                    "Laplacian does not preserve type ({p},{q})"
                )));
            }
        }
    }
    let mut entries = vec![vec![0; m + 1]; m + 1];
    let mut bases = vec![vec![Vec::new(); m + 1]; m + 1];
    for p in 0..=m {
        for q in 0..=m {
            let k = p + q;
            let proj = pkg.big.projector(p, q).expect("in range");
            let harmonic = delta.block(k).kernel();
            let typed = harmonic.image_under(proj);
            let inside = typed.intersection(&harmonic)?;
            entries[p][q] = inside.dim();
            bases[p][q] = inside
                .basis()
                .iter()
                .map(|v| FormVector::new(k, normalize_leading(v)))
                .collect();
        }
    }
    Ok((BigradedTable { m, entries }, bases))
}

/// One degree of the orthogonal decomposition
/// `Λ^k = (ker d ∩ ker d†) ⊕ im d ⊕ im d†`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeDecomposition {
    pub harmonic: usize,
    pub exact: usize,
    pub coexact: usize,
    pub total: usize,
    pub orthogonal: bool,
    pub spans: bool,
    pub laplacian_kernel_matches: bool,
    pub unique_representatives: bool,
}

impl DegreeDecomposition {
    pub fn holds(&self) -> bool {
        self.orthogonal && self.spans && self.laplacian_kernel_matches && self.unique_representatives
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    pub degrees: Vec<DegreeDecomposition>,
    /// `d(ker d†) ⊆ ker d†`, needed for `(ker d†, d)` to be a complex.
    pub adjoint_kernel_is_subcomplex: bool,
    /// The inclusion `(ker d†, d) → (Λ, d)` is a quasi-isomorphism (only
    /// meaningful when it is a subcomplex).
    pub quasi_isomorphism: Option<bool>,
}

impl DecompositionReport {
    pub fn holds(&self) -> bool {
        self.degrees.iter().all(DegreeDecomposition::holds)
    }
}

fn mutually_orthogonal(gram: &Matrix<Rational>, a: &Subspace<Rational>, b: &Subspace<Rational>) -> bool {
    a.basis()
        .iter()
        .all(|x| b.basis().iter().all(|y| hermitian_product(gram, x, y).is_zero()))
}

/// Finite-dimensional Hodge decomposition with respect to the metric Gram
/// products; requires a unimodular model.
pub fn hodge_decomposition(p: &Presentation) -> Result<DecompositionReport> {
    let g = p.metric().ok_or_else(|| Error::IncompleteModel("metric".into()))?;
    let uni = p.check_unimodular()?;
    if !uni.passed {
        return Err(Error::NonUnimodular(format!(
            "the adjoint calculus needs Stokes; witness {}",
            uni.witness.map(|w| w.to_string()).unwrap_or_default()
        )));
    }
    let ext = p.exterior();
    let grams = form_grams(&ext, &dual_metric(g)?);
    let d = p.differential();
    let d_dag = gram_adjoint(&d, &grams)?;
    let delta = d.anticommutator(&d_dag);
    let n = ext.rank() + 1;
    let mut degrees = Vec::with_capacity(n);
    let mut adjoint_kernels = Vec::with_capacity(n);
    for k in 0..n {
        let ker_d = d.block(k).kernel();
        let ker_dd = d_dag.block(k).kernel();
        let harmonic = ker_d.intersection(&ker_dd)?;
        let exact = if k == 0 { Subspace::zero(ext.dim(0)) } else { d.block(k - 1).column_space() };
        let coexact = if k + 1 < n { d_dag.block(k + 1).column_space() } else { Subspace::zero(ext.dim(k)) };
        let gram = &grams[k];
        let orthogonal = mutually_orthogonal(gram, &harmonic, &exact)
            && mutually_orthogonal(gram, &harmonic, &coexact)
            && mutually_orthogonal(gram, &exact, &coexact);
        let sum = harmonic.sum(&exact)?.sum(&coexact)?;
        let spans = sum.dim() == ext.dim(k) && harmonic.dim() + exact.dim() + coexact.dim() == ext.dim(k);
        let laplacian_kernel_matches = delta.block(k).kernel().same_as(&harmonic);
        let reps: Vec<Vec<Rational>> = harmonic.basis().to_vec();
        let unique_representatives = Quotient::with_representatives(&ker_d, &exact, reps).is_ok();
        degrees.push(DegreeDecomposition {
            harmonic: harmonic.dim(),
            exact: exact.dim(),
            coexact: coexact.dim(),
            total: ext.dim(k),
            orthogonal,
            spans,
            laplacian_kernel_matches,
            unique_representatives,
        });
        adjoint_kernels.push(ker_dd);
    }
    let adjoint_kernel_is_subcomplex = (0..n.saturating_sub(1))
        .all(|k| adjoint_kernels[k].image_under(d.block(k)).is_subspace_of(&adjoint_kernels[k + 1]));
    let quasi_isomorphism = if adjoint_kernel_is_subcomplex {
        Some(subcomplex_quasi_isomorphism(&d, &adjoint_kernels)?)
    } else {
        None
    };
    Ok(DecompositionReport {
        degrees,
        adjoint_kernel_is_subcomplex,
        quasi_isomorphism,
    })
}

/// Whether the inclusion of a `d`-stable family of subspaces induces an
/// isomorphism on cohomology.
pub(crate) fn subcomplex_quasi_isomorphism<S: crate::scalar::Scalar>(
    d: &GradedOperator<S>,
    sub: &[Subspace<S>],
) -> Result<bool> {
    let n = sub.len();
    for k in 0..n {
        let sub_ker = sub[k].kernel_within(d.block(k));
        let sub_im = if k == 0 {
            Subspace::zero(sub[0].ambient_dim())
        } else {
            sub[k - 1].image_under(d.block(k - 1))
        };
        let full_ker = d.block(k).kernel();
        let full_im = if k == 0 {
            Subspace::zero(sub[0].ambient_dim())
        } else {
            d.block(k - 1).column_space()
        };
        let src = Quotient::new(&sub_ker, &sub_im)?;
        let dst = Quotient::new(&full_ker, &full_im)?;
        let inclusion = Matrix::identity(sub[k].ambient_dim());
        let map = crate::linalg::induced_map_between(&inclusion, &src, &dst)?;
        if src.dim() != dst.dim() || map.rank() != dst.dim() {
            return Ok(false);
        }
    }
    Ok(true)
}
