//! Hard Lefschetz, the dd*-lemma, symplectic harmonic forms, the Kähler
//! identities and the intersection pairing.

mod identities;
mod pairing;

pub use identities::{kahler_identity_suite, IdentityEntry, IdentityReport, IdentityStatus};
pub use pairing::{betti_evenness_check, intersection_pairing, BettiEvennessReport, PairingDegree, PairingReport, Symmetry};

use crate::algebroid::Presentation;
use crate::cohomology::{cohomology_with, subcomplex_quasi_isomorphism, CohomologyOptions};
use crate::error::{Error, Result};
use crate::exterior::symplectic::{half_rank, lefschetz_triple, symplectic_star};
use crate::exterior::{ExteriorAlgebra, FormVector, GradedOperator, LefschetzTriple, StarOperator};
use crate::linalg::{induced_map_between, normalize_leading, Quotient, Subspace};
use crate::scalar::{integer, Rational};

/// Everything a symplectic check needs, computed once.
#[derive(Debug, Clone)]
pub struct SymplecticData {
    pub ext: ExteriorAlgebra,
    pub m: usize,
    pub omega: FormVector<Rational>,
    pub d: GradedOperator<Rational>,
    pub triple: LefschetzTriple<Rational>,
    pub star: StarOperator<Rational>,
    /// Brylinski codifferential `(-1)^{k+1} ⋆_ω d ⋆_ω`.
    pub d_star: GradedOperator<Rational>,
    /// Cohomology per degree; harmonic representatives when a metric is present.
    pub cohomology: Vec<Quotient<Rational>>,
}

impl SymplecticData {
    pub fn new(p: &Presentation) -> Result<Self> {
        let ext = p.exterior();
        let m = half_rank(&ext)?;
        let omega = p
            .omega()
            .ok_or_else(|| Error::IncompleteModel("omega".into()))?
            .clone();
        let closed = p.validate_omega_closed()?;
        if !closed.passed {
            return Err(Error::Model(format!(
                "omega is not closed: {}",
                closed.witness.map(|w| w.to_string()).unwrap_or_default()
            )));
        }
        let triple = lefschetz_triple(&ext, &omega)?;
        let star = symplectic_star(&ext, &omega)?;
        let coh = cohomology_with(
            p,
            CohomologyOptions {
                harmonic: true,
                bigraded: false,
            },
        )?;
        let d = p.differential();
        let d_star = brylinski(&star, &d);
        Ok(Self {
            ext,
            m,
            omega,
            d,
            triple,
            star,
            d_star,
            cohomology: coh.quotients,
        })
    }

    fn image_of_d(&self, k: usize) -> Subspace<Rational> {
        if k == 0 {
            Subspace::zero(self.ext.dim(0))
        } else {
            self.d.block(k - 1).column_space()
        }
    }

    fn image_of_d_star(&self, k: usize) -> Subspace<Rational> {
        if k >= self.ext.rank() {
            Subspace::zero(self.ext.dim(k))
        } else {
            self.d_star.block(k + 1).column_space()
        }
    }
}

/// `(-1)^{k+1} ⋆ d ⋆` on `Λ^k`.
pub fn brylinski(star: &StarOperator<Rational>, d: &GradedOperator<Rational>) -> GradedOperator<Rational> {
    star.conjugate(d)
        .scale_by_degree(|k| if k % 2 == 0 { integer(-1) } else { integer(1) })
}

/// `[L]^k : H^{m-k} → H^{m+k}` for one `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LefschetzStep {
    pub k: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub iso: bool,
    /// A class in the kernel (or the source when ranks differ otherwise).
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HLReport {
    pub m: usize,
    pub steps: Vec<LefschetzStep>,
    pub passed: bool,
}

impl HLReport {
    pub fn first_failure(&self) -> Option<&LefschetzStep> {
        self.steps.iter().find(|s| !s.iso)
    }
}

pub fn hard_lefschetz_check(p: &Presentation) -> Result<HLReport> {
    hard_lefschetz_on(&SymplecticData::new(p)?)
}

pub fn hard_lefschetz_on(data: &SymplecticData) -> Result<HLReport> {
    let m = data.m;
    let mut steps = Vec::with_capacity(m + 1);
    for k in 0..=m {
        let lk = data.triple.l.pow(k);
        let src = &data.cohomology[m - k];
        let dst = &data.cohomology[m + k];
        let map = induced_map_between(lk.block(m - k), src, dst)?;
        let rank = map.rank();
        let iso = rank == src.dim() && rank == dst.dim();
        let witness = if iso {
            None
        } else {
            let kernel = map.kernel();
            Some(match kernel.basis().first() {
                Some(coords) => {
                    let rep = normalize_leading(&src.lift(coords));
                    format!("[{}]", FormVector::new(m - k, rep).display(&data.ext))
                }
                None => format!("cokernel of dimension {}", dst.dim() - rank),
            })
        };
        steps.push(LefschetzStep {
            k,
            source_dim: src.dim(),
            target_dim: dst.dim(),
            rank,
            iso,
            witness,
        });
    }
    let passed = steps.iter().all(|s| s.iso);
    Ok(HLReport { m, steps, passed })
}

/// Dimensions of `im d ∩ ker d*`, `im d* ∩ ker d` and `im(d d*)` in one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DdStarDegree {
    pub k: usize,
    pub exact_coclosed: usize,
    pub coexact_closed: usize,
    pub image_d_dstar: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DdStarReport {
    pub degrees: Vec<DdStarDegree>,
    pub passed: bool,
}

pub fn ddstar_lemma_check(p: &Presentation) -> Result<DdStarReport> {
    ddstar_lemma_on(&SymplecticData::new(p)?)
}

pub fn ddstar_lemma_on(data: &SymplecticData) -> Result<DdStarReport> {
    let r = data.ext.rank();
    let mut degrees = Vec::with_capacity(r + 1);
    for k in 0..=r {
        let a = data.image_of_d(k).intersection(&data.d_star.block(k).kernel())?;
        let b = data.image_of_d_star(k).intersection(&data.d.block(k).kernel())?;
        let c = if k == 0 {
            Subspace::zero(data.ext.dim(0))
        } else {
            data.d.block(k - 1).mul(data.d_star.block(k)).column_space()
        };
        degrees.push(DdStarDegree {
            k,
            exact_coclosed: a.dim(),
            coexact_closed: b.dim(),
            image_d_dstar: c.dim(),
            holds: a.same_as(&b) && b.same_as(&c),
        });
    }
    let passed = degrees.iter().all(|d| d.holds);
    Ok(DdStarReport { degrees, passed })
}

/// Whether `(ker d*, d) → (Λ, d)` is a quasi-isomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticHarmonicReport {
    /// Cohomology of the subcomplex, per degree.
    pub sub_dims: Vec<usize>,
    pub dims: Vec<usize>,
    pub passed: bool,
}

pub fn symplectic_harmonic_check(p: &Presentation) -> Result<SymplecticHarmonicReport> {
    symplectic_harmonic_on(&SymplecticData::new(p)?)
}

pub fn symplectic_harmonic_on(data: &SymplecticData) -> Result<SymplecticHarmonicReport> {
    let r = data.ext.rank();
    let kernels: Vec<Subspace<Rational>> = (0..=r).map(|k| data.d_star.block(k).kernel()).collect();
    for k in 0..r {
        if !kernels[k].image_under(data.d.block(k)).is_subspace_of(&kernels[k + 1]) {
            return Err(Error::InternalConsistency(format!(
                "d does not preserve ker d* in degree {k}"
            )));
        }
    }
    let sub_dims = (0..=r)
        .map(|k| {
            let z = kernels[k].kernel_within(data.d.block(k)).dim();
            let b = if k == 0 { 0 } else { kernels[k - 1].image_under(data.d.block(k - 1)).dim() };
            z - b
        })
        .collect();
    let passed = subcomplex_quasi_isomorphism(&data.d, &kernels)?;
    Ok(SymplecticHarmonicReport {
        sub_dims,
        dims: data.cohomology.iter().map(Quotient::dim).collect(),
        passed,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub hard_lefschetz: HLReport,
    pub ddstar: DdStarReport,
    pub symplectic_harmonic: SymplecticHarmonicReport,
    pub verdict: bool,
}

/// Runs the three checks independently; they must agree.
pub fn equivalence_theorem_check(p: &Presentation) -> Result<EquivalenceReport> {
    let data = SymplecticData::new(p)?;
    let hl = hard_lefschetz_on(&data)?;
    let dd = ddstar_lemma_on(&data)?;
    let sh = symplectic_harmonic_on(&data)?;
    if hl.passed != dd.passed || dd.passed != sh.passed {
        return Err(Error::InternalConsistency(format!(
            "equivalent conditions disagree: hard Lefschetz {}, dd*-lemma {}, symplectic harmonic {}",
            hl.passed, dd.passed, sh.passed
        )));
    }
    Ok(EquivalenceReport {
        verdict: hl.passed,
        hard_lefschetz: hl,
        ddstar: dd,
        symplectic_harmonic: sh,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::presets::{abelian, euclidean_flat, kodaira_thurston};

    #[test]
    fn abelian_passes_everything() {
        for m in 1..=3 {
            let r = equivalence_theorem_check(&abelian(m)).unwrap();
            assert!(r.verdict);
            assert_eq!(r.hard_lefschetz.steps.len(), m + 1);
        }
    }

    #[test]
    fn kt_fails_at_first_power_on_e1() {
        let r = equivalence_theorem_check(&kodaira_thurston()).unwrap();
        assert!(!r.verdict);
        let step = r.hard_lefschetz.first_failure().unwrap();
        assert_eq!(step.k, 1);
        assert_eq!((step.source_dim, step.target_dim, step.rank), (3, 3, 2));
        assert_eq!(step.witness.as_deref(), Some("[e^1]"));
    }

    #[test]
    fn euclidean_flat_is_lefschetz() {
        assert!(equivalence_theorem_check(&euclidean_flat()).unwrap().verdict);
    }

    #[test]
    fn brylinski_anticommutes_with_d() {
        for p in [kodaira_thurston(), euclidean_flat()] {
            let data = SymplecticData::new(&p).unwrap();
            assert!(data.d.anticommutator(&data.d_star).is_zero());
            assert!(data.d_star.compose(&data.d_star).is_zero());
        }
    }

    #[test]
    fn requires_omega() {
        let p = Presentation::new(2);
        assert!(matches!(hard_lefschetz_check(&p), Err(Error::IncompleteModel(_))));
    }
}
