use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SymplecticData;
use crate::algebroid::Presentation;
use crate::error::{Error, Result};
use crate::exterior::FormVector;
use crate::linalg::Matrix;
use crate::scalar::{integer, Rational};

const PERTURBATION_SEED: u64 = 0x1f2e_3d4c;
const PERTURBATIONS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    Symmetric,
    Skew,
    /// The zero matrix, which is both.
    Both,
    Neither,
}

impl Symmetry {
    fn classify(m: &Matrix<Rational>) -> Self {
        let t = m.transpose();
        match (t == *m, t == m.neg()) {
            (true, true) => Symmetry::Both,
            (true, false) => Symmetry::Symmetric,
            (false, true) => Symmetry::Skew,
            (false, false) => Symmetry::Neither,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Symmetry::Symmetric => "symmetric",
            Symmetry::Skew => "skew",
            Symmetry::Both => "zero",
            Symmetry::Neither => "neither",
        }
    }
}

/// `I([α], [β]) = ∫ ω^k ∧ α ∧ β` on `H^{m-k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingDegree {
    pub k: usize,
    pub degree: usize,
    pub matrix: Matrix<Rational>,
    pub rank: usize,
    pub nondegenerate: bool,
    pub symmetry: Symmetry,
    /// `I^T = (-1)^{(m-k)^2} I`.
    pub sign_law_holds: bool,
    /// Value unchanged when representatives move by exact forms.
    pub well_defined: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingReport {
    pub m: usize,
    /// The integrating section used, normalized against `ω^m/m!`.
    pub eta: Rational,
    pub degrees: Vec<PairingDegree>,
}

impl PairingReport {
    pub fn at_degree(&self, degree: usize) -> Option<&PairingDegree> {
        self.degrees.iter().find(|d| d.degree == degree)
    }
}

fn pairing_matrix(
    p: &Presentation,
    data: &SymplecticData,
    k: usize,
    reps: &[Vec<Rational>],
) -> Result<Matrix<Rational>> {
    let degree = data.m - k;
    let omega_k = data.ext.wedge_power(&data.omega, k);
    let forms: Vec<FormVector<Rational>> = reps.iter().map(|v| FormVector::new(degree, v.clone())).collect();
    let mut out = Matrix::zeros(forms.len(), forms.len());
    for (a, fa) in forms.iter().enumerate() {
        let left = data.ext.wedge(&omega_k, fa);
        for (b, fb) in forms.iter().enumerate() {
            out[(a, b)] = p.integrate(&data.ext.wedge(&left, fb))?;
        }
    }
    Ok(out)
}

/// The pairing on every `H^{m-k}`, with representatives perturbed by
/// seeded random exact forms to confirm independence of the choice.
pub fn intersection_pairing(p: &Presentation) -> Result<PairingReport> {
    let uni = p.check_unimodular()?;
    if !uni.passed {
        return Err(Error::NonUnimodular(format!(
            "the pairing depends on representatives without Stokes; witness {}",
            uni.witness.map(|w| w.to_string()).unwrap_or_default()
        )));
    }
    let p = p.normalize_integrating_section()?;
    let data = SymplecticData::new(&p)?;
    let m = data.m;
    let mut rng = ChaCha8Rng::seed_from_u64(PERTURBATION_SEED);
    let mut degrees = Vec::with_capacity(m + 1);
    for k in 0..=m {
        let degree = m - k;
        let quotient = &data.cohomology[degree];
        let reps = quotient.representatives().to_vec();
        let matrix = pairing_matrix(&p, &data, k, &reps)?;
        let mut well_defined = true;
        if degree > 0 {
            let d_prev = data.d.block(degree - 1);
            for _ in 0..PERTURBATIONS {
                let moved: Vec<Vec<Rational>> = reps
                    .iter()
                    .map(|v| {
                        let beta: Vec<Rational> = (0..d_prev.cols()).map(|_| integer(rng.gen_range(-3..=3))).collect();
                        let exact = d_prev.apply(&beta);
                        v.iter().zip(exact).map(|(x, e)| x.clone() + e).collect()
                    })
                    .collect();
                if pairing_matrix(&p, &data, k, &moved)? != matrix {
                    well_defined = false;
                }
            }
        }
        if !well_defined {
            return Err(Error::InternalConsistency(format!(
                "pairing on H^{degree} changed under exact perturbation on a unimodular model"
            )));
        }
        let rank = matrix.rank();
        let symmetry = Symmetry::classify(&matrix);
        let sign_law_holds = if degree % 2 == 0 {
            matches!(symmetry, Symmetry::Symmetric | Symmetry::Both)
        } else {
            matches!(symmetry, Symmetry::Skew | Symmetry::Both)
        };
        degrees.push(PairingDegree {
            k,
            degree,
            nondegenerate: rank == quotient.dim(),
            rank,
            symmetry,
            sign_law_holds,
            well_defined,
            matrix,
        });
    }
    let eta = p.eta().cloned().unwrap_or_else(Rational::zero);
    Ok(PairingReport { m, eta, degrees })
}

/// One odd degree: its dimension and, when the pairing reaches it, whether
/// the pairing is nondegenerate there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddDegree {
    pub degree: usize,
    pub dim: usize,
    pub nondegenerate: Option<bool>,
}

impl OddDegree {
    /// A nondegenerate skew form forces even dimension.
    pub fn consistent(&self) -> bool {
        self.nondegenerate != Some(true) || self.dim.is_multiple_of(2)
    }

    /// Odd dimension with a degenerate pairing.
    pub fn contrapositive(&self) -> bool {
        self.dim % 2 == 1 && self.nondegenerate == Some(false)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiEvennessReport {
    pub hodge_admissible: bool,
    pub odd_degrees: Vec<OddDegree>,
    pub all_even: bool,
    pub passed: bool,
}

pub fn betti_evenness_check(p: &Presentation) -> Result<BettiEvennessReport> {
    let pairing = intersection_pairing(p)?;
    let dims = crate::cohomology::betti_numbers(&p.differential());
    let odd_degrees: Vec<OddDegree> = (1..dims.len())
        .step_by(2)
        .map(|degree| OddDegree {
            degree,
            dim: dims[degree],
            nondegenerate: pairing.at_degree(degree).map(|d| d.nondegenerate),
        })
        .collect();
    Ok(BettiEvennessReport {
        hodge_admissible: p.check_hodge_admissible().passed,
        all_even: odd_degrees.iter().all(|d| d.dim % 2 == 0),
        passed: odd_degrees.iter().all(OddDegree::consistent),
        odd_degrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::presets::{abelian, affine_plane, kodaira_thurston};

    #[test]
    fn abelian_plane_pairings() {
        let r = intersection_pairing(&abelian(1)).unwrap();
        let h0 = r.at_degree(0).unwrap();
        assert_eq!(h0.matrix, Matrix::from_i64_rows(&[&[1]]));
        let h1 = r.at_degree(1).unwrap();
        assert_eq!(h1.matrix, Matrix::from_i64_rows(&[&[0, 1], &[-1, 0]]));
        assert_eq!(h1.symmetry, Symmetry::Skew);
    }

    #[test]
    fn kt_pairing_is_degenerate_in_degree_one() {
        let r = intersection_pairing(&kodaira_thurston()).unwrap();
        let h1 = r.at_degree(1).unwrap();
        assert!(h1.rank < 3);
        assert!(!h1.nondegenerate);
        let e = betti_evenness_check(&kodaira_thurston()).unwrap();
        assert!(e.odd_degrees[0].contrapositive());
        assert!(e.passed);
        assert!(!e.all_even);
    }

    #[test]
    fn sign_law_on_abelian_models() {
        for m in 1..=3 {
            let r = intersection_pairing(&abelian(m)).unwrap();
            assert!(r.degrees.iter().all(|d| d.sign_law_holds && d.nondegenerate));
            let e = betti_evenness_check(&abelian(m)).unwrap();
            assert!(e.passed && e.all_even);
        }
    }

    #[test]
    fn affine_pairing_is_refused() {
        assert!(matches!(intersection_pairing(&affine_plane()), Err(Error::NonUnimodular(_))));
    }
}
