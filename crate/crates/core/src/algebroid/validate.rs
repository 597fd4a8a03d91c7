use std::fmt;

use num_traits::Zero;

use crate::algebroid::{AlgebroidPresentation, Presentation};
use crate::error::{Error, Result};
use crate::exterior::{Bigrading, FormVector, MultiIndex};
use crate::scalar::Scalar;

/// First failing basis tuple (1-based) and the nonzero residual there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub tuple: Vec<usize>,
    pub residual: String,
    pub detail: String,
}

impl Witness {
    pub fn new(tuple: Vec<usize>, residual: impl Into<String>, detail: impl Into<String>) -> Self {
        Self {
            tuple,
            residual: residual.into(),
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tuple.is_empty() && self.residual.is_empty() {
            return f.write_str(&self.detail);
        }
        let t: Vec<String> = self.tuple.iter().map(|i| i.to_string()).collect();
        write!(f, "({}) residual {}: {}", t.join(","), self.residual, self.detail)
    }
}

/// Pass/fail with a witness on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub passed: bool,
    pub witness: Option<Witness>,
    pub note: Option<String>,
}

impl Verdict {
    pub fn pass() -> Self {
        Self {
            passed: true,
            witness: None,
            note: None,
        }
    }

    pub fn fail(witness: Witness) -> Self {
        Self {
            passed: false,
            witness: Some(witness),
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    fn from_witness(w: Option<Witness>) -> Self {
        w.map_or_else(Self::pass, Self::fail)
    }
}

/// All model verdicts. `None` marks a check whose input data is absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub jacobi: Verdict,
    pub compatible_triple: Option<Verdict>,
    pub nijenhuis_zero: Option<Verdict>,
    pub omega_closed: Option<Verdict>,
    pub kahler: Option<Verdict>,
    pub unimodular: Option<Verdict>,
    pub elliptic: Verdict,
    pub hodge_admissible: Verdict,
}

impl ValidationReport {
    /// Named verdicts in report order.
    pub fn entries(&self) -> Vec<(&'static str, Option<&Verdict>)> {
        vec![
            ("jacobi", Some(&self.jacobi)),
            ("compatible_triple", self.compatible_triple.as_ref()),
            ("nijenhuis_zero", self.nijenhuis_zero.as_ref()),
            ("omega_closed", self.omega_closed.as_ref()),
            ("kahler", self.kahler.as_ref()),
            ("unimodular", self.unimodular.as_ref()),
            ("elliptic", Some(&self.elliptic)),
            ("hodge_admissible", Some(&self.hodge_admissible)),
        ]
    }

    /// Every check that could run passed.
    pub fn all_passed(&self) -> bool {
        self.entries().iter().all(|(_, v)| v.is_none_or(|v| v.passed))
    }
}

fn vector_display<S: Scalar>(v: &[S]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn one_based(idx: MultiIndex) -> Vec<usize> {
    idx.indices().into_iter().map(|i| i + 1).collect()
}

impl<S: Scalar> AlgebroidPresentation<S> {
    /// Jacobi identity on every basis triple `i < j < k`.
    pub fn validate_jacobi(&self) -> Verdict {
        let r = self.rank();
        for i in 0..r {
            for j in i + 1..r {
                for k in j + 1..r {
                    let (x, y, z) = (self.basis_vector(i), self.basis_vector(j), self.basis_vector(k));
                    let a = self.bracket(&x, &self.bracket(&y, &z));
                    let b = self.bracket(&y, &self.bracket(&z, &x));
                    let c = self.bracket(&z, &self.bracket(&x, &y));
                    let sum: Vec<S> = a
                        .into_iter()
                        .zip(b)
                        .zip(c)
                        .map(|((a, b), c)| a + b + c)
                        .collect();
                    if sum.iter().any(|s| !s.is_zero()) {
                        return Verdict::fail(Witness::new(
                            vec![i + 1, j + 1, k + 1],
                            vector_display(&sum),
                            "cyclic sum of double brackets",
                        ));
                    }
                }
            }
        }
        Verdict::pass()
    }

    /// `g(X, Y) = ω(X, JY)`, `g(JX, JY) = g(X, Y)` and positivity of `g`.
    pub fn validate_compatible_triple(&self) -> Result<Verdict> {
        let g = self.metric().ok_or_else(|| Error::IncompleteModel("metric".into()))?;
        let j = self
            .complex_structure()
            .ok_or_else(|| Error::IncompleteModel("J".into()))?;
        let omega = self.omega_matrix()?;
        let from_omega = omega.mul(j);
        if let Some((a, b, _)) = g.sub(&from_omega).first_nonzero() {
            return Ok(Verdict::fail(Witness::new(
                vec![a + 1, b + 1],
                format!("{} - {}", g[(a, b)], from_omega[(a, b)]),
                "g(e_a, e_b) differs from omega(e_a, J e_b)",
            )));
        }
        let rotated = j.transpose().mul(g).mul(j);
        if let Some((a, b, _)) = g.sub(&rotated).first_nonzero() {
            return Ok(Verdict::fail(Witness::new(
                vec![a + 1, b + 1],
                format!("{} - {}", g[(a, b)], rotated[(a, b)]),
                "g is not J-invariant",
            )));
        }
        if !g.is_hermitian_positive_definite() {
            return Ok(Verdict::fail(Witness::new(vec![], "", "g is not positive definite")));
        }
        // ω(X, Y) = g(X, J⁻¹ Y) with J⁻¹ = -J
        let back = g.mul(&j.neg());
        if back != omega {
            return Err(Error::InternalConsistency(
                "omega is not recovered from g and J^-1".into(),
            ));
        }
        Ok(Verdict::pass())
    }

    /// `N_J(e_i, e_j) = [Je_i, Je_j] - [e_i, e_j] - J([Je_i, e_j] + [e_i, Je_j])`.
    pub fn validate_nijenhuis(&self) -> Result<Verdict> {
        let j = self
            .complex_structure()
            .ok_or_else(|| Error::IncompleteModel("J".into()))?;
        let r = self.rank();
        let cols = j.columns();
        for a in 0..r {
            for b in a + 1..r {
                let (x, y) = (self.basis_vector(a), self.basis_vector(b));
                let jx = &cols[a];
                let jy = &cols[b];
                let t1 = self.bracket(jx, jy);
                let t2 = self.bracket(&x, &y);
                let inner: Vec<S> = self
                    .bracket(jx, &y)
                    .into_iter()
                    .zip(self.bracket(&x, jy))
                    .map(|(p, q)| p + q)
                    .collect();
                let t3 = j.apply(&inner);
                let n: Vec<S> = (0..r)
                    .map(|k| t1[k].clone() - t2[k].clone() - t3[k].clone())
                    .collect();
                if n.iter().any(|c| !c.is_zero()) {
                    return Ok(Verdict::fail(Witness::new(
                        vec![a + 1, b + 1],
                        vector_display(&n),
                        "Nijenhuis tensor on a basis pair",
                    )));
                }
            }
        }
        Ok(Verdict::pass())
    }

    /// `dω = 0`.
    pub fn validate_omega_closed(&self) -> Result<Verdict> {
        let omega = self.omega().ok_or_else(|| Error::IncompleteModel("omega".into()))?;
        let ext = self.exterior();
        if ext.rank() < 3 {
            return Ok(Verdict::pass());
        }
        let d_omega = FormVector::new(3, self.differential().apply(2, &omega.coeffs));
        let w = d_omega
            .coeffs
            .iter()
            .zip(ext.basis(3))
            .find(|(c, _)| !c.is_zero())
            .map(|(c, &idx)| {
                Witness::new(one_based(idx), c.to_string(), format!("d omega = {}", d_omega.display(&ext)))
            });
        Ok(Verdict::from_witness(w))
    }

    /// Compatible triple, vanishing Nijenhuis tensor and `dω = 0`.
    pub fn validate_kahler(&self) -> Result<Verdict> {
        let triple = self.validate_compatible_triple()?;
        if !triple.passed {
            return Ok(prerequisite_failed("compatible_triple", triple));
        }
        let nij = self.validate_nijenhuis()?;
        if !nij.passed {
            return Ok(prerequisite_failed("nijenhuis_zero", nij));
        }
        self.validate_omega_closed()
    }

    /// The anchor has full rank onto the formal base tangent space.
    pub fn check_ellipticity(&self) -> Verdict {
        let n = self.base_dim();
        let rank = self.anchor().rank();
        if rank == n {
            Verdict::pass()
        } else {
            Verdict::fail(Witness::new(
                vec![],
                format!("{}", n - rank),
                format!("anchor rank {rank} < base dimension {n}"),
            ))
        }
    }

    /// `tr ad_{e_i} = Σ_k c_ikk = 0` for every `i`, cross-checked against
    /// the pairing of `dα` with the integrating section for every basis
    /// form of degree `r - 1`.
    pub fn check_unimodular(&self) -> Result<Verdict> {
        let eta = self.eta().ok_or_else(|| Error::IncompleteModel("eta".into()))?;
        let r = self.rank();
        let traces: Vec<S> = (0..r)
            .map(|i| (0..r).fold(S::zero(), |acc, k| acc + self.structure_constant(i, k, k).clone()))
            .collect();
        let trace_ok = traces.iter().all(Zero::is_zero);
        if r == 0 {
            return Ok(Verdict::pass());
        }
        let ext = self.exterior();
        let d = self.differential();
        let stokes = ext.basis(r - 1).iter().enumerate().find_map(|(a, &idx)| {
            let top = d.block(r - 1).column(a);
            let pairing = top[0].clone() * eta.clone();
            (!pairing.is_zero()).then_some((idx, pairing))
        });
        match (trace_ok, stokes) {
            (true, None) => Ok(Verdict::pass()),
            (false, Some((idx, pairing))) => {
                let alpha = ext.basis_form::<S>(idx);
                Ok(Verdict::fail(Witness::new(
                    one_based(idx),
                    pairing.to_string(),
                    format!(
                        "<d({}), eta> != 0; ad traces {}",
                        alpha.display(&ext),
                        vector_display(&traces)
                    ),
                )))
            }
            _ => Err(Error::InternalConsistency(
                "trace criterion and Stokes pairing disagree".into(),
            )),
        }
    }

    /// Elliptic, unimodular, normalizable integrating section and Kähler.
    /// The point base is compact, closed and orientable.
    pub fn check_hodge_admissible(&self) -> Verdict {
        let elliptic = self.check_ellipticity();
        if !elliptic.passed {
            return prerequisite_failed("elliptic", elliptic);
        }
        match self.check_unimodular() {
            Ok(v) if !v.passed => return prerequisite_failed("unimodular", v),
            Err(e) => return missing("unimodular", e),
            Ok(_) => {}
        }
        if let Err(e) = self.normalize_integrating_section() {
            return missing("normalized integrating section", e);
        }
        match self.validate_kahler() {
            Ok(v) if !v.passed => prerequisite_failed("kahler", v),
            Err(e) => missing("kahler", e),
            Ok(_) => Verdict::pass().with_note("point base: compact, closed and orientable"),
        }
    }

    fn optional(&self, v: Result<Verdict>) -> Result<Option<Verdict>> {
        match v {
            Ok(v) => Ok(Some(v)),
            Err(Error::IncompleteModel(_)) => Ok(None),
            Err(e) => Err(e),
        }
    }

    /// Every verdict that the available data allows.
    pub fn validate_generic(&self) -> Result<ValidationReport> {
        Ok(ValidationReport {
            jacobi: self.validate_jacobi(),
            compatible_triple: self.optional(self.validate_compatible_triple())?,
            nijenhuis_zero: self.optional(self.validate_nijenhuis())?,
            omega_closed: self.optional(self.validate_omega_closed())?,
            kahler: self.optional(self.validate_kahler())?,
            unimodular: self.optional(self.check_unimodular())?,
            elliptic: self.check_ellipticity(),
            hodge_admissible: self.check_hodge_admissible(),
        })
    }
}

fn prerequisite_failed(name: &str, v: Verdict) -> Verdict {
    let mut w = v.witness.unwrap_or_else(|| Witness::new(vec![], "", ""));
    w.detail = format!("{name} failed: {}", w.detail);
    Verdict::fail(w)
}

fn missing(name: &str, e: Error) -> Verdict {
    Verdict::fail(Witness::new(vec![], "", format!("{name}: {e}")))
}

impl Presentation {
    /// Integrability through the second route: `d` maps `Λ^{p,q}` into
    /// `Λ^{p+1,q} ⊕ Λ^{p,q+1}`. Returns the first offending component.
    pub fn bigrading_defect(&self, big: &Bigrading) -> Option<Witness> {
        let ext = self.exterior();
        let m = big.half_rank();
        let d = self.differential().complexify();
        for k in 0..self.rank() {
            for p in 0..=m.min(k) {
                let q = k - p;
                let Some(src) = big.projector(p, q) else { continue };
                for (tp, tq) in [(p + 2, q.wrapping_sub(1)), (p.wrapping_sub(1), q + 2)] {
                    let Some(dst) = big.projector(tp, tq) else { continue };
                    let comp = dst.mul(&d.block(k).mul(src));
                    if let Some((row, col, v)) = comp.first_nonzero() {
                        let from = ext.basis(k)[col];
                        let to = ext.basis(k + 1)[row];
                        return Some(Witness::new(
                            one_based(from),
                            v.to_string(),
                            format!("d has a ({tp},{tq}) component from ({p},{q}); lands on {to}"),
                        ));
                    }
                }
            }
        }
        None
    }

    /// Nijenhuis verdict, cross-checked against the bigrading of `d`.
    pub fn validate_nijenhuis_checked(&self) -> Result<Verdict> {
        let v = self.validate_nijenhuis()?;
        let j = self.complex_structure().expect("checked above");
        let big = Bigrading::new(&self.exterior(), j)?;
        let defect = self.bigrading_defect(&big);
        if v.passed != defect.is_none() {
            return Err(Error::InternalConsistency(
                "Nijenhuis tensor and bigrading of d disagree".into(),
            ));
        }
        Ok(v)
    }

    /// Full report, with the Nijenhuis verdict cross-checked.
    pub fn validate(&self) -> Result<ValidationReport> {
        let mut report = self.validate_generic()?;
        if self.complex_structure().is_some() {
            report.nijenhuis_zero = Some(self.validate_nijenhuis_checked()?);
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::presets::{abelian, kodaira_thurston, kodaira_thurston_complex};
    use crate::linalg::Matrix;
    use crate::scalar::integer;

    #[test]
    fn jacobi_on_corpus_and_corruptions() {
        assert!(abelian(2).validate_jacobi().passed);
        assert!(kodaira_thurston().validate_jacobi().passed);
        // adding [e1, e3] = e2 gives e(2) + R, still a Lie algebra
        let mut rotation = kodaira_thurston();
        rotation.set_bracket(0, 2, 1, integer(1)).unwrap();
        assert!(rotation.validate_jacobi().passed);
        let mut broken = kodaira_thurston();
        broken.set_bracket(1, 2, 1, integer(1)).unwrap();
        let v = broken.validate_jacobi();
        assert!(!v.passed);
        assert_eq!(v.witness.unwrap().tuple, vec![1, 2, 3]);
        assert!(!broken.differential().compose(&broken.differential()).is_zero());
    }

    #[test]
    fn compatible_triple_sign_matters() {
        let p = abelian(1);
        assert!(p.validate_compatible_triple().unwrap().passed);
        let neg = p.omega().unwrap().scale(&integer(-1));
        let q = p.clone().with_omega(neg).unwrap();
        assert!(!q.validate_compatible_triple().unwrap().passed);
        assert!(matches!(
            Presentation::new(2).validate_compatible_triple(),
            Err(Error::IncompleteModel(_))
        ));
    }

    #[test]
    fn ellipticity_is_anchor_surjectivity() {
        let p = Presentation::new(2);
        assert!(p.check_ellipticity().passed);
        let one = p.clone().with_anchor(Matrix::from_i64_rows(&[&[1], &[0]])).unwrap();
        assert!(one.check_ellipticity().passed);
        let zero = p.with_anchor(Matrix::zeros(2, 2)).unwrap();
        assert!(!zero.check_ellipticity().passed);
        let deficit = abelian(1).with_anchor(Matrix::zeros(2, 1)).unwrap();
        assert!(!deficit.check_hodge_admissible().passed);
    }

    #[test]
    fn kt_with_split_omega_is_not_closed() {
        let p = kodaira_thurston();
        let ext = p.exterior();
        let omega = ext.form_from_terms(2, &[(&[0, 1], integer(1)), (&[2, 3], integer(1))]);
        let v = p.with_omega(omega).unwrap().validate_omega_closed().unwrap();
        assert!(!v.passed);
        assert_eq!(v.witness.unwrap().tuple, vec![1, 2, 4]);
    }

    #[test]
    fn kt_complex_structure_is_integrable_both_ways() {
        let v = kodaira_thurston_complex().validate_nijenhuis_checked().unwrap();
        assert!(v.passed);
    }

    #[test]
    fn non_integrable_structure_is_caught_both_ways() {
        // [e1, e3] = e1 with the standard J on rank 4
        let p = Presentation::new(4)
            .with_bracket(0, 2, &[(0, integer(1))])
            .unwrap()
            .with_complex_structure(crate::constructions::presets::standard_complex_structure(2))
            .unwrap();
        assert!(p.validate_jacobi().passed);
        let v = p.validate_nijenhuis_checked().unwrap();
        assert!(!v.passed);
    }

    #[test]
    fn normalization_of_standard_rank_four() {
        let p = abelian(2);
        assert_eq!(p.normalize_integrating_section().unwrap().eta(), Some(&integer(1)));
        let doubled = p.with_eta(integer(3)).unwrap();
        assert_eq!(doubled.normalize_integrating_section().unwrap().eta(), Some(&integer(1)));
    }
}
