//! Named models shipped with the crate.

use num_traits::Zero;

use crate::algebroid::Presentation;
use crate::error::Result;
use crate::exterior::symplectic::two_form_from_skew;
use crate::exterior::ExteriorAlgebra;
use crate::linalg::Matrix;
use crate::scalar::{integer, Rational};

/// `J e_{2a} = e_{2a+1}` on a rank `2m` fiber.
pub fn standard_complex_structure(m: usize) -> Matrix<Rational> {
    let r = 2 * m;
    let mut j = Matrix::zeros(r, r);
    for a in 0..m {
        j[(2 * a + 1, 2 * a)] = integer(1);
        j[(2 * a, 2 * a + 1)] = integer(-1);
    }
    j
}

/// `Σ_a e^{2a} ∧ e^{2a+1}`.
pub fn standard_omega(ext: &ExteriorAlgebra) -> crate::exterior::FormVector<Rational> {
    let r = ext.rank();
    let mut om = Matrix::zeros(r, r);
    for a in 0..r / 2 {
        om[(2 * a, 2 * a + 1)] = integer(1);
        om[(2 * a + 1, 2 * a)] = integer(-1);
    }
    two_form_from_skew(ext, &om)
}

/// Equips a rank-`2m` presentation with the standard compatible triple
/// and a unit integrating section.
pub fn with_standard_triple(p: Presentation) -> Result<Presentation> {
    let m = p.rank() / 2;
    let ext = p.exterior();
    p.with_metric(Matrix::identity(2 * m))?
        .with_complex_structure(standard_complex_structure(m))?
        .with_omega(standard_omega(&ext))?
        .with_eta(integer(1))
}

/// Abelian `ℂ^m`: zero bracket, standard triple, point base.
pub fn abelian(m: usize) -> Presentation {
    with_standard_triple(Presentation::new(2 * m)).expect("standard data is valid")
}

/// Kodaira–Thurston algebra: `[e1, e2] = -e3`, `ω = e^13 + e^24`, no
/// metric or complex structure.
pub fn kodaira_thurston() -> Presentation {
    let p = Presentation::new(4)
        .with_bracket(0, 1, &[(2, integer(-1))])
        .expect("valid indices");
    let ext = p.exterior();
    let omega = ext.form_from_terms(2, &[(&[0, 2], integer(1)), (&[1, 3], integer(1))]);
    p.with_omega(omega)
        .and_then(|p| p.with_eta(integer(1)))
        .expect("valid data")
}

/// Kodaira–Thurston with the integrable `J: e1 ↦ e2, e3 ↦ e4`.
pub fn kodaira_thurston_complex() -> Presentation {
    kodaira_thurston()
        .with_complex_structure(standard_complex_structure(2))
        .expect("J squares to -1")
}

/// `[e1, e2] = e2` with the standard triple; Kähler but not unimodular.
pub fn affine_plane() -> Presentation {
    let p = Presentation::new(2)
        .with_bracket(0, 1, &[(1, integer(1))])
        .expect("valid indices");
    with_standard_triple(p).expect("standard data is valid")
}

/// `[e1, e3] = e4`, `[e1, e4] = -e3` with the standard triple: a
/// nonabelian unimodular Kähler algebra (the Euclidean motions of the
/// plane plus a line).
pub fn euclidean_flat() -> Presentation {
    let p = Presentation::new(4)
        .with_bracket(0, 2, &[(3, integer(1))])
        .and_then(|p| p.with_bracket(0, 3, &[(2, integer(-1))]))
        .expect("valid indices");
    with_standard_triple(p).expect("standard data is valid")
}

/// Abelian `ℂ^m` with the standard triple transported by `P`:
/// `J' = P⁻¹JP`, `g' = PᵀgP`, `Ω' = PᵀΩP`.
pub fn abelian_in_basis(m: usize, p: &Matrix<Rational>) -> Result<Presentation> {
    abelian(m).change_basis(p)
}

/// Deterministic family of invertible rational changes of basis, used to
/// produce Kähler models with non-standard triples.
pub fn varied_bases(r: usize, count: usize) -> Vec<Matrix<Rational>> {
    let mut out = Vec::new();
    let mut seed = 1i64;
    while out.len() < count {
        let m = Matrix::from_fn(r, r, |i, j| {
            let v = ((i as i64 + 2) * (j as i64 + 3) * seed + i as i64 * 7 + j as i64) % 5 - 2;
            if i == j {
                Rational::new((v + 3).into(), ((seed % 3) + 1).into())
            } else if (i + j + seed as usize).is_multiple_of(3) {
                Rational::new(v.into(), 2.into())
            } else {
                integer(0)
            }
        });
        seed += 1;
        if !m.determinant().is_zero() {
            out.push(m);
        }
    }
    out
}

/// Names accepted by [`preset`].
pub const PRESET_NAMES: &[&str] = &["abelian-2m", "kt", "kt-complex", "affine-2", "e2-flat"];

/// Looks up a named model; `m` is the half rank for `abelian-2m`.
pub fn preset(name: &str, m: usize) -> Option<Presentation> {
    match name {
        "abelian-2m" => Some(abelian(m)),
        "kt" => Some(kodaira_thurston()),
        "kt-complex" => Some(kodaira_thurston_complex()),
        "affine-2" => Some(affine_plane()),
        "e2-flat" => Some(euclidean_flat()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_models_validate() {
        for m in 1..=3 {
            let r = abelian(m).validate().unwrap();
            assert!(r.all_passed(), "abelian {m}: {r:?}");
        }
        let r = euclidean_flat().validate().unwrap();
        assert!(r.all_passed(), "{r:?}");
    }

    #[test]
    fn varied_bases_give_kahler_models() {
        for p in varied_bases(4, 4) {
            let model = abelian_in_basis(2, &p).unwrap();
            let r = model.validate().unwrap();
            assert!(r.hodge_admissible.passed, "{r:?}");
            assert_ne!(model.metric(), Some(&Matrix::identity(4)));
        }
    }

    #[test]
    fn kt_is_symplectic_not_kahler() {
        let r = kodaira_thurston().validate().unwrap();
        assert!(r.jacobi.passed);
        assert!(r.omega_closed.as_ref().unwrap().passed);
        assert!(r.kahler.is_none());
        assert!(!r.hodge_admissible.passed);
        let rc = kodaira_thurston_complex().validate().unwrap();
        assert!(rc.nijenhuis_zero.unwrap().passed);
    }

    #[test]
    fn affine_plane_is_not_unimodular() {
        let r = affine_plane().validate().unwrap();
        let u = r.unimodular.unwrap();
        assert!(!u.passed);
        assert_eq!(u.witness.unwrap().tuple, vec![2]);
        assert!(r.kahler.unwrap().passed);
    }
}
