use algebroid_core::algebroid::Presentation;
use algebroid_core::cohomology::{cohomology_with, hodge_decomposition};
use algebroid_core::constructions::presets::{
    abelian, abelian_in_basis, affine_plane, euclidean_flat, kodaira_thurston, varied_bases,
};
use algebroid_core::exterior::symplectic::{lefschetz_triple, symplectic_star};
use algebroid_core::exterior::GradedOperator;
use algebroid_core::linalg::Matrix;
use algebroid_core::scalar::{integer, rational};
use algebroid_core::Rational;
use proptest::prelude::*;

fn symplectic_corpus() -> Vec<Presentation> {
    let mut out = vec![abelian(1), abelian(2), abelian(3), kodaira_thurston(), affine_plane(), euclidean_flat()];
    out.extend(varied_bases(4, 3).iter().map(|b| abelian_in_basis(2, b).unwrap()));
    out
}

fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<Rational>> {
    proptest::collection::vec((-4i64..=4, 1i64..=3), rows * cols).prop_map(move |v| {
        let mut it = v.into_iter();
        Matrix::from_fn(rows, cols, |_, _| {
            let (n, d) = it.next().unwrap();
            rational(n, d)
        })
    })
}

/// Random nonzero structure-constant changes on a corpus model.
fn perturbation() -> impl Strategy<Value = (usize, Vec<(usize, usize, usize, i64)>)> {
    (
        0usize..3,
        proptest::collection::vec((0usize..4, 0usize..4, 0usize..4, -2i64..=2), 1..3),
    )
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 50, ..ProptestConfig::default() })]

    #[test]
    fn d_squared_vanishes_iff_jacobi((base, changes) in perturbation()) {
        let mut p = [kodaira_thurston(), euclidean_flat(), abelian(2)][base].clone();
        for (i, j, k, c) in changes {
            if i != j {
                let old = p.structure_constant(i, j, k).clone();
                p.set_bracket(i, j, k, old + integer(c)).unwrap();
            }
        }
        let d = p.differential();
        let d2_zero = d.compose(&d).is_zero();
        prop_assert_eq!(d2_zero, p.validate_jacobi().passed);
    }

    #[test]
    fn rank_of_transpose(m in small_matrix(4, 6)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert_eq!(m.rank(), m.rank_by_rref());
    }

    #[test]
    fn hodge_decomposition_for_random_metrics(a in small_matrix(4, 4), which in 0usize..3) {
        let g = a.transpose().mul(&a).add(&Matrix::identity(4));
        let base = [kodaira_thurston(), euclidean_flat(), abelian(2)][which].clone();
        let p = base.with_metric(g).unwrap();
        let report = hodge_decomposition(&p).unwrap();
        prop_assert!(report.holds());
        let dims: Vec<usize> = report.degrees.iter().map(|d| d.harmonic).collect();
        prop_assert_eq!(dims, cohomology_with(&p, Default::default()).unwrap().dims);
    }

    #[test]
    fn cohomology_is_basis_independent(idx in 0usize..6) {
        let basis = &varied_bases(4, 6)[idx];
        for p in [kodaira_thurston(), euclidean_flat()] {
            let q = p.change_basis(basis).unwrap();
            prop_assert!(q.validate_jacobi().passed);
            prop_assert_eq!(
                cohomology_with(&q, Default::default()).unwrap().dims,
                cohomology_with(&p, Default::default()).unwrap().dims
            );
        }
    }
}

#[test]
fn sl2_relations_on_symplectic_corpus() {
    for p in symplectic_corpus() {
        let ext = p.exterior();
        let t = lefschetz_triple(&ext, p.omega().unwrap()).unwrap();
        let two = integer(2);
        assert_eq!(t.l.commutator(&t.lambda), t.h);
        assert_eq!(t.h.commutator(&t.l), t.l.scale(&two));
        assert_eq!(t.h.commutator(&t.lambda), t.lambda.scale(&-two));
    }
}

#[test]
fn symplectic_star_is_an_involution() {
    for p in symplectic_corpus() {
        let ext = p.exterior();
        let star = symplectic_star(&ext, p.omega().unwrap()).unwrap();
        assert_eq!(star.squared(), GradedOperator::identity(ext.dims()));
    }
}

#[test]
fn harmonic_representatives_are_unique_on_metric_models() {
    let mut models = vec![abelian(1), abelian(2), abelian(3), euclidean_flat()];
    models.push(kodaira_thurston().with_metric(Matrix::identity(4)).unwrap());
    for p in models {
        let r = hodge_decomposition(&p).unwrap();
        assert!(r.degrees.iter().all(|d| d.unique_representatives && d.orthogonal && d.spans));
    }
}
