//! Engine outputs checked against the brute-force oracle.

#[path = "support/oracle.rs"]
mod oracle;

use algebroid_core::cohomology::cohomology_with;
use algebroid_core::constructions::presets::{abelian, affine_plane, euclidean_flat, kodaira_thurston};
use oracle::{oracle_betti, oracle_differential};

#[test]
fn kodaira_thurston_rank_oracle() {
    assert_eq!(oracle_betti(&kodaira_thurston()), vec![1, 3, 4, 3, 1]);
    let engine = cohomology_with(&kodaira_thurston(), Default::default()).unwrap();
    assert_eq!(engine.dims, oracle_betti(&kodaira_thurston()));
}

#[test]
fn differential_matches_invariant_formula() {
    for p in [abelian(1), abelian(2), kodaira_thurston(), affine_plane(), euclidean_flat()] {
        let d = p.differential();
        for k in 0..p.rank() {
            let oracle = oracle_differential(&p, k);
            assert_eq!(d.block(k).to_rows(), oracle, "degree {k}");
        }
    }
}

#[test]
fn corpus_betti_numbers_match_oracle() {
    for p in [abelian(1), abelian(2), abelian(3), affine_plane(), euclidean_flat()] {
        let engine = cohomology_with(&p, Default::default()).unwrap();
        assert_eq!(engine.dims, oracle_betti(&p));
    }
}
