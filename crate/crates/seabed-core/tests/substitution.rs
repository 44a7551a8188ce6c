mod common;

use proptest::prelude::*;

use seabed_core::substitution::{predicted_count, substitute_once, SubstitutionRule};
use seabed_core::tiles::validate_patch;
use seabed_core::{GoldenNumber, LatticePoint, Patch, ProtoId};

fn moved(p: &Patch, k: i64, t: LatticePoint) -> Patch {
    Patch::new(p.tiles.iter().map(|x| x.moved(k, t)).collect()).normalized()
}

fn matrix_counts(r: &SubstitutionRule, p: &Patch) -> [u128; 6] {
    r.matrix().apply(&p.counts().map(|c| c as u128))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn counts_follow_the_matrix(id in 0usize..6, start in 0usize..10_000, size in 1usize..60) {
        let r = common::rule();
        let p = common::piece(common::level2(ProtoId::ALL[id]), start, size);
        let q = substitute_once(&p, r).unwrap();
        prop_assert_eq!(q.counts().map(|c| c as u128), matrix_counts(r, &p));
        let lambda = GoldenNumber::new(5, 8);
        prop_assert_eq!(q.area(), p.area().checked_mul(lambda).unwrap());
        prop_assert!(validate_patch(&q, r.prototiles()).is_empty());
    }

    #[test]
    fn substitution_commutes_with_motions(
        id in 0usize..6,
        start in 0usize..10_000,
        size in 1usize..20,
        k in 0i64..10,
        c in prop::array::uniform4(-20i64..20),
    ) {
        let r = common::rule();
        let p = common::piece(common::level2(ProtoId::ALL[id]), start, size);
        let t = LatticePoint::new(c[0], c[1], c[2], c[3]);
        let a = substitute_once(&moved(&p, k, t), r).unwrap();
        let b = moved(&substitute_once(&p, r).unwrap(), k, r.inflate(t).unwrap());
        prop_assert_eq!(a, b);
    }
}

#[test]
fn predicted_counts_match_iterates() {
    let r = common::rule();
    for id in ProtoId::ALL {
        for n in 0..=3 {
            assert_eq!(common::level(r, id, n).len() as u128, predicted_count(r, id, n));
        }
    }
}

#[test]
fn deep_iterates_stay_legal() {
    let r = common::rule();
    for id in ProtoId::ALL {
        let p = common::level(r, id, 3);
        assert!(validate_patch(&p, r.prototiles()).is_empty(), "{id}");
    }
}

#[test]
fn shape_classes_share_columns() {
    // Sibling prototiles of one shape have the same replacement multiset.
    let m = common::rule().matrix().m;
    for (a, b) in [(0, 1), (1, 2), (3, 4), (4, 5)] {
        for row in &m {
            assert_eq!(row[a], row[b]);
        }
    }
    let thin: u64 = (0..3).map(|i| m[i][0]).sum();
    let thick: u64 = (3..6).map(|i| m[i][0]).sum();
    assert_eq!((thin, thick), (5, 8));
}
