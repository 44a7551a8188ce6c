mod common;

use proptest::prelude::*;

use seabed_core::tiles::{validate_patch, validate_shapes, vertex_star, ShapeTile, Violation};
use seabed_core::{LatticePoint, Patch, PlacedTile, ProtoId};

fn tile() -> impl Strategy<Value = PlacedTile> {
    (0usize..6, 0i64..10, any::<bool>(), prop::array::uniform4(-50i64..50)).prop_map(|(p, rot, refl, c)| {
        PlacedTile::new(ProtoId::ALL[p], rot, refl, LatticePoint::new(c[0], c[1], c[2], c[3]))
    })
}

fn sorted(mut v: [LatticePoint; 4]) -> [LatticePoint; 4] {
    v.sort();
    v
}

proptest! {
    #[test]
    fn shape_tile_keeps_the_corners(t in tile()) {
        let s = t.shape_tile();
        prop_assert_eq!(sorted(s.vertices()), sorted(t.vertices()));
        prop_assert_eq!(ShapeTile::from_corners(t.vertices()), Some(s));
        prop_assert!(s.rot < 5);
    }

    #[test]
    fn corner_angles_close_and_area_is_exact(t in tile()) {
        let total: u32 = (0..4).map(|c| t.shape().angle_units(c) as u32).sum();
        prop_assert_eq!(total, 10);
        let v = t.vertices();
        let area = (v[1] - v[0]).cross(v[3] - v[0]).unwrap();
        let want = t.shape().area();
        prop_assert!(area == want || area.checked_neg().unwrap() == want);
    }

    #[test]
    fn motions_act_on_corners(t in tile(), k in -10i64..10, c in prop::array::uniform4(-50i64..50)) {
        let d = LatticePoint::new(c[0], c[1], c[2], c[3]);
        let moved = t.moved(k, d);
        let want = t.vertices().map(|v| v.rotate(k) + d);
        prop_assert_eq!(sorted(moved.vertices()), sorted(want));
        prop_assert_eq!(t.conjugated().conjugated(), t);
        let conj = t.vertices().map(|v| v.checked_conj().unwrap());
        prop_assert_eq!(sorted(t.conjugated().vertices()), sorted(conj));
    }

    #[test]
    fn placements_cover_the_rhomb(t in tile()) {
        let s = t.shape_tile();
        let direct = s.placements(false);
        // Three prototiles, each from either acute corner.
        prop_assert_eq!(direct.len(), 6);
        prop_assert!(direct.iter().all(|p| p.shape_tile() == s && !p.reflected));
        let all = s.placements(true);
        prop_assert_eq!(all.len(), 12);
        prop_assert!(all.contains(&t));
    }

    #[test]
    fn normal_form_is_idempotent(ts in prop::collection::vec(tile(), 0..20)) {
        let p = Patch::new(ts).normalized();
        prop_assert_eq!(p.normalized(), p.clone());
        prop_assert!(p.tiles.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn pieces_of_legal_patches_are_legal(id in 0usize..6, start in 0usize..10_000, size in 1usize..80) {
        let r = common::rule();
        let p = common::piece(common::level2(ProtoId::ALL[id]), start, size);
        prop_assert!(validate_patch(&p, r.prototiles()).is_empty());
        let shapes: Vec<ShapeTile> = p.tiles.iter().map(|t| t.shape_tile()).collect();
        prop_assert!(validate_shapes(&shapes).is_empty());
    }
}

#[test]
fn interior_stars_are_full_and_ordered() {
    let p = common::level2(ProtoId::ThickI);
    let ix = p.index();
    let mut full = 0;
    for v in ix.vertices.keys() {
        let s = vertex_star(p, *v).unwrap();
        let total: u32 = s.angle_units().iter().map(|a| *a as u32).sum();
        assert!(total <= 10);
        assert_eq!(s.full, total == 10);
        if s.full {
            full += 1;
            // Sweeps chain around the vertex.
            let mut at = s.incident[0].0.corner_sweep(s.incident[0].1).0 as u32;
            for (t, c) in &s.incident {
                let (start, a) = t.corner_sweep(*c);
                assert_eq!(start as u32, at % 10);
                at += a as u32;
            }
        }
    }
    assert!(full > 0);
}

#[test]
fn rhombs_sharing_a_corner_sweep_overlap() {
    let r = common::rule();
    let thin = PlacedTile::new(ProtoId::ThinII, 0, false, LatticePoint::ZERO);
    let thick = PlacedTile::new(ProtoId::ThickI, 0, false, LatticePoint::ZERO);
    let report = validate_patch(&Patch::new(vec![thin, thick]), r.prototiles());
    assert!(report.violations.iter().any(|v| matches!(v, Violation::Overlap { .. })));
    let apart = PlacedTile::new(ProtoId::ThickI, 2, false, LatticePoint::ZERO);
    let shapes = [thin.shape_tile(), apart.shape_tile()];
    assert!(validate_shapes(&shapes).is_empty());
}
