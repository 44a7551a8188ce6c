//! The shipped φ³ rule as static tables.

use alloc::vec::Vec;

use crate::algebra::LatticePoint;
use crate::substitution::{RuleError, SubstitutionRule};
use crate::tiles::{CornerMark, Direction, EdgeLabel, PlacedTile, ProtoId, Prototile, PrototileSet};

const F: Direction = Direction::Forward;
const B: Direction = Direction::Backward;

const fn e(edge_type: u8, dir: Direction) -> EdgeLabel {
    EdgeLabel { edge_type, dir }
}

use CornerMark::{None as N, Stripe as S};

const MARKED: [bool; 7] = [false, true, false, false, false, false, false];

const TILES: [Prototile; 6] = [
    Prototile {
        id: ProtoId::ThinI,
        edges: [e(0, B), e(1, B), e(2, F), e(3, B)],
        corners: [S, S, S, S],
    },
    Prototile {
        id: ProtoId::ThinII,
        edges: [e(0, B), e(1, B), e(4, B), e(2, B)],
        corners: [S, S, S, S],
    },
    Prototile {
        id: ProtoId::ThinIII,
        edges: [e(0, B), e(1, B), e(5, B), e(6, B)],
        corners: [S, S, S, S],
    },
    Prototile {
        id: ProtoId::ThickI,
        edges: [e(1, F), e(5, B), e(5, F), e(0, F)],
        corners: [S, S, N, S],
    },
    Prototile {
        id: ProtoId::ThickII,
        edges: [e(0, B), e(3, F), e(4, F), e(0, F)],
        corners: [S, S, S, S],
    },
    Prototile {
        id: ProtoId::ThickIII,
        edges: [e(0, B), e(6, F), e(5, F), e(0, F)],
        corners: [S, S, S, S],
    },
];

/// Children as `(proto index, rot, anchor)` in the inflated frame.
type Child = (u8, u8, [i64; 4]);

const THIN_I: [Child; 13] = [
    (0, 7, [2, 0, 2, 0]),
    (0, 9, [2, 1, 2, -1]),
    (1, 1, [2, 0, 1, -1]),
    (1, 3, [4, 0, 3, -2]),
    (2, 2, [4, 1, 3, -2]),
    (3, 0, [4, 1, 3, -2]),
    (3, 3, [2, 0, 1, -1]),
    (3, 5, [2, 0, 2, 0]),
    (3, 7, [2, 1, 2, -1]),
    (3, 9, [2, 0, 1, -1]),
    (4, 6, [2, 1, 2, 0]),
    (4, 8, [2, 1, 2, 0]),
    (5, 1, [4, 0, 3, -2]),
];

const THIN_II: [Child; 13] = [
    (0, 7, [2, 0, 2, 0]),
    (0, 9, [2, 1, 2, -1]),
    (1, 1, [2, 0, 1, -1]),
    (1, 3, [4, 0, 3, -2]),
    (2, 2, [4, 1, 3, -2]),
    (3, 0, [4, 1, 3, -2]),
    (3, 3, [2, 0, 1, -1]),
    (3, 5, [2, 0, 2, 0]),
    (3, 7, [2, 1, 2, -1]),
    (3, 9, [2, 0, 1, -1]),
    (4, 6, [2, 1, 2, 0]),
    (4, 8, [2, 1, 2, 0]),
    (5, 1, [4, 0, 3, -2]),
];

const THIN_III: [Child; 13] = [
    (0, 7, [2, 0, 2, 0]),
    (0, 9, [2, 1, 2, -1]),
    (1, 1, [2, 0, 1, -1]),
    (1, 3, [4, 0, 3, -2]),
    (2, 2, [4, 1, 3, -2]),
    (3, 0, [4, 1, 3, -2]),
    (3, 3, [2, 0, 1, -1]),
    (3, 5, [2, 0, 2, 0]),
    (3, 7, [2, 1, 2, -1]),
    (3, 9, [2, 0, 1, -1]),
    (4, 6, [2, 1, 2, 0]),
    (4, 8, [2, 1, 2, 0]),
    (5, 1, [4, 0, 3, -2]),
];

const THICK_I: [Child; 21] = [
    (0, 5, [1, 2, 1, 1]),
    (0, 6, [2, 2, 3, 0]),
    (0, 7, [2, 0, 2, 0]),
    (1, 0, [2, 1, 2, 0]),
    (1, 1, [2, 0, 1, -1]),
    (1, 9, [0, 1, 1, 1]),
    (2, 8, [0, 1, 0, 1]),
    (2, 9, [2, 1, 2, -1]),
    (3, 2, [2, 1, 2, 0]),
    (3, 3, [1, 2, 1, 1]),
    (3, 3, [2, 0, 1, -1]),
    (3, 4, [2, 2, 3, 0]),
    (3, 5, [2, 0, 2, 0]),
    (3, 6, [0, 1, 0, 1]),
    (3, 7, [2, 1, 2, -1]),
    (3, 9, [2, 0, 1, -1]),
    (4, 4, [2, 1, 2, 0]),
    (4, 5, [3, 2, 3, 0]),
    (4, 6, [2, 1, 2, 0]),
    (5, 7, [0, 1, 1, 1]),
    (5, 8, [2, 1, 2, 0]),
];

const THICK_II: [Child; 21] = [
    (0, 5, [1, 2, 1, 1]),
    (0, 6, [2, 2, 3, 0]),
    (0, 7, [2, 0, 2, 0]),
    (1, 0, [2, 1, 2, 0]),
    (1, 1, [2, 0, 1, -1]),
    (1, 9, [0, 1, 1, 1]),
    (2, 8, [0, 1, 0, 1]),
    (2, 9, [2, 1, 2, -1]),
    (3, 2, [2, 1, 2, 0]),
    (3, 3, [1, 2, 1, 1]),
    (3, 3, [2, 0, 1, -1]),
    (3, 4, [2, 2, 3, 0]),
    (3, 5, [2, 0, 2, 0]),
    (3, 6, [0, 1, 0, 1]),
    (3, 7, [2, 1, 2, -1]),
    (3, 9, [2, 0, 1, -1]),
    (4, 4, [2, 1, 2, 0]),
    (4, 5, [3, 2, 3, 0]),
    (4, 6, [2, 1, 2, 0]),
    (5, 7, [0, 1, 1, 1]),
    (5, 8, [2, 1, 2, 0]),
];

const THICK_III: [Child; 21] = [
    (0, 5, [1, 2, 1, 1]),
    (0, 6, [2, 2, 3, 0]),
    (0, 7, [2, 0, 2, 0]),
    (1, 0, [2, 1, 2, 0]),
    (1, 1, [2, 0, 1, -1]),
    (1, 9, [0, 1, 1, 1]),
    (2, 8, [0, 1, 0, 1]),
    (2, 9, [2, 1, 2, -1]),
    (3, 2, [2, 1, 2, 0]),
    (3, 3, [1, 2, 1, 1]),
    (3, 3, [2, 0, 1, -1]),
    (3, 4, [2, 2, 3, 0]),
    (3, 5, [2, 0, 2, 0]),
    (3, 6, [0, 1, 0, 1]),
    (3, 7, [2, 1, 2, -1]),
    (3, 9, [2, 0, 1, -1]),
    (4, 4, [2, 1, 2, 0]),
    (4, 5, [3, 2, 3, 0]),
    (4, 6, [2, 1, 2, 0]),
    (5, 7, [0, 1, 1, 1]),
    (5, 8, [2, 1, 2, 0]),
];

pub const RULE_NAME: &str = "seabed-phi3";
pub const INFLATION_POWER: u32 = 3;
pub const STRIPE_RADIUS: u32 = 3;

pub fn prototiles() -> PrototileSet {
    PrototileSet::new(TILES, MARKED.to_vec()).expect("builtin prototiles")
}

fn expand(children: &[Child]) -> Vec<PlacedTile> {
    children
        .iter()
        .map(|&(p, rot, c)| PlacedTile::new(ProtoId::ALL[p as usize], rot as i64, false, LatticePoint::new(c[0], c[1], c[2], c[3])))
        .collect()
}

/// The shipped rule, run through the same load checks as any other.
pub fn rule() -> Result<SubstitutionRule, RuleError> {
    SubstitutionRule::new(
        prototiles(),
        [
            expand(&THIN_I),
            expand(&THIN_II),
            expand(&THIN_III),
            expand(&THICK_I),
            expand(&THICK_II),
            expand(&THICK_III),
        ],
        INFLATION_POWER,
        STRIPE_RADIUS,
    )
}
