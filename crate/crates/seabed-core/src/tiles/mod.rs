//! Marked prototiles, rigid placements and finite patches.

mod star;
mod validate;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{GoldenNumber, LatticePoint};

pub use star::{classify_vertex, vertex_star, NotAVertex, VertexClass, VertexStar};
pub use validate::{
    validate_patch, validate_shapes, ShapeViolation, ValidationReport, Violation,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    Thin,
    Thick,
}

impl Shape {
    /// Exponent gap between the two spanning directions.
    pub const fn spread(self) -> i64 {
        match self {
            Shape::Thin => 1,
            Shape::Thick => 2,
        }
    }

    /// Interior angle at `corner` in units of 36°.
    pub const fn angle_units(self, corner: u8) -> u8 {
        match (self, corner % 2) {
            (Shape::Thin, 0) => 1,
            (Shape::Thin, _) => 4,
            (Shape::Thick, 0) => 2,
            (Shape::Thick, _) => 3,
        }
    }

    /// Area in units of the thin rhomb: 1 or φ.
    pub const fn area(self) -> GoldenNumber {
        match self {
            Shape::Thin => GoldenNumber::ONE,
            Shape::Thick => GoldenNumber::PHI,
        }
    }

    pub const fn name(self) -> &'static str {
        match self {
            Shape::Thin => "thin",
            Shape::Thick => "thick",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProtoId {
    ThinI,
    ThinII,
    ThinIII,
    ThickI,
    ThickII,
    ThickIII,
}

impl ProtoId {
    pub const ALL: [ProtoId; 6] = [
        ProtoId::ThinI,
        ProtoId::ThinII,
        ProtoId::ThinIII,
        ProtoId::ThickI,
        ProtoId::ThickII,
        ProtoId::ThickIII,
    ];

    pub const fn index(self) -> usize {
        self as usize
    }

    pub const fn from_index(i: usize) -> Option<ProtoId> {
        if i < 6 {
            Some(ProtoId::ALL[i])
        } else {
            None
        }
    }

    pub const fn shape(self) -> Shape {
        match self {
            ProtoId::ThinI | ProtoId::ThinII | ProtoId::ThinIII => Shape::Thin,
            _ => Shape::Thick,
        }
    }

    pub const fn name(self) -> &'static str {
        match self {
            ProtoId::ThinI => "thin-i",
            ProtoId::ThinII => "thin-ii",
            ProtoId::ThinIII => "thin-iii",
            ProtoId::ThickI => "thick-i",
            ProtoId::ThickII => "thick-ii",
            ProtoId::ThickIII => "thick-iii",
        }
    }

    pub fn parse(s: &str) -> Option<ProtoId> {
        ProtoId::ALL.into_iter().find(|p| p.name() == s)
    }

    /// The three prototiles sharing `shape`.
    pub fn of_shape(shape: Shape) -> [ProtoId; 3] {
        match shape {
            Shape::Thin => [ProtoId::ThinI, ProtoId::ThinII, ProtoId::ThinIII],
            Shape::Thick => [ProtoId::ThickI, ProtoId::ThickII, ProtoId::ThickIII],
        }
    }
}

impl fmt::Display for ProtoId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Orientation of an edge marking relative to the corner order of its tile:
/// `Forward` on edge `i` points from corner `i` to corner `i + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub const fn flip(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeLabel {
    pub edge_type: u8,
    pub dir: Direction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CornerMark {
    Light,
    Dark,
    None,
    Stripe,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Prototile {
    pub id: ProtoId,
    pub edges: [EdgeLabel; 4],
    pub corners: [CornerMark; 4],
}

impl Prototile {
    pub const fn shape(&self) -> Shape {
        self.id.shape()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TileSetError {
    #[error("prototile slot {slot} holds {found}, expected {expected}")]
    Order {
        slot: usize,
        found: ProtoId,
        expected: ProtoId,
    },
    #[error("{proto} edge {edge} uses undeclared edge type {edge_type}")]
    UnknownEdgeType {
        proto: ProtoId,
        edge: usize,
        edge_type: u8,
    },
}

/// The six marked prototiles plus the designation of marked edge types.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrototileSet {
    tiles: [Prototile; 6],
    marked: Vec<bool>,
}

impl PrototileSet {
    /// `marked[t]` tells whether edge type `t` counts as a marked edge.
    pub fn new(tiles: [Prototile; 6], marked: Vec<bool>) -> Result<Self, TileSetError> {
        for (slot, t) in tiles.iter().enumerate() {
            if t.id != ProtoId::ALL[slot] {
                return Err(TileSetError::Order {
                    slot,
                    found: t.id,
                    expected: ProtoId::ALL[slot],
                });
            }
            for (edge, e) in t.edges.iter().enumerate() {
                if e.edge_type as usize >= marked.len() {
                    return Err(TileSetError::UnknownEdgeType {
                        proto: t.id,
                        edge,
                        edge_type: e.edge_type,
                    });
                }
            }
        }
        Ok(PrototileSet { tiles, marked })
    }

    pub fn get(&self, id: ProtoId) -> &Prototile {
        &self.tiles[id.index()]
    }

    pub fn tiles(&self) -> &[Prototile; 6] {
        &self.tiles
    }

    pub fn edge_type_count(&self) -> usize {
        self.marked.len()
    }

    pub fn is_marked(&self, edge_type: u8) -> bool {
        self.marked.get(edge_type as usize).copied().unwrap_or(false)
    }

    pub fn marked_flags(&self) -> &[bool] {
        &self.marked
    }
}

/// A rhomb with unit edges, spanned at its acute corner 0 by `ζ^rot` and
/// `ζ^(rot ± s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShapeTile {
    pub shape: Shape,
    pub rot: u8,
    pub anchor: LatticePoint,
}

impl ShapeTile {
    /// Canonical form: of the two acute corners, the one giving `rot < 5`.
    pub fn canonical(shape: Shape, rot: i64, anchor: LatticePoint) -> ShapeTile {
        let r = rot.rem_euclid(10);
        if r < 5 {
            ShapeTile { shape, rot: r as u8, anchor }
        } else {
            let far = anchor + LatticePoint::unit(r) + LatticePoint::unit(r + shape.spread());
            ShapeTile { shape, rot: (r - 5) as u8, anchor: far }
        }
    }

    pub fn vertices(&self) -> [LatticePoint; 4] {
        let u1 = LatticePoint::unit(self.rot as i64);
        let u2 = LatticePoint::unit(self.rot as i64 + self.shape.spread());
        [self.anchor, self.anchor + u1, self.anchor + u1 + u2, self.anchor + u2]
    }

    /// Every placement of a prototile of this shape that covers the rhomb.
    pub fn placements(&self, reflections: bool) -> Vec<PlacedTile> {
        let mut out = Vec::new();
        for proto in ProtoId::of_shape(self.shape) {
            for refl in [false, true] {
                if refl && !reflections {
                    continue;
                }
                for rot in 0..10 {
                    for anchor in self.vertices() {
                        let t = PlacedTile::new(proto, rot, refl, anchor);
                        if t.shape_tile() == *self {
                            out.push(t);
                        }
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Recovers the tile from four corners listed in either cyclic order.
    pub fn from_corners(c: [LatticePoint; 4]) -> Option<ShapeTile> {
        for start in 0..4 {
            for step in [1usize, 3] {
                let p0 = c[start];
                let p1 = c[(start + step) % 4];
                let p3 = c[(start + 3 * step) % 4];
                let (Some(a), Some(b)) = ((p1 - p0).unit_index(), (p3 - p0).unit_index()) else {
                    continue;
                };
                let gap = (b as i64 - a as i64).rem_euclid(10);
                let shape = match gap {
                    1 => Shape::Thin,
                    2 => Shape::Thick,
                    _ => continue,
                };
                let t = ShapeTile::canonical(shape, a as i64, p0);
                let mut want = t.vertices();
                let mut got = c;
                want.sort();
                got.sort();
                if want == got {
                    return Some(t);
                }
            }
        }
        None
    }
}

/// A prototile placed by a direct or reflected isometry.
///
/// Corners are `anchor`, `anchor + u1`, `anchor + u1 + u2`, `anchor + u2`
/// with `u1 = ζ^rot` and `u2 = ζ^(rot + s)`, or `ζ^(rot − s)` when reflected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlacedTile {
    pub proto: ProtoId,
    pub rot: u8,
    pub reflected: bool,
    pub anchor: LatticePoint,
}

impl PlacedTile {
    pub fn new(proto: ProtoId, rot: i64, reflected: bool, anchor: LatticePoint) -> Self {
        PlacedTile {
            proto,
            rot: rot.rem_euclid(10) as u8,
            reflected,
            anchor,
        }
    }

    pub fn shape(&self) -> Shape {
        self.proto.shape()
    }

    /// Exponents of the spanning directions `(u1, u2)`.
    pub fn spanning(&self) -> (i64, i64) {
        let r = self.rot as i64;
        let s = self.shape().spread();
        if self.reflected {
            (r, (r - s).rem_euclid(10))
        } else {
            (r, (r + s).rem_euclid(10))
        }
    }

    pub fn vertices(&self) -> [LatticePoint; 4] {
        let (a, b) = self.spanning();
        let u1 = LatticePoint::unit(a);
        let u2 = LatticePoint::unit(b);
        [self.anchor, self.anchor + u1, self.anchor + u1 + u2, self.anchor + u2]
    }

    /// Edge `i` runs from corner `i` to corner `i + 1`.
    pub fn edge(&self, i: u8) -> (LatticePoint, LatticePoint) {
        let v = self.vertices();
        (v[i as usize % 4], v[(i as usize + 1) % 4])
    }

    /// The sweep of corner `c`: the direction exponent where the corner
    /// starts, going counter-clockwise, and its angle in 36° units.
    pub fn corner_sweep(&self, c: u8) -> (u8, u8) {
        let v = self.vertices();
        let i = c as usize % 4;
        let here = v[i];
        let d1 = (v[(i + 1) % 4] - here).unit_index().expect("unit edge");
        let d2 = (v[(i + 3) % 4] - here).unit_index().expect("unit edge");
        let a = self.shape().angle_units(c);
        if (d2 as i64 - d1 as i64).rem_euclid(10) == a as i64 {
            (d1, a)
        } else {
            (d2, a)
        }
    }

    pub fn shape_tile(&self) -> ShapeTile {
        let (a, b) = self.spanning();
        if self.reflected {
            ShapeTile::canonical(self.shape(), b, self.anchor)
        } else {
            ShapeTile::canonical(self.shape(), a, self.anchor)
        }
    }

    /// Image under `z ↦ ζ^k z + t`.
    pub fn moved(&self, k: i64, t: LatticePoint) -> PlacedTile {
        PlacedTile::new(
            self.proto,
            self.rot as i64 + k,
            self.reflected,
            self.anchor.rotate(k) + t,
        )
    }

    /// Image under complex conjugation.
    pub fn conjugated(&self) -> PlacedTile {
        PlacedTile::new(
            self.proto,
            -(self.rot as i64),
            !self.reflected,
            self.anchor.checked_conj().expect("conjugation overflow"),
        )
    }
}

impl fmt::Display for PlacedTile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}@{} rot {}{}",
            self.proto,
            self.anchor,
            self.rot,
            if self.reflected { " reflected" } else { "" }
        )
    }
}

/// An edge of a placed tile, traversed from corner `i` to corner `i + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrientedEdge {
    pub from: LatticePoint,
    pub to: LatticePoint,
    pub label: EdgeLabel,
}

impl OrientedEdge {
    pub fn of(tile: &PlacedTile, i: u8, set: &PrototileSet) -> OrientedEdge {
        let (from, to) = tile.edge(i);
        OrientedEdge {
            from,
            to,
            label: set.get(tile.proto).edges[i as usize % 4],
        }
    }

    /// The marking arrow as an absolute `(tail, head)` pair.
    pub fn arrow(&self) -> (LatticePoint, LatticePoint) {
        match self.label.dir {
            Direction::Forward => (self.from, self.to),
            Direction::Backward => (self.to, self.from),
        }
    }
}

/// Two coincident edges match when their types agree and their arrows point
/// the same absolute way.
pub fn edges_match(a: &OrientedEdge, b: &OrientedEdge) -> bool {
    a.label.edge_type == b.label.edge_type && a.arrow() == b.arrow()
}

/// Unordered edge key.
/// Endpoints in sorted order.
pub fn edge_key(p: LatticePoint, q: LatticePoint) -> (LatticePoint, LatticePoint) {
    if p <= q {
        (p, q)
    } else {
        (q, p)
    }
}

/// Whether the labels agree on the edge two placements share; true when they
/// share none.
pub fn shared_edges_match(a: &PlacedTile, b: &PlacedTile, set: &PrototileSet) -> bool {
    for i in 0..4u8 {
        let (p, q) = a.edge(i);
        for j in 0..4u8 {
            let (x, y) = b.edge(j);
            if (x == q && y == p) || (x == p && y == q) {
                return edges_match(&OrientedEdge::of(a, i, set), &OrientedEdge::of(b, j, set));
            }
        }
    }
    true
}

/// A finite collection of placed tiles.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Patch {
    pub tiles: Vec<PlacedTile>,
}

impl Patch {
    pub fn new(tiles: Vec<PlacedTile>) -> Self {
        Patch { tiles }
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    /// Tile counts indexed by [`ProtoId::index`].
    pub fn counts(&self) -> [u64; 6] {
        let mut c = [0u64; 6];
        for t in &self.tiles {
            c[t.proto.index()] += 1;
        }
        c
    }

    /// Total area in thin-rhomb units.
    pub fn area(&self) -> GoldenNumber {
        let c = self.counts();
        let thin = (c[0] + c[1] + c[2]) as i64;
        let thick = (c[3] + c[4] + c[5]) as i64;
        GoldenNumber::new(thin, thick)
    }

    /// Tiles sorted into normal-form order, duplicates removed.
    pub fn normalized(&self) -> Patch {
        let mut t = self.tiles.clone();
        t.sort();
        t.dedup();
        Patch { tiles: t }
    }

    pub fn index(&self) -> PatchIndex {
        PatchIndex::build(&self.tiles)
    }
}

/// Incidence tables of a patch.
#[derive(Debug, Clone, Default)]
pub struct PatchIndex {
    /// vertex → (tile index, corner)
    pub vertices: BTreeMap<LatticePoint, Vec<(usize, u8)>>,
    /// unordered edge → (tile index, edge)
    pub edges: BTreeMap<(LatticePoint, LatticePoint), Vec<(usize, u8)>>,
}

impl PatchIndex {
    pub fn build(tiles: &[PlacedTile]) -> PatchIndex {
        let mut ix = PatchIndex::default();
        for (k, t) in tiles.iter().enumerate() {
            let v = t.vertices();
            for c in 0..4u8 {
                ix.vertices.entry(v[c as usize]).or_default().push((k, c));
                let key = edge_key(v[c as usize], v[(c as usize + 1) % 4]);
                ix.edges.entry(key).or_default().push((k, c));
            }
        }
        ix
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_spanning_examples() {
        let thin = PlacedTile::new(ProtoId::ThinI, 0, false, LatticePoint::ZERO);
        assert_eq!(
            thin.vertices(),
            [
                LatticePoint::ZERO,
                LatticePoint::ONE,
                LatticePoint::ONE + LatticePoint::ZETA,
                LatticePoint::ZETA
            ]
        );
        let thick = PlacedTile::new(ProtoId::ThickI, 0, false, LatticePoint::ZERO);
        let z2 = LatticePoint::unit(2);
        assert_eq!(
            thick.vertices(),
            [LatticePoint::ZERO, LatticePoint::ONE, LatticePoint::ONE + z2, z2]
        );
    }

    #[test]
    fn rot5_is_point_reflection() {
        for proto in [ProtoId::ThinII, ProtoId::ThickIII] {
            let a = PlacedTile::new(proto, 0, false, LatticePoint::ZERO).vertices();
            let b = PlacedTile::new(proto, 5, false, LatticePoint::ZERO).vertices();
            for i in 0..4 {
                assert_eq!(b[i], -a[i]);
            }
            // Translating the rot-5 copy by the far corner recovers the point set.
            let far = a[2];
            let mut moved: Vec<_> = b.iter().map(|p| *p + far).collect();
            let mut orig = a.to_vec();
            moved.sort();
            orig.sort();
            assert_eq!(moved, orig);
        }
    }

    #[test]
    fn corner_sweeps_close_at_a_point() {
        let t = PlacedTile::new(ProtoId::ThickII, 3, false, LatticePoint::new(1, 2, 0, -1));
        let total: u8 = (0..4).map(|c| t.corner_sweep(c).1).sum();
        assert_eq!(total, 10);
        let r = PlacedTile::new(ProtoId::ThinI, 7, true, LatticePoint::ZERO);
        let total: u8 = (0..4).map(|c| r.corner_sweep(c).1).sum();
        assert_eq!(total, 10);
    }

    #[test]
    fn shape_tile_roundtrip() {
        for proto in [ProtoId::ThinI, ProtoId::ThickI] {
            for rot in 0..10 {
                for refl in [false, true] {
                    let t = PlacedTile::new(proto, rot, refl, LatticePoint::new(2, -1, 0, 3));
                    let s = t.shape_tile();
                    assert!(s.rot < 5);
                    let mut a = t.vertices();
                    let mut b = s.vertices();
                    a.sort();
                    b.sort();
                    assert_eq!(a, b);
                    assert_eq!(ShapeTile::from_corners(t.vertices()), Some(s));
                }
            }
        }
    }

    #[test]
    fn edge_matching_rules() {
        let a = OrientedEdge {
            from: LatticePoint::ZERO,
            to: LatticePoint::ONE,
            label: EdgeLabel { edge_type: 1, dir: Direction::Forward },
        };
        let b = OrientedEdge {
            from: LatticePoint::ONE,
            to: LatticePoint::ZERO,
            label: EdgeLabel { edge_type: 1, dir: Direction::Backward },
        };
        assert!(edges_match(&a, &b));
        let flipped = OrientedEdge {
            label: EdgeLabel { edge_type: 1, dir: Direction::Forward },
            ..b
        };
        assert!(!edges_match(&a, &flipped));
        let other = OrientedEdge {
            label: EdgeLabel { edge_type: 2, dir: Direction::Backward },
            ..b
        };
        assert!(!edges_match(&a, &other));
    }
}
