use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{edges_match, OrientedEdge, Patch, PatchIndex, PlacedTile, PrototileSet, ShapeTile};
use crate::algebra::{GoldenNumber, LatticePoint};

/// A geometric defect between two tiles of a shape list, by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ShapeViolation {
    /// Interiors intersect.
    Overlap { a: usize, b: usize },
    /// A corner of `tile` lies inside an edge of `other`.
    NotEdgeToEdge {
        tile: usize,
        other: usize,
        vertex: LatticePoint,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    Overlap {
        a: PlacedTile,
        b: PlacedTile,
    },
    NotEdgeToEdge {
        tile: PlacedTile,
        other: PlacedTile,
        vertex: LatticePoint,
    },
    MarkingMismatch {
        a: PlacedTile,
        edge_a: u8,
        b: PlacedTile,
        edge_b: u8,
    },
}

/// Every violation found, sorted; empty iff the patch is legal.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

fn floor_i(x: f64) -> i64 {
    let t = x as i64;
    if (t as f64) > x {
        t - 1
    } else {
        t
    }
}

const CELL: f64 = 2.0;

fn neighbours(tiles: &[[LatticePoint; 4]]) -> Vec<(usize, usize)> {
    let mut grid: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
    let cell_of = |v: &[LatticePoint; 4]| {
        let (x, y) = v[0].embed();
        (floor_i(x / CELL), floor_i(y / CELL))
    };
    for (i, v) in tiles.iter().enumerate() {
        grid.entry(cell_of(v)).or_default().push(i);
    }
    let mut pairs = Vec::new();
    for (i, v) in tiles.iter().enumerate() {
        let (cx, cy) = cell_of(v);
        for dx in -2..=2 {
            for dy in -2..=2 {
                if let Some(list) = grid.get(&(cx + dx, cy + dy)) {
                    pairs.extend(list.iter().filter(|&&j| j > i).map(|&j| (i, j)));
                }
            }
        }
    }
    pairs
}

fn interval(axis: LatticePoint, v: &[LatticePoint; 4]) -> (GoldenNumber, GoldenNumber) {
    let mut lo = axis.cross(v[0]).expect("projection overflow");
    let mut hi = lo;
    for p in &v[1..] {
        let x = axis.cross(*p).expect("projection overflow");
        lo = lo.min(x);
        hi = hi.max(x);
    }
    (lo, hi)
}

/// Exact separating-axis test on the open interiors of two rhombs.
pub(crate) fn interiors_overlap(a: &[LatticePoint; 4], b: &[LatticePoint; 4]) -> bool {
    let axes = [a[1] - a[0], a[3] - a[0], b[1] - b[0], b[3] - b[0]];
    for d in axes {
        let (alo, ahi) = interval(d, a);
        let (blo, bhi) = interval(d, b);
        if ahi <= blo || bhi <= alo {
            return false;
        }
    }
    true
}

/// Whether `v` lies strictly between `p` and `q`.
pub(crate) fn inside_segment(v: LatticePoint, p: LatticePoint, q: LatticePoint) -> bool {
    let d = q - p;
    let w = v - p;
    if !d.cross(w).expect("overflow").is_zero() {
        return false;
    }
    let t = d.dot2(w).expect("overflow");
    t > GoldenNumber::ZERO && t < d.dot2(d).expect("overflow")
}

/// Overlaps and non-edge-to-edge contacts among rhombs.
pub fn validate_shapes(tiles: &[ShapeTile]) -> Vec<ShapeViolation> {
    let verts: Vec<[LatticePoint; 4]> = tiles.iter().map(ShapeTile::vertices).collect();
    let mut out = Vec::new();
    for (i, j) in neighbours(&verts) {
        let (a, b) = (&verts[i], &verts[j]);
        if interiors_overlap(a, b) {
            out.push(ShapeViolation::Overlap { a: i, b: j });
        }
        for (x, y, vx, vy) in [(i, j, a, b), (j, i, b, a)] {
            for &v in vx {
                for e in 0..4 {
                    if inside_segment(v, vy[e], vy[(e + 1) % 4]) {
                        out.push(ShapeViolation::NotEdgeToEdge {
                            tile: x,
                            other: y,
                            vertex: v,
                        });
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Overlaps, non-edge-to-edge contacts and marking mismatches.
///
/// Violations name tiles by placement, so the report does not depend on the
/// order of the tile list.
pub fn validate_patch(p: &Patch, set: &PrototileSet) -> ValidationReport {
    let shapes: Vec<ShapeTile> = p.tiles.iter().map(PlacedTile::shape_tile).collect();
    let mut violations = Vec::new();
    let ordered = |a: PlacedTile, b: PlacedTile| if a <= b { (a, b) } else { (b, a) };
    for v in validate_shapes(&shapes) {
        match v {
            ShapeViolation::Overlap { a, b } => {
                let (a, b) = ordered(p.tiles[a], p.tiles[b]);
                violations.push(Violation::Overlap { a, b });
            }
            ShapeViolation::NotEdgeToEdge { tile, other, vertex } => {
                violations.push(Violation::NotEdgeToEdge {
                    tile: p.tiles[tile],
                    other: p.tiles[other],
                    vertex,
                });
            }
        }
    }
    let index = PatchIndex::build(&p.tiles);
    for users in index.edges.values() {
        if users.len() != 2 {
            continue;
        }
        let (ka, ea) = users[0];
        let (kb, eb) = users[1];
        let a = OrientedEdge::of(&p.tiles[ka], ea, set);
        let b = OrientedEdge::of(&p.tiles[kb], eb, set);
        if !edges_match(&a, &b) {
            let (mut ta, mut tb, mut xa, mut xb) = (p.tiles[ka], p.tiles[kb], ea, eb);
            if tb < ta || (tb == ta && xb < xa) {
                core::mem::swap(&mut ta, &mut tb);
                core::mem::swap(&mut xa, &mut xb);
            }
            violations.push(Violation::MarkingMismatch {
                a: ta,
                edge_a: xa,
                b: tb,
                edge_b: xb,
            });
        }
    }
    violations.sort();
    violations.dedup();
    ValidationReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiles::Shape;

    fn st(shape: Shape, rot: i64, anchor: LatticePoint) -> ShapeTile {
        ShapeTile::canonical(shape, rot, anchor)
    }

    #[test]
    fn single_and_duplicate() {
        let t = st(Shape::Thick, 0, LatticePoint::ZERO);
        assert!(validate_shapes(&[t]).is_empty());
        let v = validate_shapes(&[t, t]);
        assert!(v.contains(&ShapeViolation::Overlap { a: 0, b: 1 }));
    }

    #[test]
    fn edge_sharing_neighbours_are_legal() {
        // Thick rhomb and the thin rhomb on its edge from 0 to ζ².
        let a = st(Shape::Thick, 0, LatticePoint::ZERO);
        let b = st(Shape::Thin, 2, LatticePoint::ZERO);
        assert!(validate_shapes(&[a, b]).is_empty());
    }

    #[test]
    fn corner_inside_an_edge_is_flagged() {
        let a = st(Shape::Thick, 0, LatticePoint::ZERO);
        // 1/φ = ζ² − ζ³ sits strictly inside the edge from 0 to 1.
        let p = LatticePoint::new(0, 0, 1, -1);
        let b = st(Shape::Thick, 6, p);
        let v = validate_shapes(&[a, b]);
        assert_eq!(
            v,
            [ShapeViolation::NotEdgeToEdge { tile: 1, other: 0, vertex: p }]
        );
    }
}
