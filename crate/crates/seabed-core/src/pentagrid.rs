//! De Bruijn's pentagrid and its dual rhomb tilings.
//!
//! Family `i` is the set of lines `⟨z, e_i⟩ − γ_i ∈ Z` with `e_i` at angle
//! `72°·i`. A point off every line lies in the mesh cell labelled by
//! `K_i = ⌈⟨z, e_i⟩ − γ_i⌉`, whose dual vertex is `Σ K_i e_i`. Since
//! `e_i = ζ^(2i)`, dual vertices are computed exactly from `K`.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::algebra::{LatticePoint, COS, SIN};
use crate::tiles::{
    edge_key, shared_edges_match, Patch, PlacedTile, PrototileSet, Shape, ShapeTile,
};

/// Default regularity tolerance.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// `e_i` as floats.
pub const DIRECTIONS: [(f64, f64); 5] = [
    (COS[0], SIN[0]),
    (COS[2], SIN[2]),
    (-COS[1], SIN[1]),
    (-COS[1], -SIN[1]),
    (COS[2], -SIN[2]),
];

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum ParamsError {
    #[error("window radius must be positive, got {0}")]
    Radius(f64),
    #[error("tolerance must be non-negative, got {0}")]
    Tolerance(f64),
    #[error("offset sum {0} is an integer")]
    IntegralSum(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PentagridParams {
    pub offsets: [f64; 5],
    pub radius: f64,
    pub tolerance: f64,
}

impl PentagridParams {
    pub fn new(offsets: [f64; 5], radius: f64) -> Result<Self, ParamsError> {
        Self::with_tolerance(offsets, radius, DEFAULT_TOLERANCE)
    }

    pub fn with_tolerance(offsets: [f64; 5], radius: f64, tolerance: f64) -> Result<Self, ParamsError> {
        if !(radius > 0.0) {
            return Err(ParamsError::Radius(radius));
        }
        if !(tolerance >= 0.0) {
            return Err(ParamsError::Tolerance(tolerance));
        }
        Ok(PentagridParams {
            offsets,
            radius,
            tolerance,
        })
    }

    pub fn offset_sum(&self) -> f64 {
        self.offsets.iter().sum()
    }
}

/// `⌈x⌉` for `|x| < 2^62`.
pub fn ceil(x: f64) -> i64 {
    let t = x as i64;
    if (t as f64) < x {
        t + 1
    } else {
        t
    }
}

/// `⌊x⌋` for `|x| < 2^62`.
pub fn floor(x: f64) -> i64 {
    let t = x as i64;
    if (t as f64) > x {
        t - 1
    } else {
        t
    }
}

fn dist_to_integer(x: f64) -> f64 {
    let f = x - floor(x) as f64;
    if f < 0.5 {
        f
    } else {
        1.0 - f
    }
}

fn dot(z: (f64, f64), e: (f64, f64)) -> f64 {
    z.0 * e.0 + z.1 * e.1
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridIntersection {
    /// `(j, k)` with `j < k`.
    pub families: (u8, u8),
    /// Line `m` of family `j` and line `n` of family `k`.
    pub lines: (i64, i64),
    pub location: (f64, f64),
}

/// Shape dual to an intersection of families `j` and `k`.
pub fn pair_shape(j: u8, k: u8) -> Shape {
    match (k as i64 - j as i64).rem_euclid(5) {
        1 | 4 => Shape::Thick,
        _ => Shape::Thin,
    }
}

fn meet(params: &PentagridParams, j: usize, k: usize, m: i64, n: i64) -> (f64, f64) {
    let (ej, ek) = (DIRECTIONS[j], DIRECTIONS[k]);
    let a = m as f64 + params.offsets[j];
    let b = n as f64 + params.offsets[k];
    let det = ej.0 * ek.1 - ej.1 * ek.0;
    ((a * ek.1 - b * ej.1) / det, (ej.0 * b - ek.0 * a) / det)
}

/// All intersections within the window disc, ordered by families and lines.
pub fn intersections(params: &PentagridParams) -> Vec<GridIntersection> {
    let r = params.radius;
    let mut out = Vec::new();
    for j in 0..5usize {
        for k in j + 1..5 {
            let (mlo, mhi) = (floor(-r - params.offsets[j]), ceil(r - params.offsets[j]));
            let (nlo, nhi) = (floor(-r - params.offsets[k]), ceil(r - params.offsets[k]));
            for m in mlo..=mhi {
                for n in nlo..=nhi {
                    let z = meet(params, j, k, m, n);
                    if z.0 * z.0 + z.1 * z.1 <= r * r {
                        out.push(GridIntersection {
                            families: (j as u8, k as u8),
                            lines: (m, n),
                            location: z,
                        });
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regularity {
    Regular,
    /// Three lines meet within tolerance at `point`.
    Singular { point: (f64, f64), families: [u8; 3] },
}

impl Regularity {
    pub fn is_regular(&self) -> bool {
        matches!(self, Regularity::Regular)
    }
}

/// Scans the window for a point on three or more lines.
pub fn is_regular(params: &PentagridParams) -> Regularity {
    for x in intersections(params) {
        let (j, k) = x.families;
        for i in 0..5u8 {
            if i == j || i == k {
                continue;
            }
            let t = dot(x.location, DIRECTIONS[i as usize]) - params.offsets[i as usize];
            if dist_to_integer(t) <= params.tolerance {
                return Regularity::Singular {
                    point: x.location,
                    families: [j, k, i],
                };
            }
        }
    }
    Regularity::Regular
}

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
#[error("point lies on a line of family {family}")]
pub struct OnGridLine {
    pub family: u8,
}

/// Mesh-cell label `K` of the cell containing `z`.
pub fn dual_vertex(z: (f64, f64), params: &PentagridParams) -> Result<[i64; 5], OnGridLine> {
    let mut k = [0i64; 5];
    for (i, slot) in k.iter_mut().enumerate() {
        let t = dot(z, DIRECTIONS[i]) - params.offsets[i];
        if dist_to_integer(t) <= params.tolerance {
            return Err(OnGridLine { family: i as u8 });
        }
        *slot = ceil(t);
    }
    Ok(k)
}

/// `Σ K_i ζ^(2i)`.
pub fn lattice_point(k: [i64; 5]) -> LatticePoint {
    let mut p = LatticePoint::ZERO;
    for (i, ki) in k.iter().enumerate() {
        p = p + LatticePoint::unit(2 * i as i64).checked_scale(*ki).expect("mesh label in range");
    }
    p
}

/// The rhomb dual to one intersection of a regular grid.
pub fn dual_tile(params: &PentagridParams, x: &GridIntersection) -> ShapeTile {
    let (j, k) = (x.families.0 as usize, x.families.1 as usize);
    let mut base = [0i64; 5];
    for (i, slot) in base.iter_mut().enumerate() {
        *slot = if i == j {
            x.lines.0
        } else if i == k {
            x.lines.1
        } else {
            ceil(dot(x.location, DIRECTIONS[i]) - params.offsets[i])
        };
    }
    let v = lattice_point(base);
    let ej = LatticePoint::unit(2 * j as i64);
    let ek = LatticePoint::unit(2 * k as i64);
    ShapeTile::from_corners([v, v + ej, v + ej + ek, v + ek]).expect("unit rhomb")
}

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
#[error("pentagrid is singular near ({:.6}, {:.6})", point.0, point.1)]
pub struct NotRegular {
    pub point: (f64, f64),
    pub families: [u8; 3],
}

/// One rhomb per intersection in the window, sorted.
pub fn generate(params: &PentagridParams) -> Result<Vec<ShapeTile>, NotRegular> {
    if let Regularity::Singular { point, families } = is_regular(params) {
        return Err(NotRegular { point, families });
    }
    let mut out: Vec<ShapeTile> = intersections(params).iter().map(|x| dual_tile(params, x)).collect();
    out.sort();
    Ok(out)
}

/// Consecutive intersections along each grid line in the window.
pub fn grid_line_neighbours(params: &PentagridParams) -> Vec<(GridIntersection, GridIntersection)> {
    let mut lines: BTreeMap<(u8, i64), Vec<(f64, GridIntersection)>> = BTreeMap::new();
    for x in intersections(params) {
        let (j, k) = x.families;
        for (fam, line) in [(j, x.lines.0), (k, x.lines.1)] {
            let e = DIRECTIONS[fam as usize];
            // Position along the line direction, perpendicular to e.
            let s = -x.location.0 * e.1 + x.location.1 * e.0;
            lines.entry((fam, line)).or_default().push((s, x));
        }
    }
    let mut out = Vec::new();
    for mut pts in lines.into_values() {
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        for w in pts.windows(2) {
            out.push((w[0].1, w[1].1));
        }
    }
    out
}

fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64) - 0.5
}

fn offsets_with_sum(seed: u64, sum: f64, radius: f64) -> PentagridParams {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut g = [0.0; 5];
        for x in g.iter_mut().take(4) {
            *x = uniform(&mut rng);
        }
        let partial: f64 = g[..4].iter().sum();
        g[4] = sum - partial;
        let params = PentagridParams::new(g, radius).expect("positive radius");
        if is_regular(&params).is_regular() {
            return params;
        }
    }
}

/// Random regular offsets with `Σγ = 0`.
pub fn penrose_offsets(seed: u64, radius: f64) -> PentagridParams {
    offsets_with_sum(seed, 0.0, radius)
}

/// Random regular offsets with a non-integral sum.
pub fn seabed_offsets(seed: u64, sum_target: f64, radius: f64) -> Result<PentagridParams, ParamsError> {
    if dist_to_integer(sum_target) == 0.0 {
        return Err(ParamsError::IntegralSum(sum_target));
    }
    Ok(offsets_with_sum(seed, sum_target, radius))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Inference {
    /// Every tile is determined.
    Unique(Patch),
    Ambiguous(AmbiguityReport),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbiguityReport {
    /// Tiles with a single consistent placement.
    pub determined: Patch,
    /// Remaining tiles with every placement some full assignment supports.
    pub undetermined: Vec<(ShapeTile, Vec<PlacedTile>)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("no marking assignment exists; first conflict at {tile:?}")]
pub struct Unsatisfiable {
    pub tile: ShapeTile,
}

struct Csp {
    shapes: Vec<ShapeTile>,
    cands: Vec<Vec<PlacedTile>>,
    /// For tile `a`: `(b, mask)` where `mask[va]` holds the `b` values that
    /// agree with value `va` of `a`.
    arcs: Vec<Vec<(usize, [u8; 8])>>,
}

impl Csp {
    fn new(shapes: &[ShapeTile], set: &PrototileSet) -> Csp {
        let mut shapes = shapes.to_vec();
        shapes.sort();
        shapes.dedup();
        let cands: Vec<Vec<PlacedTile>> = shapes.iter().map(|s| s.placements(false)).collect();
        let mut by_edge: BTreeMap<(LatticePoint, LatticePoint), Vec<usize>> = BTreeMap::new();
        for (i, s) in shapes.iter().enumerate() {
            let v = s.vertices();
            for c in 0..4 {
                by_edge.entry(edge_key(v[c], v[(c + 1) % 4])).or_default().push(i);
            }
        }
        let mut arcs = alloc::vec![Vec::new(); shapes.len()];
        for users in by_edge.values() {
            if users.len() != 2 {
                continue;
            }
            let (a, b) = (users[0], users[1]);
            let mut ab = [0u8; 8];
            let mut ba = [0u8; 8];
            for (va, ta) in cands[a].iter().enumerate() {
                for (vb, tb) in cands[b].iter().enumerate() {
                    if shared_edges_match(ta, tb, set) {
                        ab[va] |= 1 << vb;
                        ba[vb] |= 1 << va;
                    }
                }
            }
            arcs[a].push((b, ab));
            arcs[b].push((a, ba));
        }
        Csp { shapes, cands, arcs }
    }

    fn full_domains(&self) -> Vec<u8> {
        self.cands.iter().map(|c| ((1u16 << c.len()) - 1) as u8).collect()
    }

    /// Arc consistency from the tiles in `queue`; `Err` names an emptied tile.
    fn propagate(&self, dom: &mut [u8], mut queue: VecDeque<usize>) -> Result<(), usize> {
        let mut queued: Vec<bool> = alloc::vec![false; dom.len()];
        for &q in &queue {
            queued[q] = true;
        }
        while let Some(x) = queue.pop_front() {
            queued[x] = false;
            for &(y, _) in &self.arcs[x] {
                // Revise y against x.
                let back = self.arcs[y].iter().find(|a| a.0 == x).expect("symmetric arcs").1;
                let mut keep = 0u8;
                for vy in 0..8 {
                    if dom[y] & (1 << vy) != 0 && back[vy] & dom[x] != 0 {
                        keep |= 1 << vy;
                    }
                }
                if keep != dom[y] {
                    dom[y] = keep;
                    if keep == 0 {
                        return Err(y);
                    }
                    if !queued[y] {
                        queued[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        Ok(())
    }

    /// Depth-first search with propagation, most constrained tile first.
    fn solve(&self, dom: Vec<u8>) -> Option<Vec<u8>> {
        let mut stack = Vec::from([dom]);
        while let Some(dom) = stack.pop() {
            let pick = (0..dom.len())
                .filter(|&i| dom[i].count_ones() > 1)
                .min_by_key(|&i| (dom[i].count_ones(), i));
            let Some(t) = pick else {
                return Some(dom);
            };
            // Push in reverse so the lowest value is tried first.
            for v in (0..8).rev() {
                if dom[t] & (1 << v) == 0 {
                    continue;
                }
                let mut next = dom.clone();
                next[t] = 1 << v;
                if self.propagate(&mut next, VecDeque::from([t])).is_ok() {
                    stack.push(next);
                }
            }
        }
        None
    }
}

/// Assigns a prototile to every rhomb so that shared edges match.
///
/// A tile is reported undetermined only when each of its remaining
/// placements occurs in some full assignment.
pub fn infer_markings(shapes: &[ShapeTile], set: &PrototileSet) -> Result<Inference, Unsatisfiable> {
    let csp = Csp::new(shapes, set);
    let n = csp.shapes.len();
    let mut dom = csp.full_domains();
    if let Err(t) = csp.propagate(&mut dom, (0..n).collect()) {
        return Err(Unsatisfiable { tile: csp.shapes[t] });
    }
    let first = csp.solve(dom.clone()).ok_or(Unsatisfiable {
        tile: csp.shapes.first().copied().unwrap_or(ShapeTile::canonical(Shape::Thin, 0, LatticePoint::ZERO)),
    })?;
    let mut supported = first;
    for t in 0..n {
        for v in 0..8 {
            let bit = 1u8 << v;
            if dom[t] & bit == 0 || supported[t] & bit != 0 {
                continue;
            }
            let mut trial = dom.clone();
            trial[t] = bit;
            let found = csp
                .propagate(&mut trial, VecDeque::from([t]))
                .ok()
                .and_then(|_| csp.solve(trial));
            match found {
                Some(sol) => {
                    for (s, x) in supported.iter_mut().zip(sol) {
                        *s |= x;
                    }
                }
                None => {
                    dom[t] &= !bit;
                    csp.propagate(&mut dom, VecDeque::from([t]))
                        .expect("a supported value survives");
                }
            }
        }
    }
    let mut determined = Vec::new();
    let mut undetermined = Vec::new();
    for t in 0..n {
        let values: Vec<PlacedTile> = (0..csp.cands[t].len())
            .filter(|v| dom[t] & (1 << v) != 0)
            .map(|v| csp.cands[t][v])
            .collect();
        if values.len() == 1 {
            determined.push(values[0]);
        } else {
            undetermined.push((csp.shapes[t], values));
        }
    }
    determined.sort();
    let determined = Patch::new(determined);
    if undetermined.is_empty() {
        Ok(Inference::Unique(determined))
    } else {
        Ok(Inference::Ambiguous(AmbiguityReport {
            determined,
            undetermined,
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::substitution::{substitute_n, DEFAULT_BUDGET};
    use crate::tiles::{validate_shapes, ProtoId};
    use alloc::collections::BTreeSet;

    fn params(offsets: [f64; 5], radius: f64) -> PentagridParams {
        PentagridParams::new(offsets, radius).unwrap()
    }

    #[test]
    fn floor_and_ceil() {
        for (x, f, c) in [(1.5, 1, 2), (-1.5, -2, -1), (2.0, 2, 2), (-0.0, 0, 0), (-3.0, -3, -3), (1e-12, 0, 1)] {
            assert_eq!((floor(x), ceil(x)), (f, c), "{x}");
        }
    }

    #[test]
    fn zero_offsets_are_singular() {
        let p = params([0.0; 5], 5.0);
        assert!(!is_regular(&p).is_regular());
        assert!(generate(&p).is_err());
        assert!(PentagridParams::new([0.0; 5], 0.0).is_err());
    }

    #[test]
    fn exact_triple_point_with_zero_tolerance() {
        // Families 0, 1 and 2 all pass through the origin; 3 and 4 do not.
        let p = PentagridParams::with_tolerance([0.0, 0.0, 0.0, 0.25, 0.4], 3.0, 0.0).unwrap();
        match is_regular(&p) {
            Regularity::Singular { point, families } => {
                for f in families {
                    let t = dot(point, DIRECTIONS[f as usize]) - p.offsets[f as usize];
                    assert!(dist_to_integer(t) < 1e-12, "{point:?} {families:?}");
                }
                assert!(families.iter().all(|&f| f < 3));
            }
            Regularity::Regular => panic!("missed the triple point"),
        }
        let p = PentagridParams::with_tolerance([0.1, 0.2, 0.3, 0.25, 0.4], 3.0, 0.0).unwrap();
        assert!(is_regular(&p).is_regular());
    }

    #[test]
    fn generic_offsets_are_regular() {
        for seed in 0..5 {
            let p = penrose_offsets(seed, 15.0);
            assert!(is_regular(&p).is_regular());
            assert!(p.offset_sum().abs() < 1e-12);
        }
    }

    #[test]
    fn crossing_one_line_moves_one_label() {
        let p = params([0.01; 5], 10.0);
        let mut prev = dual_vertex((0.123, 0.456), &p).unwrap();
        let steps = 2000;
        for s in 1..=steps {
            let t = s as f64 / steps as f64;
            let z = (0.123 + 3.7 * t, 0.456 - 2.1 * t);
            let Ok(k) = dual_vertex(z, &p) else { continue };
            let diff: Vec<i64> = (0..5).map(|i| k[i] - prev[i]).collect();
            let moved: i64 = diff.iter().map(|d| d.abs()).sum();
            assert!(moved <= 1, "{diff:?}");
            prev = k;
        }
    }

    #[test]
    fn four_cells_around_an_intersection_span_its_rhomb() {
        let p = penrose_offsets(7, 6.0);
        for x in intersections(&p) {
            let tile = dual_tile(&p, &x);
            let mut want = tile.vertices().to_vec();
            want.sort();
            let (j, k) = (x.families.0 as usize, x.families.1 as usize);
            let eps = 1e-6;
            let mut got = Vec::new();
            for sj in [-1.0, 1.0] {
                for sk in [-1.0, 1.0] {
                    let ej = DIRECTIONS[j];
                    let ek = DIRECTIONS[k];
                    let z = (
                        x.location.0 + eps * (sj * ej.0 + sk * ek.0),
                        x.location.1 + eps * (sj * ej.1 + sk * ek.1),
                    );
                    got.push(lattice_point(dual_vertex(z, &p).unwrap()));
                }
            }
            got.sort();
            got.dedup();
            assert_eq!(got, want);
            assert_eq!(tile.shape, pair_shape(x.families.0, x.families.1));
        }
    }

    #[test]
    fn generated_patch_is_valid_and_adjacent() {
        let p = penrose_offsets(3, 12.0);
        let tiles = generate(&p).unwrap();
        assert!(validate_shapes(&tiles).is_empty());
        for (a, b) in grid_line_neighbours(&p) {
            let (ta, tb) = (dual_tile(&p, &a), dual_tile(&p, &b));
            let ea: BTreeSet<_> = edges(&ta).into_iter().collect();
            let shared = edges(&tb).into_iter().filter(|e| ea.contains(e)).count();
            assert_eq!(shared, 1);
        }
    }

    fn edges(t: &ShapeTile) -> Vec<(LatticePoint, LatticePoint)> {
        let v = t.vertices();
        (0..4).map(|i| edge_key(v[i], v[(i + 1) % 4])).collect()
    }

    #[test]
    fn integer_offset_shift_translates_exactly() {
        let p = seabed_offsets(11, 0.5, 8.0).unwrap();
        let shift = [1i64, -2, 0, 3, 1];
        let mut q = p;
        for i in 0..5 {
            q.offsets[i] += shift[i] as f64;
        }
        let a = generate(&p).unwrap();
        let b = generate(&q).unwrap();
        let t = lattice_point(shift.map(|s| -s));
        let moved: Vec<ShapeTile> = a
            .iter()
            .map(|s| ShapeTile::canonical(s.shape, s.rot as i64, s.anchor + t))
            .collect();
        assert_eq!(b, moved);
    }

    #[test]
    fn seabed_offsets_hit_their_sum() {
        let p = seabed_offsets(5, 0.5, 10.0).unwrap();
        assert!((p.offset_sum() - 0.5).abs() < 1e-12);
        assert!(is_regular(&p).is_regular());
        assert!(seabed_offsets(5, 2.0, 10.0).is_err());
    }

    #[test]
    fn lone_rhomb_is_ambiguous() {
        let set = builtin::prototiles();
        let s = ShapeTile::canonical(Shape::Thick, 1, LatticePoint::ZERO);
        let Inference::Ambiguous(rep) = infer_markings(&[s], &set).unwrap() else {
            panic!("a lone rhomb cannot be determined");
        };
        assert!(rep.determined.is_empty());
        let ids: BTreeSet<ProtoId> = rep.undetermined[0].1.iter().map(|t| t.proto).collect();
        assert_eq!(ids.len(), 3);
    }

    #[test]
    fn some_edge_pair_is_illegal() {
        let set = builtin::prototiles();
        let a = ShapeTile::canonical(Shape::Thin, 0, LatticePoint::ZERO);
        let mut found = false;
        for shape in [Shape::Thin, Shape::Thick] {
            for rot in 0..10 {
                for anchor in a.vertices() {
                    for back in [LatticePoint::ZERO, -LatticePoint::unit(rot), -LatticePoint::unit(rot + shape.spread())] {
                        let b = ShapeTile::canonical(shape, rot, anchor + back);
                        if b == a || !validate_shapes(&[a, b]).is_empty() {
                            continue;
                        }
                        let shares = edges(&a).iter().any(|e| edges(&b).contains(e));
                        if shares && infer_markings(&[a, b], &set).is_err() {
                            found = true;
                        }
                    }
                }
            }
        }
        assert!(found);
    }

    #[test]
    fn strip_and_recover() {
        let r = builtin::rule().unwrap();
        let p = substitute_n(&r, ProtoId::ThickII, 2, DEFAULT_BUDGET).unwrap();
        let shapes: Vec<ShapeTile> = p.tiles.iter().map(|t| t.shape_tile()).collect();
        let got = match infer_markings(&shapes, r.prototiles()).unwrap() {
            Inference::Unique(p) => p,
            Inference::Ambiguous(rep) => rep.determined,
        };
        let truth: BTreeSet<PlacedTile> = p.tiles.iter().copied().collect();
        assert!(got.tiles.iter().all(|t| truth.contains(t)));
        let ix = p.index();
        let recovered: BTreeSet<PlacedTile> = got.tiles.iter().copied().collect();
        for t in &p.tiles {
            let v = t.vertices();
            let enclosed = (0..4).all(|i| ix.edges[&edge_key(v[i], v[(i + 1) % 4])].len() == 2);
            assert!(!enclosed || recovered.contains(t), "{t:?}");
        }
    }
}
