//! The φ³ inflate-and-subdivide rule, its count matrix and Perron data.
//!
//! A side of length φ³ is not a sum of unit edges, so some children straddle
//! it, cut along a diagonal. Each straddler belongs to exactly one of the two
//! supertiles it touches; patches list owned children only, so counts are
//! integral and the area identity is exact.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::algebra::{ArithmeticOverflow, GoldenNumber, LatticePoint};
use crate::tiles::{
    validate_patch, Patch, PlacedTile, ProtoId, PrototileSet, Shape, VertexStar, Violation,
};

/// Default tile budget for [`substitute_n`].
pub const DEFAULT_BUDGET: u64 = 10_000_000;
/// Bound for the primitivity search, `(6 − 1)² + 1`.
pub const PRIMITIVITY_BOUND: u32 = 26;
/// Default radius for super-stripe detection.
pub const DEFAULT_STRIPE_RADIUS: u32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RuleError {
    #[error("{proto}: replacement patch is empty")]
    Empty { proto: ProtoId },
    #[error("{proto}: replacement patch is not legal: {violation:?}")]
    InvalidPatch { proto: ProtoId, violation: Violation },
    #[error("{proto}: area {got} differs from the inflated area {want}")]
    Area {
        proto: ProtoId,
        got: GoldenNumber,
        want: GoldenNumber,
    },
    #[error("{proto} edge {edge}: {reason}")]
    Boundary {
        proto: ProtoId,
        edge: u8,
        reason: &'static str,
    },
    #[error("{proto} edge {edge} does not fit {other} edge {other_edge}: {reason}")]
    Marking {
        proto: ProtoId,
        edge: u8,
        other: ProtoId,
        other_edge: u8,
        reason: &'static str,
    },
    #[error(transparent)]
    Overflow(#[from] ArithmeticOverflow),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SubstituteError {
    #[error("predicted {predicted} tiles exceeds the budget of {budget}")]
    Budget { predicted: u128, budget: u64 },
    #[error(transparent)]
    Overflow(#[from] ArithmeticOverflow),
}

/// How a piece of an inflated side is covered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PieceKind {
    /// A child edge lying on the side.
    Edge,
    /// The splitting diagonal of a child that straddles the side.
    Diagonal,
}

/// An interval of a side `from → to`, measured by `dot2` with `to − from`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SidePiece {
    pub from: GoldenNumber,
    pub to: GoldenNumber,
    pub kind: PieceKind,
}

/// Per-prototile replacement patches in the inflated frame: the parent sits
/// at rot 0, unreflected, with corner 0 at the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstitutionRule {
    protos: PrototileSet,
    patches: [Vec<PlacedTile>; 6],
    power: u32,
    factor: GoldenNumber,
    factor_point: LatticePoint,
    stripe_radius: u32,
    reflections: bool,
}

impl SubstitutionRule {
    /// Builds a rule and runs the load checks: every patch is legal and has
    /// the inflated area, the inflated outline runs along child edges and
    /// straddler diagonals only, and the supertiles of every legal vertex
    /// star fit together without gaps, overlaps or marking conflicts.
    pub fn new(
        protos: PrototileSet,
        patches: [Vec<PlacedTile>; 6],
        power: u32,
        stripe_radius: u32,
    ) -> Result<Self, RuleError> {
        let factor = GoldenNumber::phi_pow(power)?;
        let factor_point = LatticePoint::ONE.scale_golden(factor)?;
        let mut patches = patches;
        for p in patches.iter_mut() {
            p.sort();
        }
        let reflections = patches.iter().flatten().any(|t| t.reflected);
        let rule = SubstitutionRule {
            protos,
            patches,
            power,
            factor,
            factor_point,
            stripe_radius,
            reflections,
        };
        rule.check()?;
        Ok(rule)
    }

    pub fn prototiles(&self) -> &PrototileSet {
        &self.protos
    }

    pub fn patch(&self, id: ProtoId) -> &[PlacedTile] {
        &self.patches[id.index()]
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    /// The linear inflation factor `φ^power`.
    pub fn factor(&self) -> GoldenNumber {
        self.factor
    }

    pub fn stripe_radius(&self) -> u32 {
        self.stripe_radius
    }

    /// Whether reflected children occur, and hence reflected tiles at all.
    pub fn admits_reflections(&self) -> bool {
        self.reflections
    }

    /// `factor · p`.
    pub fn inflate(&self, p: LatticePoint) -> Result<LatticePoint, ArithmeticOverflow> {
        p.checked_mul(self.factor_point)
    }

    /// The children of `parent`, placed in the plane.
    pub fn children(&self, parent: &PlacedTile) -> Result<Vec<PlacedTile>, ArithmeticOverflow> {
        let base = self.inflate(parent.anchor)?;
        let rot = parent.rot as i64;
        self.patch(parent.proto)
            .iter()
            .map(|c| {
                let c = if parent.reflected { c.conjugated() } else { *c };
                Ok(PlacedTile::new(
                    c.proto,
                    c.rot as i64 + rot,
                    c.reflected,
                    c.anchor.checked_rotate(rot)?.checked_add(base)?,
                ))
            })
            .collect()
    }

    fn unit_parent(id: ProtoId, reflected: bool) -> PlacedTile {
        PlacedTile::new(id, 0, reflected, LatticePoint::ZERO)
    }

    /// Every child lies in the closed inflated rhomb, or straddles one side
    /// with its splitting diagonal on that side.
    fn check_outline(&self, id: ProtoId, reflected: bool) -> Result<(), RuleError> {
        let parent = Self::unit_parent(id, reflected);
        let mut corners = parent.vertices();
        for c in corners.iter_mut() {
            *c = self.inflate(*c)?;
        }
        let orient = if reflected { -1 } else { 1 };
        // side(k, v) > 0 strictly inside the half-plane of side k.
        let side = |k: usize, v: LatticePoint| -> Result<i32, ArithmeticOverflow> {
            let a = corners[k];
            let b = corners[(k + 1) % 4];
            Ok(orient * b.checked_sub(a)?.cross(v.checked_sub(a)?)?.signum())
        };
        for t in self.patch(id) {
            let t = if reflected { t.conjugated() } else { *t };
            let (d0, d1) = splitting_diagonal(t.shape());
            let v = t.vertices();
            let mut s = [[0i32; 4]; 4];
            for (i, vi) in v.iter().enumerate() {
                for (k, row) in s[i].iter_mut().enumerate() {
                    *row = side(k, *vi)?;
                }
            }
            let outside: Vec<usize> = (0..4).filter(|&i| s[i].iter().any(|&x| x < 0)).collect();
            if outside.is_empty() {
                continue;
            }
            let crossed = (0..4).find(|&k| s[outside[0]][k] < 0).unwrap_or(0);
            let straddles = outside.len() == 1
                && (0..4).filter(|&k| s[outside[0]][k] < 0).count() == 1
                && s[d0][crossed] == 0
                && s[d1][crossed] == 0
                && (0..4).all(|i| i == outside[0] || s[i].iter().all(|&x| x >= 0));
            if !straddles {
                return Err(RuleError::Boundary {
                    proto: id,
                    edge: crossed as u8,
                    reason: "a child crosses the inflated outline",
                });
            }
        }
        Ok(())
    }

    /// Full vertex stars of the two-step iterates, up to rotation, each
    /// translated so its vertex is the origin.
    pub fn legal_stars(&self) -> Result<Vec<Vec<PlacedTile>>, ArithmeticOverflow> {
        self.stars_at_depth(2)
    }

    fn stars_at_depth(&self, depth: u32) -> Result<Vec<Vec<PlacedTile>>, ArithmeticOverflow> {
        let mut seen = BTreeSet::new();
        let variants: &[bool] = if self.reflections { &[false, true] } else { &[false] };
        for id in ProtoId::ALL {
            let mut tiles = Vec::from([Self::unit_parent(id, false)]);
            for _ in 0..depth {
                let mut next = BTreeSet::new();
                for t in &tiles {
                    next.extend(self.children(t)?);
                }
                tiles = next.into_iter().collect();
            }
            let patch = Patch::new(tiles);
            let ix = patch.index();
            for &v in ix.vertices.keys() {
                let Ok(star) = VertexStar::from_index(&patch, &ix, v) else {
                    continue;
                };
                if !star.full {
                    continue;
                }
                let mut best: Option<Vec<PlacedTile>> = None;
                for &refl in variants {
                    for rot in 0..10 {
                        let mut s: Vec<PlacedTile> = Vec::with_capacity(star.incident.len());
                        for (t, _) in &star.incident {
                            let mut t = PlacedTile::new(t.proto, t.rot as i64, t.reflected, t.anchor.checked_sub(v)?);
                            if refl {
                                t = t.conjugated();
                            }
                            s.push(t.moved(rot, LatticePoint::ZERO));
                        }
                        s.sort();
                        if best.as_ref().is_none_or(|b| s < *b) {
                            best = Some(s);
                        }
                    }
                }
                if let Some(b) = best {
                    seen.insert(b);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// Supertiles of a legal star form a legal patch, and near the star's
    /// vertex every shared side is covered exactly: child edges from both
    /// sides, straddler diagonals from one.
    fn check_star(&self, star: &[PlacedTile]) -> Result<(), RuleError> {
        let mut owner: BTreeMap<PlacedTile, usize> = BTreeMap::new();
        for (k, t) in star.iter().enumerate() {
            for c in self.children(t)? {
                owner.insert(c, k);
            }
        }
        let union: Vec<PlacedTile> = owner.keys().copied().collect();
        // The edge of star tile `k` on the spoke towards `w`.
        let spoke_edge = |k: usize, w: LatticePoint| -> u8 {
            let t = &star[k];
            (0..4u8)
                .find(|&i| {
                    let (p, q) = t.edge(i);
                    (p.is_zero() && q == w) || (q.is_zero() && p == w)
                })
                .unwrap_or(0)
        };
        let shared = |ka: usize, kb: usize| -> Option<(u8, u8)> {
            (0..4u8).find_map(|i| {
                let (p, q) = star[ka].edge(i);
                (0..4u8)
                    .find(|&j| {
                        let (x, y) = star[kb].edge(j);
                        (x == q && y == p) || (x == p && y == q)
                    })
                    .map(|j| (i, j))
            })
        };
        let report = validate_patch(&Patch::new(union.clone()), &self.protos);
        if let Some(v) = report.violations.first() {
            let (a, b) = match *v {
                Violation::Overlap { a, b } => (a, b),
                Violation::NotEdgeToEdge { tile, other, .. } => (tile, other),
                Violation::MarkingMismatch { a, b, .. } => (a, b),
            };
            let ka = owner.get(&a).copied().unwrap_or(0);
            let kb = owner.get(&b).copied().unwrap_or(0);
            let (ea, eb) = shared(ka, kb).unwrap_or((0, 0));
            return Err(match v {
                Violation::MarkingMismatch { .. } => RuleError::Marking {
                    proto: star[ka].proto,
                    edge: ea,
                    other: star[kb].proto,
                    other_edge: eb,
                    reason: "child edge markings disagree across the supertile edge",
                },
                _ => RuleError::Boundary {
                    proto: star[ka].proto,
                    edge: ea,
                    reason: "neighbouring supertiles overlap",
                },
            });
        }
        let mut spokes = BTreeSet::new();
        for (k, t) in star.iter().enumerate() {
            for i in 0..4u8 {
                let (p, q) = t.edge(i);
                if p.is_zero() {
                    spokes.insert((q, k));
                } else if q.is_zero() {
                    spokes.insert((p, k));
                }
            }
        }
        for &(w, k) in &spokes {
            let gap = RuleError::Boundary {
                proto: star[k].proto,
                edge: spoke_edge(k, w),
                reason: "neighbouring supertiles leave a gap along the edge",
            };
            let to = self.inflate(w)?;
            let pieces = side_pieces(&union, LatticePoint::ZERO, to)?;
            let length = to.dot2(to)?;
            let mut at = GoldenNumber::ZERO;
            let mut i = 0;
            while at.checked_scale(2)? < length {
                let Some(&piece) = pieces.get(i) else {
                    return Err(gap);
                };
                let copies = pieces[i..].iter().take_while(|x| **x == piece).count();
                let want = match piece.kind {
                    PieceKind::Edge => 2,
                    PieceKind::Diagonal => 1,
                };
                if piece.from != at || copies != want {
                    return Err(gap);
                }
                at = piece.to;
                i += copies;
            }
        }
        Ok(())
    }

    fn check(&self) -> Result<(), RuleError> {
        let inflation_area = self.factor.checked_mul(self.factor)?;
        for id in ProtoId::ALL {
            let tiles = self.patch(id);
            if tiles.is_empty() {
                return Err(RuleError::Empty { proto: id });
            }
            let patch = Patch::new(tiles.to_vec());
            let report = validate_patch(&patch, &self.protos);
            if let Some(v) = report.violations.first() {
                return Err(RuleError::InvalidPatch {
                    proto: id,
                    violation: *v,
                });
            }
            let want = inflation_area.checked_mul(id.shape().area())?;
            let got = patch.area();
            if got != want {
                return Err(RuleError::Area { proto: id, got, want });
            }
        }
        let variants: &[bool] = if self.reflections { &[false, true] } else { &[false] };
        for id in ProtoId::ALL {
            for &r in variants {
                self.check_outline(id, r)?;
            }
        }
        for star in self.legal_stars()? {
            self.check_star(&star)?;
        }
        Ok(())
    }

    pub fn matrix(&self) -> SubstitutionMatrix {
        substitution_matrix(self)
    }
}

/// `m[i][j]` counts children of type `i` in the patch of type `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubstitutionMatrix {
    pub m: [[u64; 6]; 6],
}

pub fn substitution_matrix(r: &SubstitutionRule) -> SubstitutionMatrix {
    let mut m = [[0u64; 6]; 6];
    for j in ProtoId::ALL {
        for c in r.patch(j) {
            m[c.proto.index()][j.index()] += 1;
        }
    }
    SubstitutionMatrix { m }
}

impl SubstitutionMatrix {
    pub fn identity() -> Self {
        let mut m = [[0u64; 6]; 6];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        SubstitutionMatrix { m }
    }

    pub fn column_sums(&self) -> [u64; 6] {
        let mut s = [0u64; 6];
        for row in &self.m {
            for (j, x) in row.iter().enumerate() {
                s[j] += x;
            }
        }
        s
    }

    /// `m · v`, saturating.
    pub fn apply(&self, v: &[u128; 6]) -> [u128; 6] {
        let mut out = [0u128; 6];
        for (i, row) in self.m.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                out[i] = out[i].saturating_add((*x as u128).saturating_mul(v[j]));
            }
        }
        out
    }

    /// `(1,1,1,φ,φ,φ) · m` as a row of golden numbers.
    pub fn area_row(&self) -> Result<[GoldenNumber; 6], ArithmeticOverflow> {
        let mut out = [GoldenNumber::ZERO; 6];
        for (j, slot) in out.iter_mut().enumerate() {
            let mut acc = GoldenNumber::ZERO;
            for (i, row) in self.m.iter().enumerate() {
                let k = i64::try_from(row[j]).map_err(|_| ArithmeticOverflow::new("matrix"))?;
                let w = ProtoId::ALL[i].shape().area().checked_scale(k)?;
                acc = acc.checked_add(w)?;
            }
            *slot = acc;
        }
        Ok(out)
    }

    /// Whether `(1,1,1,φ,φ,φ) · m = λ · (1,1,1,φ,φ,φ)` holds exactly.
    pub fn area_identity(&self, lambda: GoldenNumber) -> Result<bool, ArithmeticOverflow> {
        let row = self.area_row()?;
        for (j, got) in row.iter().enumerate() {
            if *got != lambda.checked_mul(ProtoId::ALL[j].shape().area())? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Primitivity {
    /// The smallest `k` with `m^k` strictly positive.
    Primitive(u32),
    NotPrimitive,
}

/// Searches `k ≤ 26` for a strictly positive power, on the zero pattern.
pub fn check_primitive(m: &SubstitutionMatrix) -> Primitivity {
    let base: [[bool; 6]; 6] = core::array::from_fn(|i| core::array::from_fn(|j| m.m[i][j] > 0));
    let mut cur = base;
    for k in 1..=PRIMITIVITY_BOUND {
        if cur.iter().all(|row| row.iter().all(|&x| x)) {
            return Primitivity::Primitive(k);
        }
        let mut nxt = [[false; 6]; 6];
        for i in 0..6 {
            for j in 0..6 {
                nxt[i][j] = (0..6).any(|l| cur[i][l] && base[l][j]);
            }
        }
        cur = nxt;
    }
    Primitivity::NotPrimitive
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Perron {
    pub eigenvalue: f64,
    /// Right eigenvector normalised to sum 1.
    pub frequencies: [f64; 6],
    /// `max |m v − λ v|` at exit.
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("matrix is not primitive")]
pub struct NotPrimitive;

/// Power iteration for the Perron eigenpair.
pub fn perron_frequencies(m: &SubstitutionMatrix) -> Result<Perron, NotPrimitive> {
    if check_primitive(m) == Primitivity::NotPrimitive {
        return Err(NotPrimitive);
    }
    let a: [[f64; 6]; 6] = core::array::from_fn(|i| core::array::from_fn(|j| m.m[i][j] as f64));
    let mul = |v: &[f64; 6]| -> [f64; 6] {
        core::array::from_fn(|i| (0..6).map(|j| a[i][j] * v[j]).sum())
    };
    let mut v = [1.0 / 6.0; 6];
    let mut lambda = 0.0;
    let mut residual = f64::INFINITY;
    for _ in 0..10_000 {
        let w = mul(&v);
        let s: f64 = w.iter().sum();
        lambda = s;
        let next: [f64; 6] = core::array::from_fn(|i| w[i] / s);
        let mv = mul(&next);
        residual = (0..6)
            .map(|i| (mv[i] - lambda * next[i]).abs())
            .fold(0.0, f64::max);
        v = next;
        if residual < 1e-12 * lambda {
            break;
        }
    }
    Ok(Perron {
        eigenvalue: lambda,
        frequencies: v,
        residual,
    })
}

/// Replaces every tile by its transformed rule patch; coincident children are
/// merged by normal form.
pub fn substitute_once(p: &Patch, r: &SubstitutionRule) -> Result<Patch, SubstituteError> {
    let mut out = BTreeSet::new();
    for t in &p.tiles {
        out.extend(r.children(t)?);
    }
    Ok(Patch::new(out.into_iter().collect()))
}

/// Tile count after `n` steps from a single `proto`, by matrix powers.
pub fn predicted_count(r: &SubstitutionRule, proto: ProtoId, n: u32) -> u128 {
    let m = r.matrix();
    let mut v = [0u128; 6];
    v[proto.index()] = 1;
    for _ in 0..n {
        v = m.apply(&v);
    }
    v.iter().fold(0u128, |a, x| a.saturating_add(*x))
}

/// `n`-fold substitution of `proto` at the origin, rot 0.
pub fn substitute_n(
    r: &SubstitutionRule,
    proto: ProtoId,
    n: u32,
    budget: u64,
) -> Result<Patch, SubstituteError> {
    let predicted = predicted_count(r, proto, n);
    if predicted > budget as u128 {
        return Err(SubstituteError::Budget { predicted, budget });
    }
    let mut p = Patch::new([PlacedTile::new(proto, 0, false, LatticePoint::ZERO)].to_vec());
    for _ in 0..n {
        p = substitute_once(&p, r)?;
    }
    Ok(p)
}

/// Corners joined by the diagonal along which a straddling child is cut.
pub fn splitting_diagonal(shape: Shape) -> (usize, usize) {
    match shape {
        Shape::Thin => (1, 3),
        Shape::Thick => (0, 2),
    }
}

/// Child edges and straddler diagonals lying on the segment `from → to`,
/// sorted, with repeats kept.
pub fn side_pieces(
    tiles: &[PlacedTile],
    from: LatticePoint,
    to: LatticePoint,
) -> Result<Vec<SidePiece>, ArithmeticOverflow> {
    let d = to.checked_sub(from)?;
    let length2 = d.dot2(d)?;
    let on = |v: LatticePoint| -> Result<Option<GoldenNumber>, ArithmeticOverflow> {
        let w = v.checked_sub(from)?;
        if !d.cross(w)?.is_zero() {
            return Ok(None);
        }
        let t = d.dot2(w)?;
        Ok((t >= GoldenNumber::ZERO && t <= length2).then_some(t))
    };
    let mut out = Vec::new();
    for t in tiles {
        let v = t.vertices();
        let (d0, d1) = splitting_diagonal(t.shape());
        let mut segs = [(0usize, 1usize, PieceKind::Edge); 5];
        for (i, s) in segs.iter_mut().take(4).enumerate() {
            *s = (i, (i + 1) % 4, PieceKind::Edge);
        }
        segs[4] = (d0, d1, PieceKind::Diagonal);
        for (i, j, kind) in segs {
            if let (Some(x), Some(y)) = (on(v[i])?, on(v[j])?) {
                out.push((x.min(y), x.max(y), kind));
            }
        }
    }
    let mut pieces: Vec<SidePiece> = out
        .into_iter()
        .map(|(from, to, kind)| SidePiece { from, to, kind })
        .collect();
    pieces.sort();
    Ok(pieces)
}
