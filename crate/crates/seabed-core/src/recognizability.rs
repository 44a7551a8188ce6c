//! Supertile vertex detection and composition, the inverse of one
//! substitution step.
//!
//! Detection is conservative: any decision that could change when the patch
//! grows is reported as [`Confidence::BoundaryUnknown`] and never as a find.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::algebra::{ArithmeticOverflow, GoldenNumber, LatticePoint};
use crate::substitution::SubstitutionRule;
use crate::tiles::{
    classify_vertex, edge_key, shared_edges_match, validate_patch, validate_shapes, Patch,
    PlacedTile, ProtoId, PrototileSet, Shape, ShapeTile, ShapeViolation, VertexClass, VertexStar,
    Violation,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("patch is not valid: {0:?}")]
    InvalidPatch(Violation),
}

/// Vertices and tile edges of a patch, with marked-edge flags.
#[derive(Debug, Clone)]
pub struct VertexGraph {
    pub vertices: Vec<LatticePoint>,
    index: BTreeMap<LatticePoint, usize>,
    /// Sorted neighbour lists with the marked flag of the joining edge.
    pub adjacency: Vec<Vec<(usize, bool)>>,
    pub classes: Vec<VertexClass>,
    pub stars: Vec<VertexStar>,
    pub edge_count: usize,
    pub boundary_edge_count: usize,
}

pub fn build_vertex_graph(p: &Patch, set: &PrototileSet) -> Result<VertexGraph, GraphError> {
    if let Some(v) = validate_patch(p, set).violations.first() {
        return Err(GraphError::InvalidPatch(*v));
    }
    let ix = p.index();
    let vertices: Vec<LatticePoint> = ix.vertices.keys().copied().collect();
    let index: BTreeMap<LatticePoint, usize> =
        vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut adjacency = alloc::vec![Vec::new(); vertices.len()];
    let mut boundary_edge_count = 0;
    for (&(a, b), users) in &ix.edges {
        let (tile, edge) = users[0];
        let label = set.get(p.tiles[tile].proto).edges[edge as usize];
        let marked = set.is_marked(label.edge_type);
        let (ia, ib) = (index[&a], index[&b]);
        adjacency[ia].push((ib, marked));
        adjacency[ib].push((ia, marked));
        if users.len() == 1 {
            boundary_edge_count += 1;
        }
    }
    for row in adjacency.iter_mut() {
        row.sort();
    }
    let stars: Vec<VertexStar> = vertices
        .iter()
        .map(|v| VertexStar::from_index(p, &ix, *v).expect("indexed vertex"))
        .collect();
    let classes = stars.iter().map(|s| classify_vertex(s, set)).collect();
    Ok(VertexGraph {
        vertices,
        index,
        adjacency,
        classes,
        stars,
        edge_count: ix.edges.len(),
        boundary_edge_count,
    })
}

impl VertexGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn find(&self, v: LatticePoint) -> Option<usize> {
        self.index.get(&v).copied()
    }

    pub fn is_full(&self, v: usize) -> bool {
        self.stars[v].full
    }

    /// Vertices within graph distance `r` of `v`, with their distances.
    pub fn ball(&self, v: usize, r: u32) -> Vec<(usize, u32)> {
        let mut seen = BTreeMap::new();
        seen.insert(v, 0u32);
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            let d = seen[&u];
            if d == r {
                continue;
            }
            for &(w, _) in &self.adjacency[u] {
                if let alloc::collections::btree_map::Entry::Vacant(e) = seen.entry(w) {
                    e.insert(d + 1);
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Graph distance, if at most `cap`.
    pub fn distance(&self, a: usize, b: usize, cap: u32) -> Option<u32> {
        self.ball(a, cap).into_iter().find(|(v, _)| *v == b).map(|(_, d)| d)
    }

    fn ball_is_full(&self, v: usize, r: u32) -> bool {
        self.ball(v, r).iter().all(|(u, _)| self.is_full(*u))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SuperRole {
    SuperLight,
    SuperDark,
    SuperUnmarked,
    SuperStripe,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Confidence {
    Interior,
    BoundaryUnknown,
}

/// Output of one detector: decided finds, and vertices left undecided.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Detection {
    pub found: BTreeSet<usize>,
    pub unknown: BTreeSet<usize>,
}

/// Light vertices whose neighbours are all Stripe.
pub fn detect_super_light(g: &VertexGraph) -> Detection {
    let mut out = Detection::default();
    for v in 0..g.len() {
        if g.classes[v] != VertexClass::Light {
            continue;
        }
        let nbrs = &g.adjacency[v];
        if nbrs.iter().any(|&(w, _)| !g.is_full(w)) {
            out.unknown.insert(v);
        } else if nbrs.iter().all(|&(w, _)| g.classes[w] == VertexClass::Stripe) {
            out.found.insert(v);
        }
    }
    out
}

fn five_of(g: &VertexGraph, v: usize, proto: ProtoId) -> bool {
    let s = &g.stars[v];
    s.incident.len() == 5 && s.incident.iter().all(|(t, _)| t.proto == proto)
}

/// Unmarked vertices surrounded by five thick-iii tiles.
pub fn detect_super_dark(g: &VertexGraph) -> Detection {
    let mut out = Detection::default();
    for v in 0..g.len() {
        if g.classes[v] == VertexClass::Unmarked && five_of(g, v, ProtoId::ThickIII) {
            out.found.insert(v);
        }
    }
    out
}

/// Dark vertices surrounded by five thick-i tiles with exactly five marked
/// edges, each leading to a Light vertex.
pub fn detect_super_unmarked(g: &VertexGraph) -> Detection {
    let mut out = Detection::default();
    for v in 0..g.len() {
        if g.classes[v] != VertexClass::Dark || !five_of(g, v, ProtoId::ThickI) {
            continue;
        }
        let marked: Vec<usize> = g.adjacency[v].iter().filter(|e| e.1).map(|e| e.0).collect();
        if marked.iter().any(|&w| !g.is_full(w)) {
            out.unknown.insert(v);
        } else if marked.len() == 5 && marked.iter().all(|&w| g.classes[w] == VertexClass::Light) {
            out.found.insert(v);
        }
    }
    out
}

/// Unmarked vertices, other than super-dark ones, with no earlier find
/// within graph distance `radius`.
///
/// Earlier finds inside the ball are only settled when every star out to
/// `radius + 1` is full, so anything less is left undecided.
pub fn detect_super_stripe(g: &VertexGraph, prior: [&Detection; 3], radius: u32) -> Detection {
    let mut out = Detection::default();
    let dark = prior[1];
    for v in 0..g.len() {
        if g.classes[v] != VertexClass::Unmarked || dark.found.contains(&v) {
            continue;
        }
        if !g.ball_is_full(v, radius + 1) {
            out.unknown.insert(v);
            continue;
        }
        let near = g
            .ball(v, radius)
            .into_iter()
            .any(|(u, _)| prior.iter().any(|d| d.found.contains(&u)));
        if !near {
            out.found.insert(v);
        }
    }
    out
}

/// Role and confidence per graph vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupertileVertexMap {
    pub entries: Vec<(Option<SuperRole>, Confidence)>,
}

impl SupertileVertexMap {
    pub fn with_role(&self, role: SuperRole) -> impl Iterator<Item = usize> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.0 == Some(role))
            .map(|(i, _)| i)
    }

    pub fn detected(&self) -> impl Iterator<Item = (usize, SuperRole)> + '_ {
        self.entries.iter().enumerate().filter_map(|(i, e)| e.0.map(|r| (i, r)))
    }
}

/// Runs the four detectors in order.
pub fn detect_supertile_vertices(g: &VertexGraph, stripe_radius: u32) -> SupertileVertexMap {
    let light = detect_super_light(g);
    let dark = detect_super_dark(g);
    let unmarked = detect_super_unmarked(g);
    let stripe = detect_super_stripe(g, [&light, &dark, &unmarked], stripe_radius);
    let mut entries = alloc::vec![(None, Confidence::Interior); g.len()];
    for (v, e) in entries.iter_mut().enumerate() {
        if !g.is_full(v) {
            e.1 = Confidence::BoundaryUnknown;
        }
    }
    for (det, role) in [
        (&light, SuperRole::SuperLight),
        (&dark, SuperRole::SuperDark),
        (&unmarked, SuperRole::SuperUnmarked),
        (&stripe, SuperRole::SuperStripe),
    ] {
        for &v in &det.unknown {
            entries[v].1 = Confidence::BoundaryUnknown;
        }
        for &v in &det.found {
            if entries[v].0.is_none() {
                entries[v].0 = Some(role);
            }
        }
    }
    SupertileVertexMap { entries }
}

/// The role a parent vertex of the given class takes in its supertiles.
pub fn role_of_class(c: VertexClass) -> Option<SuperRole> {
    match c {
        VertexClass::Light => Some(SuperRole::SuperLight),
        VertexClass::Dark => Some(SuperRole::SuperDark),
        VertexClass::Unmarked => Some(SuperRole::SuperUnmarked),
        VertexClass::Stripe => Some(SuperRole::SuperStripe),
        VertexClass::Incomplete => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComposeError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("face {face:?} matches no transformed rule patch")]
    NoMatch { face: ShapeTile },
    #[error(transparent)]
    Overflow(#[from] ArithmeticOverflow),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Composition {
    /// Recovered parents, in parent coordinates.
    pub parent: Patch,
    /// Child → parent for every child inside a resolved face.
    pub assignment: BTreeMap<PlacedTile, PlacedTile>,
    /// Children not covered by any resolved face.
    pub margin: Vec<PlacedTile>,
    /// Faces found but not told apart among sibling prototiles.
    pub undetermined: Vec<ShapeTile>,
    pub roles: SupertileVertexMap,
    /// Graph vertices, aligned with `roles.entries`.
    pub vertices: Vec<LatticePoint>,
}

/// Composes a once-substituted patch from its detected supertile vertices.
pub fn compose(p: &Patch, r: &SubstitutionRule) -> Result<Composition, ComposeError> {
    let g = build_vertex_graph(p, r.prototiles())?;
    let roles = detect_supertile_vertices(&g, r.stripe_radius());
    let detected: BTreeSet<LatticePoint> = roles.detected().map(|(v, _)| g.vertices[v]).collect();
    let faces = assemble_faces(p, r, &detected)?;
    let margin = p
        .tiles
        .iter()
        .filter(|t| !faces.assignment.contains_key(*t))
        .copied()
        .collect();
    Ok(Composition {
        parent: faces.parents,
        assignment: faces.assignment,
        margin,
        undetermined: faces.undetermined,
        roles,
        vertices: g.vertices,
    })
}

/// `φ^-3`.
fn deflation() -> GoldenNumber {
    GoldenNumber::new(-3, 2)
}

enum Fit {
    Match,
    /// Some child is absent and none is contradicted.
    Partial,
    Contradicted,
}

/// Faces identified from a child patch.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Faces {
    /// Parents whose type is settled.
    pub parents: Patch,
    pub assignment: BTreeMap<PlacedTile, PlacedTile>,
    /// Faces whose children fit several parent types that no resolved
    /// neighbour tells apart.
    pub undetermined: Vec<ShapeTile>,
}

/// Closes rhomb faces on `detected` (points of the child patch at the
/// corners of supertiles) and identifies each face against the rule.
///
/// Sibling prototiles of one shape may share a replacement patch, so the
/// children fix a face's geometry and only narrow its type; edge matching
/// with neighbouring faces settles the rest. A face whose children are partly
/// outside the patch stays unresolved. A face contradicted by every
/// candidate is a conflict unless it overlaps an identified face: four
/// supertile corners can span a rhomb that is not a supertile.
pub fn assemble_faces(
    p: &Patch,
    r: &SubstitutionRule,
    detected: &BTreeSet<LatticePoint>,
) -> Result<Faces, ComposeError> {
    let present: BTreeSet<PlacedTile> = p.tiles.iter().copied().collect();
    let by_shape: BTreeSet<ShapeTile> = p.tiles.iter().map(|t| t.shape_tile()).collect();
    let factor = r.factor();
    let mut faces = BTreeSet::new();
    for &d in detected {
        let anchor = d.scale_golden(deflation())?;
        if anchor.scale_golden(factor)? != d {
            continue;
        }
        for shape in [Shape::Thin, Shape::Thick] {
            for rot in 0..10 {
                let face = ShapeTile::canonical(shape, rot, anchor);
                let mut closed = true;
                for v in face.vertices() {
                    if !detected.contains(&v.scale_golden(factor)?) {
                        closed = false;
                        break;
                    }
                }
                if closed {
                    faces.insert(face);
                }
            }
        }
    }
    let mut domains: BTreeMap<ShapeTile, Vec<(PlacedTile, Vec<PlacedTile>)>> = BTreeMap::new();
    let mut rejected: Vec<ShapeTile> = Vec::new();
    for face in &faces {
        let mut matches = Vec::new();
        let mut partial = false;
        for cand in face.placements(r.admits_reflections()) {
            let kids = r.children(&cand)?;
            let mut fit = Fit::Match;
            for c in &kids {
                if present.contains(c) {
                    continue;
                }
                if by_shape.contains(&c.shape_tile()) {
                    fit = Fit::Contradicted;
                    break;
                }
                fit = Fit::Partial;
            }
            match fit {
                Fit::Match => matches.push((cand, kids)),
                Fit::Partial => partial = true,
                Fit::Contradicted => {}
            }
        }
        if !matches.is_empty() {
            domains.insert(*face, matches);
        } else if !partial {
            rejected.push(*face);
        }
    }
    let identified: Vec<ShapeTile> = domains.keys().copied().collect();
    for face in rejected {
        let mut tiles = Vec::from([face]);
        tiles.extend(identified.iter().copied());
        let overlaps = validate_shapes(&tiles)
            .iter()
            .any(|v| matches!(v, ShapeViolation::Overlap { a: 0, .. }));
        if !overlaps {
            return Err(ComposeError::NoMatch { face });
        }
    }
    // Arc consistency over parent edges shared by two faces.
    let mut by_edge: BTreeMap<(LatticePoint, LatticePoint), Vec<ShapeTile>> = BTreeMap::new();
    for face in &identified {
        let v = face.vertices();
        for i in 0..4 {
            by_edge.entry(edge_key(v[i], v[(i + 1) % 4])).or_default().push(*face);
        }
    }
    let set = r.prototiles();
    let mut changed = true;
    while changed {
        changed = false;
        for pair in by_edge.values().filter(|f| f.len() == 2) {
            for (f, g) in [(pair[0], pair[1]), (pair[1], pair[0])] {
                let others: Vec<PlacedTile> = domains[&g].iter().map(|x| x.0).collect();
                let dom = domains.get_mut(&f).unwrap();
                let before = dom.len();
                dom.retain(|(a, _)| others.iter().any(|b| shared_edges_match(a, b, set)));
                if dom.is_empty() {
                    return Err(ComposeError::NoMatch { face: f });
                }
                changed |= dom.len() != before;
            }
        }
    }
    let mut out = Faces::default();
    let mut parents = Vec::new();
    for (face, mut dom) in domains {
        if dom.len() > 1 {
            out.undetermined.push(face);
            continue;
        }
        let (cand, kids) = dom.pop().unwrap();
        parents.push(cand);
        for k in kids {
            out.assignment.insert(k, cand);
        }
    }
    parents.sort();
    out.parents = Patch::new(parents);
    Ok(out)
}
