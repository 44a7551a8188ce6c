use alloc::vec::Vec;

use super::{CornerMark, Patch, PatchIndex, PlacedTile, PrototileSet};
use crate::algebra::LatticePoint;

/// The tiles around one vertex, in counter-clockwise order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexStar {
    pub vertex: LatticePoint,
    /// `(tile, corner)` sorted by the direction where each corner starts.
    pub incident: Vec<(PlacedTile, u8)>,
    /// Corner angles add up to exactly 360°.
    pub full: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("{0} is not a vertex of the patch")]
pub struct NotAVertex(pub LatticePoint);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexClass {
    Light,
    Dark,
    Unmarked,
    Stripe,
    Incomplete,
}

impl VertexStar {
    pub fn from_index(p: &Patch, ix: &PatchIndex, v: LatticePoint) -> Result<VertexStar, NotAVertex> {
        let users = ix.vertices.get(&v).ok_or(NotAVertex(v))?;
        let mut incident: Vec<(u8, PlacedTile, u8)> = users
            .iter()
            .map(|&(k, c)| {
                let t = p.tiles[k];
                (t.corner_sweep(c).0, t, c)
            })
            .collect();
        incident.sort();
        let total: u32 = incident
            .iter()
            .map(|(_, t, c)| t.shape().angle_units(*c) as u32)
            .sum();
        Ok(VertexStar {
            vertex: v,
            incident: incident.into_iter().map(|(_, t, c)| (t, c)).collect(),
            full: total == 10,
        })
    }

    /// Corner angles in 36° units, in star order.
    pub fn angle_units(&self) -> Vec<u8> {
        self.incident
            .iter()
            .map(|(t, c)| t.shape().angle_units(*c))
            .collect()
    }
}

pub fn vertex_star(p: &Patch, v: LatticePoint) -> Result<VertexStar, NotAVertex> {
    VertexStar::from_index(p, &p.index(), v)
}

/// Light, Dark or Unmarked when every corner carries that mark; Stripe for
/// any mixture or for stripe marks.
pub fn classify_vertex(s: &VertexStar, set: &PrototileSet) -> VertexClass {
    if !s.full {
        return VertexClass::Incomplete;
    }
    let mut marks = s
        .incident
        .iter()
        .map(|(t, c)| set.get(t.proto).corners[*c as usize]);
    let Some(first) = marks.next() else {
        return VertexClass::Incomplete;
    };
    if marks.any(|m| m != first) {
        return VertexClass::Stripe;
    }
    match first {
        CornerMark::Light => VertexClass::Light,
        CornerMark::Dark => VertexClass::Dark,
        CornerMark::None => VertexClass::Unmarked,
        CornerMark::Stripe => VertexClass::Stripe,
    }
}
