//! Versioned JSON formats: patches, rules and render styles.
//!
//! Lattice coordinates are written as four integers, never as floats, so a
//! save/load round trip is exact.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use seabed_core::render::{Layers, Palette, RenderStyle, StyleError};
use seabed_core::substitution::{RuleError, SubstitutionRule, DEFAULT_STRIPE_RADIUS};
use seabed_core::tiles::{ShapeTile, TileSetError};
use seabed_core::{
    CornerMark, Direction, EdgeLabel, LatticePoint, Patch, PlacedTile, ProtoId, Prototile,
    PrototileSet, Shape,
};

/// Highest schema version this build reads and the one it writes.
pub const SCHEMA_VERSION: u32 = 1;

/// The shipped rule.
pub const DEFAULT_RULE: &str = include_str!("../data/seabed-rule.json");

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("malformed file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema version {found} is newer than the supported version {supported}")]
    Newer { found: u32, supported: u32 },
    #[error("schema version {0} is not supported")]
    Unsupported(u32),
    #[error("prototile set hash {found} does not match the loaded set {expected}")]
    HashMismatch { found: String, expected: String },
    #[error("unknown prototile or shape `{0}`")]
    UnknownProto(String),
    #[error("tile {index}: rotation {rot} is outside 0..10")]
    Rotation { index: usize, rot: u8 },
    #[error("tile {index}: a bare shape cannot be reflected")]
    ReflectedShape { index: usize },
    #[error("tile {index} carries no marking")]
    Unmarked { index: usize },
    #[error("edge type at position {position} has id {found}")]
    EdgeTypeOrder { position: usize, found: u8 },
    #[error("prototile {proto} is declared {declared}, expected {expected}")]
    ShapeMismatch {
        proto: String,
        declared: &'static str,
        expected: &'static str,
    },
    #[error("prototile {0} is listed more than once")]
    Duplicate(String),
    #[error("prototile {0} is missing")]
    Missing(String),
    #[error("unknown palette key `{0}`")]
    PaletteKey(String),
    #[error(transparent)]
    TileSet(#[from] TileSetError),
    #[error(transparent)]
    Rule(#[from] RuleError),
    #[error(transparent)]
    Style(#[from] StyleError),
}

#[derive(Deserialize)]
struct Header {
    schema_version: u32,
}

/// Reads only the version, so newer files fail before anything else is
/// interpreted.
fn check_version(text: &str) -> Result<(), FileError> {
    let h: Header = serde_json::from_str(text)?;
    match h.schema_version {
        v if v > SCHEMA_VERSION => Err(FileError::Newer {
            found: v,
            supported: SCHEMA_VERSION,
        }),
        SCHEMA_VERSION => Ok(()),
        v => Err(FileError::Unsupported(v)),
    }
}

fn corner_name(m: CornerMark) -> &'static str {
    match m {
        CornerMark::Light => "light",
        CornerMark::Dark => "dark",
        CornerMark::None => "none",
        CornerMark::Stripe => "stripe",
    }
}

/// Canonical text of a prototile set; its SHA-256 identifies the set.
pub fn canonical_set_text(set: &PrototileSet) -> String {
    let mut s = String::new();
    for (i, m) in set.marked_flags().iter().enumerate() {
        s.push_str(&format!("edge {} {}\n", i, if *m { "marked" } else { "plain" }));
    }
    for t in set.tiles() {
        s.push_str(&format!("{} {}", t.id, t.shape().name()));
        for e in &t.edges {
            let d = match e.dir {
                Direction::Forward => 'f',
                Direction::Backward => 'b',
            };
            s.push_str(&format!(" {}{}", e.edge_type, d));
        }
        for c in &t.corners {
            s.push(' ');
            s.push_str(corner_name(*c));
        }
        s.push('\n');
    }
    s
}

/// Lowercase hex SHA-256 of [`canonical_set_text`].
pub fn prototile_set_hash(set: &PrototileSet) -> String {
    hex::encode(Sha256::digest(canonical_set_text(set).as_bytes()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TileRecord {
    /// A prototile id, or `thin`/`thick` for a tile without marking.
    pub proto: String,
    pub rot: u8,
    pub reflected: bool,
    pub anchor: [i64; 4],
}

impl TileRecord {
    pub fn marked(t: &PlacedTile) -> TileRecord {
        TileRecord {
            proto: t.proto.name().to_string(),
            rot: t.rot,
            reflected: t.reflected,
            anchor: t.anchor.c,
        }
    }

    pub fn bare(t: &ShapeTile) -> TileRecord {
        TileRecord {
            proto: t.shape.name().to_string(),
            rot: t.rot,
            reflected: false,
            anchor: t.anchor.c,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatchFile {
    pub schema_version: u32,
    pub prototile_set: String,
    pub tiles: Vec<TileRecord>,
}

/// Contents of a patch file: marked tiles and tiles known only by shape.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Loaded {
    pub marked: Patch,
    pub bare: Vec<ShapeTile>,
}

impl Loaded {
    /// Every tile by shape, marked ones included.
    pub fn shapes(&self) -> Vec<ShapeTile> {
        let mut s: Vec<ShapeTile> = self.marked.tiles.iter().map(|t| t.shape_tile()).collect();
        s.extend(self.bare.iter().copied());
        s
    }
}

fn to_text<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Writes `p` in normal-form order.
pub fn save_patch(p: &Patch, set: &PrototileSet) -> String {
    save_mixed(&p.normalized(), &[], set)
}

/// Writes marked tiles followed by bare shapes.
pub fn save_mixed(p: &Patch, bare: &[ShapeTile], set: &PrototileSet) -> String {
    let mut tiles: Vec<TileRecord> = p.tiles.iter().map(TileRecord::marked).collect();
    tiles.extend(bare.iter().map(TileRecord::bare));
    to_text(&PatchFile {
        schema_version: SCHEMA_VERSION,
        prototile_set: prototile_set_hash(set),
        tiles,
    })
}

/// Reads a patch file bound to `set`, keeping tile order.
pub fn load_tiles(text: &str, set: &PrototileSet) -> Result<Loaded, FileError> {
    check_version(text)?;
    let f: PatchFile = serde_json::from_str(text)?;
    let expected = prototile_set_hash(set);
    if f.prototile_set != expected {
        return Err(FileError::HashMismatch {
            found: f.prototile_set,
            expected,
        });
    }
    let mut out = Loaded::default();
    for (index, r) in f.tiles.iter().enumerate() {
        if r.rot >= 10 {
            return Err(FileError::Rotation { index, rot: r.rot });
        }
        let [a, b, c, d] = r.anchor;
        let anchor = LatticePoint::new(a, b, c, d);
        if let Some(proto) = ProtoId::parse(&r.proto) {
            out.marked
                .tiles
                .push(PlacedTile::new(proto, r.rot as i64, r.reflected, anchor));
            continue;
        }
        let shape = match r.proto.as_str() {
            "thin" => Shape::Thin,
            "thick" => Shape::Thick,
            other => return Err(FileError::UnknownProto(other.to_string())),
        };
        if r.reflected {
            return Err(FileError::ReflectedShape { index });
        }
        out.bare.push(ShapeTile::canonical(shape, r.rot as i64, anchor));
    }
    Ok(out)
}

/// Reads a patch whose tiles are all marked.
pub fn load_patch(text: &str, set: &PrototileSet) -> Result<Patch, FileError> {
    let l = load_tiles(text, set)?;
    if !l.bare.is_empty() {
        let index = l.marked.len();
        return Err(FileError::Unmarked { index });
    }
    Ok(l.marked)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DirRecord {
    Forward,
    Backward,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CornerRecord {
    Light,
    Dark,
    None,
    Stripe,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeRecord {
    Thin,
    Thick,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeTypeRecord {
    pub id: u8,
    pub marked: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    #[serde(rename = "type")]
    pub edge_type: u8,
    pub dir: DirRecord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrototileRecord {
    pub id: String,
    pub shape: ShapeRecord,
    pub edges: [EdgeRecord; 4],
    pub corners: [CornerRecord; 4],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubstitutionRecord {
    pub inflation_power: u32,
    pub patches: BTreeMap<String, Vec<TileRecord>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecognizabilityRecord {
    pub stripe_radius: u32,
}

impl Default for RecognizabilityRecord {
    fn default() -> Self {
        RecognizabilityRecord {
            stripe_radius: DEFAULT_STRIPE_RADIUS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleFile {
    pub schema_version: u32,
    pub name: String,
    pub edge_types: Vec<EdgeTypeRecord>,
    pub prototiles: Vec<PrototileRecord>,
    pub substitution: SubstitutionRecord,
    #[serde(default)]
    pub recognizability: RecognizabilityRecord,
}

impl RuleFile {
    pub fn parse(text: &str) -> Result<RuleFile, FileError> {
        check_version(text)?;
        Ok(serde_json::from_str(text)?)
    }

    /// The file describing `r`.
    pub fn of_rule(r: &SubstitutionRule, name: &str) -> RuleFile {
        let set = r.prototiles();
        let edge_types = set
            .marked_flags()
            .iter()
            .enumerate()
            .map(|(i, m)| EdgeTypeRecord {
                id: i as u8,
                marked: *m,
            })
            .collect();
        let prototiles = set
            .tiles()
            .iter()
            .map(|t| PrototileRecord {
                id: t.id.name().to_string(),
                shape: match t.shape() {
                    Shape::Thin => ShapeRecord::Thin,
                    Shape::Thick => ShapeRecord::Thick,
                },
                edges: t.edges.map(|e| EdgeRecord {
                    edge_type: e.edge_type,
                    dir: match e.dir {
                        Direction::Forward => DirRecord::Forward,
                        Direction::Backward => DirRecord::Backward,
                    },
                }),
                corners: t.corners.map(|c| match c {
                    CornerMark::Light => CornerRecord::Light,
                    CornerMark::Dark => CornerRecord::Dark,
                    CornerMark::None => CornerRecord::None,
                    CornerMark::Stripe => CornerRecord::Stripe,
                }),
            })
            .collect();
        let patches = ProtoId::ALL
            .iter()
            .map(|id| {
                let tiles = r.patch(*id).iter().map(TileRecord::marked).collect();
                (id.name().to_string(), tiles)
            })
            .collect();
        RuleFile {
            schema_version: SCHEMA_VERSION,
            name: name.to_string(),
            edge_types,
            prototiles,
            substitution: SubstitutionRecord {
                inflation_power: r.power(),
                patches,
            },
            recognizability: RecognizabilityRecord {
                stripe_radius: r.stripe_radius(),
            },
        }
    }

    pub fn to_text(&self) -> String {
        to_text(self)
    }

    pub fn prototile_set(&self) -> Result<PrototileSet, FileError> {
        let mut marked = Vec::new();
        for (position, e) in self.edge_types.iter().enumerate() {
            if e.id as usize != position {
                return Err(FileError::EdgeTypeOrder {
                    position,
                    found: e.id,
                });
            }
            marked.push(e.marked);
        }
        let mut slots: [Option<Prototile>; 6] = [None; 6];
        for rec in &self.prototiles {
            let id = ProtoId::parse(&rec.id).ok_or_else(|| FileError::UnknownProto(rec.id.clone()))?;
            let declared = match rec.shape {
                ShapeRecord::Thin => Shape::Thin,
                ShapeRecord::Thick => Shape::Thick,
            };
            if declared != id.shape() {
                return Err(FileError::ShapeMismatch {
                    proto: rec.id.clone(),
                    declared: declared.name(),
                    expected: id.shape().name(),
                });
            }
            let slot = &mut slots[id.index()];
            if slot.is_some() {
                return Err(FileError::Duplicate(rec.id.clone()));
            }
            *slot = Some(Prototile {
                id,
                edges: rec.edges.each_ref().map(|e| EdgeLabel {
                    edge_type: e.edge_type,
                    dir: match e.dir {
                        DirRecord::Forward => Direction::Forward,
                        DirRecord::Backward => Direction::Backward,
                    },
                }),
                corners: rec.corners.map(|c| match c {
                    CornerRecord::Light => CornerMark::Light,
                    CornerRecord::Dark => CornerMark::Dark,
                    CornerRecord::None => CornerMark::None,
                    CornerRecord::Stripe => CornerMark::Stripe,
                }),
            });
        }
        let mut tiles = Vec::with_capacity(6);
        for (i, s) in slots.into_iter().enumerate() {
            tiles.push(s.ok_or_else(|| FileError::Missing(ProtoId::ALL[i].name().to_string()))?);
        }
        let tiles: [Prototile; 6] = tiles.try_into().expect("six slots");
        Ok(PrototileSet::new(tiles, marked)?)
    }

    /// Builds the rule, running the load checks.
    pub fn rule(&self) -> Result<SubstitutionRule, FileError> {
        let set = self.prototile_set()?;
        for key in self.substitution.patches.keys() {
            if ProtoId::parse(key).is_none() {
                return Err(FileError::UnknownProto(key.clone()));
            }
        }
        let mut patches: [Vec<PlacedTile>; 6] = Default::default();
        for id in ProtoId::ALL {
            let recs = self
                .substitution
                .patches
                .get(id.name())
                .ok_or_else(|| FileError::Missing(id.name().to_string()))?;
            for (index, r) in recs.iter().enumerate() {
                let proto = ProtoId::parse(&r.proto).ok_or_else(|| FileError::UnknownProto(r.proto.clone()))?;
                if r.rot >= 10 {
                    return Err(FileError::Rotation { index, rot: r.rot });
                }
                let [a, b, c, d] = r.anchor;
                patches[id.index()].push(PlacedTile::new(
                    proto,
                    r.rot as i64,
                    r.reflected,
                    LatticePoint::new(a, b, c, d),
                ));
            }
        }
        Ok(SubstitutionRule::new(
            set,
            patches,
            self.substitution.inflation_power,
            self.recognizability.stripe_radius,
        )?)
    }
}

/// Parses and checks a rule file.
pub fn load_rule(text: &str) -> Result<SubstitutionRule, FileError> {
    RuleFile::parse(text)?.rule()
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayersRecord {
    pub fills: Option<bool>,
    pub edge_marks: Option<bool>,
    pub vertex_marks: Option<bool>,
    pub supertile_overlay: Option<bool>,
    pub vertex_class_colors: Option<bool>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PaletteRecord {
    /// Keyed by prototile id.
    #[serde(default)]
    pub tiles: BTreeMap<String, String>,
    /// Keyed by `light`, `dark`, `unmarked`, `stripe`, `incomplete`.
    #[serde(default)]
    pub classes: BTreeMap<String, String>,
    pub stroke: Option<String>,
    pub marked_edge: Option<String>,
    pub plain_edge: Option<String>,
    pub overlay: Option<String>,
}

/// A render style; absent fields keep their defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StyleFile {
    pub schema_version: u32,
    pub scale: Option<f64>,
    #[serde(default)]
    pub layers: LayersRecord,
    #[serde(default)]
    pub palette: PaletteRecord,
    pub tile_stroke_width: Option<f64>,
    pub overlay_stroke_width: Option<f64>,
}

const CLASS_KEYS: [&str; 5] = ["light", "dark", "unmarked", "stripe", "incomplete"];

impl StyleFile {
    pub fn style(&self) -> Result<RenderStyle, FileError> {
        let mut s = RenderStyle::default();
        if let Some(x) = self.scale {
            s.scale = x;
        }
        if let Some(x) = self.tile_stroke_width {
            s.tile_stroke_width = x;
        }
        if let Some(x) = self.overlay_stroke_width {
            s.overlay_stroke_width = x;
        }
        let l = &self.layers;
        let d = Layers::default();
        s.layers = Layers {
            fills: l.fills.unwrap_or(d.fills),
            edge_marks: l.edge_marks.unwrap_or(d.edge_marks),
            vertex_marks: l.vertex_marks.unwrap_or(d.vertex_marks),
            supertile_overlay: l.supertile_overlay.unwrap_or(d.supertile_overlay),
            vertex_class_colors: l.vertex_class_colors.unwrap_or(d.vertex_class_colors),
        };
        let p = &self.palette;
        let mut pal = Palette::default();
        for (k, v) in &p.tiles {
            let id = ProtoId::parse(k).ok_or_else(|| FileError::PaletteKey(k.clone()))?;
            pal.tiles[id.index()] = v.clone();
        }
        for (k, v) in &p.classes {
            let i = CLASS_KEYS
                .iter()
                .position(|c| c == k)
                .ok_or_else(|| FileError::PaletteKey(k.clone()))?;
            pal.classes[i] = v.clone();
        }
        for (field, v) in [
            (&mut pal.stroke, &p.stroke),
            (&mut pal.marked_edge, &p.marked_edge),
            (&mut pal.plain_edge, &p.plain_edge),
            (&mut pal.overlay, &p.overlay),
        ] {
            if let Some(v) = v {
                *field = v.clone();
            }
        }
        s.palette = pal;
        s.check()?;
        Ok(s)
    }
}

pub fn load_style(text: &str) -> Result<RenderStyle, FileError> {
    check_version(text)?;
    let f: StyleFile = serde_json::from_str(text)?;
    f.style()
}

#[cfg(test)]
mod tests {
    use super::*;
    use seabed_core::builtin;

    #[test]
    fn shipped_file_is_the_builtin_rule() {
        let from_file = load_rule(DEFAULT_RULE).unwrap();
        let built = builtin::rule().unwrap();
        assert_eq!(from_file.prototiles(), built.prototiles());
        for id in ProtoId::ALL {
            assert_eq!(from_file.patch(id), built.patch(id));
        }
        assert_eq!(from_file.power(), built.power());
        assert_eq!(from_file.stripe_radius(), built.stripe_radius());
    }

    #[test]
    fn rule_file_round_trips() {
        let r = builtin::rule().unwrap();
        let text = RuleFile::of_rule(&r, builtin::RULE_NAME).to_text();
        let back = load_rule(&text).unwrap();
        assert_eq!(RuleFile::of_rule(&back, builtin::RULE_NAME).to_text(), text);
    }

    #[test]
    fn hash_is_hex_sha256() {
        let h = prototile_set_hash(&builtin::prototiles());
        assert_eq!(h.len(), 64);
        assert!(h.bytes().all(|b| b.is_ascii_hexdigit() && !b.is_ascii_uppercase()));
    }

    #[test]
    fn newer_version_fails_before_parsing() {
        let text = r#"{"schema_version": 7, "whatever": [1, 2]}"#;
        let err = load_patch(text, &builtin::prototiles()).unwrap_err();
        assert!(matches!(err, FileError::Newer { found: 7, supported: 1 }));
        assert!(err.to_string().contains("newer"));
    }

    #[test]
    fn hash_mismatch_is_an_error() {
        let set = builtin::prototiles();
        let p = Patch::new(vec![PlacedTile::new(ProtoId::ThinI, 3, false, LatticePoint::ZERO)]);
        let text = save_patch(&p, &set).replace(&prototile_set_hash(&set), &"0".repeat(64));
        assert!(matches!(load_patch(&text, &set), Err(FileError::HashMismatch { .. })));
    }

    #[test]
    fn bare_shapes_need_inference() {
        let set = builtin::prototiles();
        let s = ShapeTile::canonical(Shape::Thick, 7, LatticePoint::new(1, 2, 0, -1));
        let text = save_mixed(&Patch::default(), &[s], &set);
        assert_eq!(load_tiles(&text, &set).unwrap().bare, vec![s]);
        assert!(matches!(load_patch(&text, &set), Err(FileError::Unmarked { index: 0 })));
    }

    #[test]
    fn style_overrides_defaults() {
        let text = r##"{"schema_version": 1, "scale": 12.5,
            "layers": {"fills": false},
            "palette": {"tiles": {"thick-ii": "#000"}, "classes": {"dark": "red"}}}"##;
        let s = load_style(text).unwrap();
        assert_eq!(s.scale, 12.5);
        assert!(!s.layers.fills && s.layers.edge_marks);
        assert_eq!(s.palette.tiles[4], "#000");
        assert_eq!(s.palette.classes[1], "red");
        let bad = r#"{"schema_version": 1, "scale": 0}"#;
        assert!(matches!(load_style(bad), Err(FileError::Style(_))));
        let key = r#"{"schema_version": 1, "palette": {"tiles": {"rhomb": "red"}}}"#;
        assert!(matches!(load_style(key), Err(FileError::PaletteKey(_))));
    }
}
