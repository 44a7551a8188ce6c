//! Deterministic SVG output.
//!
//! Every tile is a group holding one `path.tile`, drawn from the shape's
//! shared outline in its local frame and placed by the group transform, plus
//! its marks. Coordinates carry six decimals; the y axis is flipped.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use crate::algebra::LatticePoint;
use crate::recognizability::Composition;
use crate::substitution::SubstitutionRule;
use crate::tiles::{
    classify_vertex, CornerMark, Direction, Patch, PlacedTile, PrototileSet, Shape, VertexClass,
    VertexStar,
};

/// Radius of corner arcs, in tile units.
pub const ARC_RADIUS: f64 = 0.22;
/// Distance from the corner at which a stripe chord meets the edges.
pub const STRIPE_OFFSET: f64 = 0.3;
/// Half length and half width of an edge arrow.
pub const ARROW_SIZE: (f64, f64) = (0.09, 0.07);
/// Radius of vertex class dots.
pub const DOT_RADIUS: f64 = 0.06;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layers {
    pub fills: bool,
    pub edge_marks: bool,
    pub vertex_marks: bool,
    pub supertile_overlay: bool,
    pub vertex_class_colors: bool,
}

impl Default for Layers {
    fn default() -> Self {
        Layers {
            fills: true,
            edge_marks: true,
            vertex_marks: true,
            supertile_overlay: true,
            vertex_class_colors: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Palette {
    /// Fill per prototile, in [`crate::ProtoId::ALL`] order.
    pub tiles: [String; 6],
    /// Light, Dark, Unmarked, Stripe, Incomplete.
    pub classes: [String; 5],
    pub stroke: String,
    pub marked_edge: String,
    pub plain_edge: String,
    pub overlay: String,
}

impl Default for Palette {
    fn default() -> Self {
        let s = |x: &str| x.to_string();
        Palette {
            tiles: [
                s("#f4e3b5"),
                s("#ecd18e"),
                s("#e0bd63"),
                s("#9fc5d8"),
                s("#7aaecb"),
                s("#5793b8"),
            ],
            classes: [s("#ffffff"), s("#1d2b3a"), s("#9a9a9a"), s("#c0392b"), s("#dddddd")],
            stroke: s("#333333"),
            marked_edge: s("#b03a2e"),
            plain_edge: s("#555555"),
            overlay: s("#111111"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StyleError {
    #[error("scale must be positive")]
    Scale,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderStyle {
    /// Pixels per unit edge.
    pub scale: f64,
    pub layers: Layers,
    pub palette: Palette,
    pub tile_stroke_width: f64,
    pub overlay_stroke_width: f64,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            scale: 40.0,
            layers: Layers::default(),
            palette: Palette::default(),
            tile_stroke_width: 1.0,
            overlay_stroke_width: 3.0,
        }
    }
}

impl RenderStyle {
    pub fn check(&self) -> Result<(), StyleError> {
        if self.scale > 0.0 && self.tile_stroke_width >= 0.0 && self.overlay_stroke_width >= 0.0 {
            Ok(())
        } else {
            Err(StyleError::Scale)
        }
    }
}

/// Six decimals, with negative zero printed as zero.
pub fn num(x: f64) -> String {
    let s = format!("{:.6}", x);
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

fn local(shape: Shape) -> [(f64, f64); 4] {
    let proto = match shape {
        Shape::Thin => crate::ProtoId::ThinI,
        Shape::Thick => crate::ProtoId::ThickI,
    };
    PlacedTile::new(proto, 0, false, LatticePoint::ZERO)
        .vertices()
        .map(|v| v.embed())
}

/// Outline of a shape in its local frame, in pixels.
pub fn shape_path(shape: Shape, scale: f64) -> String {
    let v = local(shape);
    let mut d = String::new();
    for (i, (x, y)) in v.iter().enumerate() {
        let cmd = if i == 0 { 'M' } else { 'L' };
        let _ = write!(d, "{cmd}{},{} ", num(x * scale), num(-y * scale));
    }
    d.push('Z');
    d
}

/// SVG transform placing the local frame of `t`.
pub fn tile_transform(t: &PlacedTile, scale: f64) -> String {
    let (x, y) = t.anchor.embed();
    let mut s = format!("translate({},{}) rotate({})", num(x * scale), num(-y * scale), num(-36.0 * t.rot as f64));
    if t.reflected {
        s.push_str(" scale(1,-1)");
    }
    s
}

fn sub(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 - b.0, a.1 - b.1)
}

fn along(p: (f64, f64), d: (f64, f64), t: f64) -> (f64, f64) {
    (p.0 + d.0 * t, p.1 + d.1 * t)
}

fn px(p: (f64, f64), scale: f64) -> String {
    format!("{},{}", num(p.0 * scale), num(-p.1 * scale))
}

fn corner_marks(out: &mut String, shape: Shape, marks: &[CornerMark; 4], style: &RenderStyle) {
    let v = local(shape);
    let s = style.scale;
    for (c, mark) in marks.iter().enumerate() {
        let here = v[c];
        let d1 = sub(v[(c + 1) % 4], here);
        let d2 = sub(v[(c + 3) % 4], here);
        match mark {
            CornerMark::Light | CornerMark::Dark => {
                let a = along(here, d1, ARC_RADIUS);
                let b = along(here, d2, ARC_RADIUS);
                let cross = d1.0 * d2.1 - d1.1 * d2.0;
                let sweep = if cross > 0.0 { 0 } else { 1 };
                let (class, colour) = if *mark == CornerMark::Light {
                    ("arc-light", &style.palette.classes[0])
                } else {
                    ("arc-dark", &style.palette.classes[1])
                };
                let r = num(ARC_RADIUS * s);
                let _ = write!(
                    out,
                    "<path class=\"{class}\" d=\"M{} L{} A{r},{r} 0 0 {sweep} {} Z\" fill=\"{colour}\" stroke=\"none\"/>",
                    px(here, s),
                    px(a, s),
                    px(b, s)
                );
            }
            CornerMark::Stripe => {
                let a = along(here, d1, STRIPE_OFFSET);
                let b = along(here, d2, STRIPE_OFFSET);
                let _ = write!(
                    out,
                    "<path class=\"stripe\" d=\"M{} L{}\" stroke=\"{}\" fill=\"none\"/>",
                    px(a, s),
                    px(b, s),
                    style.palette.classes[3]
                );
            }
            CornerMark::None => {}
        }
    }
}

fn edge_marks(out: &mut String, t: &PlacedTile, set: &PrototileSet, style: &RenderStyle) {
    let v = local(t.shape());
    let s = style.scale;
    let proto = set.get(t.proto);
    for (i, label) in proto.edges.iter().enumerate() {
        let (p, q) = (v[i], v[(i + 1) % 4]);
        let (p, q) = match label.dir {
            Direction::Forward => (p, q),
            Direction::Backward => (q, p),
        };
        let d = sub(q, p);
        let n = (-d.1, d.0);
        let mid = along(p, d, 0.5);
        let tip = along(mid, d, ARROW_SIZE.0);
        let back = along(mid, d, -ARROW_SIZE.0);
        let l = along(back, n, ARROW_SIZE.1);
        let r = along(back, n, -ARROW_SIZE.1);
        let colour = if set.is_marked(label.edge_type) {
            &style.palette.marked_edge
        } else {
            &style.palette.plain_edge
        };
        let _ = write!(
            out,
            "<path class=\"arrow e{}\" d=\"M{} L{} L{} Z\" fill=\"{colour}\" stroke=\"none\"/>",
            label.edge_type,
            px(l, s),
            px(tip, s),
            px(r, s)
        );
    }
}

/// The SVG document for `p`.
///
/// `overlay`, when given with its rule, outlines the recovered supertiles.
pub fn to_svg(
    p: &Patch,
    set: &PrototileSet,
    style: &RenderStyle,
    overlay: Option<(&Composition, &SubstitutionRule)>,
) -> String {
    let p = p.normalized();
    let s = style.scale;
    let mut pts: Vec<(f64, f64)> = p.tiles.iter().flat_map(|t| t.vertices()).map(|v| v.embed()).collect();
    let mut super_rhombs: Vec<[(f64, f64); 4]> = Vec::new();
    if let (Some((c, r)), true) = (overlay, style.layers.supertile_overlay) {
        for t in &c.parent.tiles {
            let mut q = [(0.0, 0.0); 4];
            for (k, v) in t.vertices().iter().enumerate() {
                q[k] = r.inflate(*v).map(|w| w.embed()).unwrap_or((0.0, 0.0));
            }
            pts.extend(q);
            super_rhombs.push(q);
        }
    }
    let (mut x0, mut y0, mut x1, mut y1) = (0.0f64, 0.0f64, 1.0f64, 1.0f64);
    if let Some(first) = pts.first() {
        (x0, y0, x1, y1) = (first.0, first.1, first.0, first.1);
        for q in &pts {
            x0 = x0.min(q.0);
            x1 = x1.max(q.0);
            y0 = y0.min(q.1);
            y1 = y1.max(q.1);
        }
        x0 -= 0.5;
        y0 -= 0.5;
        x1 += 0.5;
        y1 += 0.5;
    }
    let (w, h) = ((x1 - x0) * s, (y1 - y0) * s);
    let mut out = String::new();
    let _ = write!(
        out,
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">\n",
        num(w),
        num(h),
        num(x0 * s),
        num(-y1 * s),
        num(w),
        num(h)
    );
    let defs_thin = shape_path(Shape::Thin, s);
    let defs_thick = shape_path(Shape::Thick, s);
    out.push_str("<g id=\"canvas\">\n");
    for (i, t) in p.tiles.iter().enumerate() {
        let fill = if style.layers.fills {
            style.palette.tiles[t.proto.index()].as_str()
        } else {
            "none"
        };
        let d = match t.shape() {
            Shape::Thin => &defs_thin,
            Shape::Thick => &defs_thick,
        };
        let _ = write!(
            out,
            "<g id=\"t{i}\" class=\"{}\" transform=\"{}\"><path class=\"tile\" d=\"{d}\" fill=\"{fill}\" stroke=\"{}\" stroke-width=\"{}\"/>",
            t.proto,
            tile_transform(t, s),
            style.palette.stroke,
            num(style.tile_stroke_width)
        );
        if style.layers.vertex_marks {
            corner_marks(&mut out, t.shape(), &set.get(t.proto).corners, style);
        }
        if style.layers.edge_marks {
            edge_marks(&mut out, t, set, style);
        }
        out.push_str("</g>\n");
    }
    out.push_str("</g>\n");
    if style.layers.vertex_class_colors && !p.is_empty() {
        out.push_str("<g id=\"vertex-classes\">\n");
        let ix = p.index();
        for (i, v) in ix.vertices.keys().enumerate() {
            let star = VertexStar::from_index(&p, &ix, *v).expect("indexed vertex");
            let class = classify_vertex(&star, set);
            let k = match class {
                VertexClass::Light => 0,
                VertexClass::Dark => 1,
                VertexClass::Unmarked => 2,
                VertexClass::Stripe => 3,
                VertexClass::Incomplete => 4,
            };
            let (x, y) = v.embed();
            let _ = writeln!(
                out,
                "<circle id=\"v{i}\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>",
                num(x * s),
                num(-y * s),
                num(DOT_RADIUS * s),
                style.palette.classes[k]
            );
        }
        out.push_str("</g>\n");
    }
    if !super_rhombs.is_empty() {
        out.push_str("<g id=\"supertiles\">\n");
        for (i, q) in super_rhombs.iter().enumerate() {
            let _ = writeln!(
                out,
                "<path id=\"s{i}\" class=\"supertile\" d=\"M{} L{} L{} L{} Z\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"/>",
                px(q[0], s),
                px(q[1], s),
                px(q[2], s),
                px(q[3], s),
                style.palette.overlay,
                num(style.overlay_stroke_width)
            );
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::recognizability::SupertileVertexMap;
    use crate::substitution::{substitute_n, DEFAULT_BUDGET};
    use crate::ProtoId;
    use alloc::collections::{BTreeMap, BTreeSet};

    fn attr<'a>(tag: &'a str, name: &str) -> &'a str {
        let key = format!(" {name}=\"");
        let start = tag.find(&key).unwrap() + key.len();
        let end = start + tag[start..].find('"').unwrap();
        &tag[start..end]
    }

    fn numbers(s: &str) -> Vec<f64> {
        s.split(|c: char| !(c.is_ascii_digit() || c == '.' || c == '-'))
            .filter(|x| !x.is_empty())
            .map(|x| x.parse().unwrap())
            .collect()
    }

    #[test]
    fn empty_patch_has_an_empty_canvas() {
        let svg = to_svg(&Patch::default(), &builtin::prototiles(), &RenderStyle::default(), None);
        assert!(svg.contains("<g id=\"canvas\">\n</g>"));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn rotations_share_path_data() {
        let set = builtin::prototiles();
        let style = RenderStyle::default();
        let tags: Vec<String> = [3, 8]
            .iter()
            .map(|&rot| {
                let p = Patch::new([PlacedTile::new(ProtoId::ThickII, rot, false, LatticePoint::ONE)].to_vec());
                let svg = to_svg(&p, &set, &style, None);
                let i = svg.find("<path class=\"tile\"").unwrap();
                svg[i..i + svg[i..].find("/>").unwrap()].to_string()
            })
            .collect();
        assert_eq!(attr(&tags[0], "d"), attr(&tags[1], "d"));
    }

    #[test]
    fn transforms_reproduce_the_embedding() {
        let r = builtin::rule().unwrap();
        let mut tiles = substitute_n(&r, ProtoId::ThinIII, 1, DEFAULT_BUDGET).unwrap().tiles;
        tiles.push(PlacedTile::new(ProtoId::ThickI, 4, true, LatticePoint::new(9, 0, 0, 0)));
        let p = Patch::new(tiles).normalized();
        let style = RenderStyle::default();
        let svg = to_svg(&p, r.prototiles(), &style, None);
        let s = style.scale;
        for (i, t) in p.tiles.iter().enumerate() {
            let open = format!("<g id=\"t{i}\"");
            let g = &svg[svg.find(&open).unwrap()..];
            let tf = numbers(attr(g, "transform"));
            let d = numbers(attr(&g[g.find("<path").unwrap()..], "d"));
            let (tx, ty, deg) = (tf[0], tf[1], tf[2]);
            let flip = if t.reflected { -1.0 } else { 1.0 };
            let (c, sn) = (turn_cos(deg), turn_sin(deg));
            for (k, v) in t.vertices().iter().enumerate() {
                let (lx, ly) = (d[2 * k], flip * d[2 * k + 1]);
                let (x, y) = (tx + c * lx - sn * ly, ty + sn * lx + c * ly);
                let (ex, ey) = v.embed();
                assert!((x - ex * s).abs() < 1e-6 * s && (y + ey * s).abs() < 1e-6 * s, "{t:?}");
            }
        }
    }

    /// Rotations in the transforms are multiples of 36°.
    fn turn_cos(deg: f64) -> f64 {
        let k = (deg / 36.0).round() as i64;
        let (c, _) = crate::LatticePoint::unit(k).embed();
        c
    }

    fn turn_sin(deg: f64) -> f64 {
        let k = (deg / 36.0).round() as i64;
        let (_, s) = crate::LatticePoint::unit(k).embed();
        s
    }

    #[test]
    fn overlay_edges_are_inflated() {
        let r = builtin::rule().unwrap();
        let parent = substitute_n(&r, ProtoId::ThickI, 1, DEFAULT_BUDGET).unwrap();
        let child = substitute_n(&r, ProtoId::ThickI, 2, DEFAULT_BUDGET).unwrap();
        let c = Composition {
            parent: parent.clone(),
            assignment: BTreeMap::new(),
            margin: Vec::new(),
            undetermined: Vec::new(),
            roles: SupertileVertexMap { entries: Vec::new() },
            vertices: Vec::new(),
        };
        let style = RenderStyle::default();
        let svg = to_svg(&child, r.prototiles(), &style, Some((&c, &r)));
        let want = r.factor().to_f64() * style.scale;
        let mut count = 0;
        for line in svg.lines().filter(|l| l.contains("class=\"supertile\"")) {
            let d = numbers(attr(line, "d"));
            for k in 0..4 {
                let (a, b) = ((d[2 * k], d[2 * k + 1]), (d[(2 * k + 2) % 8], d[(2 * k + 3) % 8]));
                let len = ((a.0 - b.0) * (a.0 - b.0) + (a.1 - b.1) * (a.1 - b.1)).sqrt();
                assert!((len - want).abs() < 1e-5, "{len} vs {want}");
            }
            count += 1;
        }
        assert_eq!(count, parent.len());
        let ids: Vec<&str> = svg.match_indices(" id=\"").map(|(i, _)| attr(&svg[i..], "id")).collect();
        let unique: BTreeSet<&str> = ids.iter().copied().collect();
        assert_eq!(ids.len(), unique.len());
        assert_eq!(svg, to_svg(&child, r.prototiles(), &style, Some((&c, &r))));
    }
}
