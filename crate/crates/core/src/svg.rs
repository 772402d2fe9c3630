//! SVG rendering of nets.

use std::fmt::Write as _;

use crate::geom::Point2;
use crate::unfold::{Net, Side};

#[derive(Clone, Debug, PartialEq)]
pub struct SvgConfig {
    /// Width and height of the square viewport, in user units.
    pub size: f64,
    pub margin: f64,
    pub label_vertices: bool,
}

impl Default for SvgConfig {
    fn default() -> Self {
        SvgConfig { size: 800.0, margin: 40.0, label_vertices: true }
    }
}

/// Uniform scale and translation from net coordinates to the viewport; y is
/// flipped so the net reads as seen from outside.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ViewTransform {
    pub scale: f64,
    pub tx: f64,
    pub ty: f64,
}

impl ViewTransform {
    pub fn fit(points: &[Point2], cfg: &SvgConfig) -> Self {
        let (mut lo, mut hi) = (Point2::new(f64::INFINITY, f64::INFINITY), Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
        for p in points {
            lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        let extent = (hi.x - lo.x).max(hi.y - lo.y).max(f64::MIN_POSITIVE);
        let scale = (cfg.size - 2.0 * cfg.margin) / extent;
        let cx = 0.5 * (lo.x + hi.x);
        let cy = 0.5 * (lo.y + hi.y);
        ViewTransform { scale, tx: 0.5 * cfg.size - scale * cx, ty: 0.5 * cfg.size + scale * cy }
    }

    pub fn apply(&self, p: Point2) -> (f64, f64) {
        (self.scale * p.x + self.tx, self.ty - self.scale * p.y)
    }
}

fn path(points: &[Point2], t: &ViewTransform) -> String {
    let mut d = String::new();
    for (i, &p) in points.iter().enumerate() {
        let (x, y) = t.apply(p);
        let _ = write!(d, "{}{:.4},{:.4} ", if i == 0 { "M" } else { "L" }, x, y);
    }
    d.push('Z');
    d
}

/// One `<path>` per face (class `face side-a` / `face side-b`), the outline,
/// the join edge drawn dashed, and 1-based vertex labels.
pub fn emit_svg(net: &Net, cfg: &SvgConfig) -> String {
    let all: Vec<Point2> = net.faces.iter().flat_map(|f| f.points.iter().copied()).collect();
    let t = ViewTransform::fit(&all, cfg);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{0}" viewBox="0 0 {0} {0}" data-scale="{1:.17e}" data-tx="{2:.17e}" data-ty="{3:.17e}">"#,
        cfg.size, t.scale, t.tx, t.ty
    );
    let _ = writeln!(s, "  <title>{} / {}</title>", escape(&net.polyhedron), net.cycle);
    let _ = writeln!(
        s,
        "  <style>.face{{stroke:#555;stroke-width:1;stroke-dasharray:4 3}}.side-a{{fill:#f4c7c3}}.side-b{{fill:#c3d7f4}}.outline{{fill:none;stroke:#000;stroke-width:2}}.join{{stroke:#d00;stroke-width:3;stroke-dasharray:8 4}}text{{font:12px sans-serif}}</style>"
    );
    for f in &net.faces {
        let class = match f.side {
            Side::A => "side-a",
            Side::B => "side-b",
        };
        let _ = writeln!(s, r#"  <path class="face {}" data-face="{}" d="{}"/>"#, class, f.face + 1, path(&f.points, &t));
    }
    if !net.boundary.is_empty() {
        let _ = writeln!(s, r#"  <path class="outline" d="{}"/>"#, path(&net.boundary, &t));
    }
    let (a, b) = net.join_edge;
    if let Some(f) = net.faces.iter().find(|f| f.side == Side::A && f.point_of(a).is_some() && f.point_of(b).is_some()) {
        let (x1, y1) = t.apply(f.point_of(a).expect("checked"));
        let (x2, y2) = t.apply(f.point_of(b).expect("checked"));
        let _ = writeln!(s, r#"  <line class="join" x1="{x1:.4}" y1="{y1:.4}" x2="{x2:.4}" y2="{y2:.4}"/>"#);
    }
    if cfg.label_vertices {
        for (&v, &p) in net.boundary_vertices.iter().zip(&net.boundary) {
            let (x, y) = t.apply(p);
            let _ = writeln!(s, r#"  <text x="{x:.4}" y="{y:.4}">{}</text>"#, v + 1);
        }
    }
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
