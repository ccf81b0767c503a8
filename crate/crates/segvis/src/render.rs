//! SVG pictures of a polygon and, optionally, a weak visibility polygon.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::geometry::{Point, Segment, SimplePolygon};
use crate::index::QueryTrace;
use crate::visibility::{Element, WeakVisibilityPolygon};

/// Agreement of an index answer with the linear algorithm and the oracle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub linear: bool,
    pub oracle: bool,
}

/// The JSON form of one query answer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WvpDocument {
    pub source: Segment,
    pub elements: Vec<Element>,
    #[serde(default)]
    pub visible_vertices: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<QueryTrace>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check: Option<CheckReport>,
}

impl WvpDocument {
    pub fn new(poly: &SimplePolygon, w: &WeakVisibilityPolygon) -> WvpDocument {
        WvpDocument {
            source: w.source.clone(),
            elements: w.elements(poly),
            visible_vertices: w.boundary.vertex_set().into_iter().collect(),
            trace: None,
            check: None,
        }
    }
}

fn element_point(poly: &SimplePolygon, e: &Element) -> Point {
    match e {
        Element::Vertex(i) => poly.vertex(*i).clone(),
        Element::Window { point, .. } => point.clone(),
    }
}

/// Polygon edges an element lies on.
fn element_edges(n: usize, e: &Element) -> [usize; 2] {
    match e {
        Element::Vertex(i) => [(i + n - 1) % n, *i],
        Element::Window { edge, .. } => [*edge, *edge],
    }
}

/// Consecutive elements not joined along a polygon edge are joined by a window.
pub fn windows(poly: &SimplePolygon, elements: &[Element]) -> Vec<(Point, Point)> {
    let n = poly.len();
    let k = elements.len();
    if k < 2 {
        return Vec::new();
    }
    (0..k)
        .filter_map(|i| {
            let (a, b) = (&elements[i], &elements[(i + 1) % k]);
            let (ea, eb) = (element_edges(n, a), element_edges(n, b));
            let shared = ea.iter().any(|x| eb.contains(x));
            (!shared).then(|| (element_point(poly, a), element_point(poly, b)))
        })
        .collect()
}

struct Frame {
    min_x: f64,
    min_y: f64,
    w: f64,
    h: f64,
}

impl Frame {
    fn of(poly: &SimplePolygon) -> Frame {
        let (lo, hi) = poly.bbox();
        let (x0, y0) = lo.to_f64();
        let (x1, y1) = hi.to_f64();
        let (w, h) = (x1 - x0, y1 - y0);
        let (mx, my) = (0.05 * w, 0.05 * h);
        // Screen y grows downwards, so the picture uses -y.
        Frame { min_x: x0 - mx, min_y: -y1 - my, w: w + 2.0 * mx, h: h + 2.0 * my }
    }

    fn pt(&self, p: &Point) -> String {
        let (x, y) = p.to_f64();
        format!("{},{}", x, 0.0 - y)
    }

    fn pts<'a>(&self, ps: impl IntoIterator<Item = &'a Point>) -> String {
        ps.into_iter().map(|p| self.pt(p)).collect::<Vec<_>>().join(" ")
    }
}

pub fn render_svg(poly: &SimplePolygon, wvp: Option<&WvpDocument>) -> String {
    let f = Frame::of(poly);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="800" height="{}">"#,
        f.min_x,
        f.min_y,
        f.w,
        f.h,
        (800.0 * f.h / f.w).round()
    );
    if let Some(doc) = wvp {
        let outline: Vec<Point> = doc.elements.iter().map(|e| element_point(poly, e)).collect();
        let _ = writeln!(
            s,
            r##"  <polygon class="wvp" points="{}" fill="#f2c14e" fill-opacity="0.6" stroke="none"/>"##,
            f.pts(&outline)
        );
    }
    let _ = writeln!(
        s,
        r#"  <polygon class="outline" points="{}" fill="none" stroke="black" stroke-width="1.5" vector-effect="non-scaling-stroke"/>"#,
        f.pts(poly.vertices())
    );
    if let Some(doc) = wvp {
        for (a, b) in windows(poly, &doc.elements) {
            let _ = writeln!(
                s,
                r##"  <polyline class="window" points="{}" fill="none" stroke="#555" stroke-width="1" stroke-dasharray="6 4" vector-effect="non-scaling-stroke"/>"##,
                f.pts([&a, &b])
            );
        }
        let _ = writeln!(
            s,
            r##"  <polyline class="source" points="{}" fill="none" stroke="#c0392b" stroke-width="2.5" vector-effect="non-scaling-stroke"/>"##,
            f.pts([&doc.source.a, &doc.source.b])
        );
    }
    s.push_str("</svg>\n");
    s
}
