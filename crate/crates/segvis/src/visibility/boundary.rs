//! Visible portions of a polygon boundary, stored per edge.
//!
//! A visibility region of a simple polygon is determined by which boundary
//! points it contains: walking the boundary counter-clockwise, consecutive
//! visible pieces are joined by window segments. Each edge `j` carries sorted
//! disjoint closed parameter intervals in `[0, 1]`, where `t = 0` is vertex
//! `j`. The canonical form depends only on the visible point set, so unions
//! and restrictions commute with canonicalization.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::geometry::{Coord, Point, SimplePolygon};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VisibleBoundary {
    pub n: usize,
    pub edges: BTreeMap<usize, Vec<(Coord, Coord)>>,
}

/// One boundary element of a visibility region.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Vertex(usize),
    Window { point: Point, edge: usize },
}

impl Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(if matches!(self, Element::Vertex(_)) {
            1
        } else {
            2
        }))?;
        match self {
            Element::Vertex(i) => m.serialize_entry("v", i)?,
            Element::Window { point, edge } => {
                m.serialize_entry("w", &[&point.x, &point.y])?;
                m.serialize_entry("edge", edge)?;
            }
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            v: Option<usize>,
            w: Option<[Coord; 2]>,
            edge: Option<usize>,
        }
        let raw = Raw::deserialize(d)?;
        match (raw.v, raw.w, raw.edge) {
            (Some(i), None, None) => Ok(Element::Vertex(i)),
            (None, Some([x, y]), Some(edge)) => Ok(Element::Window {
                point: Point::new(x, y),
                edge,
            }),
            _ => Err(serde::de::Error::custom(
                "expected {\"v\": i} or {\"w\": [x, y], \"edge\": j}",
            )),
        }
    }
}

fn merge(mut v: Vec<(Coord, Coord)>) -> Vec<(Coord, Coord)> {
    v.sort();
    let mut out: Vec<(Coord, Coord)> = Vec::with_capacity(v.len());
    for (s, t) in v {
        match out.last_mut() {
            Some(last) if s <= last.1 => {
                if t > last.1 {
                    last.1 = t;
                }
            }
            _ => out.push((s, t)),
        }
    }
    out
}

impl VisibleBoundary {
    pub fn empty(n: usize) -> Self {
        VisibleBoundary {
            n,
            edges: BTreeMap::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        VisibleBoundary {
            n,
            edges: (0..n)
                .map(|j| (j, vec![(Coord::zero(), Coord::one())]))
                .collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Adds the closed piece `[s, t]` of edge `j` without canonicalizing.
    pub fn add(&mut self, j: usize, s: Coord, t: Coord) {
        debug_assert!(s <= t && s.signum() >= 0 && t <= Coord::one());
        self.edges.entry(j).or_default().push((s, t));
    }

    pub fn add_vertex(&mut self, v: usize) {
        self.add(v, Coord::zero(), Coord::zero());
    }

    /// Whether vertex `v` belongs to the visible set.
    pub fn has_vertex(&self, v: usize) -> bool {
        let prev = (v + self.n - 1) % self.n;
        self.edges
            .get(&v)
            .is_some_and(|iv| iv.iter().any(|(s, _)| s.is_zero()))
            || self
                .edges
                .get(&prev)
                .is_some_and(|iv| iv.iter().any(|(_, t)| *t == Coord::one()))
    }

    /// Whether the point at parameter `t` of edge `j` is covered.
    pub fn covers(&self, j: usize, t: &Coord) -> bool {
        if t.is_zero() {
            return self.has_vertex(j);
        }
        if *t == Coord::one() {
            return self.has_vertex((j + 1) % self.n);
        }
        self.edges
            .get(&j)
            .is_some_and(|iv| iv.iter().any(|(s, u)| s <= t && t <= u))
    }

    pub fn canonical(&self) -> VisibleBoundary {
        let one = Coord::one();
        let vertices = self.vertex_set();
        let mut edges: BTreeMap<usize, Vec<(Coord, Coord)>> = BTreeMap::new();
        for (&j, iv) in &self.edges {
            let m: Vec<(Coord, Coord)> = merge(iv.clone())
                .into_iter()
                .filter(|(s, t)| !(s == t && (s.is_zero() || *s == one)))
                .collect();
            if !m.is_empty() {
                edges.insert(j, m);
            }
        }
        let mut out = VisibleBoundary { n: self.n, edges };
        for v in vertices {
            if !out.has_vertex(v) {
                out.edges
                    .entry(v)
                    .or_default()
                    .insert(0, (Coord::zero(), Coord::zero()));
            }
        }
        out
    }

    pub fn union(&self, other: &VisibleBoundary) -> VisibleBoundary {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (&j, iv) in &other.edges {
            out.edges.entry(j).or_default().extend(iv.iter().cloned());
        }
        out.canonical()
    }

    /// Keeps the closed edges accepted by `keep`, including their endpoints.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> VisibleBoundary {
        let mut out = VisibleBoundary::empty(self.n);
        for j in (0..self.n).filter(|&j| keep(j)) {
            if let Some(iv) = self.edges.get(&j) {
                out.edges.entry(j).or_default().extend(iv.iter().cloned());
            }
            if self.has_vertex(j) {
                out.add(j, Coord::zero(), Coord::zero());
            }
            if self.has_vertex((j + 1) % self.n) {
                out.add(j, Coord::one(), Coord::one());
            }
        }
        out.canonical()
    }

    /// Vertices in the visible set.
    pub fn vertex_set(&self) -> BTreeSet<usize> {
        self.edges
            .keys()
            .flat_map(|&j| [j, (j + 1) % self.n])
            .filter(|&v| self.has_vertex(v))
            .collect()
    }

    /// Visible boundary points in counter-clockwise order: each piece
    /// contributes its endpoints, with shared vertices listed once.
    pub fn elements(&self, poly: &SimplePolygon) -> Vec<Element> {
        let one = Coord::one();
        let mut out: Vec<Element> = Vec::new();
        let at = |j: usize, t: &Coord| -> Element {
            if t.is_zero() {
                Element::Vertex(j)
            } else if *t == one {
                Element::Vertex((j + 1) % self.n)
            } else {
                let (a, b) = poly.edge_points(j);
                Element::Window {
                    point: Point::lerp(a, b, t),
                    edge: j,
                }
            }
        };
        for (&j, iv) in &self.edges {
            for (s, t) in iv {
                for e in [at(j, s), at(j, t)] {
                    if out.last() != Some(&e) {
                        out.push(e);
                    }
                }
            }
        }
        while out.len() > 1 && out.first() == out.last() {
            out.pop();
        }
        if let Some(k) = (0..out.len()).min_by(|&a, &b| out[a].cmp(&out[b])) {
            out.rotate_left(k);
        }
        out
    }

    /// Corner points of the region, for drawing and containment tests.
    pub fn outline(&self, poly: &SimplePolygon) -> Vec<Point> {
        let mut pts: Vec<Point> = Vec::new();
        for (&j, iv) in &self.edges {
            let (a, b) = poly.edge_points(j);
            for (s, t) in iv {
                for u in [s, t] {
                    let p = Point::lerp(a, b, u);
                    if pts.last() != Some(&p) {
                        pts.push(p);
                    }
                }
            }
        }
        while pts.len() > 1 && pts.first() == pts.last() {
            pts.pop();
        }
        pts
    }

    /// Re-indexes a boundary computed on a sub-polygon whose vertex `k` is
    /// global vertex `verts[k]`. Local edges that are not polygon edges are
    /// dropped; their visible endpoints survive as vertex points.
    pub fn to_global(&self, verts: &[usize], n: usize) -> VisibleBoundary {
        let mut out = VisibleBoundary::empty(n);
        let k = verts.len();
        for (i, &v) in verts.iter().enumerate() {
            if self.has_vertex(i) {
                out.add_vertex(v);
            }
            let w = verts[(i + 1) % k];
            if w == (v + 1) % n {
                if let Some(iv) = self.edges.get(&i) {
                    out.edges.entry(v).or_default().extend(iv.iter().cloned());
                }
            }
        }
        out.canonical()
    }
}

/// Boundary parameter of vertex `v`.
pub fn vertex_pos(v: usize) -> Coord {
    Coord::int(v as i64)
}

/// Boundary parameter of the point at `t` on edge `j`.
pub fn edge_pos(j: usize, t: &Coord) -> Coord {
    &Coord::int(j as i64) + t
}

/// Complement of open counter-clockwise boundary arcs.
///
/// Positions are boundary parameters in `[0, n)`. Only the closed chain of
/// `len` edges starting at vertex `start` is reported.
pub fn complement_of_arcs(
    n: usize,
    arcs: &[(Coord, Coord)],
    start: usize,
    len: usize,
) -> VisibleBoundary {
    let nn = Coord::int(n as i64);
    let shift = Coord::int(start as i64);
    let rel = |x: &Coord| {
        let y = x - &shift;
        if y.signum() < 0 {
            &y + &nn
        } else {
            y
        }
    };
    let end = Coord::int(len as i64);
    // Covered key ranges. Key (x, -1) is just before x, (x, 0) is x itself and
    // (x, 1) is just after x; an open arc (a, b) spans (a, 1)..=(b, -1).
    let mut cover: Vec<((Coord, i8), (Coord, i8))> = Vec::new();
    for (a, b) in arcs {
        let (a, b) = (rel(a), rel(b));
        if a < b {
            cover.push(((a, 1), (b, -1)));
        } else {
            cover.push(((a, 1), (nn.clone(), 0)));
            cover.push(((Coord::zero(), 0), (b, -1)));
        }
    }
    cover.sort();
    let adjacent =
        |hi: &(Coord, i8), lo: &(Coord, i8)| lo <= hi || (lo.0 == hi.0 && lo.1 == hi.1 + 1);
    let mut merged: Vec<((Coord, i8), (Coord, i8))> = Vec::new();
    for (lo, hi) in cover {
        match merged.last_mut() {
            Some(last) if adjacent(&last.1, &lo) => {
                if hi > last.1 {
                    last.1 = hi;
                }
            }
            _ => merged.push((lo, hi)),
        }
    }
    let mut gaps: Vec<(Coord, Coord)> = Vec::new();
    let mut from: Option<Coord> = Some(Coord::zero());
    for (lo, hi) in merged {
        if let Some(f) = from.take() {
            if lo.1 == 1 {
                gaps.push((f, lo.0));
            }
        }
        from = if hi.1 == -1 { Some(hi.0) } else { None };
    }
    if let Some(f) = from {
        gaps.push((f, nn.clone()));
    }
    let gaps: Vec<(Coord, Coord)> = gaps
        .into_iter()
        .filter(|(x, _)| *x <= end)
        .map(|(x, y)| (x, y.min(end.clone())))
        .collect();
    let mut out = VisibleBoundary::empty(n);
    for (x, y) in gaps {
        if x > y {
            continue;
        }
        let k0 = x.floor();
        if x == y {
            let t = &x - &Coord::int(k0);
            let j = (start + k0 as usize) % n;
            if t.is_zero() {
                out.add_vertex(j);
            } else {
                out.add(j, t.clone(), t);
            }
            continue;
        }
        let mut k = k0;
        while Coord::int(k) < y {
            let kc = Coord::int(k);
            let s = if x > kc { &x - &kc } else { Coord::zero() };
            let kn = Coord::int(k + 1);
            let t = if y < kn { &y - &kc } else { Coord::one() };
            out.add((start + k as usize) % n, s, t);
            k += 1;
        }
    }
    out.canonical()
}
