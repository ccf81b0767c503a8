//! Weak visibility from a segment in linear time.
//!
//! Both shortest path trees (from `p` and from `q`) are searched depth first.
//! The first turn on a path that bends away from the segment casts a shadow:
//! everything in the subtree lies behind the window cut along the extension
//! of the last tree edge. The visible boundary is what no shadow covers.

use crate::geometry::{on_segment, orient_sign, Coord, Point, Segment, SimplePolygon};
use crate::structure::{shortest_path_tree, Parent, ShortestPathTree, Triangulation};

use super::boundary::{complement_of_arcs, edge_pos, vertex_pos, Element, VisibleBoundary};
use super::vp::hit_param;
use super::SegmentNotInside;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakVisibilityPolygon {
    pub source: Segment,
    pub boundary: VisibleBoundary,
}

impl WeakVisibilityPolygon {
    pub fn elements(&self, poly: &SimplePolygon) -> Vec<Element> {
        self.boundary.elements(poly)
    }
}

/// Which side of the directed line `pq` a tree path leaves to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    On,
}

impl Side {
    pub fn of(pq: &Segment, x: &Point) -> Side {
        match orient_sign(&pq.a, &pq.b, x) {
            1 => Side::Left,
            -1 => Side::Right,
            _ => Side::On,
        }
    }

    /// Side of a child path given the parent's side.
    pub fn extend(self, pq: &Segment, x: &Point) -> Side {
        match self {
            Side::On => Side::of(pq, x),
            s => s,
        }
    }
}

/// Whether turning with orientation `turn` at `v` hides the subtree of `v`
/// from the segment. `from_p` selects the tree rooted at `pq.a`.
pub fn turn_is_bad(pq: &Segment, from_p: bool, side: Side, turn: i32, v: &Point) -> bool {
    match side {
        Side::On => !on_segment(&pq.a, &pq.b, v),
        Side::Left => (turn < 0) == from_p,
        Side::Right => (turn > 0) == from_p,
    }
}

/// The open boundary arc hidden behind reflex vertex `v`, whose tree parent
/// is at `u`. `turn` is the orientation of the bend at `v`.
pub fn shadow_arc(
    poly: &SimplePolygon,
    spt: &ShortestPathTree,
    u: &Point,
    v: usize,
    turn: i32,
) -> (Coord, Coord) {
    let n = poly.len();
    let off = |x: usize| {
        if turn < 0 {
            (x + n - v) % n
        } else {
            (v + n - x) % n
        }
    };
    let mut far = v;
    let mut stack = vec![v];
    while let Some(x) = stack.pop() {
        if off(x) > off(far) {
            far = x;
        }
        stack.extend_from_slice(spt.children(x));
    }
    let vp = poly.vertex(v);
    if turn < 0 {
        let (a, b) = poly.edge_points(far);
        let t = hit_param(u, vp, a, b);
        debug_assert!(
            t.signum() >= 0 && t <= Coord::one(),
            "window leaves edge {far}"
        );
        (vertex_pos(v), edge_pos(far, &t))
    } else {
        let j = poly.prev(far);
        let (a, b) = poly.edge_points(j);
        let t = hit_param(u, vp, a, b);
        debug_assert!(
            t.signum() >= 0 && t <= Coord::one(),
            "window leaves edge {j}"
        );
        (edge_pos(j, &t), vertex_pos(v))
    }
}

/// Shadow arcs cast in the shortest path tree of one endpoint.
pub fn shadows(
    poly: &SimplePolygon,
    spt: &ShortestPathTree,
    pq: &Segment,
    from_p: bool,
) -> Vec<(Coord, Coord)> {
    let mut arcs = Vec::new();
    let mut stack: Vec<(usize, Side)> = spt
        .root_children()
        .iter()
        .map(|&c| (c, Side::of(pq, poly.vertex(c))))
        .collect();
    while let Some((v, side)) = stack.pop() {
        let kids = spt.children(v);
        let Some(&c) = kids.first() else { continue };
        let u = match spt.parent(v) {
            Some(Parent::Vertex(w)) => poly.vertex(w),
            _ => &spt.root,
        };
        let vp = poly.vertex(v);
        let turn = orient_sign(u, vp, poly.vertex(c));
        debug_assert!(kids
            .iter()
            .all(|&k| orient_sign(u, vp, poly.vertex(k)) == turn));
        if turn_is_bad(pq, from_p, side, turn, vp) {
            arcs.push(shadow_arc(poly, spt, u, v, turn));
        } else {
            stack.extend(kids.iter().map(|&k| (k, side.extend(pq, poly.vertex(k)))));
        }
    }
    arcs
}

pub fn wvp_linear(
    poly: &SimplePolygon,
    tri: &Triangulation,
    pq: &Segment,
) -> Result<WeakVisibilityPolygon, SegmentNotInside> {
    if !crate::geometry::segment_in_polygon(poly, pq) {
        return Err(SegmentNotInside);
    }
    let n = poly.len();
    let sp = shortest_path_tree(poly, tri, &pq.a).map_err(|_| SegmentNotInside)?;
    let mut arcs = shadows(poly, &sp, pq, true);
    if pq.a != pq.b {
        let sq = shortest_path_tree(poly, tri, &pq.b).map_err(|_| SegmentNotInside)?;
        arcs.extend(shadows(poly, &sq, pq, false));
    }
    Ok(WeakVisibilityPolygon {
        source: pq.clone(),
        boundary: complement_of_arcs(n, &arcs, 0, n),
    })
}
