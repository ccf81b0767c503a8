//! Brute-force weak visibility: a vertex sees the segment iff its own
//! visibility region meets the segment.

use std::collections::BTreeSet;

use crate::geometry::{
    on_segment, point_in_polygon, segment_in_polygon, segment_intersection, Containment,
    Intersection, Point, Segment, SimplePolygon,
};
use crate::structure::Triangulation;

use super::vp::visibility_polygon;
use super::SegmentNotInside;

/// Whether the closed region bounded by `outline` meets segment `s`.
pub fn region_meets_segment(outline: &[Point], s: &Segment) -> bool {
    match outline.len() {
        0 => return false,
        1 => return on_segment(&s.a, &s.b, &outline[0]),
        2 => {}
        _ => {
            let region = SimplePolygon::from_trusted(outline.to_vec());
            if point_in_polygon(&region, &s.a) != Containment::Outside
                || point_in_polygon(&region, &s.b) != Containment::Outside
            {
                return true;
            }
        }
    }
    let k = outline.len();
    (0..k).any(|i| {
        let e = Segment::new(outline[i].clone(), outline[(i + 1) % k].clone());
        segment_intersection(s, &e) != Intersection::None
    })
}

pub fn weak_visibility_oracle(
    poly: &SimplePolygon,
    tri: &Triangulation,
    pq: &Segment,
) -> Result<BTreeSet<usize>, SegmentNotInside> {
    if !segment_in_polygon(poly, pq) {
        return Err(SegmentNotInside);
    }
    let mut out = BTreeSet::new();
    for v in 0..poly.len() {
        let vp =
            visibility_polygon(poly, tri, poly.vertex(v)).expect("vertices lie on the boundary");
        if region_meets_segment(&vp.boundary.outline(poly), pq) {
            out.insert(v);
        }
    }
    Ok(out)
}
