//! Critical constraints: extensions of sightlines past a blocking vertex.
//!
//! Crossing the extension of `b -> a` beyond `a` switches `b` between being
//! seen directly and being hidden behind `a`. Only extensions that reach the
//! near side `R` and whose switch matters for `L` are kept.

use serde::{Deserialize, Serialize};

use crate::geometry::{line_intersection, proper_crossing, Segment};

use super::relevance::{Relevance, Sides};
use super::view::Views;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalConstraint {
    /// The blocking vertex the constraint starts from.
    pub pivot: u32,
    /// The vertex that appears or disappears when the constraint is crossed.
    pub toggled: u32,
    /// The part of the extension inside `R`.
    pub segment: Segment,
    /// Whether the extension passes through the diagonal from `L`.
    pub crosses_diagonal: bool,
}

pub fn critical_constraints(
    views: &Views,
    rel: &Relevance,
    sides: &Sides,
) -> Vec<CriticalConstraint> {
    let m = views.len();
    let (ea, eb) = sides.diagonal();
    let (pa, pb) = (views.point(ea), views.point(eb));
    let mut out = Vec::new();
    for a in 0..m {
        let pt_a = views.point(a);
        for (i, &b) in views.candidates(a).iter().enumerate() {
            if !rel.is_relevant(a, i) {
                continue;
            }
            let d = views.ahead(a, views.point(b as usize));
            let Some((pos, z)) = views.hit_point(a, &d) else {
                continue;
            };
            // The far end lies on the boundary, never inside the diagonal.
            let z_in_r = if pos.is_integer() {
                let v = pos.floor() as usize % m;
                (v != ea && v != eb).then(|| sides.in_r(v))
            } else {
                Some(sides.edge_in_r(pos.floor() as usize % m))
            };
            let piece = if proper_crossing(pt_a, &z, pa, pb) {
                let c = line_intersection(pt_a, &z, pa, pb).expect("crossing lines");
                match z_in_r {
                    Some(true) => Some((Segment::new(c, z.clone()), true)),
                    _ => Some((Segment::new(pt_a.clone(), c), false)),
                }
            } else {
                let a_on_e = a == ea || a == eb;
                let in_r = z_in_r.unwrap_or(!a_on_e && sides.in_r(a));
                in_r.then(|| (Segment::new(pt_a.clone(), z.clone()), false))
            };
            if let Some((segment, crosses_diagonal)) = piece {
                if !segment.is_degenerate() {
                    out.push(CriticalConstraint {
                        pivot: a as u32,
                        toggled: b,
                        segment,
                        crosses_diagonal,
                    });
                }
            }
        }
    }
    out
}
