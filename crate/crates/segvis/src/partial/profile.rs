//! Per-cell shortest path tree summaries, stored persistently.
//!
//! A cell profile keeps, for one sample point `x` of a cell:
//! the relevant primaries (vertices seen directly that lead into `L`), the
//! range of each primary's children in its candidate list, and per-vertex
//! critical information. Critical counts are split by turn direction and
//! stored lazily: the effective count of `v` is its own value plus the debits
//! of its strict ancestors.

use serde::{Deserialize, Serialize};

use crate::geometry::{orient_sign, Point, SimplePolygon};
use crate::persistent::{PersistentMap, Version};
use crate::structure::{
    shortest_path_tree, OutsidePolygon, Parent, ShortestPathTree, Triangulation,
};

use super::relevance::{Relevance, Sides};
use super::view::{SecondaryEdgeTable, Views, Wedge};

/// Slot of counter-clockwise turns in a count pair.
pub const LEFT: usize = 0;
/// Slot of clockwise turns.
pub const RIGHT: usize = 1;

fn unit(turn: i32) -> [i32; 2] {
    if turn > 0 {
        [1, 0]
    } else {
        [0, 1]
    }
}

fn add(a: [i32; 2], b: [i32; 2]) -> [i32; 2] {
    [a[0] + b[0], a[1] + b[1]]
}

fn sub(a: [i32; 2], b: [i32; 2]) -> [i32; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

/// Geometry shared by both sides of one cut node.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NodeGeometry {
    pub poly: SimplePolygon,
    pub tri: Triangulation,
    pub views: Views,
    pub table: SecondaryEdgeTable,
}

impl NodeGeometry {
    pub fn build(poly: SimplePolygon, tri: Triangulation) -> NodeGeometry {
        let views = Views::build(&poly, &tri);
        let table = SecondaryEdgeTable::build(&views);
        NodeGeometry {
            poly,
            tri,
            views,
            table,
        }
    }
}

#[derive(Clone, Copy)]
pub struct Ctx<'a> {
    pub geom: &'a NodeGeometry,
    pub sides: &'a Sides,
    pub rel: &'a Relevance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crit {
    pub parent: Parent,
    pub s: [i32; 2],
    pub d: [i32; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellProfile {
    pub prim: Version,
    pub first: Version,
    pub crit: Version,
}

/// The full shortest path tree of a point with relevance and exact counts.
#[derive(Debug, Clone)]
pub struct ScratchTree {
    pub spt: ShortestPathTree,
    pub relevant: Vec<bool>,
    /// Turns on the path from the root, strictly before each vertex.
    pub counts: Vec<[i32; 2]>,
    /// The primary each vertex hangs from.
    pub top: Vec<u32>,
}

impl ScratchTree {
    pub fn build(ctx: Ctx<'_>, x: &Point) -> Result<ScratchTree, OutsidePolygon> {
        let poly = &ctx.geom.poly;
        let spt = shortest_path_tree(poly, &ctx.geom.tri, x)?;
        let m = poly.len();
        let mut counts = vec![[0, 0]; m];
        let mut top = vec![u32::MAX; m];
        let mut order = Vec::with_capacity(m);
        let mut stack: Vec<usize> = spt.root_children().to_vec();
        for &c in &stack {
            top[c] = c as u32;
        }
        while let Some(v) = stack.pop() {
            order.push(v);
            let u = match spt.parent(v) {
                Some(Parent::Vertex(w)) => poly.vertex(w),
                _ => x,
            };
            for &c in spt.children(v) {
                let turn = orient_sign(u, poly.vertex(v), poly.vertex(c));
                counts[c] = add(counts[v], unit(turn));
                top[c] = top[v];
                stack.push(c);
            }
        }
        let mut relevant: Vec<bool> = (0..m).map(|v| ctx.sides.in_l(v)).collect();
        for &v in order.iter().rev() {
            if relevant[v] {
                if let Some(Parent::Vertex(u)) = spt.parent(v) {
                    relevant[u] = true;
                }
            }
        }
        Ok(ScratchTree {
            spt,
            relevant,
            counts,
            top,
        })
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ProfileStore {
    pub prim: PersistentMap<u32, ()>,
    pub first: PersistentMap<u32, Wedge>,
    pub crit: PersistentMap<u32, Crit>,
}

impl ProfileStore {
    pub fn from_scratch(&mut self, ctx: Ctx<'_>, x: &Point) -> Result<CellProfile, OutsidePolygon> {
        let t = ScratchTree::build(ctx, x)?;
        let mut p = CellProfile {
            prim: Version::EMPTY,
            first: Version::EMPTY,
            crit: Version::EMPTY,
        };
        for &b in t.spt.root_children() {
            if t.relevant[b] {
                p.prim = self.prim.insert(p.prim, b as u32, ());
                if let Some(w) = ctx.geom.views.wedge(b, x) {
                    p.first = self.first.insert(p.first, b as u32, w);
                }
            }
        }
        for v in 0..ctx.geom.poly.len() {
            if let Some(parent) = t.spt.parent(v) {
                p.crit = self.crit.insert(
                    p.crit,
                    v as u32,
                    Crit {
                        parent,
                        s: t.counts[v],
                        d: [0, 0],
                    },
                );
            }
        }
        Ok(p)
    }

    fn set_first(&mut self, v: Version, ctx: Ctx<'_>, a: u32, x: &Point) -> Version {
        match ctx.geom.views.wedge(a as usize, x) {
            Some(w) => self.first.insert(v, a, w),
            None => self.first.remove(v, &a),
        }
    }

    /// Crossing the constraint of pivot `a` and toggled vertex `b` into a
    /// cell with sample `x`. `None` when the stored state does not match
    /// either side of the constraint; the caller then rebuilds the cell.
    pub fn toggle(
        &mut self,
        ctx: Ctx<'_>,
        prof: CellProfile,
        a: u32,
        b: u32,
        x: &Point,
    ) -> Option<CellProfile> {
        let cb = *self.crit.get(prof.crit, &b)?;
        let mut p = prof;
        let pa = ctx.geom.views.point(a as usize);
        match cb.parent {
            Parent::Root => {
                // `b` moves behind `a`.
                let mut ca = self.crit.get(p.crit, &a).copied()?;
                if !self.prim.contains(p.prim, &a) {
                    // An irrelevant primary carries stale data; reset it.
                    ca = Crit {
                        parent: Parent::Root,
                        s: [0, 0],
                        d: [0, 0],
                    };
                    p.crit = self.crit.insert(p.crit, a, ca);
                    p.prim = self.prim.insert(p.prim, a, ());
                } else if ca.parent != Parent::Root {
                    return None;
                }
                let turn = orient_sign(x, pa, ctx.geom.views.point(b as usize));
                if turn == 0 {
                    return None;
                }
                p.prim = self.prim.remove(p.prim, &b);
                p.first = self.first.remove(p.first, &b);
                p.first = self.set_first(p.first, ctx, a, x);
                let s = sub(add(ca.s, unit(turn)), ca.d);
                let d = sub(add(cb.d, s), cb.s);
                p.crit = self.crit.insert(
                    p.crit,
                    b,
                    Crit {
                        parent: Parent::Vertex(a as usize),
                        s,
                        d,
                    },
                );
            }
            Parent::Vertex(w) if w == a as usize => {
                // `b` comes into direct view.
                if !self.prim.contains(p.prim, &a) {
                    return None;
                }
                let d = sub(cb.d, cb.s);
                p.crit = self.crit.insert(
                    p.crit,
                    b,
                    Crit {
                        parent: Parent::Root,
                        s: [0, 0],
                        d,
                    },
                );
                p.prim = self.prim.insert(p.prim, b, ());
                p.first = self.set_first(p.first, ctx, b, x);
                let cand = ctx.geom.views.candidates(a as usize);
                let keeps = ctx.sides.in_l(a as usize)
                    || self
                        .first
                        .get(prof.first, &a)
                        .is_some_and(|&fw| ctx.rel.within(a as usize, fw).any(|i| cand[i] != b));
                if keeps {
                    p.first = self.set_first(p.first, ctx, a, x);
                } else {
                    p.prim = self.prim.remove(p.prim, &a);
                    p.first = self.first.remove(p.first, &a);
                }
            }
            Parent::Vertex(_) => return None,
        }
        Some(p)
    }

    pub fn size(&self) -> usize {
        self.prim.node_count() + self.first.node_count() + self.crit.node_count()
    }
}
