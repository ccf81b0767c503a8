//! Partial visibility decomposition of `R` with respect to `L`.

use std::cell::RefCell;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::geometry::{orient_sign, Coord, Point, Segment};
use crate::structure::Parent;
use crate::visibility::{
    complement_of_arcs, shadow_arc, turn_is_bad, vertex_pos, Side, VisibleBoundary,
};

use super::arrangement::Arrangement;
use super::constraints::{critical_constraints, CriticalConstraint};
use super::profile::{CellProfile, Ctx, NodeGeometry, ProfileStore, ScratchTree, LEFT, RIGHT};
use super::relevance::{Relevance, Sides};

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("point lies outside the query side of the diagonal")]
pub struct OutsideRegion;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("segment endpoint lies outside the query side of the diagonal")]
pub struct SegmentOutsideRegion;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartialDecomposition {
    pub sides: Sides,
    pub rel: Relevance,
    pub constraints: Vec<CriticalConstraint>,
    pub arrangement: Arrangement,
    /// Profile of each arrangement face.
    pub profiles: Vec<CellProfile>,
    pub store: ProfileStore,
    /// Faces whose profile was recomputed instead of updated.
    pub rebuilt_cells: usize,
}

impl PartialDecomposition {
    pub fn build(geom: &NodeGeometry, sides: Sides) -> PartialDecomposition {
        let rel = Relevance::build(&geom.views, &geom.table, &sides);
        let constraints = critical_constraints(&geom.views, &rel, &sides);
        let m = sides.m;
        let outline: Vec<Point> = (0..=sides.r_len())
            .map(|i| geom.views.point((sides.r_start() + i) % m).clone())
            .collect();
        let chords: Vec<Segment> = constraints.iter().map(|c| c.segment.clone()).collect();
        let arrangement = Arrangement::build(&outline, &chords);

        let ctx = Ctx {
            geom,
            sides: &sides,
            rel: &rel,
        };
        let mut store = ProfileStore::default();
        let mut profiles: Vec<Option<CellProfile>> = vec![None; arrangement.face_count];
        let mut rebuilt_cells = 0;
        for step in &arrangement.tour {
            let x = &arrangement.samples[step.face as usize];
            let updated = step.from.and_then(|(f, e)| {
                let chords = &arrangement.edges[e as usize].chords;
                if chords.len() != 1 {
                    return None;
                }
                let c = &constraints[chords[0] as usize];
                store.toggle(ctx, profiles[f as usize].unwrap(), c.pivot, c.toggled, x)
            });
            let prof = match updated {
                Some(p) => p,
                None => {
                    if step.from.is_some() {
                        rebuilt_cells += 1;
                    }
                    store
                        .from_scratch(ctx, x)
                        .expect("face samples lie inside the polygon")
                }
            };
            profiles[step.face as usize] = Some(prof);
        }
        let profiles = profiles
            .into_iter()
            .map(|p| p.expect("tour covers every face"))
            .collect();
        PartialDecomposition {
            sides,
            rel,
            constraints,
            arrangement,
            profiles,
            store,
            rebuilt_cells,
        }
    }

    pub fn ctx<'a>(&'a self, geom: &'a NodeGeometry) -> Ctx<'a> {
        Ctx {
            geom,
            sides: &self.sides,
            rel: &self.rel,
        }
    }

    /// The relevant part of the shortest path tree of `x`, read from the
    /// stored profile of the face holding `x` when that face is unique, and
    /// computed directly otherwise.
    pub fn query_sptl<'a>(
        &'a self,
        geom: &'a NodeGeometry,
        x: &Point,
    ) -> Result<SptL<'a>, OutsideRegion> {
        let ctx = self.ctx(geom);
        let faces = self.arrangement.locate(x);
        if faces.is_empty() {
            return Err(OutsideRegion);
        }
        if faces.len() == 1 && !self.arrangement.is_pinned(x) {
            return Ok(SptL::Stored {
                ctx,
                store: &self.store,
                profile: self.profiles[faces[0] as usize],
                root: x.clone(),
                memo: RefCell::new(HashMap::new()),
            });
        }
        Ok(SptL::Scratch {
            ctx,
            tree: ScratchTree::build(ctx, x).map_err(|_| OutsideRegion)?,
        })
    }

    /// The part of the `L` chain weakly visible from `pq`, in local indices,
    /// and the number of tree nodes visited. Only the endpoints are checked
    /// against `R`; the caller guarantees the rest of the segment stays in it.
    pub fn query_pwvp(
        &self,
        geom: &NodeGeometry,
        pq: &Segment,
    ) -> Result<(VisibleBoundary, usize), SegmentOutsideRegion> {
        let tp = self
            .query_sptl(geom, &pq.a)
            .map_err(|_| SegmentOutsideRegion)?;
        let mut arcs = Vec::new();
        let mut visits = 0;
        if pq.a == pq.b {
            walk(&tp, None, pq, true, &mut arcs, &mut visits);
        } else {
            let tq = self
                .query_sptl(geom, &pq.b)
                .map_err(|_| SegmentOutsideRegion)?;
            walk(&tp, Some(&tq), pq, true, &mut arcs, &mut visits);
            walk(&tq, None, pq, false, &mut arcs, &mut visits);
        }
        Ok((
            complement_of_arcs(self.sides.m, &arcs, self.sides.l_start, self.sides.l_len),
            visits,
        ))
    }

    pub fn size(&self) -> usize {
        self.arrangement.size() + self.store.size() + self.profiles.len() + self.constraints.len()
    }
}

/// A node of a relevant tree. `back` is the index of the parent in the
/// candidate list of `v` when the tree is read from a stored profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeNode {
    pub v: u32,
    pub parent: Parent,
    back: u32,
}

pub enum SptL<'a> {
    Stored {
        ctx: Ctx<'a>,
        store: &'a ProfileStore,
        profile: CellProfile,
        root: Point,
        memo: RefCell<HashMap<u32, ([i32; 2], u32)>>,
    },
    Scratch {
        ctx: Ctx<'a>,
        tree: ScratchTree,
    },
}

impl<'a> SptL<'a> {
    fn ctx(&self) -> Ctx<'a> {
        match self {
            SptL::Stored { ctx, .. } | SptL::Scratch { ctx, .. } => *ctx,
        }
    }

    pub fn root(&self) -> &Point {
        match self {
            SptL::Stored { root, .. } => root,
            SptL::Scratch { tree, .. } => &tree.spt.root,
        }
    }

    pub fn is_stored(&self) -> bool {
        matches!(self, SptL::Stored { .. })
    }

    pub fn primaries(&self) -> Vec<TreeNode> {
        let mk = |v: usize| TreeNode {
            v: v as u32,
            parent: Parent::Root,
            back: u32::MAX,
        };
        match self {
            SptL::Stored { store, profile, .. } => store
                .prim
                .iter(profile.prim)
                .map(|(&v, _)| mk(v as usize))
                .collect(),
            SptL::Scratch { tree, .. } => tree
                .spt
                .root_children()
                .iter()
                .copied()
                .filter(|&v| tree.relevant[v])
                .map(mk)
                .collect(),
        }
    }

    pub fn parent_point(&self, n: &TreeNode) -> &Point {
        match n.parent {
            Parent::Root => self.root(),
            Parent::Vertex(u) => self.ctx().geom.views.point(u),
        }
    }

    /// Appends the relevant children of `n` and returns the orientation of
    /// the turn they make at `n`, or 0 when there are none.
    pub fn children(&self, n: &TreeNode, out: &mut Vec<TreeNode>) -> i32 {
        let v = n.v as usize;
        match self {
            SptL::Stored {
                ctx,
                store,
                profile,
                ..
            } => {
                let w = match n.parent {
                    Parent::Root => store.first.get(profile.first, &n.v).copied(),
                    Parent::Vertex(_) => ctx.geom.table.wedge(v, n.back as usize),
                };
                let Some(w) = w else { return 0 };
                let cand = ctx.geom.views.candidates(v);
                let before = out.len();
                for i in ctx.rel.within(v, w) {
                    out.push(TreeNode {
                        v: cand[i],
                        parent: Parent::Vertex(v),
                        back: ctx.geom.table.back(v, i) as u32,
                    });
                }
                if out.len() > before {
                    w.turn as i32
                } else {
                    0
                }
            }
            SptL::Scratch { ctx, tree } => {
                let kids = tree.spt.children(v);
                let before = out.len();
                for &c in kids.iter().filter(|&&c| tree.relevant[c]) {
                    out.push(TreeNode {
                        v: c as u32,
                        parent: Parent::Vertex(v),
                        back: u32::MAX,
                    });
                }
                if out.len() == before {
                    return 0;
                }
                let pts = &ctx.geom.views;
                orient_sign(
                    self.parent_point(n),
                    pts.point(v),
                    pts.point(out[before].v as usize),
                )
            }
        }
    }

    /// Effective turn counts strictly before `v` on its root path and the
    /// primary the path starts with.
    pub fn critical(&self, v: u32) -> Option<([i32; 2], u32)> {
        match self {
            SptL::Scratch { tree, .. } => {
                let t = tree.top[v as usize];
                (t != u32::MAX).then(|| (tree.counts[v as usize], t))
            }
            SptL::Stored {
                store,
                profile,
                memo,
                ..
            } => {
                let c = store.crit.get(profile.crit, &v)?;
                let Parent::Vertex(u) = c.parent else {
                    return Some((c.s, v));
                };
                let mut memo = memo.borrow_mut();
                let mut chain = Vec::new();
                let mut w = u as u32;
                let (mut acc, top) = loop {
                    if let Some(&hit) = memo.get(&w) {
                        break hit;
                    }
                    let cw = store.crit.get(profile.crit, &w)?;
                    chain.push((w, cw.d));
                    match cw.parent {
                        Parent::Root => break ([0, 0], w),
                        Parent::Vertex(x) => w = x as u32,
                    }
                };
                for &(x, d) in chain.iter().rev() {
                    acc = [acc[0] + d[0], acc[1] + d[1]];
                    memo.insert(x, (acc, top));
                }
                let (sd, top) = memo[&(u as u32)];
                Some(([c.s[0] + sd[0], c.s[1] + sd[1]], top))
            }
        }
    }
}

/// Count slot holding the turns that are bad for the tree of the given
/// endpoint on the given side.
fn bad_slot(from_p: bool, side: Side) -> usize {
    match (side, from_p) {
        (Side::Left, true) | (Side::Right, false) => RIGHT,
        _ => LEFT,
    }
}

fn walk(
    tree: &SptL<'_>,
    other: Option<&SptL<'_>>,
    pq: &Segment,
    from_p: bool,
    arcs: &mut Vec<(Coord, Coord)>,
    visits: &mut usize,
) {
    let ctx = tree.ctx();
    let views = &ctx.geom.views;
    let mut stack: Vec<(TreeNode, Side)> = tree
        .primaries()
        .into_iter()
        .map(|n| (n, Side::of(pq, views.point(n.v as usize))))
        .collect();
    let mut kids = Vec::new();
    while let Some((n, side)) = stack.pop() {
        *visits += 1;
        let v = n.v as usize;
        if let Some(o) = other.filter(|_| ctx.sides.in_l(v)) {
            if let Some((c, top)) = o.critical(n.v) {
                let s = Side::of(pq, views.point(top as usize));
                if s != Side::On && c[bad_slot(!from_p, s)] > 0 {
                    continue;
                }
            }
        }
        kids.clear();
        let turn = tree.children(&n, &mut kids);
        if turn == 0 {
            continue;
        }
        let u = tree.parent_point(&n);
        let vp = views.point(v);
        if turn_is_bad(pq, from_p, side, turn, vp) {
            arcs.push(match tree {
                // Off-cell roots may sit on a grazing line; follow the subtree.
                SptL::Scratch { tree, .. } => shadow_arc(&ctx.geom.poly, &tree.spt, u, v, turn),
                SptL::Stored { .. } => {
                    let z = views
                        .hit(v, &views.ahead(v, u))
                        .expect("a bend has an extension");
                    if turn < 0 {
                        (vertex_pos(v), z)
                    } else {
                        (z, vertex_pos(v))
                    }
                }
            });
        } else {
            stack.extend(
                kids.iter()
                    .map(|&k| (k, side.extend(pq, views.point(k.v as usize)))),
            );
        }
    }
}
