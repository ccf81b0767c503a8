//! The full query structure: a balanced cut tree with a partial
//! decomposition for each side of every internal node.
//!
//! A query walks down from the root. While the segment stays on one side of
//! a node's diagonal, the far side is answered by that side's partial
//! decomposition and the walk continues on the near side. When the segment
//! crosses the diagonal it is split there, and each half is handled the same
//! way on its own side. A leaf triangle containing the segment is fully
//! visible.

mod merge;
mod serial;

use serde::{Deserialize, Serialize};

use crate::geometry::{line_intersection, segment_in_polygon, Point, Segment, SimplePolygon};
use crate::partial::{NodeGeometry, PartialDecomposition, Sides};
use crate::structure::CutTree;
use crate::visibility::{SegmentNotInside, VisibleBoundary, WeakVisibilityPolygon};

pub use merge::{merge_wvp, MalformedParts, Part};
pub use serial::{Format, IndexFileError, MAGIC};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InternalNode {
    pub geom: NodeGeometry,
    /// `decomps[j]` answers segments lying in child `j` against the other child.
    pub decomps: [PartialDecomposition; 2],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WvpIndex {
    pub polygon: SimplePolygon,
    pub tree: CutTree,
    pub internal: Vec<Option<InternalNode>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TraceCase {
    SameSide,
    Crossing,
    Leaf,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub node: usize,
    pub case: TraceCase,
    pub segment: Segment,
    /// Where the segment crosses the node's diagonal.
    pub split: Option<Point>,
    /// Visible vertices contributed at this node.
    pub part_size: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryTrace {
    pub steps: Vec<TraceStep>,
    /// Tree nodes visited inside partial queries plus cut tree nodes.
    pub visits: usize,
    /// Sub-segments created by crossing splits, counting the whole query.
    pub pieces: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexStats {
    pub n: usize,
    pub nodes: usize,
    pub depth: usize,
    pub cells: usize,
    pub max_cells: usize,
    pub constraints: usize,
    /// Largest number of constraints crossing one diagonal.
    pub max_crossing: usize,
    pub profile_entries: usize,
    pub rebuilt_cells: usize,
}

/// A segment endpoint with the triangles containing it.
struct End {
    pt: Point,
    tris: Vec<usize>,
}

impl WvpIndex {
    pub fn build(polygon: &SimplePolygon) -> WvpIndex {
        let tree = CutTree::build(polygon);
        let internal = tree
            .nodes
            .iter()
            .map(|node| {
                let split = node.split.as_ref()?;
                let geom = NodeGeometry::build(
                    node.polygon(polygon),
                    node.local_triangulation(&tree.triangulation),
                );
                let m = node.verts.len();
                let decomps = [false, true].map(|l_first| {
                    // Queries from child 0 look at child 1, so `L` is child 1.
                    PartialDecomposition::build(
                        &geom,
                        Sides::of_split(m, split.a, split.b, l_first),
                    )
                });
                Some(InternalNode { geom, decomps })
            })
            .collect();
        WvpIndex {
            polygon: polygon.clone(),
            tree,
            internal,
        }
    }

    pub fn n(&self) -> usize {
        self.polygon.len()
    }

    pub fn stats(&self) -> IndexStats {
        let mut s = IndexStats {
            n: self.n(),
            nodes: self.tree.nodes.len(),
            depth: self.tree.depth(),
            ..Default::default()
        };
        for d in self
            .internal
            .iter()
            .flatten()
            .flat_map(|i| i.decomps.iter())
        {
            s.cells += d.arrangement.face_count;
            s.max_cells = s.max_cells.max(d.arrangement.face_count);
            s.constraints += d.constraints.len();
            s.max_crossing = s
                .max_crossing
                .max(d.constraints.iter().filter(|c| c.crosses_diagonal).count());
            s.profile_entries += d.store.size();
            s.rebuilt_cells += d.rebuilt_cells;
        }
        s
    }

    pub fn query(&self, pq: &Segment) -> Result<WeakVisibilityPolygon, SegmentNotInside> {
        self.query_traced(pq).map(|(w, _)| w)
    }

    pub fn query_traced(
        &self,
        pq: &Segment,
    ) -> Result<(WeakVisibilityPolygon, QueryTrace), SegmentNotInside> {
        if !segment_in_polygon(&self.polygon, pq) {
            return Err(SegmentNotInside);
        }
        let mut trace = QueryTrace::default();
        let mut parts = Vec::new();
        let p = self.end(&pq.a);
        let q = self.end(&pq.b);
        trace.pieces = 1;
        self.descend(0, &p, &q, 0, &mut parts, &mut trace);
        let boundary = merge_wvp(&parts, self.n()).expect("parts of one query align");
        Ok((
            WeakVisibilityPolygon {
                source: pq.clone(),
                boundary,
            },
            trace,
        ))
    }

    fn end(&self, x: &Point) -> End {
        End {
            pt: x.clone(),
            tris: self.tree.triangles_at(x),
        }
    }

    fn side(&self, x: &End, child: usize) -> bool {
        x.tris.iter().any(|&t| self.tree.in_subtree(t, child))
    }

    fn descend(
        &self,
        id: usize,
        p: &End,
        q: &End,
        piece: usize,
        parts: &mut Vec<Part>,
        trace: &mut QueryTrace,
    ) {
        trace.visits += 1;
        let node = &self.tree.nodes[id];
        let n = self.n();
        let segment = Segment::new(p.pt.clone(), q.pt.clone());
        let Some(split) = &node.split else {
            let boundary = VisibleBoundary::full(3).to_global(&node.verts, n);
            trace.steps.push(TraceStep {
                node: id,
                case: TraceCase::Leaf,
                segment,
                split: None,
                part_size: 3,
            });
            parts.push(Part {
                boundary,
                chain: node.verts.clone(),
                piece,
            });
            return;
        };
        let inner = self.internal[id].as_ref().expect("internal node data");
        let [c0, c1] = split.children;
        let at = |x: &End| [self.side(x, c0), self.side(x, c1)];
        let (sp, sq) = (at(p), at(q));
        let on_e = |s: [bool; 2]| s[0] && s[1];
        let near = match (on_e(sp), on_e(sq)) {
            (true, true) => Some(0),
            (true, false) => Some(if sq[0] { 0 } else { 1 }),
            (false, true) => Some(if sp[0] { 0 } else { 1 }),
            (false, false) if sp == sq => Some(if sp[0] { 0 } else { 1 }),
            _ => None,
        };
        match near {
            Some(j) => {
                let size = self.far_part(id, inner, j, &segment, piece, parts, trace);
                trace.steps.push(TraceStep {
                    node: id,
                    case: TraceCase::SameSide,
                    segment,
                    split: None,
                    part_size: size,
                });
                self.descend(split.children[j], p, q, piece, parts, trace);
            }
            None => {
                let j = if sp[0] { 0 } else { 1 };
                let (ea, eb) = (&node.verts[split.a], &node.verts[split.b]);
                let (pa, pb) = (self.polygon.vertex(*ea), self.polygon.vertex(*eb));
                let r = line_intersection(&p.pt, &q.pt, pa, pb)
                    .expect("crossing segment meets the diagonal line");
                let r = self.end(&r);
                let first = Segment::new(p.pt.clone(), r.pt.clone());
                let second = Segment::new(r.pt.clone(), q.pt.clone());
                let (pa, pb) = (trace.pieces, trace.pieces + 1);
                trace.pieces += 2;
                let mut size = self.far_part(id, inner, j, &first, pa, parts, trace);
                size += self.far_part(id, inner, 1 - j, &second, pb, parts, trace);
                trace.steps.push(TraceStep {
                    node: id,
                    case: TraceCase::Crossing,
                    segment,
                    split: Some(r.pt.clone()),
                    part_size: size,
                });
                self.descend(split.children[j], p, &r, pa, parts, trace);
                self.descend(split.children[1 - j], &r, q, pb, parts, trace);
            }
        }
    }

    /// The partial answer on the side opposite child `j` for a segment in child `j`.
    fn far_part(
        &self,
        id: usize,
        inner: &InternalNode,
        j: usize,
        s: &Segment,
        piece: usize,
        parts: &mut Vec<Part>,
        trace: &mut QueryTrace,
    ) -> usize {
        let node = &self.tree.nodes[id];
        let d = &inner.decomps[j];
        let (local, visits) = d
            .query_pwvp(&inner.geom, s)
            .expect("segment lies in the node");
        trace.visits += visits;
        let sides = d.sides;
        let chain: Vec<usize> = (0..=sides.l_len)
            .map(|i| node.verts[(sides.l_start + i) % sides.m])
            .collect();
        let boundary = local.to_global(&node.verts, self.n());
        let size = boundary.vertex_set().len();
        parts.push(Part {
            boundary,
            chain,
            piece,
        });
        size
    }
}

pub fn build_index(polygon: &SimplePolygon) -> WvpIndex {
    WvpIndex::build(polygon)
}

pub fn query_wvp(
    index: &WvpIndex,
    pq: &Segment,
) -> Result<WeakVisibilityPolygon, SegmentNotInside> {
    index.query(pq)
}
