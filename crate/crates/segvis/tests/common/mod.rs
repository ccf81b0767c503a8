#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use segvis::geometry::{Segment, SimplePolygon};
use segvis::partial::{NodeGeometry, PartialDecomposition, Sides, SptL};
use segvis::structure::{CutTree, Parent};
use segvis::visibility::{wvp_linear, VisibleBoundary};

pub type Shape = (
    BTreeMap<u32, (Parent, BTreeSet<u32>)>,
    BTreeMap<u32, ([i32; 2], u32)>,
);

/// Every relevant node with its parent and children, and the critical
/// counts of every node.
pub fn shape(t: &SptL<'_>) -> Shape {
    let mut nodes = BTreeMap::new();
    let mut crit = BTreeMap::new();
    let mut stack = t.primaries();
    let mut kids = Vec::new();
    while let Some(n) = stack.pop() {
        kids.clear();
        t.children(&n, &mut kids);
        nodes.insert(n.v, (n.parent, kids.iter().map(|k| k.v).collect()));
        crit.insert(n.v, t.critical(n.v).unwrap());
        stack.extend(kids.iter().copied());
    }
    (nodes, crit)
}

/// One side of the root split of a polygon.
pub struct Case {
    pub geom: NodeGeometry,
    pub r: SimplePolygon,
    pub decomp: PartialDecomposition,
}

impl Case {
    pub fn in_l(&self, v: usize) -> bool {
        self.decomp.sides.in_l(v)
    }

    pub fn l_vertices(&self) -> Vec<usize> {
        let s = self.decomp.sides;
        (0..=s.l_len).map(|i| (s.l_start + i) % s.m).collect()
    }
}

/// Both sides of the root split; the first case has `L` first.
pub fn root_cases(poly: &SimplePolygon) -> Vec<Case> {
    let ct = CutTree::build(poly);
    let root = ct.root();
    let split = root.split.as_ref().unwrap();
    let m = root.verts.len();
    [true, false]
        .into_iter()
        .map(|l_first| {
            let geom = NodeGeometry::build(
                root.polygon(poly),
                root.local_triangulation(&ct.triangulation),
            );
            let sides = Sides::of_split(m, split.a, split.b, l_first);
            let r = SimplePolygon::from_trusted(
                (0..=sides.r_len())
                    .map(|i| geom.poly.vertex((sides.r_start() + i) % m).clone())
                    .collect(),
            );
            let decomp = PartialDecomposition::build(&geom, sides);
            Case { geom, r, decomp }
        })
        .collect()
}

/// The linear algorithm's answer restricted to the edges of `L`.
pub fn clipped(c: &Case, pq: &Segment) -> VisibleBoundary {
    let s = c.decomp.sides;
    let full = wvp_linear(&c.geom.poly, &c.geom.tri, pq).unwrap().boundary;
    full.restrict(|j| (j + s.m - s.l_start) % s.m < s.l_len)
        .canonical()
}
