//! Balanced recursive cutting of a triangulated polygon along diagonals.
//!
//! Every node is a sub-polygon whose triangles are a connected subtree of the
//! global dual tree, so sub-polygons inherit their triangulation from the
//! parent instead of being re-triangulated.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::geometry::{on_segment, Point, SimplePolygon};

use super::locator::{FaceEdge, SlabLocator};
use super::spt::OutsidePolygon;
use super::triangulation::{build_adjacency, triangulate, Triangulation};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Split {
    /// Local indices of the diagonal endpoints, `a < b`.
    pub a: usize,
    pub b: usize,
    /// Child 0 holds local vertices `a..=b`, child 1 holds `b..n` and `0..=a`.
    pub children: [usize; 2],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CutNode {
    /// Global vertex indices in counter-clockwise order.
    pub verts: Vec<usize>,
    /// Global triangle ids covered by this node, ascending.
    pub triangles: Vec<usize>,
    pub split: Option<Split>,
    pub parent: Option<usize>,
    pub depth: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CutTree {
    pub triangulation: Triangulation,
    pub nodes: Vec<CutNode>,
    /// Node id of the leaf holding each global triangle.
    pub leaf_of: Vec<usize>,
    locator: SlabLocator,
    vertex_index: Vec<(Point, usize)>,
    incident: Vec<Vec<u32>>,
    points: Vec<Point>,
    /// Preorder interval of each node; leaves of a subtree fall inside it.
    enter: Vec<u32>,
    exit: Vec<u32>,
}

/// Splits a set of triangles along the dual edge that best balances the
/// triangle counts. Returns the diagonal as global vertex indices and the
/// triangles on one side.
pub fn balanced_split(tri: &Triangulation, tris: &[usize]) -> ((usize, usize), Vec<usize>) {
    let m = tris.len();
    assert!(m >= 2, "cannot split a single triangle");
    let local: HashMap<usize, usize> = tris.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let mut parent = vec![usize::MAX; m];
    let mut order = Vec::with_capacity(m);
    let mut stack = vec![0usize];
    parent[0] = 0;
    while let Some(i) = stack.pop() {
        order.push(i);
        for nb in tri.neighbors[tris[i]].iter().flatten() {
            if let Some(&j) = local.get(nb) {
                if parent[j] == usize::MAX {
                    parent[j] = i;
                    stack.push(j);
                }
            }
        }
    }
    assert_eq!(order.len(), m, "triangle set is not connected");
    let mut size = vec![1usize; m];
    for &i in order.iter().rev().filter(|&&i| i != 0) {
        size[parent[i]] += size[i];
    }
    let best = (1..m)
        .min_by_key(|&i| (size[i].max(m - size[i]), tris[i]))
        .expect("at least one dual edge");
    let mut side = Vec::new();
    let mut stack = vec![best];
    while let Some(i) = stack.pop() {
        side.push(tris[i]);
        for nb in tri.neighbors[tris[i]].iter().flatten() {
            if let Some(&j) = local.get(nb) {
                if j != parent[i] && parent[j] == i {
                    stack.push(j);
                }
            }
        }
    }
    side.sort_unstable();
    let (t, u) = (tris[best], tris[parent[best]]);
    let shared: Vec<usize> = tri.triangles[t]
        .iter()
        .copied()
        .filter(|v| tri.triangles[u].contains(v))
        .collect();
    ((shared[0].min(shared[1]), shared[0].max(shared[1])), side)
}

/// The balanced diagonal of a whole polygon, as a pair of vertex indices.
pub fn balanced_diagonal(poly: &SimplePolygon, tri: &Triangulation) -> (usize, usize) {
    assert!(poly.len() >= 4, "a triangle has no diagonal");
    let all: Vec<usize> = (0..tri.triangles.len()).collect();
    balanced_split(tri, &all).0
}

impl CutNode {
    pub fn is_leaf(&self) -> bool {
        self.split.is_none()
    }

    pub fn polygon(&self, poly: &SimplePolygon) -> SimplePolygon {
        SimplePolygon::from_trusted(self.verts.iter().map(|&v| poly.vertex(v).clone()).collect())
    }

    /// The inherited triangulation in local vertex indices.
    pub fn local_triangulation(&self, tri: &Triangulation) -> Triangulation {
        let pos: HashMap<usize, usize> = self
            .verts
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let tris = self
            .triangles
            .iter()
            .map(|&t| tri.triangles[t].map(|v| pos[&v]))
            .collect();
        build_adjacency(self.verts.len(), tris)
    }

    /// Local index of a global vertex.
    pub fn local(&self, global: usize) -> Option<usize> {
        self.verts.iter().position(|&v| v == global)
    }
}

impl CutTree {
    pub fn build(poly: &SimplePolygon) -> CutTree {
        let triangulation = triangulate(poly);
        let tri = &triangulation;
        let mut nodes = vec![CutNode {
            verts: (0..poly.len()).collect(),
            triangles: (0..tri.triangles.len()).collect(),
            split: None,
            parent: None,
            depth: 0,
        }];
        let mut leaf_of = vec![0; tri.triangles.len()];
        let mut work = vec![0];
        while let Some(id) = work.pop() {
            if nodes[id].triangles.len() == 1 {
                leaf_of[nodes[id].triangles[0]] = id;
                continue;
            }
            let ((ga, gb), side) = balanced_split(tri, &nodes[id].triangles);
            let node = &nodes[id];
            let la = node.local(ga).expect("diagonal endpoint in node");
            let lb = node.local(gb).expect("diagonal endpoint in node");
            let (a, b) = (la.min(lb), la.max(lb));
            let k = node.verts.len();
            let first: Vec<usize> = node.verts[a..=b].to_vec();
            let second: Vec<usize> = (b..k).chain(0..=a).map(|i| node.verts[i]).collect();
            // `side` is one of the two halves; match it by a vertex not on the diagonal.
            let in_side = |verts: &[usize]| {
                let probe = verts
                    .iter()
                    .copied()
                    .find(|&v| v != ga && v != gb)
                    .expect("half has a third vertex");
                side.iter().any(|&t| tri.triangles[t].contains(&probe))
            };
            let rest: Vec<usize> = node
                .triangles
                .iter()
                .copied()
                .filter(|t| side.binary_search(t).is_err())
                .collect();
            let (t_first, t_second) = if in_side(&first) {
                (side, rest)
            } else {
                (rest, side)
            };
            let depth = node.depth + 1;
            let c0 = nodes.len();
            nodes.push(CutNode {
                verts: first,
                triangles: t_first,
                split: None,
                parent: Some(id),
                depth,
            });
            nodes.push(CutNode {
                verts: second,
                triangles: t_second,
                split: None,
                parent: Some(id),
                depth,
            });
            nodes[id].split = Some(Split {
                a,
                b,
                children: [c0, c0 + 1],
            });
            work.push(c0 + 1);
            work.push(c0);
        }
        let mut edges = Vec::new();
        for (t, tr) in tri.triangles.iter().enumerate() {
            for k in 0..3 {
                let other = tri.neighbors[t][k];
                if other.map_or(true, |o| o > t) {
                    edges.push(FaceEdge {
                        a: poly.vertex(tr[k]).clone(),
                        b: poly.vertex(tr[(k + 1) % 3]).clone(),
                        left: Some(t as u32),
                        right: other.map(|o| o as u32),
                    });
                }
            }
        }
        let locator = SlabLocator::build(&edges);
        let mut vertex_index: Vec<(Point, usize)> =
            poly.vertices().iter().cloned().zip(0..).collect();
        vertex_index.sort();
        let mut incident = vec![Vec::new(); poly.len()];
        for (t, tr) in tri.triangles.iter().enumerate() {
            for &v in tr {
                incident[v].push(t as u32);
            }
        }
        let (mut enter, mut exit) = (vec![0; nodes.len()], vec![0; nodes.len()]);
        let mut clock = 0;
        let mut stack = vec![(0usize, false)];
        while let Some((id, done)) = stack.pop() {
            if done {
                exit[id] = clock;
                continue;
            }
            enter[id] = clock;
            clock += 1;
            stack.push((id, true));
            if let Some(sp) = &nodes[id].split {
                stack.push((sp.children[1], false));
                stack.push((sp.children[0], false));
            }
        }
        CutTree {
            triangulation,
            nodes,
            leaf_of,
            locator,
            vertex_index,
            incident,
            points: poly.vertices().to_vec(),
            enter,
            exit,
        }
    }

    pub fn root(&self) -> &CutNode {
        &self.nodes[0]
    }

    pub fn depth(&self) -> usize {
        self.nodes.iter().map(|n| n.depth).max().unwrap_or(0)
    }

    /// Triangle id of the leaf containing `p`; the smallest id on ties.
    pub fn locate_leaf(&self, p: &Point) -> Result<usize, OutsidePolygon> {
        if let Ok(i) = self.vertex_index.binary_search_by(|(q, _)| q.cmp(p)) {
            let v = self.vertex_index[i].1;
            return Ok(self.incident[v][0] as usize);
        }
        self.locator
            .locate(p)
            .first()
            .map(|&t| t as usize)
            .ok_or(OutsidePolygon)
    }

    /// Every triangle whose closed region contains `p`, ascending.
    pub fn triangles_at(&self, p: &Point) -> Vec<usize> {
        if let Ok(i) = self.vertex_index.binary_search_by(|(q, _)| q.cmp(p)) {
            return self.incident[self.vertex_index[i].1]
                .iter()
                .map(|&t| t as usize)
                .collect();
        }
        let tri = &self.triangulation;
        let mut out: Vec<usize> = self
            .locator
            .locate(p)
            .into_iter()
            .map(|t| t as usize)
            .collect();
        for t in out.clone() {
            let tr = tri.triangles[t];
            for k in 0..3 {
                let (a, b) = (&self.points[tr[k]], &self.points[tr[(k + 1) % 3]]);
                if on_segment(a, b, p) {
                    out.extend(tri.neighbors[t][k]);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Whether the leaf of triangle `t` lies in the subtree of `node`.
    pub fn in_subtree(&self, t: usize, node: usize) -> bool {
        let e = self.enter[self.leaf_of[t]];
        self.enter[node] <= e && e < self.exit[node]
    }

    /// Node ids from the root down to the leaf of triangle `t`.
    pub fn leaf_path(&self, t: usize) -> Vec<usize> {
        let mut path = vec![self.leaf_of[t]];
        while let Some(p) = self.nodes[*path.last().unwrap()].parent {
            path.push(p);
        }
        path.reverse();
        path
    }

    pub fn locator_size(&self) -> usize {
        self.locator.size()
    }
}

/// Largest vertex count either side of a node's split may have.
pub fn balance_bound(n: usize) -> usize {
    (2 * n).div_ceil(3) + 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{validate_polygon, Coord};

    fn poly(v: &[(i64, i64)]) -> SimplePolygon {
        validate_polygon(&v.iter().map(|&(x, y)| Point::int(x, y)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn triangle_and_square() {
        let t = CutTree::build(&poly(&[(0, 0), (1, 0), (0, 1)]));
        assert_eq!(t.nodes.len(), 1);
        assert!(t.root().is_leaf());
        let sq = poly(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
        let t = CutTree::build(&sq);
        assert_eq!(t.nodes.len(), 3);
        let s = t.root().split.as_ref().unwrap();
        assert_eq!(t.nodes[s.children[0]].verts.len(), 3);
        assert_eq!(t.nodes[s.children[1]].verts.len(), 3);
        let half = Coord::frac(1, 2);
        let quarter = Coord::frac(1, 4);
        let leaf = t
            .locate_leaf(&Point::new(half.clone(), half.clone()))
            .unwrap();
        assert_eq!(leaf, 0);
        let leaf = t
            .locate_leaf(&Point::new(quarter.clone(), quarter))
            .unwrap();
        assert!(t.triangulation.contains_point(
            &sq,
            leaf,
            &Point::new(Coord::frac(1, 4), Coord::frac(1, 4))
        ));
    }

    #[test]
    fn lshape_balance() {
        let p = poly(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]);
        let t = CutTree::build(&p);
        assert_eq!(t.nodes.len(), 2 * 4 - 1);
        for node in &t.nodes {
            if let Some(s) = &node.split {
                for c in s.children {
                    assert!(t.nodes[c].verts.len() <= balance_bound(node.verts.len()));
                }
            }
        }
        let (a, b) = balanced_diagonal(&p, &t.triangulation);
        assert!(a < b);
    }
}
