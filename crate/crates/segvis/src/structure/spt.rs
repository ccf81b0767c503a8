//! Shortest path trees by funnel splitting over a triangulation.

use serde::{Deserialize, Serialize};

use crate::geometry::{cmp_around, on_segment, orient_sign, Coord, Point, SimplePolygon};

use super::Triangulation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parent {
    Root,
    Vertex(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeClass {
    Primary,
    Secondary1,
    Secondary2,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("point lies outside the polygon")]
pub struct OutsidePolygon;

#[derive(Debug, Clone)]
pub struct ShortestPathTree {
    pub root: Point,
    /// Set when the root coincides with a polygon vertex; that vertex has no parent.
    pub root_vertex: Option<usize>,
    parent: Vec<Option<Parent>>,
    children: Vec<Vec<usize>>,
    root_children: Vec<usize>,
}

/// Triangles whose closed region contains `p`.
pub fn triangles_containing(poly: &SimplePolygon, tri: &Triangulation, p: &Point) -> Vec<usize> {
    (0..tri.triangles.len())
        .filter(|&t| tri.contains_point(poly, t, p))
        .collect()
}

struct Frame {
    tri: usize,
    x: usize,
    y: usize,
    funnel: Vec<Parent>,
    apex: usize,
}

pub fn shortest_path_tree(
    poly: &SimplePolygon,
    tri: &Triangulation,
    root: &Point,
) -> Result<ShortestPathTree, OutsidePolygon> {
    let starts = triangles_containing(poly, tri, root);
    if starts.is_empty() {
        return Err(OutsidePolygon);
    }
    let n = poly.len();
    let root_vertex = (0..n).find(|&i| poly.vertex(i) == root);
    let mut parent: Vec<Option<Parent>> = vec![None; n];
    let pt = |node: Parent| -> &Point {
        match node {
            Parent::Root => root,
            Parent::Vertex(i) => poly.vertex(i),
        }
    };
    let mut stack = Vec::new();
    for &t in &starts {
        let tr = tri.triangles[t];
        for k in 0..3 {
            if Some(tr[k]) != root_vertex && parent[tr[k]].is_none() {
                parent[tr[k]] = Some(Parent::Root);
            }
            let (x, y) = (tr[k], tr[(k + 1) % 3]);
            if on_segment(poly.vertex(x), poly.vertex(y), root) {
                continue;
            }
            if let Some(nb) = tri.neighbors[t][k] {
                stack.push(Frame {
                    tri: nb,
                    x,
                    y,
                    funnel: vec![Parent::Vertex(y), Parent::Root, Parent::Vertex(x)],
                    apex: 1,
                });
            }
        }
    }
    while let Some(Frame {
        tri: t,
        x,
        y,
        funnel: f,
        apex,
    }) = stack.pop()
    {
        let tr = tri.triangles[t];
        let w = tr
            .iter()
            .copied()
            .find(|&v| v != x && v != y)
            .expect("triangle has a third vertex");
        let wp = poly.vertex(w);
        let mut i = apex;
        if apex > 0 && orient_sign(pt(f[apex]), pt(f[apex - 1]), wp) > 0 {
            i = apex - 1;
            while i > 0 && orient_sign(pt(f[i]), pt(f[i - 1]), wp) > 0 {
                i -= 1;
            }
        } else if apex + 1 < f.len() && orient_sign(pt(f[apex]), pt(f[apex + 1]), wp) < 0 {
            i = apex + 1;
            while i + 1 < f.len() && orient_sign(pt(f[i]), pt(f[i + 1]), wp) < 0 {
                i += 1;
            }
        }
        if parent[w].is_none() && Some(w) != root_vertex {
            parent[w] = Some(f[i]);
        }
        if let Some(k) = tri.edge_slot(t, x, w) {
            if let Some(nb) = tri.neighbors[t][k] {
                let mut g = vec![Parent::Vertex(w)];
                g.extend_from_slice(&f[i..]);
                stack.push(Frame {
                    tri: nb,
                    x,
                    y: w,
                    funnel: g,
                    apex: apex.max(i) - i + 1,
                });
            }
        }
        if let Some(k) = tri.edge_slot(t, w, y) {
            if let Some(nb) = tri.neighbors[t][k] {
                let mut g = f[..=i].to_vec();
                g.push(Parent::Vertex(w));
                stack.push(Frame {
                    tri: nb,
                    x: w,
                    y,
                    funnel: g,
                    apex: apex.min(i),
                });
            }
        }
    }
    Ok(ShortestPathTree::from_parents(
        poly,
        root.clone(),
        root_vertex,
        parent,
    ))
}

impl ShortestPathTree {
    /// Assembles a tree from parent links, ordering children by angle.
    pub fn from_parents(
        poly: &SimplePolygon,
        root: Point,
        root_vertex: Option<usize>,
        parent: Vec<Option<Parent>>,
    ) -> ShortestPathTree {
        let n = parent.len();
        let mut children = vec![Vec::new(); n];
        let mut root_children = Vec::new();
        for (v, p) in parent.iter().enumerate() {
            match p {
                Some(Parent::Root) => root_children.push(v),
                Some(Parent::Vertex(u)) => children[*u].push(v),
                None => {}
            }
        }
        let east = Point::new(&root.x + &Coord::one(), root.y.clone());
        root_children.sort_by(|&a, &b| {
            cmp_around(&root, &east, poly.vertex(a), poly.vertex(b)).then(a.cmp(&b))
        });
        for u in 0..n {
            if children[u].len() < 2 {
                continue;
            }
            let up = poly.vertex(u);
            let from = match parent[u] {
                Some(Parent::Vertex(w)) => poly.vertex(w).clone(),
                _ => root.clone(),
            };
            let ext = Point::new(&(&up.x + &up.x) - &from.x, &(&up.y + &up.y) - &from.y);
            children[u].sort_by(|&a, &b| {
                cmp_around(up, &ext, poly.vertex(a), poly.vertex(b)).then(a.cmp(&b))
            });
        }
        ShortestPathTree {
            root,
            root_vertex,
            parent,
            children,
            root_children,
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn parent(&self, v: usize) -> Option<Parent> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<Parent>] {
        &self.parent
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn root_children(&self) -> &[usize] {
        &self.root_children
    }

    pub fn edge_class(&self, v: usize) -> Option<EdgeClass> {
        match self.parent[v]? {
            Parent::Root => Some(EdgeClass::Primary),
            Parent::Vertex(u) => match self.parent[u] {
                Some(Parent::Root) => Some(EdgeClass::Secondary1),
                _ => Some(EdgeClass::Secondary2),
            },
        }
    }

    pub fn point<'a>(&'a self, poly: &'a SimplePolygon, node: Parent) -> &'a Point {
        match node {
            Parent::Root => &self.root,
            Parent::Vertex(i) => poly.vertex(i),
        }
    }

    /// Vertices along the tree path from the root to `v`, root excluded.
    pub fn path(&self, v: usize) -> Vec<usize> {
        let mut out = vec![v];
        let mut cur = v;
        while let Some(Parent::Vertex(u)) = self.parent[cur] {
            out.push(u);
            cur = u;
        }
        out.reverse();
        out
    }

    /// Euclidean length of the tree path, in floating point.
    pub fn path_length(&self, poly: &SimplePolygon, v: usize) -> f64 {
        if Some(v) == self.root_vertex {
            return 0.0;
        }
        let mut prev = self.root.to_f64();
        let mut len = 0.0;
        for u in self.path(v) {
            let q = poly.vertex(u).to_f64();
            len += ((q.0 - prev.0).powi(2) + (q.1 - prev.1).powi(2)).sqrt();
            prev = q;
        }
        len
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{segment_in_polygon, validate_polygon, Segment};
    use crate::structure::triangulate;

    fn poly(v: &[(i64, i64)]) -> SimplePolygon {
        validate_polygon(&v.iter().map(|&(x, y)| Point::int(x, y)).collect::<Vec<_>>()).unwrap()
    }

    fn q(n: i64, d: i64) -> Coord {
        Coord::frac(n, d)
    }

    #[test]
    fn convex_is_a_star() {
        let p = poly(&[(0, 0), (4, 0), (5, 3), (2, 5), (-1, 3)]);
        let t = triangulate(&p);
        let s = shortest_path_tree(&p, &t, &Point::new(q(3, 2), q(2, 1))).unwrap();
        assert!((0..p.len()).all(|v| s.edge_class(v) == Some(EdgeClass::Primary)));
    }

    #[test]
    fn lshape_bends_at_reflex_vertex() {
        let p = poly(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]);
        let t = triangulate(&p);
        let s = shortest_path_tree(&p, &t, &Point::new(q(7, 4), q(1, 2))).unwrap();
        assert_eq!(s.parent(5), Some(Parent::Vertex(3)));
        assert_eq!(s.edge_class(5), Some(EdgeClass::Secondary1));
        assert_eq!(s.parent(4), Some(Parent::Vertex(3)));
        // Collinear with (1,1) and (0,2): the sightline grazes the reflex vertex.
        let s = shortest_path_tree(&p, &t, &Point::new(q(3, 2), q(1, 2))).unwrap();
        assert_eq!(s.edge_class(5), Some(EdgeClass::Primary));
        assert!(segment_in_polygon(
            &p,
            &Segment::new(Point::new(q(3, 2), q(1, 2)), Point::int(0, 2))
        ));
    }

    #[test]
    fn vertex_root() {
        let p = poly(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]);
        let t = triangulate(&p);
        let s = shortest_path_tree(&p, &t, &Point::int(2, 1)).unwrap();
        assert_eq!(s.root_vertex, Some(2));
        assert_eq!(s.parent(2), None);
        assert_eq!(s.parent(4), Some(Parent::Vertex(3)));
        assert_eq!(s.parent(0), Some(Parent::Root));
    }

    #[test]
    fn outside_root_is_rejected() {
        let p = poly(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]);
        let t = triangulate(&p);
        assert!(shortest_path_tree(&p, &t, &Point::new(q(3, 2), q(3, 2))).is_err());
    }
}
