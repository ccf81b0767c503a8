use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::geometry::{in_box, orient_sign, Point, SimplePolygon};

/// Triangles are counter-clockwise vertex triples. `neighbors[t][k]` is the
/// triangle across edge `(t[k], t[k+1])`, or `None` on the polygon boundary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triangulation {
    pub triangles: Vec<[usize; 3]>,
    pub diagonals: Vec<(usize, usize)>,
    pub neighbors: Vec<[Option<usize>; 3]>,
}

fn in_closed_triangle(a: &Point, b: &Point, c: &Point, p: &Point) -> bool {
    let s1 = orient_sign(a, b, p);
    let s2 = orient_sign(b, c, p);
    let s3 = orient_sign(c, a, p);
    let inside = s1 >= 0 && s2 >= 0 && s3 >= 0;
    inside
        && (s1 != 0 || in_box(a, b, p))
        && (s2 != 0 || in_box(b, c, p))
        && (s3 != 0 || in_box(c, a, p))
}

/// Ear clipping with cached ear flags; `O(n^2)` predicate calls.
pub fn triangulate(poly: &SimplePolygon) -> Triangulation {
    let pts = poly.vertices();
    let n = pts.len();
    let mut next: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let mut prev: Vec<usize> = (0..n).map(|i| (i + n - 1) % n).collect();
    let mut alive = vec![true; n];
    let mut remaining = n;

    let is_ear = |i: usize, next: &[usize], prev: &[usize], alive: &[bool]| -> bool {
        let (u, w) = (prev[i], next[i]);
        if orient_sign(&pts[u], &pts[i], &pts[w]) <= 0 {
            return false;
        }
        (0..n).all(|x| {
            !alive[x]
                || x == u
                || x == i
                || x == w
                || !in_closed_triangle(&pts[u], &pts[i], &pts[w], &pts[x])
        })
    };

    let mut ear: Vec<bool> = (0..n).map(|i| is_ear(i, &next, &prev, &alive)).collect();
    let mut triangles = Vec::with_capacity(n.saturating_sub(2));
    let mut cursor = 0;
    while remaining > 3 {
        let mut steps = 0;
        while !(alive[cursor] && ear[cursor]) {
            cursor = (cursor + 1) % n;
            steps += 1;
            assert!(steps <= n, "no ear found; polygon is not simple");
        }
        let i = cursor;
        let (u, w) = (prev[i], next[i]);
        triangles.push([u, i, w]);
        alive[i] = false;
        next[u] = w;
        prev[w] = u;
        remaining -= 1;
        ear[u] = is_ear(u, &next, &prev, &alive);
        ear[w] = is_ear(w, &next, &prev, &alive);
        cursor = w;
    }
    let a = (0..n).find(|&i| alive[i]).unwrap();
    triangles.push([a, next[a], next[next[a]]]);
    build_adjacency(n, triangles)
}

/// Fills diagonals and neighbor links for a set of counter-clockwise triangles.
pub fn build_adjacency(n: usize, triangles: Vec<[usize; 3]>) -> Triangulation {
    let mut by_edge: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for (t, tri) in triangles.iter().enumerate() {
        for k in 0..3 {
            let (a, b) = (tri[k], tri[(k + 1) % 3]);
            by_edge
                .entry((a.min(b), a.max(b)))
                .or_default()
                .push((t, k));
        }
    }
    let mut neighbors = vec![[None; 3]; triangles.len()];
    let mut diagonals = Vec::new();
    for (&(a, b), users) in &by_edge {
        if users.len() == 2 {
            let ((t0, k0), (t1, k1)) = (users[0], users[1]);
            neighbors[t0][k0] = Some(t1);
            neighbors[t1][k1] = Some(t0);
            diagonals.push((a, b));
        } else {
            debug_assert!(users.len() == 1);
            debug_assert!(
                b == a + 1 || (a == 0 && b == n - 1),
                "non-boundary edge used once"
            );
        }
    }
    Triangulation {
        triangles,
        diagonals,
        neighbors,
    }
}

impl Triangulation {
    /// Index `k` such that triangle `t` has edge `(a, b)` in either direction.
    pub fn edge_slot(&self, t: usize, a: usize, b: usize) -> Option<usize> {
        let tri = &self.triangles[t];
        (0..3).find(|&k| {
            let (x, y) = (tri[k], tri[(k + 1) % 3]);
            (x == a && y == b) || (x == b && y == a)
        })
    }

    /// The dual graph is a tree: connected with one fewer edge than nodes.
    pub fn dual_is_tree(&self) -> bool {
        let m = self.triangles.len();
        if m == 0 {
            return false;
        }
        let edges: usize = self
            .neighbors
            .iter()
            .map(|nb| nb.iter().flatten().count())
            .sum::<usize>()
            / 2;
        if edges + 1 != m {
            return false;
        }
        let mut seen = vec![false; m];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(t) = stack.pop() {
            for nb in self.neighbors[t].iter().flatten() {
                if !seen[*nb] {
                    seen[*nb] = true;
                    stack.push(*nb);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn contains_point(&self, poly: &SimplePolygon, t: usize, p: &Point) -> bool {
        let [a, b, c] = self.triangles[t];
        in_closed_triangle(poly.vertex(a), poly.vertex(b), poly.vertex(c), p)
    }
}

pub fn point_in_triangle(a: &Point, b: &Point, c: &Point, p: &Point) -> bool {
    in_closed_triangle(a, b, c, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{validate_polygon, Coord};

    fn poly(v: &[(i64, i64)]) -> SimplePolygon {
        validate_polygon(&v.iter().map(|&(x, y)| Point::int(x, y)).collect::<Vec<_>>()).unwrap()
    }

    fn check(p: &SimplePolygon) {
        let t = triangulate(p);
        let n = p.len();
        assert_eq!(t.triangles.len(), n - 2);
        assert_eq!(t.diagonals.len(), n - 3);
        if n > 3 {
            assert!(t.dual_is_tree());
        }
        let mut area = Coord::zero();
        for tri in &t.triangles {
            let s = SimplePolygon::from_trusted(tri.iter().map(|&i| p.vertex(i).clone()).collect());
            assert!(s.double_area().signum() > 0);
            area = &area + &s.area();
        }
        assert_eq!(area, p.area());
    }

    #[test]
    fn small_cases() {
        check(&poly(&[(0, 0), (1, 0), (0, 1)]));
        check(&poly(&[(0, 0), (1, 0), (1, 1), (0, 1)]));
        check(&poly(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]));
        check(&poly(&[
            (0, 0),
            (10, 0),
            (10, 10),
            (6, 10),
            (5, 2),
            (4, 10),
            (0, 10),
        ]));
    }

    #[test]
    fn lshape_avoids_grazing_diagonal() {
        let p = poly(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]);
        let t = triangulate(&p);
        assert!(!t.diagonals.contains(&(1, 5)));
    }
}
