//! Per-vertex views of a polygon.
//!
//! For every vertex: the vertices it sees, sorted counter-clockwise from its
//! outgoing edge, and its visible boundary pieces in the same angular order,
//! which answer "where does a ray leaving this vertex first hit the boundary"
//! by binary search.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::geometry::{cmp_around, line_intersection, orient_sign, Coord, Point, SimplePolygon};
use crate::structure::Triangulation;
use crate::visibility::visibility_polygon;

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Piece {
    a: Point,
    b: Point,
    edge: u32,
}

/// Children of a vertex given its parent: the half-open index range into the
/// vertex's candidate list, and the turn sign (`-1` clockwise, `1` ccw).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Wedge {
    pub start: u32,
    pub end: u32,
    pub turn: i8,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Views {
    pts: Vec<Point>,
    cand: Vec<Vec<u32>>,
    pieces: Vec<Vec<Piece>>,
}

/// Boundary position of point `z` on edge `j` of `poly`, in `[0, n)`.
pub fn position_on_edge(poly_pts: &[Point], j: usize, z: &Point) -> Coord {
    let n = poly_pts.len();
    let (a, b) = (&poly_pts[j], &poly_pts[(j + 1) % n]);
    let t = if a.x != b.x {
        &(&z.x - &a.x) / &(&b.x - &a.x)
    } else {
        &(&z.y - &a.y) / &(&b.y - &a.y)
    };
    let pos = &Coord::int(j as i64) + &t;
    if pos == Coord::int(n as i64) {
        Coord::zero()
    } else {
        pos
    }
}

impl Views {
    pub fn build(poly: &SimplePolygon, tri: &Triangulation) -> Views {
        let m = poly.len();
        let pts = poly.vertices().to_vec();
        let mut cand = Vec::with_capacity(m);
        let mut pieces = Vec::with_capacity(m);
        for v in 0..m {
            let vp = visibility_polygon(poly, tri, &pts[v]).expect("vertex lies in its polygon");
            let o = &pts[v];
            let r = &pts[(v + 1) % m];
            let mut c: Vec<u32> = vp
                .boundary
                .vertex_set()
                .into_iter()
                .filter(|&w| w != v)
                .map(|w| w as u32)
                .collect();
            c.sort_by(|&a, &b| {
                let (pa, pb) = (&pts[a as usize], &pts[b as usize]);
                cmp_around(o, r, pa, pb).then_with(|| o.dist2(pa).cmp(&o.dist2(pb)))
            });
            cand.push(c);
            let mut row = Vec::new();
            for k in 1..m.saturating_sub(1) {
                let j = (v + k) % m;
                if let Some(iv) = vp.boundary.edges.get(&j) {
                    let (a, b) = poly.edge_points(j);
                    for (s, t) in iv {
                        row.push(Piece {
                            a: Point::lerp(a, b, s),
                            b: Point::lerp(a, b, t),
                            edge: j as u32,
                        });
                    }
                }
            }
            pieces.push(row);
        }
        Views { pts, cand, pieces }
    }

    pub fn len(&self) -> usize {
        self.pts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pts.is_empty()
    }

    pub fn point(&self, v: usize) -> &Point {
        &self.pts[v]
    }

    pub fn points(&self) -> &[Point] {
        &self.pts
    }

    /// Vertices seen from `v`, counter-clockwise from edge `v -> v+1`.
    pub fn candidates(&self, v: usize) -> &[u32] {
        &self.cand[v]
    }

    fn angle(&self, v: usize, a: &Point, b: &Point) -> Ordering {
        let m = self.pts.len();
        cmp_around(&self.pts[v], &self.pts[(v + 1) % m], a, b)
    }

    /// Whether the direction from `v` towards `d` points strictly into the
    /// interior angle at `v`.
    pub fn inside_angle(&self, v: usize, d: &Point) -> bool {
        let m = self.pts.len();
        let next = &self.pts[(v + 1) % m];
        let prev = &self.pts[(v + m - 1) % m];
        self.angle(v, next, d) == Ordering::Less && self.angle(v, d, prev) == Ordering::Less
    }

    /// The point `2v - u`, one step past `v` on the ray from `u`.
    pub fn ahead(&self, v: usize, u: &Point) -> Point {
        let o = &self.pts[v];
        Point::new(&(&o.x + &o.x) - &u.x, &(&o.y + &o.y) - &u.y)
    }

    /// Children of `v` in a shortest path tree where `v`'s parent sits at `u`.
    pub fn wedge(&self, v: usize, u: &Point) -> Option<Wedge> {
        let d = self.ahead(v, u);
        if !self.inside_angle(v, &d) {
            return None;
        }
        let c = &self.cand[v];
        if self.angle(v, u, &d) == Ordering::Greater {
            let k =
                c.partition_point(|&w| self.angle(v, &self.pts[w as usize], &d) == Ordering::Less);
            (k > 0).then_some(Wedge {
                start: 0,
                end: k as u32,
                turn: -1,
            })
        } else {
            let k = c.partition_point(|&w| {
                self.angle(v, &self.pts[w as usize], &d) != Ordering::Greater
            });
            (k < c.len()).then_some(Wedge {
                start: k as u32,
                end: c.len() as u32,
                turn: 1,
            })
        }
    }

    /// Index of `u` in the candidate list of `v`.
    pub fn index_of(&self, v: usize, u: usize) -> Option<usize> {
        let c = &self.cand[v];
        let pu = &self.pts[u];
        let k = c.partition_point(|&w| self.angle(v, &self.pts[w as usize], pu) == Ordering::Less);
        c[k..]
            .iter()
            .take_while(|&&w| self.angle(v, &self.pts[w as usize], pu) == Ordering::Equal)
            .position(|&w| w as usize == u)
            .map(|i| k + i)
    }

    /// Boundary position of the first boundary point hit by the ray from `v`
    /// through `d`, when that direction points into the interior at `v`.
    pub fn hit(&self, v: usize, d: &Point) -> Option<Coord> {
        self.hit_point(v, d).map(|h| h.0)
    }

    /// Like [`Views::hit`], also returning the hit point.
    pub fn hit_point(&self, v: usize, d: &Point) -> Option<(Coord, Point)> {
        if !self.inside_angle(v, d) {
            return None;
        }
        let o = &self.pts[v];
        let row = &self.pieces[v];
        let i = row.partition_point(|p| self.angle(v, &p.b, d) == Ordering::Less);
        let mut best: Option<(Coord, Point, u32)> = None;
        for p in row[i..].iter().take(2) {
            if self.angle(v, &p.a, d) == Ordering::Greater {
                break;
            }
            let z = if p.a == p.b {
                p.a.clone()
            } else {
                match line_intersection(o, d, &p.a, &p.b) {
                    Some(z) => z,
                    None => {
                        if o.dist2(&p.a) <= o.dist2(&p.b) {
                            p.a.clone()
                        } else {
                            p.b.clone()
                        }
                    }
                }
            };
            let dz = o.dist2(&z);
            if best.as_ref().is_none_or(|b| dz < b.0) {
                best = Some((dz, z, p.edge));
            }
            if self.angle(v, &p.b, d) != Ordering::Equal {
                break;
            }
        }
        let (_, z, j) = best.expect("an interior ray meets the boundary");
        debug_assert_eq!(orient_sign(o, d, &z), 0);
        Some((position_on_edge(&self.pts, j as usize, &z), z))
    }
}

/// Children ranges of every vertex for every possible parent vertex.
/// `ranges[v][i]` is the wedge of `v` when its parent is `candidates(v)[i]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SecondaryEdgeTable {
    ranges: Vec<Vec<Option<Wedge>>>,
    /// `back[u][i]` is the index of `u` in the candidate list of `candidates(u)[i]`.
    back: Vec<Vec<u32>>,
}

impl SecondaryEdgeTable {
    pub fn build(views: &Views) -> SecondaryEdgeTable {
        let m = views.len();
        let ranges = (0..m)
            .map(|v| {
                views
                    .candidates(v)
                    .iter()
                    .map(|&u| views.wedge(v, views.point(u as usize)))
                    .collect()
            })
            .collect();
        let back = (0..m)
            .map(|u| {
                views
                    .candidates(u)
                    .iter()
                    .map(|&v| {
                        views
                            .index_of(v as usize, u)
                            .expect("visibility is symmetric") as u32
                    })
                    .collect()
            })
            .collect();
        SecondaryEdgeTable { ranges, back }
    }

    /// Wedge of `v` when its parent is the `i`-th candidate of `v`.
    pub fn wedge(&self, v: usize, i: usize) -> Option<Wedge> {
        self.ranges[v][i]
    }

    /// Index of `u` in the candidate list of its `i`-th candidate.
    pub fn back(&self, u: usize, i: usize) -> usize {
        self.back[u][i] as usize
    }

    /// Number of stored (vertex, parent) entries.
    pub fn size(&self) -> usize {
        self.ranges.iter().map(Vec::len).sum()
    }
}
