//! Point visibility by angular cones walked through the triangulation.

use crate::geometry::{cross, on_segment, orient_sign, Coord, Point, SimplePolygon};
use crate::structure::{triangles_containing, OutsidePolygon, Triangulation};

use super::boundary::{Element, VisibleBoundary};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VisibilityPolygon {
    pub viewpoint: Point,
    pub boundary: VisibleBoundary,
}

impl VisibilityPolygon {
    pub fn elements(&self, poly: &SimplePolygon) -> Vec<Element> {
        self.boundary.elements(poly)
    }
}

struct Walker<'a> {
    poly: &'a SimplePolygon,
    tri: &'a Triangulation,
    p: &'a Point,
    incident: Vec<Vec<usize>>,
    out: VisibleBoundary,
    grazed: Vec<bool>,
}

/// Parameter along `a -> b` where the line through `p` and `r` crosses it.
pub(crate) fn hit_param(p: &Point, r: &Point, a: &Point, b: &Point) -> Coord {
    let d = Point::new(&r.x - &p.x, &r.y - &p.y);
    let o = Point::new(Coord::zero(), Coord::zero());
    let pa = Point::new(&p.x - &a.x, &p.y - &a.y);
    let ba = Point::new(&b.x - &a.x, &b.y - &a.y);
    &cross(&o, &d, &pa) / &cross(&o, &d, &ba)
}

impl<'a> Walker<'a> {
    fn boundary_edge(&mut self, a: usize, b: usize, r: &Point, l: &Point) {
        debug_assert_eq!(b, self.poly.next(a));
        let (pa, pb) = (self.poly.vertex(a), self.poly.vertex(b));
        let s = hit_param(self.p, r, pa, pb);
        let t = hit_param(self.p, l, pa, pb);
        let (s, t) = if s <= t { (s, t) } else { (t, s) };
        self.out.add(a, s.max(Coord::zero()), t.min(Coord::one()));
    }

    fn see_vertex(&mut self, v: usize) {
        self.out.add_vertex(v);
    }

    /// Follows the ray from the viewpoint through visible vertex `w` past `w`.
    fn graze(&mut self, w: usize) {
        if self.grazed[w] || self.poly.vertex(w) == self.p {
            return;
        }
        self.grazed[w] = true;
        let poly = self.poly;
        let p = self.p;
        let wp = poly.vertex(w);
        let far = Point::new(&(&wp.x + &wp.x) - &p.x, &(&wp.y + &wp.y) - &p.y);
        let mut cur = w;
        'vertex: loop {
            let cp = poly.vertex(cur);
            let ahead = Point::new(&(&cp.x + &far.x) - &wp.x, &(&cp.y + &far.y) - &wp.y);
            for &t in &self.incident[cur] {
                let tr = self.tri.triangles[t];
                let k = tr.iter().position(|&v| v == cur).unwrap();
                let (a, b) = (tr[(k + 1) % 3], tr[(k + 2) % 3]);
                let (pa, pb) = (poly.vertex(a), poly.vertex(b));
                for (u, pu) in [(a, pa), (b, pb)] {
                    if orient_sign(cp, pu, &ahead) == 0
                        && (&(&pu.x - &cp.x) * &(&ahead.x - &cp.x)
                            + &(&pu.y - &cp.y) * &(&ahead.y - &cp.y))
                            .signum()
                            > 0
                    {
                        // The ray runs along edge cur-u.
                        if poly.next(cur) == u {
                            self.out.add(cur, Coord::zero(), Coord::one());
                        } else if poly.next(u) == cur {
                            self.out.add(u, Coord::zero(), Coord::one());
                        }
                        self.see_vertex(u);
                        self.grazed[u] = true;
                        cur = u;
                        continue 'vertex;
                    }
                }
                if orient_sign(cp, pa, &ahead) > 0 && orient_sign(cp, pb, &ahead) < 0 {
                    // Enter triangle t through its corner at `cur` and walk straight.
                    let (mut x, mut y, mut tt) = (a, b, t);
                    loop {
                        let (px, py) = (poly.vertex(x), poly.vertex(y));
                        let slot = self.tri.edge_slot(tt, x, y).unwrap();
                        match self.tri.neighbors[tt][slot] {
                            None => {
                                let (e, s, f) = if poly.next(x) == y {
                                    (x, px, py)
                                } else {
                                    (y, py, px)
                                };
                                let u = hit_param(p, wp, s, f);
                                self.out.add(e, u.clone(), u);
                                return;
                            }
                            Some(nb) => {
                                let c = self.tri.triangles[nb]
                                    .iter()
                                    .copied()
                                    .find(|&v| v != x && v != y)
                                    .unwrap();
                                let pc = poly.vertex(c);
                                let oc = orient_sign(p, wp, pc);
                                if oc == 0 {
                                    self.see_vertex(c);
                                    self.grazed[c] = true;
                                    cur = c;
                                    continue 'vertex;
                                }
                                tt = nb;
                                if oc == orient_sign(p, wp, px) {
                                    x = c;
                                } else {
                                    y = c;
                                }
                            }
                        }
                    }
                }
            }
            return;
        }
    }

    fn cone(&mut self, t0: usize, x0: usize, y0: usize, r0: Point, l0: Point) {
        let mut stack = vec![(t0, x0, y0, r0, l0)];
        while let Some((t, x, y, r, l)) = stack.pop() {
            let w = self.tri.triangles[t]
                .iter()
                .copied()
                .find(|&v| v != x && v != y)
                .unwrap();
            let wp = self.poly.vertex(w).clone();
            let o_r = orient_sign(self.p, &r, &wp);
            let o_l = orient_sign(self.p, &l, &wp);
            if o_r >= 0 && o_l <= 0 {
                self.see_vertex(w);
                if o_r == 0 || o_l == 0 {
                    self.graze(w);
                }
            }
            if o_r > 0 {
                let l2 = if o_l < 0 { wp.clone() } else { l.clone() };
                self.pass(t, x, w, r.clone(), l2, &mut stack);
            }
            if o_l < 0 {
                let r2 = if o_r > 0 { wp.clone() } else { r.clone() };
                self.pass(t, w, y, r2, l.clone(), &mut stack);
            }
        }
    }

    /// Sends the cone `[r, l]` out of triangle `t` through its edge `a -> b`.
    fn pass(
        &mut self,
        t: usize,
        a: usize,
        b: usize,
        r: Point,
        l: Point,
        stack: &mut Vec<(usize, usize, usize, Point, Point)>,
    ) {
        let k = self.tri.edge_slot(t, a, b).unwrap();
        match self.tri.neighbors[t][k] {
            Some(nb) => stack.push((nb, a, b, r, l)),
            None => self.boundary_edge(a, b, &r, &l),
        }
    }
}

pub fn visibility_polygon(
    poly: &SimplePolygon,
    tri: &Triangulation,
    p: &Point,
) -> Result<VisibilityPolygon, OutsidePolygon> {
    let starts = triangles_containing(poly, tri, p);
    if starts.is_empty() {
        return Err(OutsidePolygon);
    }
    let n = poly.len();
    let mut incident = vec![Vec::new(); n];
    for (t, tr) in tri.triangles.iter().enumerate() {
        for &v in tr {
            incident[v].push(t);
        }
    }
    let mut wk = Walker {
        poly,
        tri,
        p,
        incident,
        out: VisibleBoundary::empty(n),
        grazed: vec![false; n],
    };
    for &t in &starts {
        let tr = tri.triangles[t];
        for &v in &tr {
            wk.see_vertex(v);
        }
    }
    for &t in &starts {
        let tr = tri.triangles[t];
        for k in 0..3 {
            let (x, y) = (tr[k], tr[(k + 1) % 3]);
            let nb = tri.neighbors[t][k];
            if on_segment(poly.vertex(x), poly.vertex(y), p) {
                if nb.is_none() {
                    wk.out.add(x, Coord::zero(), Coord::one());
                }
                continue;
            }
            match nb {
                None => wk.out.add(x, Coord::zero(), Coord::one()),
                Some(nb) => wk.cone(nb, x, y, poly.vertex(x).clone(), poly.vertex(y).clone()),
            }
        }
        for &v in &tr {
            wk.graze(v);
        }
    }
    Ok(VisibilityPolygon {
        viewpoint: p.clone(),
        boundary: wk.out.canonical(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::validate_polygon;
    use crate::structure::triangulate;

    fn poly(v: &[(i64, i64)]) -> SimplePolygon {
        validate_polygon(&v.iter().map(|&(x, y)| Point::int(x, y)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn convex_sees_everything() {
        let p = poly(&[(0, 0), (4, 0), (5, 3), (2, 5), (-1, 3)]);
        let t = triangulate(&p);
        let vp = visibility_polygon(&p, &t, &Point::new(Coord::frac(3, 2), Coord::int(2))).unwrap();
        assert_eq!(vp.boundary, VisibleBoundary::full(5).canonical());
    }

    #[test]
    fn lshape_grazing_reaches_far_corner() {
        let p = poly(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]);
        let t = triangulate(&p);
        let vp =
            visibility_polygon(&p, &t, &Point::new(Coord::frac(3, 2), Coord::frac(1, 2))).unwrap();
        assert_eq!(
            vp.boundary.vertex_set(),
            [0, 1, 2, 3, 5].into_iter().collect()
        );
        assert_eq!(
            vp.elements(&p),
            vec![
                Element::Vertex(0),
                Element::Vertex(1),
                Element::Vertex(2),
                Element::Vertex(3),
                Element::Vertex(5)
            ]
        );
        // Off the grazing line the window lands inside edge (0,2)-(0,0).
        let vp =
            visibility_polygon(&p, &t, &Point::new(Coord::frac(7, 4), Coord::frac(1, 2))).unwrap();
        assert_eq!(vp.boundary.vertex_set(), [0, 1, 2, 3].into_iter().collect());
        let w = Element::Window {
            point: Point::new(Coord::zero(), Coord::frac(5, 3)),
            edge: 5,
        };
        assert!(vp.elements(&p).contains(&w), "{:?}", vp.elements(&p));
    }

    #[test]
    fn viewpoint_at_vertex() {
        let p = poly(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]);
        let t = triangulate(&p);
        let vp = visibility_polygon(&p, &t, &Point::int(2, 1)).unwrap();
        assert_eq!(vp.boundary.vertex_set(), [0, 1, 2, 3].into_iter().collect());
    }
}
