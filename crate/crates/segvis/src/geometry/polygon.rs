use serde::{Deserialize, Serialize};

use super::coord::Coord;
use super::point::{on_segment, orient_sign, segment_intersection, Intersection, Point, Segment};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolygonError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("edges {0} and {1} intersect")]
    NotSimple(usize, usize),
    #[error("vertices {0}, {1}, {2} are collinear")]
    CollinearTriple(usize, usize, usize),
}

/// Counter-clockwise simple polygon. Edge `i` runs from vertex `i` to `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplePolygon {
    vertices: Vec<Point>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Containment {
    Inside,
    OnBoundary,
    Outside,
}

impl SimplePolygon {
    /// Wraps vertices already known to be valid and counter-clockwise.
    pub fn from_trusted(vertices: Vec<Point>) -> SimplePolygon {
        SimplePolygon { vertices }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> &Point {
        &self.vertices[i]
    }

    pub fn next(&self, i: usize) -> usize {
        if i + 1 == self.vertices.len() {
            0
        } else {
            i + 1
        }
    }

    pub fn prev(&self, i: usize) -> usize {
        if i == 0 {
            self.vertices.len() - 1
        } else {
            i - 1
        }
    }

    pub fn edge(&self, i: usize) -> Segment {
        Segment::new(
            self.vertices[i].clone(),
            self.vertices[self.next(i)].clone(),
        )
    }

    pub fn edge_points(&self, i: usize) -> (&Point, &Point) {
        (&self.vertices[i], &self.vertices[self.next(i)])
    }

    /// Twice the signed area.
    pub fn double_area(&self) -> Coord {
        let mut s = Coord::zero();
        for i in 0..self.len() {
            let (a, b) = self.edge_points(i);
            s = &s + &(&(&a.x * &b.y) - &(&a.y * &b.x));
        }
        s
    }

    pub fn area(&self) -> Coord {
        &self.double_area() / &Coord::int(2)
    }

    /// Interior angle at `i` exceeds pi.
    pub fn is_reflex(&self, i: usize) -> bool {
        orient_sign(
            &self.vertices[self.prev(i)],
            &self.vertices[i],
            &self.vertices[self.next(i)],
        ) < 0
    }

    pub fn reflex_count(&self) -> usize {
        (0..self.len()).filter(|&i| self.is_reflex(i)).count()
    }

    pub fn bbox(&self) -> (Point, Point) {
        let mut lo = self.vertices[0].clone();
        let mut hi = self.vertices[0].clone();
        for v in &self.vertices {
            if v.x < lo.x {
                lo.x = v.x.clone();
            }
            if v.y < lo.y {
                lo.y = v.y.clone();
            }
            if v.x > hi.x {
                hi.x = v.x.clone();
            }
            if v.y > hi.y {
                hi.y = v.y.clone();
            }
        }
        (lo, hi)
    }
}

/// Checks simplicity, orients counter-clockwise and rejects degenerate vertices.
///
/// Three consecutive collinear vertices are rejected. Collinear triples of
/// non-adjacent vertices are accepted; every algorithm in the crate uses closed
/// visibility and handles the grazing contact they cause.
pub fn validate_polygon(raw: &[Point]) -> Result<SimplePolygon, PolygonError> {
    let n = raw.len();
    if n < 3 {
        return Err(PolygonError::TooFewVertices(n));
    }
    for i in 0..n {
        for j in i + 1..n {
            if raw[i] == raw[j] {
                return Err(PolygonError::NotSimple((i + n - 1) % n, j));
            }
        }
    }
    for i in 0..n {
        let (a, b, c) = (&raw[(i + n - 1) % n], &raw[i], &raw[(i + 1) % n]);
        if orient_sign(a, b, c) == 0 {
            return Err(PolygonError::CollinearTriple(
                (i + n - 1) % n,
                i,
                (i + 1) % n,
            ));
        }
    }
    for i in 0..n {
        let si = Segment::new(raw[i].clone(), raw[(i + 1) % n].clone());
        for j in i + 1..n {
            let sj = Segment::new(raw[j].clone(), raw[(j + 1) % n].clone());
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            match segment_intersection(&si, &sj) {
                Intersection::None => {}
                Intersection::Overlap(_) => return Err(PolygonError::NotSimple(i, j)),
                Intersection::Point(p) => {
                    if !adjacent {
                        return Err(PolygonError::NotSimple(i, j));
                    }
                    let shared = if j == i + 1 { &raw[j] } else { &raw[0] };
                    if p != *shared {
                        return Err(PolygonError::NotSimple(i, j));
                    }
                }
            }
        }
    }
    let mut verts = raw.to_vec();
    let poly = SimplePolygon {
        vertices: verts.clone(),
    };
    if poly.double_area().signum() < 0 {
        verts[1..].reverse();
        return Ok(SimplePolygon { vertices: verts });
    }
    Ok(poly)
}

/// Finds any three collinear vertices, adjacent or not.
pub fn find_collinear_triple(v: &[Point]) -> Option<(usize, usize, usize)> {
    let n = v.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if orient_sign(&v[i], &v[j], &v[k]) == 0 {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

pub fn point_in_polygon(poly: &SimplePolygon, p: &Point) -> Containment {
    let n = poly.len();
    let mut inside = false;
    for i in 0..n {
        let (a, b) = poly.edge_points(i);
        if on_segment(a, b, p) {
            return Containment::OnBoundary;
        }
        // Half-open rule on y avoids double counting at vertices.
        if (a.y > p.y) != (b.y > p.y) {
            let s = orient_sign(a, b, p);
            if (b.y > a.y && s > 0) || (b.y < a.y && s < 0) {
                inside = !inside;
            }
        }
    }
    if inside {
        Containment::Inside
    } else {
        Containment::Outside
    }
}

/// Every point of `s` lies in the closed region bounded by `poly`.
pub fn segment_in_polygon(poly: &SimplePolygon, s: &Segment) -> bool {
    if point_in_polygon(poly, &s.a) == Containment::Outside
        || point_in_polygon(poly, &s.b) == Containment::Outside
    {
        return false;
    }
    if s.is_degenerate() {
        return true;
    }
    let n = poly.len();
    // Split the segment at every boundary contact; each open piece lies
    // entirely inside or entirely outside, so testing one interior point per
    // piece is exact.
    let mut cuts: Vec<Point> = vec![s.a.clone(), s.b.clone()];
    for i in 0..n {
        let (a, b) = poly.edge_points(i);
        if super::point::proper_crossing(&s.a, &s.b, a, b) {
            return false;
        }
        for v in [a, b] {
            if on_segment(&s.a, &s.b, v) {
                cuts.push(v.clone());
            }
        }
        if let Intersection::Point(x) = segment_intersection(s, &Segment::new(a.clone(), b.clone()))
        {
            cuts.push(x);
        }
    }
    let key = |p: &Point| {
        if s.a.x != s.b.x {
            p.x.clone()
        } else {
            p.y.clone()
        }
    };
    let rev = key(&s.a) > key(&s.b);
    cuts.sort_by_key(key);
    if rev {
        cuts.reverse();
    }
    cuts.dedup();
    cuts.windows(2)
        .all(|w| point_in_polygon(poly, &Point::midpoint(&w[0], &w[1])) != Containment::Outside)
}

/// Winding number of the boundary around `p`; only meaningful off the boundary.
pub fn winding_number(poly: &SimplePolygon, p: &Point) -> i32 {
    let mut w = 0;
    for i in 0..poly.len() {
        let (a, b) = poly.edge_points(i);
        if a.y <= p.y {
            if b.y > p.y && orient_sign(a, b, p) > 0 {
                w += 1;
            }
        } else if b.y <= p.y && orient_sign(a, b, p) < 0 {
            w -= 1;
        }
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64)]) -> Vec<Point> {
        v.iter().map(|&(x, y)| Point::int(x, y)).collect()
    }

    fn lshape() -> SimplePolygon {
        validate_polygon(&pts(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)])).unwrap()
    }

    fn q(n: i64, d: i64) -> Coord {
        Coord::frac(n, d)
    }

    #[test]
    fn validation() {
        let sq = validate_polygon(&pts(&[(0, 0), (0, 1), (1, 1), (1, 0)])).unwrap();
        assert_eq!(sq.vertices()[1], Point::int(1, 0));
        assert!(sq.double_area().signum() > 0);
        assert!(matches!(
            validate_polygon(&pts(&[(0, 0), (1, 1), (1, 0), (0, 1)])),
            Err(PolygonError::NotSimple(_, _))
        ));
        assert!(matches!(
            validate_polygon(&pts(&[(0, 0), (1, 0), (2, 0), (1, 1)])),
            Err(PolygonError::CollinearTriple(0, 1, 2))
        ));
        assert_eq!(
            validate_polygon(&pts(&[(0, 0), (1, 0)])),
            Err(PolygonError::TooFewVertices(2))
        );
    }

    #[test]
    fn containment() {
        let sq = validate_polygon(&pts(&[(0, 0), (1, 0), (1, 1), (0, 1)])).unwrap();
        assert_eq!(
            point_in_polygon(&sq, &Point::new(q(1, 2), q(1, 2))),
            Containment::Inside
        );
        assert_eq!(
            point_in_polygon(&sq, &Point::new(q(0, 1), q(1, 2))),
            Containment::OnBoundary
        );
        assert_eq!(
            point_in_polygon(&sq, &Point::int(2, 0)),
            Containment::Outside
        );
    }

    #[test]
    fn segments() {
        let sq = validate_polygon(&pts(&[(0, 0), (1, 0), (1, 1), (0, 1)])).unwrap();
        let s = Segment::new(Point::new(q(1, 4), q(1, 4)), Point::new(q(3, 4), q(3, 4)));
        assert!(segment_in_polygon(&sq, &s));
        assert!(segment_in_polygon(
            &sq,
            &Segment::new(Point::int(0, 0), Point::int(1, 1))
        ));
        let l = lshape();
        // This chord lies on x + y = 2 and only grazes the reflex vertex (1,1).
        let s = Segment::new(Point::new(q(3, 2), q(1, 2)), Point::new(q(1, 2), q(3, 2)));
        assert!(segment_in_polygon(&l, &s));
        let s = Segment::new(Point::new(q(7, 4), q(1, 2)), Point::new(q(1, 2), q(3, 2)));
        assert!(!segment_in_polygon(&l, &s));
        // Grazing the reflex vertex is allowed under closed containment.
        assert!(segment_in_polygon(
            &l,
            &Segment::new(Point::int(2, 0), Point::int(0, 2))
        ));
        // Running along an edge and on into the interior stays inside.
        assert!(segment_in_polygon(
            &l,
            &Segment::new(Point::int(2, 1), Point::int(0, 1))
        ));
        assert!(!segment_in_polygon(
            &l,
            &Segment::new(Point::int(1, 2), Point::int(2, 1))
        ));
    }
}
