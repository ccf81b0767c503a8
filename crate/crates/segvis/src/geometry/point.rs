use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::coord::Coord;

/// Lexicographic order is by `x`, then `y`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: Coord,
    pub y: Coord,
}

impl Point {
    pub fn new(x: Coord, y: Coord) -> Point {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Point {
        Point {
            x: Coord::int(x),
            y: Coord::int(y),
        }
    }

    pub fn midpoint(a: &Point, b: &Point) -> Point {
        Point {
            x: Coord::midpoint(&a.x, &b.x),
            y: Coord::midpoint(&a.y, &b.y),
        }
    }

    /// `a + t (b - a)`.
    pub fn lerp(a: &Point, b: &Point, t: &Coord) -> Point {
        Point {
            x: &a.x + &(t * &(&b.x - &a.x)),
            y: &a.y + &(t * &(&b.y - &a.y)),
        }
    }

    pub fn dist2(&self, o: &Point) -> Coord {
        let dx = &self.x - &o.x;
        let dy = &self.y - &o.y;
        &(&dx * &dx) + &(&dy * &dy)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Ccw,
    Cw,
    Collinear,
}

/// `(b - a) x (c - a)`.
pub fn cross(a: &Point, b: &Point, c: &Point) -> Coord {
    let l = &(&b.x - &a.x) * &(&c.y - &a.y);
    let r = &(&b.y - &a.y) * &(&c.x - &a.x);
    &l - &r
}

/// `b - a` as an unreduced fraction with positive denominator.
fn small_diff(a: &Coord, b: &Coord) -> Option<(i128, i128)> {
    match (a, b) {
        (Coord::Small(an, ad), Coord::Small(bn, bd)) => {
            let (an, ad, bn, bd) = (*an as i128, *ad as i128, *bn as i128, *bd as i128);
            if ad == bd {
                Some((bn - an, ad))
            } else {
                Some((bn * ad - an * bd, ad * bd))
            }
        }
        _ => None,
    }
}

/// Orientation sign without reducing any fraction; `None` on overflow.
fn orient_sign_small(a: &Point, b: &Point, c: &Point) -> Option<i32> {
    let (n1, d1) = small_diff(&a.x, &b.x)?;
    let (n2, d2) = small_diff(&a.y, &c.y)?;
    let (n3, d3) = small_diff(&a.y, &b.y)?;
    let (n4, d4) = small_diff(&a.x, &c.x)?;
    // n1 n2 / (d1 d2) - n3 n4 / (d3 d4), scaled by the positive d1 d2 d3 d4.
    let l = n1.checked_mul(n2)?.checked_mul(d3)?.checked_mul(d4)?;
    let r = n3.checked_mul(n4)?.checked_mul(d1)?.checked_mul(d2)?;
    Some(l.checked_sub(r)?.signum() as i32)
}

fn big_diff(a: &Coord, b: &Coord) -> (BigInt, BigInt) {
    let (an, ad, bn, bd) = (a.numer(), a.denom(), b.numer(), b.denom());
    if ad == bd {
        (bn - an, ad)
    } else {
        (bn * &ad - an * &bd, ad * bd)
    }
}

/// The same determinant as `orient_sign_small` on unreduced big integers.
fn orient_sign_big(a: &Point, b: &Point, c: &Point) -> i32 {
    let (n1, d1) = big_diff(&a.x, &b.x);
    let (n2, d2) = big_diff(&a.y, &c.y);
    let (n3, d3) = big_diff(&a.y, &b.y);
    let (n4, d4) = big_diff(&a.x, &c.x);
    let l = n1 * n2 * d3 * d4;
    let r = n3 * n4 * d1 * d2;
    match l.cmp(&r) {
        std::cmp::Ordering::Greater => 1,
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
    }
}

/// Sign of the cross product: `1` for a left turn, `-1` right, `0` collinear.
pub fn orient_sign(a: &Point, b: &Point, c: &Point) -> i32 {
    orient_sign_small(a, b, c).unwrap_or_else(|| orient_sign_big(a, b, c))
}

pub fn orient(a: &Point, b: &Point, c: &Point) -> Orientation {
    match orient_sign(a, b, c) {
        1 => Orientation::Ccw,
        -1 => Orientation::Cw,
        _ => Orientation::Collinear,
    }
}

/// Closed segment; `a == b` is permitted and denotes a point source.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl fmt::Debug for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}-{:?}", self.a, self.b)
    }
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Segment {
        Segment { a, b }
    }

    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }

    pub fn midpoint(&self) -> Point {
        Point::midpoint(&self.a, &self.b)
    }

    pub fn contains(&self, p: &Point) -> bool {
        on_segment(&self.a, &self.b, p)
    }

    pub fn reversed(&self) -> Segment {
        Segment {
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }
}

/// `p` lies on the closed segment `ab`.
pub fn on_segment(a: &Point, b: &Point, p: &Point) -> bool {
    if orient_sign(a, b, p) != 0 {
        return false;
    }
    in_box(a, b, p)
}

/// `p` within the axis-aligned box spanned by `a` and `b`.
pub fn in_box(a: &Point, b: &Point, p: &Point) -> bool {
    let (x0, x1) = if a.x <= b.x {
        (&a.x, &b.x)
    } else {
        (&b.x, &a.x)
    };
    let (y0, y1) = if a.y <= b.y {
        (&a.y, &b.y)
    } else {
        (&b.y, &a.y)
    };
    *x0 <= p.x && p.x <= *x1 && *y0 <= p.y && p.y <= *y1
}

/// `p` lies on the open segment `ab`.
pub fn strictly_on_segment(a: &Point, b: &Point, p: &Point) -> bool {
    p != a && p != b && on_segment(a, b, p)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Intersection {
    None,
    Point(Point),
    /// Collinear segments sharing more than one point; carries the shared piece.
    Overlap(Segment),
}

/// Intersection of the lines `ab` and `cd`, if they are not parallel.
pub fn line_intersection(a: &Point, b: &Point, c: &Point, d: &Point) -> Option<Point> {
    let rx = &b.x - &a.x;
    let ry = &b.y - &a.y;
    let sx = &d.x - &c.x;
    let sy = &d.y - &c.y;
    let den = &(&rx * &sy) - &(&ry * &sx);
    if den.is_zero() {
        return None;
    }
    let qx = &c.x - &a.x;
    let qy = &c.y - &a.y;
    let num = &(&qx * &sy) - &(&qy * &sx);
    let t = &num / &den;
    Some(Point::lerp(a, b, &t))
}

fn along_key(a: &Point, b: &Point, p: &Point) -> Coord {
    if a.x != b.x {
        p.x.clone()
    } else {
        p.y.clone()
    }
}

pub fn segment_intersection(s1: &Segment, s2: &Segment) -> Intersection {
    let (a, b, c, d) = (&s1.a, &s1.b, &s2.a, &s2.b);
    if a == b {
        return if on_segment(c, d, a) {
            Intersection::Point(a.clone())
        } else {
            Intersection::None
        };
    }
    if c == d {
        return if on_segment(a, b, c) {
            Intersection::Point(c.clone())
        } else {
            Intersection::None
        };
    }
    let o1 = orient_sign(a, b, c);
    let o2 = orient_sign(a, b, d);
    if o1 == 0 && o2 == 0 {
        let mut pts: Vec<&Point> = Vec::new();
        for p in [a, b] {
            if on_segment(c, d, p) {
                pts.push(p);
            }
        }
        for p in [c, d] {
            if on_segment(a, b, p) {
                pts.push(p);
            }
        }
        if pts.is_empty() {
            return Intersection::None;
        }
        pts.sort_by_key(|p| along_key(a, b, p));
        pts.dedup();
        let lo = pts[0].clone();
        let hi = pts[pts.len() - 1].clone();
        return if lo == hi {
            Intersection::Point(lo)
        } else {
            Intersection::Overlap(Segment::new(lo, hi))
        };
    }
    let o3 = orient_sign(c, d, a);
    let o4 = orient_sign(c, d, b);
    if o1 * o2 > 0 || o3 * o4 > 0 {
        return Intersection::None;
    }
    if o1 == 0 {
        return Intersection::Point(c.clone());
    }
    if o2 == 0 {
        return Intersection::Point(d.clone());
    }
    if o3 == 0 {
        return Intersection::Point(a.clone());
    }
    if o4 == 0 {
        return Intersection::Point(b.clone());
    }
    Intersection::Point(line_intersection(a, b, c, d).expect("non-parallel"))
}

/// Segments cross at a single point interior to both.
pub fn proper_crossing(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = orient_sign(a, b, c);
    let o2 = orient_sign(a, b, d);
    let o3 = orient_sign(c, d, a);
    let o4 = orient_sign(c, d, b);
    o1 * o2 < 0 && o3 * o4 < 0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::int(x, y)
    }

    #[test]
    fn orient_basic() {
        assert_eq!(orient(&p(0, 0), &p(1, 0), &p(0, 1)), Orientation::Ccw);
        assert_eq!(orient(&p(0, 0), &p(1, 0), &p(2, 0)), Orientation::Collinear);
        assert_eq!(orient(&p(0, 0), &p(0, 1), &p(1, 1)), Orientation::Cw);
    }

    #[test]
    fn intersections() {
        let s = |a, b| Segment::new(a, b);
        assert_eq!(
            segment_intersection(&s(p(0, 0), p(2, 2)), &s(p(0, 2), p(2, 0))),
            Intersection::Point(p(1, 1))
        );
        assert_eq!(
            segment_intersection(&s(p(0, 0), p(1, 0)), &s(p(0, 1), p(1, 1))),
            Intersection::None
        );
        assert!(matches!(
            segment_intersection(&s(p(0, 0), p(2, 0)), &s(p(1, 0), p(3, 0))),
            Intersection::Overlap(_)
        ));
        assert_eq!(
            segment_intersection(&s(p(0, 0), p(2, 0)), &s(p(2, 0), p(3, 0))),
            Intersection::Point(p(2, 0))
        );
    }

    #[test]
    fn rational_intersection() {
        let r = line_intersection(&p(0, 0), &p(3, 1), &p(0, 1), &p(1, 0)).unwrap();
        assert_eq!(r, Point::new(Coord::frac(3, 4), Coord::frac(1, 4)));
    }
}
