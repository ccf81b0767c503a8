//! Seeded random simple polygons on a small integer grid.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::geometry::{
    point_in_polygon, segment_in_polygon, validate_polygon, Containment, Coord, Point, Segment,
    SimplePolygon,
};

pub const GRID: i64 = 10_000;
const MAX_ATTEMPTS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    SpacePartition,
    TwoOptRepair,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenerationFailure {
    #[error("no valid polygon after {0} attempts")]
    Polygon(usize),
    #[error("no interior segment after {0} attempts")]
    Segment(usize),
    #[error("need at least 3 vertices, got {0}")]
    TooSmall(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolygonGenerator {
    pub seed: u64,
    pub n: usize,
    pub method: Method,
}

type P = (i64, i64);

fn orient(a: P, b: P, c: P) -> i128 {
    let v = (b.0 - a.0) as i128 * (c.1 - a.1) as i128 - (b.1 - a.1) as i128 * (c.0 - a.0) as i128;
    v.signum()
}

fn on_box(a: P, b: P, c: P) -> bool {
    a.0.min(b.0) <= c.0 && c.0 <= a.0.max(b.0) && a.1.min(b.1) <= c.1 && c.1 <= a.1.max(b.1)
}

fn segments_meet(a: P, b: P, c: P, d: P) -> bool {
    let (o1, o2, o3, o4) = (
        orient(a, b, c),
        orient(a, b, d),
        orient(c, d, a),
        orient(c, d, b),
    );
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    (o1 == 0 && on_box(a, b, c))
        || (o2 == 0 && on_box(a, b, d))
        || (o3 == 0 && on_box(c, d, a))
        || (o4 == 0 && on_box(c, d, b))
}

/// `n` distinct grid points with no three collinear.
fn general_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<P> {
    let mut pts: Vec<P> = Vec::with_capacity(n);
    let mut seen = HashSet::new();
    while pts.len() < n {
        let c = (rng.gen_range(0..=GRID), rng.gen_range(0..=GRID));
        if seen.contains(&c) {
            continue;
        }
        let ok = (0..pts.len()).all(|i| (i + 1..pts.len()).all(|j| orient(pts[i], pts[j], c) != 0));
        if ok {
            seen.insert(c);
            pts.push(c);
        }
    }
    pts
}

fn partition_chain(rng: &mut ChaCha8Rng, a: P, b: P, pts: Vec<P>, out: &mut Vec<P>) {
    if pts.is_empty() {
        return;
    }
    let c = pts[rng.gen_range(0..pts.len())];
    // A random point on ab, kept rational by scaling everything by `den`.
    let den: i64 = 64;
    let t = rng.gen_range(1..den);
    let s = (a.0 * (den - t) + b.0 * t, a.1 * (den - t) + b.1 * t);
    let cs = (c.0 * den, c.1 * den);
    let side_a = orient(cs, s, (a.0 * den, a.1 * den));
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for &p in &pts {
        if p == c {
            continue;
        }
        let o = orient(cs, s, (p.0 * den, p.1 * den));
        if o == side_a || (o == 0 && rng.gen_bool(0.5)) {
            left.push(p);
        } else {
            right.push(p);
        }
    }
    partition_chain(rng, a, c, left, out);
    out.push(c);
    partition_chain(rng, c, b, right, out);
}

fn space_partition(rng: &mut ChaCha8Rng, pts: &[P]) -> Vec<P> {
    let (a, b) = (pts[0], pts[1]);
    let (mut up, mut down) = (Vec::new(), Vec::new());
    for &p in &pts[2..] {
        if orient(a, b, p) > 0 {
            up.push(p);
        } else {
            down.push(p);
        }
    }
    let mut out = vec![a];
    partition_chain(rng, a, b, down, &mut out);
    out.push(b);
    partition_chain(rng, b, a, up, &mut out);
    out
}

fn two_opt(rng: &mut ChaCha8Rng, pts: &[P]) -> Vec<P> {
    let mut v = pts.to_vec();
    v.shuffle(rng);
    let n = v.len();
    loop {
        let mut fixed = false;
        'scan: for i in 0..n {
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                if segments_meet(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]) {
                    v[i + 1..=j].reverse();
                    fixed = true;
                    break 'scan;
                }
            }
        }
        if !fixed {
            return v;
        }
    }
}

fn to_points(v: &[P]) -> Vec<Point> {
    v.iter().map(|&(x, y)| Point::int(x, y)).collect()
}

impl PolygonGenerator {
    pub fn new(seed: u64, n: usize, method: Method) -> Self {
        PolygonGenerator { seed, n, method }
    }

    fn rng(&self) -> ChaCha8Rng {
        let tag = match self.method {
            Method::SpacePartition => 0x5350,
            Method::TwoOptRepair => 0x324f,
        };
        ChaCha8Rng::seed_from_u64(self.seed ^ ((self.n as u64) << 32) ^ (tag << 48))
    }

    pub fn generate(&self) -> Result<SimplePolygon, GenerationFailure> {
        if self.n < 3 {
            return Err(GenerationFailure::TooSmall(self.n));
        }
        let mut rng = self.rng();
        for _ in 0..MAX_ATTEMPTS {
            let pts = general_points(&mut rng, self.n);
            let cycle = match self.method {
                Method::SpacePartition => space_partition(&mut rng, &pts),
                Method::TwoOptRepair => two_opt(&mut rng, &pts),
            };
            if let Ok(poly) = validate_polygon(&to_points(&cycle)) {
                if self.n < 4 || poly.reflex_count() > 0 {
                    return Ok(poly);
                }
            }
        }
        Err(GenerationFailure::Polygon(MAX_ATTEMPTS))
    }
}

pub fn generate(seed: u64, n: usize, method: Method) -> Result<SimplePolygon, GenerationFailure> {
    PolygonGenerator::new(seed, n, method).generate()
}

const SEG_DEN: i64 = 1009;
const SEG_ATTEMPTS: usize = 20_000;

fn random_point(rng: &mut ChaCha8Rng, lo: &Point, hi: &Point) -> Point {
    let pick = |rng: &mut ChaCha8Rng, a: &Coord, b: &Coord| {
        let t = Coord::frac(rng.gen_range(0..=SEG_DEN), SEG_DEN);
        a + &(&t * &(b - a))
    };
    let x = pick(rng, &lo.x, &hi.x);
    let y = pick(rng, &lo.y, &hi.y);
    Point::new(x, y)
}

/// A random point strictly inside the polygon.
pub fn random_interior_point(poly: &SimplePolygon, rng: &mut ChaCha8Rng) -> Option<Point> {
    let (lo, hi) = poly.bbox();
    (0..SEG_ATTEMPTS)
        .map(|_| random_point(rng, &lo, &hi))
        .find(|p| point_in_polygon(poly, p) == Containment::Inside)
}

/// A random non-degenerate segment inside the polygon with both endpoints in its interior.
pub fn random_interior_segment(
    poly: &SimplePolygon,
    seed: u64,
) -> Result<Segment, GenerationFailure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SEG_ATTEMPTS {
        let Some(a) = random_interior_point(poly, &mut rng) else {
            break;
        };
        let Some(b) = random_interior_point(poly, &mut rng) else {
            break;
        };
        if a == b {
            continue;
        }
        let s = Segment::new(a, b);
        if segment_in_polygon(poly, &s) {
            return Ok(s);
        }
    }
    Err(GenerationFailure::Segment(SEG_ATTEMPTS))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::find_collinear_triple;

    #[test]
    fn deterministic_and_valid() {
        for method in [Method::SpacePartition, Method::TwoOptRepair] {
            let a = generate(42, 50, method).unwrap();
            let b = generate(42, 50, method).unwrap();
            assert_eq!(a, b);
            assert!(a.reflex_count() >= 1);
            assert!(find_collinear_triple(a.vertices()).is_none());
            assert_eq!(generate(1, 3, method).unwrap().len(), 3);
        }
    }

    #[test]
    fn segments_are_inside() {
        let p = generate(7, 30, Method::SpacePartition).unwrap();
        let s = random_interior_segment(&p, 3).unwrap();
        assert!(segment_in_polygon(&p, &s));
        assert_eq!(s, random_interior_segment(&p, 3).unwrap());
    }
}
