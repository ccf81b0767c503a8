//! Exact angular comparisons of directions around a center point.

use std::cmp::Ordering;

use super::coord::Coord;
use super::point::Point;

fn half(rx: &Coord, ry: &Coord, vx: &Coord, vy: &Coord) -> u8 {
    let c = &(rx * vy) - &(ry * vx);
    match c.signum() {
        1 => 0,
        -1 => 1,
        _ => {
            let d = &(rx * vx) + &(ry * vy);
            if d.signum() > 0 {
                0
            } else {
                1
            }
        }
    }
}

/// Orders `a` and `b` by counter-clockwise angle around `o`, measured from the
/// direction of `r`. The reference direction itself has angle zero.
pub fn cmp_around(o: &Point, r: &Point, a: &Point, b: &Point) -> Ordering {
    let (rx, ry) = (&r.x - &o.x, &r.y - &o.y);
    let (ax, ay) = (&a.x - &o.x, &a.y - &o.y);
    let (bx, by) = (&b.x - &o.x, &b.y - &o.y);
    cmp_dirs(&rx, &ry, &ax, &ay, &bx, &by)
}

/// Same as [`cmp_around`] on raw direction vectors.
pub fn cmp_dirs(
    rx: &Coord,
    ry: &Coord,
    ax: &Coord,
    ay: &Coord,
    bx: &Coord,
    by: &Coord,
) -> Ordering {
    let ha = half(rx, ry, ax, ay);
    let hb = half(rx, ry, bx, by);
    if ha != hb {
        return ha.cmp(&hb);
    }
    let c = &(ax * by) - &(ay * bx);
    match c.signum() {
        1 => Ordering::Less,
        -1 => Ordering::Greater,
        _ => Ordering::Equal,
    }
}
