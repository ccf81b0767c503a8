//! Slab point location over a planar subdivision.
//!
//! Sweeping left to right, the edges crossing each vertical slab are kept in a
//! persistent tree ordered bottom to top, one version per slab. A query binary
//! searches the slab and then descends that version: `O(log n)` per query,
//! `O(n log n)` space for `n` edges.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::geometry::{orient_sign, Coord, Point};
use crate::persistent::{PersistentMap, Version};

#[derive(Debug, Clone, Serialize, Deserialize)]
struct LocEdge {
    left: Point,
    right: Point,
    above: Option<u32>,
    below: Option<u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SlabLocator {
    xs: Vec<Coord>,
    slabs: Vec<Version>,
    edges: Vec<LocEdge>,
    tree: PersistentMap<u32, ()>,
}

/// A subdivision edge from `a` to `b` with the faces on its left and right.
#[derive(Debug, Clone)]
pub struct FaceEdge {
    pub a: Point,
    pub b: Point,
    pub left: Option<u32>,
    pub right: Option<u32>,
}

fn y_at(e: &LocEdge, x: &Coord) -> Coord {
    let dx = &e.right.x - &e.left.x;
    let t = &(x - &e.left.x) / &dx;
    &e.left.y + &(&t * &(&e.right.y - &e.left.y))
}

impl SlabLocator {
    pub fn build(input: &[FaceEdge]) -> SlabLocator {
        let mut edges = Vec::new();
        let mut xs: Vec<Coord> = Vec::new();
        for e in input {
            xs.push(e.a.x.clone());
            xs.push(e.b.x.clone());
            match e.a.x.cmp(&e.b.x) {
                Ordering::Less => edges.push(LocEdge {
                    left: e.a.clone(),
                    right: e.b.clone(),
                    above: e.left,
                    below: e.right,
                }),
                Ordering::Greater => edges.push(LocEdge {
                    left: e.b.clone(),
                    right: e.a.clone(),
                    above: e.right,
                    below: e.left,
                }),
                Ordering::Equal => {}
            }
        }
        xs.sort();
        xs.dedup();
        let slot = |x: &Coord| xs.binary_search(x).expect("endpoint x present");
        let mut starts: Vec<Vec<u32>> = vec![Vec::new(); xs.len()];
        let mut ends: Vec<Vec<u32>> = vec![Vec::new(); xs.len()];
        for (i, e) in edges.iter().enumerate() {
            starts[slot(&e.left.x)].push(i as u32);
            ends[slot(&e.right.x)].push(i as u32);
        }
        let mut tree = PersistentMap::new();
        let mut v = Version::EMPTY;
        let mut slabs = Vec::with_capacity(xs.len());
        let mut ys: Vec<Option<Coord>> = vec![None; edges.len()];
        for j in 0..xs.len() {
            if j > 0 {
                for &id in &ends[j] {
                    v = tree.remove_by(v, &id, |a: &u32, b: &u32| {
                        let (ya, yb) = (
                            ys[*a as usize].as_ref().unwrap(),
                            ys[*b as usize].as_ref().unwrap(),
                        );
                        ya.cmp(yb).then(a.cmp(b))
                    });
                }
            }
            if j + 1 < xs.len() {
                let mid = Coord::midpoint(&xs[j], &xs[j + 1]);
                // Re-key every active edge at the new slab's midpoint; their
                // relative order is unchanged because edges only meet at endpoints.
                let active: Vec<u32> = tree.iter(v).map(|(k, _)| *k).collect();
                for &id in active.iter().chain(starts[j].iter()) {
                    ys[id as usize] = Some(y_at(&edges[id as usize], &mid));
                }
                for &id in &starts[j] {
                    v = tree.insert_by(v, id, (), |a: &u32, b: &u32| {
                        let (ya, yb) = (
                            ys[*a as usize].as_ref().unwrap(),
                            ys[*b as usize].as_ref().unwrap(),
                        );
                        ya.cmp(yb).then(a.cmp(b))
                    });
                }
            }
            slabs.push(v);
        }
        SlabLocator {
            xs,
            slabs,
            edges,
            tree,
        }
    }

    fn locate_in_slab(&self, k: usize, p: &Point, out: &mut Vec<u32>) {
        let below = self.tree.last_where(self.slabs[k], |id| {
            let e = &self.edges[*id as usize];
            orient_sign(&e.left, &e.right, p) >= 0
        });
        if let Some((id, _)) = below {
            let e = &self.edges[*id as usize];
            out.extend(e.above);
            if orient_sign(&e.left, &e.right, p) == 0 {
                out.extend(e.below);
            }
        }
    }

    /// Faces whose closure contains `p`, sorted and deduplicated. Empty when
    /// `p` is outside every face. On shared edges at least the two incident
    /// faces are reported; at vertices at least one.
    pub fn locate(&self, p: &Point) -> Vec<u32> {
        let mut out = Vec::new();
        if self.xs.len() < 2 {
            return out;
        }
        match self.xs.binary_search(&p.x) {
            Ok(j) => {
                if j > 0 {
                    self.locate_in_slab(j - 1, p, &mut out);
                }
                if j + 1 < self.xs.len() {
                    self.locate_in_slab(j, p, &mut out);
                }
            }
            Err(j) => {
                if j > 0 && j < self.xs.len() {
                    self.locate_in_slab(j - 1, p, &mut out);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// A point strictly inside the face directly above (or below) the
    /// non-vertical edge `a-b`, taken in the first slab the edge spans.
    pub fn sample_beside(&self, a: &Point, b: &Point, above: bool) -> Option<Point> {
        let (l, r) = if a.x < b.x { (a, b) } else { (b, a) };
        if l.x == r.x {
            return None;
        }
        let k = self.xs.binary_search(&l.x).ok()?;
        let xm = Coord::midpoint(&self.xs[k], &self.xs[k + 1]);
        let on = LocEdge {
            left: l.clone(),
            right: r.clone(),
            above: None,
            below: None,
        };
        let m = Point::new(xm.clone(), y_at(&on, &xm));
        let other = if above {
            self.tree.first_where(self.slabs[k], |id| {
                let e = &self.edges[*id as usize];
                orient_sign(&e.left, &e.right, &m) < 0
            })
        } else {
            self.tree.last_where(self.slabs[k], |id| {
                let e = &self.edges[*id as usize];
                orient_sign(&e.left, &e.right, &m) > 0
            })
        }?;
        let y = y_at(&self.edges[*other.0 as usize], &xm);
        Some(Point::new(xm, Coord::midpoint(&m.y, &y)))
    }

    /// Persistent tree nodes across all slab versions.
    pub fn size(&self) -> usize {
        self.tree.node_count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{validate_polygon, Coord};
    use crate::structure::triangulate;

    #[test]
    fn locates_triangles_of_lshape() {
        let pts: Vec<Point> = [(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]
            .iter()
            .map(|&(x, y)| Point::int(x, y))
            .collect();
        let poly = validate_polygon(&pts).unwrap();
        let tri = triangulate(&poly);
        let mut edges = Vec::new();
        for (t, tr) in tri.triangles.iter().enumerate() {
            for k in 0..3 {
                let (a, b) = (tr[k], tr[(k + 1) % 3]);
                let other = tri.neighbors[t][k];
                if other.map_or(true, |o| o > t) {
                    edges.push(FaceEdge {
                        a: poly.vertex(a).clone(),
                        b: poly.vertex(b).clone(),
                        left: Some(t as u32),
                        right: other.map(|o| o as u32),
                    });
                }
            }
        }
        let loc = SlabLocator::build(&edges);
        let grid: Vec<Coord> = (0..=8).map(|i| Coord::frac(i, 4)).collect();
        for x in &grid {
            for y in &grid {
                let p = Point::new(x.clone(), y.clone());
                let want: Vec<u32> = (0..tri.triangles.len())
                    .filter(|&t| tri.contains_point(&poly, t, &p))
                    .map(|t| t as u32)
                    .collect();
                let got = loc.locate(&p);
                if want.len() <= 1 || got.len() < 2 {
                    assert!(
                        got.iter().all(|g| want.contains(g)),
                        "{p:?} {got:?} {want:?}"
                    );
                    assert_eq!(want.is_empty(), got.is_empty(), "{p:?}");
                } else {
                    assert!(got.iter().all(|g| want.contains(g)));
                }
            }
        }
    }
}
