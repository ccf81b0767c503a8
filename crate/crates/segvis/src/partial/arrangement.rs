//! The subdivision of `R` cut by critical constraints.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::geometry::{
    cmp_around, cross, on_segment, segment_intersection, Coord, Intersection, Point, Segment,
};
use crate::structure::{FaceEdge, SlabLocator};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrEdge {
    pub a: u32,
    pub b: u32,
    /// Faces left and right of `a -> b`; `None` is outside `R`.
    pub left: Option<u32>,
    pub right: Option<u32>,
    /// Constraints running along this edge.
    pub chords: Vec<u32>,
}

/// One step of a depth-first walk over faces; `from` is the previous face
/// and the edge crossed to get here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TourStep {
    pub face: u32,
    pub from: Option<(u32, u32)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Arrangement {
    pub vertices: Vec<Point>,
    pub edges: Vec<ArrEdge>,
    pub face_count: usize,
    /// A point strictly inside each face.
    pub samples: Vec<Point>,
    pub tour: Vec<TourStep>,
    locator: SlabLocator,
    pinned: Vec<Point>,
}

fn bbox_f64(s: &Segment) -> [f64; 4] {
    let (ax, ay) = s.a.to_f64();
    let (bx, by) = s.b.to_f64();
    let e = 1e-9 * (1.0 + ax.abs().max(ay.abs()).max(bx.abs()).max(by.abs()));
    [
        ax.min(bx) - e,
        ay.min(by) - e,
        ax.max(bx) + e,
        ay.max(by) + e,
    ]
}

fn boxes_meet(a: &[f64; 4], b: &[f64; 4]) -> bool {
    a[0] <= b[2] && b[0] <= a[2] && a[1] <= b[3] && b[1] <= a[3]
}

impl Arrangement {
    /// `boundary` is the counter-clockwise outline of `R`; every chord has
    /// both endpoints on it and its interior inside `R`.
    pub fn build(boundary: &[Point], chords: &[Segment]) -> Arrangement {
        let k = boundary.len();
        let mut segs: Vec<Segment> = (0..k)
            .map(|i| Segment::new(boundary[i].clone(), boundary[(i + 1) % k].clone()))
            .collect();
        segs.extend(chords.iter().cloned());
        let boxes: Vec<[f64; 4]> = segs.iter().map(bbox_f64).collect();
        let mut cuts: Vec<Vec<Point>> = segs
            .iter()
            .map(|s| vec![s.a.clone(), s.b.clone()])
            .collect();
        for c in k..segs.len() {
            for i in 0..c {
                if !boxes_meet(&boxes[i], &boxes[c]) {
                    continue;
                }
                if i < k {
                    for end in [&segs[c].a, &segs[c].b] {
                        if on_segment(&segs[i].a, &segs[i].b, end) {
                            cuts[i].push(end.clone());
                        }
                    }
                    continue;
                }
                match segment_intersection(&segs[i], &segs[c]) {
                    Intersection::None => {}
                    Intersection::Point(x) => {
                        cuts[i].push(x.clone());
                        cuts[c].push(x);
                    }
                    Intersection::Overlap(o) => {
                        for x in [o.a, o.b] {
                            cuts[i].push(x.clone());
                            cuts[c].push(x);
                        }
                    }
                }
            }
        }

        let mut ids: BTreeMap<Point, u32> = BTreeMap::new();
        let mut vertices: Vec<Point> = Vec::new();
        let mut id_of = |p: &Point, vertices: &mut Vec<Point>| -> u32 {
            *ids.entry(p.clone()).or_insert_with(|| {
                vertices.push(p.clone());
                (vertices.len() - 1) as u32
            })
        };
        let mut edge_ix: BTreeMap<(u32, u32), usize> = BTreeMap::new();
        let mut edges: Vec<ArrEdge> = Vec::new();
        for (idx, (s, mut pts)) in segs.iter().zip(cuts).enumerate() {
            let key = |p: &Point| {
                if s.a.x != s.b.x {
                    p.x.clone()
                } else {
                    p.y.clone()
                }
            };
            pts.sort_by_key(key);
            pts.dedup();
            for w in pts.windows(2) {
                let (u, v) = (id_of(&w[0], &mut vertices), id_of(&w[1], &mut vertices));
                let (lo, hi) = (u.min(v), u.max(v));
                let e = *edge_ix.entry((lo, hi)).or_insert_with(|| {
                    edges.push(ArrEdge {
                        a: lo,
                        b: hi,
                        left: None,
                        right: None,
                        chords: Vec::new(),
                    });
                    edges.len() - 1
                });
                if idx >= k {
                    edges[e].chords.push((idx - k) as u32);
                }
            }
        }

        // Half-edge 2e runs a -> b, 2e + 1 runs b -> a.
        let nv = vertices.len();
        let head = |h: usize| if h % 2 == 0 { edges[h / 2].b } else { edges[h / 2].a } as usize;
        let tail = |h: usize| if h % 2 == 0 { edges[h / 2].a } else { edges[h / 2].b } as usize;
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for h in 0..2 * edges.len() {
            out[tail(h)].push(h);
        }
        let mut slot = vec![0usize; 2 * edges.len()];
        for (v, list) in out.iter_mut().enumerate() {
            let o = &vertices[v];
            let r = Point::new(&o.x + &Coord::one(), o.y.clone());
            list.sort_by(|&g, &h| cmp_around(o, &r, &vertices[head(g)], &vertices[head(h)]));
            for (i, &h) in list.iter().enumerate() {
                slot[h] = i;
            }
        }
        let next = |h: usize| {
            let t = h ^ 1;
            let v = tail(t);
            let d = out[v].len();
            out[v][(slot[t] + d - 1) % d]
        };
        let mut face_of: Vec<Option<u32>> = vec![None; 2 * edges.len()];
        let mut seen = vec![false; 2 * edges.len()];
        let mut face_count = 0u32;
        for h0 in 0..2 * edges.len() {
            if seen[h0] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut h = h0;
            while !seen[h] {
                seen[h] = true;
                cyc.push(h);
                h = next(h);
            }
            let o = &vertices[tail(h0)];
            let mut area = Coord::zero();
            for &h in &cyc {
                area = &area + &cross(o, &vertices[tail(h)], &vertices[head(h)]);
            }
            if area.signum() > 0 {
                for &h in &cyc {
                    face_of[h] = Some(face_count);
                }
                face_count += 1;
            }
        }
        for (e, ed) in edges.iter_mut().enumerate() {
            ed.left = face_of[2 * e];
            ed.right = face_of[2 * e + 1];
        }

        let locator = SlabLocator::build(
            &edges
                .iter()
                .map(|e| FaceEdge {
                    a: vertices[e.a as usize].clone(),
                    b: vertices[e.b as usize].clone(),
                    left: e.left,
                    right: e.right,
                })
                .collect::<Vec<_>>(),
        );
        let mut samples: Vec<Option<Point>> = vec![None; face_count as usize];
        for e in &edges {
            let (pa, pb) = (&vertices[e.a as usize], &vertices[e.b as usize]);
            if pa.x == pb.x {
                continue;
            }
            // With a left of b the left face lies above.
            let up = pa.x < pb.x;
            for (f, above) in [(e.left, up), (e.right, !up)] {
                if let Some(f) = f {
                    if samples[f as usize].is_none() {
                        samples[f as usize] = locator.sample_beside(pa, pb, above);
                    }
                }
            }
        }
        let samples: Vec<Point> = samples
            .into_iter()
            .map(|s| s.expect("every face has a non-vertical edge"))
            .collect();

        let mut adj: Vec<Vec<(u32, u32)>> = vec![Vec::new(); face_count as usize];
        for (i, e) in edges.iter().enumerate() {
            if let (Some(l), Some(r)) = (e.left, e.right) {
                adj[l as usize].push((r, i as u32));
                adj[r as usize].push((l, i as u32));
            }
        }
        let mut tour = Vec::with_capacity(face_count as usize);
        if face_count > 0 {
            let mut done = vec![false; face_count as usize];
            let mut stack = vec![TourStep {
                face: 0,
                from: None,
            }];
            while let Some(s) = stack.pop() {
                if done[s.face as usize] {
                    continue;
                }
                done[s.face as usize] = true;
                tour.push(s);
                for &(g, e) in adj[s.face as usize].iter().rev() {
                    if !done[g as usize] {
                        stack.push(TourStep {
                            face: g,
                            from: Some((s.face, e)),
                        });
                    }
                }
            }
        }

        let mut pinned: Vec<Point> = edges
            .iter()
            .filter(|e| !e.chords.is_empty())
            .flat_map(|e| {
                [
                    vertices[e.a as usize].clone(),
                    vertices[e.b as usize].clone(),
                ]
            })
            .collect();
        pinned.extend(boundary.iter().cloned());
        pinned.sort();
        pinned.dedup();

        Arrangement {
            vertices,
            edges,
            face_count: face_count as usize,
            samples,
            tour,
            locator,
            pinned,
        }
    }

    /// Faces whose closure contains `p`.
    pub fn locate(&self, p: &Point) -> Vec<u32> {
        self.locator.locate(p)
    }

    /// `p` is a corner of `R`, or an endpoint or crossing of some constraint.
    pub fn is_pinned(&self, p: &Point) -> bool {
        self.pinned.binary_search(p).is_ok()
    }

    pub fn size(&self) -> usize {
        self.vertices.len() + self.edges.len() + self.locator.size() + self.tour.len()
    }
}
