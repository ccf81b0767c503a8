use std::collections::BTreeSet;

use rand::SeedableRng;
use segvis::corpus::{generate, random_interior_point, Method};
use segvis::geometry::{segment_intersection, Coord, Intersection, Point, Segment, SimplePolygon};
use segvis::partial::{position_on_edge, SecondaryEdgeTable, Views, Wedge};
use segvis::structure::{shortest_path_tree, triangulate, Parent};

fn members(views: &Views, v: usize, w: Option<Wedge>) -> BTreeSet<usize> {
    match w {
        None => BTreeSet::new(),
        Some(w) => views.candidates(v)[w.start as usize..w.end as usize]
            .iter()
            .map(|&c| c as usize)
            .collect(),
    }
}

#[test]
fn wedges_match_funnel_children() {
    for seed in 0..30u64 {
        let p = generate(seed, 12 + seed as usize, Method::TwoOptRepair).unwrap();
        let t = triangulate(&p);
        let views = Views::build(&p, &t);
        let table = SecondaryEdgeTable::build(&views);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..4 {
            let x = random_interior_point(&p, &mut rng).unwrap();
            let spt = shortest_path_tree(&p, &t, &x).unwrap();
            for v in 0..p.len() {
                let want: BTreeSet<usize> = spt.children(v).iter().copied().collect();
                let got = match spt.parent(v).unwrap() {
                    Parent::Root => members(&views, v, views.wedge(v, &x)),
                    Parent::Vertex(u) => {
                        members(&views, v, table.wedge(v, views.index_of(v, u).unwrap()))
                    }
                };
                assert_eq!(got, want, "seed {seed} vertex {v}");
            }
        }
    }
}

fn brute_hit(p: &SimplePolygon, v: usize, d: &Point) -> Coord {
    let o = p.vertex(v);
    let scale = Coord::int(1 << 20);
    let far = Point::new(
        &o.x + &(&(&d.x - &o.x) * &scale),
        &o.y + &(&(&d.y - &o.y) * &scale),
    );
    let ray = Segment::new(o.clone(), far);
    let mut best: Option<(Coord, Point, usize)> = None;
    for j in 0..p.len() {
        let e = p.edge(j);
        let z = match segment_intersection(&ray, &e) {
            Intersection::None => continue,
            Intersection::Point(z) => z,
            Intersection::Overlap(s) => {
                if o.dist2(&s.a) <= o.dist2(&s.b) {
                    s.a
                } else {
                    s.b
                }
            }
        };
        if &z == o {
            continue;
        }
        let dz = o.dist2(&z);
        if best.as_ref().is_none_or(|b| dz < b.0) {
            best = Some((dz, z, j));
        }
    }
    let (_, z, j) = best.unwrap();
    position_on_edge(p.vertices(), j, &z)
}

#[test]
fn ray_hits_match_brute_force() {
    for seed in 0..20u64 {
        let p = generate(seed, 25, Method::SpacePartition).unwrap();
        let t = triangulate(&p);
        let views = Views::build(&p, &t);
        for v in 0..p.len() {
            for &u in views.candidates(v) {
                let d = views.ahead(v, p.vertex(u as usize));
                if let Some(h) = views.hit(v, &d) {
                    assert_eq!(h, brute_hit(&p, v, &d), "seed {seed} v {v} u {u}");
                }
            }
        }
    }
}
