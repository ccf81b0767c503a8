use segvis::corpus::{all_fixtures as fixtures, generate, random_interior_segment, Method};
use segvis::geometry::{segment_in_polygon, Point, Segment};
use segvis::structure::triangulate;
use segvis::visibility::{
    region_meets_segment, visibility_polygon, weak_visibility_oracle, wvp_linear,
};

#[test]
fn wvp_vertex_set_matches_oracle_on_random_polygons() {
    for seed in 0..120u64 {
        let n = 10 + (seed as usize * 7) % 50;
        let method = if seed % 2 == 0 {
            Method::SpacePartition
        } else {
            Method::TwoOptRepair
        };
        let p = generate(seed, n, method).unwrap();
        let t = triangulate(&p);
        let s = random_interior_segment(&p, seed).unwrap();
        let w = wvp_linear(&p, &t, &s).unwrap();
        let o = weak_visibility_oracle(&p, &t, &s).unwrap();
        assert_eq!(w.boundary.vertex_set(), o, "seed {seed} n {n}");
    }
}

#[test]
fn wvp_vertex_set_matches_oracle_on_fixtures() {
    for (name, p) in fixtures() {
        let t = triangulate(&p);
        for seed in 0..20u64 {
            let s = random_interior_segment(&p, seed).unwrap();
            let w = wvp_linear(&p, &t, &s).unwrap();
            assert_eq!(
                w.boundary.vertex_set(),
                weak_visibility_oracle(&p, &t, &s).unwrap(),
                "{name} {seed}"
            );
        }
    }
}

#[test]
fn point_visibility_vertices_pass_the_predicate() {
    for seed in 0..200u64 {
        let p = generate(seed, 8 + (seed as usize % 30), Method::SpacePartition).unwrap();
        let t = triangulate(&p);
        let a = random_interior_segment(&p, seed).unwrap().a;
        let vp = visibility_polygon(&p, &t, &a).unwrap();
        for v in 0..p.len() {
            let sees = segment_in_polygon(&p, &Segment::new(a.clone(), p.vertex(v).clone()));
            assert_eq!(vp.boundary.has_vertex(v), sees, "seed {seed} vertex {v}");
        }
    }
}

#[test]
fn window_points_lie_on_their_edges() {
    for seed in 0..60u64 {
        let p = generate(seed, 30, Method::TwoOptRepair).unwrap();
        let t = triangulate(&p);
        let s = random_interior_segment(&p, seed).unwrap();
        let w = wvp_linear(&p, &t, &s).unwrap();
        for e in w.elements(&p) {
            if let segvis::visibility::Element::Window { point, edge } = e {
                let (a, b) = p.edge_points(edge);
                assert!(segvis::geometry::on_segment(a, b, &point));
                let vz = visibility_polygon(&p, &t, &point).unwrap();
                assert!(
                    region_meets_segment(&vz.boundary.outline(&p), &s),
                    "seed {seed} {point:?}"
                );
            }
        }
    }
}

#[test]
fn degenerate_segments_match_oracle() {
    use rand::SeedableRng;
    use segvis::corpus::random_interior_point;
    for seed in 0..80u64 {
        let p = generate(seed, 12 + (seed as usize % 25), Method::TwoOptRepair).unwrap();
        let t = triangulate(&p);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let x = random_interior_point(&p, &mut rng).unwrap();
        let v = (seed as usize * 5) % p.len();
        let (a, b) = p.edge_points(v);
        let mid = Point::midpoint(a, b);
        let cands = [
            Segment::new(p.vertex(v).clone(), x.clone()),
            Segment::new(mid.clone(), x.clone()),
            Segment::new(x.clone(), x.clone()),
            Segment::new(mid.clone(), mid.clone()),
            Segment::new(p.vertex(v).clone(), p.vertex(v).clone()),
        ];
        for s in cands.iter().filter(|s| segment_in_polygon(&p, s)) {
            let w = wvp_linear(&p, &t, s).unwrap();
            assert_eq!(
                w.boundary.vertex_set(),
                weak_visibility_oracle(&p, &t, s).unwrap(),
                "seed {seed} {s:?}"
            );
            if s.a == s.b {
                assert_eq!(
                    w.boundary,
                    visibility_polygon(&p, &t, &s.a).unwrap().boundary,
                    "seed {seed}"
                );
            }
        }
    }
}

#[test]
fn boundary_agrees_pointwise_with_oracle() {
    use segvis::geometry::Coord;
    for seed in 0..25u64 {
        let p = generate(seed, 14, Method::SpacePartition).unwrap();
        let t = triangulate(&p);
        let s = random_interior_segment(&p, seed + 1000).unwrap();
        let w = wvp_linear(&p, &t, &s).unwrap();
        for j in 0..p.len() {
            let (a, b) = p.edge_points(j);
            for k in 1..8 {
                let u = Coord::frac(k, 8);
                let z = Point::lerp(a, b, &u);
                let seen = region_meets_segment(
                    &visibility_polygon(&p, &t, &z).unwrap().boundary.outline(&p),
                    &s,
                );
                assert_eq!(
                    w.boundary.covers(j, &u),
                    seen,
                    "seed {seed} edge {j} at {k}/8"
                );
            }
        }
    }
}
