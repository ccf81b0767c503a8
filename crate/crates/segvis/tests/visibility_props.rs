use proptest::prelude::*;
use segvis::corpus::{generate, random_interior_segment, Method};
use segvis::geometry::{Coord, Point, Segment};
use segvis::structure::triangulate;
use segvis::visibility::{visibility_polygon, wvp_linear};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shorter_segment_sees_no_more(seed in 0u64..10_000, n in 6usize..40, lo in 0i64..8, hi in 0i64..8) {
        let p = generate(seed, n, Method::SpacePartition).unwrap();
        let t = triangulate(&p);
        let s = random_interior_segment(&p, seed).unwrap();
        let (lo, hi) = (lo.min(hi), lo.max(hi));
        let sub = Segment::new(Point::lerp(&s.a, &s.b, &Coord::frac(lo, 8)), Point::lerp(&s.a, &s.b, &Coord::frac(hi, 8)));
        let big = wvp_linear(&p, &t, &s).unwrap().boundary.vertex_set();
        let small = wvp_linear(&p, &t, &sub).unwrap().boundary.vertex_set();
        prop_assert!(small.is_subset(&big));
    }

    #[test]
    fn point_source_limit(seed in 0u64..10_000, n in 5usize..40) {
        let p = generate(seed, n, Method::TwoOptRepair).unwrap();
        let t = triangulate(&p);
        let a = random_interior_segment(&p, seed).unwrap().a;
        let w = wvp_linear(&p, &t, &Segment::new(a.clone(), a.clone())).unwrap();
        prop_assert_eq!(w.boundary, visibility_polygon(&p, &t, &a).unwrap().boundary);
    }

    #[test]
    fn full_coverage_iff_every_vertex(seed in 0u64..10_000, n in 5usize..30) {
        let p = generate(seed, n, Method::SpacePartition).unwrap();
        let t = triangulate(&p);
        let s = random_interior_segment(&p, seed).unwrap();
        let w = wvp_linear(&p, &t, &s).unwrap();
        let full = w.boundary == segvis::visibility::VisibleBoundary::full(n).canonical();
        prop_assert_eq!(full, w.boundary.vertex_set().len() == n && w.elements(&p).iter().all(|e| matches!(e, segvis::visibility::Element::Vertex(_))));
    }
}
