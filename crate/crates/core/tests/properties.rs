mod common;

use common::{front_first_fixpoint, random_instance, TestRng};
use proptest::prelude::*;
use rrt_rewire::geometry::{distance, point_segment_distance, segment_polygon_distance, segments_intersect};
use rrt_rewire::{
    builtin_map, load_map, plan, post_triangular_rewire, save_map, ObstacleSet, PlannerConfig, Point2, Polygon,
    Segment, WorldMap,
};

fn point() -> impl Strategy<Value = Point2> {
    (-500.0..500.0f64, -500.0..500.0f64).prop_map(|(x, y)| Point2::new(x, y))
}

fn instance() -> impl Strategy<Value = (WorldMap, rrt_rewire::Path)> {
    any::<u64>().prop_map(|seed| random_instance(&mut TestRng::new(seed), 20))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn distance_is_a_metric(p in point(), q in point(), r in point()) {
        prop_assert_eq!(distance(p, q), distance(q, p));
        prop_assert!(distance(p, q) >= 0.0);
        prop_assert_eq!(distance(p, p), 0.0);
        prop_assert!(distance(p, r) <= distance(p, q) + distance(q, r) + 1e-9);
    }

    #[test]
    fn segment_intersection_is_symmetric(a in point(), b in point(), c in point(), d in point()) {
        let (s, t) = (Segment::new(a, b), Segment::new(c, d));
        prop_assert_eq!(segments_intersect(&s, &t), segments_intersect(&t, &s));
        prop_assert_eq!(segments_intersect(&s, &t), segments_intersect(&Segment::new(b, a), &t));
    }

    #[test]
    fn point_segment_distance_bounded_by_endpoints(p in point(), a in point(), b in point()) {
        let d = point_segment_distance(p, &Segment::new(a, b));
        prop_assert!(d <= distance(p, a) + 1e-9 && d <= distance(p, b) + 1e-9);
    }

    #[test]
    fn segment_polygon_distance_zero_iff_contact(seed in any::<u64>(), a in point(), b in point()) {
        let mut rng = TestRng::new(seed);
        let k = 3 + rng.below(8);
        let poly = common::star_polygon(&mut rng, Point2::new(0.0, 0.0), k, 20.0, 200.0);
        let s = Segment::new(a, b);
        let d = segment_polygon_distance(&s, &poly);
        prop_assert_eq!(d == 0.0, rrt_rewire::geometry::segment_hits_polygon(&s, &poly));
        let clearance = common::dense_min_clearance(a, b, std::slice::from_ref(&poly), 2000);
        prop_assert!(d <= clearance + 1e-9);
    }

    #[test]
    fn rewiring_properties((map, path) in instance()) {
        let (out, report) = post_triangular_rewire(&path, &map).unwrap();
        let w = out.waypoints();

        prop_assert!(out.length() <= path.length());
        prop_assert_eq!(w[0], path.start());
        prop_assert_eq!(*w.last().unwrap(), path.goal());
        prop_assert!(w.windows(2).all(|e| !map.is_trapped(e[0], e[1])));
        prop_assert_eq!(report.waypoints_removed, path.len() - out.len());
        prop_assert!(report.passes >= 1);

        let mut rest = path.waypoints().iter();
        prop_assert!(w.iter().all(|p| rest.any(|q| q == p)), "output is not an ordered subset of the input");

        let (again, second) = post_triangular_rewire(&out, &map).unwrap();
        prop_assert_eq!(again.waypoints(), w);
        prop_assert_eq!(second.passes, 1);
        let expected = front_first_fixpoint(path.waypoints(), &map);
        prop_assert_eq!(w, expected.as_slice());
    }

    #[test]
    fn clearance_is_monotone((map, _) in instance(), a in point(), b in point(), e1 in 0.0..30.0f64, e2 in 0.0..30.0f64) {
        let (lo, hi) = if e1 <= e2 { (e1, e2) } else { (e2, e1) };
        let big = |eps: f64| {
            WorldMap::new("eps", 1e7, 1e7, Point2::new(9e6, 9e6), Point2::new(9e6, 9e6), map.obstacles().clone(), eps).unwrap()
        };
        if big(lo).is_trapped(a, b) {
            prop_assert!(big(hi).is_trapped(a, b));
        }
    }

    #[test]
    fn planner_paths_are_valid(seed in 0u64..10_000, map_id in 1u32..=4) {
        let map = builtin_map(map_id).unwrap();
        let cfg = PlannerConfig::default().seeded(seed);
        let outcome = plan(&map, &cfg).unwrap();
        let tree = &outcome.tree;
        for (i, parent) in tree.parents().iter().enumerate() {
            match parent {
                None => prop_assert_eq!(i, 0),
                Some(p) => {
                    prop_assert!(*p < i);
                    let (a, b) = (tree.position(*p), tree.position(i));
                    prop_assert!(distance(a, b) <= cfg.step_length + 1e-9);
                    prop_assert!(!map.is_trapped(a, b));
                    prop_assert!(map.contains(b));
                }
            }
        }
        let path = outcome.path.expect("built-in maps are solvable");
        prop_assert_eq!(path.start(), map.start());
        prop_assert_eq!(path.goal(), map.goal());
        prop_assert!(path.first_colliding_edge(&map).is_none());
        let again = plan(&map, &cfg).unwrap().path.unwrap();
        prop_assert_eq!(again.waypoints(), path.waypoints());
    }

    #[test]
    fn saved_maps_load_back_identical(seed in any::<u64>(), eps in 0.0..5.0f64) {
        let mut rng = TestRng::new(seed);
        let polys: Vec<Polygon> = (0..rng.below(6))
            .map(|_| {
                let c = rng.point(100.0, 500.0);
                let k = 3 + rng.below(6);
                common::star_polygon(&mut rng, c, k, 5.0, 60.0)
            })
            .collect();
        let map = WorldMap::new("round trip", 600.0, 600.0, Point2::new(0.0, 0.0), Point2::new(600.0, 600.0), ObstacleSet::new(polys), eps);
        prop_assume!(map.is_ok());
        let map = map.unwrap();
        let back = load_map(&save_map(&map)).unwrap();
        prop_assert_eq!(back, map);
    }
}
