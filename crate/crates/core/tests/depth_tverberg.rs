mod common;

use itertools::Itertools;
use rainbow_core::config::{generate, ColoredConfiguration, GeneratorSpec};
use rainbow_core::depth::{
    counting_bound_diagnostic, deepest_point, rainbow_depth_at, theoretical_constants, DepthStrategy,
};
use rainbow_core::error::Error;
use rainbow_core::geometry::{all_positive, barycentric, Point};
use rainbow_core::rational::{int, rat};
use rainbow_core::tverberg::{common_interior_point, find_disjoint_rainbow_simplices, verify_tverberg};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Rainbow depth by barycentric coordinates, independent of the library's
/// homogeneous predicates.
fn depth_oracle(cfg: &ColoredConfiguration, p: &Point) -> usize {
    (0..cfg.num_colors())
        .map(|_| 0..cfg.n())
        .multi_cartesian_product()
        .filter(|t| {
            let verts: Vec<&Point> = t.iter().enumerate().map(|(c, &i)| cfg.point(c, i)).collect();
            barycentric(p, &verts).is_some_and(|w| all_positive(&w))
        })
        .count()
}

#[test]
fn depth_matches_oracle_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for seed in 0..5 {
        let cfg = generate(&GeneratorSpec::new(seed, 5, 2)).unwrap();
        for _ in 0..20 {
            let p = common::rand_point(&mut rng, 2, 100, 7);
            match rainbow_depth_at(&cfg, &p) {
                Ok(depth) => {
                    assert_eq!(depth.count, depth_oracle(&cfg, &p));
                    assert_eq!(depth.tuples.len(), depth.count);
                }
                Err(Error::Ambiguous(_)) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }
}

#[test]
fn depth_matches_oracle_in_three_dimensions() {
    let cfg = generate(&GeneratorSpec::new(2, 3, 3)).unwrap();
    let p = Point::centroid(&cfg.all_points());
    assert_eq!(rainbow_depth_at(&cfg, &p).unwrap().count, depth_oracle(&cfg, &p));
}

#[test]
fn hexagon_depth() {
    let cfg = common::load_fixture("hexagon.json");
    let center = Point::from_ints(&[0, 0]);
    let depth = rainbow_depth_at(&cfg, &center).unwrap();
    assert_eq!(depth.count, 2);
    assert_eq!(depth.tuples, vec![vec![0, 1, 0], vec![1, 0, 1]]);
    let best = deepest_point(&cfg, &DepthStrategy::ExactArrangement).unwrap();
    assert_eq!(best.depth, 2);
}

#[test]
fn point_on_a_facet_line_is_ambiguous() {
    let cfg = common::load_fixture("triangle.json");
    let on_edge = Point::new(vec![int(2), int(0)]);
    assert!(matches!(rainbow_depth_at(&cfg, &on_edge), Err(Error::Ambiguous(_))));
}

#[test]
fn exact_search_dominates_sampling_and_its_witness_is_certified() {
    for seed in 0..4 {
        let cfg = generate(&GeneratorSpec::new(seed, 4, 2)).unwrap();
        let exact = deepest_point(&cfg, &DepthStrategy::ExactArrangement).unwrap();
        let sampled = deepest_point(&cfg, &DepthStrategy::sampling(seed)).unwrap();
        assert!(sampled.depth <= exact.depth);
        assert_eq!(depth_oracle(&cfg, &exact.witness), exact.depth);
        // Oracle maximum over a dense grid of candidate points never beats the exact search.
        let grid_best = (-10..=10)
            .flat_map(|x| (-10..=10).map(move |y| Point::new(vec![rat(10 * x + 3, 2), rat(10 * y + 1, 2)])))
            .map(|p| depth_oracle(&cfg, &p))
            .max()
            .unwrap();
        assert!(grid_best <= exact.depth);
    }
}

#[test]
fn exact_search_is_planar_only() {
    let cfg = generate(&GeneratorSpec::new(1, 2, 3)).unwrap();
    assert!(matches!(
        deepest_point(&cfg, &DepthStrategy::ExactArrangement),
        Err(Error::UnsupportedDimension(_))
    ));
    assert!(deepest_point(&cfg, &DepthStrategy::sampling(1)).is_ok());
}

#[test]
fn constants() {
    let c = theoretical_constants(2, 10).unwrap();
    assert_eq!(c.alpha, rat(1, 10_000));
    assert_eq!(c.beta, rat(1, 30_000));
    assert_eq!(c.epsilon, rat(1, 256));
    assert_eq!(c.big_n, 1000.into());
    let c1 = theoretical_constants(1, 4).unwrap();
    assert_eq!(c1.alpha, rat(1, 5));
    assert_eq!(c1.epsilon, rat(1, 4));
    assert!(theoretical_constants(0, 4).is_err());
    assert!(counting_bound_diagnostic(2, 3).is_none());
    let bound = counting_bound_diagnostic(2, 40).unwrap();
    assert_eq!(bound.holds, bound.lhs > bound.rhs);
}

#[test]
fn tverberg_certificates_verify_independently() {
    for seed in 0..10 {
        let cfg = generate(&GeneratorSpec::new(seed, 8, 2)).unwrap();
        let cert = find_disjoint_rainbow_simplices(cfg.colors(), 3).unwrap().expect("found");
        verify_tverberg(cfg.colors(), &cert).unwrap();
        for t in &cert.simplices {
            let verts: Vec<&Point> = t.iter().enumerate().map(|(c, &i)| cfg.point(c, i)).collect();
            assert!(all_positive(&barycentric(&cert.witness, &verts).unwrap()));
        }
        for c in 0..3 {
            assert!(cert.simplices.iter().map(|t| t[c]).all_unique());
        }
    }
}

#[test]
fn tverberg_rejects_bad_requests() {
    let cfg = generate(&GeneratorSpec::new(0, 2, 2)).unwrap();
    assert!(find_disjoint_rainbow_simplices(cfg.colors(), 3).is_err());
    let big = generate(&GeneratorSpec::new(0, 13, 2)).unwrap();
    assert!(matches!(
        find_disjoint_rainbow_simplices(big.colors(), 3),
        Err(Error::Budget(_))
    ));
}

#[test]
fn common_interior_point_of_disjoint_triangles_is_none() {
    let a: Vec<Point> = [(0, 0), (1, 0), (0, 1)].iter().map(|&(x, y)| common::pt(x, y)).collect();
    let b: Vec<Point> = [(5, 5), (6, 5), (5, 6)].iter().map(|&(x, y)| common::pt(x, y)).collect();
    assert!(common_interior_point(&[a.clone(), b]).unwrap().is_none());
    let p = common_interior_point(std::slice::from_ref(&a)).unwrap().unwrap();
    assert!(all_positive(&barycentric(&p, &a).unwrap()));
}
