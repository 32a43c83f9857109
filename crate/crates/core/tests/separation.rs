mod common;

use common::{hulls_meet, pt};
use itertools::Itertools;
use num_traits::{Signed, Zero};
use rainbow_core::error::Error;
use rainbow_core::geometry::{general_position_check, Hyperplane, Point, Sign};
use rainbow_core::separation::{
    ham_sandwich_cut, hyperplane_transversal_exists, is_separated_family, order_type, split_separator,
    strictly_separating_hyperplane, trim_to_separated, Separation,
};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_set(rng: &mut ChaCha8Rng, max: usize, range: i64) -> Vec<Point> {
    let center = (rng.random_range(-range..=range), rng.random_range(-range..=range));
    common::cluster(rng, center, range / 2 + 1, max)
}

/// Signs of `h` on `set`, counted without the library's helpers.
fn counts(h: &Hyperplane, set: &[Point]) -> (usize, usize, usize) {
    set.iter().fold((0, 0, 0), |(n, z, p), q| {
        let v = h.eval(q);
        if v.is_negative() {
            (n + 1, z, p)
        } else if v.is_zero() {
            (n, z + 1, p)
        } else {
            (n, z, p + 1)
        }
    })
}

fn in_general_position(sets: &[&[Point]]) -> bool {
    let all: Vec<&Point> = sets.iter().flat_map(|s| s.iter()).collect();
    all.iter().all_unique() && general_position_check(&all, 2).is_ok()
}

#[test]
fn strict_separation_matches_hull_intersection_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let (mut separable, mut meeting) = (0, 0);
    for _ in 0..150 {
        let a = random_set(&mut rng, 5, 6);
        let b = random_set(&mut rng, 5, 6);
        if a.iter().any(|p| b.contains(p)) {
            continue;
        }
        match strictly_separating_hyperplane(&a, &b).unwrap() {
            Some(h) => {
                assert!(!hulls_meet(&a, &b));
                assert!(a.iter().all(|p| h.eval(p).is_negative()));
                assert!(b.iter().all(|p| h.eval(p).is_positive()));
                separable += 1;
            }
            None => {
                assert!(hulls_meet(&a, &b));
                meeting += 1;
            }
        }
    }
    assert!(separable > 10 && meeting > 10, "{separable} {meeting}");
}

#[test]
fn touching_hulls_are_not_strictly_separable() {
    let a = vec![pt(0, 0), pt(2, 0)];
    let b = vec![pt(1, 0), pt(1, 5)];
    assert!(strictly_separating_hyperplane(&a, &b).unwrap().is_none());
    let c = vec![pt(3, 0), pt(4, 1)];
    assert!(strictly_separating_hyperplane(&a, &c).unwrap().is_some());
}

#[test]
fn separated_triples_are_exactly_those_without_a_transversal() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let (mut separated, mut crossed, mut done) = (0, 0, 0);
    while done < 100 {
        let sets: Vec<Vec<Point>> = (0..3).map(|_| random_set(&mut rng, 6, 12)).collect();
        let refs: Vec<&[Point]> = sets.iter().map(Vec::as_slice).collect();
        if !in_general_position(&refs) {
            continue;
        }
        let family = is_separated_family(&sets, 2).unwrap();
        let transversal = hyperplane_transversal_exists(&sets).unwrap();
        assert_eq!(family.is_separated(), transversal.is_none(), "{sets:?}");
        if let Some(h) = &transversal {
            for s in &sets {
                let (n, z, p) = counts(h, s);
                assert!(z > 0 || (n > 0 && p > 0));
            }
            crossed += 1;
        } else {
            separated += 1;
        }
        done += 1;
    }
    assert!(separated >= 10 && crossed >= 10, "{separated} {crossed}");
}

#[test]
fn failing_split_is_reported_and_has_no_separator() {
    let sets = vec![
        vec![pt(0, 0), pt(10, 1)],
        vec![pt(5, -3), pt(5, 4)],
        vec![pt(20, 20)],
    ];
    let Separation::Failing(w) = is_separated_family(&sets, 2).unwrap() else {
        panic!("expected a failing split");
    };
    assert!(w.hyperplane.is_none());
    assert!(split_separator(&sets, &w.tuple, &w.group).unwrap().is_none());
}

fn separated_family(rng: &mut ChaCha8Rng) -> Vec<Vec<Point>> {
    loop {
        let bodies: Vec<Vec<Point>> = (0..4)
            .map(|_| {
                let center = (rng.random_range(-60..=60), rng.random_range(-60..=60));
                common::cluster(rng, center, 3, 5)
            })
            .collect();
        let refs: Vec<&[Point]> = bodies.iter().map(Vec::as_slice).collect();
        if in_general_position(&refs) && is_separated_family(&bodies, 2).unwrap().is_separated() {
            return bodies;
        }
    }
}

#[test]
fn order_type_is_constant_on_separated_families() {
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    for _ in 0..20 {
        let bodies = separated_family(&mut rng);
        let reference = order_type(&bodies.iter().map(|b| b[0].clone()).collect_vec()).unwrap();
        for _ in 0..10 {
            let pick: Vec<Point> = bodies.iter().map(|b| b.choose(&mut rng).unwrap().clone()).collect();
            assert_eq!(order_type(&pick).unwrap(), reference);
        }
    }
}

#[test]
fn order_type_rejects_degenerate_points() {
    assert!(order_type(&[pt(0, 0), pt(1, 1), pt(2, 2)]).is_err());
    assert_eq!(
        order_type(&[pt(0, 0), pt(1, 0), pt(0, 1)]).unwrap(),
        vec![Sign::Positive]
    );
}

#[test]
fn ham_sandwich_cuts_meet_the_contract() {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    let mut done = 0;
    while done < 100 {
        let a = random_set(&mut rng, 15, 20);
        let b = random_set(&mut rng, 15, 20);
        if !in_general_position(&[&a, &b]) {
            continue;
        }
        let h = ham_sandwich_cut(&[a.clone(), b.clone()], None).unwrap();
        for s in [&a, &b] {
            let (n, _, p) = counts(&h, s);
            assert!(n <= s.len() / 2 && p <= s.len() / 2);
        }
        assert_eq!(ham_sandwich_cut(&[a, b], None).unwrap(), h);
        done += 1;
    }
}

#[test]
fn anchored_cuts_pass_through_the_anchor() {
    let mut rng = ChaCha8Rng::seed_from_u64(59);
    let mut done = 0;
    while done < 100 {
        let s = random_set(&mut rng, 15, 20);
        let o = pt(rng.random_range(-30..=30), rng.random_range(-30..=30));
        if !in_general_position(&[&s, std::slice::from_ref(&o)]) {
            continue;
        }
        let h = ham_sandwich_cut(std::slice::from_ref(&s), Some(&o)).unwrap();
        assert!(h.eval(&o).is_zero());
        let (n, _, p) = counts(&h, &s);
        assert!(n <= s.len() / 2 && p <= s.len() / 2);
        done += 1;
    }
}

#[test]
fn ham_sandwich_rejects_bad_requests() {
    let s = vec![pt(0, 0), pt(1, 3)];
    assert!(ham_sandwich_cut(&[s.clone(), s.clone(), s.clone()], None).is_err());
    assert!(ham_sandwich_cut(&[s.clone(), s.clone()], Some(&pt(5, 5))).is_err());
    assert!(ham_sandwich_cut(&[], None).is_err());
    let spatial = vec![Point::from_ints(&[0, 0, 0])];
    assert!(matches!(
        ham_sandwich_cut(&[spatial], None),
        Err(Error::UnsupportedDimension(_))
    ));
}

/// Overlapping sets around the origin in general position with it.
fn overlapping_instance(rng: &mut ChaCha8Rng) -> (Point, Vec<Vec<Point>>) {
    loop {
        let o = pt(0, 0);
        let sets: Vec<Vec<Point>> = (0..3)
            .map(|_| {
                let k = rng.random_range(4..=9);
                let mut s: Vec<Point> = Vec::new();
                while s.len() < k {
                    let p = pt(rng.random_range(-25..=25), rng.random_range(-25..=25));
                    if !s.contains(&p) {
                        s.push(p);
                    }
                }
                s
            })
            .collect();
        let mut refs: Vec<&[Point]> = sets.iter().map(Vec::as_slice).collect();
        refs.push(std::slice::from_ref(&o));
        if in_general_position(&refs) && !is_separated_family(&bodies(&o, &sets), 2).unwrap().is_separated() {
            return (o, sets);
        }
    }
}

fn bodies(o: &Point, sets: &[Vec<Point>]) -> Vec<Vec<Point>> {
    std::iter::once(vec![o.clone()]).chain(sets.iter().cloned()).collect()
}

#[test]
fn trimming_terminates_with_a_separated_family() {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    let mut total_steps = 0;
    for _ in 0..30 {
        let (o, sets) = overlapping_instance(&mut rng);
        let trimmed = match trim_to_separated(&sets, &o) {
            Ok(t) => t,
            Err(Error::TrimExhausted { trace }) => {
                assert!(trace.final_sizes.contains(&0));
                continue;
            }
            Err(e) => panic!("{e}"),
        };
        let trace = &trimmed.trace;
        assert!(trace.step_count() >= 1);
        total_steps += trace.step_count();
        let mut sizes = trace.initial_sizes.clone();
        for step in &trace.steps {
            assert!(step.cut.eval(&o).is_zero() || step.split.tuple[0] != 0);
            for (i, dropped) in step.discarded.iter().enumerate() {
                assert!(dropped.len() <= sizes[i] / 2, "lost {} of {}", dropped.len(), sizes[i]);
                if !step.split.tuple.contains(&(i + 1)) {
                    assert!(dropped.is_empty());
                }
                sizes[i] -= dropped.len();
            }
        }
        assert_eq!(sizes, trace.final_sizes);
        let q = trimmed.points(&sets);
        assert!(q.iter().all(|s| !s.is_empty()));
        for (k, s) in trimmed.kept.iter().zip(&sets) {
            assert!(k.iter().all(|&j| j < s.len()));
        }
        assert!(is_separated_family(&bodies(&o, &q), 2).unwrap().is_separated());
        assert_eq!(trim_to_separated(&sets, &o).unwrap(), trimmed);
    }
    assert!(total_steps > 30, "{total_steps}");
}

#[test]
fn trimming_a_separated_family_is_a_no_op() {
    let o = pt(0, 0);
    let sets = vec![
        vec![pt(10, 0), pt(11, 1)],
        vec![pt(-5, 9), pt(-6, 10)],
        vec![pt(-5, -9), pt(-6, -8)],
    ];
    let trimmed = trim_to_separated(&sets, &o).unwrap();
    assert_eq!(trimmed.trace.step_count(), 0);
    assert_eq!(trimmed.kept, vec![vec![0, 1], vec![0, 1], vec![0, 1]]);
}
