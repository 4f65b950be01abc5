use std::collections::BTreeSet;

use lineperc::engine::naive_closure;
use lineperc::grid::Point;
use lineperc::minset::{eval_rank, vanishing_polynomial};
use lineperc::processes::{run_sequential, run_synchronous};
use lineperc::{closure, GridSpec};
use num_traits::Zero;
use proptest::prelude::*;

fn instance() -> impl Strategy<Value = (GridSpec, Vec<Point>)> {
    (2u32..=7, 1usize..=3, 1u32..=4).prop_flat_map(|(n, d, r)| {
        let spec = GridSpec::uniform(n, d, r).unwrap();
        let point = prop::collection::vec(1..=n, d).prop_map(Point);
        (Just(spec), prop::collection::vec(point, 0..20))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn schedules_agree((spec, a) in instance()) {
        let reference = naive_closure(&spec, &a).unwrap();
        prop_assert_eq!(closure(&spec, &a).unwrap().infected_points(), reference.clone());
        prop_assert_eq!(run_synchronous(&spec, &a).unwrap().0.infected_points(), reference.clone());
        prop_assert_eq!(run_sequential(&spec, &a, None).unwrap().0.infected_points(), reference);
    }

    #[test]
    fn closure_is_monotone_and_idempotent((spec, a) in instance(), extra in 0usize..5) {
        let base = closure(&spec, &a).unwrap().infected_points();
        let again: Vec<Point> = base.iter().cloned().collect();
        prop_assert_eq!(closure(&spec, &again).unwrap().infected_points(), base.clone());
        let mut bigger = a.clone();
        bigger.extend(spec.all_points().step_by(extra + 2));
        let grown = closure(&spec, &bigger).unwrap().infected_points();
        prop_assert!(base.is_subset(&grown));
    }

    #[test]
    fn small_sets_have_vanishing_polynomials((spec, a) in instance()) {
        let r = spec.uniform_threshold().unwrap();
        let d = spec.d();
        prop_assume!(r >= 2 && spec.n() >= r);
        let distinct: BTreeSet<Point> = a.iter().cloned().collect();
        let rank = eval_rank(&a, r, d).unwrap();
        prop_assert!(rank <= distinct.len());
        prop_assert_eq!(rank, eval_rank(&distinct.iter().cloned().collect::<Vec<_>>(), r, d).unwrap());
        if let Some(poly) = vanishing_polynomial(&a, r, d).unwrap() {
            let state = closure(&spec, &a).unwrap();
            prop_assert!(!state.percolates());
            for p in state.infected_points() {
                prop_assert!(poly.evaluate(&p.0).is_zero());
            }
        } else {
            prop_assert_eq!(rank, (r as usize).pow(d as u32));
        }
    }
}

