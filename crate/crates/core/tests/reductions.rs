mod common;

use common::*;
use elfarol::ce::{
    drop_zero_delta, has_two_configuration_shape, merge, move_to_zero, reduce_to_fixpoint, reflect,
    reflect_target, verify_ce,
};
use elfarol::{best_mediator, expected_social_cost, ConfigDistribution, GameParams};

const STRICT: f64 = 1e-12;

fn assert_improves(params: &GameParams, before: &ConfigDistribution, after: &ConfigDistribution) {
    assert!(is_ce(params, after), "{params:?} {before:?} -> {after:?}");
    let (a, b) = (
        expected_social_cost(params, before),
        expected_social_cost(params, after),
    );
    assert!(b < a - STRICT, "cost {a} -> {b}: {before:?} -> {after:?}");
}

#[test]
fn dropping_an_indifferent_configuration() {
    let cases = collect(11, drop_instance);
    for (params, dist, idx) in cases {
        let out = drop_zero_delta(&params, &dist, idx[0]).unwrap();
        assert_eq!(out.len(), dist.len() - 1);
        assert_improves(&params, &dist, &out);
    }
}

#[test]
fn moving_low_configurations_to_zero() {
    let cases = collect(12, move_instance);
    for (params, dist, idx) in cases {
        let out = move_to_zero(&params, &dist, idx[0]).unwrap();
        assert_improves(&params, &dist, &out);
        let (a, b) = (
            verify_ce(&params, &dist, 0.0),
            verify_ce(&params, &out, 0.0),
        );
        assert!(b.go_side_slack > a.go_side_slack);
        assert!(b.stay_side_slack < a.stay_side_slack);
    }
}

#[test]
fn reflecting_onto_the_crowded_branch() {
    let mut to_one = 0;
    let cases = collect(13, reflect_instance);
    for (params, dist, idx) in cases {
        let x = dist.entries()[idx[0]].x;
        let target = reflect_target(&params, x);
        if target == 1.0 {
            to_one += 1;
        } else {
            let (fx, ft) = (
                params.cost_to_go(x).unwrap(),
                params.cost_to_go(target).unwrap(),
            );
            assert!((fx - ft).abs() < 1e-12);
            assert!(target > params.kink());
        }
        let out = reflect(&params, &dist, idx[0]).unwrap();
        assert!(out.iter().any(|e| e.x == target));
        assert_improves(&params, &dist, &out);
    }
    assert!(to_one > 0, "no instance exercised the jump to 1");
}

#[test]
fn merging_crowded_configurations() {
    let cases = collect(14, merge_instance);
    for (params, dist, idx) in cases {
        let (ei, ej) = (dist.entries()[idx[0]], dist.entries()[idx[1]]);
        let out = merge(&params, &dist, idx[0], idx[1]).unwrap();
        assert_improves(&params, &dist, &out);

        let d = |x: f64| params.delta(x).unwrap();
        let p = ei.p + ej.p;
        let x = (ei.p * ei.x + ej.p * ej.x) / p;
        let go_pair = ei.p * ei.x * d(ei.x) + ej.p * ej.x * d(ej.x);
        let stay_pair = ei.p * (1.0 - ei.x) * d(ei.x) + ej.p * (1.0 - ej.x) * d(ej.x);
        assert!(p * x * d(x) > go_pair);
        assert!(p * (1.0 - x) * d(x) < stay_pair);
    }
}

#[test]
fn fixpoint_reaches_the_two_configuration_shape() {
    let cases = collect(15, fixpoint_instance);
    for (params, dist, _) in cases {
        let fp = reduce_to_fixpoint(&params, &dist).unwrap();
        assert!(
            has_two_configuration_shape(&params, &fp.dist),
            "{dist:?} -> {:?}",
            fp.dist
        );
        assert!(is_ce(&params, &fp.dist));
        let (a, b) = (
            expected_social_cost(&params, &dist),
            expected_social_cost(&params, &fp.dist),
        );
        assert!(b <= a + 1e-12);
        assert!(b >= best_mediator(&params).per_capita_cost - 1e-9);
        assert!(fp.steps.len() <= 2 * dist.len() + 1);
    }
}

#[test]
fn preconditions_are_enforced() {
    let params = GameParams::new(2.0, 4.0, 10.0).unwrap();
    let d = |pairs: &[(f64, f64)]| ConfigDistribution::from_pairs(pairs).unwrap();
    let ce = d(&[(0.1, 0.5), (0.5, 0.5)]);
    // not zero-delta, and k = 2
    assert!(drop_zero_delta(&params, &ce, 0).is_err());
    // 0.5 is not below (c-1)/s1
    assert!(move_to_zero(&params, &ce, 1).is_err());
    // 0.1 is not in the reflect window
    assert!(reflect(&params, &ce, 0).is_err());
    // not both above the kink
    assert!(merge(&params, &ce, 0, 1).is_err());
    // not a CE
    let non_ce = d(&[(0.1, 0.3), (0.5, 0.7)]);
    assert!(move_to_zero(&params, &non_ce, 0).is_err());
    assert!(reduce_to_fixpoint(&params, &non_ce).is_err());
    // c <= 1
    let low = GameParams::new(0.5, 1.0, 1.0).unwrap();
    assert!(reduce_to_fixpoint(&low, &d(&[(0.0, 0.5), (1.0, 0.5)])).is_err());
    // index out of range
    assert!(reflect(&params, &ce, 7).is_err());
}
