use barypoly::analysis::{check_sortedness, instability_growth, random_sorted_seed};
use barypoly::stationary::{certificate, solve_alpha, stationary_conjugate, DEFAULT_ALPHA_TOL};
use barypoly::{
    classify_phase, comparison_sequence, conjugate_step, derived_step, run_trajectory, ConjugateTuple, Phase,
    WeightTuple,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn unit_tuple(max_p: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.001..0.999_f64, 2..=max_p)
}

/// `prod_{i != k} x_i` by repeated multiplication.
fn product_except(x: &[f64], k: usize) -> f64 {
    x.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, v)| v).product()
}

proptest! {
    #[test]
    fn conjugation_square_commutes(t in unit_tuple(9)) {
        let w = WeightTuple::new(t).unwrap();
        let via_t = derived_step(&w).unwrap();
        let via_u = conjugate_step(&w.to_conjugate()).unwrap();
        for (a, b) in via_t.t().iter().zip(via_u.u()) {
            prop_assert!((1.0 - a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn derived_step_matches_direct_products(t in unit_tuple(9)) {
        let w = WeightTuple::new(t.clone()).unwrap();
        let next = derived_step(&w).unwrap();
        let complements: Vec<f64> = t.iter().map(|x| 1.0 - x).collect();
        for (k, &v) in next.t().iter().enumerate() {
            let direct = product_except(&complements, k);
            prop_assert!((v - direct).abs() <= 1e-14 * direct.max(1e-300));
        }
    }

    #[test]
    fn sorted_input_gives_sorted_output(mut u in unit_tuple(9)) {
        u.sort_by(f64::total_cmp);
        let next = conjugate_step(&ConjugateTuple::new(u).unwrap()).unwrap();
        prop_assert!(next.is_sorted());
    }

    #[test]
    fn trajectory_states_follow_the_step(u in unit_tuple(8), steps in 0usize..40) {
        let p = u.len();
        let alpha = solve_alpha(p, DEFAULT_ALPHA_TOL).unwrap();
        let rec = run_trajectory(&ConjugateTuple::new(u).unwrap(), steps, alpha);
        match rec.saturation_step() {
            Some(s) => prop_assert_eq!(rec.len(), s),
            None => prop_assert_eq!(rec.len(), steps + 1),
        }
        for w in rec.states().windows(2) {
            prop_assert_eq!(&conjugate_step(&w[0]).unwrap(), &w[1]);
        }
        for &s in rec.spread() {
            prop_assert!(s >= 0.0);
        }
        for (m, logs) in rec.log_products().iter().enumerate() {
            let state = &rec.states()[m];
            for (k, &l) in logs.iter().enumerate() {
                // plain logs of the stored values: the products themselves underflow
                let direct: f64 = state.u().iter().enumerate().filter(|&(i, _)| i != k).map(|(_, v)| v.ln()).sum();
                prop_assert!((l - direct).abs() < 1e-12 * direct.abs().max(1.0));
            }
        }
    }
}

#[test]
fn order_is_preserved_along_a_thousand_orbits() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..1000 {
        let p = 3 + i % 6;
        let alpha = solve_alpha(p, DEFAULT_ALPHA_TOL).unwrap();
        let rec = run_trajectory(&random_sorted_seed(&mut rng, p), 200, alpha);
        let scan = check_sortedness(&rec);
        assert!(scan.holds, "p = {p}: {scan:?}");
    }
}

#[test]
fn fixed_point_is_isolated_on_a_grid() {
    let alpha = solve_alpha(3, DEFAULT_ALPHA_TOL).unwrap();
    let n = 20;
    let mut near = 0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let x = [i, j, k].map(|v| (v as f64 + 0.5) / n as f64);
                let next = conjugate_step(&ConjugateTuple::new(x.to_vec()).unwrap()).unwrap();
                let residual = x.iter().zip(next.u()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                if residual < 1e-9 {
                    near += 1;
                    assert!(x.iter().all(|v| (v - alpha).abs() < 1e-4));
                }
            }
        }
    }
    // the grid misses alpha_3, so nothing is close to being fixed
    assert_eq!(near, 0);

    // a finer probe around alpha_3 finds the fixed point only at its centre
    for di in -5..=5 {
        for dj in -5..=5 {
            for dk in -5..=5 {
                let x = [di, dj, dk].map(|d| alpha + d as f64 * 2e-5);
                let next = conjugate_step(&ConjugateTuple::new(x.to_vec()).unwrap()).unwrap();
                let residual = x.iter().zip(next.u()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                assert_eq!(residual < 1e-9, (di, dj, dk) == (0, 0, 0));
            }
        }
    }
}

#[test]
fn perturbation_grows_at_the_repulsive_rate() {
    for p in 3..=5 {
        let expected = certificate(p).unwrap().lambda_repulsive.abs();
        let factors = instability_growth(p).unwrap();
        assert_eq!(factors.len(), 5);
        for f in factors {
            assert!((f - expected).abs() <= 0.1 * expected, "p = {p}: {f} vs {expected}");
        }
    }
}

#[test]
fn hand_evaluated_steps() {
    let t = WeightTuple::new(vec![0.5, 0.5, 0.5]).unwrap();
    assert_eq!(derived_step(&t).unwrap().t(), &[0.25, 0.25, 0.25]);

    let t = WeightTuple::new(vec![0.1, 0.2, 0.3, 0.4]).unwrap();
    let expected = [0.8 * 0.7 * 0.6, 0.9 * 0.7 * 0.6, 0.9 * 0.8 * 0.6, 0.9 * 0.8 * 0.7];
    for (a, b) in derived_step(&t).unwrap().t().iter().zip(expected) {
        assert!((a - b).abs() < 1e-15);
    }

    let u = ConjugateTuple::new(vec![0.2, 0.3, 0.4]).unwrap();
    for (a, b) in conjugate_step(&u).unwrap().u().iter().zip([0.88, 0.92, 0.94]) {
        assert!((a - b).abs() < 1e-15);
    }
}

#[test]
fn stationary_weights_are_fixed() {
    let alpha = solve_alpha(3, DEFAULT_ALPHA_TOL).unwrap();
    let t = WeightTuple::new(vec![1.0 - alpha; 3]).unwrap();
    for (a, b) in derived_step(&t).unwrap().t().iter().zip(t.t()) {
        assert!((a - b).abs() < 1e-14);
    }
}

#[test]
fn phases_of_simple_tuples() {
    let alpha = solve_alpha(5, DEFAULT_ALPHA_TOL).unwrap();
    let all = |x: f64| ConjugateTuple::new(vec![x; 5]).unwrap();
    assert_eq!(classify_phase(&all(alpha / 2.0), alpha), Phase::Below);
    assert_eq!(classify_phase(&all((1.0 + alpha) / 2.0), alpha), Phase::Above);
    assert_eq!(classify_phase(&all(alpha), alpha), Phase::Mixed);
    let straddle = ConjugateTuple::new(vec![0.1, 0.2, 0.3, 0.9, 0.95]).unwrap();
    assert_eq!(classify_phase(&straddle, alpha), Phase::Mixed);
}

#[test]
fn stationary_trajectory_stays_put() {
    // rounding at the repelling fixed point grows by |(1 - p) beta| per step;
    // for p = 3 ten steps stay inside the phase boundary band
    let s = stationary_conjugate(3).unwrap();
    let rec = run_trajectory(&s, 10, s.u()[0]);
    assert_eq!(rec.len(), 11);
    assert!(rec.phase().iter().all(|&p| p == Phase::Mixed));
    for state in rec.states() {
        for (a, b) in state.u().iter().zip(s.u()) {
            assert!((a - b).abs() < 1e-14);
        }
    }
}

#[test]
fn unsorted_seed_is_sorted_once() {
    let alpha = solve_alpha(5, DEFAULT_ALPHA_TOL).unwrap();
    let t = WeightTuple::new(vec![0.3, 0.08, 0.06, 0.04, 0.01]).unwrap();
    let rec = run_trajectory(&t.to_conjugate(), 30, alpha);
    assert_eq!(rec.permutation(), &[0, 1, 2, 3, 4]);
    let shuffled = ConjugateTuple::new(vec![0.96, 0.7, 0.99, 0.92, 0.94]).unwrap();
    let rec = run_trajectory(&shuffled, 30, alpha);
    assert_eq!(rec.permutation(), &[1, 3, 4, 0, 2]);
    assert!(rec.states()[0].is_sorted());
    let spread = rec.spread();
    for m in 0..spread.len() - 2 {
        assert!(spread[m + 2] < 0.5 * spread[m], "step {m}");
    }
}

#[test]
fn comparison_sequence_examples() {
    let tau = comparison_sequence(0.5, 3, 2).unwrap();
    assert_eq!(tau, vec![0.5, 0.75, 0.4375]);

    // alpha_p is a repelling fixed point of tau -> 1 - tau^(p-1), so only a
    // short run stays put
    let alpha = solve_alpha(6, DEFAULT_ALPHA_TOL).unwrap();
    for x in comparison_sequence(alpha, 6, 10).unwrap() {
        assert!((x - alpha).abs() < 1e-13);
    }

    let tau = comparison_sequence(0.3, 3, 200).unwrap();
    assert!(tau[200] < 1e-9);
    assert!(1.0 - tau[199] < 1e-9);
    for m in (0..198).step_by(2) {
        assert!(tau[m + 2] <= tau[m]);
        assert!(tau[m + 3] >= tau[m + 1]);
    }
    assert!(comparison_sequence(0.3, 2, 5).is_err());
    assert!(comparison_sequence(1.0, 3, 5).is_err());
}
