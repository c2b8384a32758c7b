use lattice_speedup_core::bounds::{
    asymptotic_bound, c_alpha, multinomial_layer_count, precalc_bound, r_infinity, search_exponent, F_alpha,
};
use proptest::prelude::*;

fn alpha_grid() -> Vec<f64> {
    (1..50).map(|i| i as f64 / 100.0).collect()
}

#[test]
fn normalized_precalc_value_decreases_in_d() {
    for a in alpha_grid() {
        let mut prev = f64::INFINITY;
        for d in 1..=200 {
            let v = F_alpha(d as f64, a).unwrap() / (d as f64 + 1.0);
            assert!(v < prev, "alpha {a}, D {d}: {v} >= {prev}");
            prev = v;
        }
    }
}

#[test]
fn minimizer_stays_within_bounds() {
    for a in alpha_grid() {
        for d in 1..=200 {
            let b = precalc_bound(d as f64, a).unwrap();
            let (lo, hi) = b.x_bounds();
            assert!(lo <= b.x && b.x <= hi, "alpha {a}, D {d}: {lo} <= {} <= {hi}", b.x);
            assert!(b.residual < 1e-9);
        }
    }
}

#[test]
fn limit_constant_increases_in_alpha() {
    let grid = alpha_grid();
    let c: Vec<f64> = grid.iter().map(|&a| c_alpha(a).unwrap()).collect();
    assert!(c.windows(2).all(|w| w[0] < w[1]));
    let quarter = c_alpha(0.25).unwrap();
    for (&a, &v) in grid.iter().zip(&c) {
        if a > 0.25 {
            assert!(v > quarter);
        }
    }
}

#[test]
fn precalc_value_dominates_limit() {
    for a in alpha_grid() {
        let c = c_alpha(a).unwrap();
        for d in 1..=200 {
            assert!(F_alpha(d as f64, a).unwrap() >= (d as f64 + 1.0) * c);
        }
    }
}

#[test]
fn normalized_value_converges() {
    for a in [0.1, 0.25, 0.4] {
        let c = c_alpha(a).unwrap();
        let v = F_alpha(500.0, a).unwrap() / 501.0;
        assert!((v - c) / c <= 0.01, "alpha {a}: {v} vs {c}");
    }
}

#[test]
fn quarter_constants() {
    let b = asymptotic_bound(0.25).unwrap();
    assert!((b.r_inf - 0.278279).abs() < 1e-5);
    assert!((b.c_alpha - 0.664554).abs() < 1e-5);
    // r solves 1 / (r - alpha) = e^{1/r} - 1
    let r = r_infinity(0.25).unwrap();
    assert!((1.0 / (r - 0.25) - (1.0 / r).exp_m1()).abs() < 1e-8);
}

#[test]
fn multinomials_dominate_stirling() {
    for d in 1..=5u64 {
        for n in (d + 1..=60).step_by(d as usize + 1) {
            let m = multinomial_layer_count(n, d).unwrap();
            assert!(m.bound_holds(), "n {n}, D {d}");
        }
    }
    assert_eq!(multinomial_layer_count(12, 2).unwrap().exact, 34650u32.into());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn search_exponent_exceeds_lower_bound(
        d in 1u64..=30,
        first in 0.0f64..=0.25,
        mut rest in prop::collection::vec(0.2501f64..0.5, 0..4),
    ) {
        rest.sort_by(f64::total_cmp);
        let mut alphas = vec![first];
        alphas.extend(rest);
        alphas.push(0.5);
        let e = search_exponent(&alphas, d).unwrap();
        prop_assert!(e.bound_holds(), "{e:?}");
        // the gamma differences telescope to gamma_(k+1)
        let tele: f64 = e.gamma[1..].windows(2).map(|w| w[0] - w[1]).sum::<f64>() + e.gamma.last().unwrap();
        prop_assert!((tele - e.gamma[1]).abs() < 1e-12);
    }
}
