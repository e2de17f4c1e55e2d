//! Logistic ODE against its discretization.

use blockspin::dynamics::{
    bifurcation_scan, detect_cycle, map_orbit, ode_samples, ode_solution, Cycle, CycleConfig, LogisticParams,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rk4(p: &LogisticParams, n0: f64, t: f64, steps: usize) -> f64 {
    let f = |n: f64| p.r * (1.0 - n / p.k) * n;
    let h = t / steps as f64;
    let mut n = n0;
    for _ in 0..steps {
        let k1 = f(n);
        let k2 = f(n + 0.5 * h * k1);
        let k3 = f(n + 0.5 * h * k2);
        let k4 = f(n + h * k3);
        n += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    n
}

#[test]
fn closed_form_matches_rk4() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..20 {
        let p = LogisticParams::new(rng.gen_range(0.1..3.0), rng.gen_range(0.5..5.0), 0.1).unwrap();
        let n0 = rng.gen_range(0.01..2.0 * p.k);
        let t = rng.gen_range(0.5..5.0);
        let exact = ode_solution(&p, n0, t).unwrap();
        let num = rk4(&p, n0, t, 20_000);
        assert!((exact - num).abs() < 1e-9 * p.k.max(1.0), "{exact} vs {num}");
    }
}

#[test]
fn map_fixed_point_is_carrying_capacity() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let p = LogisticParams::new(
            rng.gen_range(0.01..10.0),
            rng.gen_range(0.01..100.0),
            rng.gen_range(0.001..5.0),
        )
        .unwrap();
        assert!((p.map_fixed_point() - p.k).abs() <= 1e-12 * p.k.max(1.0));
    }
}

#[test]
fn map_converges_to_ode_as_step_shrinks() {
    let (r, k, n0, t) = (1.0, 1.0, 0.1, 2.0);
    let mut errs = Vec::new();
    for steps in [20, 40, 80, 160] {
        let p = LogisticParams::new(r, k, t / steps as f64).unwrap();
        let orbit = map_orbit(p.mu(), p.kappa(), n0, steps);
        errs.push((orbit[steps] - ode_solution(&p, n0, t).unwrap()).abs());
    }
    for w in errs.windows(2) {
        let ratio = w[0] / w[1];
        assert!(ratio > 1.8 && ratio < 2.2, "{errs:?}");
    }
}

#[test]
fn large_steps_period_double_while_ode_is_monotone() {
    let p = LogisticParams::new(2.2, 1.0, 1.0).unwrap();
    let orbit = map_orbit(p.mu(), p.kappa(), 0.1, 1280);
    assert!(matches!(detect_cycle(&orbit, CycleConfig::default()), Cycle::Period(k) if k >= 2));
    let ode = ode_samples(&p, 0.1, 1280).unwrap();
    assert!(ode.windows(2).all(|w| w[1] >= w[0]));

    let small = LogisticParams::new(2.2, 1.0, 0.1).unwrap();
    let orbit = map_orbit(small.mu(), small.kappa(), 0.1, 1280);
    assert_eq!(detect_cycle(&orbit, CycleConfig::default()), Cycle::Fixed);
}

#[test]
fn bifurcation_scan_regimes() {
    let scan = bifurcation_scan(2.8, 3.5, 3, 0.2, CycleConfig::default()).unwrap();
    assert_eq!(scan[0].cycle, Cycle::Fixed);
    assert_eq!(scan[1].cycle, Cycle::Period(2));
    assert_eq!(scan[1].values.len(), 2);
    assert_eq!(scan[2].cycle, Cycle::Period(4));
    let chaotic = bifurcation_scan(3.9, 3.9, 1, 0.2, CycleConfig::default()).unwrap();
    assert_eq!(chaotic[0].cycle, Cycle::AperiodicWithinWindow);
    assert!(bifurcation_scan(3.0, 2.0, 4, 0.2, CycleConfig::default()).is_err());
    assert!(bifurcation_scan(2.0, 3.0, 0, 0.2, CycleConfig::default()).is_err());
}
