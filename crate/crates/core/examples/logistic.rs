//! The logistic ODE stays monotone while its forward-difference map
//! period-doubles once `r dt` is large.

use blockspin::dynamics::{bifurcation_scan, detect_cycle, map_orbit, ode_solution, CycleConfig, LogisticParams};

fn main() {
    let cfg = CycleConfig::default();
    for dt in [0.1, 0.5, 1.0, 1.2, 1.3] {
        let p = LogisticParams::new(2.2, 1.0, dt).unwrap();
        let orbit = map_orbit(p.mu(), p.kappa(), 0.1, 1280);
        let tail: Vec<String> = orbit[orbit.len() - 4..].iter().map(|v| format!("{v:.4}")).collect();
        println!(
            "dt={dt:<4} mu={:.2} map: {:<10} tail [{}]  ode(N at 20) = {:.6}",
            p.mu(),
            detect_cycle(&orbit, cfg).to_string(),
            tail.join(", "),
            ode_solution(&p, 0.1, 20.0).unwrap()
        );
    }

    println!("\nmu     cycle");
    for pt in bifurcation_scan(2.7, 3.9, 7, 0.2, cfg).unwrap() {
        println!("{:.2}  {}", pt.mu, pt.cycle);
    }
}
