//! The logistic ODE against its forward-difference map, which shares the
//! ODE's fixed points but period-doubles once the step is large.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynamicsError {
    #[error("{name} must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("initial population must be nonnegative, got {0}")]
    NegativePopulation(f64),
    #[error("scan needs at least one point and mu_min <= mu_max")]
    EmptyScan,
}

fn positive(name: &'static str, value: f64) -> Result<f64, DynamicsError> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(DynamicsError::NonPositive { name, value })
    }
}

/// `dN/dt = r (1 − N/K) N` and its step-`Δt` discretization
/// `N' = μ (1 − N/κ) N` with `μ = 1 + rΔt`, `κ = (1 + rΔt) K / (rΔt)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogisticParams {
    pub r: f64,
    pub k: f64,
    pub dt: f64,
}

impl LogisticParams {
    pub fn new(r: f64, k: f64, dt: f64) -> Result<Self, DynamicsError> {
        Ok(Self {
            r: positive("r", r)?,
            k: positive("K", k)?,
            dt: positive("dt", dt)?,
        })
    }

    pub fn mu(&self) -> f64 {
        1.0 + self.r * self.dt
    }

    pub fn kappa(&self) -> f64 {
        (1.0 + self.r * self.dt) * self.k / (self.r * self.dt)
    }

    /// Nonzero fixed point of the map, `κ(1 − 1/μ)`; equals `K`.
    pub fn map_fixed_point(&self) -> f64 {
        self.kappa() * (1.0 - 1.0 / self.mu())
    }
}

/// Closed-form solution `K N₀ e^{rt} / (K + N₀(e^{rt} − 1))`.
pub fn ode_solution(p: &LogisticParams, n0: f64, t: f64) -> Result<f64, DynamicsError> {
    if !(n0 >= 0.0) {
        return Err(DynamicsError::NegativePopulation(n0));
    }
    if n0 == 0.0 {
        return Ok(0.0);
    }
    // e^{-rt} form stays finite for large t
    let decay = (-p.r * t).exp();
    Ok(p.k * n0 / (n0 + (p.k - n0) * decay))
}

/// ODE sampled at `t = 0, Δt, 2Δt, …`.
pub fn ode_samples(p: &LogisticParams, n0: f64, steps: usize) -> Result<Vec<f64>, DynamicsError> {
    (0..=steps).map(|i| ode_solution(p, n0, i as f64 * p.dt)).collect()
}

/// `N_0, …, N_steps` of `N' = μ (1 − N/κ) N`.
pub fn map_orbit(mu: f64, kappa: f64, n0: f64, steps: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(steps + 1);
    let mut n = n0;
    out.push(n);
    for _ in 0..steps {
        n = mu * (1.0 - n / kappa) * n;
        out.push(n);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CycleConfig {
    pub tol: f64,
    pub transient: usize,
    pub window: usize,
}

impl Default for CycleConfig {
    fn default() -> Self {
        Self {
            tol: 1e-9,
            transient: 256,
            window: 1024,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "period", rename_all = "kebab-case")]
pub enum Cycle {
    Fixed,
    Period(usize),
    AperiodicWithinWindow,
}

impl std::fmt::Display for Cycle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cycle::Fixed => f.write_str("fixed"),
            Cycle::Period(k) => write!(f, "period-{k}"),
            Cycle::AperiodicWithinWindow => f.write_str("aperiodic-within-window"),
        }
    }
}

/// Smallest period `k ≤ window/4` of the orbit's tail (after discarding the
/// transient, at most `window` points) within `tol`.
pub fn detect_cycle(orbit: &[f64], config: CycleConfig) -> Cycle {
    let start = config.transient.min(orbit.len());
    let mut tail = &orbit[start..];
    if tail.len() > config.window {
        tail = &tail[tail.len() - config.window..];
    }
    let max_k = tail.len() / 4;
    for k in 1..=max_k {
        if (0..tail.len() - k).all(|i| (tail[i + k] - tail[i]).abs() < config.tol) {
            return if k == 1 { Cycle::Fixed } else { Cycle::Period(k) };
        }
    }
    Cycle::AperiodicWithinWindow
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BifurcationPoint {
    pub mu: f64,
    pub cycle: Cycle,
    /// Distinct tail values (up to the cycle tolerance), ascending.
    pub values: Vec<f64>,
}

/// Scans `points` evenly spaced `μ ∈ [mu_min, mu_max]` with `κ = 1`.
pub fn bifurcation_scan(
    mu_min: f64,
    mu_max: f64,
    points: usize,
    n0: f64,
    config: CycleConfig,
) -> Result<Vec<BifurcationPoint>, DynamicsError> {
    if points == 0 || !(mu_min <= mu_max) {
        return Err(DynamicsError::EmptyScan);
    }
    let steps = config.transient + config.window;
    Ok((0..points)
        .map(|i| {
            let mu = if points == 1 {
                mu_min
            } else {
                mu_min + (mu_max - mu_min) * i as f64 / (points - 1) as f64
            };
            let orbit = map_orbit(mu, 1.0, n0, steps);
            let cycle = detect_cycle(&orbit, config);
            let take = match cycle {
                Cycle::Fixed => 1,
                Cycle::Period(k) => k,
                Cycle::AperiodicWithinWindow => 64,
            };
            let mut values: Vec<f64> = orbit[orbit.len() - take..].to_vec();
            values.sort_by(f64::total_cmp);
            values.dedup_by(|a, b| (*a - *b).abs() < config.tol);
            BifurcationPoint { mu, cycle, values }
        })
        .collect())
}

/// CSV `n,N` for an orbit.
pub fn orbit_csv(orbit: &[f64]) -> String {
    let mut out = String::from("n,N\n");
    for (i, v) in orbit.iter().enumerate() {
        out.push_str(&format!("{i},{v:.17e}\n"));
    }
    out
}

/// CSV `mu,cycle,value`, one row per tail value.
pub fn bifurcation_csv(scan: &[BifurcationPoint]) -> String {
    let mut out = String::from("mu,cycle,value\n");
    for p in scan {
        for v in &p.values {
            out.push_str(&format!("{:.17e},{},{v:.17e}\n", p.mu, p.cycle));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nonpositive_parameters() {
        assert!(LogisticParams::new(1.0, 1.0, 0.0).is_err());
        assert!(LogisticParams::new(-1.0, 1.0, 0.1).is_err());
        assert!(LogisticParams::new(1.0, f64::NAN, 0.1).is_err());
    }

    #[test]
    fn ode_fixed_points() {
        let p = LogisticParams::new(1.3, 2.0, 0.1).unwrap();
        assert_eq!(ode_solution(&p, 0.0, 7.0).unwrap(), 0.0);
        assert!((ode_solution(&p, 2.0, 7.0).unwrap() - 2.0).abs() < 1e-15);
        assert!(ode_solution(&p, -1.0, 1.0).is_err());
    }

    #[test]
    fn simple_cycles() {
        let c = CycleConfig::default();
        assert_eq!(detect_cycle(&[0.5; 2000], c), Cycle::Fixed);
        let alt: Vec<f64> = (0..2000).map(|i| if i % 2 == 0 { 0.2 } else { 0.7 }).collect();
        assert_eq!(detect_cycle(&alt, c), Cycle::Period(2));
        assert_eq!(map_orbit(3.0, 1.0, 0.0, 5), vec![0.0; 6]);
    }

    #[test]
    fn period_two_above_three() {
        let orbit = map_orbit(3.2, 1.0, 0.1, 2000);
        assert_eq!(detect_cycle(&orbit, CycleConfig::default()), Cycle::Period(2));
    }
}
