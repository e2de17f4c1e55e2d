//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::Instant;

use blockspin::cli::run_with;
use blockspin::codes::{StabilizerCode, TileHamiltonian};
use blockspin::dense::{basis_index, pauli_matrix, CVector};
use blockspin::dfs::{collective_generators, decompose};
use blockspin::dynamics::{detect_cycle, map_orbit, ode_samples, ode_solution, Cycle, CycleConfig, LogisticParams};
use blockspin::pauli::{paulis_of_weight, Pauli, PauliKind};
use blockspin::renorm::{
    effective_channel, linearize, memory_support, order_parameter, sample_effective_channel, threshold, FlowConfig,
    MemorySupport, PauliChannel, THRESHOLD_WIDTH,
};
use blockspin::tiling::{brick_tiling, plus_tiling, validate_tiling, Handedness};
use blockspin::toric::{check_rescaling, swap_generating_set, ToricState};
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn p(s: &str) -> Pauli {
    s.parse().unwrap()
}

fn random_pauli(n: usize, rng: &mut ChaCha8Rng) -> Pauli {
    let kinds: Vec<PauliKind> = (0..n).map(|_| PauliKind::ALL[rng.gen_range(0..4)]).collect();
    Pauli::from_kinds(&kinds).with_phase(rng.gen_range(0..4))
}

fn pauli_algebra() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut failures = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=5);
        let (a, b) = (random_pauli(n, &mut rng), random_pauli(n, &mut rng));
        let dense = pauli_matrix(&a) * pauli_matrix(&b);
        if (dense - pauli_matrix(&(&a * &b))).norm() > 1e-12 {
            failures += 1;
        }
    }
    ensure!(failures == 0, "{failures} of 1000 products disagree");
    Ok(())
}

fn sign_identities() -> Check {
    let code = StabilizerCode::five_qubit();
    let m = code.generators();
    let (xbar, zbar) = (&code.logical_x()[0], &code.logical_z()[0]);
    let a = &(&m[0] * &m[1]) * xbar;
    let b = &(&(&m[0] * &m[1]) * &m[3]) * zbar;
    ensure!(a == p("-ZXZII"), "M1 M2 Xbar = {a}");
    ensure!(b == p("-IZIXX"), "M1 M2 M4 Zbar = {b}");
    Ok(())
}

fn codeword() -> Check {
    let v = StabilizerCode::five_qubit().encode_zero().map_err(|e| e.to_string())?;
    let plus = ["00000", "10010", "01001", "10100", "01010", "00101"];
    let minus = [
        "11011", "00110", "11000", "11101", "00011", "11110", "01111", "10001", "01100", "10111",
    ];
    let mut expected = CVector::zeros(32);
    for s in plus {
        expected[basis_index(s)] = Complex64::new(0.25, 0.0);
    }
    for s in minus {
        expected[basis_index(s)] = Complex64::new(-0.25, 0.0);
    }
    let err = (v - expected).norm();
    ensure!(err < 1e-12, "amplitude error {err:e}");
    Ok(())
}

fn syndromes() -> Check {
    let code = StabilizerCode::five_qubit();
    let mut s: Vec<String> = paulis_of_weight(5, 1)
        .iter()
        .map(|e| code.syndrome(e).to_string())
        .collect();
    s.sort();
    s.dedup();
    ensure!(s.len() == 15, "{} distinct syndromes", s.len());
    ensure!(
        !s.contains(&"0000".to_string()),
        "a weight-1 error has trivial syndrome"
    );
    Ok(())
}

fn tile_hamiltonian() -> Check {
    let h = TileHamiltonian::for_code(&StabilizerCode::five_qubit(), vec![1.0; 4]).map_err(|e| e.to_string())?;
    let (ground, deg) = h.spectrum(1e-10).map_err(|e| e.to_string())?;
    ensure!((ground + 4.0).abs() < 1e-10, "ground energy {ground}");
    ensure!(deg == 2, "degeneracy {deg}");
    Ok(())
}

fn tilings() -> Check {
    let plus = plus_tiling(5, Handedness::Right).map_err(|e| e.to_string())?;
    let brick = brick_tiling(5).map_err(|e| e.to_string())?;
    ensure!(plus.centers() == brick.centers(), "center sets differ");
    for t in [&plus, &brick] {
        let r = validate_tiling(t).map_err(|e| e.to_string())?;
        ensure!(r.exact_cover, "not an exact cover");
        ensure!((r.rescale - 5f64.sqrt()).abs() < 1e-12, "rescale {}", r.rescale);
        ensure!((r.rotation - 0.5f64.atan()).abs() < 1e-12, "rotation {}", r.rotation);
    }
    Ok(())
}

fn channel_recursion() -> Check {
    let code = StabilizerCode::five_qubit();
    let eff = |ch: &PauliChannel| effective_channel(&code, ch).map_err(|e| e.to_string());
    ensure!(
        eff(&PauliChannel::identity())? == PauliChannel::identity(),
        "identity is not fixed"
    );
    let u = eff(&PauliChannel::uniform())?;
    ensure!(
        u.probs().iter().all(|&x| (x - 0.25).abs() < 1e-15),
        "uniform maps to {:?}",
        u.probs()
    );

    let pts: Vec<(f64, f64)> = (0..10)
        .map(|i| {
            let p = 1e-4 * 10f64.powf(i as f64 / 9.0);
            let out = effective_channel(&code, &PauliChannel::depolarizing(p).unwrap()).unwrap();
            (p.ln(), out.error_probability().ln())
        })
        .collect();
    let n = pts.len() as f64;
    let (mx, my) = (
        pts.iter().map(|q| q.0).sum::<f64>() / n,
        pts.iter().map(|q| q.1).sum::<f64>() / n,
    );
    let slope =
        pts.iter().map(|q| (q.0 - mx) * (q.1 - my)).sum::<f64>() / pts.iter().map(|q| (q.0 - mx).powi(2)).sum::<f64>();
    ensure!((slope - 2.0).abs() < 0.1, "log-log slope {slope}");

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let samples = 1_000_000;
    for seed in 0..3 {
        let w: [f64; 3] = [rng.gen(), rng.gen(), rng.gen()];
        let total = rng.gen_range(0.05..0.3);
        let s: f64 = w.iter().sum();
        let e = w.map(|x| total * x / s);
        let ch = PauliChannel::new([1.0 - total, e[0], e[1], e[2]]).unwrap();
        let exact = eff(&ch)?.probs();
        let est = sample_effective_channel(&code, &ch, samples, seed)
            .map_err(|e| e.to_string())?
            .probs();
        for k in 0..4 {
            let sigma = (exact[k] * (1.0 - exact[k]) / samples as f64).sqrt();
            ensure!(
                (est[k] - exact[k]).abs() < 4.0 * sigma,
                "Monte Carlo component {k}: {} vs {} (sigma {sigma:e})",
                est[k],
                exact[k]
            );
        }
    }
    Ok(())
}

fn order_and_threshold() -> Check {
    let code = StabilizerCode::five_qubit();
    let cfg = FlowConfig::default();
    let order =
        |p: f64| order_parameter(&code, &PauliChannel::depolarizing(p).unwrap(), cfg).map_err(|e| e.to_string());
    ensure!(order(0.01)? == 1, "order parameter at 0.01 is not 1");
    ensure!(order(0.3)? == 0, "order parameter at 0.3 is not 0");
    let run =
        || threshold(&code, PauliChannel::depolarizing, 0.01, 0.3, THRESHOLD_WIDTH, cfg).map_err(|e| e.to_string());
    let (a, b) = (run()?, run()?);
    ensure!(a.p_star > 0.05 && a.p_star < 0.25, "p* = {}", a.p_star);
    ensure!(a.hi - a.lo < THRESHOLD_WIDTH, "bracket width {}", a.hi - a.lo);
    ensure!(
        (a.p_star - b.p_star).abs() < THRESHOLD_WIDTH,
        "runs differ: {} vs {}",
        a.p_star,
        b.p_star
    );
    let id = linearize(&code, &PauliChannel::identity(), 1e-6).map_err(|e| e.to_string())?;
    ensure!(id.iter().all(|e| e.magnitude < 1e-4), "identity Jacobian {:?}", id);
    let star = linearize(&code, &PauliChannel::depolarizing(a.p_star).unwrap(), 1e-6).map_err(|e| e.to_string())?;
    ensure!(star.iter().any(|e| e.magnitude > 1.0), "no relevant direction at p*");
    Ok(())
}

fn memory() -> Check {
    let code = StabilizerCode::five_qubit();
    let cfg = FlowConfig::default();
    let support = |ch: &PauliChannel, eps: f64, l: u64, d: u32| {
        memory_support(&code, ch, eps, l, d, cfg).map_err(|e| e.to_string())
    };
    let below = PauliChannel::depolarizing(0.01).unwrap();
    ensure!(
        support(&below, 0.5, 4, 2)? == MemorySupport::Infinite,
        "finite below threshold"
    );
    for (l, d) in [(1, 1), (3, 2), (4, 3)] {
        let got = support(&PauliChannel::uniform(), 0.5, l, d)?;
        let want = MemorySupport::Finite {
            r_star: 0,
            size: (l as u128).pow(d),
        };
        ensure!(got == want, "uniform channel, L={l}, d={d}: {got:?}");
    }
    let above = PauliChannel::depolarizing(0.14).unwrap();
    let mut last = usize::MAX;
    for i in 1..20 {
        let eps = i as f64 * 0.05;
        match support(&above, eps, 4, 2)? {
            MemorySupport::Finite { r_star, size } => {
                ensure!(size == 5u128.pow(r_star as u32) * 16, "size {size} at r* = {r_star}");
                ensure!(r_star <= last, "r* increased with epsilon at {eps}");
                last = r_star;
            }
            MemorySupport::Infinite => return Err(format!("infinite above threshold at epsilon {eps}")),
        }
    }
    Ok(())
}

fn toric() -> Check {
    let state = ToricState::new(5).map_err(|e| e.to_string())?;
    let check = check_rescaling(&state).map_err(|e| e.to_string())?;
    ensure!(check.passed(), "rescaled generators: {check:?}");
    let big = state.rescaled_site(0, 0).map_err(|e| e.to_string())?;
    let swapped = swap_generating_set(state.group(), &state.layout().site(1, 1), &big).map_err(|e| e.to_string())?;
    ensure!(
        swapped.canonicalize() == state.group().canonicalize(),
        "swap changed the canonical form"
    );
    let single = state.block_entropy(&[0]).map_err(|e| e.to_string())?;
    let plaq = state
        .block_entropy(&state.layout().plaquette_edges(2, 2))
        .map_err(|e| e.to_string())?;
    ensure!(single == 1, "single-edge entropy {single}");
    ensure!(plaq == 3, "plaquette entropy {plaq}");
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut edges: Vec<usize> = (0..state.num_edges()).collect();
    for _ in 0..50 {
        edges.shuffle(&mut rng);
        let (a, b) = edges.split_at(rng.gen_range(1..edges.len()));
        let (sa, sb) = (state.block_entropy(a).unwrap(), state.block_entropy(b).unwrap());
        ensure!(sa == sb, "S(A) = {sa}, S(complement) = {sb}");
    }
    Ok(())
}

fn dfs() -> Check {
    for (n, want) in [(3, vec![(4, 1), (2, 2)]), (4, vec![(5, 1), (3, 3), (1, 2)])] {
        let ops = collective_generators(n).map_err(|e| e.to_string())?;
        let dec = decompose(&ops, 1).map_err(|e| e.to_string())?;
        ensure!(dec.shape() == want, "{n} qubits: blocks {:?}", dec.shape());
        ensure!(
            dec.identities_hold(),
            "{n} qubits: dimension identities fail: {:?}",
            dec.dimension_sums()
        );
        let (off, inside) = dec.residuals(&ops);
        ensure!(off < 1e-8 && inside < 1e-8, "{n} qubits: residuals {off:e}, {inside:e}");
    }
    Ok(())
}

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

fn logistic() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let p = LogisticParams::new(
            rng.gen_range(0.01..10.0),
            rng.gen_range(0.01..100.0),
            rng.gen_range(0.001..5.0),
        )
        .map_err(|e| e.to_string())?;
        let fp = p.map_fixed_point();
        ensure!(
            (fp - p.k).abs() <= 1e-12 * p.k.max(1.0),
            "kappa(1 - 1/mu) = {fp}, K = {}",
            p.k
        );
    }
    for _ in 0..10 {
        let p = LogisticParams::new(rng.gen_range(0.1..3.0), rng.gen_range(0.5..5.0), 0.1).unwrap();
        let n0 = rng.gen_range(0.01..2.0 * p.k);
        let t = rng.gen_range(0.5..5.0);
        let (exact, num) = (ode_solution(&p, n0, t).unwrap(), rk4(&p, n0, t, 20_000));
        ensure!(
            (exact - num).abs() < 1e-9 * p.k.max(1.0),
            "closed form {exact} vs integrator {num}"
        );
    }
    let p = LogisticParams::new(2.2, 1.0, 1.0).unwrap();
    let orbit = map_orbit(p.mu(), p.kappa(), 0.1, 1280);
    let cycle = detect_cycle(&orbit, CycleConfig::default());
    ensure!(
        matches!(cycle, Cycle::Period(k) if k >= 2),
        "map at mu = {} is {cycle}",
        p.mu()
    );
    let ode = ode_samples(&p, 0.1, 1280).unwrap();
    ensure!(ode.windows(2).all(|w| w[1] >= w[0]), "ODE trajectory is not monotone");
    Ok(())
}

fn cli_determinism() -> Check {
    let invocations: [(&str, &[&str]); 3] = [
        ("code_five_qubit.json", &["code", "--code", "five-qubit"]),
        (
            "flow_depolarizing.csv",
            &[
                "--format",
                "csv",
                "channel-flow",
                "--code",
                "five-qubit",
                "--depolarizing",
                "0.05",
            ],
        ),
        ("tiling_plus.svg", &["--format", "svg", "tiling", "--plus", "--L", "5"]),
    ];
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for (file, args) in invocations {
        let once = || {
            let (mut out, mut err) = (Vec::new(), Vec::new());
            let code = run_with(
                std::iter::once("blockspin").chain(args.iter().copied()),
                &mut out,
                &mut err,
            );
            (code, out)
        };
        let (a, b) = (once(), once());
        ensure!(a.0 == 0 && b.0 == 0, "{file}: exit codes {} and {}", a.0, b.0);
        ensure!(a.1 == b.1, "{file}: two runs differ");
        let stored = std::fs::read(dir.join(file)).map_err(|e| format!("{file}: {e}"))?;
        ensure!(a.1 == stored, "{file}: output differs from the golden file");
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("pauli algebra matches dense products", pauli_algebra),
        ("five-qubit sign identities", sign_identities),
        ("logical zero codeword amplitudes", codeword),
        ("weight-one syndromes are a bijection", syndromes),
        ("tile-Hamiltonian ground space", tile_hamiltonian),
        ("plus and brick tilings", tilings),
        ("channel recursion", channel_recursion),
        ("order parameter and threshold", order_and_threshold),
        ("memory support", memory),
        ("toric rescaling and entropies", toric),
        ("collective-noise decompositions", dfs),
        ("logistic ODE and map", logistic),
        ("CLI determinism", cli_determinism),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into());
            Err(format!("panic: {msg}"))
        });
        let secs = t.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("PASS {:>2} {name} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
