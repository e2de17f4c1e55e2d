//! Iterates the effective-channel map of the five-qubit code on either side
//! of its threshold, then bisects for the threshold and linearizes there.

use blockspin::codes::StabilizerCode;
use blockspin::renorm::{flow, linearize, threshold, FlowConfig, PauliChannel, THRESHOLD_WIDTH};

fn main() {
    let code = StabilizerCode::five_qubit();
    let cfg = FlowConfig::default();

    for p in [0.10, 0.16] {
        let traj = flow(&code, &PauliChannel::depolarizing(p).unwrap(), cfg).unwrap();
        println!("p = {p}: {} after {} levels", traj.verdict, traj.levels.len() - 1);
        for l in traj.levels.iter().take(6) {
            println!(
                "  r={} error={:.3e} q={:+.4}",
                l.r,
                l.channel.error_probability(),
                l.quality
            );
        }
    }

    let t = threshold(&code, PauliChannel::depolarizing, 0.01, 0.3, THRESHOLD_WIDTH, cfg).unwrap();
    println!(
        "\nthreshold p* = {:.6} in [{:.6}, {:.6}] after {} steps",
        t.p_star,
        t.lo,
        t.hi,
        t.steps.len()
    );

    let star = PauliChannel::depolarizing(t.p_star).unwrap();
    for (name, ch) in [
        ("identity", PauliChannel::identity()),
        ("p*", star),
        ("uniform", PauliChannel::uniform()),
    ] {
        let eig = linearize(&code, &ch, 1e-6).unwrap();
        let mags: Vec<String> = eig.iter().map(|e| format!("{:.4}", e.magnitude)).collect();
        println!("  |lambda| at {name}: {}", mags.join(", "));
    }
}
