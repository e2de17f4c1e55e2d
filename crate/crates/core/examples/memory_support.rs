//! Quantum epsilon-memory support across the threshold: infinite below it,
//! `5^{r*} L^d` above.

use blockspin::codes::StabilizerCode;
use blockspin::renorm::{memory_support, FlowConfig, MemorySupport, PauliChannel};

fn main() {
    let code = StabilizerCode::five_qubit();
    let (l, d) = (8, 2);
    println!("{:>6} {:>6} {:>12}", "p", "eps", "support");
    for p in [0.05, 0.14, 0.16, 0.25] {
        for eps in [0.1, 0.3, 0.5] {
            let ch = PauliChannel::depolarizing(p).unwrap();
            let s = match memory_support(&code, &ch, eps, l, d, FlowConfig::default()).unwrap() {
                MemorySupport::Infinite => "infinite".to_string(),
                MemorySupport::Finite { r_star, size } => format!("{size} (r*={r_star})"),
            };
            println!("{p:>6} {eps:>6} {s:>12}");
        }
    }
}
