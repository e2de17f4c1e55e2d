//! Synthesizes the Clifford decoder that moves the logical qubit onto qubit 0
//! and every check onto an ancilla `Z`, then runs it on a dense state.

use blockspin::codes::StabilizerCode;
use blockspin::dense;
use num_complex::Complex64;

fn main() {
    for code in [StabilizerCode::five_qubit(), StabilizerCode::steane()] {
        let n = code.num_qubits();
        let dec = code.synthesize_decoder().unwrap();
        println!("[[{n}, 1]] code");
        for g in code.generators() {
            println!("  {g} -> {}", dec.conjugate(g));
        }
        println!("  Xbar -> {}", dec.conjugate(&code.logical_x()[0]));
        println!("  Zbar -> {}", dec.conjugate(&code.logical_z()[0]));

        let (alpha, beta) = (Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8));
        let u = dec.to_dense().unwrap();
        let out = &u * code.encode(alpha, beta).unwrap();
        let mut want = dense::basis_state(n, 0) * alpha;
        want += dense::basis_state(n, 1 << (n - 1)) * beta;
        println!(
            "  |<psi (x) 0..0 | U |psi_L>| = {:.12}\n",
            dense::overlap_abs(&want, &out)
        );
    }
}
