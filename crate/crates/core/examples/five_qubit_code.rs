//! The five-qubit code: checks, syndromes, the logical-zero codeword and the
//! tile-Hamiltonian whose ground space is the code space.
//!
//! ```text
//! cargo run --example five_qubit_code
//! ```

use blockspin::codes::{check_correctable, StabilizerCode, TileHamiltonian};
use blockspin::pauli::{paulis_of_weight, Pauli};

fn main() {
    let code = StabilizerCode::five_qubit();
    println!("checks:");
    for (i, g) in code.generators().iter().enumerate() {
        println!("  M{} = {g}", i + 1);
    }
    println!("Xbar = {}  Zbar = {}", code.logical_x()[0], code.logical_z()[0]);

    println!("\nsingle-qubit errors and their syndromes:");
    for e in paulis_of_weight(5, 1) {
        let s = code.syndrome(&e);
        println!("  {e}  {s}  -> {}", code.recovery(&s).unwrap());
    }

    let mut errors = vec![Pauli::identity(5)];
    errors.extend(paulis_of_weight(5, 1));
    println!(
        "\ncorrects all weight-1 errors: {}",
        check_correctable(&code, &errors).is_correctable()
    );

    let v = code.encode_zero().unwrap();
    println!("\n|0_L> =");
    for (i, a) in v.iter().enumerate().filter(|(_, a)| a.norm() > 1e-12) {
        println!("  {:+.2} |{:05b}>", a.re, i);
    }

    // arbitrary positive couplings leave the code space as the ground space
    let h = TileHamiltonian::for_code(&code, vec![1.0, 0.5, 2.0, 1.5]).unwrap();
    let (e0, deg) = h.spectrum(1e-10).unwrap();
    println!("\ntile-Hamiltonian: ground energy {e0:.6}, degeneracy {deg}");
}
