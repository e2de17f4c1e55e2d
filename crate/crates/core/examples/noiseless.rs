//! Decoherence-free subspaces and noiseless subsystems of collective noise on
//! three and four qubits, and of a single `ZZ` dephasing term.

use blockspin::dfs::{
    collective_generators, decompose, find_noiseless, protected_subsystem_error, OperatorSet, DEFAULT_SEED,
};

fn show(name: &str, ops: &OperatorSet) {
    let dec = decompose(ops, DEFAULT_SEED).unwrap();
    let (off, inside) = dec.residuals(ops);
    println!("{name}: blocks (d, m) = {:?}", dec.shape());
    println!(
        "  dim A = {}, dim A' = {}, dim Z = {}, residuals {off:.1e} / {inside:.1e}",
        dec.algebra_dim, dec.commutant_dim, dec.center_dim
    );
    for n in find_noiseless(&dec) {
        let err = protected_subsystem_error(&dec, ops, n.block, 1);
        println!(
            "  {:?} of dimension {} (irrep {}), drift {err:.1e}",
            n.kind, n.protected_dim, n.irrep_dim
        );
    }
}

fn main() {
    show("collective, 3 qubits", &collective_generators(3).unwrap());
    show("collective, 4 qubits", &collective_generators(4).unwrap());
    show(
        "ZZ dephasing",
        &OperatorSet::from_paulis(&["ZZ".parse().unwrap()]).unwrap(),
    );
}
