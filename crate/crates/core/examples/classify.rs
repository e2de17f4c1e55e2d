//! Level-by-level decoding of Pauli errors on two levels of the concatenated
//! five-qubit code (25 qubits).

use blockspin::codes::StabilizerCode;
use blockspin::pauli::{Pauli, PauliKind};
use blockspin::renorm::classify_error;

fn sparse(ops: &[(usize, PauliKind)]) -> Pauli {
    let mut kinds = vec![PauliKind::I; 25];
    for &(q, k) in ops {
        kinds[q] = k;
    }
    Pauli::from_kinds(&kinds)
}

fn main() {
    use PauliKind::*;
    let code = StabilizerCode::five_qubit();
    let cases = [
        ("X on qubit 7", sparse(&[(7, X)])),
        ("X X in block 0", sparse(&[(0, X), (1, X)])),
        ("XX and ZZ in two blocks", sparse(&[(0, X), (1, X), (5, Z), (6, Z)])),
        (
            "one error per block",
            sparse(&[(0, X), (6, Y), (12, Z), (18, X), (24, Y)]),
        ),
    ];
    for (name, e) in cases {
        let c = classify_error(&code, 2, &e).unwrap();
        let trail: Vec<String> = c.residuals.iter().map(|r| r.to_string()).collect();
        println!(
            "{name:<22} {e}\n  residuals {}  correctable: {}",
            trail.join(" -> "),
            c.correctable
        );
    }
}
