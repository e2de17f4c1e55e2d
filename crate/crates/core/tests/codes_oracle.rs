//! Symplectic Pauli arithmetic and code routines checked against dense
//! matrices.

use blockspin::clifford::Clifford;
use blockspin::codes::{check_correctable, CodeDocument, StabilizerCode, TileHamiltonian};
use blockspin::dense::{self, basis_index, pauli_matrix, CMatrix, CVector};
use blockspin::pauli::{paulis_of_weight, Pauli, PauliKind};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn p(s: &str) -> Pauli {
    s.parse().unwrap()
}

fn random_pauli(n: usize, rng: &mut ChaCha8Rng) -> Pauli {
    let kinds: Vec<PauliKind> = (0..n).map(|_| PauliKind::ALL[rng.gen_range(0..4)]).collect();
    Pauli::from_kinds(&kinds).with_phase(rng.gen_range(0..4))
}

#[test]
fn products_match_dense_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=5);
        let (a, b) = (random_pauli(n, &mut rng), random_pauli(n, &mut rng));
        let dense_product = pauli_matrix(&a) * pauli_matrix(&b);
        assert!((dense_product - pauli_matrix(&(&a * &b))).norm() < 1e-12, "{a} * {b}");
        let (ma, mb) = (pauli_matrix(&a), pauli_matrix(&b));
        let commutator = &ma * &mb - &mb * &ma;
        assert_eq!(a.commutes_with(&b), commutator.norm() < 1e-12);
    }
}

#[test]
fn mismatched_lengths_are_errors() {
    assert!(p("XZ").try_mul(&p("XZY")).is_err());
    assert!(blockspin::pauli::commutes(&p("X"), &p("XX")).is_err());
    assert!("XQ".parse::<Pauli>().is_err());
}

#[test]
fn five_qubit_sign_identities() {
    let code = StabilizerCode::five_qubit();
    let m = code.generators();
    let xbar = &code.logical_x()[0];
    let zbar = &code.logical_z()[0];
    assert_eq!(&(&m[0] * &m[1]) * xbar, p("-ZXZII"));
    assert_eq!(&(&(&m[0] * &m[1]) * &m[3]) * zbar, p("-IZIXX"));
    assert_eq!(&m[0] * &m[1], p("YIYXX"));
}

#[test]
fn five_qubit_zero_codeword() {
    let v = StabilizerCode::five_qubit().encode_zero().unwrap();
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
    assert!((v - expected).norm() < 1e-12);
}

#[test]
fn weight_one_syndromes_are_a_bijection() {
    let code = StabilizerCode::five_qubit();
    let mut seen: Vec<String> = paulis_of_weight(5, 1)
        .iter()
        .map(|e| code.syndrome(e).to_string())
        .collect();
    assert_eq!(seen.len(), 15);
    seen.sort();
    seen.dedup();
    assert_eq!(seen.len(), 15);
    assert!(!seen.contains(&"0000".to_string()));
}

/// Dense Knill–Laflamme test: `⟨i|E_a† E_b|j⟩ = c_ab δ_ij` on the code basis.
fn dense_kl(code: &StabilizerCode, errors: &[Pauli]) -> bool {
    let zero = code.encode(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)).unwrap();
    let one = code.encode(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)).unwrap();
    let basis = [zero, one];
    for ea in errors {
        for eb in errors {
            let m = pauli_matrix(ea).adjoint() * pauli_matrix(eb);
            let g = |i: usize, j: usize| basis[i].dotc(&(&m * &basis[j]));
            if g(0, 1).norm() > 1e-10 || g(1, 0).norm() > 1e-10 || (g(0, 0) - g(1, 1)).norm() > 1e-10 {
                return false;
            }
        }
    }
    true
}

#[test]
fn correctability_matches_dense_oracle() {
    let code = StabilizerCode::five_qubit();
    let mut singles = vec![Pauli::identity(5)];
    singles.extend(paulis_of_weight(5, 1));
    assert!(check_correctable(&code, &singles).is_correctable());
    assert!(dense_kl(&code, &singles));

    let doubles = vec![Pauli::identity(5), p("XXIII"), p("IIIZI")];
    assert_eq!(
        check_correctable(&code, &doubles).is_correctable(),
        dense_kl(&code, &doubles)
    );
    assert!(!dense_kl(&code, &doubles));

    let steane = StabilizerCode::steane();
    let mut xs = vec![Pauli::identity(7)];
    xs.extend((0..7).map(|q| Pauli::single(7, q, PauliKind::X).unwrap()));
    xs.extend((0..7).map(|q| Pauli::single(7, q, PauliKind::Z).unwrap()));
    assert_eq!(check_correctable(&steane, &xs).is_correctable(), dense_kl(&steane, &xs));
}

fn assert_decodes(code: &StabilizerCode) {
    let n = code.num_qubits();
    let u = code.synthesize_decoder().unwrap().to_dense().unwrap();
    let (alpha, beta) = (Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8));
    let encoded = code.encode(alpha, beta).unwrap();
    let decoded = &u * encoded;
    let mut expected = CVector::zeros(1 << n);
    expected[0] = alpha;
    expected[1 << (n - 1)] = beta;
    assert!((dense::overlap_abs(&expected, &decoded) - 1.0).abs() < 1e-10, "n = {n}");
}

#[test]
fn decoder_round_trip() {
    assert_decodes(&StabilizerCode::five_qubit());
    assert_decodes(&StabilizerCode::steane());
    assert_decodes(&StabilizerCode::shor());
}

#[test]
fn decoder_maps_checks_to_ancilla_z() {
    let code = StabilizerCode::five_qubit();
    let dec = code.synthesize_decoder().unwrap();
    for (i, g) in code.generators().iter().enumerate() {
        assert_eq!(dec.conjugate(g), Pauli::single(5, i + 1, PauliKind::Z).unwrap());
    }
    assert_eq!(dec.conjugate(&code.logical_x()[0]), p("XIIII"));
    assert_eq!(dec.conjugate(&code.logical_z()[0]), p("ZIIII"));
}

#[test]
fn embedded_conjugation_matches_dense() {
    let dec: Clifford = StabilizerCode::five_qubit().synthesize_decoder().unwrap();
    let u5 = dec.to_dense().unwrap();
    let id = |k: usize| CMatrix::identity(1 << k, 1 << k);
    let full = id(2).kronecker(&u5).kronecker(&id(1));
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..50 {
        let q = random_pauli(8, &mut rng);
        let lhs = &full * pauli_matrix(&q) * full.adjoint();
        let rhs = pauli_matrix(&dec.conjugate_embedded(&q, 2));
        assert!((lhs - rhs).norm() < 1e-9, "{q}");
    }
}

#[test]
fn tile_hamiltonian_spectrum() {
    let code = StabilizerCode::five_qubit();
    let (ground, degeneracy) = TileHamiltonian::for_code(&code, vec![1.0; 4])
        .unwrap()
        .spectrum(1e-10)
        .unwrap();
    assert!((ground + 4.0).abs() < 1e-10);
    assert_eq!(degeneracy, 2);
    let k = vec![0.3, 1.7, 2.2, 0.9];
    let h = TileHamiltonian::for_code(&code, k.clone()).unwrap();
    let (ground, degeneracy) = h.spectrum(1e-10).unwrap();
    assert!((ground + k.iter().sum::<f64>()).abs() < 1e-10);
    assert_eq!(degeneracy, 2);
    assert!(TileHamiltonian::for_code(&code, vec![1.0, 0.0, 1.0, 1.0]).is_err());
    assert!(TileHamiltonian::new(vec![1.0, 1.0], vec![p("XI"), p("ZI")]).is_err());
}

#[test]
fn ground_space_is_the_code_space() {
    let code = StabilizerCode::five_qubit();
    let h = TileHamiltonian::for_code(&code, vec![1.0; 4])
        .unwrap()
        .matrix()
        .unwrap();
    for (a, b) in [(1.0, 0.0), (0.0, 1.0), (0.6, 0.8)] {
        let v = code.encode(Complex64::new(a, 0.0), Complex64::new(b, 0.0)).unwrap();
        let hv = &h * &v;
        assert!((hv + v * Complex64::new(4.0, 0.0)).norm() < 1e-10);
    }
}

#[test]
fn code_document_round_trip() {
    for code in [
        StabilizerCode::five_qubit(),
        StabilizerCode::steane(),
        StabilizerCode::toric(3).unwrap(),
    ] {
        let doc = code.to_document();
        let text = serde_json::to_string(&doc).unwrap();
        let back: CodeDocument = serde_json::from_str(&text).unwrap();
        let again = StabilizerCode::from_document(&back).unwrap();
        assert_eq!(again.to_document(), doc);
    }
}

#[test]
fn rejects_inconsistent_documents() {
    let mut doc = StabilizerCode::five_qubit().to_document();
    doc.recovery.insert("1000".into(), "ZIIII".into());
    assert!(StabilizerCode::from_document(&doc).is_err());
    let mut doc = StabilizerCode::five_qubit().to_document();
    doc.logical_x = vec!["ZZZZZ".into()];
    assert!(StabilizerCode::from_document(&doc).is_err());
}

#[test]
fn recovery_is_minimum_weight() {
    for code in [
        StabilizerCode::five_qubit(),
        StabilizerCode::steane(),
        StabilizerCode::shor(),
    ] {
        let n = code.num_qubits();
        for w in 0..=1 {
            for e in paulis_of_weight(n, w) {
                let r = code.recovery(&code.syndrome(&e)).unwrap();
                assert!(r.weight() <= e.weight());
                let residual = code.correct(&e).unwrap();
                assert_eq!(code.logical_class(&residual, 0), PauliKind::I, "{e}");
            }
        }
    }
}

#[test]
fn toric_code_parameters() {
    for l in [2, 3, 4] {
        let code = StabilizerCode::toric(l).unwrap();
        assert_eq!(code.num_qubits(), 2 * l * l);
        assert_eq!(code.num_logical(), 2);
        assert_eq!(code.stabilizer().rank(), 2 * l * l - 2);
    }
    assert!(StabilizerCode::toric(1).is_err());
}
