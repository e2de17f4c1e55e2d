//! Dense state-vector and matrix helpers for small systems.
//!
//! Basis index convention: qubit 0 is the most significant bit, so the
//! amplitude of `|b_0 b_1 … b_{n-1}⟩` sits at `Σ b_j 2^{n-1-j}`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::pauli::Pauli;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub const MAX_DENSE_QUBITS: usize = 12;

pub fn i_pow(e: u8) -> Complex64 {
    match e % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

fn masks(p: &Pauli) -> (usize, usize) {
    let n = p.num_qubits();
    let mut xm = 0usize;
    let mut zm = 0usize;
    for q in 0..n {
        let bit = 1usize << (n - 1 - q);
        if p.x_bits().get(q) {
            xm |= bit;
        }
        if p.z_bits().get(q) {
            zm |= bit;
        }
    }
    (xm, zm)
}

/// `P |ψ⟩` for `P = i^e X^a Z^b`: `|v⟩ ↦ i^e (-1)^{b·v} |v ⊕ a⟩`.
pub fn apply_pauli(p: &Pauli, state: &CVector) -> CVector {
    let n = p.num_qubits();
    assert_eq!(state.len(), 1usize << n, "state dimension mismatch");
    let (xm, zm) = masks(p);
    let global = i_pow(p.phase_exp());
    let mut out = CVector::zeros(state.len());
    for (v, amp) in state.iter().enumerate() {
        let sign = if (v & zm).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        out[v ^ xm] = global * sign * amp;
    }
    out
}

/// Dense `2^n × 2^n` matrix of a Pauli.
pub fn pauli_matrix(p: &Pauli) -> CMatrix {
    let n = p.num_qubits();
    let dim = 1usize << n;
    let (xm, zm) = masks(p);
    let global = i_pow(p.phase_exp());
    let mut m = CMatrix::zeros(dim, dim);
    for v in 0..dim {
        let sign = if (v & zm).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        m[(v ^ xm, v)] = global * sign;
    }
    m
}

/// Computational basis state `|index⟩`.
pub fn basis_state(n: usize, index: usize) -> CVector {
    let mut v = CVector::zeros(1usize << n);
    v[index] = Complex64::new(1.0, 0.0);
    v
}

/// Applies `Π (1 + g_i)/2` to `state`.
pub fn project_onto_stabilizers(gens: &[Pauli], state: &CVector) -> CVector {
    let mut cur = state.clone();
    for g in gens {
        let gv = apply_pauli(g, &cur);
        cur = (cur + gv) * Complex64::new(0.5, 0.0);
    }
    cur
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// `|⟨a|b⟩|`, insensitive to global phase.
pub fn overlap_abs(a: &CVector, b: &CVector) -> f64 {
    a.dotc(b).norm()
}

/// Parses a bit string such as `"10010"` into a basis index.
pub fn basis_index(bits: &str) -> usize {
    bits.chars().fold(0, |acc, c| (acc << 1) | (c == '1') as usize)
}
