//! Phase-exact n-qubit Pauli operators in binary symplectic form.
//!
//! An operator is stored as `i^e · ⊗_j X^{a_j} Z^{b_j}` with `e ∈ {0,1,2,3}`.
//! Under this convention `Y = i·XZ`, so the text form `"Y"` carries one unit
//! of phase. Qubit `j` of the text form is qubit `j` of the operator; when a
//! state vector is involved, qubit 0 is the most significant bit of the basis
//! index (so `|10000⟩` has qubit 0 set).

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::bits::Bits;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PauliError {
    #[error("qubit count mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("cannot parse Pauli string {text:?}: {reason}")]
    Parse { text: String, reason: String },
    #[error("qubit index {index} out of range for {n} qubits")]
    QubitOutOfRange { index: usize, n: usize },
}

/// Single-qubit Pauli label, phase ignored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PauliKind {
    I,
    X,
    Y,
    Z,
}

impl PauliKind {
    pub const ALL: [PauliKind; 4] = [PauliKind::I, PauliKind::X, PauliKind::Y, PauliKind::Z];

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => PauliKind::I,
            (true, false) => PauliKind::X,
            (true, true) => PauliKind::Y,
            (false, true) => PauliKind::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            PauliKind::I => (false, false),
            PauliKind::X => (true, false),
            PauliKind::Y => (true, true),
            PauliKind::Z => (false, true),
        }
    }

    /// Index into `[I, X, Y, Z]`.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn symbol(self) -> char {
        match self {
            PauliKind::I => 'I',
            PauliKind::X => 'X',
            PauliKind::Y => 'Y',
            PauliKind::Z => 'Z',
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Pauli {
    x: Bits,
    z: Bits,
    phase: u8,
}

impl Pauli {
    pub fn identity(n: usize) -> Self {
        Self {
            x: Bits::zeros(n),
            z: Bits::zeros(n),
            phase: 0,
        }
    }

    /// Builds `i^phase · X^x Z^z` from raw symplectic data.
    pub fn from_parts(x: Bits, z: Bits, phase: u8) -> Result<Self, PauliError> {
        if x.len() != z.len() {
            return Err(PauliError::LengthMismatch {
                left: x.len(),
                right: z.len(),
            });
        }
        Ok(Self { x, z, phase: phase % 4 })
    }

    /// Hermitian Pauli with the given single-qubit labels and sign `+1`.
    pub fn from_kinds(kinds: &[PauliKind]) -> Self {
        let mut p = Self::identity(kinds.len());
        for (q, &k) in kinds.iter().enumerate() {
            p.set_kind(q, k);
        }
        p
    }

    /// `kind` acting on qubit `q` of `n`, identity elsewhere.
    pub fn single(n: usize, q: usize, kind: PauliKind) -> Result<Self, PauliError> {
        if q >= n {
            return Err(PauliError::QubitOutOfRange { index: q, n });
        }
        let mut p = Self::identity(n);
        p.set_kind(q, kind);
        Ok(p)
    }

    /// Tensor product of `kind` over the listed qubits.
    pub fn on_qubits(n: usize, qubits: &[usize], kind: PauliKind) -> Self {
        let mut p = Self::identity(n);
        for &q in qubits {
            p.set_kind(q, kind);
        }
        p
    }

    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    pub fn phase_exp(&self) -> u8 {
        self.phase
    }

    pub fn x_bits(&self) -> &Bits {
        &self.x
    }

    pub fn z_bits(&self) -> &Bits {
        &self.z
    }

    pub fn kind(&self, q: usize) -> PauliKind {
        PauliKind::from_bits(self.x.get(q), self.z.get(q))
    }

    pub fn kinds(&self) -> Vec<PauliKind> {
        (0..self.num_qubits()).map(|q| self.kind(q)).collect()
    }

    /// Replaces the label on qubit `q`, keeping the operator Hermitian-signed
    /// as before (the Y phase unit is added or removed as needed).
    pub fn set_kind(&mut self, q: usize, kind: PauliKind) {
        let old_y = self.kind(q) == PauliKind::Y;
        let (x, z) = kind.bits();
        self.x.set(q, x);
        self.z.set(q, z);
        let new_y = kind == PauliKind::Y;
        self.phase = (self.phase + 4 + new_y as u8 - old_y as u8) % 4;
    }

    pub fn y_count(&self) -> u32 {
        self.x.and_count(&self.z)
    }

    /// The sign exponent as it appears in the text form: `i^s` in front of
    /// the product of Hermitian single-qubit labels.
    pub fn sign_exp(&self) -> u8 {
        ((self.phase as u32 + 4 - self.y_count() % 4) % 4) as u8
    }

    pub fn is_hermitian(&self) -> bool {
        self.sign_exp().is_multiple_of(2)
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn weight(&self) -> usize {
        self.x.or(&self.z).count_ones() as usize
    }

    pub fn support(&self) -> Vec<usize> {
        self.x.or(&self.z).iter_ones().collect()
    }

    pub fn symplectic_vector(&self) -> Bits {
        self.x.concat(&self.z)
    }

    /// Same operator with the phase reset so that its sign is `+1`.
    pub fn unsigned(&self) -> Pauli {
        let mut p = self.clone();
        p.phase = (self.y_count() % 4) as u8;
        p
    }

    pub fn with_phase(mut self, phase: u8) -> Pauli {
        self.phase = phase % 4;
        self
    }

    pub fn negated(&self) -> Pauli {
        self.clone().with_phase(self.phase + 2)
    }

    /// Exact inverse. For Hermitian operators this is the operator itself.
    pub fn inverse(&self) -> Pauli {
        // (X^a Z^b)^{-1} = Z^b X^a = (-1)^{a·b} X^a Z^b
        let phase = (4 - self.phase as u32 + 2 * (self.y_count() % 2)) % 4;
        Pauli {
            x: self.x.clone(),
            z: self.z.clone(),
            phase: phase as u8,
        }
    }

    pub fn commutes_with(&self, other: &Pauli) -> bool {
        assert_eq!(self.num_qubits(), other.num_qubits(), "qubit count mismatch");
        (self.x.and_count(&other.z) + self.z.and_count(&other.x)).is_multiple_of(2)
    }

    pub fn try_commutes(&self, other: &Pauli) -> Result<bool, PauliError> {
        self.check_len(other)?;
        Ok(self.commutes_with(other))
    }

    pub fn try_mul(&self, other: &Pauli) -> Result<Pauli, PauliError> {
        self.check_len(other)?;
        Ok(self * other)
    }

    /// In-place right multiplication `self ← self · other`.
    pub fn mul_assign_right(&mut self, other: &Pauli) {
        assert_eq!(self.num_qubits(), other.num_qubits(), "qubit count mismatch");
        // X^a1 Z^b1 X^a2 Z^b2 = (-1)^{b1·a2} X^{a1+a2} Z^{b1+b2}
        let swaps = self.z.and_count(&other.x);
        self.phase = ((self.phase as u32 + other.phase as u32 + 2 * (swaps % 2)) % 4) as u8;
        self.x.xor_assign(&other.x);
        self.z.xor_assign(&other.z);
    }

    /// Tensor product `self ⊗ other`.
    pub fn tensor(&self, other: &Pauli) -> Pauli {
        Pauli {
            x: self.x.concat(&other.x),
            z: self.z.concat(&other.z),
            phase: (self.phase + other.phase) % 4,
        }
    }

    /// Restriction to qubits `start..end`, phase dropped to the Hermitian sign
    /// of the restricted labels.
    pub fn restrict(&self, start: usize, end: usize) -> Pauli {
        Pauli::from_kinds(&(start..end).map(|q| self.kind(q)).collect::<Vec<_>>())
    }

    /// Restriction to an arbitrary ordered qubit list, unsigned.
    pub fn restrict_to(&self, qubits: &[usize]) -> Pauli {
        Pauli::from_kinds(&qubits.iter().map(|&q| self.kind(q)).collect::<Vec<_>>())
    }

    fn check_len(&self, other: &Pauli) -> Result<(), PauliError> {
        if self.num_qubits() != other.num_qubits() {
            return Err(PauliError::LengthMismatch {
                left: self.num_qubits(),
                right: other.num_qubits(),
            });
        }
        Ok(())
    }
}

impl Mul<&Pauli> for &Pauli {
    type Output = Pauli;

    /// Exact product. Panics on a qubit-count mismatch; use
    /// [`Pauli::try_mul`] for the fallible form.
    fn mul(self, rhs: &Pauli) -> Pauli {
        let mut out = self.clone();
        out.mul_assign_right(rhs);
        out
    }
}

/// Exact product `p · q`.
pub fn multiply(p: &Pauli, q: &Pauli) -> Result<Pauli, PauliError> {
    p.try_mul(q)
}

/// Whether `p` and `q` commute (symplectic inner product zero).
pub fn commutes(p: &Pauli, q: &Pauli) -> Result<bool, PauliError> {
    p.try_commutes(q)
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.sign_exp() {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        };
        f.write_str(prefix)?;
        for q in 0..self.num_qubits() {
            write!(f, "{}", self.kind(q).symbol())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

impl FromStr for Pauli {
    type Err = PauliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| PauliError::Parse {
            text: s.to_string(),
            reason: reason.to_string(),
        };
        let (sign, body) = if let Some(rest) = s.strip_prefix("+i") {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = s.strip_prefix('i') {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (0, rest)
        } else {
            (0, s)
        };
        if body.is_empty() {
            return Err(err("no qubit labels"));
        }
        let kinds = body
            .chars()
            .map(|c| match c {
                'I' => Ok(PauliKind::I),
                'X' => Ok(PauliKind::X),
                'Y' => Ok(PauliKind::Y),
                'Z' => Ok(PauliKind::Z),
                _ => Err(err(&format!("unexpected character {c:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let p = Pauli::from_kinds(&kinds);
        let phase = p.phase + sign;
        Ok(p.with_phase(phase))
    }
}

impl Serialize for Pauli {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Pauli {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All `4^n` unsigned Paulis on `n` qubits, in lexicographic text order.
pub fn all_paulis(n: usize) -> impl Iterator<Item = Pauli> {
    let total = 4usize.pow(n as u32);
    (0..total).map(move |mut idx| {
        let mut kinds = vec![PauliKind::I; n];
        for q in (0..n).rev() {
            kinds[q] = PauliKind::ALL[idx % 4];
            idx /= 4;
        }
        Pauli::from_kinds(&kinds)
    })
}

/// Unsigned Paulis of exactly weight `w` on `n` qubits, in lexicographic text
/// order (`I < X < Y < Z`).
pub fn paulis_of_weight(n: usize, w: usize) -> Vec<Pauli> {
    fn rec(q: usize, n: usize, left: usize, cur: &mut Vec<PauliKind>, out: &mut Vec<Pauli>) {
        if q == n {
            if left == 0 {
                out.push(Pauli::from_kinds(cur));
            }
            return;
        }
        if n - q < left {
            return;
        }
        for k in PauliKind::ALL {
            if k == PauliKind::I {
                cur.push(k);
                rec(q + 1, n, left, cur, out);
                cur.pop();
            } else if left > 0 {
                cur.push(k);
                rec(q + 1, n, left - 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(0, n, w, &mut Vec::with_capacity(n), &mut out);
    out
}
