//! Clifford unitaries stored as images of the single-qubit Pauli basis.

use thiserror::Error;

use crate::bits::{self, Bits};
use crate::dense::{self, CMatrix, CVector};
use crate::pauli::{Pauli, PauliKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliffordError {
    #[error("image list sizes do not match {0} qubits")]
    Shape(usize),
    #[error("image of {0} is not Hermitian")]
    NotHermitian(String),
    #[error("images violate the canonical commutation relations ({0})")]
    NotSymplectic(String),
    #[error("dense form limited to {max} qubits, got {n}")]
    TooLarge { n: usize, max: usize },
}

/// A Clifford `U` given by `U X_j U†` and `U Z_j U†` for every qubit `j`.
/// The global phase of `U` is not represented.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clifford {
    n: usize,
    x_images: Vec<Pauli>,
    z_images: Vec<Pauli>,
}

fn sym_product(a: &Pauli, b: &Pauli) -> bool {
    !a.commutes_with(b)
}

impl Clifford {
    pub fn identity(n: usize) -> Self {
        Self {
            n,
            x_images: (0..n)
                .map(|q| Pauli::single(n, q, PauliKind::X).expect("in range"))
                .collect(),
            z_images: (0..n)
                .map(|q| Pauli::single(n, q, PauliKind::Z).expect("in range"))
                .collect(),
        }
    }

    /// Validates that the images form a Hermitian symplectic basis.
    pub fn from_images(x_images: Vec<Pauli>, z_images: Vec<Pauli>) -> Result<Self, CliffordError> {
        let n = x_images.len();
        if z_images.len() != n || x_images.iter().chain(&z_images).any(|p| p.num_qubits() != n) {
            return Err(CliffordError::Shape(n));
        }
        for p in x_images.iter().chain(&z_images) {
            if !p.is_hermitian() {
                return Err(CliffordError::NotHermitian(p.to_string()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if sym_product(&x_images[i], &z_images[j]) != (i == j) {
                    return Err(CliffordError::NotSymplectic(format!("X{i} vs Z{j}")));
                }
                if i < j && sym_product(&x_images[i], &x_images[j]) {
                    return Err(CliffordError::NotSymplectic(format!("X{i} vs X{j}")));
                }
                if i < j && sym_product(&z_images[i], &z_images[j]) {
                    return Err(CliffordError::NotSymplectic(format!("Z{i} vs Z{j}")));
                }
            }
        }
        Ok(Self { n, x_images, z_images })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn x_image(&self, q: usize) -> &Pauli {
        &self.x_images[q]
    }

    pub fn z_image(&self, q: usize) -> &Pauli {
        &self.z_images[q]
    }

    /// `U P U†`, phase exact.
    pub fn conjugate(&self, p: &Pauli) -> Pauli {
        assert_eq!(p.num_qubits(), self.n, "qubit count mismatch");
        let mut out = Pauli::identity(self.n).with_phase(p.phase_exp());
        for q in 0..self.n {
            if p.x_bits().get(q) {
                out.mul_assign_right(&self.x_images[q]);
            }
            if p.z_bits().get(q) {
                out.mul_assign_right(&self.z_images[q]);
            }
        }
        out
    }

    /// Writes `p` as `i^e Π_j x_j^{α_j} z_j^{β_j}` over this Clifford's images
    /// and returns `(α, β, e)`.
    fn decompose(&self, p: &Pauli) -> (Bits, Bits, u8) {
        let mut alpha = Bits::zeros(self.n);
        let mut beta = Bits::zeros(self.n);
        let mut prod = Pauli::identity(self.n);
        for j in 0..self.n {
            // coefficient of x_j is detected by its partner z_j, and vice versa
            if sym_product(p, &self.z_images[j]) {
                alpha.set(j, true);
                prod.mul_assign_right(&self.x_images[j]);
            }
            if sym_product(p, &self.x_images[j]) {
                beta.set(j, true);
                prod.mul_assign_right(&self.z_images[j]);
            }
        }
        debug_assert_eq!(prod.x_bits(), p.x_bits());
        debug_assert_eq!(prod.z_bits(), p.z_bits());
        let e = (4 + p.phase_exp() - prod.phase_exp()) % 4;
        (alpha, beta, e)
    }

    pub fn inverse(&self) -> Clifford {
        let image = |p: &Pauli| {
            let (alpha, beta, e) = self.decompose(p);
            let mut out = Pauli::identity(self.n).with_phase(e);
            // X_j^α Z_j^β in the same order as `decompose`
            for j in 0..self.n {
                if alpha.get(j) {
                    out.mul_assign_right(&Pauli::single(self.n, j, PauliKind::X).expect("in range"));
                }
                if beta.get(j) {
                    out.mul_assign_right(&Pauli::single(self.n, j, PauliKind::Z).expect("in range"));
                }
            }
            out
        };
        let x_images = (0..self.n)
            .map(|q| image(&Pauli::single(self.n, q, PauliKind::X).expect("in range")))
            .collect();
        let z_images = (0..self.n)
            .map(|q| image(&Pauli::single(self.n, q, PauliKind::Z).expect("in range")))
            .collect();
        Clifford {
            n: self.n,
            x_images,
            z_images,
        }
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Clifford) -> Clifford {
        Clifford {
            n: self.n,
            x_images: other.x_images.iter().map(|p| self.conjugate(p)).collect(),
            z_images: other.z_images.iter().map(|p| self.conjugate(p)).collect(),
        }
    }

    /// Conjugates `p` by this Clifford acting on qubits
    /// `offset..offset + self.num_qubits()` of a larger register.
    pub fn conjugate_embedded(&self, p: &Pauli, offset: usize) -> Pauli {
        let total = p.num_qubits();
        let end = offset + self.n;
        assert!(end <= total, "block exceeds register");
        // p = i^s · (block ⊗ rest) with both factors carrying sign +1
        let block = p.restrict(offset, end);
        let image = self.conjugate(&block);
        let mut labels = p.kinds();
        for q in 0..self.n {
            labels[offset + q] = image.kind(q);
        }
        let out = Pauli::from_kinds(&labels);
        let phase = out.phase_exp() + p.sign_exp() + image.sign_exp();
        out.with_phase(phase)
    }

    /// Dense unitary, fixed up to global phase by making the first nonzero
    /// amplitude of `U|0…0⟩` real and positive.
    pub fn to_dense(&self) -> Result<CMatrix, CliffordError> {
        if self.n > dense::MAX_DENSE_QUBITS {
            return Err(CliffordError::TooLarge {
                n: self.n,
                max: dense::MAX_DENSE_QUBITS,
            });
        }
        let dim = 1usize << self.n;
        // U|0⟩ is the joint +1 eigenvector of the Z images
        let mut psi0 = None;
        for idx in 0..dim {
            let v = dense::project_onto_stabilizers(&self.z_images, &dense::basis_state(self.n, idx));
            if v.norm() > 1e-6 {
                psi0 = Some(v.normalize());
                break;
            }
        }
        let mut psi0: CVector = psi0.expect("a stabilizer state always has support on some basis state");
        if let Some(first) = psi0.iter().find(|a| a.norm() > 1e-9).copied() {
            psi0 *= first.conj() / first.norm();
        }
        let mut u = CMatrix::zeros(dim, dim);
        for col in 0..dim {
            let mut v = psi0.clone();
            for q in 0..self.n {
                if (col >> (self.n - 1 - q)) & 1 == 1 {
                    v = dense::apply_pauli(&self.x_images[q], &v);
                }
            }
            u.set_column(col, &v);
        }
        Ok(u)
    }
}

/// Finds Paulis `d_i` with `⟨d_i, s_j⟩ = δ_ij` that commute with every
/// element of `others` and with each other. `stabilizers` and `others` must
/// be independent and mutually commuting, `others` closed under its own
/// symplectic pairing.
pub(crate) fn destabilizers(stabilizers: &[Pauli], others: &[Pauli]) -> Option<Vec<Pauli>> {
    let n = stabilizers.first().or(others.first()).map_or(0, Pauli::num_qubits);
    // ⟨d, b⟩ = d_x·b_z + d_z·b_x, so constraint rows are (b_z ‖ b_x)
    let rows: Vec<Bits> = stabilizers
        .iter()
        .chain(others)
        .map(|b| b.z_bits().concat(b.x_bits()))
        .collect();
    let mut out: Vec<Pauli> = Vec::with_capacity(stabilizers.len());
    for i in 0..stabilizers.len() {
        let mut rhs = Bits::zeros(rows.len());
        rhs.set(i, true);
        let sol = bits::solve(&rows, &rhs, 2 * n)?;
        let x = sol.slice(0, n);
        let z = sol.slice(n, 2 * n);
        let mut d = Pauli::from_parts(x, z, 0).expect("equal lengths").unsigned();
        // fix commutation with earlier destabilizers using their partners
        for (j, prev) in out.iter().enumerate() {
            if !d.commutes_with(prev) {
                d.mul_assign_right(&stabilizers[j]);
            }
        }
        out.push(d.unsigned());
    }
    Some(out)
}
