//! Stabilizer codes: the five-qubit perfect code, toric codes and friends,
//! syndrome-lookup recovery, correctability, decoder synthesis, and the
//! tile-Hamiltonian built from a code's check operators.

use std::collections::BTreeMap;

use nalgebra::SymmetricEigen;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::Bits;
use crate::clifford::{self, Clifford, CliffordError};
use crate::dense::{self, CMatrix, CVector};
use crate::group::{GroupError, Membership, StabilizerGroup};
use crate::pauli::{self, Pauli, PauliError, PauliKind};

#[derive(Debug, Error)]
pub enum CodeError {
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Clifford(#[from] CliffordError),
    #[error("stabilizer has rank {rank}, expected n - k = {expected}")]
    Rank { rank: usize, expected: usize },
    #[error("logical operator {0} is invalid: {1}")]
    Logical(usize, String),
    #[error("recovery entry for syndrome {0} is inconsistent")]
    Recovery(String),
    #[error("|0…0⟩ is annihilated by the code projector")]
    AnnihilatedReference,
    #[error("dense methods limited to {max} qubits, got {n}")]
    TooLarge { n: usize, max: usize },
    #[error("operation requires k = 1, code has k = {0}")]
    NotSingleLogical(usize),
    #[error("decoder synthesis failed: {0}")]
    Synthesis(String),
    #[error("toric code needs L >= 2, got {0}")]
    ToricTooSmall(usize),
    #[error("tile-Hamiltonian coupling {0} is not positive")]
    NonPositiveCoupling(usize),
    #[error("tile-Hamiltonian terms {0} and {1} do not commute")]
    NonCommutingTerms(usize, usize),
    #[error("{terms} terms but {couplings} couplings")]
    CouplingCount { terms: usize, couplings: usize },
    #[error("invalid code document: {0}")]
    Document(String),
}

/// Syndrome → correction map.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RecoveryTable {
    entries: BTreeMap<Bits, Pauli>,
}

impl RecoveryTable {
    /// Minimum-weight correction per syndrome, ties broken by the text form.
    ///
    /// Errors are scanned by increasing weight up to `max_weight`, stopping
    /// early once every syndrome has an entry.
    pub fn minimum_weight(stabilizer: &StabilizerGroup, max_weight: usize) -> Self {
        let n = stabilizer.num_qubits();
        let m = stabilizer.generators().len();
        let capacity = if m < 63 { Some(1u64 << m) } else { None };
        let mut entries = BTreeMap::new();
        for w in 0..=max_weight.min(n) {
            for e in pauli::paulis_of_weight(n, w) {
                entries.entry(stabilizer.syndrome(&e)).or_insert(e);
            }
            if capacity.is_some_and(|c| entries.len() as u64 == c) {
                break;
            }
        }
        Self { entries }
    }

    pub fn get(&self, syndrome: &Bits) -> Option<&Pauli> {
        self.entries.get(syndrome)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Bits, &Pauli)> {
        self.entries.iter()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerCode {
    n: usize,
    k: usize,
    stabilizer: StabilizerGroup,
    logical_x: Vec<Pauli>,
    logical_z: Vec<Pauli>,
    recovery: RecoveryTable,
}

/// Largest `n` for which recovery tables are filled by scanning every weight.
const FULL_TABLE_QUBITS: usize = 10;

impl StabilizerCode {
    pub fn new(
        n: usize,
        generators: Vec<Pauli>,
        logical_x: Vec<Pauli>,
        logical_z: Vec<Pauli>,
    ) -> Result<Self, CodeError> {
        let stabilizer = StabilizerGroup::new(n, generators)?;
        let max_weight = if n <= FULL_TABLE_QUBITS { n } else { 1 };
        let recovery = RecoveryTable::minimum_weight(&stabilizer, max_weight);
        Self::with_recovery(stabilizer, logical_x, logical_z, recovery)
    }

    fn with_recovery(
        stabilizer: StabilizerGroup,
        logical_x: Vec<Pauli>,
        logical_z: Vec<Pauli>,
        recovery: RecoveryTable,
    ) -> Result<Self, CodeError> {
        let n = stabilizer.num_qubits();
        let m = stabilizer.generators().len();
        let rank = stabilizer.rank();
        if rank != m || logical_x.len() != logical_z.len() || m + logical_x.len() != n {
            return Err(CodeError::Rank {
                rank,
                expected: n - logical_x.len().min(n),
            });
        }
        let k = logical_x.len();
        for (i, l) in logical_x.iter().chain(&logical_z).enumerate() {
            if l.num_qubits() != n || !l.is_hermitian() {
                return Err(CodeError::Logical(i, "wrong size or not Hermitian".into()));
            }
            if stabilizer.generators().iter().any(|g| !g.commutes_with(l)) {
                return Err(CodeError::Logical(i, "anticommutes with a stabilizer".into()));
            }
        }
        for i in 0..k {
            for j in 0..k {
                let xz = logical_x[i].commutes_with(&logical_z[j]);
                if xz == (i == j) {
                    return Err(CodeError::Logical(i, format!("bad pairing with Z{j}")));
                }
                if i < j && (!logical_x[i].commutes_with(&logical_x[j]) || !logical_z[i].commutes_with(&logical_z[j])) {
                    return Err(CodeError::Logical(i, format!("anticommutes with logical {j}")));
                }
            }
        }
        let zero = Bits::zeros(m);
        match recovery.get(&zero) {
            Some(r) if r.is_identity_up_to_phase() => {}
            Some(_) => return Err(CodeError::Recovery(zero.to_string())),
            None if m > 0 => return Err(CodeError::Recovery(zero.to_string())),
            None => {}
        }
        for (s, r) in recovery.iter() {
            if r.num_qubits() != n || &stabilizer.syndrome(r) != s {
                return Err(CodeError::Recovery(s.to_string()));
            }
        }
        Ok(Self {
            n,
            k,
            stabilizer,
            logical_x,
            logical_z,
            recovery,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn num_logical(&self) -> usize {
        self.k
    }

    pub fn stabilizer(&self) -> &StabilizerGroup {
        &self.stabilizer
    }

    pub fn generators(&self) -> &[Pauli] {
        self.stabilizer.generators()
    }

    pub fn logical_x(&self) -> &[Pauli] {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &[Pauli] {
        &self.logical_z
    }

    pub fn recovery_table(&self) -> &RecoveryTable {
        &self.recovery
    }

    pub fn syndrome(&self, e: &Pauli) -> Bits {
        self.stabilizer.syndrome(e)
    }

    pub fn recovery(&self, syndrome: &Bits) -> Option<&Pauli> {
        self.recovery.get(syndrome)
    }

    /// Logical class of an operator that commutes with the stabilizer, for a
    /// single logical qubit: the label `L` with `op ∝ L̄ · s`, `s ∈ S`.
    pub fn logical_class(&self, op: &Pauli, logical: usize) -> PauliKind {
        let has_x = !op.commutes_with(&self.logical_z[logical]);
        let has_z = !op.commutes_with(&self.logical_x[logical]);
        PauliKind::from_bits(has_x, has_z)
    }

    /// Syndrome lookup followed by correction. Returns the residual
    /// `R(s(e)) · e`, or `None` when the syndrome has no table entry.
    pub fn correct(&self, e: &Pauli) -> Option<Pauli> {
        let r = self.recovery.get(&self.syndrome(e))?;
        Some(r * e)
    }

    /// Stabilizer group of the logical `|0…0⟩` state: `S` plus every `Z̄`.
    pub fn zero_state_group(&self) -> StabilizerGroup {
        self.stabilizer
            .extended(&self.logical_z)
            .expect("logical Z operators commute with S and each other")
    }

    // ---- constructors ----

    /// The [[5,1,3]] perfect code with the standard cyclic generators
    /// `ZZXIX, XZZXI, IXZZX, XIXZZ` and transversal logicals.
    pub fn five_qubit() -> Self {
        let gens = ["ZZXIX", "XZZXI", "IXZZX", "XIXZZ"];
        Self::from_strs(&gens, &["XXXXX"], &["ZZZZZ"]).expect("five-qubit code is valid")
    }

    /// One bare qubit, no checks.
    pub fn trivial() -> Self {
        Self::from_strs(&[], &["X"], &["Z"]).expect("trivial code is valid")
    }

    /// Steane [[7,1,3]].
    pub fn steane() -> Self {
        let gens = ["IIIXXXX", "IXXIIXX", "XIXIXIX", "IIIZZZZ", "IZZIIZZ", "ZIZIZIZ"];
        Self::from_strs(&gens, &["XXXXXXX"], &["ZZZZZZZ"]).expect("Steane code is valid")
    }

    /// Shor [[9,1,3]].
    pub fn shor() -> Self {
        let gens = [
            "ZZIIIIIII",
            "IZZIIIIII",
            "IIIZZIIII",
            "IIIIZZIII",
            "IIIIIIZZI",
            "IIIIIIIZZ",
            "XXXXXXIII",
            "IIIXXXXXX",
        ];
        Self::from_strs(&gens, &["ZZZZZZZZZ"], &["XXXXXXXXX"]).expect("Shor code is valid")
    }

    /// Kitaev's toric code on an `L × L` torus; see [`toric_layout`] for the
    /// qubit labelling.
    pub fn toric(l: usize) -> Result<Self, CodeError> {
        if l < 2 {
            return Err(CodeError::ToricTooSmall(l));
        }
        let layout = ToricLayout::new(l);
        let mut gens = Vec::with_capacity(2 * l * l - 2);
        // the last site and last plaquette are products of the others
        for y in 0..l {
            for x in 0..l {
                if (x, y) != (l - 1, l - 1) {
                    gens.push(layout.site(x, y));
                }
            }
        }
        for y in 0..l {
            for x in 0..l {
                if (x, y) != (l - 1, l - 1) {
                    gens.push(layout.plaquette(x, y));
                }
            }
        }
        let (lx, lz) = layout.logicals();
        Self::new(layout.num_qubits(), gens, lx, lz)
    }

    pub fn from_strs(gens: &[&str], lx: &[&str], lz: &[&str]) -> Result<Self, CodeError> {
        let parse = |v: &[&str]| v.iter().map(|s| s.parse::<Pauli>()).collect::<Result<Vec<_>, _>>();
        let (gens, lx, lz) = (parse(gens)?, parse(lx)?, parse(lz)?);
        let n = gens.first().or(lx.first()).map(Pauli::num_qubits).unwrap_or(0);
        Self::new(n, gens, lx, lz)
    }

    // ---- dense operations ----

    /// Logical `|0…0⟩`: `Π(1+M_i)/2 · Π(1+Z̄_j)/2 |0…0⟩`, normalized with a
    /// positive `|0…0⟩` amplitude.
    pub fn encode_zero(&self) -> Result<CVector, CodeError> {
        self.check_dense()?;
        let mut projectors: Vec<Pauli> = self.generators().to_vec();
        projectors.extend_from_slice(&self.logical_z);
        let v = dense::project_onto_stabilizers(&projectors, &dense::basis_state(self.n, 0));
        let a0 = v[0];
        if a0.norm() < 1e-12 {
            return Err(CodeError::AnnihilatedReference);
        }
        let v = v.normalize() * (a0.conj() / a0.norm());
        Ok(v)
    }

    /// `α|0̄⟩ + β|1̄⟩` for a single logical qubit, with `|1̄⟩ = X̄|0̄⟩`.
    pub fn encode(&self, alpha: Complex64, beta: Complex64) -> Result<CVector, CodeError> {
        self.require_single()?;
        let zero = self.encode_zero()?;
        let one = dense::apply_pauli(&self.logical_x[0], &zero);
        Ok(zero * alpha + one * beta)
    }

    fn check_dense(&self) -> Result<(), CodeError> {
        if self.n > dense::MAX_DENSE_QUBITS {
            return Err(CodeError::TooLarge {
                n: self.n,
                max: dense::MAX_DENSE_QUBITS,
            });
        }
        Ok(())
    }

    fn require_single(&self) -> Result<(), CodeError> {
        if self.k != 1 {
            return Err(CodeError::NotSingleLogical(self.k));
        }
        Ok(())
    }

    // ---- decoder ----

    /// Clifford decoder `D` with `D M_i D† = Z_{i+1}`, `D X̄ D† = X_0`,
    /// `D Z̄ D† = Z_0`. Applied to an encoded state it leaves the logical
    /// qubit on qubit 0 and `|0…0⟩` on the `n − 1` ancillas.
    pub fn synthesize_decoder(&self) -> Result<Clifford, CodeError> {
        self.require_single()?;
        let others = [self.logical_x[0].clone(), self.logical_z[0].clone()];
        let destab = clifford::destabilizers(self.generators(), &others)
            .ok_or_else(|| CodeError::Synthesis("no destabilizer solution".into()))?;
        // encoder E: X_0 → X̄, Z_0 → Z̄, Z_{i+1} → M_i, X_{i+1} → D_i
        let mut xs = vec![self.logical_x[0].clone()];
        let mut zs = vec![self.logical_z[0].clone()];
        xs.extend(destab);
        zs.extend(self.generators().iter().cloned());
        let encoder = Clifford::from_images(xs, zs).map_err(|e| CodeError::Synthesis(e.to_string()))?;
        Ok(encoder.inverse())
    }

    // ---- serialization ----

    pub fn to_document(&self) -> CodeDocument {
        CodeDocument {
            n: self.n,
            k: self.k,
            generators: self.generators().iter().map(Pauli::to_string).collect(),
            logical_x: self.logical_x.iter().map(Pauli::to_string).collect(),
            logical_z: self.logical_z.iter().map(Pauli::to_string).collect(),
            recovery: self
                .recovery
                .iter()
                .map(|(s, p)| (s.to_string(), p.to_string()))
                .collect(),
        }
    }

    pub fn from_document(doc: &CodeDocument) -> Result<Self, CodeError> {
        let parse = |v: &[String]| v.iter().map(|s| s.parse::<Pauli>()).collect::<Result<Vec<_>, _>>();
        let gens = parse(&doc.generators)?;
        let stabilizer = StabilizerGroup::new(doc.n, gens)?;
        let mut entries = BTreeMap::new();
        for (s, p) in &doc.recovery {
            let bits: Bits = s.parse().map_err(CodeError::Document)?;
            if bits.len() != stabilizer.generators().len() {
                return Err(CodeError::Recovery(s.clone()));
            }
            entries.insert(bits, p.parse()?);
        }
        let code = Self::with_recovery(
            stabilizer,
            parse(&doc.logical_x)?,
            parse(&doc.logical_z)?,
            RecoveryTable { entries },
        )?;
        if code.k != doc.k {
            return Err(CodeError::Document(format!(
                "k = {} but {} logical pairs",
                doc.k, code.k
            )));
        }
        Ok(code)
    }
}

/// JSON form of a code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDocument {
    pub n: usize,
    pub k: usize,
    pub generators: Vec<String>,
    pub logical_x: Vec<String>,
    pub logical_z: Vec<String>,
    pub recovery: BTreeMap<String, String>,
}

/// Outcome of the Knill–Laflamme check on a set of errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Correctability {
    Correctable,
    /// `E_a† E_b` is neither in `S` (up to phase) nor detected by any check.
    NotCorrectable {
        a: usize,
        b: usize,
        witness: (Pauli, Pauli),
    },
}

impl Correctability {
    pub fn is_correctable(&self) -> bool {
        matches!(self, Correctability::Correctable)
    }
}

/// The error set is correctable iff every `E_a† E_b` either lies in the
/// stabilizer (up to phase) or anticommutes with some stabilizer element.
pub fn check_correctable(code: &StabilizerCode, errors: &[Pauli]) -> Correctability {
    for (a, ea) in errors.iter().enumerate() {
        for (b, eb) in errors.iter().enumerate().skip(a) {
            let prod = &ea.inverse() * eb;
            let detected = code.generators().iter().any(|g| !g.commutes_with(&prod));
            if detected {
                continue;
            }
            if code.stabilizer.contains(&prod) == Membership::NotMember {
                return Correctability::NotCorrectable {
                    a,
                    b,
                    witness: (ea.clone(), eb.clone()),
                };
            }
        }
    }
    Correctability::Correctable
}

/// Edge labelling of the `L × L` torus.
///
/// Horizontal edge `h(x, y)` joins vertex `(x, y)` to `(x+1, y)` and has
/// index `y·L + x`; vertical edge `v(x, y)` joins `(x, y)` to `(x, y+1)` and
/// has index `L² + y·L + x`. Face `(x, y)` has corners `(x, y)` and
/// `(x+1, y+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ToricLayout {
    pub l: usize,
}

pub fn toric_layout(l: usize) -> ToricLayout {
    ToricLayout::new(l)
}

impl ToricLayout {
    pub fn new(l: usize) -> Self {
        Self { l }
    }

    pub fn num_qubits(&self) -> usize {
        2 * self.l * self.l
    }

    fn wrap(&self, c: isize) -> usize {
        c.rem_euclid(self.l as isize) as usize
    }

    pub fn h(&self, x: isize, y: isize) -> usize {
        self.wrap(y) * self.l + self.wrap(x)
    }

    pub fn v(&self, x: isize, y: isize) -> usize {
        self.l * self.l + self.wrap(y) * self.l + self.wrap(x)
    }

    /// Edges incident to vertex `(x, y)`.
    pub fn site_edges(&self, x: usize, y: usize) -> [usize; 4] {
        let (x, y) = (x as isize, y as isize);
        [self.h(x, y), self.h(x - 1, y), self.v(x, y), self.v(x, y - 1)]
    }

    /// Boundary edges of face `(x, y)`.
    pub fn plaquette_edges(&self, x: usize, y: usize) -> [usize; 4] {
        let (x, y) = (x as isize, y as isize);
        [self.h(x, y), self.h(x, y + 1), self.v(x, y), self.v(x + 1, y)]
    }

    pub fn site(&self, x: usize, y: usize) -> Pauli {
        Pauli::on_qubits(self.num_qubits(), &self.site_edges(x, y), PauliKind::X)
    }

    pub fn plaquette(&self, x: usize, y: usize) -> Pauli {
        Pauli::on_qubits(self.num_qubits(), &self.plaquette_edges(x, y), PauliKind::Z)
    }

    pub fn all_sites(&self) -> Vec<Pauli> {
        (0..self.l)
            .flat_map(|y| (0..self.l).map(move |x| (x, y)))
            .map(|(x, y)| self.site(x, y))
            .collect()
    }

    pub fn all_plaquettes(&self) -> Vec<Pauli> {
        (0..self.l)
            .flat_map(|y| (0..self.l).map(move |x| (x, y)))
            .map(|(x, y)| self.plaquette(x, y))
            .collect()
    }

    /// `(logical_x, logical_z)`. `Z̄_0` is the horizontal loop along row 0,
    /// `Z̄_1` the vertical loop along column 0; each `X̄_i` is the dual loop
    /// crossing its partner once.
    pub fn logicals(&self) -> (Vec<Pauli>, Vec<Pauli>) {
        let n = self.num_qubits();
        let l = self.l as isize;
        let row0: Vec<usize> = (0..l).map(|x| self.h(x, 0)).collect();
        let col0: Vec<usize> = (0..l).map(|y| self.v(0, y)).collect();
        let dual_h: Vec<usize> = (0..l).map(|y| self.h(0, y)).collect();
        let dual_v: Vec<usize> = (0..l).map(|x| self.v(x, 0)).collect();
        (
            vec![
                Pauli::on_qubits(n, &dual_h, PauliKind::X),
                Pauli::on_qubits(n, &dual_v, PauliKind::X),
            ],
            vec![
                Pauli::on_qubits(n, &row0, PauliKind::Z),
                Pauli::on_qubits(n, &col0, PauliKind::Z),
            ],
        )
    }
}

/// `−Σ K_i M_i` over commuting check operators.
#[derive(Debug, Clone, PartialEq)]
pub struct TileHamiltonian {
    couplings: Vec<f64>,
    terms: Vec<Pauli>,
}

impl TileHamiltonian {
    pub fn new(couplings: Vec<f64>, terms: Vec<Pauli>) -> Result<Self, CodeError> {
        if couplings.len() != terms.len() {
            return Err(CodeError::CouplingCount {
                terms: terms.len(),
                couplings: couplings.len(),
            });
        }
        if let Some(i) = couplings.iter().position(|&k| !(k > 0.0 && k.is_finite())) {
            return Err(CodeError::NonPositiveCoupling(i));
        }
        for (i, a) in terms.iter().enumerate() {
            for (j, b) in terms.iter().enumerate().skip(i + 1) {
                if !a.try_commutes(b)? {
                    return Err(CodeError::NonCommutingTerms(i, j));
                }
            }
        }
        Ok(Self { couplings, terms })
    }

    /// Tile-Hamiltonian of a code with the given couplings on its generators.
    pub fn for_code(code: &StabilizerCode, couplings: Vec<f64>) -> Result<Self, CodeError> {
        Self::new(couplings, code.generators().to_vec())
    }

    pub fn num_qubits(&self) -> usize {
        self.terms.first().map_or(0, Pauli::num_qubits)
    }

    pub fn matrix(&self) -> Result<CMatrix, CodeError> {
        let n = self.num_qubits();
        if n > dense::MAX_DENSE_QUBITS {
            return Err(CodeError::TooLarge {
                n,
                max: dense::MAX_DENSE_QUBITS,
            });
        }
        let dim = 1usize << n;
        let mut h = CMatrix::zeros(dim, dim);
        for (k, m) in self.couplings.iter().zip(&self.terms) {
            h -= dense::pauli_matrix(m) * Complex64::new(*k, 0.0);
        }
        Ok(h)
    }

    /// `(ground energy, ground-space dimension)` from dense diagonalization;
    /// eigenvalues within `tol` of the minimum count as degenerate.
    pub fn spectrum(&self, tol: f64) -> Result<(f64, usize), CodeError> {
        let eig = SymmetricEigen::new(self.matrix()?);
        let ground = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        let degeneracy = eig.eigenvalues.iter().filter(|&&e| (e - ground).abs() <= tol).count();
        Ok((ground, degeneracy))
    }

    pub fn coupling_sum(&self) -> f64 {
        self.couplings.iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Pauli {
        s.parse().unwrap()
    }

    #[test]
    fn five_qubit_generators_match_table() {
        let code = StabilizerCode::five_qubit();
        let g: Vec<String> = code.generators().iter().map(Pauli::to_string).collect();
        assert_eq!(g, ["ZZXIX", "XZZXI", "IXZZX", "XIXZZ"]);
        assert_eq!((code.num_qubits(), code.num_logical()), (5, 1));
        assert_eq!(code.recovery_table().len(), 16);
    }

    #[test]
    fn trivial_syndrome_recovers_identity() {
        let code = StabilizerCode::five_qubit();
        let s = code.syndrome(&Pauli::identity(5));
        assert_eq!(s.to_string(), "0000");
        assert!(code.recovery(&s).unwrap().is_identity_up_to_phase());
    }

    #[test]
    fn trivial_code_encodes_zero() {
        let code = StabilizerCode::trivial();
        let v = code.encode_zero().unwrap();
        assert!((v[0].re - 1.0).abs() < 1e-15 && v[1].norm() < 1e-15);
        let dec = code.synthesize_decoder().unwrap();
        assert_eq!(dec, Clifford::identity(1));
    }

    #[test]
    fn rejects_bad_logicals() {
        // X̄ that anticommutes with a stabilizer
        let err = StabilizerCode::from_strs(&["ZZ"], &["XI"], &["ZI"]);
        assert!(matches!(err, Err(CodeError::Logical(..))));
        // wrong rank
        let err = StabilizerCode::from_strs(&["ZZ"], &[], &[]);
        assert!(matches!(err, Err(CodeError::Rank { .. })));
    }

    #[test]
    fn optional_codes_are_valid_distance_three() {
        for code in [StabilizerCode::steane(), StabilizerCode::shor()] {
            let n = code.num_qubits();
            let mut errs = vec![Pauli::identity(n)];
            errs.extend(pauli::paulis_of_weight(n, 1));
            assert!(check_correctable(&code, &errs).is_correctable());
        }
    }

    #[test]
    fn toric_needs_two() {
        assert!(matches!(StabilizerCode::toric(1), Err(CodeError::ToricTooSmall(1))));
        let t = StabilizerCode::toric(2).unwrap();
        assert_eq!((t.num_qubits(), t.num_logical()), (8, 2));
    }

    #[test]
    fn empty_error_set_is_correctable() {
        assert!(check_correctable(&StabilizerCode::five_qubit(), &[]).is_correctable());
    }

    #[test]
    fn tile_hamiltonian_validation() {
        assert!(matches!(
            TileHamiltonian::new(vec![1.0, 0.0], vec![p("ZI"), p("IZ")]),
            Err(CodeError::NonPositiveCoupling(1))
        ));
        assert!(matches!(
            TileHamiltonian::new(vec![1.0, 1.0], vec![p("XI"), p("ZI")]),
            Err(CodeError::NonCommutingTerms(0, 1))
        ));
        let h = TileHamiltonian::new(vec![0.7], vec![p("Z")]).unwrap();
        let (e, d) = h.spectrum(1e-10).unwrap();
        assert!((e + 0.7).abs() < 1e-12);
        assert_eq!(d, 1);
    }

    #[test]
    fn document_round_trip() {
        let code = StabilizerCode::five_qubit();
        let json = serde_json::to_string(&code.to_document()).unwrap();
        let doc: CodeDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(StabilizerCode::from_document(&doc).unwrap(), code);
    }

    #[test]
    fn document_with_bad_recovery_is_rejected() {
        let mut doc = StabilizerCode::five_qubit().to_document();
        doc.recovery.insert("1000".into(), "IIIII".into());
        assert!(matches!(
            StabilizerCode::from_document(&doc),
            Err(CodeError::Recovery(_))
        ));
    }
}
