//! Stabilizer groups: canonical forms, membership and subsystem entropy.

use thiserror::Error;

use crate::bits::{self, Bits};
use crate::pauli::{Pauli, PauliError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error("generators {0} and {1} anticommute")]
    Anticommuting(usize, usize),
    #[error("generator {0} is not Hermitian")]
    NotHermitian(usize),
    #[error("-I is a member of the group")]
    ContainsMinusIdentity,
}

/// Result of a membership query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    /// The operator is a group element, phase included.
    Member,
    /// `p = i^phase_exp · g` for some group element `g`, with `phase_exp ≠ 0`.
    UpToPhase {
        phase_exp: u8,
    },
    NotMember,
}

impl Membership {
    pub fn up_to_phase(self) -> bool {
        !matches!(self, Membership::NotMember)
    }
}

/// Abelian group of Hermitian Paulis not containing `-I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerGroup {
    n: usize,
    generators: Vec<Pauli>,
}

/// Row-reduced generating set.
///
/// Pivots are taken over the X block first and then the Z block, each in
/// increasing qubit order; the reduction is complete (every pivot column is
/// clear in all other rows), so two generating sets of the same group give
/// identical canonical forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canonical {
    pub generators: Vec<Pauli>,
    pub pivots: Vec<usize>,
}

impl Canonical {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }
}

/// Gaussian elimination with exact phase bookkeeping.
pub fn canonicalize(n: usize, generators: &[Pauli]) -> Result<Canonical, GroupError> {
    for (i, g) in generators.iter().enumerate() {
        if g.num_qubits() != n {
            return Err(PauliError::LengthMismatch {
                left: n,
                right: g.num_qubits(),
            }
            .into());
        }
        if !g.is_hermitian() {
            return Err(GroupError::NotHermitian(i));
        }
    }
    let mut rows: Vec<Pauli> = generators.to_vec();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..2 * n {
        let has = |p: &Pauli| {
            if col < n {
                p.x_bits().get(col)
            } else {
                p.z_bits().get(col - n)
            }
        };
        let Some(pr) = (rank..rows.len()).find(|&r| has(&rows[r])) else {
            continue;
        };
        rows.swap(rank, pr);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && has(row) {
                row.mul_assign_right(&pivot);
            }
        }
        pivots.push(col);
        rank += 1;
    }
    for row in &rows[rank..] {
        debug_assert!(row.is_identity_up_to_phase());
        if row.phase_exp() != 0 {
            return Err(GroupError::ContainsMinusIdentity);
        }
    }
    rows.truncate(rank);
    Ok(Canonical {
        generators: rows,
        pivots,
    })
}

impl StabilizerGroup {
    pub fn new(n: usize, generators: Vec<Pauli>) -> Result<Self, GroupError> {
        for (i, a) in generators.iter().enumerate() {
            for (j, b) in generators.iter().enumerate().skip(i + 1) {
                if !a.try_commutes(b)? {
                    return Err(GroupError::Anticommuting(i, j));
                }
            }
        }
        canonicalize(n, &generators)?;
        Ok(Self { n, generators })
    }

    /// Parses generators from their text forms.
    pub fn from_strs(gens: &[&str]) -> Result<Self, GroupError> {
        let generators = gens.iter().map(|s| s.parse::<Pauli>()).collect::<Result<Vec<_>, _>>()?;
        let n = generators.first().map_or(0, Pauli::num_qubits);
        Self::new(n, generators)
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            generators: Vec::new(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Pauli] {
        &self.generators
    }

    pub fn canonicalize(&self) -> Canonical {
        canonicalize(self.n, &self.generators).expect("validated at construction")
    }

    pub fn rank(&self) -> usize {
        self.canonicalize().rank()
    }

    /// Same group, with generators replaced by the canonical set.
    pub fn canonical_group(&self) -> StabilizerGroup {
        StabilizerGroup {
            n: self.n,
            generators: self.canonicalize().generators,
        }
    }

    pub fn same_group(&self, other: &StabilizerGroup) -> bool {
        self.n == other.n && self.canonicalize() == other.canonicalize()
    }

    pub fn contains(&self, p: &Pauli) -> Membership {
        if p.num_qubits() != self.n {
            return Membership::NotMember;
        }
        let canon = self.canonicalize();
        let mut r = p.clone();
        for (g, &col) in canon.generators.iter().zip(&canon.pivots) {
            let hit = if col < self.n {
                r.x_bits().get(col)
            } else {
                r.z_bits().get(col - self.n)
            };
            if hit {
                r.mul_assign_right(g);
            }
        }
        if !r.is_identity_up_to_phase() {
            return Membership::NotMember;
        }
        // p · g_1 ⋯ g_k = i^e  ⇒  p = i^e · g_k ⋯ g_1
        match r.phase_exp() {
            0 => Membership::Member,
            e => Membership::UpToPhase { phase_exp: e },
        }
    }

    /// Syndrome of `p`: bit `i` set when `p` anticommutes with generator `i`.
    pub fn syndrome(&self, p: &Pauli) -> Bits {
        let mut s = Bits::zeros(self.generators.len());
        for (i, g) in self.generators.iter().enumerate() {
            if !g.commutes_with(p) {
                s.set(i, true);
            }
        }
        s
    }

    /// New group with one more generator. Fails if the result is not a
    /// valid stabilizer group.
    pub fn extended(&self, extra: &[Pauli]) -> Result<StabilizerGroup, GroupError> {
        let mut gens = self.generators.clone();
        gens.extend_from_slice(extra);
        StabilizerGroup::new(self.n, gens)
    }

    /// Basis (as symplectic vectors) of the subgroup supported entirely
    /// inside `region`.
    pub fn subgroup_in_region(&self, region: &[usize]) -> Vec<Pauli> {
        let n = self.n;
        let mut inside = vec![false; n];
        for &q in region {
            inside[q] = true;
        }
        let outside: Vec<usize> = (0..n).filter(|&q| !inside[q]).collect();
        // eliminate on outside columns; rows with no outside support remain
        let mut rows: Vec<Pauli> = self.canonicalize().generators;
        let mut rank = 0;
        let cols: Vec<(bool, usize)> = outside.iter().flat_map(|&q| [(true, q), (false, q)]).collect();
        for &(is_x, q) in &cols {
            let has = |p: &Pauli| {
                if is_x {
                    p.x_bits().get(q)
                } else {
                    p.z_bits().get(q)
                }
            };
            let Some(pr) = (rank..rows.len()).find(|&r| has(&rows[r])) else {
                continue;
            };
            rows.swap(rank, pr);
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && has(row) {
                    row.mul_assign_right(&pivot);
                }
            }
            rank += 1;
        }
        rows.split_off(rank)
    }

    /// Von Neumann entropy in bits of the reduced state on `region`, for the
    /// stabilizer state `2^{-n} Σ_{g∈G} g`: `|A| − log₂|G_A|`.
    pub fn entropy(&self, region: &[usize]) -> usize {
        let dim = self.region_rank(region);
        region.len() - dim
    }

    /// `log₂|G_A|`, the number of independent elements supported in `region`.
    pub fn region_rank(&self, region: &[usize]) -> usize {
        let n = self.n;
        let mut inside = vec![false; n];
        for &q in region {
            inside[q] = true;
        }
        let projected: Vec<Bits> = self
            .generators
            .iter()
            .map(|g| {
                let mut v = Bits::zeros(2 * n);
                for q in (0..n).filter(|&q| !inside[q]) {
                    v.set(q, g.x_bits().get(q));
                    v.set(n + q, g.z_bits().get(q));
                }
                v
            })
            .collect();
        let total = self.rank();
        total - bits::rank(&projected)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn five() -> StabilizerGroup {
        StabilizerGroup::from_strs(&["ZZXIX", "XZZXI", "IXZZX", "XIXZZ"]).unwrap()
    }

    #[test]
    fn rank_of_five_qubit_generators() {
        assert_eq!(five().rank(), 4);
    }

    #[test]
    fn duplicate_collapses() {
        let g = StabilizerGroup::from_strs(&["ZZXIX", "ZZXIX"]).unwrap();
        assert_eq!(g.rank(), 1);
    }

    #[test]
    fn minus_identity_rejected() {
        assert_eq!(
            StabilizerGroup::from_strs(&["ZZ", "-ZZ"]),
            Err(GroupError::ContainsMinusIdentity)
        );
        assert!(matches!(
            StabilizerGroup::from_strs(&["XI", "ZI"]),
            Err(GroupError::Anticommuting(0, 1))
        ));
        assert_eq!(StabilizerGroup::from_strs(&["iXX"]), Err(GroupError::NotHermitian(0)));
    }

    #[test]
    fn membership_cases() {
        let g = five();
        let m1m3 = &"ZZXIX".parse::<Pauli>().unwrap() * &"IXZZX".parse().unwrap();
        assert_eq!(g.contains(&m1m3), Membership::Member);
        assert_eq!(g.contains(&"XXXXX".parse().unwrap()), Membership::NotMember);
        assert_eq!(
            g.contains(&"-ZZXIX".parse().unwrap()),
            Membership::UpToPhase { phase_exp: 2 }
        );
        assert_eq!(g.contains(&Pauli::identity(5)), Membership::Member);
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let g = five();
        let c1 = g.canonicalize();
        let c2 = g.canonical_group().canonicalize();
        assert_eq!(c1, c2);
        assert!(g.same_group(&g.canonical_group()));
    }

    #[test]
    fn bell_pair_entropy() {
        let g = StabilizerGroup::from_strs(&["XX", "ZZ"]).unwrap();
        assert_eq!(g.entropy(&[0]), 1);
        assert_eq!(g.entropy(&[0, 1]), 0);
        assert_eq!(g.entropy(&[]), 0);
        assert_eq!(g.subgroup_in_region(&[0, 1]).len(), 2);
        assert!(g.subgroup_in_region(&[1]).is_empty());
    }
}
