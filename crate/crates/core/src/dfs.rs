//! Structure of finite-dimensional †-closed operator algebras: closure,
//! commutant, centre, and the block decomposition `⊕_i Mat(d_i) ⊗ I_{m_i}`.
//! Blocks with `m_i ≥ 2` carry noiseless subsystems (subspaces when
//! `d_i = 1`).

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::dense::{self, CMatrix};
use crate::pauli::{Pauli, PauliKind};

pub const MAX_DIM: usize = 64;
/// Gram–Schmidt remainders below this norm count as dependent. Inputs are
/// scaled to unit Frobenius norm first.
pub const CLOSURE_TOL: f64 = 1e-8;
/// Eigenvalues closer than this belong to the same block.
pub const CLUSTER_TOL: f64 = 1e-8;
/// Distinct clusters must be separated by at least this much.
pub const SEPARATION_TOL: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DfsError {
    #[error("Hilbert dimension {0} exceeds the limit of {MAX_DIM}")]
    DimensionOverflow(usize),
    #[error("collective noise needs at least one qubit")]
    NoQubits,
    #[error("operator {index} is {rows}×{cols}, expected {dim}×{dim}")]
    Shape {
        index: usize,
        rows: usize,
        cols: usize,
        dim: usize,
    },
    #[error("eigenvalue clusters separated by {gap:e}, below the resolvable {SEPARATION_TOL:e}")]
    NearDegenerate { gap: f64 },
    #[error("block {block} of dimension {size} is inconsistent with irrep dimension² = {algebra_dim}")]
    Inconsistent {
        block: usize,
        size: usize,
        algebra_dim: usize,
    },
    #[error("intertwiner for copy {copy} of block {block} is singular")]
    SingularIntertwiner { block: usize, copy: usize },
}

/// Generators of an operator algebra on `C^dim`. Adjoints of non-Hermitian
/// generators are implied; the identity is always part of the algebra.
#[derive(Debug, Clone)]
pub struct OperatorSet {
    dim: usize,
    generators: Vec<CMatrix>,
}

impl OperatorSet {
    pub fn new(dim: usize, generators: Vec<CMatrix>) -> Result<Self, DfsError> {
        if dim > MAX_DIM {
            return Err(DfsError::DimensionOverflow(dim));
        }
        for (index, g) in generators.iter().enumerate() {
            if g.nrows() != dim || g.ncols() != dim {
                return Err(DfsError::Shape {
                    index,
                    rows: g.nrows(),
                    cols: g.ncols(),
                    dim,
                });
            }
        }
        let mut all = generators;
        let adjoints: Vec<CMatrix> = all
            .iter()
            .filter(|g| (*g - g.adjoint()).norm() > CLOSURE_TOL)
            .map(|g| g.adjoint())
            .collect();
        all.extend(adjoints);
        Ok(Self { dim, generators: all })
    }

    /// Dense matrices of Pauli operators.
    pub fn from_paulis(paulis: &[Pauli]) -> Result<Self, DfsError> {
        let n = paulis.first().map_or(0, Pauli::num_qubits);
        if n > 6 {
            return Err(DfsError::DimensionOverflow(1 << n.min(62)));
        }
        Self::new(1 << n, paulis.iter().map(dense::pauli_matrix).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[CMatrix] {
        &self.generators
    }
}

/// Collective spin operators `S_α = ½ Σ_j σ_α^{(j)}` on `n` qubits.
pub fn collective_generators(n: usize) -> Result<OperatorSet, DfsError> {
    if n == 0 {
        return Err(DfsError::NoQubits);
    }
    if n > 6 {
        return Err(DfsError::DimensionOverflow(1 << n.min(62)));
    }
    let ops = [PauliKind::X, PauliKind::Y, PauliKind::Z]
        .into_iter()
        .map(|kind| {
            let mut s = CMatrix::zeros(1 << n, 1 << n);
            for q in 0..n {
                s += dense::pauli_matrix(&Pauli::single(n, q, kind).expect("in range"));
            }
            s * Complex64::new(0.5, 0.0)
        })
        .collect();
    OperatorSet::new(1 << n, ops)
}

fn hs(a: &CMatrix, b: &CMatrix) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// Adds `m` to the orthonormal `basis` if its remainder has norm above
/// `tol`; returns whether it was added.
fn orthonormal_push(basis: &mut Vec<CMatrix>, m: &CMatrix, tol: f64) -> bool {
    let mut r = m.clone();
    for _ in 0..2 {
        for b in basis.iter() {
            let c = hs(b, &r);
            r -= b * c;
        }
    }
    let norm = r.norm();
    if norm <= tol {
        return false;
    }
    basis.push(r / Complex64::new(norm, 0.0));
    true
}

fn unit(m: &CMatrix) -> CMatrix {
    let n = m.norm();
    if n == 0.0 {
        m.clone()
    } else {
        m / Complex64::new(n, 0.0)
    }
}

/// Hilbert–Schmidt orthonormal basis of the algebra generated by `ops` and
/// the identity.
pub fn algebra_closure(ops: &OperatorSet) -> Vec<CMatrix> {
    let mut basis = Vec::new();
    orthonormal_push(&mut basis, &unit(&CMatrix::identity(ops.dim, ops.dim)), CLOSURE_TOL);
    let gens: Vec<CMatrix> = ops.generators.iter().map(unit).collect();
    let mut frontier = 0;
    while frontier < basis.len() {
        let b = basis[frontier].clone();
        for g in &gens {
            orthonormal_push(&mut basis, &(g * &b), CLOSURE_TOL);
        }
        frontier += 1;
    }
    basis
}

/// Null space of a Hermitian PSD matrix, as column vectors.
fn null_space(gram: DMatrix<Complex64>, tol: f64) -> Vec<nalgebra::DVector<Complex64>> {
    let eig = SymmetricEigen::new(gram);
    (0..eig.eigenvalues.len())
        .filter(|&i| eig.eigenvalues[i].abs() < tol)
        .map(|i| eig.eigenvectors.column(i).into_owned())
        .collect()
}

fn unvec(v: &nalgebra::DVector<Complex64>, dim: usize) -> CMatrix {
    CMatrix::from_column_slice(dim, dim, v.as_slice())
}

/// Orthonormal basis of the operators commuting with every generator.
pub fn commutant(ops: &OperatorSet) -> Vec<CMatrix> {
    let d = ops.dim;
    let id = CMatrix::identity(d, d);
    // column-major vec: vec(GX − XG) = (I ⊗ G − Gᵀ ⊗ I) vec(X)
    let mut gram = CMatrix::zeros(d * d, d * d);
    for g in &ops.generators {
        let l = id.kronecker(g) - g.transpose().kronecker(&id);
        gram += l.adjoint() * l;
    }
    let scale = gram.norm().max(1.0);
    let mut basis = Vec::new();
    for v in null_space(gram, 1e-9 * scale) {
        orthonormal_push(&mut basis, &unvec(&v, d), CLOSURE_TOL);
    }
    basis
}

/// Orthonormal basis of the centre: elements of `algebra` commuting with the
/// generators.
pub fn center(ops: &OperatorSet, algebra: &[CMatrix]) -> Vec<CMatrix> {
    let k = algebra.len();
    let comms: Vec<Vec<CMatrix>> = algebra
        .iter()
        .map(|a| ops.generators.iter().map(|g| g * a - a * g).collect())
        .collect();
    let mut gram = CMatrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let v: Complex64 = comms[i].iter().zip(&comms[j]).map(|(a, b)| hs(a, b)).sum();
            gram[(i, j)] = v;
            gram[(j, i)] = v.conj();
        }
    }
    let scale = gram.norm().max(1.0);
    let mut basis = Vec::new();
    for v in null_space(gram, 1e-9 * scale) {
        let mut m = CMatrix::zeros(ops.dim, ops.dim);
        for (c, a) in v.iter().zip(algebra) {
            m += a * *c;
        }
        orthonormal_push(&mut basis, &m, CLOSURE_TOL);
    }
    basis
}

fn random_hermitian(basis: &[CMatrix], rng: &mut ChaCha8Rng) -> CMatrix {
    let d = basis[0].nrows();
    let mut m = CMatrix::zeros(d, d);
    for b in basis {
        let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        m += b * c;
    }
    (&m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Eigenvectors of a Hermitian matrix grouped by eigenvalue.
fn eigen_clusters(h: CMatrix) -> Result<Vec<(f64, CMatrix)>, DfsError> {
    let n = h.nrows();
    let eig = SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match groups.last_mut() {
            Some(g) if (eig.eigenvalues[i] - eig.eigenvalues[*g.last().expect("nonempty")]).abs() < CLUSTER_TOL => {
                g.push(i)
            }
            Some(g) => {
                let gap = eig.eigenvalues[i] - eig.eigenvalues[*g.last().expect("nonempty")];
                if gap < SEPARATION_TOL {
                    return Err(DfsError::NearDegenerate { gap });
                }
                groups.push(vec![i]);
            }
            None => groups.push(vec![i]),
        }
    }
    Ok(groups
        .into_iter()
        .map(|g| {
            let mut v = CMatrix::zeros(n, g.len());
            for (c, &i) in g.iter().enumerate() {
                v.set_column(c, &eig.eigenvectors.column(i));
            }
            (eig.eigenvalues[g[0]], v)
        })
        .collect())
}

fn span_dimension(ops: &[CMatrix]) -> usize {
    let mut basis = Vec::new();
    for m in ops {
        orthonormal_push(&mut basis, m, CLOSURE_TOL);
    }
    basis.len()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NoiselessKind {
    Subspace,
    Subsystem,
}

#[derive(Debug, Clone)]
pub struct Block {
    /// Irrep dimension.
    pub d: usize,
    /// Multiplicity.
    pub m: usize,
    /// `dim × (d·m)` isometry; column `c·m + z` is basis vector `|c⟩⊗|z⟩`,
    /// so the algebra acts as `A ⊗ I_m`.
    pub isometry: CMatrix,
}

#[derive(Debug, Clone)]
pub struct AlgebraDecomposition {
    pub dim: usize,
    pub algebra_dim: usize,
    pub commutant_dim: usize,
    pub center_dim: usize,
    pub blocks: Vec<Block>,
    pub seed: u64,
}

impl AlgebraDecomposition {
    /// `(Σ d², Σ m², Σ d·m)`.
    pub fn dimension_sums(&self) -> (usize, usize, usize) {
        self.blocks
            .iter()
            .fold((0, 0, 0), |(a, c, t), b| (a + b.d * b.d, c + b.m * b.m, t + b.d * b.m))
    }

    /// Whether the sums match the algebra, commutant and Hilbert dimensions.
    pub fn identities_hold(&self) -> bool {
        self.dimension_sums() == (self.algebra_dim, self.commutant_dim, self.dim)
    }

    /// `(d, m)` of every block, largest irrep first.
    pub fn shape(&self) -> Vec<(usize, usize)> {
        let mut s: Vec<(usize, usize)> = self.blocks.iter().map(|b| (b.d, b.m)).collect();
        s.sort_by(|a, b| b.cmp(a));
        s
    }

    /// `[V_1 … V_k]`, a unitary on the full space.
    pub fn unitary(&self) -> CMatrix {
        let mut u = CMatrix::zeros(self.dim, self.dim);
        let mut col = 0;
        for b in &self.blocks {
            u.view_mut((0, col), (self.dim, b.d * b.m)).copy_from(&b.isometry);
            col += b.d * b.m;
        }
        u
    }

    /// Largest deviation of `U† G U` from the form `⊕ A_i ⊗ I_{m_i}`, over
    /// the generators of `ops`: `(off-block, in-block)`.
    pub fn residuals(&self, ops: &OperatorSet) -> (f64, f64) {
        let u = self.unitary();
        let mut off = 0.0f64;
        let mut inside = 0.0f64;
        for g in &ops.generators {
            let t = u.adjoint() * g * &u;
            let mut mask = CMatrix::zeros(self.dim, self.dim);
            let mut start = 0;
            for b in &self.blocks {
                let size = b.d * b.m;
                let blk = t.view((start, start), (size, size)).into_owned();
                inside = inside.max((&blk - factor_form(&blk, b.d, b.m)).norm());
                mask.view_mut((start, start), (size, size)).copy_from(&blk);
                start += size;
            }
            off = off.max((t - mask).norm());
        }
        (off, inside)
    }
}

/// Closest `A ⊗ I_m` to `blk`: `A = Tr_Z(blk) / m`.
fn factor_form(blk: &CMatrix, d: usize, m: usize) -> CMatrix {
    let a = partial_trace_z(blk, d, m) / Complex64::new(m as f64, 0.0);
    a.kronecker(&CMatrix::identity(m, m))
}

/// Partial trace over the multiplicity factor.
pub fn partial_trace_z(rho: &CMatrix, d: usize, m: usize) -> CMatrix {
    CMatrix::from_fn(d, d, |c1, c2| (0..m).map(|z| rho[(c1 * m + z, c2 * m + z)]).sum())
}

/// Partial trace over the irrep factor.
pub fn partial_trace_c(rho: &CMatrix, d: usize, m: usize) -> CMatrix {
    CMatrix::from_fn(m, m, |z1, z2| (0..d).map(|c| rho[(c * m + z1, c * m + z2)]).sum())
}

pub const DEFAULT_SEED: u64 = 0x5eed;

/// Decomposes the algebra generated by `ops`. Deterministic given `seed`.
pub fn decompose(ops: &OperatorSet, seed: u64) -> Result<AlgebraDecomposition, DfsError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let algebra = algebra_closure(ops);
    let comm = commutant(ops);
    let cent = center(ops, &algebra);
    let clusters = eigen_clusters(random_hermitian(&cent, &mut rng))?;
    let mut blocks = Vec::with_capacity(clusters.len());
    for (bi, (_, v)) in clusters.into_iter().enumerate() {
        let size = v.ncols();
        let restricted: Vec<CMatrix> = algebra.iter().map(|a| v.adjoint() * a * &v).collect();
        let algebra_dim = span_dimension(&restricted);
        let d = (algebra_dim as f64).sqrt().round() as usize;
        if d * d != algebra_dim || d == 0 || size % d != 0 {
            return Err(DfsError::Inconsistent {
                block: bi,
                size,
                algebra_dim,
            });
        }
        let m = size / d;
        let isometry = factorize(&v, d, m, bi, &comm, &mut rng)?;
        blocks.push(Block { d, m, isometry });
    }
    Ok(AlgebraDecomposition {
        dim: ops.dim,
        algebra_dim: algebra.len(),
        commutant_dim: comm.len(),
        center_dim: cent.len(),
        blocks,
        seed,
    })
}

/// Splits block `v` (an isometry onto a central eigenspace) into `m` copies
/// of a `d`-dimensional irrep with matched bases.
fn factorize(
    v: &CMatrix,
    d: usize,
    m: usize,
    block: usize,
    comm: &[CMatrix],
    rng: &mut ChaCha8Rng,
) -> Result<CMatrix, DfsError> {
    if m == 1 {
        return Ok(v.clone());
    }
    let local: Vec<CMatrix> = comm.iter().map(|c| v.adjoint() * c * v).collect();
    let copies = eigen_clusters(random_hermitian(&local, rng))?;
    if copies.len() != m || copies.iter().any(|(_, e)| e.ncols() != d) {
        return Err(DfsError::Inconsistent {
            block,
            size: v.ncols(),
            algebra_dim: d * d,
        });
    }
    // a generic commutant element maps copy 0 onto copy k as a multiple of
    // an algebra isomorphism
    let mut r = CMatrix::zeros(v.ncols(), v.ncols());
    for c in &local {
        r += c * Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    }
    let first = &copies[0].1;
    let mut out = CMatrix::zeros(v.nrows(), d * m);
    for (z, (_, e)) in copies.iter().enumerate() {
        let basis = if z == 0 {
            first.clone()
        } else {
            let mapped = e * (e.adjoint() * &r * first);
            let s = mapped.column(0).norm();
            if s < SEPARATION_TOL {
                return Err(DfsError::SingularIntertwiner { block, copy: z });
            }
            mapped / Complex64::new(s, 0.0)
        };
        let full = v * basis;
        for c in 0..d {
            out.set_column(c * m + z, &full.column(c));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Noiseless {
    pub block: usize,
    pub protected_dim: usize,
    pub irrep_dim: usize,
    pub kind: NoiselessKind,
}

/// Blocks with multiplicity at least 2, largest multiplicity first, ties by
/// smaller irrep dimension.
pub fn find_noiseless(dec: &AlgebraDecomposition) -> Vec<Noiseless> {
    let mut out: Vec<Noiseless> = dec
        .blocks
        .iter()
        .enumerate()
        .filter(|(_, b)| b.m >= 2)
        .map(|(i, b)| Noiseless {
            block: i,
            protected_dim: b.m,
            irrep_dim: b.d,
            kind: if b.d == 1 {
                NoiselessKind::Subspace
            } else {
                NoiselessKind::Subsystem
            },
        })
        .collect();
    out.sort_by(|a, b| {
        b.protected_dim
            .cmp(&a.protected_dim)
            .then(a.irrep_dim.cmp(&b.irrep_dim))
            .then(a.block.cmp(&b.block))
    });
    out
}

/// Trace norm distance `½‖a − b‖₁` of Hermitian matrices.
pub fn trace_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    let eig = SymmetricEigen::new(a - b);
    0.5 * eig.eigenvalues.iter().map(|x| x.abs()).sum::<f64>()
}

/// Prepares `ρ_C ⊗ ρ_Z` in block `index` from random states, evolves it
/// under `exp(−iG)` for each Hermitian generator and returns the largest
/// trace distance between the evolved and original multiplicity factors.
pub fn protected_subsystem_error(dec: &AlgebraDecomposition, ops: &OperatorSet, index: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = &dec.blocks[index];
    let random_state = |k: usize, rng: &mut ChaCha8Rng| {
        let mut g = CMatrix::zeros(k, k);
        for x in g.iter_mut() {
            *x = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
        let rho = &g * g.adjoint();
        let tr = rho.trace();
        rho / tr
    };
    let rho_c = random_state(b.d, &mut rng);
    let rho_z = random_state(b.m, &mut rng);
    let rho = &b.isometry * rho_c.kronecker(&rho_z) * b.isometry.adjoint();
    let mut worst = 0.0f64;
    for g in &ops.generators {
        let herm = (g + g.adjoint()) * Complex64::new(0.5, 0.0);
        let eig = SymmetricEigen::new(herm);
        let phases = CMatrix::from_diagonal(&eig.eigenvalues.map(|e| Complex64::new(0.0, -e).exp()));
        let u = &eig.eigenvectors * phases * eig.eigenvectors.adjoint();
        let evolved = &u * &rho * u.adjoint();
        let local = b.isometry.adjoint() * evolved * &b.isometry;
        let z = partial_trace_c(&local, b.d, b.m);
        worst = worst.max(trace_distance(&z, &rho_z));
    }
    worst
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockReport {
    pub d: usize,
    pub m: usize,
    pub kind: Option<NoiselessKind>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DfsReport {
    pub dim: usize,
    pub algebra_dim: usize,
    pub commutant_dim: usize,
    pub center_dim: usize,
    pub blocks: Vec<BlockReport>,
    pub noiseless: Vec<Noiseless>,
    pub identities_hold: bool,
    pub off_block_residual: f64,
    pub in_block_residual: f64,
    pub seed: u64,
}

pub fn report(dec: &AlgebraDecomposition, ops: &OperatorSet) -> DfsReport {
    let (off, inside) = dec.residuals(ops);
    DfsReport {
        dim: dec.dim,
        algebra_dim: dec.algebra_dim,
        commutant_dim: dec.commutant_dim,
        center_dim: dec.center_dim,
        blocks: dec
            .blocks
            .iter()
            .map(|b| BlockReport {
                d: b.d,
                m: b.m,
                kind: (b.m >= 2).then_some(if b.d == 1 {
                    NoiselessKind::Subspace
                } else {
                    NoiselessKind::Subsystem
                }),
            })
            .collect(),
        noiseless: find_noiseless(dec),
        identities_hold: dec.identities_hold(),
        off_block_residual: off,
        in_block_residual: inside,
        seed: dec.seed,
    }
}
