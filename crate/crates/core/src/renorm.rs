//! Renormalization as decoding.
//!
//! One renormalization step takes a single-qubit Pauli channel, applies it
//! independently to every qubit of a code block, runs syndrome-lookup
//! recovery and decodes. What is left acting on the block spin is again a
//! Pauli channel, so the step is a map on the probability simplex
//! `(p_I, p_X, p_Y, p_Z)`. Iterating it gives the flow; its two attracting
//! fixed points are the identity channel and a noise sink.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::codes::{CodeError, StabilizerCode};
use crate::group::StabilizerGroup;
use crate::pauli::{Pauli, PauliKind};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChannelError {
    #[error("invalid channel {0:?}: probabilities must be nonnegative and sum to 1")]
    InvalidChannel([f64; 4]),
    #[error("effective channel requires k = 1, code has k = {0}")]
    NotSingleLogical(usize),
    #[error("syndrome space of 2^{0} exceeds the enumeration budget")]
    EnumerationBudget(usize),
    #[error("recovery table has no entry for syndrome {0}")]
    IncompleteRecovery(String),
    #[error("flow did not resolve within {levels} levels (close to threshold?)")]
    Indeterminate { levels: usize },
    #[error("invalid threshold bracket [{lo}, {hi}]: order parameters {order_lo:?} and {order_hi:?}")]
    InvalidBracket {
        lo: f64,
        hi: f64,
        order_lo: Option<u8>,
        order_hi: Option<u8>,
    },
    #[error("bisection became indeterminate inside [{lo}, {hi}]")]
    IndeterminateBracket { lo: f64, hi: f64 },
    #[error("finite-difference step {0} is too small")]
    StepUnderflow(f64),
    #[error("epsilon must lie in (0, 1), got {0}")]
    InvalidEpsilon(f64),
    #[error("memory support overflows")]
    SupportOverflow,
    #[error("error acts on {got} qubits, expected {expected}")]
    ErrorSize { got: usize, expected: usize },
}

impl From<CodeError> for ChannelError {
    fn from(e: CodeError) -> Self {
        match e {
            CodeError::NotSingleLogical(k) => ChannelError::NotSingleLogical(k),
            other => ChannelError::IncompleteRecovery(other.to_string()),
        }
    }
}

/// Single-qubit Pauli channel `ρ ↦ Σ_σ p_σ σρσ`, indexed `[I, X, Y, Z]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PauliChannel {
    probs: [f64; 4],
}

pub const PROBABILITY_TOL: f64 = 1e-12;

impl PauliChannel {
    pub fn new(probs: [f64; 4]) -> Result<Self, ChannelError> {
        let sum: f64 = probs.iter().sum();
        if probs.iter().any(|&p| !(p >= 0.0) || !p.is_finite()) || (sum - 1.0).abs() > PROBABILITY_TOL {
            return Err(ChannelError::InvalidChannel(probs));
        }
        Ok(Self { probs })
    }

    pub fn identity() -> Self {
        Self {
            probs: [1.0, 0.0, 0.0, 0.0],
        }
    }

    pub fn uniform() -> Self {
        Self { probs: [0.25; 4] }
    }

    pub fn depolarizing(p: f64) -> Result<Self, ChannelError> {
        Self::new([1.0 - p, p / 3.0, p / 3.0, p / 3.0])
    }

    pub fn bit_flip(p: f64) -> Result<Self, ChannelError> {
        Self::new([1.0 - p, p, 0.0, 0.0])
    }

    pub fn phase_flip(p: f64) -> Result<Self, ChannelError> {
        Self::new([1.0 - p, 0.0, 0.0, p])
    }

    pub fn probs(&self) -> [f64; 4] {
        self.probs
    }

    pub fn prob(&self, kind: PauliKind) -> f64 {
        self.probs[kind.index()]
    }

    /// Total error probability `1 − p_I`.
    pub fn error_probability(&self) -> f64 {
        1.0 - self.probs[0]
    }

    /// Shannon entropy in bits.
    pub fn entropy(&self) -> f64 {
        self.probs.iter().filter(|&&p| p > 0.0).map(|&p| -p * p.log2()).sum()
    }

    /// Hashing-bound quality `1 − H(p)`: 1 for the identity channel, −1 for
    /// the completely depolarizing one.
    pub fn quality(&self) -> f64 {
        1.0 - self.entropy()
    }

    pub fn l1_distance(&self, other: &PauliChannel) -> f64 {
        self.probs.iter().zip(&other.probs).map(|(a, b)| (a - b).abs()).sum()
    }
}

/// Parameterized channel families for threshold scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ChannelFamily {
    Depolarizing,
    BitFlip,
    PhaseFlip,
}

impl ChannelFamily {
    pub fn at(self, p: f64) -> Result<PauliChannel, ChannelError> {
        match self {
            ChannelFamily::Depolarizing => PauliChannel::depolarizing(p),
            ChannelFamily::BitFlip => PauliChannel::bit_flip(p),
            ChannelFamily::PhaseFlip => PauliChannel::phase_flip(p),
        }
    }
}

/// Largest number of checks for which the syndrome-class transfer is run.
pub const MAX_SYNDROME_BITS: usize = 20;

/// Precomputed linear data for one code: per-qubit syndrome and logical
/// class contributions of each single-qubit Pauli, and the logical class of
/// every table correction. The residual class after recovery is
/// `class(e) ⊕ class(R(s(e)))`, and both `s(e)` and `class(e)` are sums over
/// qubits, so the channel follows from a transfer over (syndrome, class)
/// pairs rather than an explicit sum over all `4^n` errors.
#[derive(Debug, Clone)]
pub struct RecursionMap {
    n: usize,
    syndrome_bits: usize,
    contributions: Vec<[(usize, usize); 4]>,
    correction_class: Vec<usize>,
}

fn class_bits(code: &StabilizerCode, p: &Pauli) -> usize {
    let (x, z) = code.logical_class(p, 0).bits();
    x as usize | (z as usize) << 1
}

fn class_kind(bits: usize) -> PauliKind {
    PauliKind::from_bits(bits & 1 == 1, bits & 2 == 2)
}

impl RecursionMap {
    pub fn new(code: &StabilizerCode) -> Result<Self, ChannelError> {
        if code.num_logical() != 1 {
            return Err(ChannelError::NotSingleLogical(code.num_logical()));
        }
        let n = code.num_qubits();
        let m = code.generators().len();
        if m > MAX_SYNDROME_BITS {
            return Err(ChannelError::EnumerationBudget(m));
        }
        let contributions = (0..n)
            .map(|q| {
                PauliKind::ALL.map(|kind| {
                    let e = Pauli::single(n, q, kind).expect("in range");
                    (code.syndrome(&e).low_word() as usize, class_bits(code, &e))
                })
            })
            .collect();
        let mut correction_class = vec![0; 1 << m];
        for (s, slot) in correction_class.iter_mut().enumerate() {
            let mut bits = crate::bits::Bits::zeros(m);
            for i in 0..m {
                bits.set(i, (s >> i) & 1 == 1);
            }
            let r = code
                .recovery(&bits)
                .ok_or_else(|| ChannelError::IncompleteRecovery(bits.to_string()))?;
            *slot = class_bits(code, r);
        }
        Ok(Self {
            n,
            syndrome_bits: m,
            contributions,
            correction_class,
        })
    }

    /// The recursion on raw probability vectors. No validation, so it can
    /// be evaluated slightly outside the simplex for finite differences.
    pub fn apply_raw(&self, probs: [f64; 4]) -> [f64; 4] {
        let states = 1usize << self.syndrome_bits;
        let mut dist = vec![0.0f64; states * 4];
        dist[0] = 1.0;
        let mut next = vec![0.0f64; states * 4];
        for contrib in &self.contributions {
            next.iter_mut().for_each(|v| *v = 0.0);
            for (state, &w) in dist.iter().enumerate() {
                if w == 0.0 {
                    continue;
                }
                let (s, c) = (state >> 2, state & 3);
                for (kind, &(ds, dc)) in contrib.iter().enumerate() {
                    next[((s ^ ds) << 2) | (c ^ dc)] += w * probs[kind];
                }
            }
            std::mem::swap(&mut dist, &mut next);
        }
        let mut out = [0.0; 4];
        for (state, &w) in dist.iter().enumerate() {
            let (s, c) = (state >> 2, state & 3);
            out[class_kind(c ^ self.correction_class[s]).index()] += w;
        }
        out
    }

    /// The recursion on a channel. The output is renormalized: the map
    /// multiplies any deviation of the total probability from 1 by `n`, so
    /// rounding would otherwise blow up over many levels.
    pub fn apply(&self, ch: &PauliChannel) -> PauliChannel {
        let raw = self.apply_raw(ch.probs);
        let sum: f64 = raw.iter().sum();
        PauliChannel {
            probs: raw.map(|p| p / sum),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }
}

/// Logical channel after one encode → i.i.d. noise → recover → decode cycle.
pub fn effective_channel(code: &StabilizerCode, ch: &PauliChannel) -> Result<PauliChannel, ChannelError> {
    Ok(RecursionMap::new(code)?.apply(ch))
}

/// Largest `n` for the explicit sum over every Pauli error.
pub const MAX_ENUMERATION_QUBITS: usize = 10;

/// Same channel as [`effective_channel`], by explicitly visiting each of the
/// `4^n` errors, correcting it and classifying the residual.
pub fn effective_channel_by_enumeration(
    code: &StabilizerCode,
    ch: &PauliChannel,
) -> Result<PauliChannel, ChannelError> {
    if code.num_logical() != 1 {
        return Err(ChannelError::NotSingleLogical(code.num_logical()));
    }
    let n = code.num_qubits();
    if n > MAX_ENUMERATION_QUBITS {
        return Err(ChannelError::EnumerationBudget(2 * n));
    }
    let mut out = [0.0; 4];
    for e in crate::pauli::all_paulis(n) {
        let weight: f64 = (0..n).map(|q| ch.prob(e.kind(q))).product();
        if weight == 0.0 {
            continue;
        }
        let residual = code
            .correct(&e)
            .ok_or_else(|| ChannelError::IncompleteRecovery(code.syndrome(&e).to_string()))?;
        out[code.logical_class(&residual, 0).index()] += weight;
    }
    Ok(PauliChannel { probs: out })
}

/// Monte Carlo estimate of the logical channel from `samples` random errors.
pub fn sample_effective_channel(
    code: &StabilizerCode,
    ch: &PauliChannel,
    samples: usize,
    seed: u64,
) -> Result<PauliChannel, ChannelError> {
    if code.num_logical() != 1 {
        return Err(ChannelError::NotSingleLogical(code.num_logical()));
    }
    let n = code.num_qubits();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cumulative = {
        let p = ch.probs;
        [p[0], p[0] + p[1], p[0] + p[1] + p[2]]
    };
    let mut counts = [0usize; 4];
    let mut kinds = vec![PauliKind::I; n];
    for _ in 0..samples {
        for k in kinds.iter_mut() {
            let u: f64 = rng.gen();
            *k = match cumulative.iter().position(|&c| u < c) {
                Some(i) => PauliKind::ALL[i],
                None => PauliKind::Z,
            };
        }
        let e = Pauli::from_kinds(&kinds);
        let residual = code
            .correct(&e)
            .ok_or_else(|| ChannelError::IncompleteRecovery(code.syndrome(&e).to_string()))?;
        counts[code.logical_class(&residual, 0).index()] += 1;
    }
    let probs = counts.map(|c| c as f64 / samples as f64);
    Ok(PauliChannel { probs })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlowConfig {
    pub max_levels: usize,
    pub tol: f64,
}

impl Default for FlowConfig {
    fn default() -> Self {
        Self {
            max_levels: 40,
            tol: 1e-12,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ConvergedToIdentity,
    ConvergedToNoise,
    MaxIterations,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::ConvergedToIdentity => "converged-to-identity",
            Verdict::ConvergedToNoise => "converged-to-noise",
            Verdict::MaxIterations => "max-iterations",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlowLevel {
    pub r: usize,
    pub channel: PauliChannel,
    pub quality: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlowTrajectory {
    pub levels: Vec<FlowLevel>,
    pub verdict: Verdict,
}

impl FlowTrajectory {
    pub fn last(&self) -> &FlowLevel {
        self.levels.last().expect("level 0 is always present")
    }

    /// CSV with columns `r,p_I,p_X,p_Y,p_Z,q_r`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,p_I,p_X,p_Y,p_Z,q_r\n");
        for lvl in &self.levels {
            let p = lvl.channel.probs();
            out.push_str(&format!(
                "{},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e}\n",
                lvl.r, p[0], p[1], p[2], p[3], lvl.quality
            ));
        }
        out
    }
}

/// Iterates the recursion from `ch`.
///
/// Stops with `ConvergedToIdentity` once `1 − p_I < tol`, with
/// `ConvergedToNoise` once successive channels differ by less than `tol` in
/// L1 norm away from the identity, and with `MaxIterations` when
/// `max_levels` channels (level 0 included) have been produced.
pub fn flow(code: &StabilizerCode, ch: &PauliChannel, config: FlowConfig) -> Result<FlowTrajectory, ChannelError> {
    let map = RecursionMap::new(code)?;
    Ok(flow_with(&map, ch, config))
}

pub fn flow_with(map: &RecursionMap, ch: &PauliChannel, config: FlowConfig) -> FlowTrajectory {
    let level = |r, channel: PauliChannel| FlowLevel {
        r,
        channel,
        quality: channel.quality(),
    };
    let mut levels = vec![level(0, *ch)];
    if ch.error_probability() < config.tol {
        return FlowTrajectory {
            levels,
            verdict: Verdict::ConvergedToIdentity,
        };
    }
    let mut cur = *ch;
    while levels.len() < config.max_levels {
        let next = map.apply(&cur);
        levels.push(level(levels.len(), next));
        if next.error_probability() < config.tol {
            return FlowTrajectory {
                levels,
                verdict: Verdict::ConvergedToIdentity,
            };
        }
        if next.l1_distance(&cur) < config.tol {
            return FlowTrajectory {
                levels,
                verdict: Verdict::ConvergedToNoise,
            };
        }
        cur = next;
    }
    FlowTrajectory {
        levels,
        verdict: Verdict::MaxIterations,
    }
}

/// 1 if the flow reaches the identity channel, 0 if it reaches the noise
/// sink; an unresolved flow is an error, never a silent 0.
pub fn order_parameter(code: &StabilizerCode, ch: &PauliChannel, config: FlowConfig) -> Result<u8, ChannelError> {
    let map = RecursionMap::new(code)?;
    order_parameter_with(&map, ch, config)
}

fn order_parameter_with(map: &RecursionMap, ch: &PauliChannel, config: FlowConfig) -> Result<u8, ChannelError> {
    let traj = flow_with(map, ch, config);
    match traj.verdict {
        Verdict::ConvergedToIdentity => Ok(1),
        Verdict::ConvergedToNoise => Ok(0),
        Verdict::MaxIterations => Err(ChannelError::Indeterminate {
            levels: traj.levels.len(),
        }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BisectionStep {
    pub lo: f64,
    pub hi: f64,
    pub p: f64,
    pub order: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdResult {
    pub p_star: f64,
    pub lo: f64,
    pub hi: f64,
    pub steps: Vec<BisectionStep>,
}

pub const THRESHOLD_WIDTH: f64 = 1e-3;

/// Bisects on the order parameter until the bracket is narrower than
/// `width`; returns the bracket midpoint.
pub fn threshold(
    code: &StabilizerCode,
    family: impl Fn(f64) -> Result<PauliChannel, ChannelError>,
    p_lo: f64,
    p_hi: f64,
    width: f64,
    config: FlowConfig,
) -> Result<ThresholdResult, ChannelError> {
    let map = RecursionMap::new(code)?;
    let order = |p: f64| -> Result<u8, ChannelError> { order_parameter_with(&map, &family(p)?, config) };
    let (o_lo, o_hi) = (order(p_lo).ok(), order(p_hi).ok());
    if !(p_lo < p_hi) || o_lo != Some(1) || o_hi != Some(0) {
        return Err(ChannelError::InvalidBracket {
            lo: p_lo,
            hi: p_hi,
            order_lo: o_lo,
            order_hi: o_hi,
        });
    }
    let (mut lo, mut hi) = (p_lo, p_hi);
    let mut steps = Vec::new();
    while hi - lo >= width {
        let mid = 0.5 * (lo + hi);
        let o = order(mid).map_err(|_| ChannelError::IndeterminateBracket { lo, hi })?;
        steps.push(BisectionStep {
            lo,
            hi,
            p: mid,
            order: o,
        });
        if o == 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(ThresholdResult {
        p_star: 0.5 * (lo + hi),
        lo,
        hi,
        steps,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relevance {
    Relevant,
    Irrelevant,
    Marginal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Eigenvalue {
    pub re: f64,
    pub im: f64,
    pub magnitude: f64,
    pub relevance: Relevance,
}

/// Jacobian of the recursion at `fixed`, by central differences along the
/// tangent directions `δX − δI`, `δY − δI`, `δZ − δI`, and its eigenvalues.
pub fn linearize(code: &StabilizerCode, fixed: &PauliChannel, step: f64) -> Result<Vec<Eigenvalue>, ChannelError> {
    if !(step >= 1e-10) || !step.is_finite() {
        return Err(ChannelError::StepUnderflow(step));
    }
    let map = RecursionMap::new(code)?;
    let base = fixed.probs();
    let mut jac = nalgebra::Matrix3::<f64>::zeros();
    for j in 0..3 {
        let mut plus = base;
        let mut minus = base;
        plus[0] -= step;
        plus[j + 1] += step;
        minus[0] += step;
        minus[j + 1] -= step;
        let (fp, fm) = (map.apply_raw(plus), map.apply_raw(minus));
        for i in 0..3 {
            jac[(i, j)] = (fp[i + 1] - fm[i + 1]) / (2.0 * step);
        }
    }
    let mut eig: Vec<Eigenvalue> = jac
        .complex_eigenvalues()
        .iter()
        .map(|z: &Complex64| {
            let magnitude = z.norm();
            let relevance = if (magnitude - 1.0).abs() < 1e-9 {
                Relevance::Marginal
            } else if magnitude > 1.0 {
                Relevance::Relevant
            } else {
                Relevance::Irrelevant
            };
            Eigenvalue {
                re: z.re,
                im: z.im,
                magnitude,
                relevance,
            }
        })
        .collect();
    eig.sort_by(|a, b| b.magnitude.total_cmp(&a.magnitude));
    Ok(eig)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MemorySupport {
    Infinite,
    Finite { r_star: usize, size: u128 },
}

/// ε-memory support `n^{r*} · L^d`, where `r*` is the first level whose
/// quality drops below `epsilon` and `n` the block size of the code.
pub fn memory_support(
    code: &StabilizerCode,
    ch: &PauliChannel,
    epsilon: f64,
    extent: u64,
    dim: u32,
    config: FlowConfig,
) -> Result<MemorySupport, ChannelError> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(ChannelError::InvalidEpsilon(epsilon));
    }
    let traj = flow(code, ch, config)?;
    match traj.verdict {
        Verdict::ConvergedToIdentity => Ok(MemorySupport::Infinite),
        Verdict::MaxIterations => Err(ChannelError::Indeterminate {
            levels: traj.levels.len(),
        }),
        Verdict::ConvergedToNoise => {
            let r_star =
                traj.levels
                    .iter()
                    .find(|l| l.quality < epsilon)
                    .map(|l| l.r)
                    .ok_or(ChannelError::Indeterminate {
                        levels: traj.levels.len(),
                    })?;
            let block = (code.num_qubits() as u128)
                .checked_pow(r_star as u32)
                .ok_or(ChannelError::SupportOverflow)?;
            let volume = (extent as u128).checked_pow(dim).ok_or(ChannelError::SupportOverflow)?;
            let size = block.checked_mul(volume).ok_or(ChannelError::SupportOverflow)?;
            Ok(MemorySupport::Finite { r_star, size })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub correctable: bool,
    /// Residual after decoding each level: `residuals[j]` acts on the
    /// `n^{r-j-1}` block spins of level `j + 1`.
    pub residuals: Vec<Pauli>,
}

/// Decodes a Pauli error on `n^r` qubits level by level. Block `b` of a
/// level is the consecutive run of qubits `b·n .. (b+1)·n`; its decoded
/// logical class becomes the error on block spin `b` of the next level.
pub fn classify_error(code: &StabilizerCode, levels: usize, e: &Pauli) -> Result<Classification, ChannelError> {
    if code.num_logical() != 1 {
        return Err(ChannelError::NotSingleLogical(code.num_logical()));
    }
    let n = code.num_qubits();
    let expected = n.pow(levels as u32);
    if e.num_qubits() != expected {
        return Err(ChannelError::ErrorSize {
            got: e.num_qubits(),
            expected,
        });
    }
    let mut cur = e.unsigned();
    let mut residuals = Vec::with_capacity(levels);
    for _ in 0..levels {
        let blocks = cur.num_qubits() / n;
        let mut kinds = Vec::with_capacity(blocks);
        for b in 0..blocks {
            let local = cur.restrict(b * n, (b + 1) * n);
            let residual = code
                .correct(&local)
                .ok_or_else(|| ChannelError::IncompleteRecovery(code.syndrome(&local).to_string()))?;
            kinds.push(code.logical_class(&residual, 0));
        }
        cur = Pauli::from_kinds(&kinds);
        residuals.push(cur.clone());
    }
    Ok(Classification {
        correctable: cur.is_identity_up_to_phase(),
        residuals,
    })
}

/// Replaces each single-qubit operator on logical qubit `q` by the code's
/// logical operator on block `q`, phase exact.
pub fn lift(code: &StabilizerCode, p: &Pauli) -> Pauli {
    let n = code.num_qubits();
    let m = p.num_qubits();
    let xbar = &code.logical_x()[0];
    let zbar = &code.logical_z()[0];
    let mut out = Pauli::identity(n * m).with_phase(p.phase_exp());
    for q in 0..m {
        let place = |op: &Pauli| {
            let mut full = Pauli::identity(q * n)
                .tensor(op)
                .tensor(&Pauli::identity((m - q - 1) * n));
            full = full.with_phase(op.phase_exp());
            full
        };
        if p.x_bits().get(q) {
            out.mul_assign_right(&place(xbar));
        }
        if p.z_bits().get(q) {
            out.mul_assign_right(&place(zbar));
        }
    }
    out
}

/// Stabilizer group of the `r`-fold concatenated logical `|0⟩` on `n^r`
/// qubits.
pub fn concatenated_zero_state(code: &StabilizerCode, levels: usize) -> Result<StabilizerGroup, ChannelError> {
    if code.num_logical() != 1 {
        return Err(ChannelError::NotSingleLogical(code.num_logical()));
    }
    let n = code.num_qubits();
    let mut gens = vec![Pauli::single(1, 0, PauliKind::Z).expect("in range")];
    let mut width = 1;
    for _ in 0..levels {
        let mut next: Vec<Pauli> = gens.iter().map(|g| lift(code, g)).collect();
        for b in 0..width {
            for m in code.generators() {
                let placed = Pauli::identity(b * n)
                    .tensor(m)
                    .tensor(&Pauli::identity((width - b - 1) * n));
                next.push(placed);
            }
        }
        gens = next;
        width *= n;
    }
    StabilizerGroup::new(width, gens).map_err(|e| ChannelError::IncompleteRecovery(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn channel_validation() {
        assert!(PauliChannel::new([0.5, 0.5, 0.0, 0.0]).is_ok());
        assert!(PauliChannel::new([0.5, 0.6, 0.0, 0.0]).is_err());
        assert!(PauliChannel::new([1.1, -0.1, 0.0, 0.0]).is_err());
        assert!(PauliChannel::new([f64::NAN, 1.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn quality_endpoints() {
        assert_eq!(PauliChannel::identity().quality(), 1.0);
        assert_eq!(PauliChannel::uniform().quality(), -1.0);
    }

    #[test]
    fn identity_flow_has_one_level() {
        let t = flow(
            &StabilizerCode::five_qubit(),
            &PauliChannel::identity(),
            FlowConfig::default(),
        )
        .unwrap();
        assert_eq!(t.levels.len(), 1);
        assert_eq!(t.verdict, Verdict::ConvergedToIdentity);
    }

    #[test]
    fn toric_code_is_rejected() {
        let t = StabilizerCode::toric(2).unwrap();
        assert_eq!(
            effective_channel(&t, &PauliChannel::uniform()).unwrap_err(),
            ChannelError::NotSingleLogical(2)
        );
    }

    #[test]
    fn trivial_code_is_the_identity_map() {
        let code = StabilizerCode::trivial();
        let ch = PauliChannel::new([0.7, 0.1, 0.15, 0.05]).unwrap();
        let out = effective_channel(&code, &ch).unwrap();
        for (a, b) in out.probs().iter().zip(ch.probs()) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn step_and_epsilon_validation() {
        let code = StabilizerCode::five_qubit();
        assert!(matches!(
            linearize(&code, &PauliChannel::identity(), 0.0),
            Err(ChannelError::StepUnderflow(_))
        ));
        assert!(matches!(
            memory_support(&code, &PauliChannel::identity(), 1.5, 1, 1, FlowConfig::default()),
            Err(ChannelError::InvalidEpsilon(_))
        ));
    }

    #[test]
    fn identity_error_is_correctable() {
        let code = StabilizerCode::five_qubit();
        let c = classify_error(&code, 2, &Pauli::identity(25)).unwrap();
        assert!(c.correctable);
        assert!(c.residuals.iter().all(Pauli::is_identity_up_to_phase));
        assert_eq!(c.residuals[0].num_qubits(), 5);
        assert!(matches!(
            classify_error(&code, 2, &Pauli::identity(5)),
            Err(ChannelError::ErrorSize { got: 5, expected: 25 })
        ));
    }
}
