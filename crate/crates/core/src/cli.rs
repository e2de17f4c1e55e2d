//! Command-line front end. Every artifact carries a metadata block (tool,
//! version, schema version, command, configuration, seed) and is a pure
//! function of the flags, so repeated runs are byte-identical.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::codes::{CodeDocument, StabilizerCode, TileHamiltonian};
use crate::dfs::{self, OperatorSet};
use crate::dynamics::{self, CycleConfig, LogisticParams};
use crate::pauli::{Pauli, PauliKind};
use crate::renorm::{self, ChannelFamily, FlowConfig, FlowTrajectory, MemorySupport, PauliChannel};
use crate::tiling::{self, Handedness, Tiling};
use crate::toric::{self, ToricState};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL: &str = "blockspin";

#[derive(Debug, Parser)]
#[command(name = "blockspin", version, about = "Block-spin renormalization with quantum codes")]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Artifact path; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Artifact format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Show a code, its syndrome table and optional dense checks.
    Code(CodeCmd),
    /// Synthesize the Clifford decoder of a single-logical code.
    Decode(DecodeCmd),
    /// Iterate the effective-channel recursion.
    ChannelFlow(FlowCmd),
    /// Bisect for the threshold of a channel family.
    Threshold(ThresholdCmd),
    /// ε-memory support of a channel.
    MemorySupport(MemoryCmd),
    /// Decode an error on a concatenated register level by level.
    Classify(ClassifyCmd),
    /// Build and validate a periodic tiling.
    Tiling(TilingCmd),
    /// Toric-code rescaling, entropies and cardinality scan.
    Toric(ToricCmd),
    /// Decompose an operator algebra and list noiseless blocks.
    Dfs(DfsCmd),
    /// Logistic ODE against its finite-difference map.
    Logistic(LogisticCmd),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Code(_) => "code",
            Command::Decode(_) => "decode",
            Command::ChannelFlow(_) => "channel-flow",
            Command::Threshold(_) => "threshold",
            Command::MemorySupport(_) => "memory-support",
            Command::Classify(_) => "classify",
            Command::Tiling(_) => "tiling",
            Command::Toric(_) => "toric",
            Command::Dfs(_) => "dfs",
            Command::Logistic(_) => "logistic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CodeName {
    FiveQubit,
    Steane,
    Shor,
    Trivial,
    Toric,
}

#[derive(Debug, Args, Serialize)]
pub struct CodeSel {
    /// Built-in code.
    #[arg(long, value_enum, default_value = "five-qubit")]
    pub code: CodeName,
    /// Torus side for `--code toric`.
    #[arg(long = "L", default_value_t = 3)]
    pub l: usize,
    /// JSON code document; overrides `--code`.
    #[arg(long)]
    pub code_file: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
#[group(required = true, multiple = false)]
pub struct ChannelSel {
    #[arg(long)]
    pub depolarizing: Option<f64>,
    #[arg(long)]
    pub bit_flip: Option<f64>,
    #[arg(long)]
    pub phase_flip: Option<f64>,
    /// Explicit `p_I,p_X,p_Y,p_Z`.
    #[arg(long, value_delimiter = ',', num_args = 4)]
    pub channel: Option<Vec<f64>>,
}

#[derive(Debug, Args, Serialize)]
pub struct CodeCmd {
    #[command(flatten)]
    pub sel: CodeSel,
    /// Report syndrome, correction and logical class of this error.
    #[arg(long)]
    pub error: Option<String>,
    /// Tile-Hamiltonian couplings, one per generator; reports the ground
    /// energy and degeneracy.
    #[arg(long, value_delimiter = ',')]
    pub couplings: Option<Vec<f64>>,
    /// Include the signed amplitudes of the logical |0⟩.
    #[arg(long)]
    pub amplitudes: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct DecodeCmd {
    #[command(flatten)]
    pub sel: CodeSel,
    /// Report the decoder image of this operator.
    #[arg(long)]
    pub op: Option<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct FlowCmd {
    #[command(flatten)]
    pub sel: CodeSel,
    #[command(flatten)]
    pub channel: ChannelSel,
    #[arg(long, default_value_t = 40)]
    pub max_levels: usize,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyName {
    Depolarizing,
    BitFlip,
    PhaseFlip,
}

#[derive(Debug, Args, Serialize)]
pub struct ThresholdCmd {
    #[command(flatten)]
    pub sel: CodeSel,
    #[arg(long, value_enum, default_value = "depolarizing")]
    pub family: FamilyName,
    #[arg(long, default_value_t = 0.01)]
    pub lo: f64,
    #[arg(long, default_value_t = 0.3)]
    pub hi: f64,
    #[arg(long, default_value_t = renorm::THRESHOLD_WIDTH)]
    pub width: f64,
    /// Finite-difference step for the Jacobian at the threshold.
    #[arg(long, default_value_t = 1e-6)]
    pub delta: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct MemoryCmd {
    #[command(flatten)]
    pub sel: CodeSel,
    #[command(flatten)]
    pub channel: ChannelSel,
    #[arg(long)]
    pub epsilon: f64,
    /// Lattice extent L.
    #[arg(long, default_value_t = 1)]
    pub extent: u64,
    /// Lattice dimension d.
    #[arg(long, default_value_t = 1)]
    pub dim: u32,
}

#[derive(Debug, Args, Serialize)]
pub struct ClassifyCmd {
    #[command(flatten)]
    pub sel: CodeSel,
    /// Concatenation depth r; the register has n^r qubits.
    #[arg(long, default_value_t = 2)]
    pub levels: usize,
    /// Dense error string of length n^r.
    #[arg(long, conflicts_with = "sparse")]
    pub error: Option<String>,
    /// Sparse error such as `X7,Z12`.
    #[arg(long)]
    pub sparse: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Hand {
    Right,
    Left,
}

impl From<Hand> for Handedness {
    fn from(h: Hand) -> Self {
        match h {
            Hand::Right => Handedness::Right,
            Hand::Left => Handedness::Left,
        }
    }
}

#[derive(Debug, Args, Serialize)]
#[group(required = true, multiple = false)]
pub struct ShapeSel {
    #[arg(long)]
    pub plus: bool,
    #[arg(long)]
    pub brick: bool,
    /// One-dimensional blocks of this many sites.
    #[arg(long)]
    pub chain: Option<usize>,
}

#[derive(Debug, Args, Serialize)]
pub struct TilingCmd {
    #[command(flatten)]
    pub shape: ShapeSel,
    #[arg(long = "L")]
    pub l: usize,
    #[arg(long, value_enum, default_value = "right")]
    pub hand: Hand,
    /// Also build the hierarchical assignment with this many levels.
    #[arg(long)]
    pub levels: Option<usize>,
    /// Write an SVG drawing here.
    #[arg(long)]
    #[serde(skip)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct ToricCmd {
    #[arg(long = "L", default_value_t = 5)]
    pub l: usize,
    /// Anchor `x,y` of the rescaled generators shown.
    #[arg(long, value_delimiter = ',', num_args = 2, default_values_t = [0, 0])]
    pub anchor: Vec<usize>,
    /// Run the BFS cardinality scan.
    #[arg(long)]
    pub scan: bool,
    /// Write an SVG of the rescaled generator supports here.
    #[arg(long)]
    #[serde(skip)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
#[group(required = true, multiple = false)]
pub struct DfsCmd {
    /// Collective S_x, S_y, S_z on this many qubits.
    #[arg(long)]
    pub collective: Option<usize>,
    /// Comma-separated Pauli generators.
    #[arg(long)]
    pub paulis: Option<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct LogisticCmd {
    #[arg(long)]
    pub r: f64,
    #[arg(long = "K")]
    pub k: f64,
    #[arg(long)]
    pub dt: f64,
    #[arg(long, default_value_t = 0.1)]
    pub n0: f64,
    #[arg(long, default_value_t = 1280)]
    pub steps: usize,
    /// Bifurcation scan `mu_min,mu_max,points` instead of a single orbit.
    #[arg(long, value_delimiter = ',', num_args = 3)]
    pub scan: Option<Vec<f64>>,
}

#[derive(Debug)]
enum CliError {
    Domain(String),
}

fn domain<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Domain(e.to_string())
}

struct Meta {
    value: Value,
}

impl Meta {
    fn new(cli: &Cli) -> Self {
        let config = serde_json::to_value(&cli.command).unwrap_or(Value::Null);
        Self {
            value: json!({
                "tool": TOOL,
                "version": env!("CARGO_PKG_VERSION"),
                "schema_version": SCHEMA_VERSION,
                "command": cli.command.name(),
                "config": config,
                "seed": cli.seed,
            }),
        }
    }

    fn line(&self) -> String {
        serde_json::to_string(&self.value).expect("metadata serializes")
    }
}

enum Artifact {
    Json(Value),
    Csv(String),
    Svg(String),
}

struct Outcome {
    summary: String,
    artifact: Artifact,
    extra_files: Vec<(PathBuf, String)>,
}

impl Outcome {
    fn new(summary: String, artifact: Artifact) -> Self {
        Self {
            summary,
            artifact,
            extra_files: Vec::new(),
        }
    }
}

fn render(meta: &Meta, artifact: Artifact) -> String {
    match artifact {
        Artifact::Json(mut v) => {
            let body = match v.as_object_mut() {
                Some(map) => {
                    let mut out = serde_json::Map::new();
                    out.insert("metadata".into(), meta.value.clone());
                    out.append(map);
                    Value::Object(out)
                }
                None => json!({"metadata": meta.value, "result": v}),
            };
            let mut s = serde_json::to_string_pretty(&body).expect("json serializes");
            s.push('\n');
            s
        }
        Artifact::Csv(body) => format!("# {}\n{body}", meta.line()),
        Artifact::Svg(body) => body,
    }
}

/// Parses `args` (program name first), runs the command and writes to the
/// given streams. Returns the process exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let meta = Meta::new(&cli);
    let result = execute(&cli, &meta).and_then(|outcome| {
        let text = render(&meta, outcome.artifact);
        for (path, body) in &outcome.extra_files {
            write_file(path, body)?;
        }
        match &cli.out {
            Some(path) => {
                write_file(path, &text)?;
                let _ = writeln!(stdout, "{}", outcome.summary);
            }
            None => {
                stdout.write_all(text.as_bytes()).map_err(domain)?;
                let _ = writeln!(stderr, "{}", outcome.summary);
            }
        }
        Ok(())
    });
    match result {
        Ok(()) => 0,
        Err(CliError::Domain(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

fn write_file(path: &Path, body: &str) -> Result<(), CliError> {
    std::fs::write(path, body).map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))
}

fn execute(cli: &Cli, meta: &Meta) -> Result<Outcome, CliError> {
    let format = cli.format;
    let reject = |allowed: &[Format]| -> Result<(), CliError> {
        match format {
            Some(f) if !allowed.contains(&f) => Err(CliError::Domain(format!(
                "format {f:?} is not available for {}",
                cli.command.name()
            ))),
            _ => Ok(()),
        }
    };
    match &cli.command {
        Command::Code(c) => {
            reject(&[Format::Json])?;
            cmd_code(c)
        }
        Command::Decode(c) => {
            reject(&[Format::Json])?;
            cmd_decode(c)
        }
        Command::ChannelFlow(c) => cmd_flow(c, format.unwrap_or(Format::Json), meta),
        Command::Threshold(c) => {
            reject(&[Format::Json])?;
            cmd_threshold(c)
        }
        Command::MemorySupport(c) => {
            reject(&[Format::Json])?;
            cmd_memory(c)
        }
        Command::Classify(c) => {
            reject(&[Format::Json])?;
            cmd_classify(c)
        }
        Command::Tiling(c) => cmd_tiling(c, format.unwrap_or(Format::Json), meta),
        Command::Toric(c) => cmd_toric(c, format.unwrap_or(Format::Json), meta),
        Command::Dfs(c) => {
            reject(&[Format::Json])?;
            cmd_dfs(c, cli.seed)
        }
        Command::Logistic(c) => {
            reject(&[Format::Json, Format::Csv])?;
            cmd_logistic(c, format.unwrap_or(Format::Json))
        }
    }
}

fn load_code(sel: &CodeSel) -> Result<StabilizerCode, CliError> {
    if let Some(path) = &sel.code_file {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))?;
        let doc: CodeDocument = serde_json::from_str(&text).map_err(domain)?;
        return StabilizerCode::from_document(&doc).map_err(domain);
    }
    Ok(match sel.code {
        CodeName::FiveQubit => StabilizerCode::five_qubit(),
        CodeName::Steane => StabilizerCode::steane(),
        CodeName::Shor => StabilizerCode::shor(),
        CodeName::Trivial => StabilizerCode::trivial(),
        CodeName::Toric => StabilizerCode::toric(sel.l).map_err(domain)?,
    })
}

fn load_channel(sel: &ChannelSel) -> Result<PauliChannel, CliError> {
    let ch = if let Some(p) = sel.depolarizing {
        PauliChannel::depolarizing(p)
    } else if let Some(p) = sel.bit_flip {
        PauliChannel::bit_flip(p)
    } else if let Some(p) = sel.phase_flip {
        PauliChannel::phase_flip(p)
    } else {
        let v = sel.channel.as_deref().unwrap_or_default();
        PauliChannel::new([v[0], v[1], v[2], v[3]])
    };
    ch.map_err(domain)
}

fn parse_pauli(s: &str) -> Result<Pauli, CliError> {
    s.parse().map_err(domain)
}

fn cmd_code(c: &CodeCmd) -> Result<Outcome, CliError> {
    let code = load_code(&c.sel)?;
    let mut out = json!({
        "n": code.num_qubits(),
        "k": code.num_logical(),
        "code": code.to_document(),
    });
    let mut summary = format!(
        "[[{}, {}]] code, {} generators, {} recovery entries",
        code.num_qubits(),
        code.num_logical(),
        code.generators().len(),
        code.recovery_table().len()
    );
    if let Some(e) = &c.error {
        let e = parse_pauli(e)?;
        if e.num_qubits() != code.num_qubits() {
            return Err(CliError::Domain(format!(
                "error acts on {} qubits, code has {}",
                e.num_qubits(),
                code.num_qubits()
            )));
        }
        let syndrome = code.syndrome(&e);
        let residual = code.correct(&e);
        let classes: Option<Vec<String>> = residual.as_ref().map(|r| {
            (0..code.num_logical())
                .map(|i| code.logical_class(r, i).symbol().to_string())
                .collect()
        });
        out["error"] = json!({
            "pauli": e,
            "syndrome": syndrome.to_string(),
            "correction": code.recovery(&syndrome),
            "residual": residual,
            "logical_class": classes,
        });
        let _ = write!(summary, "; syndrome {syndrome}");
    }
    if let Some(k) = &c.couplings {
        let h = TileHamiltonian::for_code(&code, k.clone()).map_err(domain)?;
        let (ground, degeneracy) = h.spectrum(1e-10).map_err(domain)?;
        out["hamiltonian"] = json!({
            "couplings": k,
            "ground_energy": ground,
            "degeneracy": degeneracy,
        });
        let _ = write!(summary, "; ground energy {ground} (degeneracy {degeneracy})");
    }
    if c.amplitudes {
        let v = code.encode_zero().map_err(domain)?;
        let n = code.num_qubits();
        let amps: Vec<Value> = v
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > 1e-12)
            .map(|(i, a)| {
                json!({
                    "basis": format!("{:0width$b}", i, width = n),
                    "re": clean(a.re),
                    "im": clean(a.im),
                })
            })
            .collect();
        out["zero_state"] = Value::Array(amps);
    }
    Ok(Outcome::new(summary, Artifact::Json(out)))
}

/// Rounds away last-bit noise so artifacts stay stable across platforms.
fn clean(x: f64) -> f64 {
    let r = (x * 1e12).round() / 1e12;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn cmd_decode(c: &DecodeCmd) -> Result<Outcome, CliError> {
    let code = load_code(&c.sel)?;
    let dec = code.synthesize_decoder().map_err(domain)?;
    let n = code.num_qubits();
    let images = |f: &dyn Fn(usize) -> Pauli| (0..n).map(f).collect::<Vec<_>>();
    let mut out = json!({
        "n": n,
        "x_images": images(&|q| dec.x_image(q).clone()),
        "z_images": images(&|q| dec.z_image(q).clone()),
        "generator_images": code.generators().iter().map(|g| dec.conjugate(g)).collect::<Vec<_>>(),
        "logical_x_image": dec.conjugate(&code.logical_x()[0]),
        "logical_z_image": dec.conjugate(&code.logical_z()[0]),
    });
    if let Some(op) = &c.op {
        let p = parse_pauli(op)?;
        if p.num_qubits() != n {
            return Err(CliError::Domain(format!(
                "operator acts on {} qubits, code has {n}",
                p.num_qubits()
            )));
        }
        out["op_image"] = json!({"op": p, "image": dec.conjugate(&p)});
    }
    Ok(Outcome::new(format!("decoder on {n} qubits"), Artifact::Json(out)))
}

fn flow_svg(traj: &FlowTrajectory, meta: &Meta) -> String {
    let (w, h, m) = (480.0, 320.0, 40.0);
    let levels = traj.levels.len().max(2) - 1;
    let x = |r: usize| m + (w - 2.0 * m) * r as f64 / levels as f64;
    let y = |p: f64| h - m - (h - 2.0 * m) * p / 0.75;
    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n<metadata>{}</metadata>\n",
        meta.line().replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
    );
    let _ = writeln!(
        svg,
        "<line x1=\"{m}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n<line x1=\"{m}\" y1=\"{m}\" x2=\"{m}\" y2=\"{}\" stroke=\"black\"/>",
        h - m,
        w - m,
        h - m,
        h - m
    );
    let points: Vec<String> = traj
        .levels
        .iter()
        .map(|l| format!("{:.3},{:.3}", x(l.r), y(l.channel.error_probability())))
        .collect();
    let _ = writeln!(
        svg,
        "<polyline fill=\"none\" stroke=\"#2244cc\" stroke-width=\"2\" points=\"{}\"/>",
        points.join(" ")
    );
    for p in &points {
        let (px, py) = p.split_once(',').expect("formatted pair");
        let _ = writeln!(svg, "<circle cx=\"{px}\" cy=\"{py}\" r=\"3\" fill=\"#2244cc\"/>");
    }
    let _ = writeln!(
        svg,
        "<text x=\"{m}\" y=\"{}\" font-size=\"12\">1 - p_I vs level, verdict {}</text>",
        m - 10.0,
        traj.verdict
    );
    svg.push_str("</svg>\n");
    svg
}

fn cmd_flow(c: &FlowCmd, format: Format, meta: &Meta) -> Result<Outcome, CliError> {
    let code = load_code(&c.sel)?;
    let ch = load_channel(&c.channel)?;
    let config = FlowConfig {
        max_levels: c.max_levels.max(1),
        tol: c.tol,
    };
    let traj = renorm::flow(&code, &ch, config).map_err(domain)?;
    let summary = format!("verdict {} after {} levels", traj.verdict, traj.levels.len());
    let artifact = match format {
        Format::Json => Artifact::Json(json!({ "trajectory": traj })),
        Format::Csv => Artifact::Csv(traj.to_csv()),
        Format::Svg => Artifact::Svg(flow_svg(&traj, meta)),
    };
    Ok(Outcome::new(summary, artifact))
}

fn family(name: FamilyName) -> ChannelFamily {
    match name {
        FamilyName::Depolarizing => ChannelFamily::Depolarizing,
        FamilyName::BitFlip => ChannelFamily::BitFlip,
        FamilyName::PhaseFlip => ChannelFamily::PhaseFlip,
    }
}

fn cmd_threshold(c: &ThresholdCmd) -> Result<Outcome, CliError> {
    let code = load_code(&c.sel)?;
    let fam = family(c.family);
    let result = renorm::threshold(&code, |p| fam.at(p), c.lo, c.hi, c.width, FlowConfig::default()).map_err(domain)?;
    let at = fam.at(result.p_star).map_err(domain)?;
    let eigen = renorm::linearize(&code, &at, c.delta).map_err(domain)?;
    let summary = format!(
        "p* = {:.6} in [{:.6}, {:.6}] after {} steps",
        result.p_star,
        result.lo,
        result.hi,
        result.steps.len()
    );
    Ok(Outcome::new(
        summary,
        Artifact::Json(json!({
            "family": c.family,
            "threshold": result,
            "jacobian_eigenvalues": eigen,
        })),
    ))
}

fn cmd_memory(c: &MemoryCmd) -> Result<Outcome, CliError> {
    let code = load_code(&c.sel)?;
    let ch = load_channel(&c.channel)?;
    let support =
        renorm::memory_support(&code, &ch, c.epsilon, c.extent, c.dim, FlowConfig::default()).map_err(domain)?;
    let summary = match support {
        MemorySupport::Infinite => "memory support infinite".to_string(),
        MemorySupport::Finite { r_star, size } => format!("memory support {size} (r* = {r_star})"),
    };
    // u128 does not fit JSON numbers in general; sizes are written as strings
    let value = match support {
        MemorySupport::Infinite => json!({"kind": "infinite"}),
        MemorySupport::Finite { r_star, size } => {
            json!({"kind": "finite", "r_star": r_star, "size": size.to_string()})
        }
    };
    Ok(Outcome::new(
        summary,
        Artifact::Json(json!({
            "support": value,
            "channel": ch,
            "epsilon": c.epsilon,
            "L": c.extent,
            "d": c.dim,
        })),
    ))
}

fn parse_sparse(text: &str, n: usize) -> Result<Pauli, CliError> {
    let mut p = Pauli::identity(n);
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let mut chars = item.chars();
        let kind = match chars.next() {
            Some('X') => PauliKind::X,
            Some('Y') => PauliKind::Y,
            Some('Z') => PauliKind::Z,
            Some('I') => PauliKind::I,
            _ => return Err(CliError::Domain(format!("bad sparse term {item:?}"))),
        };
        let q: usize = chars
            .as_str()
            .parse()
            .map_err(|_| CliError::Domain(format!("bad qubit index in {item:?}")))?;
        let single = Pauli::single(n, q, kind).map_err(domain)?;
        p = p.try_mul(&single).map_err(domain)?.unsigned();
    }
    Ok(p)
}

fn cmd_classify(c: &ClassifyCmd) -> Result<Outcome, CliError> {
    let code = load_code(&c.sel)?;
    let total = code
        .num_qubits()
        .checked_pow(c.levels as u32)
        .filter(|&t| t <= 1 << 20)
        .ok_or_else(|| CliError::Domain("register too large".into()))?;
    let e = match (&c.error, &c.sparse) {
        (Some(s), _) => parse_pauli(s)?,
        (None, Some(s)) => parse_sparse(s, total)?,
        (None, None) => Pauli::identity(total),
    };
    let result = renorm::classify_error(&code, c.levels, &e).map_err(domain)?;
    let summary = if result.correctable {
        "correctable".to_string()
    } else {
        "fatal".to_string()
    };
    Ok(Outcome::new(
        summary,
        Artifact::Json(json!({
            "levels": c.levels,
            "error": e,
            "correctable": result.correctable,
            "residuals": result.residuals,
        })),
    ))
}

fn cmd_tiling(c: &TilingCmd, format: Format, meta: &Meta) -> Result<Outcome, CliError> {
    let t: Tiling = if c.shape.plus {
        tiling::plus_tiling(c.l, c.hand.into())
    } else if c.shape.brick {
        tiling::brick_tiling_with(c.l, c.hand.into())
    } else {
        tiling::chain_tiling(c.l, c.shape.chain.unwrap_or(1))
    }
    .map_err(domain)?;
    let report = tiling::validate_tiling(&t).map_err(domain)?;
    let svg_meta = format!(
        "{} rescale={} rotation={}",
        meta.line(),
        report.rescale,
        report.rotation
    );
    let mut out = t.to_json();
    out["report"] = serde_json::to_value(report).map_err(domain)?;
    if let Some(r) = c.levels {
        let h = tiling::concatenate_tiling(&t, r).map_err(domain)?;
        out["hierarchy"] = serde_json::to_value(h).map_err(domain)?;
    }
    let summary = format!(
        "{} tiles, exact cover, rescale {:.12}, rotation {:.12}",
        t.tiles.len(),
        report.rescale,
        report.rotation
    );
    let artifact = match format {
        Format::Svg => Artifact::Svg(t.to_svg(&svg_meta)),
        Format::Json => Artifact::Json(out),
        Format::Csv => return Err(CliError::Domain("format Csv is not available for tiling".into())),
    };
    let mut outcome = Outcome::new(summary, artifact);
    if let Some(path) = &c.svg {
        outcome.extra_files.push((path.clone(), t.to_svg(&svg_meta)));
    }
    Ok(outcome)
}

fn cmd_toric(c: &ToricCmd, format: Format, meta: &Meta) -> Result<Outcome, CliError> {
    let state = ToricState::new(c.l).map_err(domain)?;
    let (ax, ay) = (c.anchor[0], c.anchor[1]);
    let site = state.rescaled_site(ax, ay).map_err(domain)?;
    let plaq = state.rescaled_plaquette(ax, ay).map_err(domain)?;
    let check = toric::check_rescaling(&state).map_err(domain)?;
    let layout = *state.layout();
    let swap_ok = toric::swap_generating_set(state.group(), &layout.plaquette(ax, ay), &plaq).is_ok();
    let edge_entropy = state.block_entropy(&[0]).map_err(domain)?;
    let plaquette_entropy = state.block_entropy(&layout.plaquette_edges(ax, ay)).map_err(domain)?;
    let mut out = json!({
        "L": c.l,
        "rank": state.group().rank(),
        "anchor": [ax, ay],
        "rescaled_site": site,
        "rescaled_plaquette": plaq,
        "rescaled_site_weight": site.weight(),
        "rescaled_plaquette_weight": plaq.weight(),
        "rescaling_check_passed": check.passed(),
        "swap_preserves_group": swap_ok,
        "single_edge_entropy": edge_entropy,
        "plaquette_entropy": plaquette_entropy,
    });
    let mut summary = format!(
        "L = {}: rescaled weights {} and {}, swap {}",
        c.l,
        site.weight(),
        plaq.weight(),
        if swap_ok { "preserves the group" } else { "fails" }
    );
    let mut scan_csv = None;
    if c.scan || format == Format::Csv {
        let regions = toric::bfs_regions(&layout);
        let scan = toric::cardinality_scan(state.group(), &regions);
        let rescaled = toric::rescaled_description(&state).map_err(domain)?;
        let again = toric::cardinality_scan(&rescaled, &regions);
        let _ = write!(summary, "; n_T = {:?}", scan.n_t);
        scan_csv = Some(scan.to_csv());
        out["scan"] = serde_json::to_value(&scan).map_err(domain)?;
        out["scan_measure"] = json!("internal correlation sum_e S(e) - S(A) over BFS-nested edge regions");
        out["rescaled_scan_agrees"] = json!(scan == again);
    }
    let svg = toric::support_svg(&layout, &[site.clone(), plaq.clone()], &meta.line());
    let artifact = match format {
        Format::Json => Artifact::Json(out),
        Format::Csv => Artifact::Csv(scan_csv.expect("scan computed for csv")),
        Format::Svg => Artifact::Svg(svg.clone()),
    };
    let mut outcome = Outcome::new(summary, artifact);
    if let Some(path) = &c.svg {
        outcome.extra_files.push((path.clone(), svg));
    }
    Ok(outcome)
}

fn cmd_dfs(c: &DfsCmd, seed: u64) -> Result<Outcome, CliError> {
    let ops = match (&c.collective, &c.paulis) {
        (Some(n), _) => dfs::collective_generators(*n).map_err(domain)?,
        (None, Some(list)) => {
            let paulis = list
                .split(',')
                .map(|s| parse_pauli(s.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            let n = paulis.first().map_or(0, Pauli::num_qubits);
            if paulis.iter().any(|p| p.num_qubits() != n) {
                return Err(CliError::Domain("generators act on different qubit counts".into()));
            }
            OperatorSet::from_paulis(&paulis).map_err(domain)?
        }
        (None, None) => unreachable!("clap requires one generator source"),
    };
    let dec = dfs::decompose(&ops, seed).map_err(domain)?;
    let mut report = dfs::report(&dec, &ops);
    // residuals are rounding noise; keep artifacts stable across platforms
    report.off_block_residual = if report.off_block_residual < 1e-8 {
        0.0
    } else {
        report.off_block_residual
    };
    report.in_block_residual = if report.in_block_residual < 1e-8 {
        0.0
    } else {
        report.in_block_residual
    };
    let shape: Vec<String> = dec.shape().iter().map(|(d, m)| format!("({d},{m})")).collect();
    let summary = format!("blocks {} with {} noiseless", shape.join(" "), report.noiseless.len());
    Ok(Outcome::new(
        summary,
        Artifact::Json(serde_json::to_value(report).map_err(domain)?),
    ))
}

fn cmd_logistic(c: &LogisticCmd, format: Format) -> Result<Outcome, CliError> {
    let p = LogisticParams::new(c.r, c.k, c.dt).map_err(domain)?;
    if !(c.n0 >= 0.0) {
        return Err(CliError::Domain(format!(
            "initial population must be nonnegative, got {}",
            c.n0
        )));
    }
    let cycle_config = CycleConfig::default();
    if let Some(scan) = &c.scan {
        if scan[2] < 1.0 || scan[2].fract() != 0.0 {
            return Err(CliError::Domain("scan point count must be a positive integer".into()));
        }
        let points = dynamics::bifurcation_scan(scan[0], scan[1], scan[2] as usize, c.n0 / p.kappa(), cycle_config)
            .map_err(domain)?;
        let summary = format!("{} scan points", points.len());
        let artifact = match format {
            Format::Csv => Artifact::Csv(dynamics::bifurcation_csv(&points)),
            _ => Artifact::Json(json!({ "scan": points })),
        };
        return Ok(Outcome::new(summary, artifact));
    }
    let orbit = dynamics::map_orbit(p.mu(), p.kappa(), c.n0, c.steps);
    let ode = dynamics::ode_samples(&p, c.n0, c.steps).map_err(domain)?;
    let map_cycle = dynamics::detect_cycle(&orbit, cycle_config);
    let ode_cycle = dynamics::detect_cycle(&ode, cycle_config);
    let summary = format!("mu = {}, map {}, ode {}", p.mu(), map_cycle, ode_cycle);
    let artifact = match format {
        Format::Csv => {
            let mut s = String::from("n,t,map,ode\n");
            for (i, (a, b)) in orbit.iter().zip(&ode).enumerate() {
                let _ = writeln!(s, "{i},{:.17e},{a:.17e},{b:.17e}", i as f64 * p.dt);
            }
            Artifact::Csv(s)
        }
        _ => Artifact::Json(json!({
            "params": p,
            "mu": p.mu(),
            "kappa": p.kappa(),
            "map_fixed_point": p.map_fixed_point(),
            "map_cycle": map_cycle,
            "ode_cycle": ode_cycle,
            "map_tail": &orbit[orbit.len().saturating_sub(8)..],
            "ode_tail": &ode[ode.len().saturating_sub(8)..],
        })),
    };
    Ok(Outcome::new(summary, artifact))
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn parser_is_consistent() {
        Cli::command().debug_assert();
    }
}
