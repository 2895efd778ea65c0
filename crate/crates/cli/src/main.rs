//! `tlbraid`: verification suites, state generation, braid-word evaluation
//! and entanglement reports.

mod config;
mod suites;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use tlbraid_core::braidlang::{apply_jones_word, evaluate_on_state};
use tlbraid_core::braidrep::bell_representation;
use tlbraid_core::entangle::{entanglement_report, measure_qubit};
use tlbraid_core::linalg::format_real;
use tlbraid_core::states::{basis_state, build_structured_b, standard_b};
use tlbraid_core::{parse, BitString, EntanglementReport, RepShape, StateVector, TLParams};

use config::{parse_angle, FileConfig, FlagConfig, Format, RepKind, RunConfig};
use suites::{Suite, VerifyOutput};

#[derive(Debug)]
pub enum CliError {
    Core(tlbraid_core::Error),
    Config(String),
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Config(m) => write!(f, "config: {m}"),
            CliError::Io(m) => write!(f, "io: {m}"),
        }
    }
}

impl From<tlbraid_core::Error> for CliError {
    fn from(e: tlbraid_core::Error) -> Self {
        CliError::Core(e)
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "tlbraid",
    version,
    about = "Temperley-Lieb braid representations and the states they entangle"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Deformation angle in radians; accepts expressions such as `pi/8` [default: pi/8]
    #[arg(long, global = true, value_parser = angle, allow_hyphen_values = true)]
    theta: Option<f64>,
    /// Phase of e3 in radians [default: 0]
    #[arg(long, global = true, value_parser = angle, allow_hyphen_values = true)]
    phi: Option<f64>,
    /// Number of qubits
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Slot carrying e1, e2, e3 (1-based) [default: 1]
    #[arg(long, global = true)]
    k: Option<usize>,
    /// Involutions for the slots other than k, e.g. "I,X,X" [default: I below k, X above]
    #[arg(long, global = true)]
    s: Option<String>,
    /// Sign of a
    #[arg(long, global = true, allow_hyphen_values = true)]
    a_sign: Option<String>,
    /// Sign of b
    #[arg(long, global = true, allow_hyphen_values = true)]
    b_sign: Option<String>,
    /// Representation family [default: jones]
    #[arg(long, global = true, value_enum)]
    rep: Option<RepKind>,
    /// Residual tolerance [default: 1e-10]
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for random test states [default: 0]
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output format [default: json]
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// JSON config file; flags override its values
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Input state: a bit string such as 010, or @FILE holding state JSON
    #[arg(long, global = true)]
    state: Option<String>,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run verification suites; exits 0 only if every check passes
    Verify {
        #[arg(value_enum, default_value = "all")]
        suite: Suite,
        /// Sweep theta, phi, n <= --n (default 5), every k and involution assignment
        #[arg(long)]
        grid: bool,
    },
    /// Generate GHZ-type or cluster-like states with entanglement reports
    Generate {
        #[arg(value_enum)]
        kind: Kind,
        /// Input basis state (default all zeros)
        #[arg(long)]
        bits: Option<String>,
        /// Use B^-1 instead of B
        #[arg(long)]
        inverse: bool,
    },
    /// Apply a braid word such as "b1 b2^-1" to a state
    Apply { word: String },
    /// Entanglement report of a state, optionally after measuring one qubit
    Entropy {
        /// Qubits on one side of the cut, e.g. "1,2"; default: each single qubit
        #[arg(long)]
        cut: Option<String>,
        /// Measure QUBIT with OUTCOME first, written QUBIT:OUTCOME
        #[arg(long)]
        measure: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    /// B(n,1)|0...0>, or the state given by --bits
    Ghz,
    /// B(n,k) B^-1(n,1)|bits>
    Cluster,
    /// B(n,k)|bits>: the basis state superposed with its partner
    BasisSuperpose,
}

fn angle(s: &str) -> Result<f64, String> {
    parse_angle(s).map_err(|e| e.to_string())
}

/// Cuts larger than this on both sides are skipped by automatic reports.
const MAX_AUTO_CUT_QUBITS: usize = 8;

#[derive(Serialize)]
struct ParamsOut {
    theta: f64,
    phi: f64,
    d: f64,
    a: f64,
    b: f64,
}

impl From<&TLParams> for ParamsOut {
    fn from(p: &TLParams) -> Self {
        Self {
            theta: p.theta(),
            phi: p.phi(),
            d: p.d(),
            a: p.a(),
            b: p.b(),
        }
    }
}

#[derive(Serialize)]
struct GenerateOutput {
    kind: &'static str,
    params: ParamsOut,
    n: usize,
    k: usize,
    s: String,
    input: String,
    inverse: bool,
    state: StateVector,
    entanglement: Vec<EntanglementReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    skipped_cuts: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct ApplyOutput {
    word: String,
    rep: RepKind,
    n: usize,
    input: StateVector,
    state: StateVector,
}

#[derive(Serialize)]
struct Measurement {
    qubit: usize,
    outcome: u8,
    probability: f64,
    post_state: StateVector,
}

#[derive(Serialize)]
struct EntropyOutput {
    n: usize,
    measurement: Option<Measurement>,
    entanglement: Vec<EntanglementReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    skipped_cuts: Vec<Vec<usize>>,
}

fn fmt_num(x: f64) -> String {
    format_real(x, 12)
}

fn write_reports(text: &mut String, reports: &[EntanglementReport], skipped: &[Vec<usize>]) {
    for r in reports {
        let _ = writeln!(
            text,
            "cut {:?}: entropy {} bits, schmidt rank {}, {}",
            r.bipartition,
            fmt_num(r.entropy_bits),
            r.schmidt_rank,
            if r.is_product { "product" } else { "entangled" }
        );
    }
    for cut in skipped {
        let _ = writeln!(
            text,
            "cut {cut:?}: skipped (both sides exceed {MAX_AUTO_CUT_QUBITS} qubits)"
        );
    }
}

/// Reports for the given cuts, skipping those too large to diagonalize quickly.
fn reports_for(
    v: &StateVector,
    cuts: Vec<Vec<usize>>,
) -> Result<(Vec<EntanglementReport>, Vec<Vec<usize>>), CliError> {
    let n = v.n_qubits();
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    for cut in cuts {
        if cut.len().min(n - cut.len()) > MAX_AUTO_CUT_QUBITS {
            skipped.push(cut);
        } else {
            reports.push(entanglement_report(v, &cut)?);
        }
    }
    Ok((reports, skipped))
}

fn single_qubit_cuts(n: usize) -> Vec<Vec<usize>> {
    if n < 2 {
        Vec::new()
    } else {
        (1..=n).map(|q| vec![q]).collect()
    }
}

fn parse_bits(text: &str) -> Result<BitString, CliError> {
    Ok(text.parse::<BitString>()?)
}

/// Reads `--state`: a bit string, or `@FILE` with either state JSON or a
/// command output carrying a `state` field.
fn load_state(spec: &str) -> Result<StateVector, CliError> {
    let Some(path) = spec.strip_prefix('@') else {
        return Ok(basis_state(&parse_bits(spec)?));
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {path}: {e}")))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{path}: {e}")))?;
    let inner = match value.get("state") {
        Some(s) if value.get("amplitudes").is_none() => s.clone(),
        _ => value,
    };
    serde_json::from_value(inner).map_err(|e| CliError::Config(format!("{path}: not a state: {e}")))
}

fn state_text(v: &StateVector) -> String {
    let mut text = String::new();
    for (idx, z) in v.amplitudes().iter().enumerate() {
        if z.norm() > 1e-15 {
            let _ = writeln!(
                text,
                "|{:0width$b}>  {}",
                idx,
                tlbraid_core::linalg::format_complex(*z, 12),
                width = v.n_qubits()
            );
        }
    }
    text
}

fn cmd_generate(
    cfg: &RunConfig,
    kind: Kind,
    bits: Option<&str>,
    inverse: bool,
) -> Result<(String, String), CliError> {
    let n = match (cfg.n, bits) {
        (Some(n), _) => n,
        (None, Some(b)) => b.trim().len(),
        (None, None) => 3,
    };
    let k = match kind {
        Kind::Ghz => 1,
        _ => cfg.k.unwrap_or(1),
    };
    if kind == Kind::Ghz && cfg.k.is_some_and(|k| k != 1) {
        return Err(CliError::Config(
            "ghz uses k = 1; use basis-superpose for other slots".into(),
        ));
    }
    if kind == Kind::Cluster && inverse {
        return Err(CliError::Config(
            "--inverse is not defined for cluster".into(),
        ));
    }
    let shape = RepShape::new(n, k)?;
    let input = match bits {
        Some(b) => parse_bits(b)?,
        None if kind == Kind::BasisSuperpose => {
            return Err(CliError::Config("basis-superpose needs --bits".into()));
        }
        None => BitString::zeros(n)?,
    };
    if input.len() != n {
        return Err(CliError::Config(format!(
            "--bits has {} qubits, but n = {n}",
            input.len()
        )));
    }
    let spec = cfg.spec(shape)?;
    let bop = build_structured_b(shape, &cfg.params, &spec)?;
    let start = basis_state(&input);
    let state = match kind {
        Kind::Ghz | Kind::BasisSuperpose => bop.apply(&start, inverse)?,
        Kind::Cluster => {
            let prepared = standard_b(n, 1, &cfg.params)?.apply(&start, true)?;
            bop.apply(&prepared, false)?
        }
    };

    let mut cuts: Vec<Vec<usize>> = Vec::new();
    if shape.k() > 1 {
        cuts.push((shape.k()..=n).collect());
    }
    for cut in single_qubit_cuts(n) {
        if !cuts.contains(&cut) {
            cuts.push(cut);
        }
    }
    let (entanglement, skipped_cuts) = reports_for(&state, cuts)?;

    let out = GenerateOutput {
        kind: match kind {
            Kind::Ghz => "ghz",
            Kind::Cluster => "cluster",
            Kind::BasisSuperpose => "basis-superpose",
        },
        params: (&cfg.params).into(),
        n,
        k: shape.k(),
        s: spec.render(),
        input: input.to_string(),
        inverse,
        state,
        entanglement,
        skipped_cuts,
    };
    let mut text = format!(
        "{} n={} k={} s={} input |{}>{}\n",
        out.kind,
        n,
        out.k,
        out.s,
        out.input,
        if inverse { " (inverse)" } else { "" }
    );
    text.push_str(&state_text(&out.state));
    write_reports(&mut text, &out.entanglement, &out.skipped_cuts);
    Ok((json(&out)?, text))
}

fn cmd_apply(
    cfg: &RunConfig,
    word_text: &str,
    state: Option<&str>,
) -> Result<(String, String), CliError> {
    let input = match state {
        Some(s) => load_state(s)?,
        None => {
            let n = cfg
                .n
                .ok_or_else(|| CliError::Config("apply needs --state or --n".into()))?;
            basis_state(&BitString::zeros(n)?)
        }
    };
    let n = input.n_qubits();
    if let Some(want) = cfg.n {
        if want != n {
            return Err(CliError::Config(format!(
                "state has {n} qubits, but n = {want}"
            )));
        }
    }
    let output = match cfg.rep {
        RepKind::Jones => {
            let word = parse(word_text, Some(3))?;
            let shape = RepShape::new(n, cfg.k.unwrap_or(1))?;
            apply_jones_word(&word, &cfg.params, shape, &cfg.spec(shape)?, &input)?
        }
        RepKind::Bell => {
            let word = parse(word_text, Some(n))?;
            evaluate_on_state(&word, &bell_representation(n)?, &input)?
        }
    };
    let out = ApplyOutput {
        word: word_text.trim().to_string(),
        rep: cfg.rep,
        n,
        input,
        state: output,
    };
    let text = format!(
        "{} applied to {} qubits\n{}",
        out.word,
        n,
        state_text(&out.state)
    );
    Ok((json(&out)?, text))
}

fn parse_cut(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|q| {
            q.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Config(format!("bad qubit {q:?} in --cut")))
        })
        .collect()
}

fn parse_measure(text: &str) -> Result<(usize, u8), CliError> {
    let bad = || CliError::Config(format!("--measure expects QUBIT:OUTCOME, got {text:?}"));
    let (q, o) = text.split_once(':').ok_or_else(bad)?;
    let q = q.trim().parse().map_err(|_| bad())?;
    let o = o.trim().parse().map_err(|_| bad())?;
    Ok((q, o))
}

fn cmd_entropy(
    _cfg: &RunConfig,
    state: Option<&str>,
    cut: Option<&str>,
    measure: Option<&str>,
) -> Result<(String, String), CliError> {
    let state = state.ok_or_else(|| CliError::Config("entropy needs --state".into()))?;
    let v = load_state(state)?;
    let (subject, measurement) = match measure {
        Some(m) => {
            let (qubit, outcome) = parse_measure(m)?;
            let (probability, post) = measure_qubit(&v, qubit, outcome)?;
            (
                post.clone(),
                Some(Measurement {
                    qubit,
                    outcome,
                    probability,
                    post_state: post,
                }),
            )
        }
        None => (v.clone(), None),
    };
    let n = subject.n_qubits();
    let cuts = match cut {
        Some(c) => vec![parse_cut(c)?],
        None => single_qubit_cuts(n),
    };
    let (entanglement, skipped_cuts) = match cut {
        Some(_) => (vec![entanglement_report(&subject, &cuts[0])?], Vec::new()),
        None => reports_for(&subject, cuts)?,
    };
    let out = EntropyOutput {
        n: v.n_qubits(),
        measurement,
        entanglement,
        skipped_cuts,
    };
    let mut text = String::new();
    if let Some(m) = &out.measurement {
        let _ = writeln!(
            text,
            "measured qubit {} = {} with probability {}",
            m.qubit,
            m.outcome,
            fmt_num(m.probability)
        );
        text.push_str(&state_text(&m.post_state));
    }
    write_reports(&mut text, &out.entanglement, &out.skipped_cuts);
    Ok((json(&out)?, text))
}

fn verify_text(out: &VerifyOutput) -> String {
    let mut text = String::new();
    for r in &out.results {
        let _ = writeln!(
            text,
            "{} {}: {} point(s), max residual {:.3e} (tol {:.1e})",
            if r.pass { "PASS" } else { "FAIL" },
            r.suite,
            r.points,
            r.max_residual,
            r.tolerance
        );
        for rel in &r.relations {
            let _ = writeln!(
                text,
                "    {:<4} {}  {:.3e}",
                if rel.pass { "ok" } else { "FAIL" },
                rel.relation,
                rel.max_residual
            );
        }
        for note in &r.notes {
            let _ = writeln!(text, "    note: {note}");
        }
    }
    for f in &out.failures {
        let _ = writeln!(
            text,
            "failure: {} [{}] {} residual {:.3e}",
            f.suite, f.point, f.relation, f.residual
        );
    }
    if out.failures_omitted > 0 {
        let _ = writeln!(text, "failure: {} more not listed", out.failures_omitted);
    }
    let _ = writeln!(text, "overall: {}", if out.pass { "PASS" } else { "FAIL" });
    text
}

fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| CliError::Io(e.to_string()))
}

fn emit(out: Option<&Path>, body: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let g = cli.global;
    let file = match &g.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let flags = FlagConfig {
        theta: g.theta,
        phi: g.phi,
        n: g.n,
        k: g.k,
        s: g.s,
        a_sign: g.a_sign,
        b_sign: g.b_sign,
        rep: g.rep,
        tol: g.tol,
        seed: g.seed,
        format: g.format,
    };
    let cfg = RunConfig::merge(file, flags)?;
    let (body_json, body_text, pass) = match cli.command {
        Command::Verify { suite, grid } => {
            let out = suites::verify(&cfg, suite, grid)?;
            (json(&out)?, verify_text(&out), out.pass)
        }
        Command::Generate {
            kind,
            bits,
            inverse,
        } => {
            let bits = bits.or_else(|| g.state.clone().filter(|s| !s.starts_with('@')));
            let (j, t) = cmd_generate(&cfg, kind, bits.as_deref(), inverse)?;
            (j, t, true)
        }
        Command::Apply { word } => {
            let (j, t) = cmd_apply(&cfg, &word, g.state.as_deref())?;
            (j, t, true)
        }
        Command::Entropy { cut, measure } => {
            let (j, t) = cmd_entropy(&cfg, g.state.as_deref(), cut.as_deref(), measure.as_deref())?;
            (j, t, true)
        }
    };
    let body = match cfg.format {
        Format::Json => body_json,
        Format::Text => body_text,
    };
    emit(g.out.as_deref(), &body)?;
    Ok(pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json_errors = cli.global.format != Some(Format::Text);
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            if json_errors {
                let body = serde_json::json!({ "error": e.to_string() });
                println!("{body}");
            }
            ExitCode::from(2)
        }
    }
}
