//! `qwalk`: build, evolve and verify stationary states of coined quantum
//! walks on `Z^d`. Data goes to stdout as JSON, diagnostics to stderr.
//!
//! Exit codes: 0 success, 1 verification failed, 2 usage or I/O error.

use std::f64::consts::PI;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use qwalk_core::evolution::trajectory;
use qwalk_core::io::{
    coin_backend, coin_from_json, measure_to_json, poly_to_json, state_backend, state_from_json,
    state_to_json, weights_from_json,
};
use qwalk_core::scalar::parse_real;
use qwalk_core::stationary::{atom_for_coin, eigenfunction_for_coin, superpose};
use qwalk_core::symbol::{eigen_residual_with, symbolic_fixed_point_check, SymbolMatrix};
use qwalk_core::{
    Backend, Coin, Complex64, FiniteState, GaussianRational, LatticePoint, Scalar, WeightSequence,
};

#[derive(Debug, Parser)]
#[command(name = "qwalk", version)]
#[command(about = "Stationary amplitudes and measures of coined quantum walks on Z^d")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a stationary state from the closed-form atom and emit it or its measure.
    Stationary(StationaryArgs),
    /// Check that a state is a fixed point of the walk.
    Verify(VerifyArgs),
    /// Evolve a state and report the total mass after every step.
    Evolve(EvolveArgs),
    /// Print the Fourier symbol of a coin and its eigenvalue-1 eigenfunction.
    Symbol(SymbolArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CoinArg {
    Grover,
    Watabe,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

impl From<ModeArg> for Backend {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exact => Backend::Exact,
            ModeArg::Float => Backend::Float,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EmitArg {
    State,
    Measure,
    Both,
}

#[derive(Debug, Clone, Args)]
struct CoinArgs {
    /// Lattice dimension d.
    #[arg(long)]
    dim: Option<usize>,

    #[arg(long, value_enum, default_value = "grover")]
    coin: CoinArg,

    /// Parameter of the watabe coin, in (0, 1).
    #[arg(long)]
    p: Option<String>,

    /// JSON coin document, for --coin custom.
    #[arg(long)]
    coin_file: Option<PathBuf>,

    /// Numeric backend. Defaults to exact for grover, float otherwise.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,

    /// Float tolerance for unitarity and residual checks.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
}

#[derive(Debug, Args)]
struct StationaryArgs {
    #[command(flatten)]
    coin: CoinArgs,

    /// JSON weight document; defaults to weight 1 at the origin.
    #[arg(long)]
    weights: Option<PathBuf>,

    /// Divide the measure by its total mass.
    #[arg(long)]
    normalize: bool,

    #[arg(long, value_enum, default_value = "measure")]
    emit: EmitArg,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    coin: CoinArgs,

    /// JSON state document; defaults to the closed-form stationary state.
    #[arg(long)]
    state: Option<PathBuf>,

    #[arg(long)]
    weights: Option<PathBuf>,

    #[arg(long, default_value_t = 10)]
    steps: usize,

    /// Number of random k points for the eigen-residual check.
    #[arg(long, default_value_t = 100)]
    ksamples: usize,

    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct EvolveArgs {
    #[command(flatten)]
    coin: CoinArgs,

    #[arg(long)]
    state: PathBuf,

    #[arg(long, default_value_t = 1)]
    steps: usize,
}

#[derive(Debug, Args)]
struct SymbolArgs {
    #[command(flatten)]
    coin: CoinArgs,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Core(qwalk_core::Error),
    Io(PathBuf, std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
        }
    }
}

impl From<qwalk_core::Error> for CliError {
    fn from(e: qwalk_core::Error) -> Self {
        CliError::Core(e)
    }
}

type CliResult<T> = Result<T, CliError>;

/// What a command hands back: its JSON document and whether any check
/// it ran failed.
struct Outcome {
    doc: Value,
    verified: bool,
}

fn read_json(path: &Path) -> CliResult<Value> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Core(e.into()))
}

/// Picks the backend: explicit `--mode`, else the backend of a state
/// file, else that of a custom coin file, else exact for grover and
/// float for everything else.
fn resolve_mode(args: &CoinArgs, state: Option<&Value>) -> CliResult<Backend> {
    let from_state = state.map(state_backend).transpose()?;
    let from_coin = match &args.coin_file {
        Some(path) => coin_backend(&read_json(path)?)?,
        None => None,
    };
    if let Some(mode) = args.mode {
        let mode = Backend::from(mode);
        if let Some(found) = from_state {
            if found != mode {
                return Err(qwalk_core::Error::BackendMismatch {
                    expected: mode,
                    found,
                }
                .into());
            }
        }
        return Ok(mode);
    }
    Ok(from_state.or(from_coin).unwrap_or(match args.coin {
        CoinArg::Grover => Backend::Exact,
        _ => Backend::Float,
    }))
}

fn build_coin<S: Scalar>(args: &CoinArgs, dim: Option<usize>) -> CliResult<Coin<S>> {
    let dim = match (args.dim, dim) {
        (Some(a), Some(b)) if a != b => {
            return Err(qwalk_core::Error::DimensionMismatch {
                expected: a,
                found: b,
            }
            .into())
        }
        (a, b) => a.or(b),
    };
    if args.coin != CoinArg::Custom && args.coin_file.is_some() {
        return Err(CliError::Usage("--coin-file requires --coin custom".into()));
    }
    let coin = match args.coin {
        CoinArg::Grover => {
            let d = dim.ok_or_else(|| CliError::Usage("--dim is required".into()))?;
            Coin::grover(d)?
        }
        CoinArg::Watabe => {
            if let Some(d) = dim.filter(|&d| d != 2) {
                return Err(CliError::Usage(format!(
                    "the watabe coin lives on Z^2, got --dim {d}"
                )));
            }
            let p = args
                .p
                .as_deref()
                .ok_or_else(|| CliError::Usage("--coin watabe needs --p".into()))?;
            Coin::watabe(parse_real::<S>(p)?)?
        }
        CoinArg::Custom => {
            let path = args
                .coin_file
                .as_ref()
                .ok_or_else(|| CliError::Usage("--coin custom needs --coin-file".into()))?;
            let coin = coin_from_json::<S>(&read_json(path)?, args.tol)?;
            if let Some(d) = dim.filter(|&d| d != coin.dim()) {
                return Err(qwalk_core::Error::DimensionMismatch {
                    expected: d,
                    found: coin.dim(),
                }
                .into());
            }
            coin
        }
    };
    Ok(coin)
}

fn load_weights<S: Scalar>(path: Option<&PathBuf>, dim: usize) -> CliResult<WeightSequence<S>> {
    match path {
        Some(p) => {
            let w = weights_from_json::<S>(&read_json(p)?)?;
            if w.dim() != dim {
                return Err(qwalk_core::Error::DimensionMismatch {
                    expected: dim,
                    found: w.dim(),
                }
                .into());
            }
            Ok(w)
        }
        None => Ok(WeightSequence::single(LatticePoint::origin(dim), S::one())?),
    }
}

fn closed_form_state<S: Scalar>(
    coin: &Coin<S>,
    weights: Option<&PathBuf>,
) -> CliResult<FiniteState<S>> {
    let atom = atom_for_coin(coin).ok_or_else(|| {
        CliError::Usage("no closed-form stationary state is known for a custom coin".into())
    })??;
    let w = load_weights::<S>(weights, coin.dim())?;
    Ok(superpose(&atom, &w)?)
}

fn stationary<S: Scalar>(args: &StationaryArgs) -> CliResult<Outcome> {
    let coin = build_coin::<S>(&args.coin, None)?;
    let state = closed_form_state(&coin, args.weights.as_ref())?;
    let measure = || -> CliResult<Value> {
        let m = state.measure();
        let m = if args.normalize { m.normalized()? } else { m };
        Ok(measure_to_json(&m))
    };
    let doc = match args.emit {
        EmitArg::State => state_to_json(&state),
        EmitArg::Measure => measure()?,
        EmitArg::Both => json!({"state": state_to_json(&state), "measure": measure()?}),
    };
    Ok(Outcome {
        doc,
        verified: true,
    })
}

fn verify<S: Scalar>(args: &VerifyArgs, state_doc: Option<&Value>) -> CliResult<Outcome> {
    let file_state = state_doc.map(state_from_json::<S>).transpose()?;
    let coin = build_coin::<S>(&args.coin, file_state.as_ref().map(FiniteState::dim))?;
    let state = match file_state {
        Some(s) => s,
        None => closed_form_state(&coin, args.weights.as_ref())?,
    };

    let scale = state.norm_sqr().to_complex64().re.sqrt().max(1.0);
    let traj = trajectory(&state, &coin, args.steps)?;
    let mut residuals = Vec::with_capacity(args.steps);
    let mut residuals_ok = true;
    for later in &traj[1..] {
        let defect = later.axpy(&-S::one(), &state)?.norm_sqr();
        let r = defect.to_complex64().re.sqrt();
        residuals_ok &= match S::BACKEND {
            Backend::Exact => defect.is_zero(),
            Backend::Float => r <= args.coin.tol * scale,
        };
        residuals.push(r);
    }

    let (symbolic, eigen_max) = match eigenfunction_for_coin(&coin) {
        Some(v) if args.state.is_none() => {
            let v = v?;
            let symbolic = match S::BACKEND {
                Backend::Exact => Some(symbolic_fixed_point_check(&coin, &v)?),
                Backend::Float => None,
            };
            let u = SymbolMatrix::from_coin(&coin);
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let mut max = 0.0f64;
            for _ in 0..args.ksamples {
                let k: Vec<f64> = (0..coin.dim()).map(|_| rng.gen_range(-PI..PI)).collect();
                max = max.max(eigen_residual_with(&u, &v, &k)?);
            }
            (symbolic, Some(max))
        }
        _ => (None, None),
    };

    let verified =
        residuals_ok && symbolic.unwrap_or(true) && eigen_max.is_none_or(|m| m <= args.coin.tol);
    let doc = json!({
        "d": coin.dim(),
        "coin": coin.kind().as_str(),
        "mode": S::BACKEND.as_str(),
        "steps": args.steps,
        "residuals": residuals,
        "residuals_ok": residuals_ok,
        "symbolic_check": symbolic,
        "eigen_residual_max": eigen_max,
        "ksamples": args.ksamples,
        "seed": args.seed,
        "tol": args.coin.tol,
        "passed": verified,
    });
    Ok(Outcome { doc, verified })
}

fn evolve<S: Scalar>(args: &EvolveArgs, state_doc: &Value) -> CliResult<Outcome> {
    let state = state_from_json::<S>(state_doc)?;
    let coin = build_coin::<S>(&args.coin, Some(state.dim()))?;
    let traj = trajectory(&state, &coin, args.steps)?;
    let mass: Vec<Value> = traj.iter().map(|s| s.norm_sqr().encode_real()).collect();
    let doc = json!({
        "steps": args.steps,
        "mass": mass,
        "state": state_to_json(traj.last().expect("trajectory holds the initial state")),
    });
    Ok(Outcome {
        doc,
        verified: true,
    })
}

fn symbol<S: Scalar>(args: &SymbolArgs) -> CliResult<Outcome> {
    let coin = build_coin::<S>(&args.coin, None)?;
    let u = SymbolMatrix::from_coin(&coin);
    let matrix: Vec<Vec<String>> = u
        .rows()
        .iter()
        .map(|row| row.iter().map(ToString::to_string).collect())
        .collect();
    let eigen = eigenfunction_for_coin(&coin).transpose()?;
    let doc = json!({
        "d": coin.dim(),
        "coin": coin.kind().as_str(),
        "mode": S::BACKEND.as_str(),
        "matrix": matrix,
        "eigenfunction": eigen.as_ref().map(|v| v.components().iter().map(poly_to_json).collect::<Vec<_>>()),
        "eigenfunction_text": eigen.as_ref().map(|v| v.components().iter().map(ToString::to_string).collect::<Vec<_>>()),
    });
    Ok(Outcome {
        doc,
        verified: true,
    })
}

macro_rules! dispatch {
    ($mode:expr, $f:ident ( $($arg:expr),* )) => {
        match $mode {
            Backend::Exact => $f::<GaussianRational>($($arg),*),
            Backend::Float => $f::<Complex64>($($arg),*),
        }
    };
}

fn run(cli: Cli) -> CliResult<Outcome> {
    match cli.command {
        Command::Stationary(args) => {
            let mode = resolve_mode(&args.coin, None)?;
            dispatch!(mode, stationary(&args))
        }
        Command::Verify(args) => {
            let doc = args.state.as_deref().map(read_json).transpose()?;
            let mode = resolve_mode(&args.coin, doc.as_ref())?;
            dispatch!(mode, verify(&args, doc.as_ref()))
        }
        Command::Evolve(args) => {
            let doc = read_json(&args.state)?;
            let mode = resolve_mode(&args.coin, Some(&doc))?;
            dispatch!(mode, evolve(&args, &doc))
        }
        Command::Symbol(args) => {
            let mode = resolve_mode(&args.coin, None)?;
            dispatch!(mode, symbol(&args))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            let text = serde_json::to_string_pretty(&outcome.doc).expect("JSON values serialize");
            let mut out = std::io::stdout().lock();
            // a closed pipe (`qwalk ... | head`) is not an error worth reporting
            if let Err(e) = writeln!(out, "{text}").and_then(|()| out.flush()) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            if outcome.verified {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
