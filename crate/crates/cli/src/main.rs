mod compact;
mod emit;
mod io;
mod orbit;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use io::InputError;

#[derive(Parser)]
#[command(name = "orbitkit", version, about = "Coadjoint orbits, u(n) weights and their checks")]
struct Cli {
    /// Numerical tolerance; overrides ORBITKIT_TOL and the built-in default.
    #[arg(long, global = true, allow_hyphen_values = true)]
    tol: Option<String>,
    /// Output file for the command's artifact.
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structure-constant checks.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Orbit geometry of a nilpotent algebra at a base covector.
    #[command(subcommand)]
    Orbit(OrbitCmd),
    /// Weights, convexity and states for u(n).
    #[command(subcommand)]
    Compact(CompactCmd),
    /// Plot-ready projection data.
    #[command(subcommand)]
    Emit(EmitCmd),
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Antisymmetry, Jacobi identity and nilpotency class.
    Check { file: PathBuf },
}

#[derive(Args, Clone)]
pub struct OrbitArgs {
    /// Bracket file.
    pub file: PathBuf,
    /// Base covector: comma-separated rationals, a covector file, or a name `N`
    /// resolving to `<stem>.N.cov` next to the bracket file. Defaults to `<stem>.cov`.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    /// Comma-separated algebra elements; a bare label prefix such as `gamma`
    /// stands for every label `gamma1`, `gamma2`, ….
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
}

#[derive(Subcommand)]
enum OrbitCmd {
    /// Orbit span, affine hull and the ideals o ⊆ c.
    Span(OrbitArgs),
    /// Projection of the orbit onto the dual of a subalgebra (CSV cloud with -o).
    Project {
        #[command(flatten)]
        args: OrbitArgs,
        /// Grid half-width: parameters run over {-k·step, …, k·step}.
        #[arg(long, default_value_t = 4)]
        grid: i64,
        /// Grid step, a rational literal.
        #[arg(long, default_value = "1/2")]
        step: String,
    },
    /// Polarization at x with the subordination and Pukánszky checks.
    Polarize(OrbitArgs),
    /// Little-group reduction along an X-abelian ideal given by --a.
    Littlegroup(OrbitArgs),
    /// Flatness and Corwin's condition.
    Flat(OrbitArgs),
}

#[derive(Subcommand)]
enum CompactCmd {
    /// Dominant λ ≤ μ, one per line.
    QuantumList {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Schur–Horn sampling of conjugated diagonals.
    Convexity {
        #[arg(long, allow_hyphen_values = true)]
        spectrum: String,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Convexity ascent on CP^{n-1} (k = 1) or the Grassmannian Gr(k, n).
    Ascent {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Convex weights on the k-subset vertices in lexicographic order.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        /// Target residual for the moment value.
        #[arg(long, default_value_t = 1e-6)]
        residual: f64,
    },
    /// Partition-function inequality at a regular torus element.
    Partition {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        /// Defaults to μ.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// Scan t·z for t up to this value and report the first violation instead.
        #[arg(long)]
        t_max: Option<f64>,
    },
    /// Highest-weight state at Haar-random unitaries.
    State {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, default_value_t = 1)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum EmitCmd {
    /// Euclidean-plane cylinder orbit cloud.
    Fig1 {
        /// Base covector (j, p1, p2).
        #[arg(long, allow_hyphen_values = true, default_value = "1/4,2,0")]
        x: String,
    },
    /// Weyl-orbit hull, its integral points and the weight diagrams of the quantum modules.
    Fig2 {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
}

/// Shared state for one invocation.
pub struct Ctx {
    pub tol: f64,
    pub output: Option<PathBuf>,
}

fn tolerance(flag: Option<&str>) -> Result<f64, InputError> {
    let (raw, source) = match flag {
        Some(s) => (s.to_string(), "--tol"),
        None => match std::env::var("ORBITKIT_TOL") {
            Ok(s) => (s, "ORBITKIT_TOL"),
            Err(_) => return Ok(orbitkit::DEFAULT_TOL),
        },
    };
    match raw.trim().parse::<f64>() {
        Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
        _ => Err(InputError(format!("{source}: expected a positive number, got {raw:?}"))),
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let ctx = Ctx { tol: tolerance(cli.tol.as_deref())?, output: cli.output };
    match cli.command {
        Command::Algebra(AlgebraCmd::Check { file }) => orbit::algebra_check(&ctx, &file),
        Command::Orbit(cmd) => match cmd {
            OrbitCmd::Span(a) => orbit::span(&ctx, &a),
            OrbitCmd::Project { args, grid, step } => orbit::project(&ctx, &args, grid, &step),
            OrbitCmd::Polarize(a) => orbit::polarize(&ctx, &a),
            OrbitCmd::Littlegroup(a) => orbit::little_group(&ctx, &a),
            OrbitCmd::Flat(a) => orbit::flat(&ctx, &a),
        },
        Command::Compact(cmd) => match cmd {
            CompactCmd::QuantumList { mu } => compact::quantum_list(&ctx, &mu),
            CompactCmd::Convexity { spectrum, samples, seed } => compact::convexity(&ctx, &spectrum, samples, seed),
            CompactCmd::Ascent { n, k, coeffs, residual } => compact::ascent(n, k, &coeffs, residual),
            CompactCmd::Partition { mu, lambda, z, t_max } => compact::partition(&ctx, &mu, lambda.as_deref(), &z, t_max),
            CompactCmd::State { mu, samples, seed } => compact::state(&ctx, &mu, samples, seed),
        },
        Command::Emit(cmd) => match cmd {
            EmitCmd::Fig1 { x } => emit::fig1(&ctx, &x),
            EmitCmd::Fig2 { mu } => emit::fig2(&ctx, &mu),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if e.is::<InputError>() { 2 } else { 1 })
        }
    }
}
