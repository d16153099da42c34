//! Command-line front end: model sweeps, single-state inspection, and
//! trace coincidence analysis.
//!
//! Exit codes: 0 success, 2 invalid input or physicality violation,
//! 3 numeric failure.

mod matrix_file;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qbsim::linalg::{hermitian_eig, DensityMatrix, HermitianOperator};
use qbsim::models::{CavityConfig, FieldConfig, FieldMode};
use qbsim::resources::{
    efficiency, ergotropy, pauli_decompose, purity, steering_pair, vn_entropy, SteeringVariant,
};
use qbsim::runner::{
    coincidence_csv, coincidence_report, parse_trace_csv, run_cavity, run_field, write_csv,
    write_svg, TimeGrid, Trace,
};
use qbsim::Error;

use matrix_file::parse_matrix_file;

#[derive(Parser)]
#[command(
    name = "qbsim",
    about = "Two-qubit battery charging simulator: stored energy, ergotropy, \
             entanglement entropy, entropic steering, purity",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the field-driven battery over a time grid and write a CSV trace
    Field(FieldArgs),
    /// Sweep the cavity-charged battery over a time grid and write a CSV trace
    Cavity(CavityArgs),
    /// Print resource quantities of a state read from a matrix file
    Inspect(InspectArgs),
    /// Print the extremum-coincidence table of a trace CSV
    Analyze(AnalyzeArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// Closed-form trajectory with the dephased cell reduction
    Paper,
    /// Numeric propagation with true partial traces
    Exact,
}

#[derive(Args)]
struct FieldArgs {
    /// Harmonic drive amplitude
    #[arg(long = "A")]
    a: f64,
    /// Static drive amplitude
    #[arg(long = "B")]
    b: f64,
    /// Drive frequency
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    /// Qubit gap
    #[arg(long, default_value_t = 1.0)]
    delta: f64,
    /// Exchange coupling
    #[arg(long, default_value_t = 0.0)]
    g: f64,
    #[arg(long, value_enum, default_value_t = ModeArg::Paper)]
    mode: ModeArg,
    /// End of the time grid
    #[arg(long, default_value_t = std::f64::consts::TAU)]
    tmax: f64,
    /// Grid points from 0 to tmax inclusive
    #[arg(long, default_value_t = 2000)]
    steps: usize,
    /// Output CSV path
    #[arg(long)]
    out: PathBuf,
    /// Optional SVG chart path
    #[arg(long)]
    plot: Option<PathBuf>,
    /// Comma-separated columns for the chart
    #[arg(long, value_delimiter = ',')]
    columns: Option<Vec<String>>,
}

#[derive(Args)]
struct CavityArgs {
    /// Initial photon number (>= 2)
    #[arg(long, default_value_t = 7)]
    n: u32,
    /// Cavity frequency
    #[arg(long = "omega-a", default_value_t = 1.0)]
    omega_a: f64,
    /// Matter-radiation coupling
    #[arg(long = "omega-g", default_value_t = 1.0)]
    omega_g: f64,
    /// Qubit gap
    #[arg(long, default_value_t = 1.0)]
    delta: f64,
    /// Exchange strength
    #[arg(long = "J1", default_value_t = 1.0)]
    j1: f64,
    /// Anisotropy of the zz coupling
    #[arg(long = "J2", default_value_t = 1.0)]
    j2: f64,
    /// End of the time grid
    #[arg(long, default_value_t = 20.0)]
    tmax: f64,
    /// Grid points from 0 to tmax inclusive
    #[arg(long, default_value_t = 4000)]
    steps: usize,
    /// Output CSV path
    #[arg(long)]
    out: PathBuf,
    /// Optional SVG chart path
    #[arg(long)]
    plot: Option<PathBuf>,
    /// Comma-separated columns for the chart
    #[arg(long, value_delimiter = ',')]
    columns: Option<Vec<String>>,
}

#[derive(Args)]
struct InspectArgs {
    /// Matrix file holding a 2x2 or 4x4 density matrix
    #[arg(long)]
    state: PathBuf,
    /// Optional matrix file holding a Hermitian operator of matching size
    #[arg(long)]
    hamiltonian: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Trace CSV produced by the field or cavity subcommands
    #[arg(long)]
    trace: PathBuf,
    /// Coincidence tolerance in grid steps
    #[arg(long = "tol-steps", default_value_t = 2)]
    tol_steps: usize,
}

const DEFAULT_PLOT_COLUMNS: [&str; 4] = ["E", "S", "I_ab", "I_ba"];

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err {
                Error::NumericFailure(_) => 3,
                Error::InvalidInput(_) | Error::Io { .. } => 2,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> qbsim::Result<()> {
    match cli.command {
        Command::Field(args) => {
            let cfg = FieldConfig {
                a_harmonic: args.a,
                b_static: args.b,
                omega: args.omega,
                delta: args.delta,
                g: args.g,
                mode: match args.mode {
                    ModeArg::Paper => FieldMode::Paper,
                    ModeArg::Exact => FieldMode::Exact,
                },
            };
            let grid = TimeGrid::new(args.tmax, args.steps)?;
            let trace = run_field(&cfg, &grid)?;
            emit(&trace, &args.out, args.plot.as_deref(), args.columns)
        }
        Command::Cavity(args) => {
            let cfg = CavityConfig::new(
                args.n,
                args.omega_a,
                args.omega_g,
                args.delta,
                args.j1,
                args.j2,
            )?;
            let grid = TimeGrid::new(args.tmax, args.steps)?;
            let trace = run_cavity(&cfg, &grid)?;
            emit(&trace, &args.out, args.plot.as_deref(), args.columns)
        }
        Command::Inspect(args) => inspect(&args),
        Command::Analyze(args) => {
            let text = std::fs::read_to_string(&args.trace).map_err(|source| Error::Io {
                path: args.trace.clone(),
                source,
            })?;
            let trace = parse_trace_csv(&text)?;
            let report = coincidence_report(&trace, args.tol_steps)?;
            print!("{}", coincidence_csv(&report));
            Ok(())
        }
    }
}

fn emit(
    trace: &Trace,
    out: &std::path::Path,
    plot: Option<&std::path::Path>,
    columns: Option<Vec<String>>,
) -> qbsim::Result<()> {
    write_csv(trace, out)?;
    if let Some(plot_path) = plot {
        let columns =
            columns.unwrap_or_else(|| DEFAULT_PLOT_COLUMNS.iter().map(|s| s.to_string()).collect());
        write_svg(trace, &columns, plot_path)?;
    }
    Ok(())
}

fn read_matrix(path: &std::path::Path) -> qbsim::Result<qbsim::linalg::ComplexMatrix> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_matrix_file(&text)
}

/// Prints the resource report of a user-supplied state as `key=value`
/// lines: entropy, purity, and (for two-qubit states) the steering pair
/// always; stored energy above the operator ground state, ergotropy, and
/// efficiency only when a Hamiltonian is supplied.
fn inspect(args: &InspectArgs) -> qbsim::Result<()> {
    let state_mat = read_matrix(&args.state)?;
    let dim = state_mat.rows();
    if dim != 2 && dim != 4 {
        return Err(Error::InvalidInput(format!(
            "state must be 2x2 or 4x4, got {dim}x{dim}"
        )));
    }
    let rho = DensityMatrix::new(state_mat)?;

    let fmt = qbsim::runner::csv::format_sig9;
    let mut lines: Vec<String> = vec![format!("dim={dim}")];

    if let Some(h_path) = &args.hamiltonian {
        let h = HermitianOperator::new(read_matrix(h_path)?)?;
        if h.dim() != dim {
            return Err(Error::InvalidInput(format!(
                "hamiltonian is {}x{} but the state is {dim}x{dim}",
                h.dim(),
                h.dim()
            )));
        }
        let ground = hermitian_eig(&h)?.values[0];
        let mean = qbsim::linalg::expectation(&h, &rho)?;
        let energy = mean - ground;
        let (erg, _) = ergotropy(&rho, &h)?;
        let (eta, eta_defined) = efficiency(erg, energy);
        lines.push(format!("E={}", fmt(energy)));
        lines.push(format!("ergotropy={}", fmt(erg)));
        lines.push(format!("eta={}", fmt(eta)));
        lines.push(format!("eta_defined={}", u8::from(eta_defined)));
    }

    lines.push(format!("S={}", fmt(vn_entropy(&rho))));
    if dim == 4 {
        let d = pauli_decompose(&rho)?;
        let s = steering_pair(&d, SteeringVariant::ConditionalEntropy)?;
        lines.push(format!("I_ab={}", fmt(s.i_ab)));
        lines.push(format!("I_ba={}", fmt(s.i_ba)));
        lines.push(format!("steerable_ab={}", s.steerable_ab));
        lines.push(format!("steerable_ba={}", s.steerable_ba));
    }
    lines.push(format!("purity={}", fmt(purity(&rho))));

    for line in lines {
        println!("{line}");
    }
    Ok(())
}
