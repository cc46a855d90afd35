use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use virtcorr::claims::{self, DEFAULT_SEED};
use virtcorr::entanglement::{entanglement_entropy, negativity};
use virtcorr::fermion_map::{embed, extract, reduced_fermion_state, TwoFermionState};
use virtcorr::io::{read_matrix, render_matrix, write_matrix};
use virtcorr::linalg::{hermitian_eigenvalues, ComplexMatrix};
use virtcorr::reductions::{partial_transpose, Subsystem};
use virtcorr::sweep::{render_csv, sweep_grid};
use virtcorr::{DensityMatrix, Error};

const EXIT_VERIFY: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_DIMENSION: u8 = 3;
const EXIT_FLAG: u8 = 4;

#[derive(Parser)]
#[command(name = "virtcorr", version, about = "Virtual two-fermion entanglement of qudit states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Negativity of the embedded two-fermion state of a qudit state file
    Negativity {
        input: PathBuf,
        /// Single-fermion dimension; the input must have dimension d(d-1)/2
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(2..))]
        d: u64,
    },
    /// Write the d²×d² embedded state
    Embed {
        input: PathBuf,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(2..))]
        d: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Recover the qudit state from an embedded two-fermion state
    Extract {
        input: PathBuf,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(2..))]
        d: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Write the single-fermion reduced state
    Reduce {
        input: PathBuf,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(2..))]
        d: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Write the partial transpose (second factor) of the embedded state
    Transpose {
        input: PathBuf,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(2..))]
        d: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print a matrix file with its spectrum
    Show {
        input: PathBuf,
        /// Skip density-matrix validation (e.g. for partial transposes)
        #[arg(long)]
        raw: bool,
    },
    /// Diagonal-state negativity over a simplex grid, as CSV
    Sweep {
        #[arg(long, default_value_t = 0.05)]
        step: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check every property of the qutrit construction; exit 1 on failure
    Verify {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::DimensionMismatch { .. }
            | Error::ShapeMismatch { .. }
            | Error::DimensionTooSmall(_) => EXIT_DIMENSION,
            Error::InvalidStep(_) => EXIT_FLAG,
            _ => EXIT_VALIDATION,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_FLAG } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn read_state(path: &Path) -> Result<DensityMatrix, Failure> {
    Ok(DensityMatrix::from_matrix(read_matrix(path)?)?)
}

fn emit(matrix: &ComplexMatrix, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(path) => write_matrix(path, matrix)?,
        None => print!("{}", render_matrix(matrix)),
    }
    Ok(())
}

fn fmt_list(values: &[f64]) -> String {
    let items: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!("[{}]", items.join(","))
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Negativity { input, d } => {
            let d = d as usize;
            let rho = read_state(&input)?;
            let state = embed(&rho, d)?;
            let report = negativity(state.density(), state.shape())?;
            let mut line = format!(
                "d={d} negativity={} log_negativity={} trace_norm={} neg_eigenvalues={} entangled={}",
                report.negativity,
                report.log_negativity,
                report.trace_norm,
                fmt_list(&report.neg_eigenvalues),
                report.entangled,
            );
            if let Ok(s) = entanglement_entropy(state.density(), state.shape()) {
                line.push_str(&format!(" entropy={s}"));
            }
            println!("{line}");
        }
        Command::Embed { input, d, output } => {
            let state = embed(&read_state(&input)?, d as usize)?;
            emit(state.matrix(), output.as_deref())?;
        }
        Command::Extract { input, d, output } => {
            let state = TwoFermionState::new(read_state(&input)?, d as usize)?;
            emit(extract(&state)?.matrix(), output.as_deref())?;
        }
        Command::Reduce { input, d, output } => {
            let reduced = reduced_fermion_state(&read_state(&input)?, d as usize)?;
            emit(reduced.matrix(), output.as_deref())?;
        }
        Command::Transpose { input, d, output } => {
            let state = embed(&read_state(&input)?, d as usize)?;
            let pt = partial_transpose(state.density(), state.shape(), Subsystem::B)?;
            emit(&pt, output.as_deref())?;
        }
        Command::Show { input, raw } => {
            let matrix = if raw {
                read_matrix(&input)?
            } else {
                read_state(&input)?.into_matrix()
            };
            print!("{}", render_matrix(&matrix));
            match hermitian_eigenvalues(&matrix) {
                Ok(ev) => println!("eigenvalues={}", fmt_list(&ev)),
                Err(err) => println!("eigenvalues=unavailable ({err})"),
            }
        }
        Command::Sweep { step, output } => {
            let csv = render_csv(&sweep_grid(step)?);
            match output {
                Some(path) => fs::write(path, csv).map_err(Error::from)?,
                None => print!("{csv}"),
            }
        }
        Command::Verify { seed } => {
            println!("{}", claims::table_header());
            let mut all_passed = true;
            for outcome in claims::run_all(seed) {
                all_passed &= outcome.passed;
                println!("{}", outcome.row());
            }
            return Ok(if all_passed { 0 } else { EXIT_VERIFY });
        }
    }
    Ok(0)
}
