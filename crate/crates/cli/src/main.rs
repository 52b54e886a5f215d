//! Command line front end: load a problem file, then solve it classically
//! (`oracle`), run the qutrit circuit (`solve`), map the fidelity landscape
//! (`scan`), or inspect eigenvalue digits (`digits`).
//!
//! Exit codes: 0 success, 2 usage or validation failure, 3 singular matrix,
//! 4 post-selection impossible, 5 no discriminating digit position.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use qutrit_sle::{
    classical_solution, discriminating_position, eigh, run, ternary_digits, PipelineConfig,
    PipelineError, RotationAxis, RotationForm, RotationParams, RunResult, ScanAxis, ScanSpec,
    Semantics, SpectralError,
};
use qutrit_sle_cli::grid_io::{self, GridIoError};
use qutrit_sle_cli::problem::{ProblemFile, ProblemFileError};
use thiserror::Error;

#[derive(Parser)]
#[command(
    name = "qutrit-sle",
    version,
    about = "Solve 3-variable Hermitian linear systems on a simulated three-qutrit circuit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the classical solution, the eigenvalues, and their ternary digits
    Oracle {
        /// Problem file (JSON with "matrix" and "b")
        problem: PathBuf,
    },
    /// Run the qutrit circuit and report the post-selected solution
    Solve {
        problem: PathBuf,
        /// Ternary digit position used by phase estimation
        #[arg(long, default_value_t = 2)]
        n: u32,
        /// Rotation semantics: ideal takes --c, the form variants take --r1/--r2/--r3
        #[arg(long, value_enum)]
        semantics: SemanticsArg,
        /// Eigenvalue-inversion constant for ideal semantics
        #[arg(long, allow_negative_numbers = true)]
        c: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        r1: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        r2: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        r3: Option<f64>,
        /// Rotation form (1 or 2); required for --semantics digit-select,
        /// otherwise must agree with the form named by --semantics
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        form: Option<u8>,
    },
    /// Scan the fidelity landscape over two rotation parameters
    Scan {
        problem: PathBuf,
        /// The two scanned parameters, e.g. r1,r2
        #[arg(long)]
        axes: String,
        /// The held parameter and its value, e.g. r3=0
        #[arg(long, allow_hyphen_values = true)]
        fixed: String,
        /// Range for both axes as min:max, e.g. -1:1
        #[arg(long, allow_hyphen_values = true)]
        range: String,
        /// Grid points per axis
        #[arg(long, default_value_t = 81)]
        points: usize,
        /// CSV output path
        #[arg(long)]
        out: PathBuf,
        /// Optional SVG heatmap path
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        n: u32,
        /// Rotation form (1 or 2)
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
        form: u8,
    },
    /// Print each eigenvalue's ternary digits and the discriminating position
    Digits {
        problem: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_digits: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SemanticsArg {
    Ideal,
    Form1,
    Form2,
    DigitSelect,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Singular(String),
    #[error("{0}")]
    PostSelection(String),
    #[error("{0}")]
    NoDiscriminator(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Singular(_) => 3,
            CliError::PostSelection(_) => 4,
            CliError::NoDiscriminator(_) => 5,
        }
    }
}

impl From<ProblemFileError> for CliError {
    fn from(err: ProblemFileError) -> Self {
        CliError::Validation(err.to_string())
    }
}

impl From<SpectralError> for CliError {
    fn from(err: SpectralError) -> Self {
        match err {
            SpectralError::Singular => CliError::Singular(err.to_string()),
            SpectralError::NoDiscriminatingDigit { .. } => {
                CliError::NoDiscriminator(err.to_string())
            }
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<PipelineError> for CliError {
    fn from(err: PipelineError) -> Self {
        match err {
            PipelineError::PostSelectionImpossible { .. } => {
                CliError::PostSelection(err.to_string())
            }
            PipelineError::Spectral(inner) => inner.into(),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<GridIoError> for CliError {
    fn from(err: GridIoError) -> Self {
        CliError::Validation(err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Oracle { problem } => cmd_oracle(&problem),
        Command::Solve {
            problem,
            n,
            semantics,
            c,
            r1,
            r2,
            r3,
            form,
        } => cmd_solve(&problem, n, semantics, c, r1, r2, r3, form),
        Command::Scan {
            problem,
            axes,
            fixed,
            range,
            points,
            out,
            svg,
            n,
            form,
        } => cmd_scan(
            &problem,
            &axes,
            &fixed,
            &range,
            points,
            &out,
            svg.as_deref(),
            n,
            form,
        ),
        Command::Digits {
            problem,
            max_digits,
        } => cmd_digits(&problem, max_digits),
    }
}

fn fmt_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{:.6} {} {:.6}i", z.re, sign, z.im.abs())
}

fn ternary_string(value: f64, places: usize) -> String {
    match ternary_digits(value, places) {
        Ok(digits) => {
            let mut out = String::from("0.");
            for d in digits {
                out.push(char::from(b'0' + d));
            }
            out
        }
        Err(_) => String::from("n/a"),
    }
}

fn cmd_oracle(path: &std::path::Path) -> Result<(), CliError> {
    let problem = ProblemFile::load(path)?;
    let solution = classical_solution(&problem)?;
    println!("solution:");
    for (i, z) in solution.iter().enumerate() {
        println!("  x[{i}] = {}", fmt_complex(*z));
    }
    let decomposition = eigh(problem.matrix())?;
    println!("eigenvalues:");
    for (j, &lambda) in decomposition.eigenvalues().iter().enumerate() {
        println!(
            "  lambda[{j}] = {lambda:.6}  ternary {}",
            ternary_string(lambda, 6)
        );
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_solve(
    path: &std::path::Path,
    n: u32,
    semantics: SemanticsArg,
    c: Option<f64>,
    r1: Option<f64>,
    r2: Option<f64>,
    r3: Option<f64>,
    form: Option<u8>,
) -> Result<(), CliError> {
    let semantics = build_semantics(semantics, c, r1, r2, r3, form)?;
    let problem = ProblemFile::load(path)?;
    let config = PipelineConfig {
        digit_position: n,
        semantics,
        keep_intermediates: false,
    };
    let result = run(&problem, &config)?;
    print_run_result(&result);
    Ok(())
}

fn build_semantics(
    semantics: SemanticsArg,
    c: Option<f64>,
    r1: Option<f64>,
    r2: Option<f64>,
    r3: Option<f64>,
    form: Option<u8>,
) -> Result<Semantics, CliError> {
    let angles = match (r1, r2, r3) {
        (Some(a), Some(b), Some(d)) => Some((a, b, d)),
        (None, None, None) => None,
        _ => {
            return Err(CliError::Validation(
                "provide all of --r1, --r2, --r3 or none".into(),
            ))
        }
    };
    match semantics {
        SemanticsArg::Ideal => {
            if angles.is_some() || form.is_some() {
                return Err(CliError::Validation(
                    "--semantics ideal takes --c, not --r1/--r2/--r3 or --form".into(),
                ));
            }
            let scale =
                c.ok_or_else(|| CliError::Validation("--semantics ideal requires --c".into()))?;
            Ok(Semantics::Ideal { scale })
        }
        SemanticsArg::Form1 | SemanticsArg::Form2 | SemanticsArg::DigitSelect => {
            if c.is_some() {
                return Err(CliError::Validation(
                    "--c applies only to --semantics ideal".into(),
                ));
            }
            let named = match semantics {
                SemanticsArg::Form1 => Some(1u8),
                SemanticsArg::Form2 => Some(2u8),
                _ => None,
            };
            let form_number = match (named, form) {
                (Some(a), Some(b)) if a != b => {
                    return Err(CliError::Validation(format!(
                        "--form {b} conflicts with --semantics form{a}"
                    )))
                }
                (Some(a), _) => a,
                (None, Some(b)) => b,
                (None, None) => {
                    return Err(CliError::Validation(
                        "--semantics digit-select requires --form 1 or --form 2".into(),
                    ))
                }
            };
            let (a, b, d) = angles.ok_or_else(|| {
                CliError::Validation("form semantics require --r1, --r2 and --r3".into())
            })?;
            let rotation_form = if form_number == 1 {
                RotationForm::One
            } else {
                RotationForm::Two
            };
            Ok(Semantics::DigitSelect(RotationParams::new(
                a,
                b,
                d,
                rotation_form,
            )))
        }
    }
}

fn print_run_result(result: &RunResult) {
    println!("solution state (data wire):");
    for (i, z) in result.solution_state.amplitudes().iter().enumerate() {
        println!("  x[{i}] = {}", fmt_complex(*z));
    }
    println!("success probability: {:.6}", result.success_probability);
    println!("clock residual: {:.3e}", result.clock_residual);
    match result.oracle_fidelity {
        Some(fidelity) => println!("oracle fidelity: {fidelity:.6}"),
        None => println!("oracle fidelity: n/a"),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_scan(
    path: &std::path::Path,
    axes: &str,
    fixed: &str,
    range: &str,
    points: usize,
    out: &std::path::Path,
    svg: Option<&std::path::Path>,
    n: u32,
    form: u8,
) -> Result<(), CliError> {
    let (axis1, axis2) = parse_axes(axes)?;
    let (fixed_param, fixed_value) = parse_fixed(fixed)?;
    if fixed_param == axis1 || fixed_param == axis2 {
        return Err(CliError::Validation(format!(
            "--fixed names {}, which is already scanned by --axes",
            fixed_param.name()
        )));
    }
    let (min, max) = parse_range(range)?;
    let spec = ScanSpec {
        axis1: ScanAxis {
            param: axis1,
            min,
            max,
            points,
        },
        axis2: ScanAxis {
            param: axis2,
            min,
            max,
            points,
        },
        fixed_value,
        form: if form == 1 {
            RotationForm::One
        } else {
            RotationForm::Two
        },
        digit_position: n,
    };
    let problem = ProblemFile::load(path)?;
    let grid = qutrit_sle::scan(&problem, &spec)?;
    grid_io::write_csv(&grid, out)?;
    println!(
        "wrote {} ({} rows)",
        out.display(),
        grid.axis1_values.len() * grid.axis2_values.len()
    );
    if let Some(svg_path) = svg {
        grid_io::write_svg(&grid, svg_path)?;
        println!("wrote {}", svg_path.display());
    }
    let (best1, best2) = grid.best_values();
    println!(
        "best point: {} = {best1:.6}, {} = {best2:.6} ({} = {fixed_value:.6} fixed)",
        axis1.name(),
        axis2.name(),
        fixed_param.name()
    );
    println!("best fidelity: {:.6}", grid.best_fidelity());
    Ok(())
}

fn parse_axes(axes: &str) -> Result<(RotationAxis, RotationAxis), CliError> {
    let parts: Vec<&str> = axes.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::Validation(format!(
            "--axes expects exactly two comma-separated parameters, got '{axes}'"
        )));
    }
    let axis1: RotationAxis = parts[0].trim().parse().map_err(CliError::Validation)?;
    let axis2: RotationAxis = parts[1].trim().parse().map_err(CliError::Validation)?;
    if axis1 == axis2 {
        return Err(CliError::Validation(format!(
            "--axes names {} twice",
            axis1.name()
        )));
    }
    Ok((axis1, axis2))
}

fn parse_fixed(fixed: &str) -> Result<(RotationAxis, f64), CliError> {
    let (name, value) = fixed
        .split_once('=')
        .ok_or_else(|| CliError::Validation(format!("--fixed expects name=value, got '{fixed}'")))?;
    let axis: RotationAxis = name.trim().parse().map_err(CliError::Validation)?;
    let value: f64 = value
        .trim()
        .parse()
        .map_err(|_| CliError::Validation(format!("--fixed value '{value}' is not a number")))?;
    Ok((axis, value))
}

fn parse_range(range: &str) -> Result<(f64, f64), CliError> {
    let (min, max) = range
        .split_once(':')
        .ok_or_else(|| CliError::Validation(format!("--range expects min:max, got '{range}'")))?;
    let min: f64 = min
        .trim()
        .parse()
        .map_err(|_| CliError::Validation(format!("--range minimum '{min}' is not a number")))?;
    let max: f64 = max
        .trim()
        .parse()
        .map_err(|_| CliError::Validation(format!("--range maximum '{max}' is not a number")))?;
    Ok((min, max))
}

fn cmd_digits(path: &std::path::Path, max_digits: usize) -> Result<(), CliError> {
    let problem = ProblemFile::load(path)?;
    let decomposition = eigh(problem.matrix())?;
    for (j, &lambda) in decomposition.eigenvalues().iter().enumerate() {
        let digits = match ternary_digits(lambda, max_digits) {
            Ok(digits) => digits
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(" "),
            Err(_) => String::from("n/a (outside [0, 1))"),
        };
        println!("lambda[{j}] = {lambda:.6}  ternary digits {digits}");
    }
    let position = discriminating_position(decomposition.eigenvalues(), max_digits)?;
    println!("suggested n: {position}");
    Ok(())
}
