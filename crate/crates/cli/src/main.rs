//! Command-line driver for the spectral library.
//!
//! Exit codes: 0 all checks passed, 1 a check failed, 2 invalid parameters,
//! 3 solver failure.

mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use std::path::PathBuf;
use std::process::ExitCode;

use qes_spectral::dual_hahn::HahnParams;
use qes_spectral::error::Error;
use qes_spectral::q_hahn::QHahnParams;
use qes_spectral::schrodinger::{GridSpec, SchrodingerDomain};
use qes_spectral::selftest::{self, Tolerances};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_INVALID_PARAMETER: u8 = 2;
const EXIT_SOLVER_FAILURE: u8 = 3;

/// Seed resolution: flag wins over QES_SPECTRAL_SEED, which wins over the
/// default.
fn resolve_seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("QES_SPECTRAL_SEED")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(selftest::DEFAULT_SEED)
}

#[derive(Parser)]
#[command(
    name = "qes-spectral",
    about = "Closed-form spectra of tridiagonal quasi-exactly-solvable problems, verified against numerical oracles",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct CommonOpts {
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
    /// PRNG seed (overrides QES_SPECTRAL_SEED)
    #[arg(long)]
    seed: Option<u64>,
    /// Tolerance override NAME=VALUE (repeatable)
    #[arg(long = "tolerance")]
    tolerances: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form spectrum vs numerical oracle for one parameter set
    Spectrum {
        #[command(subcommand)]
        family: Family,
    },
    /// Run every identity check for one parameter set
    Verify {
        #[command(subcommand)]
        family: Family,
    },
    /// Emit butterfly CSV over all odd N ≤ max-N and coprime S
    Butterfly {
        #[arg(long = "max-N", alias = "max-n")]
        max_n: u32,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Sample the potential and eigenfunctions of the Schrödinger reduction
    Schrodinger {
        #[arg(long = "N")]
        n: u32,
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
        #[arg(long, allow_negative_numbers = true)]
        delta: f64,
        #[arg(long, value_enum, default_value = "half")]
        domain: DomainArg,
        #[arg(long, default_value_t = 0.05)]
        y_min: f64,
        #[arg(long, default_value_t = 10.0)]
        y_max: f64,
        #[arg(long, default_value_t = 256)]
        points: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run the full acceptance suite and print a summary table
    Selftest {
        #[command(flatten)]
        common: CommonOpts,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DomainArg {
    Full,
    Half,
}

#[derive(Subcommand)]
enum Family {
    /// Dual Hahn differential family (γ, δ, N)
    Hahn {
        #[arg(long = "N")]
        n: u32,
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
        #[arg(long, allow_negative_numbers = true)]
        delta: f64,
        /// Perturb one matrix entry so the checks must fail (test hook)
        #[arg(long, default_value_t = false)]
        inject_error: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Continuous dual q-Hahn at q = e^{2πiS/N}, ac = q
    QhahnRou {
        #[arg(long = "N")]
        n: u32,
        #[arg(long = "S")]
        s: u32,
        /// Complex parameter, e.g. 0.7 or 0.6+0.1i
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        a: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0")]
        b: Complex64,
        #[arg(long, default_value_t = false)]
        inject_error: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Continuous dual q-Hahn at general q, ac = q^{1−N}
    QhahnGeneral {
        #[arg(long = "N")]
        n: u32,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        q: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        a: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0")]
        b: Complex64,
        #[arg(long, default_value_t = false)]
        inject_error: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
}

/// Parse "1.5", "-0.3", "0.6+0.1i", "-0.2-0.4i", "0.5i".
fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim().replace(' ', "");
    if t.is_empty() {
        return Err("empty complex literal".into());
    }
    if let Some(im_part) = t.strip_suffix('i') {
        // Split the imaginary suffix from an optional real prefix at the last
        // +/- that is not an exponent sign and not leading.
        let bytes = im_part.as_bytes();
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            let c = bytes[i] as char;
            if (c == '+' || c == '-') && !matches!(bytes[i - 1] as char, 'e' | 'E') {
                split = Some(i);
                break;
            }
        }
        match split {
            Some(i) => {
                let re: f64 = im_part[..i].parse().map_err(|_| format!("bad real part in {s:?}"))?;
                let im_str = &im_part[i..];
                let im: f64 = if im_str == "+" {
                    1.0
                } else if im_str == "-" {
                    -1.0
                } else {
                    im_str.parse().map_err(|_| format!("bad imaginary part in {s:?}"))?
                };
                Ok(Complex64::new(re, im))
            }
            None => {
                let im: f64 = if im_part.is_empty() {
                    1.0
                } else {
                    im_part.parse().map_err(|_| format!("bad imaginary part in {s:?}"))?
                };
                Ok(Complex64::new(0.0, im))
            }
        }
    } else {
        let re: f64 = t.parse().map_err(|_| format!("bad real literal {s:?}"))?;
        Ok(Complex64::new(re, 0.0))
    }
}

fn tolerances_from(common: &CommonOpts) -> Result<Tolerances, Error> {
    let mut tol = Tolerances::default();
    for spec in &common.tolerances {
        tol.set_override(spec)?;
    }
    Ok(tol)
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::InvalidParameter(_) | Error::DegenerateInput(_) | Error::LengthMismatch(_, _) => {
            EXIT_INVALID_PARAMETER
        }
        Error::SolverFailure(_) | Error::QuadratureFailure(_) => EXIT_SOLVER_FAILURE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

use report::FamilyParams;

impl Family {
    fn common(&self) -> &CommonOpts {
        match self {
            Family::Hahn { common, .. }
            | Family::QhahnRou { common, .. }
            | Family::QhahnGeneral { common, .. } => common,
        }
    }

    fn inject_error(&self) -> bool {
        match self {
            Family::Hahn { inject_error, .. }
            | Family::QhahnRou { inject_error, .. }
            | Family::QhahnGeneral { inject_error, .. } => *inject_error,
        }
    }

    fn build(&self) -> Result<FamilyParams, Error> {
        match self {
            Family::Hahn { n, gamma, delta, .. } => {
                Ok(FamilyParams::Hahn(HahnParams::new(*gamma, *delta, *n)?))
            }
            Family::QhahnRou { n, s, a, b, .. } => Ok(FamilyParams::Qhahn(
                QHahnParams::root_of_unity(*n, *s, *a, *b)?,
            )),
            Family::QhahnGeneral { n, q, a, b, .. } => {
                Ok(FamilyParams::Qhahn(QHahnParams::general(*n, *q, *a, *b)?))
            }
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Spectrum { family } => {
            let common = family.common();
            let tol = tolerances_from(common)?;
            let seed = resolve_seed(common.seed);
            let params = family.build()?;
            let report = report::spectrum_report(&params, &tol, seed, family.inject_error())?;
            report::emit_spectrum(&report, common.out.as_deref(), common.format == OutputFormat::Csv)?;
            Ok(if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_CHECK_FAILED)
            })
        }
        Command::Verify { family } => {
            let common = family.common();
            let tol = tolerances_from(common)?;
            let seed = resolve_seed(common.seed);
            let params = family.build()?;
            let (doc, all_passed) =
                report::verify_report(&params, &tol, seed, family.inject_error())?;
            report::emit_json(&doc, common.out.as_deref())?;
            Ok(if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_CHECK_FAILED)
            })
        }
        Command::Butterfly { max_n, common } => {
            let sweep = qes_spectral::hofstadter::butterfly_sweep(max_n)?;
            report::emit_butterfly(&sweep, common.out.as_deref())?;
            Ok(if sweep.failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                for f in &sweep.failures {
                    eprintln!("solver failure: {f}");
                }
                ExitCode::from(EXIT_SOLVER_FAILURE)
            })
        }
        Command::Schrodinger {
            n,
            gamma,
            delta,
            domain,
            y_min,
            y_max,
            points,
            common,
        } => {
            let params = HahnParams::new(gamma, delta, n)?;
            let grid = GridSpec {
                y_min,
                y_max,
                n_points: points,
            };
            let domain = match domain {
                DomainArg::Full => SchrodingerDomain::FullLine,
                DomainArg::Half => SchrodingerDomain::HalfLine,
            };
            report::emit_schrodinger(params, domain, grid, common.out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Selftest { common } => {
            let tol = tolerances_from(&common)?;
            let seed = resolve_seed(common.seed);
            let outcomes = selftest::run_acceptance_suite(seed, &tol);
            let mut all = true;
            println!("acceptance suite (seed {seed})");
            for o in &outcomes {
                println!("{}", o.summary_line());
                all &= o.passed;
            }
            if let Some(path) = common.out.as_deref() {
                report::emit_selftest_json(&outcomes, seed, path)?;
            }
            Ok(if all {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_CHECK_FAILED)
            })
        }
    }
}
