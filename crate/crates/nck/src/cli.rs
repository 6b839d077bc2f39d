//! Batch command-line front end.
//!
//! Exit codes: 0 on success, 2 when a verification report fails (a Jung
//! check, a bracket, or a net certificate), 1 on usage or domain errors.
//! All randomness is seeded; identical invocations produce byte-identical
//! outputs.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formats;
use crate::generators::{gen_family, FamilyKind};
use crate::geometry::{chebyshev_ball_seeded, diameter, jung_report, PointSet, DEFAULT_TOL};
use crate::moduli::{mu_uec_estimate, theorem_bracket};
use crate::net_builder::build_net;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFICATION: i32 = 2;

/// Accepts plain decimals plus the dyadic shorthand `2^k` / `2^-k`.
fn parse_real(s: &str) -> std::result::Result<f64, String> {
    if let Some(exp) = s.strip_prefix("2^") {
        let e: i32 = exp
            .parse()
            .map_err(|_| format!("bad dyadic exponent in {s:?}"))?;
        return Ok(2.0f64.powi(e));
    }
    s.parse().map_err(|_| format!("not a number: {s:?}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "nck",
    version,
    about = "Chebyshev balls, moduli of continuity, and certified epsilon-nets"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimum enclosing (Chebyshev) ball of a point set
    Meb {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_parser = parse_real)]
        tol: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Diameter of a point set (exact pairwise scan)
    Diam {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Jung inequality check: one set via --input, or seeded random trials
    Jung {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = parse_real)]
        tol: Option<f64>,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Modulus-of-continuity profile of a family (dyadic mesh schedule)
    Profile {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Build a certified epsilon-net for a family
    Net {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_parser = parse_real)]
        delta: f64,
        #[arg(long, value_parser = parse_real)]
        alpha: f64,
        #[arg(long, value_parser = parse_real)]
        epsilon: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = parse_real)]
        tol: Option<f64>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Two-sided bracket certified by one net construction
    Bracket {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_parser = parse_real)]
        delta: f64,
        #[arg(long, value_parser = parse_real)]
        epsilon: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = parse_real)]
        tol: Option<f64>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Generate a canonical family (ramp, sine_sweep, simplex_osc)
    Gen {
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 4)]
        k_max: u32,
        #[arg(long, value_parser = parse_real)]
        mesh: f64,
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

/// Parses argv and runs; returns the process exit code.
pub fn run_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version as "errors" with code 0
            if e.use_stderr() {
                eprint!("{e}");
                return EXIT_USAGE;
            }
            print!("{e}");
            return EXIT_OK;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

/// Default tolerance, overridable by the NCK_TOL environment variable and
/// then by an explicit --tol flag.
fn resolve_tol(flag: Option<f64>) -> Result<f64> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var("NCK_TOL") {
            Ok(s) => parse_real(&s).map_err(Error::InvalidArgument)?,
            Err(_) => DEFAULT_TOL,
        },
    };
    crate::error::ensure_positive(tol, "tolerance")?;
    Ok(tol)
}

fn emit(output: Option<&Path>, content: &str) -> Result<()> {
    let mut text = content.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match output {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

#[derive(Serialize)]
struct DiamDoc {
    diameter: f64,
}

#[derive(Serialize)]
struct JungTrialsDoc {
    trials: u64,
    passes: u64,
    dim: usize,
    seed: u64,
}

fn dispatch(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Meb {
            input,
            output,
            tol,
            seed,
            format,
        } => {
            let ps = formats::read_point_set(&input)?;
            let ball = chebyshev_ball_seeded(&ps, resolve_tol(tol)?, seed)?;
            let text = match format {
                Format::Json => serde_json::to_string(&ball)?,
                Format::Csv => {
                    let mut row: Vec<String> =
                        ball.center.iter().map(|&c| formats::format_f64(c)).collect();
                    row.push(formats::format_f64(ball.radius));
                    row.join(",")
                }
            };
            emit(output.as_deref(), &text)?;
            Ok(EXIT_OK)
        }
        Command::Diam {
            input,
            output,
            format,
        } => {
            let ps = formats::read_point_set(&input)?;
            let d = diameter(&ps);
            let text = match format {
                Format::Json => serde_json::to_string(&DiamDoc { diameter: d })?,
                Format::Csv => formats::format_f64(d),
            };
            emit(output.as_deref(), &text)?;
            Ok(EXIT_OK)
        }
        Command::Jung {
            input,
            trials,
            dim,
            seed,
            tol,
            output,
            format,
        } => {
            let tol = resolve_tol(tol)?;
            if let Some(path) = input {
                let ps = formats::read_point_set(&path)?;
                let report = jung_report(&ps, tol)?;
                let text = match format {
                    Format::Json => serde_json::to_string(&report)?,
                    Format::Csv => format!(
                        "diameter,radius,lower,upper,pass,margin\n{},{},{},{},{},{}",
                        formats::format_f64(report.diameter),
                        formats::format_f64(report.radius),
                        formats::format_f64(report.lower),
                        formats::format_f64(report.upper),
                        report.pass,
                        formats::format_f64(report.margin),
                    ),
                };
                emit(output.as_deref(), &text)?;
                return Ok(if report.pass { EXIT_OK } else { EXIT_VERIFICATION });
            }
            let dim = dim.ok_or_else(|| {
                Error::InvalidArgument("--dim is required for randomized jung trials".into())
            })?;
            if dim == 0 || dim > 16 {
                return Err(Error::InvalidArgument(format!(
                    "dim must be in 1..=16, got {dim}"
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut passes = 0u64;
            for _ in 0..trials {
                let size = rng.gen_range(2..=dim + 4);
                let points = (0..size)
                    .map(|_| (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect())
                    .collect();
                let ps = PointSet::new(dim, points)?;
                if jung_report(&ps, tol)?.pass {
                    passes += 1;
                }
            }
            println!("{passes}/{trials} pass");
            if let Some(path) = output {
                let doc = JungTrialsDoc {
                    trials,
                    passes,
                    dim,
                    seed,
                };
                emit(Some(&path), &serde_json::to_string(&doc)?)?;
            }
            Ok(if passes == trials {
                EXIT_OK
            } else {
                EXIT_VERIFICATION
            })
        }
        Command::Profile { input, output } => {
            let fam = formats::read_family(&input)?;
            let (estimate, profile) = mu_uec_estimate(&fam)?;
            let csv = formats::profile_to_csv(&profile);
            emit(output.as_deref(), &csv)?;
            if output.is_some() {
                println!(
                    "modulus estimate at mesh {}: {}",
                    formats::format_f64(fam.grid().mesh()),
                    formats::format_f64(estimate)
                );
            }
            Ok(EXIT_OK)
        }
        Command::Net {
            input,
            delta,
            alpha,
            epsilon,
            seed,
            tol,
            output,
        } => {
            let tol = resolve_tol(tol)?;
            let fam = formats::read_family(&input)?;
            let (net, certs) = build_net(&fam, delta, alpha, epsilon, seed, tol)?;
            emit(output.as_deref(), &formats::net_bundle_to_json(&net, &certs))?;
            let ok = certs.iter().all(|c| c.total <= c.bound + tol);
            if output.is_some() {
                let worst = certs.iter().map(|c| c.total).fold(0.0, f64::max);
                println!(
                    "net size {} for {} members, worst total {} vs bound {}",
                    net.len(),
                    fam.len(),
                    formats::format_f64(worst),
                    formats::format_f64(certs[0].bound)
                );
            }
            Ok(if ok { EXIT_OK } else { EXIT_VERIFICATION })
        }
        Command::Bracket {
            input,
            delta,
            epsilon,
            seed,
            tol,
            output,
        } => {
            let tol = resolve_tol(tol)?;
            let fam = formats::read_family(&input)?;
            let bracket = theorem_bracket(&fam, delta, epsilon, seed, tol)?;
            emit(output.as_deref(), &serde_json::to_string(&bracket)?)?;
            Ok(if bracket.pass {
                EXIT_OK
            } else {
                EXIT_VERIFICATION
            })
        }
        Command::Gen {
            kind,
            k_max,
            mesh,
            dim,
            output,
            format,
        } => {
            let kind: FamilyKind = kind.parse()?;
            let fam = gen_family(kind, k_max, mesh, dim)?;
            let text = match format {
                Format::Json => formats::family_to_json(&fam),
                Format::Csv => formats::family_to_csv(&fam)?,
            };
            emit(output.as_deref(), &text)?;
            Ok(EXIT_OK)
        }
    }
}
