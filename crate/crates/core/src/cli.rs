//! Command-line front end.
//!
//! [`run`] does all the work and returns the text to print plus an exit
//! code, so the binary is a thin wrapper and the behaviour is testable
//! in-process.

use std::fs;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::complex::{format_real, Complex};
use crate::descent::trace_csv;
use crate::evt::{certified_min, EvtError, SquareRegion};
use crate::growth::{growth_certificate, minimum_enclosing_square, GrowthError};
use crate::lemmas::replay_all;
use crate::polynomial::{Polynomial, PolynomialError};
use crate::solver::{find_all_roots, find_root, SolveError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NOT_CONVERGED: i32 = 2;

pub const DEFAULT_SEED: u64 = 1746;
pub const CHECK_SAMPLES: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Solve,
    SolveAll,
    Evt,
    Bounds,
    Check,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Parse(#[from] PolynomialError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Growth(#[from] GrowthError),
    #[error(transparent)]
    Evt(#[from] EvtError),
}

/// Find roots of a complex polynomial by certified minimization and
/// norm-decreasing descent.
///
/// Coefficients are given constant term first, either as complex literals
/// (`1 1i 3` is 1 + iz + 3z²) or as a JSON array of [re, im] pairs.
#[derive(Debug, Parser)]
#[command(name = "dalembert", version)]
pub struct Args {
    /// Mode name, or the polynomial when no mode is given here.
    #[arg(allow_hyphen_values = true, value_name = "MODE|POLYNOMIAL")]
    pub first: Option<String>,

    /// The polynomial, after a leading mode, e.g. `solve "1 1i 3"`.
    #[arg(allow_hyphen_values = true, value_name = "POLYNOMIAL")]
    pub second: Option<String>,

    #[arg(long, value_enum)]
    pub mode: Option<Mode>,

    /// Residual tolerance for solve modes.
    #[arg(long, default_value = "1e-10")]
    pub tol: f64,

    #[arg(long, default_value_t = 10_000)]
    pub max_iter: usize,

    /// Target optimality gap for evt mode.
    #[arg(long, default_value = "1e-6")]
    pub epsilon: f64,

    /// Cell-evaluation budget for evt mode.
    #[arg(long, default_value_t = 1_000_000)]
    pub budget: u64,

    /// Include descent traces in the output.
    #[arg(long)]
    pub trace: bool,

    /// Lower-left corner `re,im` of the evt square.
    #[arg(long, allow_hyphen_values = true)]
    pub corner: Option<String>,

    /// Side length of the evt square.
    #[arg(long)]
    pub side: Option<f64>,

    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,

    /// RNG seed for check mode.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Read the polynomial from a file instead of the command line.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Input {
    Inline(String),
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    pub mode: Mode,
    pub tol: f64,
    pub max_iter: usize,
    pub epsilon: f64,
    pub budget: u64,
    pub trace: bool,
    pub region: Option<SquareRegion>,
    pub output_format: OutputFormat,
    pub seed: u64,
    pub input: Input,
}

impl Default for CliConfig {
    fn default() -> Self {
        CliConfig {
            mode: Mode::Solve,
            tol: 1e-10,
            max_iter: 10_000,
            epsilon: 1e-6,
            budget: 1_000_000,
            trace: false,
            region: None,
            output_format: OutputFormat::Json,
            seed: DEFAULT_SEED,
            input: Input::Inline(String::new()),
        }
    }
}

/// Printed output and process exit status.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub exit_code: i32,
}

fn parse_mode(text: &str) -> Option<Mode> {
    Mode::from_str(text, true).ok()
}

fn parse_corner(text: &str) -> Result<Complex, CliError> {
    let bad = || CliError::Usage(format!("--corner expects `re,im`, got `{text}`"));
    let (re, im) = text.split_once(',').ok_or_else(bad)?;
    let re: f64 = re.trim().parse().map_err(|_| bad())?;
    let im: f64 = im.trim().parse().map_err(|_| bad())?;
    Ok(Complex::new(re, im))
}

impl TryFrom<Args> for CliConfig {
    type Error = CliError;

    fn try_from(args: Args) -> Result<Self, Self::Error> {
        let mut positional: Vec<String> = args.first.into_iter().chain(args.second).collect();
        let mut mode = args.mode;
        let leading_mode = match positional.as_slice() {
            [first, _] => Some(parse_mode(first).ok_or_else(|| {
                CliError::Usage(format!("unknown mode `{first}`"))
            })?),
            [only] if args.input.is_some() => parse_mode(only),
            _ => None,
        };
        if let Some(m) = leading_mode {
            if mode.is_some_and(|given| given != m) {
                return Err(CliError::Usage("conflicting modes given".into()));
            }
            mode = Some(m);
            positional.remove(0);
        }
        let input = match (positional.pop(), args.input) {
            (Some(text), None) => Input::Inline(text),
            (None, Some(path)) => Input::File(path),
            (Some(_), Some(_)) => {
                return Err(CliError::Usage("give either an inline polynomial or --input, not both".into()))
            }
            (None, None) => return Err(CliError::Usage("no polynomial given".into())),
        };
        if !(args.tol > 0.0) {
            return Err(CliError::Usage("--tol must be positive".into()));
        }
        if !(args.epsilon > 0.0) {
            return Err(CliError::Usage("--epsilon must be positive".into()));
        }
        let region = match (args.corner, args.side) {
            (Some(c), Some(side)) => Some(SquareRegion::new(parse_corner(&c)?, side)?),
            (None, None) => None,
            _ => return Err(CliError::Usage("--corner and --side must be given together".into())),
        };
        Ok(CliConfig {
            mode: mode.unwrap_or(Mode::Solve),
            tol: args.tol,
            max_iter: args.max_iter,
            epsilon: args.epsilon,
            budget: args.budget,
            trace: args.trace,
            region,
            output_format: args.format,
            seed: args.seed,
            input,
        })
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn csv_unsupported(mode: Mode) -> CliError {
    CliError::Usage(format!("csv output is only available for solve and solve-all, not {mode:?}"))
}

/// Executes one command. Errors map to exit status 1 in [`main_with_args`].
pub fn run(config: &CliConfig) -> Result<Outcome, CliError> {
    let text = match &config.input {
        Input::Inline(text) => text.clone(),
        Input::File(path) => fs::read_to_string(path)
            .map_err(|source| CliError::Io { path: path.clone(), source })?,
    };
    let p = Polynomial::parse(&text)?;

    match config.mode {
        Mode::Solve => {
            let mut r = find_root(&p, config.tol, config.max_iter)?;
            let exit_code = if r.converged { EXIT_OK } else { EXIT_NOT_CONVERGED };
            let stdout = match config.output_format {
                OutputFormat::Csv => trace_csv(r.trace.as_deref().unwrap_or_default()),
                OutputFormat::Json => {
                    if !config.trace {
                        r.trace = None;
                    }
                    to_json(&r)
                }
            };
            Ok(Outcome { stdout, exit_code })
        }
        Mode::SolveAll => {
            let mut report = find_all_roots(&p, config.tol, config.max_iter)?;
            let all = report.roots.iter().all(|r| r.converged);
            let exit_code = if all { EXIT_OK } else { EXIT_NOT_CONVERGED };
            let stdout = match config.output_format {
                OutputFormat::Csv => {
                    let mut out = String::from("root,re,im,residual,iterations,converged\n");
                    for (k, r) in report.roots.iter().enumerate() {
                        out.push_str(&format!(
                            "{},{},{},{},{},{}\n",
                            k,
                            format_real(r.root.re),
                            format_real(r.root.im),
                            format_real(r.residual),
                            r.iterations,
                            r.converged
                        ));
                    }
                    out
                }
                OutputFormat::Json => {
                    if !config.trace {
                        report.roots.iter_mut().for_each(|r| r.trace = None);
                    }
                    to_json(&report)
                }
            };
            Ok(Outcome { stdout, exit_code })
        }
        Mode::Evt => {
            if config.output_format == OutputFormat::Csv {
                return Err(csv_unsupported(config.mode));
            }
            let region = config
                .region
                .ok_or_else(|| CliError::Usage("evt mode requires --corner re,im and --side s".into()))?;
            let m = certified_min(&p, &region, config.epsilon, config.budget)?;
            Ok(Outcome { stdout: to_json(&m), exit_code: EXIT_OK })
        }
        Mode::Bounds => {
            if config.output_format == OutputFormat::Csv {
                return Err(csv_unsupported(config.mode));
            }
            let cert = growth_certificate(&p)?;
            let square = minimum_enclosing_square(&p)?;
            let report = json!({ "enclosure": cert, "square": square });
            Ok(Outcome { stdout: to_json(&report), exit_code: EXIT_OK })
        }
        Mode::Check => {
            if config.output_format == OutputFormat::Csv {
                return Err(csv_unsupported(config.mode));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            let lemmas = replay_all(&p, &mut rng, CHECK_SAMPLES)?;
            let all_passed = lemmas.iter().all(|l| l.passed);
            let report = json!({
                "seed": config.seed,
                "samples": CHECK_SAMPLES,
                "all_passed": all_passed,
                "lemmas": lemmas,
            });
            let exit_code = if all_passed { EXIT_OK } else { EXIT_ERROR };
            Ok(Outcome { stdout: to_json(&report), exit_code })
        }
    }
}

/// Parses arguments, runs, and returns `(stdout, stderr, exit code)`.
pub fn main_with_args<I, T>(args: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            return if e.use_stderr() {
                (String::new(), e.to_string(), code)
            } else {
                (e.to_string(), String::new(), code)
            };
        }
    };
    match CliConfig::try_from(args).and_then(|c| run(&c)) {
        Ok(out) => (out.stdout, String::new(), out.exit_code),
        Err(e) => (String::new(), format!("error: {e}\n"), EXIT_ERROR),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> (String, String, i32) {
        main_with_args(std::iter::once("dalembert").chain(args.iter().copied()))
    }

    #[test]
    fn mode_as_positional_or_flag() {
        let (a, _, code_a) = cli(&["bounds", "1 1i 3"]);
        let (b, _, code_b) = cli(&["--mode", "bounds", "1 1i 3"]);
        assert_eq!((code_a, code_b), (0, 0));
        assert_eq!(a, b);
        let (_, err, code) = cli(&["--mode", "solve", "bounds", "1 1i 3"]);
        assert_eq!(code, 1);
        assert!(err.contains("conflicting"));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(cli(&[]).2, 1);
        assert_eq!(cli(&["frobnicate", "1 2"]).2, 1);
        assert_eq!(cli(&["--tol", "0", "1 2"]).2, 1);
        assert_eq!(cli(&["--mode", "evt", "1 2"]).2, 1);
        assert_eq!(cli(&["--mode", "evt", "--side", "1", "1 2"]).2, 1);
        assert_eq!(cli(&["--mode", "evt", "--corner", "0;0", "--side", "1", "1 2"]).2, 1);
        assert_eq!(cli(&["--mode", "bounds", "--format", "csv", "1 2"]).2, 1);
        assert_eq!(cli(&["--input", "/nonexistent/poly.txt"]).2, 1);
    }

    #[test]
    fn negative_leading_literal_is_a_polynomial() {
        let (out, _, code) = cli(&["-1 0 1"]);
        assert_eq!(code, 0, "{out}");
    }

    #[test]
    fn evt_mode_reports_certificate() {
        let (out, _, code) = cli(&[
            "--mode", "evt", "--corner", "-1,-1", "--side", "2", "--epsilon", "1e-6", "0 0 1",
        ]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(v["value"].as_f64().unwrap() <= 1e-6);
        assert!(v["gap"].as_f64().unwrap() <= 1e-6);
        assert_eq!(v["budget_exhausted"], false);
    }

    #[test]
    fn check_mode_is_deterministic() {
        let (a, _, code) = cli(&["check", "1 1i 3"]);
        assert_eq!(code, 0, "{a}");
        let (b, _, _) = cli(&["check", "1 1i 3"]);
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["all_passed"], true);
        assert_eq!(v["seed"], DEFAULT_SEED);
        let (c, _, _) = cli(&["check", "--seed", "9", "1 1i 3"]);
        assert_ne!(a, c);
    }
}
