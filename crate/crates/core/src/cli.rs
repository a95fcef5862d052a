//! The `helmert` command line.
//!
//! Exit codes: 0 pass, 1 verification or certification failure, 2 usage or
//! configuration error.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::helmert::{verify_orthogonality_exact, HelmertOrder};
use crate::report::{
    certification_line, matrix_csv, matrix_decimal_text, matrix_symbolic_text, theorem_text,
    CertificationPayload, ControlSummary, ControlsPayload, MatrixPayload, ReportDocument,
    TransformPayload,
};
use crate::sampling::{NormalParams, Seed};
use crate::verifier::{
    run_negative_controls, run_with, ClaimId, RunOptions, VerificationConfig, DEFAULT_ALPHA,
    DEFAULT_BINS, DEFAULT_N, DEFAULT_SEED, DEFAULT_TRIALS,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "helmert",
    version,
    about = "Helmert matrices and Monte Carlo checks of Student's theorem"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixFormat {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the order-n Helmert matrix O_n.
    Matrix {
        n: usize,
        #[arg(long, value_enum, default_value_t = MatrixFormat::Text)]
        format: MatrixFormat,
        /// Print entries as c/√r (text format only).
        #[arg(long)]
        symbolic: bool,
    },
    /// Certify O_n O_nᵀ = I with integer arithmetic, for one order or an inclusive range "a..b".
    CheckExact {
        orders: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Compute y = O_n z matrix-free, with √n·z̄ and W.
    Transform {
        n: usize,
        #[arg(allow_negative_numbers = true)]
        values: Vec<f64>,
        /// Read z from a file of newline-delimited decimals instead.
        #[arg(long, conflicts_with = "values")]
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Monte Carlo verification of Student's theorem.
    Verify(VerifyArgs),
}

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = DEFAULT_N)]
    pub n: usize,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    pub trials: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    pub alpha: f64,
    #[arg(long, default_value_t = DEFAULT_BINS)]
    pub bins: usize,
    /// Mean for the general-normal checks; enables T1.1 and T1.3.
    #[arg(long, allow_negative_numbers = true)]
    pub mu: Option<f64>,
    /// Standard deviation for the general-normal checks.
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Comma-separated subset of T2.1,T2.2,T2.3,T1.1,T1.3,coords,exact.
    #[arg(long, value_delimiter = ',')]
    pub claims: Option<Vec<String>>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Cap on worker threads; results do not depend on it.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Run the falsification suite; exits 0 iff every control fails exactly its target claim.
    #[arg(long)]
    pub negative_controls: bool,
}

/// Parses `"7"` or an inclusive range `"2..512"`.
pub fn parse_orders(s: &str) -> Result<Vec<HelmertOrder>> {
    let parse = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| Error::Usage(format!("invalid order '{t}'")))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let n = parse(s)?;
            (n, n)
        }
    };
    if lo > hi {
        return Err(Error::Usage(format!("empty order range {s}")));
    }
    (lo..=hi).map(HelmertOrder::new).collect()
}

/// Reads newline-delimited decimals, skipping blank lines.
pub fn read_vector(path: &PathBuf) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Usage(format!("{}: {e}", path.display())))?;
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.parse::<f64>()
                .map_err(|_| Error::Usage(format!("invalid number '{l}'")))
        })
        .collect()
}

impl VerifyArgs {
    pub fn config(&self) -> Result<VerificationConfig> {
        let mut cfg = VerificationConfig {
            n: self.n,
            trials: self.trials,
            seed: Seed(self.seed),
            alpha: self.alpha,
            bins: self.bins,
            params: None,
        };
        if self.mu.is_some() || self.sigma.is_some() {
            cfg.params = Some(NormalParams::new(
                self.mu.unwrap_or(0.0),
                self.sigma.unwrap_or(1.0),
            )?);
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn claims(&self) -> Result<Option<Vec<ClaimId>>> {
        self.claims
            .as_ref()
            .map(|list| list.iter().map(|c| c.parse()).collect())
            .transpose()
    }
}

/// Runs the CLI on `args` (including the program name), writing to `out` and `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Usage(format!("write failed: {e}"))
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Matrix {
            n,
            format,
            symbolic,
        } => {
            let order = HelmertOrder::new(n)?;
            let text = match format {
                MatrixFormat::Text if symbolic => matrix_symbolic_text(order),
                MatrixFormat::Text => matrix_decimal_text(&order.build_dense()),
                MatrixFormat::Csv => matrix_csv(&order.build_dense()),
                MatrixFormat::Json => {
                    ReportDocument::new("matrix", MatrixPayload::of(&order.build_dense())).to_json()
                        + "\n"
                }
            };
            out.write_all(text.as_bytes()).map_err(io)?;
            Ok(EXIT_PASS)
        }
        Command::CheckExact { orders, format } => {
            let start = Instant::now();
            let orders = parse_orders(&orders)?;
            let results = orders
                .into_iter()
                .map(verify_orthogonality_exact)
                .collect::<Result<Vec<_>>>()?;
            let overall_pass = results.iter().all(|c| c.passed());
            match format {
                OutputFormat::Text => {
                    for c in &results {
                        writeln!(out, "{}", certification_line(c)).map_err(io)?;
                    }
                }
                OutputFormat::Json => {
                    let payload = CertificationPayload {
                        results,
                        overall_pass,
                        duration_ms: start.elapsed().as_millis() as u64,
                    };
                    writeln!(
                        out,
                        "{}",
                        ReportDocument::new("check-exact", payload).to_json()
                    )
                    .map_err(io)?;
                }
            }
            Ok(if overall_pass { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Transform {
            n,
            values,
            file,
            format,
        } => {
            let order = HelmertOrder::new(n)?;
            let z = match file {
                Some(path) => read_vector(&path)?,
                None => values,
            };
            let y = order.apply(&z)?;
            let w: f64 = y[..n - 1].iter().map(|v| v * v).sum();
            let payload = TransformPayload {
                n,
                scaled_mean: y[n - 1],
                w,
                z,
                y,
            };
            match format {
                OutputFormat::Text => {
                    let ys: Vec<String> = payload.y.iter().map(|v| v.to_string()).collect();
                    writeln!(out, "y = ({})", ys.join(", ")).map_err(io)?;
                    writeln!(out, "sqrt(n)*mean(z) = y_n = {}", payload.scaled_mean).map_err(io)?;
                    writeln!(out, "W = {}", payload.w).map_err(io)?;
                }
                OutputFormat::Json => {
                    writeln!(
                        out,
                        "{}",
                        ReportDocument::new("transform", payload).to_json()
                    )
                    .map_err(io)?;
                }
            }
            Ok(EXIT_PASS)
        }
        Command::Verify(args) => {
            let cfg = args.config()?;
            let opts = RunOptions {
                claims: args.claims()?,
                control: None,
            };
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(args.workers.unwrap_or(0))
                .build()
                .map_err(|e| Error::Usage(format!("cannot start worker pool: {e}")))?;
            if args.negative_controls {
                let start = Instant::now();
                let outcomes = pool.install(|| run_negative_controls(&cfg))?;
                let overall_pass = outcomes.iter().all(|o| o.detected);
                match args.format {
                    OutputFormat::Text => {
                        for o in &outcomes {
                            writeln!(
                                out,
                                "{:?}: target {} {}; collateral failures {:?} => {}",
                                o.control,
                                o.target,
                                if o.target_failed { "failed" } else { "passed" },
                                o.collateral_failures
                                    .iter()
                                    .map(|c| c.as_str())
                                    .collect::<Vec<_>>(),
                                if o.detected {
                                    "detected"
                                } else {
                                    "NOT detected"
                                }
                            )
                            .map_err(io)?;
                        }
                        writeln!(
                            out,
                            "overall: {}",
                            if overall_pass { "PASS" } else { "FAIL" }
                        )
                        .map_err(io)?;
                    }
                    OutputFormat::Json => {
                        let payload = ControlsPayload {
                            config: cfg,
                            controls: outcomes.iter().map(ControlSummary::from).collect(),
                            overall_pass,
                            duration_ms: start.elapsed().as_millis() as u64,
                        };
                        writeln!(
                            out,
                            "{}",
                            ReportDocument::new("verify --negative-controls", payload).to_json()
                        )
                        .map_err(io)?;
                    }
                }
                return Ok(if overall_pass { EXIT_PASS } else { EXIT_FAIL });
            }
            let report = pool.install(|| run_with(&cfg, &opts))?;
            match args.format {
                OutputFormat::Text => out
                    .write_all(theorem_text(&report).as_bytes())
                    .map_err(io)?,
                OutputFormat::Json => {
                    writeln!(out, "{}", ReportDocument::new("verify", &report).to_json())
                        .map_err(io)?
                }
            }
            Ok(if report.overall_pass {
                EXIT_PASS
            } else {
                EXIT_FAIL
            })
        }
    }
}

pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
