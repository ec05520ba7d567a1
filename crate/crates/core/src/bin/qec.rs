//! Command-line front end: construct codes, inspect them, and run
//! logical-error-rate sweeps.
//!
//! Exit status is 0 on success, 1 on configuration or validation errors and
//! 2 when a resource guard refuses the request.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qec_core::channels::ChannelKind;
use qec_core::decode::{DecoderKind, DecoderOptions, DEFAULT_MAX_ITER, DEFAULT_MIN_SUM_NORM};
use qec_core::harness::{run_sweep_on, CodeSpec, ExperimentConfig};
use qec_core::stabilizer::{
    errors_up_to_weight, kl_check, min_distance_with_budget, write_qchk, StabilizerCode,
    DEFAULT_SEARCH_BUDGET,
};
use qec_core::Error;

#[derive(Parser, Debug)]
#[command(name = "qec", version, about = "Stabilizer code construction and decoding experiments")]
struct Cli {
    /// Master seed for Monte Carlo trials.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Trials per noise strength.
    #[arg(long, global = true, default_value_t = 10_000)]
    trials: u64,

    /// Worker threads (defaults to the available parallelism).
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct CodeArg {
    /// Code spec, e.g. steane, surface:5, hgp-rep:3,3, concat:phaseflip:3+bitflip:3, or a .qchk file.
    #[arg(long)]
    code: String,
}

impl CodeArg {
    fn build(&self) -> Result<StabilizerCode, Error> {
        self.code.parse::<CodeSpec>()?.build()
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the check matrix in QCHK v1 format.
    Construct {
        #[command(flatten)]
        code: CodeArg,
        /// Output path (standard output when omitted).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print n, k, generator count and the generator weight histogram.
    Params {
        #[command(flatten)]
        code: CodeArg,
    },
    /// Print the paired logical operators.
    Logicals {
        #[command(flatten)]
        code: CodeArg,
    },
    /// Brute-force minimum distance up to a weight cap.
    Distance {
        #[command(flatten)]
        code: CodeArg,
        #[arg(long)]
        max_weight: usize,
        /// Cap on candidate evaluations.
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u128,
    },
    /// Dense Knill-Laflamme check against all errors of weight <= t.
    Klcheck {
        #[command(flatten)]
        code: CodeArg,
        #[arg(long)]
        t: usize,
    },
    /// Logical error rate sweep written as CSV.
    Simulate {
        #[command(flatten)]
        code: CodeArg,
        /// depolarizing, bitflip or dephasing.
        #[arg(long)]
        channel: String,
        /// Comma-separated noise strengths.
        #[arg(long)]
        eps: String,
        /// mlcoset, mlerror, bp or minsum.
        #[arg(long)]
        decoder: String,
        #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
        max_iter: usize,
        /// Min-sum normalization factor.
        #[arg(long, default_value_t = DEFAULT_MIN_SUM_NORM)]
        norm: f64,
        /// Output path (standard output when omitted).
        #[arg(long)]
        output: Option<PathBuf>,
        /// Record wall time in the `seconds` column (otherwise written as 0).
        #[arg(long)]
        timing: bool,
    },
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), Error> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => match io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(Error::Io(format!("stdout: {e}"))),
            _ => Ok(()),
        },
    }
}

fn parse_eps(list: &str) -> Result<Vec<f64>, Error> {
    list.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidParameter(format!("bad noise strength {s:?}")))
        })
        .collect()
}

fn run(cli: Cli) -> Result<(), Error> {
    let workers = cli
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    match cli.command {
        Command::Construct { code, output } => emit(&write_qchk(code.build()?.check()), output.as_ref()),
        Command::Params { code } => {
            let c = code.build()?;
            let hist: Vec<String> = c
                .weight_histogram()
                .iter()
                .enumerate()
                .filter(|(_, &count)| count > 0)
                .map(|(w, count)| format!("{w}:{count}"))
                .collect();
            let text = format!(
                "n={}\nk={}\nr={}\nrank={}\ncss={}\nweights={}\n",
                c.n(),
                c.k(),
                c.r(),
                c.rank(),
                c.is_css(),
                hist.join(" ")
            );
            emit(&text, None)
        }
        Command::Logicals { code } => {
            let c = code.build()?;
            let mut text = String::new();
            for (j, pair) in c.logicals().iter().enumerate() {
                let _ = writeln!(text, "X{}: {}\nZ{}: {}", j + 1, pair.x, j + 1, pair.z);
            }
            emit(&text, None)
        }
        Command::Distance {
            code,
            max_weight,
            budget,
        } => {
            let c = code.build()?;
            let cap = max_weight.min(c.n());
            let text = match min_distance_with_budget(&c, cap, budget)? {
                Some(d) => format!("d={d}\n"),
                None => format!("d>{cap}\n"),
            };
            emit(&text, None)
        }
        Command::Klcheck { code, t } => {
            let c = code.build()?;
            let errors = errors_up_to_weight(c.n(), t);
            let report = kl_check(&c, &errors)?;
            let text = match report.witness {
                None => format!("pass errors={} code_dim={}\n", errors.len(), report.code_dim),
                Some((i, j)) => format!(
                    "fail errors={} code_dim={} witness=({}, {})\n",
                    errors.len(),
                    report.code_dim,
                    errors[i],
                    errors[j]
                ),
            };
            emit(&text, None)
        }
        Command::Simulate {
            code,
            channel,
            eps,
            decoder,
            max_iter,
            norm,
            output,
            timing,
        } => {
            let cfg = ExperimentConfig {
                code: code.code.parse()?,
                channel: channel.parse::<ChannelKind>()?,
                eps: parse_eps(&eps)?,
                decoder: decoder.parse::<DecoderKind>()?,
                options: DecoderOptions { max_iter, norm },
                trials: cli.trials,
                seed: cli.seed,
                workers,
            };
            cfg.validate()?;
            let built = cfg.code.build()?;
            let result = run_sweep_on(&built, &cfg)?;
            emit(&result.to_csv(timing), output.as_ref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            eprintln!("{}", msg.lines().next().unwrap_or("invalid arguments"));
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::ResourceGuard { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
