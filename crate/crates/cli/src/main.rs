//! `binsum`: sequence dumps, verification suites, recurrence fitting,
//! certificate checks and the multiplier explorer.
//!
//! Exit status: 0 when every asserted claim passes, 1 on a claim failure,
//! 2 on usage or configuration errors, 3 on an internal inconsistency.

mod config;

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use binsum_core::recurrence::FitOptions;
use binsum_core::sequences::dump_line;
use binsum_core::verify::report::{to_human, to_structured, to_tabular};
use binsum_core::verify::{run_suite_with, VerificationReport};
use binsum_core::{fit_recurrence, Error, SequenceBank, SequenceId};
use clap::{Args, Parser, Subcommand, ValueEnum};

use config::{Overrides, RunConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Structured,
    Tabular,
    Human,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Format as ValueEnum>::from_str(s, true)
    }
}

#[derive(Parser)]
#[command(name = "binsum", version, about = "Exact checks for binomial double sums")]
struct Cli {
    /// `key = value` configuration file.
    #[arg(long, global = true, env = "BINSUM_CONFIG")]
    config: Option<PathBuf>,
    #[arg(long, global = true, env = "BINSUM_FORMAT")]
    format: Option<Format>,
    /// Write output here instead of standard output.
    #[arg(long, global = true, env = "BINSUM_OUTPUT")]
    output: Option<PathBuf>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, env = "BINSUM_WORKERS")]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print `id, n, value` for 0 <= n <= max.
    Seq {
        /// Sequence id, e.g. `S`, `s`, `S_plus`, `S_r(3)`, `prefix(S)`, `constant:5`.
        id: String,
        #[arg(long, default_value_t = 10)]
        max: u64,
    },
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Guess a recurrence from a window of terms.
    Fit(FitArgs),
    /// Check the six combination certificates.
    Certificates(BoundArgs),
    /// Minimal multipliers against the conjectured table.
    Multipliers(BoundArgs),
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long, env = "BINSUM_N_MAX")]
    n_max: Option<u64>,
    /// Record wall time per report.
    #[arg(long, env = "BINSUM_TIMINGS")]
    timings: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite to run; repeatable.
    #[arg(long = "suite", env = "BINSUM_SUITES", value_delimiter = ',',
          value_parser = clap::builder::PossibleValuesParser::new(binsum_core::verify::SUITES))]
    suites: Vec<String>,
    #[arg(long, env = "BINSUM_N_MAX")]
    n_max: Option<u64>,
    #[arg(long, env = "BINSUM_PRIME_MAX")]
    prime_max: Option<u64>,
    /// Let conjecture findings fail the run.
    #[arg(long, env = "BINSUM_STRICT_CONJECTURES")]
    strict_conjectures: bool,
    /// Record wall time per report.
    #[arg(long, env = "BINSUM_TIMINGS")]
    timings: bool,
}

#[derive(Args)]
struct FitArgs {
    #[arg(long = "seq")]
    id: String,
    #[arg(long)]
    order: usize,
    #[arg(long)]
    degree: usize,
    /// Fitting window `a:b`, inclusive.
    #[arg(long)]
    window: String,
    /// Holdout length (default: the larger of 20 and the window length).
    #[arg(long)]
    holdout: Option<u64>,
    /// Shuffle equation rows with this seed before elimination.
    #[arg(long)]
    shuffle_seed: Option<u64>,
}

enum Failure {
    Usage(String),
    Claims,
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Claims) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("binsum: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("binsum: {m}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mut overrides = Overrides {
        format: cli.format,
        output: cli.output.clone(),
        workers: cli.workers,
        ..Default::default()
    };
    match &cli.command {
        Command::Verify(v) => {
            overrides.suites = v.suites.clone();
            overrides.n_max = v.n_max;
            overrides.prime_max = v.prime_max;
            overrides.strict_conjectures = v.strict_conjectures.then_some(true);
            overrides.timings = v.timings.then_some(true);
        }
        Command::Certificates(b) | Command::Multipliers(b) => {
            overrides.n_max = b.n_max;
            overrides.timings = b.timings.then_some(true);
        }
        _ => {}
    }
    let cfg = config::resolve(overrides, cli.config.as_deref()).map_err(Failure::Usage)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Failure::Internal(format!("worker pool: {e}")))?;
    let (text, failed) = pool.install(|| execute(&cli.command, &cfg))?;
    match &cfg.output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    if failed {
        Err(Failure::Claims)
    } else {
        Ok(())
    }
}

fn suite_config(cfg: &RunConfig) -> binsum_core::SuiteConfig {
    binsum_core::SuiteConfig {
        n_max: cfg.n_max,
        prime_max: cfg.prime_max,
        timings: cfg.timings,
    }
}

fn render(reports: &[VerificationReport], format: Format) -> String {
    match format {
        Format::Structured => to_structured(reports),
        Format::Tabular => to_tabular(reports),
        Format::Human => to_human(reports),
    }
}

fn any_failed(reports: &[VerificationReport], strict: bool) -> bool {
    reports
        .iter()
        .any(|r| !r.passed() && (strict || !r.kind.is_finding()))
}

fn execute(command: &Command, cfg: &RunConfig) -> Result<(String, bool), Failure> {
    let bank = SequenceBank::shared();
    match command {
        Command::Seq { id, max } => {
            let id: SequenceId = id.parse()?;
            let first = id.first_index();
            if first <= *max {
                bank.prefill(&id, *max)?;
            }
            let values = (first..=*max)
                .map(|n| bank.eval(&id, n).map(|v| (n, v)))
                .collect::<Result<Vec<_>, _>>()?;
            let mut out = String::new();
            match cfg.format {
                Format::Human => {
                    for (n, v) in &values {
                        let _ = writeln!(out, "{}", dump_line(&id, *n, v));
                    }
                }
                Format::Tabular => {
                    out.push_str("# binsum-seq-table v1\nid\tn\tvalue\n");
                    for (n, v) in &values {
                        let _ = writeln!(out, "{id}\t{n}\t{v}");
                    }
                }
                Format::Structured => {
                    let doc = serde_json::json!({
                        "format": "binsum-seq",
                        "version": 1,
                        "sequence": id.to_string(),
                        "values": values.iter().map(|(n, v)| serde_json::json!({"n": n, "value": v.to_string()})).collect::<Vec<_>>(),
                    });
                    out = serde_json::to_string_pretty(&doc).expect("json") + "\n";
                }
            }
            Ok((out, false))
        }
        Command::Verify(_) => {
            let reports = run_suite_with(&bank, &cfg.suites, &suite_config(cfg))?;
            Ok((render(&reports, cfg.format), any_failed(&reports, cfg.strict_conjectures)))
        }
        Command::Certificates(_) => {
            let reports = run_suite_with(&bank, &["certificates"], &suite_config(cfg))?;
            Ok((render(&reports, cfg.format), any_failed(&reports, false)))
        }
        Command::Multipliers(_) => {
            let reports = run_suite_with(&bank, &["multipliers"], &suite_config(cfg))?;
            let text = match cfg.format {
                Format::Human => multiplier_table(&reports),
                f => render(&reports, f),
            };
            Ok((text, any_failed(&reports, cfg.strict_conjectures)))
        }
        Command::Fit(f) => fit(f, &bank, cfg.format),
    }
}

fn multiplier_table(reports: &[VerificationReport]) -> String {
    let mut out = String::from("name  conjectured  observed  status\n");
    for r in reports {
        let name = r.claim.trim_start_matches("multiplier-");
        let status = match (r.passed(), r.details.get("equal").map(String::as_str)) {
            (false, _) => "FAIL: conjectured value is not a multiple",
            (true, Some("true")) => "equal",
            (true, _) => "warning: observed value is a proper divisor",
        };
        let _ = writeln!(
            out,
            "{name:<5} {:>11}  {:>8}  {status}",
            r.details.get("conjectured").map_or("?", String::as_str),
            r.details.get("observed").map_or("?", String::as_str),
        );
    }
    let n_max = reports.first().map_or(0, |r| r.last);
    let _ = writeln!(out, "(n <= {n_max})");
    out
}

fn parse_window(w: &str) -> Result<(u64, u64), Failure> {
    let bad = || Failure::Usage(format!("window `{w}` must look like a:b"));
    let (a, b) = w.split_once(':').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn fit(args: &FitArgs, bank: &std::sync::Arc<SequenceBank>, format: Format) -> Result<(String, bool), Failure> {
    let id: SequenceId = args.id.parse()?;
    let (first, last) = parse_window(&args.window)?;
    let window_len = (last + 1).saturating_sub(first);
    let mut opts = FitOptions::new(args.order, args.degree, first, last)
        .with_holdout(args.holdout.unwrap_or(window_len.max(binsum_core::recurrence::DEFAULT_HOLDOUT)));
    opts.row_shuffle_seed = args.shuffle_seed;
    let handle = bank.handle(id.clone())?;
    handle.prefill(last + opts.holdout + args.order as u64)?;
    let op = fit_recurrence(&handle, &opts)?;
    let (lo, hi) = opts.holdout_range();
    let text = match (format, &op) {
        (Format::Human, Some(op)) => format!("{op}\nholdout {lo}:{hi} pass\n"),
        (Format::Human, None) => "none\n".to_string(),
        (Format::Tabular, _) => format!(
            "# binsum-fit-table v1\nsequence\torder\tdegree\twindow\tholdout\toperator\n{id}\t{}\t{}\t{first}:{last}\t{lo}:{hi}\t{}\n",
            args.order,
            args.degree,
            op.as_ref().map_or("none".to_string(), |o| o.to_string())
        ),
        (Format::Structured, _) => {
            let doc = serde_json::json!({
                "format": "binsum-fit",
                "version": 1,
                "sequence": id.to_string(),
                "order": args.order,
                "degree": args.degree,
                "window": [first, last],
                "holdout": [lo, hi],
                "operator": op.as_ref().map(|o| o.to_string()),
            });
            serde_json::to_string_pretty(&doc).expect("json") + "\n"
        }
    };
    Ok((text, false))
}
