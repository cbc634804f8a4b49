use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use qcanon::error::Error;
use qcanon::typea::DimVector;
use qcanon_cli::config::{Command, ConfigError, Emit, Format, RunConfig, DEFAULT_MAX_SUMMANDS};
use qcanon_cli::render::render;
use qcanon_cli::report::build_report;
use qcanon_cli::selftest::{parse_fixtures, run_fixtures, BUILTIN};
use qcanon_cli::with_workers;

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

/// Canonical bases of type A quantum groups and affine Hecke algebra
/// multiplicities, in exact arithmetic.
#[derive(Parser)]
#[command(name = "qcanon", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Psi, its LDLT factors and the split L = QP for one weight.
    Canbase(RunArgs),
    /// Standard module multiplicities, H, F and simple module dimensions.
    Hecke(RunArgs),
    /// Compare the pipeline against reference fixtures.
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Dimension vector, e.g. 1,2,1.
    #[arg(long)]
    dimvec: DimVector,
    /// Comma-separated artifacts: kp, orbits, patterns, psi, l, d, p, q,
    /// multiplicities, h, f, dims, intersections.
    #[arg(long, value_delimiter = ',')]
    emit: Option<Vec<Emit>>,
    #[arg(long, default_value = "json")]
    format: Format,
    #[command(flatten)]
    workers: WorkerArgs,
    /// Largest Weyl group a single fold may enumerate.
    #[arg(long, default_value_t = DEFAULT_MAX_SUMMANDS)]
    max_summands: u128,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WorkerArgs {
    /// Worker threads; 0 picks one per core.
    #[arg(long, env = "QCANON_WORKERS")]
    workers: Option<usize>,
}

#[derive(Args)]
struct SelftestArgs {
    /// Print fixture names and exit.
    #[arg(long)]
    list: bool,
    /// JSON fixture file to use instead of the built-in set.
    #[arg(long)]
    fixtures: Option<PathBuf>,
    #[command(flatten)]
    workers: WorkerArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Sub::Canbase(args) => run(Command::Canbase, args),
        Sub::Hecke(args) => run(Command::Hecke, args),
        Sub::Selftest(args) => selftest(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = if e.downcast_ref::<ConfigError>().is_some() {
                EXIT_USAGE
            } else if matches!(e.downcast_ref::<Error>(), Some(Error::ResourceLimit { .. })) {
                EXIT_RESOURCE
            } else {
                EXIT_FAILURE
            };
            ExitCode::from(code)
        }
    }
}

fn run(command: Command, args: RunArgs) -> anyhow::Result<ExitCode> {
    let mut cfg = RunConfig::new(command, args.dimvec, args.emit, args.format)?;
    cfg.workers = args.workers.workers;
    cfg.max_summands = args.max_summands;
    let report = with_workers(cfg.workers, || build_report(&cfg))??;
    let text = render(&report, cfg.format);
    match &args.out {
        Some(path) => fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?,
        None => write_stdout(&text)?,
    }
    for d in &report.diagnostics {
        eprintln!("{d}");
    }
    Ok(if report.has_errors() {
        ExitCode::from(EXIT_FAILURE)
    } else {
        ExitCode::SUCCESS
    })
}

fn selftest(args: SelftestArgs) -> anyhow::Result<ExitCode> {
    let text = match &args.fixtures {
        Some(path) => fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?,
        None => BUILTIN.to_string(),
    };
    let fixtures = parse_fixtures(&text).context("parsing fixtures")?;
    if args.list {
        let names: String = fixtures.iter().map(|f| format!("{}\n", f.name)).collect();
        write_stdout(&names)?;
        return Ok(ExitCode::SUCCESS);
    }
    let results = with_workers(args.workers.workers, || run_fixtures(&fixtures))?;
    let failed = results.iter().filter(|r| !r.passed()).count();
    let mut out: String = results.iter().map(|r| format!("{r}\n")).collect();
    out.push_str(&format!("{} passed, {failed} failed\n", results.len() - failed));
    write_stdout(&out)?;
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILURE)
    })
}

/// A reader that closes the pipe early is not an error.
fn write_stdout(text: &str) -> std::io::Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => r,
    }
}
