use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mapspace_cli::commands::{self, CliError, Input, Options, Outcome, Selection};
use mapspace_cli::report::{Body, Report};
use mapspace_cli::selftest;
use mapspace_core::{parse_rational, Q};

#[derive(Parser)]
#[command(name = "mapspace", version, about = "Rational models of mapping spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Working degree cap (defaults to the file's `cap`, else 2 x max degree + 2).
    #[arg(long, global = true)]
    cap: Option<i32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Scale factor applied to Lie differentials and attaching maps.
    #[arg(long, global = true, value_parser = rational, default_value = "1")]
    q: Q,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Exit with status 1 when a splitting hypothesis fails.
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of every block and attaching map in a model file.
    Analyze { file: PathBuf },
    /// Based and minimal models of F_*(X, Y).
    MapModel {
        file: PathBuf,
        #[command(flatten)]
        pick: Pick,
        /// Print only the minimal model.
        #[arg(long)]
        minimal: bool,
    },
    /// Decide whether attaching a cell splits the mapping-space fibration.
    SplitCheck {
        file: PathBuf,
        #[arg(long)]
        attach: Option<String>,
        #[arg(long)]
        y: Option<String>,
    },
    /// Split F_*(X, Y) cell by cell into a product of iterated loop spaces.
    Decompose {
        file: PathBuf,
        #[command(flatten)]
        pick: Pick,
    },
    /// Run the built-in property suites.
    Selftest {
        #[arg(long, default_value_t = 20240601)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

#[derive(Args)]
struct Pick {
    /// Lie block for the source.
    #[arg(long)]
    x: Option<String>,
    /// Sullivan block for the target.
    #[arg(long)]
    y: Option<String>,
}

fn rational(s: &str) -> Result<Q, String> {
    parse_rational(s).ok_or_else(|| format!("not a rational number: {s}"))
}

fn read(path: &Path, opts: &Options) -> Result<Input, CliError> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    Input::parse(&src, opts)
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let mut opts = Options { cap: cli.cap, q: cli.q.clone(), minimal: false };
    match &cli.command {
        Command::Analyze { file } => commands::analyze(&read(file, &opts)?, &opts),
        Command::MapModel { file, pick, minimal } => {
            opts.minimal = *minimal;
            let sel = Selection { x: pick.x.clone(), y: pick.y.clone(), attach: None };
            commands::map_model(&read(file, &opts)?, &sel, &opts)
        }
        Command::SplitCheck { file, attach, y } => {
            let sel = Selection { x: None, y: y.clone(), attach: attach.clone() };
            commands::split_check(&read(file, &opts)?, &sel, &opts)
        }
        Command::Decompose { file, pick } => {
            let sel = Selection { x: pick.x.clone(), y: pick.y.clone(), attach: None };
            commands::decompose_cmd(&read(file, &opts)?, &sel, &opts)
        }
        Command::Selftest { seed, count } => {
            let s = selftest::run(*seed, *count);
            Ok(Outcome { report: Report::new(cli.cap.unwrap_or(0), Body::Selftest(s)), hypothesis_failed: false })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let text = match cli.format {
        Format::Text => outcome.report.to_text(),
        Format::Json => outcome.report.to_json(),
    };
    match &cli.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &text) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if let Body::Selftest(s) = &outcome.report.body {
        if s.failed > 0 {
            return ExitCode::from(3);
        }
    }
    if cli.strict && outcome.hypothesis_failed {
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
