//! The `toroidal` command-line tool.
//!
//! `toroidal run --input problem.json` executes every task of a problem file
//! and prints a JSON certificate. Each command is also available directly,
//! e.g. `toroidal base-change --input problem.json --arg theta=theta --arg phi=phi`,
//! which runs that single command against the objects of the file.
//!
//! Exit codes: 0 success, 1 a task failed, 2 the input could not be parsed
//! or validated, 3 an internal invariant was violated.

pub mod format;
pub mod run;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

pub use format::ProblemFile;
pub use run::{parse, render_text, run, serialize, ParseError, ParseErrorKind, Problem, RunOutcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_TASK_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "toroidal", version, about = "Cones, fs monoids, toric charts and saturated base change")]
struct Cli {
    /// Not accepted: every computation is deterministic.
    #[arg(long, global = true, hide = true)]
    seed: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Args, Debug)]
struct IoArgs {
    /// Problem file; `-` reads standard input.
    #[arg(long, short, default_value = "-")]
    input: String,

    /// Write the certificate here instead of standard output.
    #[arg(long, short)]
    output: Option<String>,

    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

#[derive(Args, Debug)]
struct VerbArgs {
    #[command(flatten)]
    io: IoArgs,

    /// Task argument `KEY=VALUE`; VALUE names an object or is inline JSON.
    #[arg(long = "arg", value_name = "KEY=VALUE")]
    args: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every task of a problem file.
    Run(IoArgs),
    /// Dual cone (`cone`).
    Dual(VerbArgs),
    /// Hilbert basis of a strongly convex cone (`cone`).
    Hilbert(VerbArgs),
    /// Minimal generators of the toric boundary ideal (`chart`).
    BoundaryIdeal(VerbArgs),
    /// Faces of a cone (`cone`).
    Faces(VerbArgs),
    /// Orbit data of a face (`chart`, optional `face`).
    Orbit(VerbArgs),
    /// Split off the torus factor (`chart`).
    Split(VerbArgs),
    /// Log smoothness of a monoid chart (`chart`).
    CheckLogSmooth(VerbArgs),
    /// Log étaleness of a monoid chart (`chart`).
    CheckLogEtale(VerbArgs),
    /// Strictness of a monoid chart (`chart`).
    CheckStrict(VerbArgs),
    /// Relative dimension of a dominant monoid chart (`chart`).
    FibreDim(VerbArgs),
    /// Saturated base change (`theta`, `phi`).
    BaseChange(VerbArgs),
    /// Check a base-change result (`result`, `theta`).
    Verify(VerbArgs),
    /// Compare against the brute-force oracle (`cone`, `chart` or `monoid`; optional `box`).
    Oracle(VerbArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Run(_) => "run",
            Command::Dual(_) => "dual",
            Command::Hilbert(_) => "hilbert",
            Command::BoundaryIdeal(_) => "boundary-ideal",
            Command::Faces(_) => "faces",
            Command::Orbit(_) => "orbit",
            Command::Split(_) => "split",
            Command::CheckLogSmooth(_) => "check-log-smooth",
            Command::CheckLogEtale(_) => "check-log-etale",
            Command::CheckStrict(_) => "check-strict",
            Command::FibreDim(_) => "fibre-dim",
            Command::BaseChange(_) => "base-change",
            Command::Verify(_) => "verify",
            Command::Oracle(_) => "oracle",
        }
    }
}

fn read_input(path: &str) -> io::Result<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path)
    }
}

fn parse_task_args(args: &[String]) -> Result<std::collections::BTreeMap<String, Value>, String> {
    let mut out = std::collections::BTreeMap::new();
    for a in args {
        let (k, v) = a.split_once('=').ok_or_else(|| format!("--arg `{a}` is not KEY=VALUE"))?;
        let value = if v.starts_with('[') || v.starts_with('{') {
            serde_json::from_str(v).map_err(|e| format!("--arg {k}: {e}"))?
        } else {
            Value::String(v.to_string())
        };
        out.insert(k.to_string(), value);
    }
    Ok(out)
}

/// Runs the tool on `args` (including the program name) and returns the exit
/// code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
        }
    };
    if cli.seed.is_some() {
        eprintln!("error: --seed is not accepted; all computations are deterministic");
        return EXIT_PARSE;
    }
    let name = cli.command.name();
    let (io_args, task_args) = match &cli.command {
        Command::Run(io) => (io, None),
        Command::Dual(v)
        | Command::Hilbert(v)
        | Command::BoundaryIdeal(v)
        | Command::Faces(v)
        | Command::Orbit(v)
        | Command::Split(v)
        | Command::CheckLogSmooth(v)
        | Command::CheckLogEtale(v)
        | Command::CheckStrict(v)
        | Command::FibreDim(v)
        | Command::BaseChange(v)
        | Command::Verify(v)
        | Command::Oracle(v) => (&v.io, Some(&v.args)),
    };

    let text = match read_input(&io_args.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {e}", io_args.input);
            return EXIT_PARSE;
        }
    };
    let problem = match parse(&text) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {}:{e}", io_args.input);
            return EXIT_PARSE;
        }
    };
    let outcome = match task_args {
        None => run(&problem),
        Some(args) => {
            let arguments = match parse_task_args(args) {
                Ok(a) => a,
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_PARSE;
                }
            };
            if let Some(Value::String(r)) = arguments.values().find(
                |v| matches!(v, Value::String(r) if !problem.objects.contains_key(r)),
            ) {
                eprintln!("error: --arg refers to undeclared object `{r}`");
                return EXIT_PARSE;
            }
            let task = format::TaskSpec { command: name.to_string(), arguments, output: None };
            run::run_tasks(&problem, &[task])
        }
    };

    let rendered = match io_args.format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&outcome.certificate).expect("certificates serialize");
            s.push('\n');
            s
        }
        OutputFormat::Text => render_text(&outcome.certificate),
    };
    let written = match &io_args.output {
        Some(path) => fs::write(path, rendered),
        None => io::stdout().write_all(rendered.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: writing certificate: {e}");
        return EXIT_TASK_FAILED;
    }
    outcome.exit_code
}
