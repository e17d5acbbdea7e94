//! `assoc`: command-line front end for the associator toolkit.
//!
//! Exit codes: 0 success (every equation passes), 1 some equation fails,
//! 2 usage, parse, I/O or engine error.

mod cache;
mod commands;
mod error;
mod files;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use assoc_core::associator::OctagonReading;
use assoc_core::families::Family;
use assoc_core::malcev::ModelKind;
use assoc_core::quotient::DEFAULT_MONOMIAL_CAP;
use assoc_core::series::parse_rational;
use assoc_core::Rational;
use clap::{Parser, Subcommand, ValueEnum};

use crate::cache::DiskTables;
use crate::commands::{out_path, Format, Outcome};
use crate::error::CliResult;

#[derive(Parser, Debug)]
#[command(name = "assoc", version, about = "Exact truncated computations with associators and their symmetries")]
struct Cli {
    /// Upper bound on the monomial count of a quotient table.
    #[arg(long, global = true, default_value_t = DEFAULT_MONOMIAL_CAP, value_parser = parse_cap)]
    cap: u128,
    /// Directory for normal-form tables reused across runs.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Text,
    Report,
}

#[derive(ValueEnum, Clone, Copy, Debug, Default)]
enum OctagonArg {
    #[default]
    Literal,
    Shifted,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum GroupKind {
    Gt,
    Gtgamma,
    Gtell,
}

impl GroupKind {
    fn name(self) -> &'static str {
        match self {
            GroupKind::Gt => "gt",
            GroupKind::Gtgamma => "gtgamma",
            GroupKind::Gtell => "gtell",
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hilbert dimensions of a quotient, one `d dim` line per degree.
    Dims {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        maxdeg: u32,
    },
    /// Checks a candidate file (or a `gt` element) and prints one line per
    /// equation.
    Verify {
        file: PathBuf,
        /// Truncate the input first.
        #[arg(long)]
        maxdeg: Option<u32>,
        /// Reading of the second cyclotomic equation.
        #[arg(long, value_enum, default_value_t)]
        octagon: OctagonArg,
    },
    /// Solves for a Drinfeld candidate degree by degree.
    Solve {
        #[arg(long, value_parser = parse_lambda, allow_hyphen_values = true)]
        lambda: Rational,
        #[arg(long)]
        maxdeg: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Group law of GT, GT^Γ or GT_ell: FIRST ⋆ SECOND.
    Compose {
        #[arg(value_enum)]
        kind: GroupKind,
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Action of a group element on a candidate.
    Act {
        #[arg(value_enum)]
        kind: GroupKind,
        element: PathBuf,
        candidate: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Operadic operations on series files.
    Op {
        #[command(subcommand)]
        op: OpCommand,
    },
    /// Evaluates a word in a group model.
    Word {
        word: String,
        #[arg(long, value_parser = parse_model)]
        context: ModelKind,
        #[arg(long)]
        maxdeg: u32,
    },
}

#[derive(Subcommand, Debug)]
enum OpCommand {
    /// Partial composition HOST ∘_slot GUEST; the kind follows the families
    /// (t∘t, tGamma∘t, tGamma·tGamma without a slot, tell∘t).
    Compose {
        host: PathBuf,
        guest: PathBuf,
        #[arg(long)]
        slot: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Insertion-coproduct image under a partial map.
    Insert {
        #[arg(long)]
        pmap: String,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Symmetric group or Γ-tuple action.
    Act {
        #[arg(long, conflicts_with = "gamma", required_unless_present = "gamma")]
        perm: Option<String>,
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_cap(s: &str) -> Result<u128, String> {
    match s.parse::<u128>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(format!("expected a positive integer, got `{s}`")),
    }
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: assoc_core::Error| e.to_string())
}

fn parse_model(s: &str) -> Result<ModelKind, String> {
    s.parse().map_err(|e: assoc_core::Error| e.to_string())
}

fn parse_lambda(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn run(cli: Cli) -> CliResult<Outcome> {
    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Report => Format::Report,
    };
    let tables = DiskTables::new(cli.cap, cli.cache_dir);
    match cli.command {
        Command::Dims { family, maxdeg } => commands::dims(&tables, &family, maxdeg, format),
        Command::Verify { file, maxdeg, octagon } => {
            let reading = match octagon {
                OctagonArg::Literal => OctagonReading::Literal,
                OctagonArg::Shifted => OctagonReading::Shifted,
            };
            commands::verify(&tables, &file, maxdeg, reading, format)
        }
        Command::Solve { lambda, maxdeg, out } => commands::solve(&tables, &lambda, maxdeg, out_path(&out), format),
        Command::Compose { kind, first, second, out } => commands::compose(kind.name(), &first, &second, out_path(&out)),
        Command::Act { kind, element, candidate, out } => {
            commands::act(kind.name(), &element, &candidate, out_path(&out))
        }
        Command::Op { op } => match op {
            OpCommand::Compose { host, guest, slot, out } => {
                commands::op_compose(&tables, &host, &guest, slot, out_path(&out))
            }
            OpCommand::Insert { pmap, input, out } => commands::op_insert(&pmap, &input, out_path(&out)),
            OpCommand::Act { perm, gamma, input, out } => {
                commands::op_act(perm.as_deref(), gamma.as_deref(), &input, out_path(&out))
            }
        },
        Command::Word { word, context, maxdeg } => commands::word(&word, &context, maxdeg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(outcome.stdout.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
