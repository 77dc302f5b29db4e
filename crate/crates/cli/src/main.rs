mod commands;
mod description;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use qdslab_core::Caps;

#[derive(Parser)]
#[command(name = "qdslab", version, about = "Configurations from quasi difference sets")]
struct Cli {
    /// Step budget for exhaustive searches (overrides QDSLAB_MAX_STEPS).
    #[arg(long, global = true)]
    max_steps: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Evaluate set predicates.
    Check {
        file: PathBuf,
        #[arg(long)]
        qds: bool,
        #[arg(long)]
        star: bool,
        #[arg(long)]
        perfect: bool,
    },
    /// Summarise the structure, optionally writing its JSON export.
    Build {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the structure as json, matrix or levi-dot.
    Export {
        file: PathBuf,
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Geometric properties.
    Props {
        file: PathBuf,
        #[arg(long)]
        veblen: bool,
        #[arg(long)]
        desargues: bool,
        #[arg(long)]
        pappus: bool,
        #[arg(long)]
        dual: bool,
        #[arg(long)]
        unique_completion: bool,
    },
    /// Automorphism group.
    Aut {
        file: PathBuf,
        #[arg(long)]
        order_only: bool,
        #[arg(long)]
        expected: Option<u128>,
        /// Point label, e.g. 3 or (1,2).
        #[arg(long)]
        stabilizer: Option<String>,
    },
    /// Isomorphism test.
    Iso { first: PathBuf, second: PathBuf },
    /// Emit structure descriptions.
    Make(MakeArgs),
    /// Neighbourhood of a point.
    Neighborhood { file: PathBuf, point: String },
    /// Connected component of a point.
    Component { file: PathBuf, point: String },
    /// The part through a point spanned by some summands.
    Part {
        file: PathBuf,
        /// Comma-separated summand indices.
        #[arg(long, value_delimiter = ',', required = true)]
        summands: Vec<usize>,
        #[arg(long)]
        point: String,
    },
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).multiple(false)))]
pub struct MakeArgs {
    /// Comma-separated moduli.
    #[arg(long, value_delimiter = ',', group = "source")]
    canonical: Option<Vec<usize>>,
    #[arg(long, num_args = 2, value_names = ["A", "B"], group = "source")]
    sum: Option<Vec<PathBuf>>,
    #[arg(long, num_args = 2, value_names = ["FILE", "N"], group = "source")]
    power: Option<Vec<String>>,
    #[arg(long, group = "source")]
    singer: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn caps(flag: Option<u64>) -> Result<Caps, String> {
    let steps = match flag {
        Some(s) => s,
        None => match std::env::var("QDSLAB_MAX_STEPS") {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| format!("QDSLAB_MAX_STEPS={v:?} is not a step count"))?,
            Err(_) => return Ok(Caps::default()),
        },
    };
    Ok(Caps::with_max_steps(steps))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let caps = match caps(cli.max_steps) {
        Ok(c) => c,
        Err(m) => {
            eprintln!("error: {m}");
            return ExitCode::from(2);
        }
    };
    let argv: Vec<String> = std::env::args().skip(1).collect();
    match commands::run(cli.command, argv, &caps) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
