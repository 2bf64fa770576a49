use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dcc_cli::commands::{self, GadgetFormat};
use dcc_cli::{claims, fuzz, CliError, Report};

#[derive(Parser)]
#[command(name = "dcc", version, about = "Defective correspondence coloring: solver and verification harness")]
struct Cli {
    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the procedure for a registered claim and print its JSON report.
    Verify {
        claim: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a property on seeded random instances.
    Fuzz {
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 1000)]
        iters: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory for reproducer files of failing instances.
        #[arg(long, default_value = "reproducers")]
        reproducers: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search a cover file for a d-defective coloring.
    Solve {
        cover: PathBuf,
        #[arg(long)]
        defect: usize,
        /// Per-vertex defect cap, `vertex=K` (id or label).
        #[arg(long = "cap")]
        caps: Vec<String>,
        /// Pinned color, `vertex=i` (local index).
        #[arg(long = "pin")]
        pins: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Detector verdicts, residual class or hub-pair census of a cover file.
    Classify {
        cover: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a registered gadget.
    Gadget {
        name: String,
        /// Parameter, `name=value`.
        #[arg(long = "param")]
        params: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List claims, fuzz targets and gadgets.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::file(path, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_report(report: &Report, out: Option<&Path>) -> Result<i32, CliError> {
    emit(&report.to_json(), out)?;
    for c in report.failed_checks() {
        eprintln!("FAIL {}: {}", c.id, c.detail);
    }
    Ok(report.verdict.exit_code())
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Verify { claim, seed, out } => emit_report(&claims::verify(&claim, seed)?, out.as_deref()),
        Command::Fuzz {
            target,
            iters,
            seed,
            reproducers,
            out,
        } => emit_report(&fuzz::fuzz(&target, iters, seed, Some(&reproducers))?, out.as_deref()),
        Command::Solve {
            cover,
            defect,
            caps,
            pins,
            out,
        } => {
            let (cover, _) = commands::read_cover(&cover)?;
            emit(&commands::solve_to_json(&cover, defect, &caps, &pins)?, out.as_deref())?;
            Ok(0)
        }
        Command::Classify { cover, out } => {
            let (cover, _) = commands::read_cover(&cover)?;
            let mut text = serde_json::to_string_pretty(&commands::classify_cover(&cover)?).expect("serializes");
            text.push('\n');
            emit(&text, out.as_deref())?;
            Ok(0)
        }
        Command::Gadget {
            name,
            params,
            format,
            out,
        } => {
            let format = match format {
                Format::Json => GadgetFormat::Json,
                Format::Dot => GadgetFormat::Dot,
            };
            let text = commands::gadget_text(&name, &commands::parse_params(&params)?, format)?;
            emit(&text, out.as_deref())?;
            Ok(0)
        }
        Command::List => {
            println!("claims:");
            for (id, what) in claims::CLAIMS {
                println!("  {id:<18} {what}");
            }
            println!("fuzz targets:");
            for (id, props) in fuzz::TARGETS {
                println!("  {id:<20} {}", props.join(", "));
            }
            println!("gadgets:");
            for name in dcc_core::gadgets::GADGET_NAMES {
                println!("  {name}");
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let threads = cli.threads;
    let result = match threads {
        Some(n) => dcc_cli::with_threads(n, || run(cli)).and_then(|r| r),
        None => run(cli),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
