use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mcg4::cli::{self, CatalogAction, CmdOutput, Flags};

/// Mapping class group invariants of simply connected 4-manifolds with
/// boundary, from an intersection form, a spin flag and boundary data.
#[derive(Parser)]
#[command(name = "mcg4", version)]
struct Args {
    /// Emit JSON instead of the text report.
    #[arg(long, global = true)]
    json: bool,
    /// Only the essential lines; no warnings.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a model file or catalog entry.
    Analyze { target: String },
    /// E3 terms of the James spectral sequence for K(Z^n, 2).
    Ss {
        #[arg(long)]
        rank: usize,
        #[arg(long, conflicts_with = "nonspin")]
        spin: bool,
        #[arg(long)]
        nonspin: bool,
    },
    /// Test a matrix for membership in the variation group of a form.
    Check {
        #[arg(long)]
        form: PathBuf,
        #[arg(long)]
        variation: PathBuf,
    },
    /// Built-in and MCG4_CATALOG_DIR models.
    Catalog {
        #[command(subcommand)]
        action: CatalogCmd,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    List,
    Show { name: String },
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let flags = Flags {
        json: args.json,
        quiet: args.quiet,
    };
    let out: CmdOutput = match args.command {
        Command::Analyze { target } => cli::cmd_analyze(&target, flags),
        Command::Ss {
            rank,
            spin,
            nonspin,
        } => {
            if !spin && !nonspin {
                eprintln!("error: pass --spin or --nonspin");
                return ExitCode::from(2);
            }
            cli::cmd_ss(rank, spin, flags)
        }
        Command::Check { form, variation } => cli::cmd_check(&form, &variation, flags),
        Command::Catalog { action } => {
            let action = match action {
                CatalogCmd::List => CatalogAction::List,
                CatalogCmd::Show { name } => CatalogAction::Show(name),
            };
            cli::cmd_catalog(&action, flags)
        }
    };
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.code as u8)
}
