use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use seqrcc::fragments::{classify, TractableOutcome};
use seqrcc::network::{Engine, Network, Slice};
use seqrcc::planner::plan;
use seqrcc::projection::SemanticsKind;
use seqrcc::verify::verify_all;

const EXIT_UNSAT: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_VERIFY: u8 = 3;

/// Reasoning over temporal sequences of RCC8 relations.
#[derive(Parser)]
#[command(name = "seqrcc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the algebraic closure of a network file.
    Closure { file: PathBuf },
    /// Print the fragments each slice belongs to and the matching patterns.
    Classify { file: PathBuf },
    /// Decide weak satisfiability and print a witness scenario.
    Solve {
        file: PathBuf,
        /// Skip the closure-only decision and always search.
        #[arg(long)]
        force_search: bool,
    },
    /// Find a sequence from one classical scenario to another.
    Plan {
        #[arg(long)]
        start: PathBuf,
        #[arg(long)]
        goal: PathBuf,
        #[arg(long)]
        steps: usize,
        /// A length-1 network applied at every index, or one of length `steps`.
        #[arg(long)]
        constraints: Option<PathBuf>,
        #[arg(long, value_enum)]
        semantics: SemanticsArg,
    },
    /// Run the built-in claim checks.
    VerifyPaper,
}

#[derive(Clone, Copy, ValueEnum)]
enum SemanticsArg {
    Neighbour,
    Partition,
}

impl From<SemanticsArg> for SemanticsKind {
    fn from(s: SemanticsArg) -> Self {
        match s {
            SemanticsArg::Neighbour => SemanticsKind::NeighbourInstants,
            SemanticsArg::Partition => SemanticsKind::TimePartition,
        }
    }
}

struct Failure(String);

fn load(path: &Path) -> Result<Network, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    Network::parse(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_slice(path: &Path) -> Result<Slice, Failure> {
    let net = load(path)?;
    if net.len() != 1 {
        return Err(Failure(format!(
            "{}: expected a classical network (length 1), found length {}",
            path.display(),
            net.len()
        )));
    }
    Ok(net.slice(0))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let engine = Engine::standard();
    match cli.command {
        Command::Closure { file } => {
            let closed = engine.algebraic_closure(&load(&file)?);
            print!("{}", closed.to_text());
            Ok(if closed.is_trivially_unsatisfiable() {
                EXIT_UNSAT
            } else {
                0
            })
        }
        Command::Classify { file } => {
            print!("{}", classify(&load(&file)?));
            Ok(0)
        }
        Command::Solve { file, force_search } => {
            let net = load(&file)?;
            let outcome = if force_search {
                TractableOutcome::NotCovered
            } else {
                engine.solve_tractable(&net)
            };
            let witness = match outcome {
                TractableOutcome::Sat(s) => Some(s),
                TractableOutcome::Unsat => None,
                TractableOutcome::NotCovered => engine.find_closed_scenario(&net),
            };
            match witness {
                Some(s) => {
                    println!("SAT");
                    print!("{s}");
                    Ok(0)
                }
                None => {
                    println!("UNSAT");
                    Ok(EXIT_UNSAT)
                }
            }
        }
        Command::Plan {
            start,
            goal,
            steps,
            constraints,
            semantics,
        } => {
            let start = load_slice(&start)?;
            let goal = load_slice(&goal)?;
            let constraints = match constraints {
                None => Vec::new(),
                Some(path) => {
                    let net = load(&path)?;
                    (0..net.len()).map(|t| net.slice(t)).collect()
                }
            };
            match plan(&start, &goal, steps, &constraints, semantics.into())
                .map_err(|e| Failure(e.to_string()))?
            {
                Some(s) => {
                    print!("{s}");
                    Ok(0)
                }
                None => {
                    println!("UNSAT");
                    Ok(EXIT_UNSAT)
                }
            }
        }
        Command::VerifyPaper => {
            let report = verify_all();
            print!("{report}");
            Ok(if report.all_passed() { 0 } else { EXIT_VERIFY })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
