mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::builder::PossibleValuesParser;
use clap::{Parser, Subcommand};

use commands::{Output, SplittingKind};

/// Homology, Künneth decompositions and property checks for finitely presented chain complexes.
///
/// A complex is given either as a JSON document path (`-` reads stdin) or as a builtin:
/// `moore M N`, `sphere N`, `rp N`, `point`, `random SEED [MAX_DEGREE MAX_RANK MAX_ENTRY]`,
/// each optionally followed by `mod R`. Quote builtins that contain spaces.
#[derive(Parser)]
#[command(name = "kunneth", version)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Homology groups of a complex with generating cycles.
    Homology {
        /// Document path, `-`, or builtin words.
        #[arg(required = true, num_args = 1..)]
        input: Vec<String>,
    },
    /// Decompose H_n(C ⊗ D) into tensor and Tor summands.
    Kunneth {
        left: String,
        right: String,
        #[arg(long, short = 'n', allow_negative_numbers = true)]
        degree: i64,
        #[arg(long, value_enum, default_value_t = SplittingKind::Weak)]
        splitting: SplittingKind,
        /// Perturb the canonical splittings with this seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Weak splitting data of a complex.
    Split {
        #[arg(required = true, num_args = 1..)]
        input: Vec<String>,
        /// Perturb the canonical splitting with this seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Write a complex as a JSON document.
    Gen {
        #[arg(required = true, num_args = 1..)]
        input: Vec<String>,
        /// Name stored in the document.
        #[arg(long)]
        name: Option<String>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Run a randomized property suite.
    Verify {
        #[arg(value_parser = PossibleValuesParser::new(kunneth::verify::suite_names()), required_unless_present = "replay")]
        suite: Option<String>,
        #[arg(long, env = "KUNNETH_SEED", default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        cases: Option<usize>,
        /// Re-run the counterexamples stored in a report.
        #[arg(long, conflicts_with = "suite")]
        replay: Option<PathBuf>,
        /// Also write the full JSON report here.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

fn write(path: &PathBuf, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Homology { input } => {
            let desc = input.join(" ");
            Ok(commands::homology(&input::load(&desc)?, &desc))
        }
        Command::Kunneth {
            left,
            right,
            degree,
            splitting,
            seed,
        } => commands::kunneth(&input::load(left)?, &input::load(right)?, (left, right), *degree, *splitting, *seed),
        Command::Split { input, seed } => {
            let desc = input.join(" ");
            Ok(commands::split(&input::load(&desc)?, &desc, *seed))
        }
        Command::Gen { input, name, out } => {
            let desc = input.join(" ");
            let o = commands::gen(&input::load(&desc)?, name.as_deref().unwrap_or(&desc));
            if let Some(p) = out {
                write(p, &o.text)?;
                return Ok(Output {
                    text: format!("wrote {}\n", p.display()),
                    ..o
                });
            }
            Ok(o)
        }
        Command::Verify {
            suite,
            seed,
            cases,
            replay,
            out,
        } => {
            if let Some(p) = replay {
                let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                return commands::replay_file(&text);
            }
            let name = suite.as_deref().expect("clap requires a suite");
            let (o, rep) = commands::verify(name, *seed, *cases)?;
            if let Some(p) = out {
                write(p, &serde_json::to_string_pretty(&rep)?)?;
            }
            Ok(o)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(o) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&o.json).expect("json"));
            } else {
                print!("{}", o.text);
            }
            if o.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
