mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::Outcome;

#[derive(Parser, Debug)]
#[command(name = "indres", version, about = "Independent resolutions and group homology of quadratic presentations")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate σ and check (a)(b)(c) up to the length bound.
    Check {
        file: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Group homology of a presentation.
    Homology {
        file: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
        /// Also compute homology of C and compare.
        #[arg(long = "cross-check-C")]
        cross_check_c: bool,
        /// Also report cohomology.
        #[arg(long)]
        cohomology: bool,
    },
    /// Enumerate valid σ on small alphabets.
    Census {
        /// Alphabet size; may be repeated.
        #[arg(long = "size", required = true, value_parser = clap::value_parser!(u64).range(1..=4))]
        sizes: Vec<u64>,
    },
    /// Build the resolution tower of a semilattice with covers.
    Resolve {
        semilattice: PathBuf,
        covers: PathBuf,
        #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u64).range(1..))]
        depth: u64,
    },
    /// Run invariant suites on a presentation, a semilattice instance or
    /// (with the argument `random`) on seeded random instances.
    Verify {
        instance: String,
        /// Cover file for a semilattice instance.
        #[arg(long)]
        covers: Option<PathBuf>,
        #[command(flatten)]
        bounds: Bounds,
        #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u64).range(1..))]
        depth: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(clap::Args, Debug, Clone, Copy)]
struct Bounds {
    /// Word length bound for the (a)(b)(c) check.
    #[arg(long, default_value_t = indres::presentation::DEFAULT_LENGTH_BOUND as u64, value_parser = clap::value_parser!(u64).range(1..))]
    length_bound: u64,
    /// Reversing step budget; defaults to 10·len².
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_steps: Option<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Check { file, bounds } => commands::check(&file, bounds.length_bound as usize, steps(bounds)),
        Command::Homology { file, bounds, cross_check_c, cohomology } => commands::homology(
            &file,
            bounds.length_bound as usize,
            steps(bounds),
            cross_check_c,
            cohomology,
        ),
        Command::Census { sizes } => {
            commands::census(&sizes.iter().map(|&s| s as usize).collect::<Vec<_>>())
        }
        Command::Resolve { semilattice, covers, depth } => {
            commands::resolve(&semilattice, &covers, depth as usize)
        }
        Command::Verify { instance, covers, bounds, depth, seed } => commands::verify(
            &instance,
            covers.as_deref(),
            bounds.length_bound as usize,
            steps(bounds),
            depth as usize,
            seed,
        ),
    };
    emit(outcome, cli.format)
}

fn steps(b: Bounds) -> Option<usize> {
    b.max_steps.map(|s| s as usize)
}

fn emit(outcome: Outcome, format: Format) -> ExitCode {
    match outcome {
        Outcome::Report(r) => {
            match format {
                Format::Text => print!("{}", r.text),
                Format::Json => println!("{}", commands::render_json(&r.json)),
            }
            ExitCode::from(r.status.exit_code() as u8)
        }
        Outcome::Malformed(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
