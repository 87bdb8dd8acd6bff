mod commands;
mod error;
mod inputs;
mod recipe;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use parade_core::analysis::Theorem;
use parade_core::geometry::TransformClass;
use parade_core::pgroup::default_depth;

/// Partial symmetry groups of finite figures.
#[derive(Parser)]
#[command(name = "parade", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Parade group of a scene with its global group, normalizer and axiom check.
    Analyze {
        /// Scene file or builtin:<name>.
        scene: String,
        #[arg(long)]
        class: Option<TransformClass>,
        /// Word length bound (default: PARADE_DEPTH or 4).
        #[arg(long)]
        depth: Option<usize>,
        /// Directory for report.txt, report.json, parade.json and parade.dot.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Evaluate a recipe and write the partial group record.
    Construct {
        recipe: String,
        #[arg(long)]
        depth: Option<usize>,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for an isomorphism between two inputs (records, recipes or scenes).
    Compare {
        a: String,
        b: String,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Check a theorem's conclusion on a scene after verifying its hypotheses.
    Crosscheck {
        scene: String,
        #[arg(long)]
        theorem: Theorem,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Axiom validation of any input; scenes also get the normalizer checks.
    Validate {
        input: String,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let d = |x: Option<usize>| x.unwrap_or_else(default_depth);
    let res = match cli.command {
        Command::Analyze { scene, class, depth, out, format } => commands::analyze(&scene, class, d(depth), out.as_deref(), format),
        Command::Construct { recipe, depth, out } => commands::construct(&recipe, d(depth), out.as_deref()),
        Command::Compare { a, b, depth } => commands::compare(&a, &b, d(depth)),
        Command::Crosscheck { scene, theorem, depth, format } => commands::crosscheck(&scene, theorem, d(depth), format),
        Command::Validate { input, depth, format } => commands::validate(&input, d(depth), format),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
