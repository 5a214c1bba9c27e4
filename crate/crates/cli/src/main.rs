mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Construct, verify and classify polynomial commutator algebras.
#[derive(Parser, Debug)]
#[command(name = "pbw", version)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Where the algebra comes from: a definition file or a catalog entry.
#[derive(Args, Debug, Clone)]
pub struct Source {
    /// Algebra definition file (`-` reads standard input).
    #[arg(required_unless_present = "catalog", conflicts_with = "catalog")]
    pub file: Option<String>,
    /// Use a catalog entry instead of a file.
    #[arg(long, value_name = "ID")]
    pub catalog: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether the relations define an algebra of PBW type.
    Check {
        #[command(flatten)]
        source: Source,
        /// Parameter values, `name=p/q,...`.
        /// Parameter values, e.g. `lambda=2,alpha=1/3`.
        #[arg(long, value_name = "ASSIGNMENT")]
        at: Option<String>,
    },
    /// Print the overlap constraint polynomials.
    Constraints {
        #[command(flatten)]
        source: Source,
        /// Parameter values, e.g. `lambda=2,alpha=1/3`.
        #[arg(long, value_name = "ASSIGNMENT")]
        at: Option<String>,
    },
    /// Reduce an expression to ordered normal form.
    Reduce {
        #[command(flatten)]
        source: Source,
        /// Expression in the algebra's generators, e.g. `C*B*A`.
        #[arg(long)]
        expr: String,
        /// `leftmost`, `rightmost` or `random:SEED`.
        #[arg(long, default_value = "leftmost")]
        strategy: String,
        /// Parameter values, e.g. `lambda=2,alpha=1/3`.
        #[arg(long, value_name = "ASSIGNMENT")]
        at: Option<String>,
    },
    /// Casimir elements up to a given degree, or verify a given element.
    Casimir {
        #[command(flatten)]
        source: Source,
        /// Highest degree searched (at most 5).
        #[arg(long, required_unless_present = "verify")]
        degree: Option<usize>,
        /// Parameter values, e.g. `lambda=2,alpha=1/3`.
        #[arg(long, value_name = "ASSIGNMENT")]
        at: Option<String>,
        /// Bound the graded degree instead of the polynomial degree.
        #[arg(long)]
        graded: bool,
        /// File holding an element to test for centrality.
        #[arg(long, value_name = "FILE", conflicts_with = "degree")]
        verify: Option<String>,
    },
    /// Canonical form of the lowest bracket of a quadratic algebra.
    Classify {
        #[command(flatten)]
        source: Source,
    },
    /// Apply a change of generators given in a file.
    Transform {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_name = "FILE")]
        map: String,
    },
    /// Built-in algebras.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogAction {
    List,
    Show {
        id: String,
        /// Print only the definition file.
        #[arg(long)]
        export: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = commands::run(&cli.command);
    let out = match cli.format {
        Format::Text => report.text,
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.json).expect("json values serialize");
            s.push('\n');
            s
        }
    };
    let stream = if report.status == 2 && cli.format == Format::Text {
        &mut std::io::stderr() as &mut dyn Write
    } else {
        &mut std::io::stdout() as &mut dyn Write
    };
    let _ = stream.write_all(out.as_bytes());
    ExitCode::from(report.status)
}
