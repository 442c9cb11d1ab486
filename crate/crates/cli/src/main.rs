mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};
use e2pm::capabilities::ClassifierReading;
use e2pm::search::Predicate;
use e2pm::{FormatError, SearchError};

use commands::Settings;
use report::RunReport;

#[derive(Parser)]
#[command(name = "e2pm", version, about = "Check, decompose and search extensional 2-pointed magmas")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = ReportFormat::Text)]
    report: ReportFormat,
    /// Node budget for searches.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Worker threads for searches; results do not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Seed for sampled permutations.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Require classifiers to send every input (not only core inputs) to an absorber.
    #[arg(long, global = true)]
    strict_classifier: Option<bool>,
    /// Include wall-clock timing in the report.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the corpus against its recorded capability flags and roles.
    VerifyCorpus {
        /// Directory of structured table documents to verify instead of the built-in corpus.
        #[arg(long)]
        dir: Option<PathBuf>,
        /// Also verify the search-derived entries.
        #[arg(long)]
        include_derived: bool,
    },
    /// Report capabilities, decomposition and witnesses of a table file.
    Check { file: PathBuf },
    /// Print the zero / classifier / non-classifier partition.
    Decompose { file: PathBuf },
    /// Run a search spec document.
    Search {
        spec: PathBuf,
        /// Override the spec's witness limit.
        #[arg(long)]
        limit: Option<usize>,
        /// List every witness, not only the first.
        #[arg(long)]
        all: bool,
    },
    /// Find the smallest size satisfying a conjunction, certifying smaller sizes Unsat.
    Bounds {
        #[arg(long, value_delimiter = ',', required = true)]
        require: Vec<Predicate>,
        #[arg(long, value_delimiter = ',')]
        forbid: Vec<Predicate>,
        #[arg(long, default_value_t = 3)]
        min: usize,
        #[arg(long)]
        max: usize,
    },
    /// List isomorphisms between two tables, or check invariance of one table under permutations.
    Iso {
        first: PathBuf,
        second: Option<PathBuf>,
        /// Permutations to sample when checking invariance; all are used if fewer exist.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Write the DIMACS encoding of a spec, or decode a solver model.
    Encode {
        spec: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Solver output to decode and check against the spec.
        #[arg(long)]
        model: Option<PathBuf>,
    },
    /// Re-run the search behind the derived 6-element separation table.
    DeriveSeparation,
    /// Search every size in a range (no early stop).
    Sweep {
        #[arg(long, value_delimiter = ',', required = true)]
        require: Vec<Predicate>,
        #[arg(long, value_delimiter = ',')]
        forbid: Vec<Predicate>,
        #[arg(long)]
        min: usize,
        #[arg(long)]
        max: usize,
        /// Order core rows lexicographically; results are then not certificates.
        #[arg(long)]
        symmetry_breaking: bool,
    },
    /// Write every corpus table as `.tbl` and `.json` files.
    ExportCorpus {
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(cli: &Cli) -> Result<RunReport> {
    let settings = Settings {
        budget: cli.budget,
        threads: cli.threads.max(1),
        seed: cli.seed,
        reading: cli.strict_classifier.map(|strict| {
            if strict {
                ClassifierReading::Strict
            } else {
                ClassifierReading::CoreOnly
            }
        }),
    };
    match &cli.command {
        Command::VerifyCorpus { dir, include_derived } => {
            commands::verify_corpus(&settings, dir.as_deref(), *include_derived)
        }
        Command::Check { file } => commands::check(&settings, file),
        Command::Decompose { file } => commands::decompose(file),
        Command::Search { spec, limit, all } => commands::search(&settings, spec, *limit, *all),
        Command::Bounds { require, forbid, min, max } => commands::bounds(&settings, require, forbid, *min, *max),
        Command::Iso { first, second, samples } => commands::iso(&settings, first, second.as_deref(), *samples),
        Command::Encode { spec, out, model } => commands::encode_cmd(&settings, spec, out.as_deref(), model.as_deref()),
        Command::DeriveSeparation => commands::derive_separation(),
        Command::Sweep {
            require,
            forbid,
            min,
            max,
            symmetry_breaking,
        } => commands::sweep(&settings, require, forbid, *min, *max, *symmetry_breaking),
        Command::ExportCorpus { out } => commands::export_corpus(out),
    }
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    if let Some(SearchError::ResourceLimit { .. }) = err.downcast_ref::<SearchError>() {
        3
    } else if let Some(SearchError::Contradiction(_)) = err.downcast_ref::<SearchError>() {
        1
    } else {
        2
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(mut report) => {
            report.command = std::env::args().skip(1).collect();
            if cli.timing {
                report.timing_ms = Some(start.elapsed().as_millis());
            }
            match cli.report {
                ReportFormat::Text => print!("{}", report.to_text()),
                ReportFormat::Json => print!("{}", report.to_json()),
            }
            ExitCode::from(report.exit_code as u8)
        }
        Err(err) => {
            let code = exit_code_for(&err);
            let kind = if err.chain().any(|c| c.is::<FormatError>()) {
                "parse error"
            } else {
                "error"
            };
            eprintln!("{kind}: {err:#}");
            ExitCode::from(code)
        }
    }
}
