mod commands;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};
use sofic::text::{parse, print, Document};

use commands::{DotTarget, Outcome, Transform};
use report::Report;

/// Symbolic dynamics toolkit: covers, invariants, classification and
/// transformations of sofic shifts.
#[derive(Parser, Debug)]
#[command(name = "sofic", version)]
struct Cli {
    /// Print JSON reports instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Exit with status 1 when a verdict is negative
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Covers, entropy, periodic points, classification, syntactic graph
    Analyze {
        files: Vec<PathBuf>,
        /// Analyze every file of a directory, in parallel
        #[arg(long)]
        batch: Option<PathBuf>,
        /// Number of periodic-point counts
        #[arg(long, default_value_t = 6)]
        zeta_terms: usize,
    },
    /// The Krieger cover, as a document
    Krieger { file: PathBuf },
    /// The Fischer cover of an irreducible shift, as a document
    Fischer { file: PathBuf },
    /// Green structure of the syntactic semigroup
    Semigroup { file: PathBuf },
    /// Regular D-classes ordered by the J-order
    SyntacticGraph {
        file: PathBuf,
        /// Print DOT instead of text
        #[arg(long)]
        dot: bool,
    },
    /// Entropy, periodic points, Bowen-Franks group
    Invariants {
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        zeta_terms: usize,
    },
    /// Irreducibility, finite type, almost finite type, delays
    Classify {
        file: PathBuf,
        /// Longest context the locality search reports
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Apply a transformation and print the resulting document
    Transform {
        file: PathBuf,
        #[command(subcommand)]
        op: Transform,
    },
    /// Compare invariants of two inputs
    Compare {
        first: PathBuf,
        second: PathBuf,
        /// Decide flow equivalence of irreducible edge shifts
        #[arg(long)]
        flow: bool,
        #[arg(long, default_value_t = 6)]
        zeta_terms: usize,
    },
    /// Check a strong shift equivalence certificate
    VerifySse { file: PathBuf },
    /// Graphviz rendering of an input, a cover or a syntactic graph
    ExportDot {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = DotTarget::Input)]
        of: DotTarget,
    },
}

fn load(path: &Path) -> Outcome<Document> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse(&text).map_err(|e| format!("{}:{e}", path.display()))
}

fn with_file<T>(path: &Path, f: impl FnOnce(&Document) -> Outcome<T>) -> Outcome<T> {
    let doc = load(path)?;
    f(&doc).map_err(|e| format!("{}: {e}", path.display()))
}

fn render(json: bool, r: &Report) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(&r.json).expect("serializable");
        s.push('\n');
        s
    } else {
        r.text.clone()
    }
}

enum Output {
    Report(Report),
    Text(String),
}

fn batch_files(dir: &Path) -> Outcome<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| format!("{}: {e}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    Ok(files)
}

/// Analyzes several files independently. A failing file is reported in
/// place and makes the exit status 2.
fn analyze_many(files: &[PathBuf], zeta_terms: usize, cli: &Cli) -> ExitCode {
    let results: Vec<(String, Outcome<Report>)> = files
        .par_iter()
        .map(|p| {
            let name = p.display().to_string();
            (name, with_file(p, |d| commands::analyze(d, zeta_terms)))
        })
        .collect();
    let failed = results.iter().any(|(_, r)| r.is_err());
    let negative = results.iter().any(|(_, r)| matches!(r, Ok(r) if r.negative));
    if cli.json {
        let entries: Vec<Value> = results
            .iter()
            .map(|(name, r)| match r {
                Ok(r) => json!({ "file": name, "report": r.json }),
                Err(e) => json!({ "file": name, "error": e }),
            })
            .collect();
        let out = json!({ "format": sofic::text::FORMAT_VERSION, "command": "analyze", "batch": entries });
        println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    } else {
        for (name, r) in &results {
            match r {
                Ok(r) => print!("== {name}\n{}", r.text),
                Err(e) => print!("== {name}\nerror: {e}\n"),
            }
        }
    }
    if failed {
        ExitCode::from(2)
    } else if cli.strict && negative {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn run(cli: &Cli) -> Outcome<Output> {
    let report = match &cli.command {
        Command::Analyze { files, zeta_terms, .. } => {
            with_file(&files[0], |d| commands::analyze(d, *zeta_terms))?
        }
        Command::Krieger { file } => with_file(file, commands::krieger_cmd)?,
        Command::Fischer { file } => with_file(file, commands::fischer_cmd)?,
        Command::Semigroup { file } => with_file(file, commands::semigroup)?,
        Command::SyntacticGraph { file, dot } => {
            with_file(file, |d| commands::syntactic_graph_cmd(d, *dot))?
        }
        Command::Invariants { file, zeta_terms } => {
            with_file(file, |d| commands::invariants(d, *zeta_terms))?
        }
        Command::Classify { file, bound } => with_file(file, |d| commands::classify(d, *bound))?,
        Command::Transform { file, op } => {
            let doc = with_file(file, |d| commands::transform(d, op))?;
            return Ok(Output::Text(print(&doc)));
        }
        Command::Compare { first, second, flow, zeta_terms } => {
            let a = load(first)?;
            let b = load(second)?;
            commands::compare(&a, &b, *flow, *zeta_terms)?
        }
        Command::VerifySse { file } => with_file(file, commands::verify)?,
        Command::ExportDot { file, of } => {
            return Ok(Output::Text(with_file(file, |d| commands::export_dot(d, *of))?));
        }
    };
    Ok(Output::Report(report))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Analyze { files, batch, zeta_terms } = &cli.command {
        let mut all = files.clone();
        if let Some(dir) = batch {
            match batch_files(dir) {
                Ok(f) => all.extend(f),
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
        }
        if all.is_empty() {
            eprintln!("error: analyze needs a file or --batch <dir>");
            return ExitCode::from(2);
        }
        if batch.is_some() || all.len() > 1 {
            return analyze_many(&all, *zeta_terms, &cli);
        }
    }
    match run(&cli) {
        Ok(Output::Text(t)) => {
            print!("{t}");
            ExitCode::SUCCESS
        }
        Ok(Output::Report(r)) => {
            print!("{}", render(cli.json, &r));
            if cli.strict && r.negative {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
