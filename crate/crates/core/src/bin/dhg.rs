use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dihedral_hypergraph::enumerate_subgroups;
use dihedral_hypergraph::export::{export, Format, Target};
use dihedral_hypergraph::harness::{analyze_with, sweep_to_path, AnalysisReport, AnalyzeOptions};
use dihedral_hypergraph::Error;

/// Intersection hypergraphs of the dihedral groups D_n.
#[derive(Parser)]
#[command(name = "dhg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one n and print its report as JSON.
    Analyze {
        #[arg(long)]
        n: u32,
        /// Write the report here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Include wall-clock timings (makes output non-deterministic).
        #[arg(long)]
        timings: bool,
    },
    /// Analyze a range of n, one JSON line per report.
    Sweep {
        #[arg(long, default_value_t = 2)]
        from: u32,
        #[arg(long, default_value_t = 200)]
        to: u32,
        #[arg(long, default_value_t = default_workers())]
        workers: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        timings: bool,
    },
    /// Write the hypergraph or a derived graph as DOT or JSON.
    Export {
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = ["dot", "json"])]
        format: String,
        #[arg(long, value_parser = ["hypergraph", "incidence", "linegraph", "hosttree"])]
        target: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// List the subgroups of D_n.
    Subgroups {
        #[arg(long)]
        n: u32,
    },
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |p| p.get())
}

fn report_code(report: &AnalysisReport) -> u8 {
    if !report.oracle_disagreements.is_empty() {
        3
    } else if !report.theorem_mismatches.is_empty() {
        1
    } else {
        0
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Analyze { n, json, timings } => {
            let report = analyze_with(n, AnalyzeOptions { timings })?;
            let text = serde_json::to_string_pretty(&report)? + "\n";
            match json {
                Some(path) => {
                    std::fs::write(&path, text)?;
                    eprintln!(
                        "n = {n}: {}",
                        if report.passed { "pass".to_string() } else { format!("{:?} {:?}", report.theorem_mismatches, report.oracle_disagreements) }
                    );
                }
                None => print!("{text}"),
            }
            Ok(report_code(&report))
        }
        Command::Sweep { from, to, workers, out, timings } => {
            let summary = sweep_to_path(from, to, workers, AnalyzeOptions { timings }, out.as_deref())?;
            eprintln!(
                "{} passed, theorem mismatches at {:?}, internal disagreements at {:?}",
                summary.passed, summary.theorem_failures, summary.oracle_failures
            );
            Ok(summary.exit_code() as u8)
        }
        Command::Export { n, format, target, out } => {
            let text = export(n, format.parse::<Format>()?, target.parse::<Target>()?)?;
            std::fs::write(out, text)?;
            Ok(0)
        }
        Command::Subgroups { n } => {
            let catalog = enumerate_subgroups(n)?;
            for (idx, s) in catalog.all().iter().enumerate() {
                println!("H{}\t{}\t{}", idx + 1, s.notation(), s.order());
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
