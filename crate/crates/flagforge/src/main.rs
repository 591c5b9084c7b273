use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use flagforge::catalog::{build_entry, entry_names};
use flagforge::closedform::expects_no_graph;
use flagforge::flagcalc::BuildMode;
use flagforge::report::{
    analyze_entry, export_graph, verify_expectation_entry, verify_nonexistence_entry,
    verify_plane_entry, ExportFormat, VerifyRow,
};

#[derive(Parser)]
#[command(
    name = "flagforge",
    version,
    about = "Flag graphs of complements of 2-point-transitive linear spaces"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Stats,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScopeArg {
    Fast,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    EdgeList,
    Graph6,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the catalog entries with degrees, orders and provenance.
    Catalog,
    /// Run the full pipeline on entries and emit a JSON report.
    Analyze {
        entries: Vec<String>,
        #[arg(long, value_enum, default_value_t = ModeArg::Stats)]
        mode: ModeArg,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify every catalog entry against the expectation table and the
    /// closed-form predictions.
    VerifyTable {
        #[arg(long, value_enum, default_value_t = ScopeArg::Fast)]
        scope: ScopeArg,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Export one class graph as an edge list or graph6.
    Export {
        entry: String,
        /// Index into the entry's canonical class list.
        #[arg(long)]
        class: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::EdgeList)]
        format: FormatArg,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
}

fn lookup(name: &str) -> Result<flagforge::catalog::CatalogEntry, ExitCode> {
    if !entry_names().contains(&name) {
        eprintln!("error: unknown catalog entry '{name}' (see `flagforge catalog`)");
        return Err(ExitCode::from(2));
    }
    build_entry(name).map_err(|e| {
        eprintln!("error: failed to build {name}: {e:#}");
        ExitCode::from(1)
    })
}

fn cmd_catalog() -> ExitCode {
    println!(
        "{:<14} {:>6} {:>12} {:<22} provenance",
        "name", "points", "order", "design"
    );
    for name in entry_names() {
        match build_entry(name) {
            Ok(e) => {
                let design = if e.space.is_proper() {
                    format!("{} lines of size {}", e.space.line_count(), e.space.line_size())
                } else {
                    format!("complete on {} points", e.points())
                };
                println!(
                    "{:<14} {:>6} {:>12} {:<22} {}",
                    e.name,
                    e.points(),
                    e.group.order(),
                    design,
                    e.description
                );
            }
            Err(err) => {
                eprintln!("error: {name}: {err:#}");
                return ExitCode::from(1);
            }
        }
    }
    ExitCode::SUCCESS
}

fn cmd_analyze(
    entries: &[String],
    mode: ModeArg,
    workers: usize,
    out: Option<&PathBuf>,
) -> ExitCode {
    if entries.is_empty() {
        eprintln!("error: no entries given");
        return ExitCode::from(2);
    }
    let mode = match mode {
        ModeArg::Stats => BuildMode::Stats,
        ModeArg::Full => BuildMode::Full,
    };
    let mut reports = Vec::new();
    let mut all_ok = true;
    for name in entries {
        let entry = match lookup(name) {
            Ok(e) => e,
            Err(code) => return code,
        };
        match analyze_entry(&entry, mode, workers) {
            Ok(report) => {
                all_ok &= report.all_checks_passed;
                reports.push(report);
            }
            Err(e) => {
                eprintln!("error: {name}: {e:#}");
                return ExitCode::from(1);
            }
        }
    }
    let json = serde_json::to_string_pretty(&reports).expect("report serialization");
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, json + "\n") {
                eprintln!("error: writing {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => println!("{json}"),
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_verify_table(scope: ScopeArg, workers: usize) -> ExitCode {
    let mut failures = 0;
    let print = |row: &VerifyRow| {
        println!(
            "{:<6} {:<14} {}",
            if row.ok { "ok" } else { "FAIL" },
            row.name,
            row.kind
        );
        for d in &row.details {
            println!("       {d}");
        }
    };
    for name in entry_names() {
        let entry = match lookup(name) {
            Ok(e) => e,
            Err(code) => return code,
        };
        let row = if entry.plane.is_some() {
            verify_plane_entry(&entry, workers)
        } else if expects_no_graph(name).unwrap_or(false) {
            verify_nonexistence_entry(&entry)
        } else {
            verify_expectation_entry(&entry)
        };
        match row {
            Ok(row) => {
                if !row.ok {
                    failures += 1;
                }
                print(&row);
            }
            Err(e) => {
                eprintln!("error: {name}: {e:#}");
                return ExitCode::from(1);
            }
        }
    }
    if matches!(scope, ScopeArg::All) {
        // large full-graph builds excluded from the fast scope: the
        // largest-valency class of each big Mathieu entry
        for (name, edges) in [("M23", 1_700_160u128), ("M24", 10_200_960)] {
            let entry = match lookup(name) {
                Ok(e) => e,
                Err(code) => return code,
            };
            let row = match flagforge::report::build_largest_class_graph(&entry, workers) {
                Ok((_, cls, graph)) => {
                    let mut details = Vec::new();
                    if graph.edge_count() != edges {
                        details.push(format!(
                            "{name}: edge count {} != expected {edges}",
                            graph.edge_count()
                        ));
                    }
                    let cert = flagforge::flagcalc::verify_symmetric(&entry, &cls, &graph);
                    details.extend(cert.violations);
                    VerifyRow {
                        name: format!("{name} (full)"),
                        kind: "full-build".to_string(),
                        ok: details.is_empty(),
                        details,
                    }
                }
                Err(e) => VerifyRow {
                    name: format!("{name} (full)"),
                    kind: "full-build".to_string(),
                    ok: false,
                    details: vec![format!("{e:#}")],
                },
            };
            if !row.ok {
                failures += 1;
            }
            print(&row);
        }
    }
    println!(
        "{} verified, {} failure(s)",
        entry_names().len(),
        failures
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_export(
    name: &str,
    class: usize,
    format: FormatArg,
    out: &PathBuf,
    workers: usize,
) -> ExitCode {
    let entry = match lookup(name) {
        Ok(e) => e,
        Err(code) => return code,
    };
    let format = match format {
        FormatArg::EdgeList => ExportFormat::EdgeList,
        FormatArg::Graph6 => ExportFormat::Graph6,
    };
    match export_graph(&entry, class, format, out, workers) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Catalog => cmd_catalog(),
        Cmd::Analyze {
            entries,
            mode,
            workers,
            out,
        } => cmd_analyze(&entries, mode, workers, out.as_ref()),
        Cmd::VerifyTable { scope, workers } => cmd_verify_table(scope, workers),
        Cmd::Export {
            entry,
            class,
            format,
            out,
            workers,
        } => cmd_export(&entry, class, format, &out, workers),
    }
}
