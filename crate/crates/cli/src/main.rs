//! `wgraph`: decide whether a product of creation/annihilation operators on
//! a graph is a vertex projection.
//!
//! Words are read left to right and `w1 w2` is admissible when `w1` ends
//! where `w2` starts. As operators, the rightmost letter acts first.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use wgraph_core::verify::{random_graphs, verify, Bounds, Report};
use wgraph_core::{lattice_path, normal_form, DirectedGraph, ExportFormat, OperatorWord};

use wgraph_cli::verdict::{Verdict, EXIT_NOT_PROJECTION, EXIT_PARSE};

/// Projection checks for operator words over a directed graph.
///
/// Graph files hold `vertex <id>` and `edge <id> <source> <range>` lines.
/// Word literals are whitespace-separated letters; a letter is a vertex id
/// or a dot-joined path such as `e1.e2`, with a trailing `*` for the
/// adjoint. Composition is left to right: `e1.e2` walks e1 then e2.
#[derive(Parser)]
#[command(name = "wgraph", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a word is a vertex projection (exit 0 yes, 1 no,
    /// 2 parse error, 3 if the methods disagree).
    Check {
        graph: PathBuf,
        /// Word literal, e.g. `e* e`. Several arguments are joined.
        #[arg(required = true, num_args = 1..)]
        word: Vec<String>,
        /// Print a JSON document instead of text.
        #[arg(long)]
        json: bool,
        /// Also evaluate on the Fock space truncated at this length.
        #[arg(long, value_name = "N")]
        fock: Option<usize>,
    },
    /// Print the normal form of a word in the free groupoid.
    Reduce {
        graph: PathBuf,
        #[arg(required = true, num_args = 1..)]
        word: Vec<String>,
    },
    /// Export the lattice path of a word.
    Lattice {
        graph: PathBuf,
        #[arg(required = true, num_args = 1..)]
        word: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Write the export here; without it the export goes to stdout and
        /// the verdict to stderr.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every word within the bounds against all three methods.
    Verify {
        /// Graph file; omit to run seeded random graphs instead.
        graph: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        max_word_len: usize,
        #[arg(long, default_value_t = 2)]
        max_letter_len: usize,
        #[arg(long, default_value_t = 6)]
        fock_len: usize,
        /// Random rewrite orders per shadow word.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Number of random graphs when no graph file is given.
        #[arg(long, default_value_t = 20)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Graph file utilities.
    Graph {
        #[command(subcommand)]
        command: GraphCommand,
    },
}

#[derive(Subcommand)]
enum GraphCommand {
    /// Parse a graph file and print its canonical form.
    Validate { graph: PathBuf },
    /// Print the shadow graph (every edge reversed).
    Shadow { graph: PathBuf },
    /// Print the graph together with its shadow edges.
    Shadowed { graph: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Svg,
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_PARSE)
}

fn load_graph(path: &Path) -> Result<DirectedGraph, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    DirectedGraph::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load(path: &Path, word: &[String]) -> Result<(DirectedGraph, OperatorWord), String> {
    let graph = load_graph(path)?;
    let word = OperatorWord::parse(&graph, &word.join(" ")).map_err(|e| format!("word: {e}"))?;
    Ok((graph, word))
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Check {
            graph,
            word,
            json,
            fock,
        } => {
            let (graph, word) = match load(&graph, &word) {
                Ok(loaded) => loaded,
                Err(e) => return fail(e),
            };
            let verdict = match Verdict::compute(&graph, &word, fock) {
                Ok(v) => v,
                Err(e) => return fail(e),
            };
            if json {
                println!("{}", verdict.to_json(&graph));
            } else {
                print!("{}", verdict.to_text(&graph));
            }
            if !verdict.agreement() {
                eprintln!("error: lattice and groupoid methods disagree");
            }
            ExitCode::from(verdict.exit_code())
        }
        Command::Reduce { graph, word } => match load(&graph, &word) {
            Ok((graph, word)) => {
                println!("{}", normal_form(&graph, &word).render(&graph));
                ExitCode::SUCCESS
            }
            Err(e) => fail(e),
        },
        Command::Lattice {
            graph,
            word,
            format,
            out,
        } => {
            let (graph, word) = match load(&graph, &word) {
                Ok(loaded) => loaded,
                Err(e) => return fail(e),
            };
            let path = lattice_path(&graph, &word);
            let format = match format {
                Format::Csv => ExportFormat::Csv,
                Format::Svg => ExportFormat::Svg,
            };
            let verdict = format!(
                "*-axis property: {}",
                if path.has_star_axis_property() { "yes" } else { "no" }
            );
            match out {
                Some(out) => {
                    if let Err(e) = fs::write(&out, path.export(format)) {
                        return fail(format!("{}: {e}", out.display()));
                    }
                    println!("{verdict}");
                }
                None => {
                    print!("{}", path.export(format));
                    eprintln!("{verdict}");
                }
            }
            ExitCode::SUCCESS
        }
        Command::Verify {
            graph,
            max_word_len,
            max_letter_len,
            fock_len,
            trials,
            random,
            seed,
        } => {
            let bounds = Bounds {
                max_word_len,
                max_letter_len,
                fock_len,
                confluence_trials: trials,
                ..Bounds::default()
            };
            let graphs = match graph {
                Some(path) => match load_graph(&path) {
                    Ok(g) => vec![(path.display().to_string(), g)],
                    Err(e) => return fail(e),
                },
                None => random_graphs(seed, random)
                    .into_iter()
                    .enumerate()
                    .map(|(i, g)| (format!("random graph {i} (seed {seed})"), g))
                    .collect(),
            };
            run_verify(&graphs, bounds, seed)
        }
        Command::Graph { command } => {
            let (path, transform): (PathBuf, fn(&DirectedGraph) -> wgraph_core::Result<DirectedGraph>) =
                match command {
                    GraphCommand::Validate { graph } => (graph, |g| Ok(g.clone())),
                    GraphCommand::Shadow { graph } => (graph, DirectedGraph::shadow),
                    GraphCommand::Shadowed { graph } => (graph, DirectedGraph::shadowed),
                };
            match load_graph(&path).and_then(|g| transform(&g).map_err(|e| e.to_string())) {
                Ok(g) => {
                    print!("{}", g.serialize());
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            }
        }
    }
}

fn run_verify(graphs: &[(String, DirectedGraph)], bounds: Bounds, seed: u64) -> ExitCode {
    let mut total = Report::default();
    let mut failing = Vec::new();
    for (name, graph) in graphs {
        let report = match verify(graph, bounds, seed) {
            Ok(r) => r,
            Err(e) => return fail(e),
        };
        println!("== {name}");
        for line in graph.serialize().lines() {
            println!("   {line}");
        }
        print!("{report}");
        if !report.is_clean() {
            failing.push(name.as_str());
        }
        total.words_checked += report.words_checked;
        total.projections += report.projections;
        total.zeros += report.zeros;
        for (k, v) in report.counts {
            *total.counts.entry(k).or_insert(0) += v;
        }
    }
    if graphs.len() > 1 {
        println!(
            "== total: {} graphs, {} words, {} projections, {} zeros, {} violations",
            graphs.len(),
            total.words_checked,
            total.projections,
            total.zeros,
            total.violations()
        );
        for name in &failing {
            println!("   failing: {name}");
        }
    }
    if total.is_clean() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_NOT_PROJECTION)
    }
}
