use std::fs;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};

use graphalg_cli::{exit_code, fixtures, resolve_fuel};
use graphalg_core::coding::CodingGraph;
use graphalg_core::dot;
use graphalg_core::error::{Error, Result};
use graphalg_core::graph::SharedGraph;
use graphalg_core::json::{
    ElementJson, GraphJson, TraceRoundJson, UnitaryJson, VerdictJson,
};
use graphalg_core::splitting::{run_splitting_algorithm_with, TieBreak};
use graphalg_core::sync::diagonal_verdict_with;
use graphalg_core::transducer::{psi_machine, EventuallyPeriodicWord};
use graphalg_core::unitary::PairSet;

/// Symbolic toolkit for polynomial endomorphisms of graph algebras: coding
/// graphs, the diagonal-automorphism verdict, and path-space transducers.
#[derive(Parser)]
#[command(name = "graphalg", version, about)]
struct Cli {
    /// Round cap for the splitting algorithm (overrides GRAPHALG_FUEL).
    #[arg(long, global = true)]
    fuel: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the standing assumptions on a graph file.
    Validate { graph: String },
    /// Polynomial-unitary presentations.
    Unitary {
        #[command(subcommand)]
        cmd: UnitaryCmd,
    },
    /// Coding graphs.
    Coding {
        #[command(subcommand)]
        cmd: CodingCmd,
    },
    /// The splitting algorithm.
    Split {
        #[command(subcommand)]
        cmd: SplitCmd,
    },
    /// Decide whether the endomorphism restricts to a diagonal automorphism.
    Verdict { graph: String, unitary: String },
    /// The induced endomorphism.
    Endo {
        #[command(subcommand)]
        cmd: EndoCmd,
    },
    /// The induced path-space map.
    Psi {
        #[command(subcommand)]
        cmd: PsiCmd,
    },
    /// Transducer synthesis.
    Transducer {
        #[command(subcommand)]
        cmd: TransducerCmd,
    },
    /// Bundled examples.
    Examples {
        #[command(subcommand)]
        cmd: ExamplesCmd,
    },
}

#[derive(Subcommand)]
enum UnitaryCmd {
    /// Validate a pair-set presentation and check unitarity.
    Check {
        graph: String,
        unitary: String,
        /// Expand vertex-length second components into their one-edge
        /// extensions before validating.
        #[arg(long)]
        expand_vertex_pairs: bool,
    },
}

#[derive(Subcommand)]
enum CodingCmd {
    /// Build the coding graph and report its shape.
    Build {
        graph: String,
        unitary: String,
        /// Write a DOT rendering to this file.
        #[arg(long)]
        dot: Option<String>,
    },
}

#[derive(Subcommand)]
enum SplitCmd {
    /// Run the splitting algorithm to its stopping condition.
    Run {
        graph: String,
        unitary: String,
        /// Write the round-by-round trace as JSON lines to this file.
        #[arg(long)]
        trace: Option<String>,
    },
}

#[derive(Subcommand)]
enum EndoCmd {
    /// Compute the image of a path isometry, via both the coding graph and
    /// the algebraic formula (the two must agree).
    Image {
        graph: String,
        unitary: String,
        /// Comma-separated edge ids of the path.
        #[arg(long)]
        path: String,
    },
}

#[derive(Subcommand)]
enum PsiCmd {
    /// Evaluate the induced map on an eventually periodic path.
    Eval {
        graph: String,
        unitary: String,
        /// Comma-separated edge ids (may be empty).
        #[arg(long, default_value = "")]
        prefix: String,
        /// Comma-separated edge ids (nonempty).
        #[arg(long)]
        period: String,
    },
}

#[derive(Subcommand)]
enum TransducerCmd {
    /// Build the composite transducer computing the induced map.
    Build {
        graph: String,
        unitary: String,
        /// Write a DOT rendering to this file.
        #[arg(long)]
        dot: Option<String>,
    },
}

#[derive(Subcommand)]
enum ExamplesCmd {
    /// Run a bundled example (or all of them) against its expectations.
    Run {
        /// Fixture name or `all`.
        name: String,
        /// Base seed for the randomized order-two check.
        #[arg(long, default_value_t = 50)]
        seed: u64,
        /// Depth override for onto-oracle spot checks.
        #[arg(long)]
        depth: Option<usize>,
    },
}

fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))
}

fn load(graph: &str, unitary: &str) -> Result<(SharedGraph, PairSet)> {
    graphalg_core::json::load_pair_set(&read(graph)?, &read(unitary)?)
}

fn load_graph(path: &str) -> Result<SharedGraph> {
    let gj: GraphJson = serde_json::from_str(&read(path)?)
        .map_err(|e| Error::Parse(format!("graph JSON: {e}")))?;
    Ok(Arc::new(gj.to_graph()?))
}

fn parse_letters(s: &str) -> Vec<String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::to_owned)
        .collect()
}

fn write_out(path: &Option<String>, contents: &str) -> Result<()> {
    if let Some(path) = path {
        fs::write(path, contents).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    let fuel = resolve_fuel(cli.fuel);
    match cli.command {
        Command::Validate { graph } => {
            let g = load_graph(&graph)?;
            let report = g.validate();
            let payload = serde_json::json!({
                "accepted": report.accepted(),
                "sinks": report.sinks,
                "sources": report.sources,
                "cycle_without_exit": report
                    .cycle_without_exit
                    .as_ref()
                    .map(|p| g.path_string(p)),
            });
            println!("{}", serde_json::to_string_pretty(&payload).unwrap());
            Ok(if report.accepted() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Unitary {
            cmd: UnitaryCmd::Check {
                graph,
                unitary,
                expand_vertex_pairs,
            },
        } => {
            let ps = if expand_vertex_pairs {
                let g = load_graph(&graph)?;
                let uj: UnitaryJson = serde_json::from_str(&read(&unitary)?)
                    .map_err(|e| Error::Parse(format!("unitary JSON: {e}")))?;
                let raw = uj
                    .pairs
                    .iter()
                    .map(|p| Ok((p.mu.to_path(&g)?, p.nu.to_path(&g)?)))
                    .collect::<Result<Vec<_>>>()?;
                PairSet::build_expanding(g, raw)?
            } else {
                load(&graph, &unitary)?.1
            };
            let payload = serde_json::json!({
                "valid": true,
                "pairs": UnitaryJson::from_pair_set(&ps),
                "warnings": ps.warnings(),
            });
            println!("{}", serde_json::to_string_pretty(&payload).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::Coding {
            cmd: CodingCmd::Build { graph, unitary, dot: dot_file },
        } => {
            let (g, ps) = load(&graph, &unitary)?;
            let cg = CodingGraph::build(&ps);
            let edges: Vec<serde_json::Value> = cg
                .edges()
                .iter()
                .map(|e| {
                    serde_json::json!({
                        "from": cg.describe_vertex(e.src),
                        "to": cg.describe_vertex(e.dst),
                        "label": e.label.display(&g),
                        "degree": e.label.degree(),
                    })
                })
                .collect();
            let payload = serde_json::json!({
                "vertices": cg.vertices().len(),
                "edges": edges,
                "classification": cg.classify().name(),
            });
            println!("{}", serde_json::to_string_pretty(&payload).unwrap());
            write_out(&dot_file, &dot::coding_graph_dot(&cg))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Split {
            cmd: SplitCmd::Run { graph, unitary, trace },
        } => {
            let (_, ps) = load(&graph, &unitary)?;
            let out = run_splitting_algorithm_with(&ps, fuel, TieBreak::Lexicographic)?;
            let payload = serde_json::json!({
                "rounds": out.trace.len(),
                "classification": out.classification.name(),
                "pairs": UnitaryJson::from_pair_set(&out.pairs),
            });
            println!("{}", serde_json::to_string_pretty(&payload).unwrap());
            let lines: String = out
                .trace
                .iter()
                .map(|t| serde_json::to_string(&TraceRoundJson::from(t)).unwrap() + "\n")
                .collect();
            write_out(&trace, &lines)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verdict { graph, unitary } => {
            let (_, ps) = load(&graph, &unitary)?;
            let verdict = diagonal_verdict_with(&ps, fuel, TieBreak::Lexicographic)?;
            let payload = VerdictJson::from_verdict(&verdict);
            println!("{}", serde_json::to_string_pretty(&payload).unwrap());
            Ok(if verdict.is_auto() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Endo {
            cmd: EndoCmd::Image { graph, unitary, path },
        } => {
            let (g, ps) = load(&graph, &unitary)?;
            let ids = parse_letters(&path);
            let refs: Vec<&str> = ids.iter().map(|s| s.as_str()).collect();
            let alpha = g.path(&refs)?;
            let cg = CodingGraph::build(&ps);
            let via_graph = cg.image_of_path(&alpha)?;
            let via_lambda = ps.lambda_of_path(&alpha)?;
            if via_graph != via_lambda {
                return Err(Error::Internal(
                    "coding-graph image disagrees with the algebraic formula".into(),
                ));
            }
            let payload = serde_json::json!({
                "path": g.path_string(&alpha),
                "image": ElementJson::from_element(&via_lambda)?,
                "display": format!("{via_lambda}"),
            });
            println!("{}", serde_json::to_string_pretty(&payload).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::Psi {
            cmd: PsiCmd::Eval { graph, unitary, prefix, period },
        } => {
            let (_, ps) = load(&graph, &unitary)?;
            let input = EventuallyPeriodicWord::new(parse_letters(&prefix), parse_letters(&period))?;
            let machine = psi_machine(&ps)?;
            let output = machine.psi(&input)?;
            let payload = serde_json::json!({
                "input": graphalg_core::json::WordJson::from_word(&input),
                "output": graphalg_core::json::WordJson::from_word(&output),
                "display": format!("{output}"),
                "delay": machine.delay(),
            });
            println!("{}", serde_json::to_string_pretty(&payload).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::Transducer {
            cmd: TransducerCmd::Build { graph, unitary, dot: dot_file },
        } => {
            let (_, ps) = load(&graph, &unitary)?;
            let machine = psi_machine(&ps)?;
            let t = machine.composite();
            let payload = serde_json::json!({
                "states": t.states().len(),
                "input_alphabet": t.input_alphabet(),
                "output_alphabet": t.output_alphabet(),
                "delay": machine.delay(),
            });
            println!("{}", serde_json::to_string_pretty(&payload).unwrap());
            write_out(&dot_file, &dot::transducer_dot(t))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Examples {
            cmd: ExamplesCmd::Run { name, seed, depth },
        } => {
            let list = if name == "all" {
                fixtures::all()
            } else {
                match fixtures::by_name(&name) {
                    Some(f) => vec![f],
                    None => {
                        return Err(Error::Parse(format!("unknown fixture `{name}`")));
                    }
                }
            };
            let mut all_ok = true;
            for f in &list {
                let report = graphalg_cli::run_fixture_with(f, seed, depth);
                println!("fixture {}: {}", report.name, if report.passed() { "PASS" } else { "FAIL" });
                for line in &report.lines {
                    println!("{line}");
                }
                all_ok &= report.passed();
            }
            Ok(if all_ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            })
        }
    }
}
