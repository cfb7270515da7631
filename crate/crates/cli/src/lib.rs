//! Library side of the command-line front end: bundled fixtures, the fixture
//! runner, and exit-code policy.

pub mod fixtures;

use std::sync::Arc;

use graphalg_core::coding::CodingGraph;
use graphalg_core::error::Error;
use graphalg_core::graph::SharedGraph;
use graphalg_core::json::{GraphJson, UnitaryJson};
use graphalg_core::splitting::DEFAULT_SPLIT_FUEL;
use graphalg_core::sync::{diagonal_onto_oracle, even_degree_obstruction, OntoOracle};
use graphalg_core::transducer::{psi_machine, EventuallyPeriodicWord};
use graphalg_core::unitary::PairSet;

/// Exit-code policy: 0 success, 1 mathematically negative verdict, 2 input or
/// precondition problem, 3 internal guard (fuel, broken invariant).
pub fn exit_code(e: &Error) -> i32 {
    if e.is_internal() {
        3
    } else if e.is_math_negative() {
        1
    } else {
        2
    }
}

/// Fuel resolution: explicit flag, then the `GRAPHALG_FUEL` environment
/// variable, then the library default.
pub fn resolve_fuel(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("GRAPHALG_FUEL")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(DEFAULT_SPLIT_FUEL)
}

/// Result of running one fixture's pipeline against its expectations.
pub struct FixtureReport {
    pub name: String,
    pub lines: Vec<String>,
    pub failures: Vec<String>,
}

impl FixtureReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn load_fixture(f: &fixtures::Fixture) -> Result<(SharedGraph, PairSet), Error> {
    let gj: GraphJson = serde_json::from_str(f.graph_json)
        .map_err(|e| Error::Parse(format!("fixture graph: {e}")))?;
    let g = Arc::new(gj.to_graph()?);
    let uj: UnitaryJson = serde_json::from_str(f.unitary_json)
        .map_err(|e| Error::Parse(format!("fixture unitary: {e}")))?;
    let ps = uj.to_pair_set(&g)?;
    Ok((g, ps))
}

/// Runs a fixture end to end and compares every frozen expectation.
pub fn run_fixture(f: &fixtures::Fixture, psi_involution_samples: u64) -> FixtureReport {
    run_fixture_with(f, psi_involution_samples, None)
}

/// Like [`run_fixture`], with an optional depth override for the onto-oracle
/// spot checks.
pub fn run_fixture_with(
    f: &fixtures::Fixture,
    psi_involution_samples: u64,
    oracle_depth: Option<usize>,
) -> FixtureReport {
    let mut lines = Vec::new();
    let mut failures = Vec::new();
    let mut check = |what: &str, ok: bool, detail: String| {
        lines.push(format!(
            "  {} {}: {}",
            if ok { "ok" } else { "FAIL" },
            what,
            detail
        ));
        if !ok {
            failures.push(format!("{what}: {detail}"));
        }
    };

    let (g, ps) = match load_fixture(f) {
        Ok(x) => x,
        Err(e) => {
            return FixtureReport {
                name: f.name.to_owned(),
                lines,
                failures: vec![format!("load: {e}")],
            }
        }
    };

    let cg = CodingGraph::build(&ps);
    check(
        "coding graph",
        cg.vertices().len() == f.expected.coding_vertices
            && cg.edges().len() == f.expected.coding_edges,
        format!(
            "{} vertices, {} edges (expected {}, {})",
            cg.vertices().len(),
            cg.edges().len(),
            f.expected.coding_vertices,
            f.expected.coding_edges
        ),
    );
    check(
        "classification",
        cg.classify().name() == f.expected.classification,
        format!("{} (expected {})", cg.classify().name(), f.expected.classification),
    );

    let verdict = match graphalg_core::sync::diagonal_verdict(&ps) {
        Ok(v) => v,
        Err(e) => {
            failures.push(format!("verdict: {e}"));
            return FixtureReport {
                name: f.name.to_owned(),
                lines,
                failures,
            };
        }
    };
    check(
        "splits",
        verdict.trace().len() == f.expected.splits,
        format!("{} (expected {})", verdict.trace().len(), f.expected.splits),
    );
    check(
        "verdict",
        verdict.outcome_name() == f.expected.verdict,
        format!("{} (expected {})", verdict.outcome_name(), f.expected.verdict),
    );
    check(
        "delay",
        verdict.delay() == f.expected.delay,
        format!("{:?} (expected {:?})", verdict.delay(), f.expected.delay),
    );

    if let Some(expected_fires) = f.expected.obstruction_fires {
        match even_degree_obstruction(&ps) {
            Ok(report) => check(
                "even-degree obstruction",
                report.fires == expected_fires,
                format!("fires = {} (expected {})", report.fires, expected_fires),
            ),
            Err(e) => check("even-degree obstruction", false, format!("{e}")),
        }
    }

    if let Some((path_ids, default_depth, in_image)) = f.expected.oracle {
        let depth = oracle_depth.unwrap_or(default_depth);
        let run = || -> Result<OntoOracle, Error> {
            let mu = g.path(path_ids)?;
            diagonal_onto_oracle(&ps, &mu, depth)
        };
        match run() {
            Ok(answer) => {
                let got = answer == OntoOracle::InImage;
                check(
                    "onto oracle",
                    got == in_image,
                    format!(
                        "P_{} at depth {depth}: in image = {got} (expected {in_image})",
                        path_ids.join("")
                    ),
                );
            }
            Err(e) => check("onto oracle", false, format!("{e}")),
        }
    }

    if (!f.expected.psi.is_empty() || psi_involution_samples > 0) && verdict.is_auto() {
        match psi_machine(&ps) {
            Ok(machine) => {
                for ((ip, iq), (op, oq)) in f.expected.psi {
                    let input = word(ip, iq);
                    let expected = word(op, oq);
                    match machine.psi(&input) {
                        Ok(out) => check(
                            "psi",
                            out == expected,
                            format!("psi({input}) = {out} (expected {expected})"),
                        ),
                        Err(e) => check("psi", false, format!("psi({input}): {e}")),
                    }
                }
                // Order-two spot check only applies to the involutive
                // example; for the others just check psi is defined on
                // random words.
                if psi_involution_samples > 0 && f.name == "ex2" {
                    let mut ok = true;
                    let mut detail = String::new();
                    for seed in 0..psi_involution_samples {
                        let w = random_word(&g, seed);
                        let once = match machine.psi(&w) {
                            Ok(x) => x,
                            Err(e) => {
                                ok = false;
                                detail = format!("psi({w}): {e}");
                                break;
                            }
                        };
                        let twice = match machine.psi(&once) {
                            Ok(x) => x,
                            Err(e) => {
                                ok = false;
                                detail = format!("psi({once}): {e}");
                                break;
                            }
                        };
                        if twice != w {
                            ok = false;
                            detail = format!("psi^2({w}) = {twice}");
                            break;
                        }
                    }
                    check(
                        "psi order two",
                        ok,
                        if ok {
                            format!("{psi_involution_samples} seeded words")
                        } else {
                            detail
                        },
                    );
                }
            }
            Err(e) => check("psi machine", false, format!("{e}")),
        }
    }

    FixtureReport {
        name: f.name.to_owned(),
        lines,
        failures,
    }
}

fn word(prefix: &[&str], period: &[&str]) -> EventuallyPeriodicWord {
    EventuallyPeriodicWord::new(
        prefix.iter().map(|s| s.to_string()).collect(),
        period.iter().map(|s| s.to_string()).collect(),
    )
    .expect("fixture words are well-formed")
}

/// Seeded random eventually periodic word that is a genuine infinite path: a
/// short random prefix followed by a random walk closed up into a cycle via a
/// shortest return path.
pub fn random_word(g: &SharedGraph, seed: u64) -> EventuallyPeriodicWord {
    // A deterministic linear-congruential stream keeps this crate free of rand.
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut next = |bound: usize| -> usize {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        ((state >> 33) as usize) % bound
    };

    let start = next(g.vertex_count());
    let mut at = start;
    let mut prefix = Vec::new();
    for _ in 0..next(4) {
        let outs = g.out_edges(at);
        let e = outs[next(outs.len())];
        prefix.push(g.edge_id(e).to_owned());
        at = g.range(e);
    }
    let loop_start = at;
    let mut period = Vec::new();
    for _ in 0..next(4) {
        let outs = g.out_edges(at);
        let e = outs[next(outs.len())];
        period.push(g.edge_id(e).to_owned());
        at = g.range(e);
    }
    for e in shortest_return(g, at, loop_start) {
        period.push(g.edge_id(e).to_owned());
    }
    if period.is_empty() {
        // Zero-length walk that already sat on its start: take any cycle.
        for e in shortest_cycle(g, loop_start) {
            period.push(g.edge_id(e).to_owned());
        }
    }
    EventuallyPeriodicWord::new(prefix, period).expect("closed walks are nonempty")
}

/// BFS edge path from `from` to `to`; empty when `from == to`.
fn shortest_return(g: &SharedGraph, from: usize, to: usize) -> Vec<usize> {
    if from == to {
        return Vec::new();
    }
    let mut back: Vec<Option<usize>> = vec![None; g.vertex_count()];
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for &e in g.out_edges(v) {
            let w = g.range(e);
            if w != from && back[w].is_none() {
                back[w] = Some(e);
                queue.push_back(w);
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = to;
    while cur != from {
        let e = back[cur].expect("fixture graphs are strongly connected");
        path.push(e);
        cur = g.source(e);
    }
    path.reverse();
    path
}

fn shortest_cycle(g: &SharedGraph, v: usize) -> Vec<usize> {
    let first = g.out_edges(v)[0];
    let mut cycle = vec![first];
    cycle.extend(shortest_return(g, g.range(first), v));
    cycle
}
