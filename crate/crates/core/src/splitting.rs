//! The splitting move on pair sets and the algorithm that drives a coding
//! graph to either all-non-negative edges or a non-positive cycle.
//!
//! Splitting a pair `(mu, e nu)` replaces it by its one-edge extensions
//! `(mu f, e nu f)` over all edges `f` emitted by `r(mu)`; the presented
//! unitary is unchanged. The algorithm always splits at the destination of a
//! final negative edge of lowest height and terminates by the height/degree
//! bookkeeping of the splitting relations.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coding::{Classification, CodingGraph, CodingVertex};
use crate::error::{Error, Result};
use crate::unitary::PairSet;

/// Default round cap; termination is guaranteed, the cap guards against bugs.
pub const DEFAULT_SPLIT_FUEL: u64 = 10_000;

/// A negative edge followed by a (unique) zero path ending at a vertex that
/// emits only positive edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinalNegativeEdge {
    /// Index of the negative edge in its coding graph.
    pub edge: usize,
    /// Index of the destination vertex.
    pub destination: usize,
    /// Length of the zero path from the edge's range to the destination.
    pub height: usize,
}

/// One round of the splitting trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceRound {
    pub round: usize,
    /// The pair that was split, as display strings.
    pub split_mu: String,
    pub split_nu: String,
    /// Negative-edge count of the graph the split was chosen on.
    pub negative_edges: usize,
    /// Classification of the graph the split was chosen on.
    pub classification: String,
}

/// Result of running the splitting algorithm.
#[derive(Debug, Clone)]
pub struct SplitOutcome {
    pub pairs: PairSet,
    pub graph: CodingGraph,
    pub classification: Classification,
    pub trace: Vec<TraceRound>,
}

/// How to break ties among lowest-height final negative edges.
#[derive(Debug, Clone, Copy)]
pub enum TieBreak {
    /// The lexicographically least destination pair (the default).
    Lexicographic,
    /// A seeded random choice; used to check the verdict does not depend on
    /// the unspecified tie-break choice.
    Seeded(u64),
}

/// Splits `pairs` at the vertex `v` of its coding graph. The vertex must
/// emit only positive edges.
pub fn split_at(cg: &CodingGraph, v: &CodingVertex) -> Result<PairSet> {
    let g = cg.graph().clone();
    let idx = cg
        .vertex_index(&v.mu, &v.nu)
        .ok_or_else(|| Error::VertexNotInPairSet {
            mu: g.path_string(&v.mu),
            nu: g.path_string(&v.nu),
        })?;
    if cg
        .out_edges(idx)
        .iter()
        .any(|&e| cg.edge(e).label.degree() <= 0)
    {
        return Err(Error::SplitAtNonPositiveEmitter {
            mu: g.path_string(&v.mu),
            nu: g.path_string(&v.nu),
        });
    }
    let mut new_pairs: Vec<_> = cg
        .pairs()
        .pairs()
        .iter()
        .filter(|(mu, nu)| !(mu == &v.mu && nu == &v.nu))
        .cloned()
        .collect();
    for &f in g.out_edges(v.mu.range(&g)) {
        new_pairs.push((
            v.mu.extend(&g, f).expect("composable"),
            v.nu.extend(&g, f).expect("composable"),
        ));
    }
    PairSet::build(g, new_pairs)
}

/// All final negative edges of `cg` with their destinations and heights.
/// The zero path out of a non-positive-emitting vertex is unique, so a simple
/// forward walk along degree-0 edges suffices.
pub fn final_negative_edges(cg: &CodingGraph) -> Vec<FinalNegativeEdge> {
    let mut out = Vec::new();
    for (i, edge) in cg.edges().iter().enumerate() {
        if edge.label.degree() >= 0 {
            continue;
        }
        let mut at = edge.dst;
        let mut found = None;
        for height in 0..=cg.vertices().len() {
            let outs = cg.out_edges(at);
            if outs.iter().all(|&e| cg.edge(e).label.degree() > 0) {
                found = Some((at, height));
                break;
            }
            // The vertex emits a non-positive edge, hence exactly that one.
            let e = outs[0];
            if cg.edge(e).label.degree() < 0 {
                break;
            }
            at = cg.edge(e).dst;
        }
        if let Some((destination, height)) = found {
            out.push(FinalNegativeEdge {
                edge: i,
                destination,
                height,
            });
        }
    }
    out
}

/// Runs the splitting algorithm with the default fuel and tie break.
pub fn run_splitting_algorithm(pairs: &PairSet) -> Result<SplitOutcome> {
    run_splitting_algorithm_with(pairs, DEFAULT_SPLIT_FUEL, TieBreak::Lexicographic)
}

/// Runs the splitting algorithm: stop on a non-positive cycle or on an
/// all-non-negative graph, otherwise split at the destination of a
/// lowest-height final negative edge.
pub fn run_splitting_algorithm_with(
    pairs: &PairSet,
    fuel: u64,
    tie: TieBreak,
) -> Result<SplitOutcome> {
    let u = pairs.element();
    let mut rng = match tie {
        TieBreak::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        TieBreak::Lexicographic => None,
    };
    let mut current = pairs.clone();
    let mut trace = Vec::new();
    for round in 0..=fuel {
        let cg = CodingGraph::build(&current);
        let classification = cg.classify();
        match classification {
            Classification::HasNonPositiveCycle(_) | Classification::AllNonNegative => {
                return Ok(SplitOutcome {
                    pairs: current,
                    graph: cg,
                    classification,
                    trace,
                });
            }
            Classification::HasNegativeEdges => {}
        }
        let candidates = final_negative_edges(&cg);
        let lowest = candidates
            .iter()
            .map(|f| f.height)
            .min()
            .ok_or_else(|| {
                Error::Internal(
                    "negative edges without a non-positive cycle admit a final negative edge"
                        .into(),
                )
            })?;
        let mut destinations: Vec<usize> = candidates
            .iter()
            .filter(|f| f.height == lowest)
            .map(|f| f.destination)
            .collect();
        destinations.sort();
        destinations.dedup();
        let dest = match rng.as_mut() {
            Some(rng) => *destinations.choose(rng).expect("nonempty"),
            None => destinations[0],
        };
        let negative_edges = cg
            .edges()
            .iter()
            .filter(|e| e.label.degree() < 0)
            .count();
        let v = cg.vertices()[dest].clone();
        trace.push(TraceRound {
            round: round as usize,
            split_mu: cg.graph().path_string(&v.mu),
            split_nu: cg.graph().path_string(&v.nu),
            negative_edges,
            classification: classification.name().to_owned(),
        });
        current = split_at(&cg, &v)?;
        if current.element() != u {
            return Err(Error::Internal(
                "splitting changed the presented unitary".into(),
            ));
        }
    }
    Err(Error::FuelExhausted("splitting algorithm"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{o2, shared};
    use crate::graph::SharedGraph;

    fn pair_set(g: &SharedGraph, pairs: &[(&[&str], &[&str])]) -> PairSet {
        let pairs = pairs
            .iter()
            .map(|(mu, nu)| (g.path(mu).unwrap(), g.path(nu).unwrap()))
            .collect();
        PairSet::build(g.clone(), pairs).unwrap()
    }

    fn ex2(g: &SharedGraph) -> PairSet {
        pair_set(
            g,
            &[
                (&["1", "2", "2"], &["1", "2", "2"]),
                (&["1", "1"], &["1", "2", "1"]),
                (&["1", "2", "1"], &["1", "1"]),
                (&["2"], &["2"]),
            ],
        )
    }

    #[test]
    fn ex2_final_negative_edges() {
        let g = shared(o2());
        let cg = CodingGraph::build(&ex2(&g));
        let fnes = final_negative_edges(&cg);
        assert_eq!(fnes.len(), 2);
        for f in &fnes {
            assert_eq!(f.height, 0);
            assert_eq!(cg.describe_vertex(f.destination), "(2,2)");
            assert_eq!(cg.edge(f.edge).label.degree(), -1);
        }
    }

    #[test]
    fn ex2_split_at_destination() {
        let g = shared(o2());
        let cg = CodingGraph::build(&ex2(&g));
        let dest = final_negative_edges(&cg)[0].destination;
        let v = cg.vertices()[dest].clone();
        let next = split_at(&cg, &v).unwrap();
        let mus: Vec<String> = next.first_components().map(|p| g.path_string(p)).collect();
        assert_eq!(mus, vec!["11", "121", "122", "21", "22"]);
        assert_eq!(next.element(), ex2(&g).element());
    }

    #[test]
    fn intro_split_at_first_pair() {
        let g = shared(o2());
        let ps = pair_set(
            &g,
            &[(&["1"], &["2", "2"]), (&["2", "1"], &["2", "1"]), (&["2", "2"], &["1"])],
        );
        let cg = CodingGraph::build(&ps);
        let v = cg.vertices()[cg
            .vertex_index(&g.path(&["1"]).unwrap(), &g.path(&["2", "2"]).unwrap())
            .unwrap()]
        .clone();
        let next = split_at(&cg, &v).unwrap();
        let pretty: Vec<(String, String)> = next
            .pairs()
            .iter()
            .map(|(m, n)| (g.path_string(m), g.path_string(n)))
            .collect();
        assert!(pretty.contains(&("11".into(), "221".into())));
        assert!(pretty.contains(&("12".into(), "222".into())));
        assert_eq!(next.len(), 4);
    }

    #[test]
    fn split_rejected_at_non_positive_emitter() {
        let g = shared(o2());
        let ps = pair_set(
            &g,
            &[(&["1"], &["2", "1"]), (&["2", "1"], &["2", "2"]), (&["2", "2"], &["1"])],
        );
        let cg = CodingGraph::build(&ps);
        // (1,21) carries the zero self-loop.
        let v = cg.vertices()[cg
            .vertex_index(&g.path(&["1"]).unwrap(), &g.path(&["2", "1"]).unwrap())
            .unwrap()]
        .clone();
        assert!(matches!(
            split_at(&cg, &v),
            Err(Error::SplitAtNonPositiveEmitter { .. })
        ));
    }

    #[test]
    fn ex2_terminates_in_one_round() {
        let g = shared(o2());
        let out = run_splitting_algorithm(&ex2(&g)).unwrap();
        assert_eq!(out.trace.len(), 1);
        assert!(matches!(out.classification, Classification::AllNonNegative));
        assert_eq!(out.graph.vertices().len(), 5);
        assert_eq!(out.trace[0].negative_edges, 2);
    }

    #[test]
    fn positive_heights_decrease_under_splitting() {
        // A presentation over the double-edge two-vertex graph whose coding
        // graph carries a final negative edge of height 2 (found by seed
        // search; frozen here). The walk to its destination crosses two
        // zero edges, and the bookkeeping check follows the heights down.
        let g = crate::corpus::shared(crate::corpus::two_vertex_double());
        let ps = pair_set(
            &g,
            &[
                (&["p"], &["q", "s", "q"]),
                (&["q", "r", "p", "r"], &["q", "s", "p", "s"]),
                (&["q", "r", "p", "s"], &["q", "s", "p", "r"]),
                (&["q", "r", "q"], &["p"]),
                (&["q", "s"], &["q", "r"]),
                (&["r"], &["r"]),
                (&["s", "p"], &["s", "p"]),
                (&["s", "q"], &["s", "q"]),
            ],
        );
        let cg = CodingGraph::build(&ps);
        let fnes = final_negative_edges(&cg);
        assert_eq!(fnes.iter().map(|f| f.height).max(), Some(2));

        let entry = crate::corpus::CorpusEntry {
            graph: g,
            seed: 375,
            max_len: 5,
            pairs: ps.clone(),
        };
        crate::corpus::check_splitting_bookkeeping(&entry, 10_000).unwrap();
        let out = run_splitting_algorithm(&ps).unwrap();
        assert!(!out.trace.is_empty());
    }

    #[test]
    fn non_positive_cycle_stops_immediately() {
        let g = shared(o2());
        let ps = pair_set(
            &g,
            &[(&["1"], &["2", "1"]), (&["2", "1"], &["2", "2"]), (&["2", "2"], &["1"])],
        );
        let out = run_splitting_algorithm(&ps).unwrap();
        assert!(out.trace.is_empty());
        assert!(matches!(
            out.classification,
            Classification::HasNonPositiveCycle(_)
        ));
    }

    #[test]
    fn all_non_negative_stops_immediately() {
        let g = shared(o2());
        // The ex1 fixture's pair set.
        let ps = pair_set(
            &g,
            &[
                (&["1", "1", "1"], &["1", "1", "1"]),
                (&["1", "2"], &["2", "1", "1"]),
                (&["1", "1", "2", "1"], &["1", "1", "2"]),
                (&["2", "1"], &["2", "1", "2"]),
                (&["1", "1", "2", "2"], &["1", "2"]),
                (&["2", "2"], &["2", "2"]),
            ],
        );
        assert!(final_negative_edges(&CodingGraph::build(&ps)).is_empty());
        let out = run_splitting_algorithm(&ps).unwrap();
        assert!(out.trace.is_empty());
        assert!(matches!(out.classification, Classification::AllNonNegative));
    }
}
