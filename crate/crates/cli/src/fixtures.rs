//! Bundled example inputs with their expected artifacts.

/// A named graph + unitary pair with frozen expectations.
pub struct Fixture {
    pub name: &'static str,
    pub graph_json: &'static str,
    pub unitary_json: &'static str,
    pub expected: Expected,
}

/// An eventually periodic word literal: (prefix letters, period letters).
pub type WordLit = (&'static [&'static str], &'static [&'static str]);

/// What a fixture's pipeline must produce.
pub struct Expected {
    /// Vertex and edge counts of the original coding graph.
    pub coding_vertices: usize,
    pub coding_edges: usize,
    /// Classification of the original coding graph.
    pub classification: &'static str,
    /// Number of splitting rounds until the algorithm stops.
    pub splits: usize,
    /// Final verdict name.
    pub verdict: &'static str,
    /// Minimal synchronization delay for Auto verdicts.
    pub delay: Option<usize>,
    /// Whether the even-degree obstruction fires (when checked).
    pub obstruction_fires: Option<bool>,
    /// Onto-oracle spot check: (path edge ids, depth, expected in-image).
    pub oracle: Option<(&'static [&'static str], usize, bool)>,
    /// Induced-map samples as input/output word pairs.
    pub psi: &'static [(WordLit, WordLit)],
}

const O2_GRAPH: &str = r#"{"vertices":["v"],"edges":[
  {"id":"1","src":"v","dst":"v"},
  {"id":"2","src":"v","dst":"v"}]}"#;

const F_GRAPH: &str = r#"{"vertices":["v","w"],"edges":[
  {"id":"e1","src":"v","dst":"v"},
  {"id":"e2","src":"v","dst":"w"},
  {"id":"e3","src":"w","dst":"v"}]}"#;

pub fn all() -> Vec<Fixture> {
    vec![
        Fixture {
            name: "intro",
            graph_json: O2_GRAPH,
            unitary_json: r#"{"pairs":[
              {"mu":{"anchor":"v","edges":["1"]},"nu":{"anchor":"v","edges":["2","2"]}},
              {"mu":{"anchor":"v","edges":["2","1"]},"nu":{"anchor":"v","edges":["2","1"]}},
              {"mu":{"anchor":"v","edges":["2","2"]},"nu":{"anchor":"v","edges":["1"]}}]}"#,
            expected: Expected {
                coding_vertices: 3,
                coding_edges: 6,
                classification: "all_non_negative",
                splits: 0,
                verdict: "not_auto_not_synchronizing",
                delay: None,
                obstruction_fires: None,
                oracle: None,
                psi: &[],
            },
        },
        Fixture {
            name: "ex1",
            graph_json: O2_GRAPH,
            unitary_json: r#"{"pairs":[
              {"mu":{"anchor":"v","edges":["1","1","1"]},"nu":{"anchor":"v","edges":["1","1","1"]}},
              {"mu":{"anchor":"v","edges":["1","2"]},"nu":{"anchor":"v","edges":["2","1","1"]}},
              {"mu":{"anchor":"v","edges":["1","1","2","1"]},"nu":{"anchor":"v","edges":["1","1","2"]}},
              {"mu":{"anchor":"v","edges":["2","1"]},"nu":{"anchor":"v","edges":["2","1","2"]}},
              {"mu":{"anchor":"v","edges":["1","1","2","2"]},"nu":{"anchor":"v","edges":["1","2"]}},
              {"mu":{"anchor":"v","edges":["2","2"]},"nu":{"anchor":"v","edges":["2","2"]}}]}"#,
            expected: Expected {
                coding_vertices: 6,
                coding_edges: 12,
                classification: "all_non_negative",
                splits: 0,
                verdict: "auto",
                delay: Some(2),
                obstruction_fires: Some(false),
                oracle: Some((&["1", "1"], 6, true)),
                // The presented unitary is u Phi(u*) for the inner
                // automorphism Ad(u); its induced map acts by the prefix
                // substitutions 1x -> 11x, 21x -> 12x, 22x -> 2x. Values
                // cross-checked against the finite-certificate oracle.
                psi: &[
                    ((&[], &["1"]), (&[], &["1"])),
                    ((&[], &["2"]), (&[], &["2"])),
                    ((&[], &["1", "2"]), (&["1"], &["1", "2"])),
                    ((&[], &["2", "1"]), (&["1", "2"], &["2", "1"])),
                ],
            },
        },
        Fixture {
            name: "ex2",
            graph_json: O2_GRAPH,
            unitary_json: r#"{"pairs":[
              {"mu":{"anchor":"v","edges":["1","2","2"]},"nu":{"anchor":"v","edges":["1","2","2"]}},
              {"mu":{"anchor":"v","edges":["1","1"]},"nu":{"anchor":"v","edges":["1","2","1"]}},
              {"mu":{"anchor":"v","edges":["1","2","1"]},"nu":{"anchor":"v","edges":["1","1"]}},
              {"mu":{"anchor":"v","edges":["2"]},"nu":{"anchor":"v","edges":["2"]}}]}"#,
            expected: Expected {
                coding_vertices: 4,
                coding_edges: 9,
                classification: "has_negative_edges",
                splits: 1,
                verdict: "auto",
                delay: Some(2),
                obstruction_fires: Some(false),
                oracle: None,
                psi: &[
                    ((&[], &["1", "1", "2"]), (&[], &["1", "2", "1"])),
                    ((&[], &["1", "2", "1"]), (&[], &["1", "1", "2"])),
                ],
            },
        },
        Fixture {
            name: "ex3",
            graph_json: F_GRAPH,
            unitary_json: r#"{"pairs":[
              {"mu":{"anchor":"v","edges":["e1","e1"]},"nu":{"anchor":"v","edges":["e1"]}},
              {"mu":{"anchor":"v","edges":["e2","e3"]},"nu":{"anchor":"v","edges":["e2","e3","e1"]}},
              {"mu":{"anchor":"v","edges":["e1","e2"]},"nu":{"anchor":"v","edges":["e2","e3","e2"]}},
              {"mu":{"anchor":"w","edges":["e3","e1"]},"nu":{"anchor":"w","edges":["e3","e1","e1"]}},
              {"mu":{"anchor":"w","edges":["e3","e2","e3","e1"]},"nu":{"anchor":"w","edges":["e3","e2","e3"]}},
              {"mu":{"anchor":"w","edges":["e3","e2","e3","e2"]},"nu":{"anchor":"w","edges":["e3","e1","e2"]}}]}"#,
            expected: Expected {
                coding_vertices: 6,
                coding_edges: 9,
                classification: "all_non_negative",
                splits: 0,
                verdict: "auto",
                delay: Some(3),
                obstruction_fires: Some(true),
                oracle: Some((&["e1"], 6, true)),
                // Values generated by the machines and frozen after passing
                // the finite-certificate oracle.
                psi: &[
                    ((&[], &["e1"]), (&[], &["e1"])),
                    ((&[], &["e2", "e3"]), (&["e1"], &["e2", "e3"])),
                    ((&[], &["e3", "e2"]), (&[], &["e3", "e2"])),
                ],
            },
        },
        Fixture {
            name: "nonpos",
            graph_json: O2_GRAPH,
            unitary_json: r#"{"pairs":[
              {"mu":{"anchor":"v","edges":["1"]},"nu":{"anchor":"v","edges":["2","1"]}},
              {"mu":{"anchor":"v","edges":["2","1"]},"nu":{"anchor":"v","edges":["2","2"]}},
              {"mu":{"anchor":"v","edges":["2","2"]},"nu":{"anchor":"v","edges":["1"]}}]}"#,
            expected: Expected {
                coding_vertices: 3,
                coding_edges: 6,
                classification: "has_non_positive_cycle",
                splits: 0,
                verdict: "not_auto_nonpositive_cycle",
                delay: None,
                obstruction_fires: None,
                oracle: Some((&["1", "1"], 6, false)),
                psi: &[],
            },
        },
    ]
}

pub fn by_name(name: &str) -> Option<Fixture> {
    all().into_iter().find(|f| f.name == name)
}
