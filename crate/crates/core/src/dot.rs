//! Deterministic DOT emission. Node and edge order follow the structures'
//! internal (id-sorted) order, so equal inputs produce byte-identical output.

use std::fmt::Write;

use crate::coding::CodingGraph;
use crate::sync::PairGraph;
use crate::transducer::Transducer;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Coding graph: vertex boxes `e | mu / kappa` (a vertex id in the kappa slot
/// when the tail is empty), edge labels `L=<label> d=<degree>`.
pub fn coding_graph_dot(cg: &CodingGraph) -> String {
    let g = cg.graph();
    let mut out = String::new();
    out.push_str("digraph coding {\n");
    out.push_str("  rankdir=LR;\n  node [shape=record];\n");
    for (i, v) in cg.vertices().iter().enumerate() {
        let kappa = if v.kappa.is_empty() {
            g.vertex_id(v.kappa.source()).to_owned()
        } else {
            g.path_string(&v.kappa)
        };
        let label = format!(
            "{} | {} / {}",
            g.edge_id(v.e),
            g.path_string(&v.mu),
            kappa
        );
        writeln!(out, "  n{} [label=\"{}\"];", i, escape(&label)).unwrap();
    }
    for e in cg.edges() {
        let label = format!("L={} d={}", e.label.display(g), e.label.degree());
        writeln!(out, "  n{} -> n{} [label=\"{}\"];", e.src, e.dst, escape(&label)).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Transducer: one node per state, edge label `a / w` with empty output shown
/// as an epsilon.
pub fn transducer_dot(t: &Transducer) -> String {
    let mut out = String::new();
    out.push_str("digraph transducer {\n");
    out.push_str("  rankdir=LR;\n");
    for (i, name) in t.states().iter().enumerate() {
        let mark = if i == t.initial() {
            ", penwidth=2"
        } else {
            ""
        };
        writeln!(out, "  s{} [label=\"{}\"{}];", i, escape(name), mark).unwrap();
    }
    for s in 0..t.states().len() {
        if s == t.sink() {
            continue;
        }
        for (a, letter) in t.input_alphabet().iter().enumerate() {
            let (next, word) = t.transition(s, a);
            if next == t.sink() {
                continue;
            }
            let emitted = if word.is_empty() {
                "\u{03b5}".to_owned()
            } else {
                word.iter()
                    .map(|&i| t.output_alphabet()[i].as_str())
                    .collect::<Vec<_>>()
                    .join("")
            };
            let label = format!("{} / {}", letter, emitted);
            writeln!(out, "  s{} -> s{} [label=\"{}\"];", s, next, escape(&label)).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// Pair graph over a coding graph's vertex names.
pub fn pair_graph_dot(cg: &CodingGraph, pg: &PairGraph) -> String {
    let mut out = String::new();
    out.push_str("digraph pairs {\n");
    for (i, &(x, y)) in pg.vertices.iter().enumerate() {
        let label = format!("{{{}, {}}}", cg.describe_vertex(x), cg.describe_vertex(y));
        writeln!(out, "  p{} [label=\"{}\"];", i, escape(&label)).unwrap();
    }
    for e in &pg.edges {
        writeln!(out, "  p{} -> p{};", e.src, e.dst).unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{o2, shared};
    use crate::sync::PairGraph;
    use crate::unitary::PairSet;

    #[test]
    fn intro_dot_is_deterministic_and_complete() {
        let g = shared(o2());
        let ps = PairSet::build(
            g.clone(),
            vec![
                (g.path(&["1"]).unwrap(), g.path(&["2", "2"]).unwrap()),
                (g.path(&["2", "1"]).unwrap(), g.path(&["2", "1"]).unwrap()),
                (g.path(&["2", "2"]).unwrap(), g.path(&["1"]).unwrap()),
            ],
        )
        .unwrap();
        let cg = crate::coding::CodingGraph::build(&ps);
        let a = coding_graph_dot(&cg);
        let b = coding_graph_dot(&crate::coding::CodingGraph::build(&ps));
        assert_eq!(a, b);
        assert_eq!(a.matches(" -> ").count(), 6);
        assert_eq!(a.matches("[label=").count(), 3 + 6);
        assert!(a.contains("L=P_v d=0"));

        let pg = PairGraph::build(&cg);
        let dot = pair_graph_dot(&cg, &pg);
        assert!(dot.starts_with("digraph pairs"));
    }

    #[test]
    fn negative_edges_render_with_their_degrees() {
        let g = shared(o2());
        let ps = PairSet::build(
            g.clone(),
            vec![
                (g.path(&["1", "2", "2"]).unwrap(), g.path(&["1", "2", "2"]).unwrap()),
                (g.path(&["1", "1"]).unwrap(), g.path(&["1", "2", "1"]).unwrap()),
                (g.path(&["1", "2", "1"]).unwrap(), g.path(&["1", "1"]).unwrap()),
                (g.path(&["2"]).unwrap(), g.path(&["2"]).unwrap()),
            ],
        )
        .unwrap();
        let dot = coding_graph_dot(&crate::coding::CodingGraph::build(&ps));
        assert!(dot.contains("L=S_1* d=-1"));
        assert!(dot.contains("L=S_2* d=-1"));
    }
}
