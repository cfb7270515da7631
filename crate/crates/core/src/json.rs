//! The file formats: graphs, paths, algebra elements, pair sets, words,
//! verdicts, and splitting traces. All outputs are deterministic.

use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::graph::{Graph, Path, SharedGraph};
use crate::splitting::TraceRound;
use crate::sync::{DiagonalVerdict, VerdictOutcome};
use crate::transducer::EventuallyPeriodicWord;
use crate::unitary::PairSet;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeJson {
    pub id: String,
    pub src: String,
    pub dst: String,
}

impl GraphJson {
    pub fn to_graph(&self) -> Result<Graph> {
        Graph::new(
            self.vertices.iter().cloned(),
            self.edges
                .iter()
                .map(|e| (e.id.clone(), e.src.clone(), e.dst.clone())),
        )
    }

    pub fn from_graph(g: &Graph) -> GraphJson {
        GraphJson {
            vertices: g.vertices().map(|v| g.vertex_id(v).to_owned()).collect(),
            edges: g
                .edges()
                .map(|e| EdgeJson {
                    id: g.edge_id(e).to_owned(),
                    src: g.vertex_id(g.source(e)).to_owned(),
                    dst: g.vertex_id(g.range(e)).to_owned(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PathJson {
    pub anchor: String,
    pub edges: Vec<String>,
}

impl PathJson {
    pub fn to_path(&self, g: &Graph) -> Result<Path> {
        let anchor = g.vertex(&self.anchor)?;
        let edges = self
            .edges
            .iter()
            .map(|id| g.edge(id))
            .collect::<Result<Vec<_>>>()?;
        g.path_at(anchor, edges)
    }

    pub fn from_path(g: &Graph, p: &Path) -> PathJson {
        PathJson {
            anchor: g.vertex_id(p.source()).to_owned(),
            edges: p.edges().iter().map(|&e| g.edge_id(e).to_owned()).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: i128,
    pub mu: PathJson,
    pub nu: PathJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ElementJson {
    pub terms: Vec<TermJson>,
}

impl ElementJson {
    pub fn to_element(&self, g: &SharedGraph) -> Result<AlgebraElement> {
        let raw = self
            .terms
            .iter()
            .map(|t| {
                Ok((
                    BigInt::from(t.coeff),
                    t.mu.to_path(g)?,
                    t.nu.to_path(g)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        AlgebraElement::from_raw(g.clone(), raw)
    }

    /// Serializes a normal-form element; coefficients outside the i128 range
    /// are rejected (they do not occur at this toolkit's scale).
    pub fn from_element(a: &AlgebraElement) -> Result<ElementJson> {
        let g = a.graph();
        let terms = a
            .terms()
            .map(|(m, c)| {
                let coeff = i128::try_from(c)
                    .map_err(|_| Error::Internal("coefficient exceeds the JSON range".into()))?;
                Ok(TermJson {
                    coeff,
                    mu: PathJson::from_path(g, m.mu()),
                    nu: PathJson::from_path(g, m.nu()),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ElementJson { terms })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairJson {
    pub mu: PathJson,
    pub nu: PathJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UnitaryJson {
    pub pairs: Vec<PairJson>,
}

impl UnitaryJson {
    pub fn to_pair_set(&self, g: &SharedGraph) -> Result<PairSet> {
        let pairs = self
            .pairs
            .iter()
            .map(|p| Ok((p.mu.to_path(g)?, p.nu.to_path(g)?)))
            .collect::<Result<Vec<_>>>()?;
        PairSet::build(g.clone(), pairs)
    }

    pub fn from_pair_set(ps: &PairSet) -> UnitaryJson {
        let g = ps.graph();
        UnitaryJson {
            pairs: ps
                .pairs()
                .iter()
                .map(|(mu, nu)| PairJson {
                    mu: PathJson::from_path(g, mu),
                    nu: PathJson::from_path(g, nu),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WordJson {
    pub prefix: Vec<String>,
    pub period: Vec<String>,
}

impl WordJson {
    pub fn to_word(&self) -> Result<EventuallyPeriodicWord> {
        EventuallyPeriodicWord::new(self.prefix.clone(), self.period.clone())
    }

    pub fn from_word(w: &EventuallyPeriodicWord) -> WordJson {
        WordJson {
            prefix: w.prefix().to_vec(),
            period: w.period().to_vec(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceRoundJson {
    pub round: usize,
    pub split_mu: String,
    pub split_nu: String,
    pub negative_edges: usize,
    pub classification: String,
}

impl From<&TraceRound> for TraceRoundJson {
    fn from(t: &TraceRound) -> TraceRoundJson {
        TraceRoundJson {
            round: t.round,
            split_mu: t.split_mu.clone(),
            split_nu: t.split_nu.clone(),
            negative_edges: t.negative_edges,
            classification: t.classification.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerdictJson {
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delay: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
    pub splits: Vec<TraceRoundJson>,
}

impl VerdictJson {
    pub fn from_verdict(v: &DiagonalVerdict) -> VerdictJson {
        let cg = &v.split.graph;
        let witness = match &v.outcome {
            VerdictOutcome::Auto { .. } => None,
            VerdictOutcome::NotAutoNonPositiveCycle { witness } => {
                let cycle: Vec<serde_json::Value> = witness
                    .iter()
                    .map(|&e| {
                        let edge = cg.edge(e);
                        serde_json::json!({
                            "from": cg.describe_vertex(edge.src),
                            "to": cg.describe_vertex(edge.dst),
                            "label": edge.label.display(cg.graph()),
                            "degree": edge.label.degree(),
                        })
                    })
                    .collect();
                Some(serde_json::json!({ "non_positive_cycle": cycle }))
            }
            VerdictOutcome::NotAutoNotSynchronizing { witness } => {
                let describe = |p: &crate::coding::CodingPath| {
                    let mut vertices = vec![cg.describe_vertex(p.start)];
                    for &e in &p.edges {
                        vertices.push(cg.describe_vertex(cg.edge(e).dst));
                    }
                    let e_word = cg
                        .e_label(p)
                        .map(|w| cg.graph().path_string(&w))
                        .unwrap_or_default();
                    serde_json::json!({ "vertices": vertices, "e_label": e_word })
                };
                Some(serde_json::json!({
                    "cycles": [describe(&witness.0), describe(&witness.1)],
                }))
            }
        };
        VerdictJson {
            outcome: v.outcome_name().to_owned(),
            delay: v.delay(),
            witness,
            splits: v.split.trace.iter().map(TraceRoundJson::from).collect(),
        }
    }
}

/// Convenience: parses a graph plus unitary JSON pair into a validated
/// pair set over a shared graph.
pub fn load_pair_set(graph_json: &str, unitary_json: &str) -> Result<(SharedGraph, PairSet)> {
    let gj: GraphJson = serde_json::from_str(graph_json)
        .map_err(|e| Error::Parse(format!("graph JSON: {e}")))?;
    let g = Arc::new(gj.to_graph()?);
    let uj: UnitaryJson = serde_json::from_str(unitary_json)
        .map_err(|e| Error::Parse(format!("unitary JSON: {e}")))?;
    let ps = uj.to_pair_set(&g)?;
    Ok((g, ps))
}
