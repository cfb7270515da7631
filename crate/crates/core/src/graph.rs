//! Finite directed multigraphs and path combinatorics.
//!
//! Graphs are immutable after construction. Vertices and edges carry opaque
//! string ids supplied by input files; internally both are stored sorted by
//! id, so index order coincides with lexicographic id order and every
//! enumeration below is deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of a vertex inside its [`Graph`] (vertices are sorted by id).
pub type VertexIdx = usize;
/// Index of an edge inside its [`Graph`] (edges are sorted by id).
pub type EdgeIdx = usize;

/// A finite directed multigraph without parallel-edge restrictions.
#[derive(Debug)]
pub struct Graph {
    vertex_ids: Vec<String>,
    edge_ids: Vec<String>,
    edge_src: Vec<VertexIdx>,
    edge_dst: Vec<VertexIdx>,
    out_edges: Vec<Vec<EdgeIdx>>,
    in_counts: Vec<usize>,
    vertex_lookup: BTreeMap<String, VertexIdx>,
    edge_lookup: BTreeMap<String, EdgeIdx>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_ids == other.vertex_ids
            && self.edge_ids == other.edge_ids
            && self.edge_src == other.edge_src
            && self.edge_dst == other.edge_dst
    }
}
impl Eq for Graph {}

impl Graph {
    /// Builds a graph from vertex ids and `(edge id, source id, range id)`
    /// records, checking structural well-formedness only (unique ids, declared
    /// endpoints). The standing assumptions are checked by [`Graph::validate`].
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Graph>
    where
        V: IntoIterator<Item = String>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let mut vertex_ids: Vec<String> = vertices.into_iter().collect();
        vertex_ids.sort();
        for pair in vertex_ids.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateVertexId(pair[0].clone()));
            }
        }
        let vertex_lookup: BTreeMap<String, VertexIdx> = vertex_ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.clone(), i))
            .collect();

        let mut raw: Vec<(String, String, String)> = edges.into_iter().collect();
        raw.sort_by(|a, b| a.0.cmp(&b.0));
        for pair in raw.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::DuplicateEdgeId(pair[0].0.clone()));
            }
        }

        let mut edge_ids = Vec::with_capacity(raw.len());
        let mut edge_src = Vec::with_capacity(raw.len());
        let mut edge_dst = Vec::with_capacity(raw.len());
        for (id, src, dst) in raw {
            let s = *vertex_lookup.get(&src).ok_or(Error::UndeclaredEndpoint {
                edge: id.clone(),
                vertex: src.clone(),
            })?;
            let d = *vertex_lookup.get(&dst).ok_or(Error::UndeclaredEndpoint {
                edge: id.clone(),
                vertex: dst.clone(),
            })?;
            edge_ids.push(id);
            edge_src.push(s);
            edge_dst.push(d);
        }
        let edge_lookup: BTreeMap<String, EdgeIdx> = edge_ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.clone(), i))
            .collect();

        let mut out_edges = vec![Vec::new(); vertex_ids.len()];
        let mut in_counts = vec![0usize; vertex_ids.len()];
        for e in 0..edge_ids.len() {
            out_edges[edge_src[e]].push(e);
            in_counts[edge_dst[e]] += 1;
        }

        Ok(Graph {
            vertex_ids,
            edge_ids,
            edge_src,
            edge_dst,
            out_edges,
            in_counts,
            vertex_lookup,
            edge_lookup,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexIdx> {
        0..self.vertex_ids.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeIdx> {
        0..self.edge_ids.len()
    }

    pub fn vertex_id(&self, v: VertexIdx) -> &str {
        &self.vertex_ids[v]
    }

    pub fn edge_id(&self, e: EdgeIdx) -> &str {
        &self.edge_ids[e]
    }

    pub fn vertex(&self, id: &str) -> Result<VertexIdx> {
        self.vertex_lookup
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(id.to_owned()))
    }

    pub fn edge(&self, id: &str) -> Result<EdgeIdx> {
        self.edge_lookup
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownEdge(id.to_owned()))
    }

    pub fn source(&self, e: EdgeIdx) -> VertexIdx {
        self.edge_src[e]
    }

    pub fn range(&self, e: EdgeIdx) -> VertexIdx {
        self.edge_dst[e]
    }

    /// Edges emitted by `v`, in id order.
    pub fn out_edges(&self, v: VertexIdx) -> &[EdgeIdx] {
        &self.out_edges[v]
    }

    /// The designated special edge of `v`: the lexicographically least edge id
    /// in `s^{-1}(v)`. `None` on a sink.
    pub fn special_edge(&self, v: VertexIdx) -> Option<EdgeIdx> {
        self.out_edges[v].first().copied()
    }

    /// Checks the standing assumptions: no sinks, no sources, every cycle has
    /// an exit. The graph is accepted iff all flags are clear.
    pub fn validate(&self) -> ValidationReport {
        let sinks: Vec<String> = self
            .vertices()
            .filter(|&v| self.out_edges[v].is_empty())
            .map(|v| self.vertex_ids[v].clone())
            .collect();
        let sources: Vec<String> = self
            .vertices()
            .filter(|&v| self.in_counts[v] == 0)
            .map(|v| self.vertex_ids[v].clone())
            .collect();

        // A cycle has no exit iff every vertex on it emits exactly one edge,
        // so it suffices to chase the unique out-edges of out-degree-1
        // vertices and look for a loop that stays in that set.
        let mut cycle_without_exit = None;
        'outer: for start in self.vertices() {
            if self.out_edges[start].len() != 1 {
                continue;
            }
            let mut seen = vec![start];
            let mut cur = start;
            loop {
                let e = self.out_edges[cur][0];
                let next = self.edge_dst[e];
                if next == start {
                    let mut edges = Vec::new();
                    let mut w = start;
                    for _ in 0..seen.len() {
                        let e = self.out_edges[w][0];
                        edges.push(e);
                        w = self.edge_dst[e];
                    }
                    cycle_without_exit = Some(Path {
                        anchor: start,
                        edges,
                    });
                    break 'outer;
                }
                if self.out_edges[next].len() != 1 || seen.contains(&next) {
                    break;
                }
                seen.push(next);
                cur = next;
            }
        }

        ValidationReport {
            sinks,
            sources,
            cycle_without_exit,
        }
    }

    /// The vertex `v` as a path of length 0.
    pub fn vertex_path(&self, v: VertexIdx) -> Path {
        Path {
            anchor: v,
            edges: Vec::new(),
        }
    }

    /// Builds a path from consecutive edge ids, checking composability.
    pub fn path(&self, edge_ids: &[&str]) -> Result<Path> {
        let edges: Vec<EdgeIdx> = edge_ids
            .iter()
            .map(|id| self.edge(id))
            .collect::<Result<_>>()?;
        match edges.first() {
            None => Err(Error::EmptyPath),
            Some(&first) => self.path_at(self.edge_src[first], edges),
        }
    }

    /// Builds a path from an anchor and edge indices, checking anchoring and
    /// composability. An empty edge list yields the vertex path at `anchor`.
    pub fn path_at(&self, anchor: VertexIdx, edges: Vec<EdgeIdx>) -> Result<Path> {
        let mut at = anchor;
        for (i, &e) in edges.iter().enumerate() {
            if self.edge_src[e] != at {
                if i == 0 {
                    return Err(Error::AnchorMismatch {
                        anchor: self.vertex_ids[anchor].clone(),
                        edge: self.edge_ids[e].clone(),
                    });
                }
                return Err(Error::BrokenPath {
                    edge: self.edge_ids[e].clone(),
                    expected: self.vertex_ids[at].clone(),
                });
            }
            at = self.edge_dst[e];
        }
        Ok(Path { anchor, edges })
    }

    /// All paths of length exactly `k` with source `v`, in lexicographic
    /// edge-id order.
    pub fn paths_from(&self, v: VertexIdx, k: usize) -> Vec<Path> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        self.collect_paths(v, v, k, &mut stack, &mut out);
        out
    }

    fn collect_paths(
        &self,
        anchor: VertexIdx,
        at: VertexIdx,
        remaining: usize,
        stack: &mut Vec<EdgeIdx>,
        out: &mut Vec<Path>,
    ) {
        if remaining == 0 {
            out.push(Path {
                anchor,
                edges: stack.clone(),
            });
            return;
        }
        for &e in &self.out_edges[at] {
            stack.push(e);
            self.collect_paths(anchor, self.edge_dst[e], remaining - 1, stack, out);
            stack.pop();
        }
    }

    /// Cylinder-set partition test: true iff the cylinders `Z(p)` for `p` in
    /// `ps` are pairwise disjoint and cover `Z(v)`. Semantically this extends
    /// to the maximal member length and requires every path of that length
    /// from `v` to have exactly one member as a prefix; the walk below prunes
    /// subtrees as soon as a branch is settled.
    pub fn is_partition(&self, v: VertexIdx, ps: &[Path]) -> Result<bool> {
        for p in ps {
            if p.source() != v {
                return Err(Error::WrongAnchor(self.path_string(p)));
            }
        }
        let suffixes: Vec<&[EdgeIdx]> = ps.iter().map(|p| p.edges()).collect();
        Ok(self.partition_walk(v, &suffixes))
    }

    fn partition_walk(&self, at: VertexIdx, members: &[&[EdgeIdx]]) -> bool {
        let covers = members.iter().filter(|m| m.is_empty()).count();
        let deeper: Vec<&[EdgeIdx]> = members
            .iter()
            .filter(|m| !m.is_empty())
            .copied()
            .collect();
        // Exactly one member may end here, and then none may continue past it.
        if covers > 0 {
            return covers == 1 && deeper.is_empty();
        }
        if deeper.is_empty() {
            return false;
        }
        self.out_edges[at].iter().all(|&e| {
            let group: Vec<&[EdgeIdx]> = deeper
                .iter()
                .filter(|m| m[0] == e)
                .map(|m| &m[1..])
                .collect();
            !group.is_empty() && self.partition_walk(self.edge_dst[e], &group)
        })
    }

    /// Renders a path as its edge ids (single-character ids are run together,
    /// anything else is dot-separated); a vertex path renders as its vertex id.
    pub fn path_string(&self, p: &Path) -> String {
        if p.edges.is_empty() {
            return self.vertex_ids[p.anchor].clone();
        }
        let ids: Vec<&str> = p.edges.iter().map(|&e| self.edge_ids[e].as_str()).collect();
        if self.edge_ids.iter().all(|id| id.chars().count() == 1) {
            ids.concat()
        } else {
            ids.join(".")
        }
    }
}

/// Outcome of checking the standing assumptions on a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    /// Vertices that emit no edges.
    pub sinks: Vec<String>,
    /// Vertices that receive no edges.
    pub sources: Vec<String>,
    /// A cycle with no exit, when one exists.
    pub cycle_without_exit: Option<Path>,
}

impl ValidationReport {
    pub fn accepted(&self) -> bool {
        self.sinks.is_empty() && self.sources.is_empty() && self.cycle_without_exit.is_none()
    }
}

/// An anchored edge sequence. A path of length 0 is a vertex.
///
/// Paths are ordered lexicographically by their edge-id sequence (edge indices
/// are id-sorted), with the anchor as tie breaker for vertex paths.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    anchor: VertexIdx,
    edges: Vec<EdgeIdx>,
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.edges
            .cmp(&other.edges)
            .then_with(|| self.anchor.cmp(&other.anchor))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Path {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[EdgeIdx] {
        &self.edges
    }

    pub fn source(&self) -> VertexIdx {
        self.anchor
    }

    pub fn range(&self, g: &Graph) -> VertexIdx {
        match self.edges.last() {
            Some(&e) => g.range(e),
            None => self.anchor,
        }
    }

    pub fn first_edge(&self) -> Option<EdgeIdx> {
        self.edges.first().copied()
    }

    pub fn last_edge(&self) -> Option<EdgeIdx> {
        self.edges.last().copied()
    }

    /// The initial-segment relation; a vertex path is a prefix of everything
    /// that starts at it.
    pub fn is_prefix_of(&self, other: &Path) -> bool {
        self.source() == other.source() && other.edges.starts_with(&self.edges)
    }

    /// Concatenation, requiring `r(self) = s(other)`.
    pub fn concat(&self, g: &Graph, other: &Path) -> Result<Path> {
        if self.range(g) != other.source() {
            return Err(Error::Composition {
                range: g.vertex_id(self.range(g)).to_owned(),
                src: g.vertex_id(other.source()).to_owned(),
            });
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Ok(Path {
            anchor: self.anchor,
            edges,
        })
    }

    /// Appends one edge, requiring `r(self) = s(e)`.
    pub fn extend(&self, g: &Graph, e: EdgeIdx) -> Result<Path> {
        if self.range(g) != g.source(e) {
            return Err(Error::Composition {
                range: g.vertex_id(self.range(g)).to_owned(),
                src: g.vertex_id(g.source(e)).to_owned(),
            });
        }
        let mut edges = self.edges.clone();
        edges.push(e);
        Ok(Path {
            anchor: self.anchor,
            edges,
        })
    }

    /// The path with the final edge removed; `None` on a vertex path.
    pub fn parent(&self, g: &Graph) -> Option<Path> {
        let _ = g;
        if self.edges.is_empty() {
            return None;
        }
        Some(Path {
            anchor: self.anchor,
            edges: self.edges[..self.edges.len() - 1].to_vec(),
        })
    }

    /// If `prefix` is a prefix of `self`, the remaining tail (anchored at
    /// `r(prefix)`).
    pub fn strip_prefix(&self, g: &Graph, prefix: &Path) -> Option<Path> {
        if !prefix.is_prefix_of(self) {
            return None;
        }
        Some(Path {
            anchor: prefix.range(g),
            edges: self.edges[prefix.len()..].to_vec(),
        })
    }
}

/// A graph together with the shared handle the algebra layer hangs on to.
pub type SharedGraph = Arc<Graph>;

/// Structural equality check used to detect cross-graph operations; pointer
/// equality is the fast path.
pub fn same_graph(a: &SharedGraph, b: &SharedGraph) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.accepted() {
            write!(f, "accepted")
        } else {
            write!(
                f,
                "rejected (sinks: {:?}, sources: {:?}, cycle without exit: {})",
                self.sinks,
                self.sources,
                self.cycle_without_exit.is_some()
            )
        }
    }
}
