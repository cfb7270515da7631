//! The labeled coding graph of a polynomial unitary.
//!
//! Vertices are the pairs of the presentation; there is an edge from
//! `(mu1, e1 k1)` to `(mu2, e2 k2)` exactly when `S_{k1}* S_{mu2}` is nonzero,
//! and that product (an isometry, a vertex projection, or a co-isometry) is
//! the edge's label.

use std::fmt;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::graph::{EdgeIdx, Path, SharedGraph, VertexIdx};
use crate::unitary::PairSet;

/// A pair `(mu, e kappa)` of the presentation, with `nu = e kappa` split into
/// its head edge and tail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodingVertex {
    pub mu: Path,
    pub e: EdgeIdx,
    pub kappa: Path,
    pub nu: Path,
}

impl CodingVertex {
    fn new(g: &SharedGraph, mu: Path, nu: Path) -> CodingVertex {
        let e = nu.first_edge().expect("second components have length >= 1");
        let kappa = g
            .path_at(g.range(e), nu.edges()[1..].to_vec())
            .expect("tail of a path");
        CodingVertex { mu, e, kappa, nu }
    }
}

/// Edge label: `S_alpha`, `P_v`, or `S_alpha*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeLabel {
    Positive(Path),
    Zero(VertexIdx),
    Negative(Path),
}

impl EdgeLabel {
    /// `|alpha|`, `0`, or `-|alpha|`.
    pub fn degree(&self) -> i64 {
        match self {
            EdgeLabel::Positive(a) => a.len() as i64,
            EdgeLabel::Zero(_) => 0,
            EdgeLabel::Negative(a) => -(a.len() as i64),
        }
    }

    pub fn as_element(&self, g: &SharedGraph) -> AlgebraElement {
        match self {
            EdgeLabel::Positive(a) => AlgebraElement::path_isometry(g.clone(), a),
            EdgeLabel::Zero(v) => AlgebraElement::vertex_projection(g.clone(), *v),
            EdgeLabel::Negative(a) => AlgebraElement::path_coisometry(g.clone(), a),
        }
    }

    pub fn display(&self, g: &SharedGraph) -> String {
        match self {
            EdgeLabel::Positive(a) => format!("S_{}", g.path_string(a)),
            EdgeLabel::Zero(v) => format!("P_{}", g.vertex_id(*v)),
            EdgeLabel::Negative(a) => format!("S_{}*", g.path_string(a)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodingEdge {
    pub src: usize,
    pub dst: usize,
    pub label: EdgeLabel,
}

/// How a coding graph stands with respect to edge signs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    AllNonNegative,
    /// A cycle all of whose edges have degree <= 0 (witness: its edge indices).
    HasNonPositiveCycle(Vec<usize>),
    HasNegativeEdges,
}

impl Classification {
    pub fn name(&self) -> &'static str {
        match self {
            Classification::AllNonNegative => "all_non_negative",
            Classification::HasNonPositiveCycle(_) => "has_non_positive_cycle",
            Classification::HasNegativeEdges => "has_negative_edges",
        }
    }
}

/// A path in the coding graph: a start vertex plus consecutive edge indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CodingPath {
    pub start: usize,
    pub edges: Vec<usize>,
}

impl CodingPath {
    pub fn vertex(start: usize) -> CodingPath {
        CodingPath {
            start,
            edges: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// The coding graph of a pair set.
#[derive(Debug, Clone)]
pub struct CodingGraph {
    pairs: PairSet,
    vertices: Vec<CodingVertex>,
    edges: Vec<CodingEdge>,
    out: Vec<Vec<usize>>,
}

impl CodingGraph {
    /// Builds the coding graph: vertex set is the pair set, edges exactly
    /// those with a nonzero connecting product.
    pub fn build(pairs: &PairSet) -> CodingGraph {
        let g = pairs.graph().clone();
        let vertices: Vec<CodingVertex> = pairs
            .pairs()
            .iter()
            .map(|(mu, nu)| CodingVertex::new(&g, mu.clone(), nu.clone()))
            .collect();
        let mut edges = Vec::new();
        let mut out = vec![Vec::new(); vertices.len()];
        for (i, src) in vertices.iter().enumerate() {
            for (j, dst) in vertices.iter().enumerate() {
                let label = if src.kappa.is_prefix_of(&dst.mu) {
                    let alpha = dst.mu.strip_prefix(&g, &src.kappa).expect("prefix");
                    if alpha.is_empty() {
                        EdgeLabel::Zero(alpha.source())
                    } else {
                        EdgeLabel::Positive(alpha)
                    }
                } else if dst.mu.is_prefix_of(&src.kappa) {
                    let alpha = src.kappa.strip_prefix(&g, &dst.mu).expect("prefix");
                    EdgeLabel::Negative(alpha)
                } else {
                    continue;
                };
                out[i].push(edges.len());
                edges.push(CodingEdge {
                    src: i,
                    dst: j,
                    label,
                });
            }
        }
        CodingGraph {
            pairs: pairs.clone(),
            vertices,
            edges,
            out,
        }
    }

    pub fn pairs(&self) -> &PairSet {
        &self.pairs
    }

    pub fn graph(&self) -> &SharedGraph {
        self.pairs.graph()
    }

    pub fn vertices(&self) -> &[CodingVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[CodingEdge] {
        &self.edges
    }

    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn edge(&self, e: usize) -> &CodingEdge {
        &self.edges[e]
    }

    pub fn vertex_index(&self, mu: &Path, nu: &Path) -> Option<usize> {
        self.vertices
            .iter()
            .position(|v| &v.mu == mu && &v.nu == nu)
    }

    /// Sign classification with a non-positive-cycle witness when one exists.
    pub fn classify(&self) -> Classification {
        if let Some(cycle) = self.non_positive_cycle() {
            return Classification::HasNonPositiveCycle(cycle);
        }
        if self
            .edges
            .iter()
            .any(|e| matches!(e.label, EdgeLabel::Negative(_)))
        {
            Classification::HasNegativeEdges
        } else {
            Classification::AllNonNegative
        }
    }

    /// A cycle in the subgraph of degree-<=-0 edges, as edge indices.
    fn non_positive_cycle(&self) -> Option<Vec<usize>> {
        fn dfs(
            cg: &CodingGraph,
            v: usize,
            color: &mut [u8], // 0 white, 1 gray, 2 black
            parent_edge: &mut [usize],
        ) -> Option<Vec<usize>> {
            color[v] = 1;
            for &e in &cg.out[v] {
                if cg.edges[e].label.degree() > 0 {
                    continue;
                }
                let w = cg.edges[e].dst;
                match color[w] {
                    1 => {
                        // Back edge: walk parents from v back to w.
                        let mut cycle = vec![e];
                        let mut cur = v;
                        while cur != w {
                            let pe = parent_edge[cur];
                            cycle.push(pe);
                            cur = cg.edges[pe].src;
                        }
                        cycle.reverse();
                        return Some(cycle);
                    }
                    0 => {
                        parent_edge[w] = e;
                        if let Some(c) = dfs(cg, w, color, parent_edge) {
                            return Some(c);
                        }
                    }
                    _ => {}
                }
            }
            color[v] = 2;
            None
        }

        let n = self.vertices.len();
        let mut color = vec![0u8; n];
        let mut parent_edge = vec![usize::MAX; n];
        for root in 0..n {
            if color[root] == 0 {
                if let Some(c) = dfs(self, root, &mut color, &mut parent_edge) {
                    return Some(c);
                }
            }
        }
        None
    }

    /// The e-letter word of the vertices a coding path visits, as a path of
    /// the underlying graph (length = path length + 1).
    pub fn e_label(&self, omega: &CodingPath) -> Result<Path> {
        let g = self.graph();
        if omega.start >= self.vertices.len() {
            return Err(Error::NotACodingPath);
        }
        let mut vertices = vec![omega.start];
        let mut at = omega.start;
        for &e in &omega.edges {
            if e >= self.edges.len() || self.edges[e].src != at {
                return Err(Error::NotACodingPath);
            }
            at = self.edges[e].dst;
            vertices.push(at);
        }
        let letters: Vec<EdgeIdx> = vertices.iter().map(|&v| self.vertices[v].e).collect();
        g.path_at(g.source(letters[0]), letters)
            .map_err(|_| Error::Internal("e-letters of a coding path always compose".into()))
    }

    /// All coding paths whose e-label equals `alpha` (so of length
    /// `|alpha| - 1`), in deterministic order.
    pub fn paths_with_e_label(&self, alpha: &Path) -> Vec<CodingPath> {
        let letters = alpha.edges();
        if letters.is_empty() {
            return Vec::new();
        }
        let mut partial: Vec<CodingPath> = (0..self.vertices.len())
            .filter(|&v| self.vertices[v].e == letters[0])
            .map(CodingPath::vertex)
            .collect();
        for &letter in &letters[1..] {
            let mut next = Vec::new();
            for p in partial {
                let end = p
                    .edges
                    .last()
                    .map(|&e| self.edges[e].dst)
                    .unwrap_or(p.start);
                for &e in &self.out[end] {
                    if self.vertices[self.edges[e].dst].e == letter {
                        let mut q = p.clone();
                        q.edges.push(e);
                        next.push(q);
                    }
                }
            }
            partial = next;
        }
        partial
    }

    /// `L_s` of a coding path: `S_mu` of its first vertex.
    pub fn label_s(&self, omega: &CodingPath) -> AlgebraElement {
        AlgebraElement::path_isometry(self.graph().clone(), &self.vertices[omega.start].mu)
    }

    /// `L_r` of a coding path: `S_kappa` of its last vertex.
    pub fn label_r(&self, omega: &CodingPath) -> AlgebraElement {
        let end = omega
            .edges
            .last()
            .map(|&e| self.edges[e].dst)
            .unwrap_or(omega.start);
        AlgebraElement::path_isometry(self.graph().clone(), &self.vertices[end].kappa)
    }

    /// `L_J` of a coding path: the product of its edge labels, the projection
    /// `P_{r(mu)}` for a single vertex.
    pub fn label_j(&self, omega: &CodingPath) -> AlgebraElement {
        let g = self.graph().clone();
        if omega.edges.is_empty() {
            let v = &self.vertices[omega.start];
            let range = v.mu.range(&g);
            return AlgebraElement::vertex_projection(g, range);
        }
        let mut acc = self.edges[omega.edges[0]].label.as_element(&g);
        for &e in &omega.edges[1..] {
            acc = acc
                .multiply(&self.edges[e].label.as_element(&g))
                .expect("labels over one graph");
        }
        acc
    }

    /// On a non-negative path, `L_s(omega) L_J(omega) = S_gamma`; returns that
    /// `gamma` without going through the algebra.
    pub fn label_path(&self, omega: &CodingPath) -> Result<Path> {
        let g = self.graph();
        let mut gamma = self.vertices[omega.start].mu.clone();
        for &e in &omega.edges {
            match &self.edges[e].label {
                EdgeLabel::Positive(a) => gamma = gamma.concat(g, a)?,
                EdgeLabel::Zero(_) => {}
                EdgeLabel::Negative(_) => return Err(Error::NeedsNonNegativeGraph),
            }
        }
        Ok(gamma)
    }

    /// `Lambda(S_alpha)` computed from the coding graph alone:
    /// the sum over paths with e-label `alpha` of `L_s L_J L_r*`.
    pub fn image_of_path(&self, alpha: &Path) -> Result<AlgebraElement> {
        if alpha.is_empty() {
            return Err(Error::EmptyPath);
        }
        let mut acc = AlgebraElement::zero(self.graph().clone());
        for omega in self.paths_with_e_label(alpha) {
            let term = self
                .label_s(&omega)
                .multiply(&self.label_j(&omega))?
                .multiply(&self.label_r(&omega).adjoint())?;
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// `P_mu Lambda(S_delta)` for `mu` a first component: the sum over coding
    /// paths from `J_mu` with e-label `delta` of `S_mu L_J L_r*`.
    pub fn project_image(&self, mu: &Path, delta: &Path) -> Result<AlgebraElement> {
        let g = self.graph().clone();
        let source = self
            .vertices
            .iter()
            .position(|v| &v.mu == mu)
            .ok_or_else(|| Error::NotFirstComponent(g.path_string(mu)))?;
        if delta.is_empty() {
            return Err(Error::EmptyPath);
        }
        let mut acc = AlgebraElement::zero(g.clone());
        let s_mu = AlgebraElement::path_isometry(g.clone(), mu);
        for omega in self.paths_with_e_label(delta) {
            if omega.start != source {
                continue;
            }
            let term = s_mu
                .multiply(&self.label_j(&omega))?
                .multiply(&self.label_r(&omega).adjoint())?;
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Resolving checks. Right-resolving (no vertex emits two edges with the
    /// same label) holds for every coding graph; left-resolving in the
    /// e-label is only asserted on all-non-negative graphs.
    pub fn check_resolving(&self) -> ResolvingReport {
        let mut right = Vec::new();
        for v in 0..self.vertices.len() {
            let es = &self.out[v];
            for i in 0..es.len() {
                for j in i + 1..es.len() {
                    if self.edges[es[i]].label == self.edges[es[j]].label {
                        right.push((es[i], es[j]));
                    }
                }
            }
        }
        let left = if matches!(self.classify(), Classification::AllNonNegative) {
            let mut violations = Vec::new();
            for i in 0..self.edges.len() {
                for j in i + 1..self.edges.len() {
                    let (a, b) = (&self.edges[i], &self.edges[j]);
                    if a.dst == b.dst
                        && self.vertices[a.src].e == self.vertices[b.src].e
                    {
                        violations.push((i, j));
                    }
                }
            }
            Some(violations)
        } else {
            None
        };
        ResolvingReport {
            right_violations: right,
            left_violations: left,
        }
    }

    /// Test-support constructor for doctored graphs (negative controls).
    #[doc(hidden)]
    pub fn with_edges_for_tests(&self, edges: Vec<CodingEdge>) -> CodingGraph {
        let mut out = vec![Vec::new(); self.vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            out[e.src].push(i);
        }
        CodingGraph {
            pairs: self.pairs.clone(),
            vertices: self.vertices.clone(),
            edges,
            out,
        }
    }

    pub fn describe_vertex(&self, v: usize) -> String {
        let g = self.graph();
        let cv = &self.vertices[v];
        format!(
            "({},{})",
            g.path_string(&cv.mu),
            g.path_string(&cv.nu)
        )
    }
}

/// Outcome of the resolving checks, with witnesses (pairs of edge indices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvingReport {
    pub right_violations: Vec<(usize, usize)>,
    /// `None` when the left-resolving hypothesis (all non-negative) fails.
    pub left_violations: Option<Vec<(usize, usize)>>,
}

impl ResolvingReport {
    pub fn right_resolving(&self) -> bool {
        self.right_violations.is_empty()
    }

    pub fn left_resolving(&self) -> Option<bool> {
        self.left_violations.as_ref().map(|v| v.is_empty())
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{o2, o3, shared};
    use crate::error::Result;

    pub(crate) fn pair_set(
        g: &SharedGraph,
        pairs: &[(&[&str], &[&str])],
    ) -> Result<PairSet> {
        let pairs = pairs
            .iter()
            .map(|(mu, nu)| Ok((g.path(mu)?, g.path(nu)?)))
            .collect::<Result<Vec<_>>>()?;
        PairSet::build(g.clone(), pairs)
    }

    fn intro_graph() -> (SharedGraph, CodingGraph) {
        let g = shared(o2());
        let ps = pair_set(
            &g,
            &[(&["1"], &["2", "2"]), (&["2", "1"], &["2", "1"]), (&["2", "2"], &["1"])],
        )
        .unwrap();
        let cg = CodingGraph::build(&ps);
        (g, cg)
    }

    fn edge_desc(g: &SharedGraph, cg: &CodingGraph) -> Vec<(String, String, String)> {
        cg.edges()
            .iter()
            .map(|e| {
                (
                    cg.describe_vertex(e.src),
                    cg.describe_vertex(e.dst),
                    e.label.display(g),
                )
            })
            .collect()
    }

    #[test]
    fn intro_coding_graph() {
        let (g, cg) = intro_graph();
        assert!(cg.check_resolving().right_resolving());
        assert_eq!(cg.vertices().len(), 3);
        let edges = edge_desc(&g, &cg);
        assert_eq!(
            edges,
            vec![
                ("(1,22)".into(), "(21,21)".into(), "S_1".into()),
                ("(1,22)".into(), "(22,1)".into(), "S_2".into()),
                ("(21,21)".into(), "(1,22)".into(), "P_v".into()),
                ("(22,1)".into(), "(1,22)".into(), "S_1".into()),
                ("(22,1)".into(), "(21,21)".into(), "S_21".into()),
                ("(22,1)".into(), "(22,1)".into(), "S_22".into()),
            ]
        );
    }

    #[test]
    fn ex2_coding_graph() {
        let g = shared(o2());
        let ps = pair_set(
            &g,
            &[
                (&["1", "2", "2"], &["1", "2", "2"]),
                (&["1", "1"], &["1", "2", "1"]),
                (&["1", "2", "1"], &["1", "1"]),
                (&["2"], &["2"]),
            ],
        )
        .unwrap();
        let cg = CodingGraph::build(&ps);
        assert_eq!(cg.vertices().len(), 4);
        assert_eq!(cg.edges().len(), 9);
        let edges = edge_desc(&g, &cg);
        assert!(edges.contains(&(
            "(11,121)".into(),
            "(2,2)".into(),
            "S_1*".into()
        )));
        assert!(edges.contains(&(
            "(122,122)".into(),
            "(2,2)".into(),
            "S_2*".into()
        )));
        assert!(matches!(cg.classify(), Classification::HasNegativeEdges));
    }

    #[test]
    fn identity_coding_graph() {
        let g = shared(o2());
        let ps = pair_set(&g, &[(&["1"], &["1"]), (&["2"], &["2"])]).unwrap();
        let cg = CodingGraph::build(&ps);
        assert_eq!(cg.vertices().len(), 2);
        assert_eq!(cg.edges().len(), 4);
        let mut labels: Vec<String> = cg.edges().iter().map(|e| e.label.display(&g)).collect();
        labels.sort();
        assert_eq!(labels, vec!["S_1", "S_1", "S_2", "S_2"]);
        assert!(cg
            .edges()
            .iter()
            .all(|e| matches!(e.label, EdgeLabel::Positive(_))));
    }

    #[test]
    fn labels_equal_the_symbolic_connecting_products() {
        // The tagged label of an edge reconstructs S_{kappa_1}* S_{mu_2}, and
        // vertex pairs without an edge have a vanishing product.
        let g = shared(o2());
        for ps in [
            pair_set(
                &g,
                &[(&["1"], &["2", "2"]), (&["2", "1"], &["2", "1"]), (&["2", "2"], &["1"])],
            )
            .unwrap(),
            pair_set(
                &g,
                &[
                    (&["1", "2", "2"], &["1", "2", "2"]),
                    (&["1", "1"], &["1", "2", "1"]),
                    (&["1", "2", "1"], &["1", "1"]),
                    (&["2"], &["2"]),
                ],
            )
            .unwrap(),
        ] {
            let cg = CodingGraph::build(&ps);
            let product = |i: usize, j: usize| {
                AlgebraElement::path_isometry(g.clone(), &cg.vertices()[i].kappa)
                    .adjoint()
                    .multiply(&AlgebraElement::path_isometry(g.clone(), &cg.vertices()[j].mu))
                    .unwrap()
            };
            let mut adjacent = vec![vec![false; cg.vertices().len()]; cg.vertices().len()];
            for e in cg.edges() {
                adjacent[e.src][e.dst] = true;
                assert_eq!(e.label.as_element(&g), product(e.src, e.dst));
            }
            for (i, row) in adjacent.iter().enumerate() {
                for (j, &has_edge) in row.iter().enumerate() {
                    if !has_edge {
                        assert!(product(i, j).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn edge_degrees() {
        let (g, cg) = intro_graph();
        let degs: Vec<i64> = cg.edges().iter().map(|e| e.label.degree()).collect();
        assert_eq!(degs, vec![1, 1, 0, 1, 2, 2]);
        let _ = g;
    }

    #[test]
    fn non_positive_cycle_detected() {
        let g = shared(o2());
        let ps = pair_set(
            &g,
            &[(&["1"], &["2", "1"]), (&["2", "1"], &["2", "2"]), (&["2", "2"], &["1"])],
        )
        .unwrap();
        let cg = CodingGraph::build(&ps);
        match cg.classify() {
            Classification::HasNonPositiveCycle(cycle) => {
                assert_eq!(cycle.len(), 1);
                let e = cg.edge(cycle[0]);
                assert_eq!(cg.describe_vertex(e.src), "(1,21)");
                assert_eq!(e.src, e.dst);
                assert_eq!(e.label.display(&g), "P_v");
            }
            other => panic!("expected a non-positive cycle, got {other:?}"),
        }
    }

    #[test]
    fn e_labels() {
        let (g, cg) = intro_graph();
        // Single vertex (21,21): e-letter 2.
        let q = cg.vertex_index(&g.path(&["2", "1"]).unwrap(), &g.path(&["2", "1"]).unwrap()).unwrap();
        let w = cg.e_label(&CodingPath::vertex(q)).unwrap();
        assert_eq!(g.path_string(&w), "2");

        // The edge (22,1) -> (21,21) has e-label 12.
        let r = cg.vertex_index(&g.path(&["2", "2"]).unwrap(), &g.path(&["1"]).unwrap()).unwrap();
        let e = (0..cg.edges().len())
            .find(|&i| cg.edge(i).src == r && cg.edge(i).dst == q)
            .unwrap();
        let w = cg
            .e_label(&CodingPath {
                start: r,
                edges: vec![e],
            })
            .unwrap();
        assert_eq!(g.path_string(&w), "12");
    }

    #[test]
    fn e_label_is_not_concatenative() {
        // E(omega xi) repeats the shared middle letter, so it never equals
        // E(omega)E(xi) for nonempty composable pieces.
        let (g, cg) = intro_graph();
        for i in 0..cg.edges().len() {
            for j in 0..cg.edges().len() {
                if cg.edge(i).dst != cg.edge(j).src {
                    continue;
                }
                let omega = CodingPath {
                    start: cg.edge(i).src,
                    edges: vec![i],
                };
                let xi = CodingPath {
                    start: cg.edge(j).src,
                    edges: vec![j],
                };
                let joint = CodingPath {
                    start: cg.edge(i).src,
                    edges: vec![i, j],
                };
                let lhs = cg.e_label(&joint).unwrap();
                let l = cg.e_label(&omega).unwrap();
                let r = cg.e_label(&xi).unwrap();
                assert_eq!(lhs.len() + 1, l.len() + r.len());
                let _ = g;
            }
        }
    }

    #[test]
    fn image_of_path_matches_lambda() {
        let (g, cg) = intro_graph();
        // alpha = 1: single contributing vertex (1,22).
        let alpha = g.path(&["1"]).unwrap();
        let img = cg.image_of_path(&alpha).unwrap();
        let s1 = AlgebraElement::path_isometry(g.clone(), &alpha);
        let expected = cg.pairs().element().multiply(&s1).unwrap();
        assert_eq!(img, expected);

        let powers = cg.pairs().u_powers(6).unwrap();
        for k in 1..=6 {
            for alpha in g.paths_from(g.vertex("v").unwrap(), k) {
                let via_graph = cg.image_of_path(&alpha).unwrap();
                let elem = AlgebraElement::path_isometry(g.clone(), &alpha);
                let via_lambda = cg.pairs().lambda_apply_with_powers(&elem, &powers).unwrap();
                assert_eq!(via_graph, via_lambda, "alpha = {}", g.path_string(&alpha));
            }
        }
    }

    #[test]
    fn project_image_matches_multiplication() {
        let g = shared(o2());
        let ps = pair_set(
            &g,
            &[
                (&["1", "2", "2"], &["1", "2", "2"]),
                (&["1", "1"], &["1", "2", "1"]),
                (&["1", "2", "1"], &["1", "1"]),
                (&["2"], &["2"]),
            ],
        )
        .unwrap();
        let cg = CodingGraph::build(&ps);
        for (mu, _) in ps.pairs() {
            let p_mu = AlgebraElement::range_projection(g.clone(), mu);
            for k in 1..=3 {
                for delta in g.paths_from(g.vertex("v").unwrap(), k) {
                    let lhs = cg.project_image(mu, &delta).unwrap();
                    let rhs = p_mu
                        .multiply(&ps.lambda_of_path(&delta).unwrap())
                        .unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
        // mu = 2, delta = 1 is the zero case.
        let zero = cg
            .project_image(&g.path(&["2"]).unwrap(), &g.path(&["1"]).unwrap())
            .unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn emitting_nonpositive_means_single_edge() {
        for (g, pairs) in corpus_pairs() {
            let cg = CodingGraph::build(&pairs);
            for v in 0..cg.vertices().len() {
                let out = cg.out_edges(v);
                if out.iter().any(|&e| cg.edge(e).label.degree() <= 0) {
                    assert_eq!(
                        out.len(),
                        1,
                        "vertex {} of {:?} emits a non-positive edge plus others",
                        cg.describe_vertex(v),
                        g.path_string(&cg.vertices()[v].mu),
                    );
                }
            }
        }
    }

    fn corpus_pairs() -> Vec<(SharedGraph, PairSet)> {
        let mut out = Vec::new();
        for g in crate::corpus::base_graphs() {
            for seed in 0..8u64 {
                if let Ok(ps) = PairSet::random(g.clone(), 3, seed) {
                    out.push((g.clone(), ps));
                }
            }
        }
        out
    }

    #[test]
    fn right_resolving_everywhere_and_negative_control() {
        let g = shared(o3());
        let ps = pair_set(&g, &[(&["1"], &["1"]), (&["2"], &["2"]), (&["3"], &["3"])]).unwrap();
        let cg = CodingGraph::build(&ps);
        let report = cg.check_resolving();
        assert!(report.right_resolving());
        assert_eq!(report.left_resolving(), Some(true));

        // Doctor a duplicate label onto one vertex.
        let mut edges = cg.edges().to_vec();
        let copy = edges[0].clone();
        edges.push(CodingEdge {
            src: copy.src,
            dst: (copy.dst + 1) % cg.vertices().len(),
            label: copy.label.clone(),
        });
        let doctored = cg.with_edges_for_tests(edges);
        assert!(!doctored.check_resolving().right_resolving());
    }
}
