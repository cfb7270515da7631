//! Left-synchronization, the diagonal-automorphism verdict, and the
//! brute-force onto-oracle for the diagonal.
//!
//! The synchronization decision runs on the off-diagonal pair graph: vertices
//! are unordered pairs of distinct coding vertices with equal e-letters, with
//! an edge whenever both members can step simultaneously. On all-non-negative
//! graphs left-resolving forbids two distinct sources from merging, so
//! e-equal distinct-source paths of length m correspond exactly to pair-graph
//! paths of length m. The labeled graph is left-synchronizing iff the pair
//! graph is acyclic, and the minimal delay is the longest pair path plus one.

use std::collections::BTreeSet;

use crate::algebra::AlgebraElement;
use crate::coding::{Classification, CodingGraph, CodingPath};
use crate::error::{Error, Result};
use crate::graph::{Path, SharedGraph};
use crate::splitting::{
    run_splitting_algorithm_with, SplitOutcome, TieBreak, TraceRound, DEFAULT_SPLIT_FUEL,
};
use crate::unitary::PairSet;

/// The product structure driving the synchronization decision.
#[derive(Debug, Clone)]
pub struct PairGraph {
    /// Unordered pairs `(i, j)` with `i < j` and equal e-letters.
    pub vertices: Vec<(usize, usize)>,
    /// Edges as `(pair index, pair index, coding edge from .0, coding edge from .1)`:
    /// the two coding edges start at the respective members of the source pair.
    pub edges: Vec<PairEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairEdge {
    pub src: usize,
    pub dst: usize,
    /// Coding edge leaving the first member of the source pair.
    pub first: usize,
    /// Coding edge leaving the second member of the source pair.
    pub second: usize,
}

impl PairGraph {
    /// Builds the pair graph of a coding graph. Only meaningful under the
    /// all-non-negative hypothesis; the caller checks it.
    pub fn build(cg: &CodingGraph) -> PairGraph {
        let n = cg.vertices().len();
        let mut vertices = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if cg.vertices()[i].e == cg.vertices()[j].e {
                    vertices.push((i, j));
                }
            }
        }
        let index_of = |a: usize, b: usize| -> Option<usize> {
            let key = if a < b { (a, b) } else { (b, a) };
            vertices.binary_search(&key).ok()
        };
        let mut edges = Vec::new();
        for (p, &(x, y)) in vertices.iter().enumerate() {
            for &ex in cg.out_edges(x) {
                for &ey in cg.out_edges(y) {
                    let (zx, zy) = (cg.edge(ex).dst, cg.edge(ey).dst);
                    if zx == zy {
                        continue;
                    }
                    if let Some(q) = index_of(zx, zy) {
                        edges.push(PairEdge {
                            src: p,
                            dst: q,
                            first: ex,
                            second: ey,
                        });
                    }
                }
            }
        }
        PairGraph { vertices, edges }
    }

    fn out_edges(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.vertices.len()];
        for (i, e) in self.edges.iter().enumerate() {
            out[e.src].push(i);
        }
        out
    }

    /// A cycle (as pair-edge indices) when one exists.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        fn dfs(
            pg: &PairGraph,
            out: &[Vec<usize>],
            v: usize,
            color: &mut [u8],
            parent_edge: &mut [usize],
        ) -> Option<Vec<usize>> {
            color[v] = 1;
            for &e in &out[v] {
                let w = pg.edges[e].dst;
                match color[w] {
                    1 => {
                        let mut cycle = vec![e];
                        let mut cur = v;
                        while cur != w {
                            let pe = parent_edge[cur];
                            cycle.push(pe);
                            cur = pg.edges[pe].src;
                        }
                        cycle.reverse();
                        return Some(cycle);
                    }
                    0 => {
                        parent_edge[w] = e;
                        if let Some(c) = dfs(pg, out, w, color, parent_edge) {
                            return Some(c);
                        }
                    }
                    _ => {}
                }
            }
            color[v] = 2;
            None
        }
        let out = self.out_edges();
        let mut color = vec![0u8; self.vertices.len()];
        let mut parent_edge = vec![usize::MAX; self.vertices.len()];
        for root in 0..self.vertices.len() {
            if color[root] == 0 {
                if let Some(c) = dfs(self, &out, root, &mut color, &mut parent_edge) {
                    return Some(c);
                }
            }
        }
        None
    }

    /// Longest path length (in edges) of the acyclic pair graph.
    pub fn longest_path(&self) -> usize {
        let out = self.out_edges();
        let mut memo = vec![usize::MAX; self.vertices.len()];
        fn go(pg: &PairGraph, out: &[Vec<usize>], v: usize, memo: &mut [usize]) -> usize {
            if memo[v] != usize::MAX {
                return memo[v];
            }
            let mut best = 0;
            for &e in &out[v] {
                best = best.max(1 + go(pg, out, pg.edges[e].dst, memo));
            }
            memo[v] = best;
            best
        }
        (0..self.vertices.len())
            .map(|v| go(self, &out, v, &mut memo))
            .max()
            .unwrap_or(0)
    }
}

/// Outcome of the left-synchronization decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SyncDecision {
    /// Left-synchronizing, with the minimal delay.
    Yes { delay: usize },
    /// Not left-synchronizing; two distinct e-equal cycles as witness.
    No {
        witness: (CodingPath, CodingPath),
    },
}

/// Decides left-synchronization of an all-non-negative coding graph.
pub fn is_left_synchronizing(cg: &CodingGraph) -> Result<SyncDecision> {
    if !matches!(cg.classify(), Classification::AllNonNegative) {
        return Err(Error::NeedsNonNegativeGraph);
    }
    let pg = PairGraph::build(cg);
    match pg.find_cycle() {
        None => {
            let delay = if pg.vertices.is_empty() {
                0
            } else {
                pg.longest_path() + 1
            };
            Ok(SyncDecision::Yes { delay })
        }
        Some(cycle) => {
            let witness = lift_pair_cycle(cg, &pg, &cycle)?;
            Ok(SyncDecision::No { witness })
        }
    }
}

/// Lifts a pair-graph cycle to two distinct coding cycles with equal e-label.
/// Going around once may swap the ordered pair; going around twice closes
/// both component walks.
fn lift_pair_cycle(
    cg: &CodingGraph,
    pg: &PairGraph,
    cycle: &[usize],
) -> Result<(CodingPath, CodingPath)> {
    let start_pair = pg.vertices[pg.edges[cycle[0]].src];
    let (x0, y0) = start_pair;
    let mut a = x0;
    let mut b = y0;
    let mut path_a = CodingPath::vertex(x0);
    let mut path_b = CodingPath::vertex(y0);
    for lap in 0..2 {
        for &pe in cycle {
            let e = &pg.edges[pe];
            let (px, py) = pg.vertices[e.src];
            let (ea, eb) = if a == px && b == py {
                (e.first, e.second)
            } else if a == py && b == px {
                (e.second, e.first)
            } else {
                return Err(Error::Internal("pair cycle lift lost its orientation".into()));
            };
            path_a.edges.push(ea);
            path_b.edges.push(eb);
            a = cg.edge(ea).dst;
            b = cg.edge(eb).dst;
        }
        if (a, b) == (x0, y0) && lap == 0 {
            break;
        }
    }
    if (a, b) != (x0, y0) {
        return Err(Error::Internal("pair cycle lift failed to close".into()));
    }
    Ok((path_a, path_b))
}

/// Outcome of the full diagonal-automorphism decision.
#[derive(Debug, Clone)]
pub enum VerdictOutcome {
    /// The endomorphism restricts to an automorphism of the diagonal.
    Auto { delay: usize },
    /// A non-positive cycle survives splitting (witness: its edge indices in
    /// the final coding graph).
    NotAutoNonPositiveCycle { witness: Vec<usize> },
    /// The split graph is not left-synchronizing (witness: two distinct
    /// e-equal cycles).
    NotAutoNotSynchronizing {
        witness: (CodingPath, CodingPath),
    },
}

/// Verdict together with the splitting run that produced it.
#[derive(Debug, Clone)]
pub struct DiagonalVerdict {
    pub outcome: VerdictOutcome,
    pub split: SplitOutcome,
}

impl DiagonalVerdict {
    pub fn is_auto(&self) -> bool {
        matches!(self.outcome, VerdictOutcome::Auto { .. })
    }

    pub fn delay(&self) -> Option<usize> {
        match self.outcome {
            VerdictOutcome::Auto { delay } => Some(delay),
            _ => None,
        }
    }

    pub fn trace(&self) -> &[TraceRound] {
        &self.split.trace
    }

    pub fn outcome_name(&self) -> &'static str {
        match self.outcome {
            VerdictOutcome::Auto { .. } => "auto",
            VerdictOutcome::NotAutoNonPositiveCycle { .. } => "not_auto_nonpositive_cycle",
            VerdictOutcome::NotAutoNotSynchronizing { .. } => "not_auto_not_synchronizing",
        }
    }
}

/// Runs splitting and the synchronization check to decide whether the induced
/// endomorphism restricts to an automorphism of the diagonal.
pub fn diagonal_verdict(pairs: &PairSet) -> Result<DiagonalVerdict> {
    diagonal_verdict_with(pairs, DEFAULT_SPLIT_FUEL, TieBreak::Lexicographic)
}

pub fn diagonal_verdict_with(
    pairs: &PairSet,
    fuel: u64,
    tie: TieBreak,
) -> Result<DiagonalVerdict> {
    let split = run_splitting_algorithm_with(pairs, fuel, tie)?;
    let outcome = match &split.classification {
        Classification::HasNonPositiveCycle(cycle) => VerdictOutcome::NotAutoNonPositiveCycle {
            witness: cycle.clone(),
        },
        Classification::AllNonNegative => match is_left_synchronizing(&split.graph)? {
            SyncDecision::Yes { delay } => VerdictOutcome::Auto { delay },
            SyncDecision::No { witness } => VerdictOutcome::NotAutoNotSynchronizing { witness },
        },
        Classification::HasNegativeEdges => {
            return Err(Error::Internal(
                "splitting stopped on a graph with negative edges".into(),
            ))
        }
    };
    Ok(DiagonalVerdict { outcome, split })
}

/// Answer of the finite-depth onto-oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OntoOracle {
    /// A certificate: `P_mu` is exactly a union of depth-`depth` images.
    InImage,
    /// No certificate at this depth (one-sided: not a proof of absence).
    NotInImageUpToDepth,
}

/// The depth-`L` image table the onto-oracle works from: the diagonal support
/// of `Lambda(P_alpha)` for every path `alpha` of length `L`.
#[derive(Debug, Clone)]
pub struct OntoTable {
    graph: SharedGraph,
    depth: usize,
    images: Vec<Vec<Path>>,
}

impl OntoTable {
    /// Computes the table once; individual queries are then cheap.
    pub fn build(pairs: &PairSet, depth: usize) -> Result<OntoTable> {
        let g = pairs.graph().clone();
        let needed = pairs.first_components().map(Path::len).max().unwrap_or(0);
        if depth < needed {
            return Err(Error::DepthTooSmall { depth, needed });
        }
        let powers = pairs.u_powers(depth)?;
        let u_l = &powers[depth - 1];
        let u_l_star = u_l.adjoint();
        let mut images = Vec::new();
        for v in g.vertices() {
            for alpha in g.paths_from(v, depth) {
                let p_alpha = AlgebraElement::range_projection(g.clone(), &alpha);
                let image = u_l.multiply(&p_alpha)?.multiply(&u_l_star)?;
                let support = image.diagonal_support().map_err(|_| {
                    Error::Internal(
                        "the endomorphism must map diagonal projections into the diagonal".into(),
                    )
                })?;
                images.push(support);
            }
        }
        Ok(OntoTable {
            graph: g,
            depth,
            images,
        })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Whether `P_mu` is exactly tiled by the images contained in it.
    /// Distinct cylinder images are disjoint, so set equality of refinements
    /// at a common depth decides.
    pub fn check(&self, mu: &Path) -> OntoOracle {
        let g = &self.graph;
        let target = AlgebraElement::range_projection(g.clone(), mu)
            .diagonal_support()
            .expect("P_mu is a diagonal projection");
        let mut covered: Vec<Path> = Vec::new();
        for support in &self.images {
            if support
                .iter()
                .all(|beta| target.iter().any(|t| t.is_prefix_of(beta)))
            {
                covered.extend(support.iter().cloned());
            }
        }
        let refine_to = covered
            .iter()
            .chain(target.iter())
            .map(Path::len)
            .max()
            .unwrap_or(0);
        let refined_union: BTreeSet<Path> = refine(g, &covered, refine_to);
        let refined_target: BTreeSet<Path> = refine(g, &target, refine_to);
        if refined_union == refined_target {
            OntoOracle::InImage
        } else {
            OntoOracle::NotInImageUpToDepth
        }
    }
}

/// Brute-force check, extracted from the onto-direction proofs: at depth `L`,
/// `P_mu` is in the image iff the images of the depth-`L` cylinder
/// projections contained in `P_mu` tile it exactly.
pub fn diagonal_onto_oracle(pairs: &PairSet, mu: &Path, depth: usize) -> Result<OntoOracle> {
    Ok(OntoTable::build(pairs, depth)?.check(mu))
}

fn refine(g: &SharedGraph, family: &[Path], to: usize) -> BTreeSet<Path> {
    let mut out = BTreeSet::new();
    for beta in family {
        for tail in g.paths_from(beta.range(g), to - beta.len()) {
            out.insert(beta.concat(g, &tail).expect("composable"));
        }
    }
    out
}

/// The summand `L_s(xi) L_J(xi) L_r(xi)*` realized inside the image as
/// `P_gamma Lambda(S_{E(xi)})`; the equality of the two routes is asserted.
pub fn summand_in_image(cg: &CodingGraph, xi: &CodingPath) -> Result<AlgebraElement> {
    match is_left_synchronizing(cg)? {
        SyncDecision::Yes { .. } => {}
        SyncDecision::No { .. } => return Err(Error::VerdictNotAuto),
    }
    let g = cg.graph().clone();
    let gamma = cg.label_path(xi)?;
    let e_word = cg.e_label(xi)?;
    let p_gamma = AlgebraElement::range_projection(g.clone(), &gamma);
    let result = p_gamma.multiply(&cg.pairs().lambda_of_path(&e_word)?)?;
    let direct = cg
        .label_s(xi)
        .multiply(&cg.label_j(xi))?
        .multiply(&cg.label_r(xi).adjoint())?;
    if result != direct {
        return Err(Error::Internal(
            "summand projection disagrees with the direct label product".into(),
        ));
    }
    Ok(result)
}

/// Per-edge degrees of the generator images and whether they all lie in the
/// even-degree span (in which case the endomorphism cannot be surjective).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenDegreeReport {
    /// `(edge id, degrees of the graded components of Lambda(S_e))`.
    pub degrees: Vec<(String, Vec<i64>)>,
    pub fires: bool,
}

/// The even-degree image obstruction: if every generator image is a sum of
/// even-degree homogeneous components, the image sits inside the proper
/// subalgebra spanned by even degrees.
pub fn even_degree_obstruction(pairs: &PairSet) -> Result<EvenDegreeReport> {
    let g = pairs.graph().clone();
    let mut degrees = Vec::new();
    let mut all_even = true;
    for e in g.edges() {
        let path = g.path_at(g.source(e), vec![e]).expect("edge path");
        let image = pairs.lambda_of_path(&path)?;
        let degs: Vec<i64> = image.graded_components().keys().copied().collect();
        if degs.iter().any(|d| d.rem_euclid(2) != 0) {
            all_even = false;
        }
        degrees.push((g.edge_id(e).to_owned(), degs));
    }
    Ok(EvenDegreeReport {
        degrees,
        fires: all_even,
    })
}
