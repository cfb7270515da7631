//! Polynomial unitaries `u_J = sum of S_mu S_nu*` presented by pair sets, and
//! the endomorphism they induce.

use num_bigint::BigInt;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::graph::{Path, SharedGraph, VertexIdx};

/// A validated presentation `J` of a polynomial unitary.
///
/// Invariants: every pair has matching sources and ranges, both coordinate
/// families are partitions of unity, first components are pairwise distinct,
/// and every second component has length at least 1. Pairs are kept sorted by
/// `(mu, nu)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSet {
    graph: SharedGraph,
    pairs: Vec<(Path, Path)>,
    warnings: Vec<String>,
}

impl PairSet {
    /// Validates and builds a pair set, also materializing `u_J` and checking
    /// it is unitary (an internal cross-check; the partition conditions
    /// already force unitarity).
    pub fn build(graph: SharedGraph, mut pairs: Vec<(Path, Path)>) -> Result<PairSet> {
        let mut warnings = Vec::new();
        for (mu, nu) in &pairs {
            if mu.source() != nu.source() {
                return Err(Error::PairSourceMismatch {
                    mu: graph.path_string(mu),
                    nu: graph.path_string(nu),
                });
            }
            if mu.range(&graph) != nu.range(&graph) {
                return Err(Error::PairRangeMismatch {
                    mu: graph.path_string(mu),
                    nu: graph.path_string(nu),
                });
            }
            if nu.is_empty() {
                return Err(Error::EmptySecondComponent {
                    mu: graph.path_string(mu),
                    nu: graph.path_string(nu),
                });
            }
            if mu.is_empty() {
                warnings.push(format!(
                    "pair ({}, {}) has a length-0 first component",
                    graph.path_string(mu),
                    graph.path_string(nu)
                ));
            }
        }
        pairs.sort();
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::DuplicateFirstComponent(graph.path_string(&w[0].0)));
            }
        }
        for (side, pick) in [(1u8, 0usize), (2, 1)] {
            check_partition_of_unity(
                &graph,
                side,
                pairs.iter().map(|p| if pick == 0 { &p.0 } else { &p.1 }),
            )?;
        }
        let ps = PairSet {
            graph,
            pairs,
            warnings,
        };
        if !ps.element().is_unitary()? {
            return Err(Error::Internal(
                "partition conditions hold but the element is not unitary".into(),
            ));
        }
        Ok(ps)
    }

    pub fn graph(&self) -> &SharedGraph {
        &self.graph
    }

    pub fn pairs(&self) -> &[(Path, Path)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn first_components(&self) -> impl Iterator<Item = &Path> {
        self.pairs.iter().map(|p| &p.0)
    }

    pub fn second_components(&self) -> impl Iterator<Item = &Path> {
        self.pairs.iter().map(|p| &p.1)
    }

    /// The unitary `u_J` as an algebra element.
    pub fn element(&self) -> AlgebraElement {
        let raw = self
            .pairs
            .iter()
            .map(|(mu, nu)| (BigInt::one(), mu.clone(), nu.clone()))
            .collect();
        AlgebraElement::from_raw(self.graph.clone(), raw).expect("pair ranges match")
    }

    /// `[u_1, ..., u_k]` for the presented unitary.
    pub fn u_powers(&self, k: usize) -> Result<Vec<AlgebraElement>> {
        if k == 0 {
            return Ok(Vec::new());
        }
        self.element().u_powers(k)
    }

    /// The induced endomorphism on an arbitrary element, via
    /// `Lambda(S_mu S_nu*) = u_{|mu|} S_mu S_nu* u_{|nu|}*` extended linearly.
    pub fn lambda_apply(&self, a: &AlgebraElement) -> Result<AlgebraElement> {
        let k = a
            .terms()
            .map(|(m, _)| m.mu().len().max(m.nu().len()))
            .max()
            .unwrap_or(0);
        let powers = self.u_powers(k)?;
        self.lambda_apply_with_powers(a, &powers)
    }

    /// Same as [`PairSet::lambda_apply`] but reusing precomputed powers
    /// (`powers[i]` must be `u_{i+1}`).
    pub fn lambda_apply_with_powers(
        &self,
        a: &AlgebraElement,
        powers: &[AlgebraElement],
    ) -> Result<AlgebraElement> {
        let g = self.graph.clone();
        let mut out = AlgebraElement::zero(g.clone());
        for (m, c) in a.terms() {
            let mut piece = AlgebraElement::from_raw(
                g.clone(),
                vec![(c.clone(), m.mu().clone(), m.nu().clone())],
            )?;
            if !m.mu().is_empty() {
                piece = powers[m.mu().len() - 1].multiply(&piece)?;
            }
            if !m.nu().is_empty() {
                piece = piece.multiply(&powers[m.nu().len() - 1].adjoint())?;
            }
            out = out.add(&piece)?;
        }
        Ok(out)
    }

    /// `Lambda(S_alpha)` for a single path.
    pub fn lambda_of_path(&self, alpha: &Path) -> Result<AlgebraElement> {
        self.lambda_apply(&AlgebraElement::path_isometry(self.graph.clone(), alpha))
    }

    /// The members of the chosen side extending `nu`; they form a partition
    /// of `nu` whenever `nu` is a prefix of some member.
    pub fn contains_partition_of_prefix(&self, side: u8, nu: &Path) -> Result<Vec<Path>> {
        let members: Vec<&Path> = match side {
            1 => self.first_components().collect(),
            _ => self.second_components().collect(),
        };
        let mut hits: Vec<Path> = members
            .into_iter()
            .filter(|m| nu.is_prefix_of(m))
            .cloned()
            .collect();
        if hits.is_empty() {
            return Err(Error::NoPrefixMember(self.graph.path_string(nu)));
        }
        hits.sort();
        Ok(hits)
    }

    /// Looks up the pair with first component `mu`.
    pub fn pair_for(&self, mu: &Path) -> Result<&(Path, Path)> {
        self.pairs
            .iter()
            .find(|(m, _)| m == mu)
            .ok_or_else(|| Error::NotFirstComponent(self.graph.path_string(mu)))
    }

    /// Recovers a pair-set presentation from a unitary element: descend the
    /// cylinder tree and stop at the shortest `nu` where `u S_nu` collapses to
    /// a single coefficient-1 isometry `S_mu`; vertex-length stops are
    /// expanded one edge so second components keep length at least 1.
    pub fn from_element(u: &AlgebraElement) -> Result<PairSet> {
        if !u.is_unitary()? {
            return Err(Error::NotUnitary);
        }
        let g = u.graph().clone();
        let depth_cap = 2 * u
            .terms()
            .map(|(m, _)| m.mu().len().max(m.nu().len()))
            .max()
            .unwrap_or(0)
            + g.vertex_count()
            + 2;

        let mut pairs = Vec::new();
        for v in g.vertices() {
            let mut stack = vec![g.vertex_path(v)];
            while let Some(nu) = stack.pop() {
                let single = single_isometry(u, &nu)?;
                match single {
                    Some(mu) if !nu.is_empty() => pairs.push((mu, nu)),
                    _ => {
                        if nu.len() >= depth_cap {
                            return Err(Error::NotPolynomialUnitary(format!(
                                "no presentation found within depth {}",
                                depth_cap
                            )));
                        }
                        for &e in g.out_edges(nu.range(&g)) {
                            stack.push(nu.extend(&g, e).expect("composable"));
                        }
                    }
                }
            }
        }

        let ps = PairSet::build(g, pairs)
            .map_err(|e| Error::NotPolynomialUnitary(e.to_string()))?;
        if &ps.element() != u {
            return Err(Error::NotPolynomialUnitary(
                "reconstructed pair set does not re-materialize the element".into(),
            ));
        }
        Ok(ps)
    }

    /// Preprocessing for presentations with vertex-length second components:
    /// each such pair `(mu, v)` is replaced by its one-edge extensions
    /// `(mu e, e)` before validation. Expansion is explicit rather than
    /// silent so a user's presentation is never rewritten invisibly.
    pub fn build_expanding(
        graph: SharedGraph,
        pairs: Vec<(Path, Path)>,
    ) -> Result<PairSet> {
        let expanded = expand_vertex_pairs(&graph, pairs);
        PairSet::build(graph, expanded)
    }

    /// Seed-deterministic random member of the polynomial-unitary class: two
    /// independently grown partitions of unity, paired by a random bijection
    /// inside each (source, range) class; retries until the classes match.
    pub fn random(graph: SharedGraph, max_len: usize, seed: u64) -> Result<PairSet> {
        const ATTEMPTS: u32 = 64;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..ATTEMPTS {
            let side1 = grow_partition(&graph, max_len, &mut rng);
            let side2 = grow_partition(&graph, max_len, &mut rng);
            if let Some(pairs) = match_sides(&graph, side1, side2, &mut rng) {
                return PairSet::build(graph.clone(), pairs);
            }
        }
        Err(Error::GenerationFailed(ATTEMPTS))
    }
}

/// Replaces every pair whose second component is a vertex by its one-edge
/// extensions (the summation relation at that vertex); other pairs pass
/// through unchanged.
pub fn expand_vertex_pairs(graph: &SharedGraph, pairs: Vec<(Path, Path)>) -> Vec<(Path, Path)> {
    let mut out = Vec::with_capacity(pairs.len());
    for (mu, nu) in pairs {
        if nu.is_empty() {
            for &e in graph.out_edges(nu.source()) {
                if mu.range(graph) != nu.source() {
                    // Leave malformed pairs for validation to report.
                    out.push((mu.clone(), nu.clone()));
                    break;
                }
                out.push((
                    mu.extend(graph, e).expect("composable"),
                    nu.extend(graph, e).expect("composable"),
                ));
            }
        } else {
            out.push((mu, nu));
        }
    }
    out
}

/// Tests that `u S_nu` is exactly one monomial `1 * S_mu` (empty co-isometry
/// leg); returns the `mu`.
fn single_isometry(u: &AlgebraElement, nu: &Path) -> Result<Option<Path>> {
    let g = u.graph().clone();
    let prod = u.multiply(&AlgebraElement::path_isometry(g, nu))?;
    let mut terms = prod.terms();
    let first = match terms.next() {
        Some(t) => t,
        None => return Ok(None),
    };
    if terms.next().is_some() {
        return Ok(None);
    }
    let (m, c) = first;
    if c.is_one() && m.nu().is_empty() {
        return Ok(Some(m.mu().clone()));
    }
    Ok(None)
}

fn check_partition_of_unity<'a>(
    graph: &SharedGraph,
    side: u8,
    members: impl Iterator<Item = &'a Path>,
) -> Result<()> {
    let mut by_vertex: Vec<Vec<Path>> = vec![Vec::new(); graph.vertex_count()];
    for p in members {
        by_vertex[p.source()].push(p.clone());
    }
    for v in graph.vertices() {
        if !graph.is_partition(v, &by_vertex[v])? {
            return Err(Error::NotPartitionOfUnity {
                side,
                vertex: graph.vertex_id(v).to_owned(),
            });
        }
    }
    Ok(())
}

/// Grows a partition of unity with all members of length >= 1: start from the
/// one-edge partition and repeatedly replace a random member by its one-edge
/// extensions, up to `max_len`.
fn grow_partition(graph: &SharedGraph, max_len: usize, rng: &mut ChaCha8Rng) -> Vec<Path> {
    let mut parts: Vec<Path> = graph
        .vertices()
        .flat_map(|v| graph.paths_from(v, 1))
        .collect();
    if max_len <= 1 {
        return parts;
    }
    let splits = rng.gen_range(0..=2 * graph.vertex_count());
    for _ in 0..splits {
        let candidates: Vec<usize> = parts
            .iter()
            .enumerate()
            .filter(|(_, p)| p.len() < max_len)
            .map(|(i, _)| i)
            .collect();
        let Some(&i) = candidates.choose(rng) else {
            break;
        };
        let p = parts.swap_remove(i);
        for &e in graph.out_edges(p.range(graph)) {
            parts.push(p.extend(graph, e).expect("composable"));
        }
    }
    parts.sort();
    parts
}

/// Pairs two partitions by a random bijection within each (source, range)
/// class; `None` when the class sizes disagree.
fn match_sides(
    graph: &SharedGraph,
    side1: Vec<Path>,
    side2: Vec<Path>,
    rng: &mut ChaCha8Rng,
) -> Option<Vec<(Path, Path)>> {
    use std::collections::BTreeMap;
    let key = |p: &Path| -> (VertexIdx, VertexIdx) { (p.source(), p.range(graph)) };
    let mut classes1: BTreeMap<(usize, usize), Vec<Path>> = BTreeMap::new();
    let mut classes2: BTreeMap<(usize, usize), Vec<Path>> = BTreeMap::new();
    for p in side1 {
        classes1.entry(key(&p)).or_default().push(p);
    }
    for p in side2 {
        classes2.entry(key(&p)).or_default().push(p);
    }
    if classes1.len() != classes2.len() {
        return None;
    }
    let mut pairs = Vec::new();
    for ((k1, mut mus), (k2, nus)) in classes1.into_iter().zip(classes2) {
        if k1 != k2 || mus.len() != nus.len() {
            return None;
        }
        mus.shuffle(rng);
        pairs.extend(mus.into_iter().zip(nus));
    }
    Some(pairs)
}
