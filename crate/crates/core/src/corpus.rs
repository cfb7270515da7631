//! Small standing-assumption graphs, the seed-deterministic corpus built on
//! them, and the property checks the verification suites run over it.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::AlgebraElement;
use crate::coding::{Classification, CodingGraph, EdgeLabel};
use crate::error::Error;
use crate::graph::{Graph, Path, SharedGraph};
use crate::splitting::{final_negative_edges, split_at};
use crate::sync::{diagonal_onto_oracle, diagonal_verdict, OntoOracle, VerdictOutcome};
use crate::unitary::PairSet;

pub fn shared(g: Graph) -> SharedGraph {
    Arc::new(g)
}

fn build(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Graph {
    Graph::new(
        vertices.iter().map(|s| s.to_string()),
        edges
            .iter()
            .map(|(id, s, r)| (id.to_string(), s.to_string(), r.to_string())),
    )
    .expect("corpus graph is well-formed")
}

/// One vertex, two loops (the graph of the Cuntz algebra on two generators).
pub fn o2() -> Graph {
    build(&["v"], &[("1", "v", "v"), ("2", "v", "v")])
}

/// One vertex, three loops.
pub fn o3() -> Graph {
    build(&["v"], &[("1", "v", "v"), ("2", "v", "v"), ("3", "v", "v")])
}

/// Two vertices: a loop at `v` plus a 2-cycle through `w`.
pub fn two_vertex_f() -> Graph {
    build(
        &["v", "w"],
        &[("e1", "v", "v"), ("e2", "v", "w"), ("e3", "w", "v")],
    )
}

/// Two vertices with parallel edges in both directions.
pub fn two_vertex_double() -> Graph {
    build(
        &["a", "b"],
        &[
            ("p", "a", "b"),
            ("q", "a", "b"),
            ("r", "b", "a"),
            ("s", "b", "a"),
        ],
    )
}

/// A 3-cycle with a chord and a loop, three vertices.
pub fn three_vertex_chord() -> Graph {
    build(
        &["x", "y", "z"],
        &[
            ("a", "x", "y"),
            ("b", "y", "z"),
            ("c", "z", "x"),
            ("d", "x", "z"),
            ("l", "y", "y"),
        ],
    )
}

/// A 4-cycle with two extra chords, four vertices.
pub fn four_vertex_ring() -> Graph {
    build(
        &["n0", "n1", "n2", "n3"],
        &[
            ("a", "n0", "n1"),
            ("b", "n1", "n2"),
            ("c", "n2", "n3"),
            ("d", "n3", "n0"),
            ("e", "n0", "n2"),
            ("f", "n2", "n0"),
        ],
    )
}

/// The base graphs the randomized corpus draws from (all at most 4 vertices,
/// all satisfying the standing assumptions).
pub fn base_graphs() -> Vec<SharedGraph> {
    vec![
        shared(o2()),
        shared(o3()),
        shared(two_vertex_f()),
        shared(two_vertex_double()),
        shared(three_vertex_chord()),
        shared(four_vertex_ring()),
    ]
}

/// A corpus member: a base graph, the generating seed, and the pair set.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub graph: SharedGraph,
    pub seed: u64,
    pub max_len: usize,
    pub pairs: PairSet,
}

/// Deterministically generates `count` corpus entries by sweeping seeds over
/// the base graphs, skipping seeds where random generation fails to match the
/// two partitions.
pub fn generate(count: usize, max_len: usize) -> Vec<CorpusEntry> {
    let graphs = base_graphs();
    let mut out = Vec::with_capacity(count);
    let mut seed = 0u64;
    while out.len() < count && seed < 50_000 {
        let graph = graphs[(seed as usize) % graphs.len()].clone();
        let len = 2 + (seed as usize / graphs.len()) % (max_len.saturating_sub(1)).max(1);
        if let Ok(pairs) = PairSet::random(graph.clone(), len, seed) {
            out.push(CorpusEntry {
                graph,
                seed,
                max_len: len,
                pairs,
            });
        }
        seed += 1;
    }
    out
}

type CheckResult = std::result::Result<(), String>;

fn fail(entry: &CorpusEntry, what: impl std::fmt::Display) -> CheckResult {
    Err(format!("seed {}: {}", entry.seed, what))
}

/// No vertex emits two distinct edges with the same label.
pub fn check_right_resolving(entry: &CorpusEntry, cg: &CodingGraph) -> CheckResult {
    if !cg.check_resolving().right_resolving() {
        return fail(entry, "a vertex emits two edges with equal labels");
    }
    Ok(())
}

/// On all-non-negative graphs, no two distinct edges share both e-label and
/// range; also a vertex emitting a non-positive edge emits nothing else.
pub fn check_left_resolving(entry: &CorpusEntry, cg: &CodingGraph) -> CheckResult {
    for v in 0..cg.vertices().len() {
        let out = cg.out_edges(v);
        if out.iter().any(|&e| cg.edge(e).label.degree() <= 0) && out.len() != 1 {
            return fail(entry, "a non-positive emitter with extra edges");
        }
    }
    if matches!(cg.classify(), Classification::AllNonNegative)
        && cg.check_resolving().left_resolving() != Some(true)
    {
        return fail(entry, "left-resolving violated on a non-negative graph");
    }
    Ok(())
}

/// Out-path label partitions: on an all-non-negative graph, the label
/// words of the length-`l` paths out of any vertex partition its mu-range.
pub fn check_out_path_partitions(
    entry: &CorpusEntry,
    cg: &CodingGraph,
    max_l: usize,
) -> CheckResult {
    if !matches!(cg.classify(), Classification::AllNonNegative) {
        return Ok(());
    }
    let g = cg.graph();
    for v in 0..cg.vertices().len() {
        let range = cg.vertices()[v].mu.range(g);
        let mut frontier = vec![(v, g.vertex_path(range))];
        for l in 1..=max_l {
            let mut next = Vec::new();
            for (at, word) in &frontier {
                for &e in cg.out_edges(*at) {
                    let word = match &cg.edge(e).label {
                        EdgeLabel::Positive(a) => word.concat(g, a).expect("labels compose"),
                        EdgeLabel::Zero(_) => word.clone(),
                        EdgeLabel::Negative(_) => unreachable!("checked non-negative"),
                    };
                    next.push((cg.edge(e).dst, word));
                }
            }
            frontier = next;
            let words: Vec<Path> = frontier.iter().map(|(_, w)| w.clone()).collect();
            match g.is_partition(range, &words) {
                Ok(true) => {}
                _ => {
                    return fail(
                        entry,
                        format!("length-{l} out-labels fail to partition the range"),
                    )
                }
            }
        }
    }
    Ok(())
}

/// Runs the splitting loop manually, re-deriving every new edge from the
/// old graph through the four splitting relations and cross-checking the
/// negative count, the trailing heights, and the presented unitary.
pub fn check_splitting_bookkeeping(entry: &CorpusEntry, fuel: u64) -> CheckResult {
    let u = entry.pairs.element();
    let mut current = entry.pairs.clone();
    for _ in 0..fuel {
        let cg = CodingGraph::build(&current);
        match cg.classify() {
            Classification::AllNonNegative | Classification::HasNonPositiveCycle(_) => {
                return Ok(())
            }
            Classification::HasNegativeEdges => {}
        }
        let fnes = final_negative_edges(&cg);
        let lowest = match fnes.iter().map(|f| f.height).min() {
            Some(h) => h,
            None => return fail(entry, "negative edges but no final negative edge"),
        };
        let dest = fnes
            .iter()
            .filter(|f| f.height == lowest)
            .map(|f| f.destination)
            .min()
            .expect("nonempty");
        let v = cg.vertices()[dest].clone();
        let next = match split_at(&cg, &v) {
            Ok(n) => n,
            Err(e) => return fail(entry, format!("split failed: {e}")),
        };
        if next.element() != u {
            return fail(entry, "split changed the presented unitary");
        }
        let cg2 = CodingGraph::build(&next);
        if let Err(msg) = verify_split_edges(&cg, &cg2, dest) {
            return fail(entry, msg);
        }
        let neg = |c: &CodingGraph| c.edges().iter().filter(|e| e.label.degree() < 0).count();
        if neg(&cg2) > neg(&cg) {
            return fail(entry, "splitting increased the number of negative edges");
        }
        if let Err(msg) = verify_heights(&cg, &cg2, dest, &fnes) {
            return fail(entry, msg);
        }
        current = next;
    }
    fail(entry, "fuel exhausted")
}

/// Predicts the split graph's edges from the old one (the four relations plus
/// untouched edges) and compares the multisets exactly.
fn verify_split_edges(
    old: &CodingGraph,
    new: &CodingGraph,
    split: usize,
) -> std::result::Result<(), String> {
    let g = old.graph();
    let key = |cg: &CodingGraph, src: usize, dst: usize, deg: i64| {
        (
            cg.describe_vertex(src),
            cg.describe_vertex(dst),
            deg,
        )
    };
    let mu = &old.vertices()[split].mu;
    let extensions: Vec<Path> = g
        .out_edges(mu.range(g))
        .iter()
        .map(|&f| mu.extend(g, f).expect("composable"))
        .collect();
    let new_index: BTreeMap<String, usize> = new
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, _)| (new.describe_vertex(i), i))
        .collect();
    let name_of_ext = |p: &Path, nu_ext: &Path| {
        format!("({},{})", g.path_string(p), g.path_string(nu_ext))
    };
    let nu = &old.vertices()[split].nu;
    let nu_extensions: Vec<Path> = g
        .out_edges(mu.range(g))
        .iter()
        .map(|&f| nu.extend(g, f).expect("composable"))
        .collect();

    let mut predicted: BTreeMap<(String, String, i64), usize> = BTreeMap::new();
    let mut add = |k: (String, String, i64)| *predicted.entry(k).or_insert(0) += 1;

    for e in old.edges() {
        let deg = e.label.degree();
        match (e.src == split, e.dst == split) {
            (false, false) => add(key(old, e.src, e.dst, deg)),
            (true, false) => {
                // Exactly one extension keeps the edge, one degree lower.
                let mut hits = 0;
                for (p, q) in extensions.iter().zip(&nu_extensions) {
                    let name = name_of_ext(p, q);
                    if let Some(&i) = new_index.get(&name) {
                        if new
                            .out_edges(i)
                            .iter()
                            .any(|&ne| new.edge(ne).dst == remap(old, new, e.dst))
                        {
                            add((
                                name.clone(),
                                new.describe_vertex(remap(old, new, e.dst)),
                                deg - 1,
                            ));
                            hits += 1;
                        }
                    }
                }
                if hits != 1 {
                    return Err(format!("outgoing split edge kept {hits} extensions"));
                }
            }
            (false, true) => {
                if deg >= 0 {
                    // Every extension receives the edge, one degree higher.
                    for (p, q) in extensions.iter().zip(&nu_extensions) {
                        add((
                            old.describe_vertex(e.src),
                            name_of_ext(p, q),
                            deg + 1,
                        ));
                    }
                } else {
                    // Exactly one descendant, one degree higher.
                    let src_name = old.describe_vertex(e.src);
                    let mut hits = 0;
                    for (p, q) in extensions.iter().zip(&nu_extensions) {
                        let name = name_of_ext(p, q);
                        if let (Some(&si), Some(&di)) =
                            (new_index.get(&src_name), new_index.get(&name))
                        {
                            if new.out_edges(si).iter().any(|&ne| new.edge(ne).dst == di) {
                                add((src_name.clone(), name, deg + 1));
                                hits += 1;
                            }
                        }
                    }
                    if hits != 1 {
                        return Err(format!("negative incoming edge has {hits} descendants"));
                    }
                }
            }
            (true, true) => {
                // Self loop: exactly one f works for every b, same degree.
                for (pb, qb) in extensions.iter().zip(&nu_extensions) {
                    let target = name_of_ext(pb, qb);
                    let mut hits = 0;
                    for (pf, qf) in extensions.iter().zip(&nu_extensions) {
                        let srcn = name_of_ext(pf, qf);
                        if let (Some(&si), Some(&di)) =
                            (new_index.get(&srcn), new_index.get(&target))
                        {
                            if new.out_edges(si).iter().any(|&ne| new.edge(ne).dst == di) {
                                add((srcn, target.clone(), deg));
                                hits += 1;
                            }
                        }
                    }
                    if hits != 1 {
                        return Err(format!("self-loop extension count {hits} for one b"));
                    }
                }
            }
        }
    }

    let mut actual: BTreeMap<(String, String, i64), usize> = BTreeMap::new();
    for e in new.edges() {
        *actual
            .entry(key(new, e.src, e.dst, e.label.degree()))
            .or_insert(0) += 1;
    }
    if predicted != actual {
        return Err("splitting relations do not account for the new edge set".into());
    }
    Ok(())
}

fn remap(old: &CodingGraph, new: &CodingGraph, v: usize) -> usize {
    let name = old.describe_vertex(v);
    (0..new.vertices().len())
        .find(|&i| new.describe_vertex(i) == name)
        .expect("untouched vertices survive the split")
}

/// Active edges of positive height drop by exactly one; inactive final
/// negative edges keep their heights.
fn verify_heights(
    old: &CodingGraph,
    new: &CodingGraph,
    split: usize,
    fnes: &[crate::splitting::FinalNegativeEdge],
) -> std::result::Result<(), String> {
    let new_fnes = final_negative_edges(new);
    let height_of = |src: &str, dst: &str| -> Option<usize> {
        new_fnes
            .iter()
            .find(|f| {
                let e = new.edge(f.edge);
                new.describe_vertex(e.src) == src && new.describe_vertex(e.dst) == dst
            })
            .map(|f| f.height)
    };
    for f in fnes {
        let e = old.edge(f.edge);
        if e.src == split || e.dst == split {
            continue;
        }
        let src = old.describe_vertex(e.src);
        let dst = old.describe_vertex(e.dst);
        let expected = if f.destination == split {
            if f.height == 0 {
                continue;
            }
            f.height - 1
        } else {
            f.height
        };
        match height_of(&src, &dst) {
            Some(h) if h == expected => {}
            other => {
                return Err(format!(
                    "height of {src}->{dst} moved {:?} -> {other:?}, expected {expected}",
                    f.height
                ))
            }
        }
    }
    Ok(())
}

/// The coding-graph route and the algebraic route to `Lambda(S_alpha)` agree
/// for every path up to `max_len`.
pub fn check_image_agreement(entry: &CorpusEntry, max_len: usize) -> CheckResult {
    let g = entry.graph.clone();
    let cg = CodingGraph::build(&entry.pairs);
    let powers = match entry.pairs.u_powers(max_len) {
        Ok(p) => p,
        Err(e) => return fail(entry, format!("powers: {e}")),
    };
    for v in g.vertices() {
        for len in 1..=max_len {
            for alpha in g.paths_from(v, len) {
                let via_coding = match cg.image_of_path(&alpha) {
                    Ok(x) => x,
                    Err(e) => return fail(entry, format!("image_of_path: {e}")),
                };
                let elem = AlgebraElement::path_isometry(g.clone(), &alpha);
                let via_lambda = match entry.pairs.lambda_apply_with_powers(&elem, &powers) {
                    Ok(x) => x,
                    Err(e) => return fail(entry, format!("lambda: {e}")),
                };
                if via_coding != via_lambda {
                    return fail(
                        entry,
                        format!("image mismatch at alpha = {}", g.path_string(&alpha)),
                    );
                }
            }
        }
    }
    Ok(())
}

/// Criterion/oracle agreement: an Auto verdict certifies every short
/// projection into the image at some depth <= `max_depth`; a negative verdict
/// produces a witness projection the oracle cannot certify.
pub fn check_oracle_agreement(entry: &CorpusEntry, max_depth: usize) -> CheckResult {
    let g = entry.graph.clone();
    let verdict = match diagonal_verdict(&entry.pairs) {
        Ok(v) => v,
        Err(e) => return fail(entry, format!("verdict: {e}")),
    };
    let min_depth = entry
        .pairs
        .first_components()
        .map(Path::len)
        .max()
        .unwrap_or(1)
        .max(1);
    match &verdict.outcome {
        VerdictOutcome::Auto { .. } => {
            let mut targets = Vec::new();
            for v in g.vertices() {
                for len in 1..=3usize {
                    targets.extend(g.paths_from(v, len));
                }
            }
            // Certificates at depth L stay valid at L+1, so one shared table
            // per depth level suffices; deepen only while something fails.
            for depth in min_depth.max(3)..=max_depth {
                let table = match crate::sync::OntoTable::build(&entry.pairs, depth) {
                    Ok(t) => t,
                    Err(e) => return fail(entry, format!("oracle: {e}")),
                };
                targets.retain(|mu| table.check(mu) != OntoOracle::InImage);
                if targets.is_empty() {
                    break;
                }
            }
            if let Some(mu) = targets.first() {
                return fail(
                    entry,
                    format!(
                        "Auto verdict but P_{} has no certificate up to depth {max_depth}",
                        g.path_string(mu)
                    ),
                );
            }
        }
        VerdictOutcome::NotAutoNonPositiveCycle { witness } => {
            let cg = &verdict.split.graph;
            let first = cg.edge(witness[0]).src;
            let mu1 = cg.vertices()[first].mu.clone();
            let mu = proper_subcylinder(&g, &mu1);
            let depth = min_depth.max(mu.len()).max(5);
            match diagonal_onto_oracle(&entry.pairs, &mu, depth) {
                Ok(OntoOracle::NotInImageUpToDepth) => {}
                Ok(OntoOracle::InImage) => {
                    return fail(
                        entry,
                        format!(
                            "non-positive-cycle verdict but P_{} certified in image",
                            g.path_string(&mu)
                        ),
                    )
                }
                Err(e) => return fail(entry, format!("oracle: {e}")),
            }
        }
        VerdictOutcome::NotAutoNotSynchronizing { witness } => {
            let cg = &verdict.split.graph;
            let mu = cg.vertices()[witness.0.start].mu.clone();
            let depth = min_depth.max(mu.len()).max(5);
            match diagonal_onto_oracle(&entry.pairs, &mu, depth) {
                Ok(OntoOracle::NotInImageUpToDepth) => {}
                Ok(OntoOracle::InImage) => {
                    return fail(
                        entry,
                        format!(
                            "not-synchronizing verdict but P_{} certified in image",
                            g.path_string(&mu)
                        ),
                    )
                }
                Err(e) => return fail(entry, format!("oracle: {e}")),
            }
        }
    }
    Ok(())
}

/// For Auto verdicts, exhaustive enumeration confirms the computed delay is
/// sound (length-m e-equal paths share sources) and minimal (some length-m-1
/// pair does not). Entries whose enumeration would be too large are skipped.
pub fn check_delay_minimality(entry: &CorpusEntry) -> CheckResult {
    let verdict = match diagonal_verdict(&entry.pairs) {
        Ok(v) => v,
        Err(e) => return fail(entry, format!("verdict: {e}")),
    };
    let Some(m) = verdict.delay() else {
        return Ok(());
    };
    let cg = &verdict.split.graph;
    let max_out = (0..cg.vertices().len())
        .map(|v| cg.out_edges(v).len())
        .max()
        .unwrap_or(0);
    if cg.vertices().len() * max_out.pow(m as u32) > 100_000 {
        return Ok(());
    }
    let sync_at = |len: usize| -> bool {
        let mut partial: Vec<(usize, usize, Vec<usize>)> = (0..cg.vertices().len())
            .map(|v| (v, v, vec![cg.vertices()[v].e]))
            .collect();
        for _ in 0..len {
            let mut next = Vec::new();
            for (start, at, word) in partial {
                for &e in cg.out_edges(at) {
                    let dst = cg.edge(e).dst;
                    let mut w = word.clone();
                    w.push(cg.vertices()[dst].e);
                    next.push((start, dst, w));
                }
            }
            partial = next;
        }
        let mut source_of: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for (start, _, word) in partial {
            match source_of.insert(word, start) {
                Some(prev) if prev != start => return false,
                _ => {}
            }
        }
        true
    };
    if !sync_at(m) {
        return fail(entry, format!("delay {m} is not sound"));
    }
    if m > 0 && sync_at(m - 1) {
        return fail(entry, format!("delay {m} is not minimal"));
    }
    Ok(())
}

/// A path properly refining `Z(mu)`: follow unique out-edges to the first
/// branching vertex and take one more edge. Such a vertex exists because
/// every cycle has an exit.
fn proper_subcylinder(g: &SharedGraph, mu: &Path) -> Path {
    let mut p = mu.clone();
    for _ in 0..=g.vertex_count() {
        let out = g.out_edges(p.range(g));
        let e = out[0];
        let next = p.extend(g, e).expect("composable");
        if out.len() > 1 {
            return next;
        }
        p = next;
    }
    unreachable!("a branching vertex is reachable under the standing assumptions")
}

/// Byte-stability of the deterministic outputs.
pub fn check_determinism(entry: &CorpusEntry) -> CheckResult {
    let build = || {
        let cg = CodingGraph::build(&entry.pairs);
        let dot = crate::dot::coding_graph_dot(&cg);
        let json = serde_json::to_string(&crate::json::UnitaryJson::from_pair_set(&entry.pairs))
            .expect("serializable");
        (dot, json)
    };
    if build() != build() {
        return fail(entry, "output not byte-stable");
    }
    let verdict = diagonal_verdict(&entry.pairs).map_err(|e| format!("{e}"))?;
    let again = diagonal_verdict(&entry.pairs).map_err(|e| format!("{e}"))?;
    let vj = serde_json::to_string(&crate::json::VerdictJson::from_verdict(&verdict)).unwrap();
    let vj2 = serde_json::to_string(&crate::json::VerdictJson::from_verdict(&again)).unwrap();
    if vj != vj2 {
        return fail(entry, "verdict JSON not byte-stable");
    }
    Ok(())
}

/// Splitting terminates below the fuel bound.
pub fn check_termination(entry: &CorpusEntry) -> CheckResult {
    match crate::splitting::run_splitting_algorithm(&entry.pairs) {
        Ok(_) => Ok(()),
        Err(Error::FuelExhausted(_)) => fail(entry, "splitting hit the fuel cap"),
        Err(e) => fail(entry, format!("splitting: {e}")),
    }
}
