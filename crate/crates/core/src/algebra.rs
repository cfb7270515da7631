//! Exact arithmetic in the integral Leavitt path algebra of a graph.
//!
//! Elements are integer-linear combinations of monomials `S_mu S_nu*` kept in
//! a canonical normal form. The normal form is the standard special-edge basis:
//! a monomial is reducible when `mu` and `nu` both end with the designated
//! special edge of the same vertex, in which case the summation relation
//! rewrites it into strictly smaller or terminally irreducible monomials.
//! The rewrite terminates because the surviving recursive branch strictly
//! shortens the monomial while every sibling branch ends in a non-special
//! edge pair; a fuel counter guards against implementation bugs regardless.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{same_graph, Graph, Path, SharedGraph, VertexIdx};

const REWRITE_FUEL: u64 = 50_000_000;

/// A basis word `S_mu S_nu*` with `r(mu) = r(nu)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    mu: Path,
    nu: Path,
}

impl Monomial {
    pub fn new(g: &Graph, mu: Path, nu: Path) -> Result<Monomial> {
        if mu.range(g) != nu.range(g) {
            return Err(Error::RangeMismatch {
                mu: g.path_string(&mu),
                nu: g.path_string(&nu),
            });
        }
        Ok(Monomial { mu, nu })
    }

    pub fn mu(&self) -> &Path {
        &self.mu
    }

    pub fn nu(&self) -> &Path {
        &self.nu
    }

    /// Grading: `|mu| - |nu|`.
    pub fn degree(&self) -> i64 {
        self.mu.len() as i64 - self.nu.len() as i64
    }

    pub fn is_diagonal(&self) -> bool {
        self.mu == self.nu
    }

    fn display(&self, g: &Graph) -> String {
        if self.mu == self.nu {
            format!("P_{}", g.path_string(&self.mu))
        } else if self.nu.is_empty() {
            format!("S_{}", g.path_string(&self.mu))
        } else if self.mu.is_empty() {
            format!("S_{}*", g.path_string(&self.nu))
        } else {
            format!("S_{} S_{}*", g.path_string(&self.mu), g.path_string(&self.nu))
        }
    }
}

/// An element of the Leavitt path algebra over the integers, in normal form.
#[derive(Debug, Clone)]
pub struct AlgebraElement {
    graph: SharedGraph,
    terms: BTreeMap<Monomial, BigInt>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        same_graph(&self.graph, &other.graph) && self.terms == other.terms
    }
}
impl Eq for AlgebraElement {}

impl AlgebraElement {
    pub fn zero(graph: SharedGraph) -> AlgebraElement {
        AlgebraElement {
            graph,
            terms: BTreeMap::new(),
        }
    }

    /// The identity: the sum of all vertex projections.
    pub fn one(graph: SharedGraph) -> AlgebraElement {
        let terms = graph
            .vertices()
            .map(|v| {
                let p = graph.vertex_path(v);
                (
                    Monomial {
                        mu: p.clone(),
                        nu: p,
                    },
                    BigInt::one(),
                )
            })
            .collect();
        AlgebraElement { graph, terms }
    }

    pub fn vertex_projection(graph: SharedGraph, v: VertexIdx) -> AlgebraElement {
        let p = graph.vertex_path(v);
        AlgebraElement::from_raw(graph, vec![(BigInt::one(), p.clone(), p)]).expect("projection")
    }

    /// `S_mu` as an element (the monomial `S_mu S_{r(mu)}*`).
    pub fn path_isometry(graph: SharedGraph, mu: &Path) -> AlgebraElement {
        let nu = graph.vertex_path(mu.range(&graph));
        AlgebraElement::from_raw(graph, vec![(BigInt::one(), mu.clone(), nu)]).expect("isometry")
    }

    /// `S_nu*` as an element.
    pub fn path_coisometry(graph: SharedGraph, nu: &Path) -> AlgebraElement {
        let mu = graph.vertex_path(nu.range(&graph));
        AlgebraElement::from_raw(graph, vec![(BigInt::one(), mu, nu.clone())]).expect("coisometry")
    }

    /// The range projection `P_mu = S_mu S_mu*`.
    pub fn range_projection(graph: SharedGraph, mu: &Path) -> AlgebraElement {
        AlgebraElement::from_raw(graph, vec![(BigInt::one(), mu.clone(), mu.clone())])
            .expect("projection")
    }

    /// Normalizes a formal sum of monomials. This is the only constructor the
    /// other operations funnel through.
    pub fn from_raw(
        graph: SharedGraph,
        raw: Vec<(BigInt, Path, Path)>,
    ) -> Result<AlgebraElement> {
        let mut acc = BTreeMap::new();
        let mut fuel = REWRITE_FUEL;
        for (coeff, mu, nu) in raw {
            let m = Monomial::new(&graph, mu, nu)?;
            reduce_into(&graph, &mut acc, m, coeff, &mut fuel)?;
        }
        Ok(AlgebraElement { graph, terms: acc })
    }

    pub fn graph(&self) -> &SharedGraph {
        &self.graph
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == AlgebraElement::one(self.graph.clone())
    }

    fn check_same_graph(&self, other: &AlgebraElement) -> Result<()> {
        if !same_graph(&self.graph, &other.graph) {
            return Err(Error::GraphMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_same_graph(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m.clone(), c.clone());
        }
        Ok(AlgebraElement {
            graph: self.graph.clone(),
            terms,
        })
    }

    pub fn sub(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_same_graph(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m.clone(), -c.clone());
        }
        Ok(AlgebraElement {
            graph: self.graph.clone(),
            terms,
        })
    }

    pub fn scale(&self, k: &BigInt) -> AlgebraElement {
        if k.is_zero() {
            return AlgebraElement::zero(self.graph.clone());
        }
        AlgebraElement {
            graph: self.graph.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    /// Product under the Cuntz-Krieger relations: the middle factor
    /// `S_nu* S_alpha` collapses to `S_gamma`, `S_delta*`, or `0` according to
    /// the prefix relation between `nu` and `alpha`.
    ///
    /// The right factor is grouped by `mu`; for a fixed left term only the
    /// keys comparable with its `nu` can contribute, and those are the
    /// (contiguous) extension range plus the finitely many prefixes.
    pub fn multiply(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_same_graph(other)?;
        let g = &self.graph;

        let mut by_mu: BTreeMap<&Path, Vec<(&Path, &BigInt)>> = BTreeMap::new();
        for (m, c) in &other.terms {
            by_mu.entry(&m.mu).or_default().push((&m.nu, c));
        }

        let mut acc = BTreeMap::new();
        let mut fuel = REWRITE_FUEL;
        let emit = |acc: &mut BTreeMap<Monomial, BigInt>,
                        fuel: &mut u64,
                        m1: &Monomial,
                        c1: &BigInt,
                        mu2: &Path,
                        rights: &[(&Path, &BigInt)]|
         -> Result<()> {
            let (mu, tail): (Path, Option<Path>) = if m1.nu.is_prefix_of(mu2) {
                // mu2 = m1.nu . gamma
                let gamma = mu2.strip_prefix(g, &m1.nu).expect("prefix");
                (m1.mu.concat(g, &gamma).expect("composable"), None)
            } else {
                // m1.nu = mu2 . delta
                let delta = m1.nu.strip_prefix(g, mu2).expect("prefix");
                (m1.mu.clone(), Some(delta))
            };
            for (nu2, c2) in rights {
                let nu = match &tail {
                    None => (*nu2).clone(),
                    Some(delta) => nu2.concat(g, delta).expect("composable"),
                };
                reduce_into(
                    g,
                    acc,
                    Monomial {
                        mu: mu.clone(),
                        nu,
                    },
                    c1 * *c2,
                    fuel,
                )?;
            }
            Ok(())
        };

        for (m1, c1) in &self.terms {
            if m1.nu.is_empty() {
                // A vertex co-isometry leg pairs with every right term from
                // that vertex; those keys are not contiguous, so scan.
                for (mu2, rights) in &by_mu {
                    if mu2.source() == m1.nu.source() {
                        emit(&mut acc, &mut fuel, m1, c1, mu2, rights)?;
                    }
                }
                continue;
            }
            // Proper prefixes of m1.nu (including its source vertex).
            let mut prefix = g.vertex_path(m1.nu.source());
            for step in 0..m1.nu.len() {
                if let Some(rights) = by_mu.get(&prefix) {
                    emit(&mut acc, &mut fuel, m1, c1, &prefix.clone(), rights)?;
                }
                prefix = prefix
                    .extend(g, m1.nu.edges()[step])
                    .expect("prefix of a path");
            }
            // Extensions of a nonempty m1.nu (itself included) form a
            // contiguous key range.
            for (mu2, rights) in by_mu.range::<Path, _>(&m1.nu..) {
                if !m1.nu.is_prefix_of(mu2) {
                    break;
                }
                emit(&mut acc, &mut fuel, m1, c1, mu2, rights)?;
            }
        }
        Ok(AlgebraElement {
            graph: self.graph.clone(),
            terms: acc,
        })
    }

    /// The involution `S_mu S_nu* -> S_nu S_mu*`; reducibility is symmetric in
    /// the two legs, so swapping keys preserves the normal form.
    pub fn adjoint(&self) -> AlgebraElement {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                (
                    Monomial {
                        mu: m.nu.clone(),
                        nu: m.mu.clone(),
                    },
                    c.clone(),
                )
            })
            .collect();
        AlgebraElement {
            graph: self.graph.clone(),
            terms,
        }
    }

    /// The shift `Phi(x) = sum over edges e of S_e x S_e*`.
    pub fn shift(&self) -> AlgebraElement {
        let g = &self.graph;
        let mut raw = Vec::new();
        for (m, c) in &self.terms {
            for e in g.edges() {
                if g.range(e) != m.mu.source() || g.range(e) != m.nu.source() {
                    continue;
                }
                let stub = g.path_at(g.source(e), vec![e]).expect("edge path");
                let mu = stub.concat(g, &m.mu).expect("composable");
                let nu = stub.concat(g, &m.nu).expect("composable");
                raw.push((c.clone(), mu, nu));
            }
        }
        AlgebraElement::from_raw(self.graph.clone(), raw).expect("shift ranges match")
    }

    /// `u_k = u Phi(u) ... Phi^{k-1}(u)`.
    pub fn u_power(&self, k: usize) -> Result<AlgebraElement> {
        if k == 0 {
            return Err(Error::ZeroPower);
        }
        Ok(self.u_powers(k)?.pop().expect("k >= 1"))
    }

    /// `[u_1, ..., u_k]` computed incrementally.
    pub fn u_powers(&self, k: usize) -> Result<Vec<AlgebraElement>> {
        let mut powers = Vec::with_capacity(k);
        let mut shifted = self.clone();
        let mut acc = self.clone();
        for i in 0..k {
            if i > 0 {
                shifted = shifted.shift();
                acc = acc.multiply(&shifted)?;
            }
            powers.push(acc.clone());
        }
        Ok(powers)
    }

    /// `u u* = 1 = u* u`.
    pub fn is_unitary(&self) -> Result<bool> {
        let adj = self.adjoint();
        Ok(self.multiply(&adj)?.is_one() && adj.multiply(self)?.is_one())
    }

    /// Splits into homogeneous components keyed by degree `|mu| - |nu|`.
    pub fn graded_components(&self) -> BTreeMap<i64, AlgebraElement> {
        let mut out: BTreeMap<i64, AlgebraElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| AlgebraElement::zero(self.graph.clone()))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// Whether every monomial is diagonal (`mu = nu`). Since the rewrite
    /// preserves diagonality, this characterizes membership in the diagonal
    /// subalgebra.
    pub fn is_diagonal(&self) -> bool {
        self.terms.keys().all(Monomial::is_diagonal)
    }

    /// For a diagonal projection, the canonical prefix-free family `{beta_i}`
    /// with `a = sum of P_{beta_i}`: minimal cardinality, lexicographically
    /// ordered. Complete sibling families are merged bottom-up.
    pub fn diagonal_support(&self) -> Result<Vec<Path>> {
        let g = &self.graph;
        for m in self.terms.keys() {
            if !m.is_diagonal() {
                return Err(Error::NotDiagonalProjection(format!(
                    "off-diagonal monomial {}",
                    m.display(g)
                )));
            }
        }
        let depth = self
            .terms
            .keys()
            .map(|m| m.mu.len())
            .max()
            .unwrap_or(0);

        // Evaluate the element as a 0/1 indicator on depth-`depth` cylinders.
        let mut support: Vec<Path> = Vec::new();
        for v in g.vertices() {
            for long in g.paths_from(v, depth) {
                let mut value = BigInt::zero();
                for (m, c) in &self.terms {
                    if m.mu.is_prefix_of(&long) {
                        value += c;
                    }
                }
                if value.is_one() {
                    support.push(long);
                } else if !value.is_zero() {
                    return Err(Error::NotDiagonalProjection(format!(
                        "coefficient {} on cylinder {}",
                        value,
                        g.path_string(&long)
                    )));
                }
            }
        }

        // Merge complete sibling families bottom-up.
        let mut len = depth;
        while len > 0 {
            let mut merged: Vec<Path> = Vec::new();
            let mut keep: Vec<Path> = Vec::new();
            let mut by_parent: BTreeMap<Path, Vec<Path>> = BTreeMap::new();
            for p in support {
                if p.len() == len {
                    by_parent.entry(p.parent(g).expect("len > 0")).or_default().push(p);
                } else {
                    keep.push(p);
                }
            }
            for (parent, children) in by_parent {
                let family = g.out_edges(parent.range(g));
                if children.len() == family.len() {
                    merged.push(parent);
                } else {
                    keep.extend(children);
                }
            }
            keep.extend(merged);
            support = keep;
            len -= 1;
        }
        support.sort();
        Ok(support)
    }
}

fn add_term(acc: &mut BTreeMap<Monomial, BigInt>, m: Monomial, c: BigInt) {
    if c.is_zero() {
        return;
    }
    let entry = acc.entry(m);
    match entry {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Adds `c * S_mu S_nu*` to `acc`, rewriting to the special-edge normal form.
fn reduce_into(
    g: &Graph,
    acc: &mut BTreeMap<Monomial, BigInt>,
    m: Monomial,
    c: BigInt,
    fuel: &mut u64,
) -> Result<()> {
    if c.is_zero() {
        return Ok(());
    }
    let mut mu = m.mu;
    let mut nu = m.nu;
    let coeff = c;
    loop {
        if *fuel == 0 {
            return Err(Error::FuelExhausted("normal-form rewrite"));
        }
        *fuel -= 1;
        let reducible = match (mu.last_edge(), nu.last_edge()) {
            (Some(a), Some(b)) if a == b => g.special_edge(g.source(a)) == Some(a),
            _ => false,
        };
        if !reducible {
            add_term(acc, Monomial { mu, nu }, coeff);
            return Ok(());
        }
        let last = mu.last_edge().expect("reducible");
        let v = g.source(last);
        let mu_short = mu.parent(g).expect("reducible");
        let nu_short = nu.parent(g).expect("reducible");
        for &e in g.out_edges(v) {
            if e == last {
                continue;
            }
            // Ends in the non-special pair (e, e): irreducible by construction.
            add_term(
                acc,
                Monomial {
                    mu: mu_short.extend(g, e).expect("sibling"),
                    nu: nu_short.extend(g, e).expect("sibling"),
                },
                -coeff.clone(),
            );
        }
        mu = mu_short;
        nu = nu_short;
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if !mag.is_one() {
                write!(f, "{}·", mag)?;
            }
            write!(f, "{}", m.display(&self.graph))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{o2, shared, two_vertex_f};

    fn s(g: &SharedGraph, ids: &[&str]) -> AlgebraElement {
        AlgebraElement::path_isometry(g.clone(), &g.path(ids).unwrap())
    }

    fn s_star(g: &SharedGraph, ids: &[&str]) -> AlgebraElement {
        s(g, ids).adjoint()
    }

    fn p(g: &SharedGraph, ids: &[&str]) -> AlgebraElement {
        AlgebraElement::range_projection(g.clone(), &g.path(ids).unwrap())
    }

    #[test]
    fn lpa1_orthogonality() {
        let g = shared(o2());
        let prod = s_star(&g, &["2"]).multiply(&s(&g, &["1"])).unwrap();
        assert!(prod.is_zero());
    }

    #[test]
    fn lpa2_gives_projection() {
        let g = shared(o2());
        // (S_1 S_2*)(S_2 S_1*) = P_1
        let a = s(&g, &["1"]).multiply(&s_star(&g, &["2"])).unwrap();
        let b = s(&g, &["2"]).multiply(&s_star(&g, &["1"])).unwrap();
        assert_eq!(a.multiply(&b).unwrap(), p(&g, &["1"]));
    }

    #[test]
    fn lpa5_summation() {
        let g = shared(o2());
        let sum = p(&g, &["1"]).add(&p(&g, &["2"])).unwrap();
        assert!(sum.is_one());

        let rearranged = AlgebraElement::one(g.clone()).sub(&p(&g, &["2"])).unwrap();
        assert_eq!(rearranged, p(&g, &["1"]));

        let deeper = p(&g, &["1", "1"])
            .add(&p(&g, &["1", "2"]))
            .unwrap()
            .add(&p(&g, &["2"]))
            .unwrap();
        assert!(deeper.is_one());
    }

    #[test]
    fn adjoint_involution() {
        let g = shared(o2());
        let x = s(&g, &["1"]).multiply(&s_star(&g, &["2", "2"])).unwrap();
        let y = s(&g, &["2", "2"]).multiply(&s_star(&g, &["1"])).unwrap();
        assert_eq!(x.adjoint(), y);
        assert_eq!(p(&g, &["1", "2"]).adjoint(), p(&g, &["1", "2"]));
    }

    #[test]
    fn shift_is_unital() {
        for g in [shared(o2()), shared(two_vertex_f())] {
            assert!(AlgebraElement::one(g.clone()).shift().is_one());
        }
    }

    #[test]
    fn shift_of_monomial() {
        let g = shared(o2());
        let x = s(&g, &["1"]).multiply(&s_star(&g, &["2"])).unwrap();
        let expected = s(&g, &["1", "1"])
            .multiply(&s_star(&g, &["1", "2"]))
            .unwrap()
            .add(&s(&g, &["2", "1"]).multiply(&s_star(&g, &["2", "2"])).unwrap())
            .unwrap();
        assert_eq!(x.shift(), expected);
    }

    #[test]
    fn shift_of_vertex_projection_in_f() {
        let f = shared(two_vertex_f());
        let v = f.vertex("v").unwrap();
        let shifted = AlgebraElement::vertex_projection(f.clone(), v).shift();
        // Edges with range v: e1 and e3.
        let expected = p(&f, &["e1"]).add(&p(&f, &["e3"])).unwrap();
        assert_eq!(shifted, expected);
    }

    #[test]
    fn unitary_checks() {
        let g = shared(o2());
        assert!(AlgebraElement::one(g.clone()).is_unitary().unwrap());
        assert!(!p(&g, &["1"]).is_unitary().unwrap());

        // The ex2 fixture's unitary.
        let u = p(&g, &["1", "2", "2"])
            .add(&s(&g, &["1", "1"]).multiply(&s_star(&g, &["1", "2", "1"])).unwrap())
            .unwrap()
            .add(&s(&g, &["1", "2", "1"]).multiply(&s_star(&g, &["1", "1"])).unwrap())
            .unwrap()
            .add(&p(&g, &["2"]))
            .unwrap();
        assert!(u.is_unitary().unwrap());
    }

    #[test]
    fn u_power_basics() {
        let g = shared(o2());
        let one = AlgebraElement::one(g.clone());
        assert_eq!(one.u_power(5).unwrap(), one);
        assert!(one.u_power(0).is_err());

        let u = p(&g, &["1", "2", "2"])
            .add(&s(&g, &["1", "1"]).multiply(&s_star(&g, &["1", "2", "1"])).unwrap())
            .unwrap()
            .add(&s(&g, &["1", "2", "1"]).multiply(&s_star(&g, &["1", "1"])).unwrap())
            .unwrap()
            .add(&p(&g, &["2"]))
            .unwrap();
        assert_eq!(u.u_power(1).unwrap(), u);
        let u2 = u.u_power(2).unwrap();
        assert_eq!(u2, u.multiply(&u.shift()).unwrap());
        assert!(u2.is_unitary().unwrap());
    }

    #[test]
    fn graded_components_split_and_recombine() {
        let g = shared(o2());
        let x = s(&g, &["1", "1"])
            .add(&p(&g, &["2"]))
            .unwrap()
            .add(&s_star(&g, &["1"]))
            .unwrap();
        let comps = x.graded_components();
        assert_eq!(
            comps.keys().copied().collect::<Vec<_>>(),
            vec![-1, 0, 2]
        );
        let mut back = AlgebraElement::zero(g.clone());
        for c in comps.values() {
            back = back.add(c).unwrap();
        }
        assert_eq!(back, x);

        assert_eq!(
            s(&g, &["1", "1"]).graded_components().keys().copied().collect::<Vec<_>>(),
            vec![2]
        );
    }

    #[test]
    fn diagonal_support_canonical() {
        let g = shared(o2());
        let whole = p(&g, &["1"]).add(&p(&g, &["2"])).unwrap();
        let v = g.vertex("v").unwrap();
        assert_eq!(whole.diagonal_support().unwrap(), vec![g.vertex_path(v)]);

        let x = p(&g, &["1", "1"])
            .add(&p(&g, &["1", "2"]))
            .unwrap()
            .add(&p(&g, &["2", "2"]))
            .unwrap();
        let support: Vec<String> = x
            .diagonal_support()
            .unwrap()
            .iter()
            .map(|p| g.path_string(p))
            .collect();
        assert_eq!(support, vec!["1", "22"]);

        let off = s(&g, &["1"]).multiply(&s_star(&g, &["2"])).unwrap();
        assert!(matches!(
            off.diagonal_support(),
            Err(Error::NotDiagonalProjection(_))
        ));

        let not_proj = p(&g, &["1"]).scale(&BigInt::from(2));
        assert!(not_proj.diagonal_support().is_err());
    }

    #[test]
    fn mismatched_graphs_rejected() {
        let a = shared(o2());
        let b = shared(two_vertex_f());
        let x = AlgebraElement::one(a);
        let y = AlgebraElement::one(b);
        assert!(matches!(x.multiply(&y), Err(Error::GraphMismatch)));
    }

    #[test]
    fn normal_form_is_input_order_independent() {
        let g = shared(o2());
        let raw = vec![
            (BigInt::from(1), g.path(&["1", "1"]).unwrap(), g.path(&["1", "1"]).unwrap()),
            (BigInt::from(1), g.path(&["1", "2"]).unwrap(), g.path(&["1", "2"]).unwrap()),
            (BigInt::from(1), g.path(&["2"]).unwrap(), g.path(&["2"]).unwrap()),
        ];
        let mut rev = raw.clone();
        rev.reverse();
        let a = AlgebraElement::from_raw(g.clone(), raw).unwrap();
        let b = AlgebraElement::from_raw(g.clone(), rev).unwrap();
        assert_eq!(a, b);
        assert!(a.is_one());
    }

    #[test]
    fn raw_rejects_range_mismatch() {
        let f = shared(two_vertex_f());
        let err = AlgebraElement::from_raw(
            f.clone(),
            vec![(BigInt::one(), f.path(&["e2"]).unwrap(), f.path(&["e1"]).unwrap())],
        )
        .unwrap_err();
        assert!(matches!(err, Error::RangeMismatch { .. }));
    }
}
