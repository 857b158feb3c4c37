//! The positive monoid of a trickle graph with `μ ≡ ∞`.
//!
//! Positive elements are those whose normal form has no inverse letters.
//! Right-sided notions are computed as left-sided ones in the dual graph on
//! reversed words, since reversal is an anti-isomorphism onto the dual group.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::ops::Deref;

use crate::element::{GroupElement, Letter, Word};
use crate::error::{Error, Result};
use crate::graph::{descending, Dual, TrickleGraph};
use crate::piling::Piling;
use crate::stratum::extract_at;
use crate::validate::ValidationReport;

/// All `μ` infinite.
pub fn is_pregarside_graph<G: TrickleGraph + ?Sized>(g: &G) -> bool {
    g.all_mu_infinite()
}

fn require_pregarside<G: TrickleGraph + ?Sized>(g: &G) -> Result<()> {
    if is_pregarside_graph(g) {
        Ok(())
    } else {
        Err(Error::NotPreGarside)
    }
}

pub fn is_positive<G: TrickleGraph + ?Sized>(e: &GroupElement<'_, G>) -> Result<bool> {
    require_pregarside(e.graph())?;
    Ok(piling_is_positive(e.piling()))
}

fn piling_is_positive<V: Clone + Eq>(p: &Piling<V>) -> bool {
    p.strata.iter().all(|u| u.is_positive())
}

/// A group element known to lie in the positive monoid.
pub struct PositiveElement<'g, G: TrickleGraph + ?Sized>(GroupElement<'g, G>);

impl<G: TrickleGraph + ?Sized> Clone for PositiveElement<'_, G> {
    fn clone(&self) -> Self {
        PositiveElement(self.0.clone())
    }
}

impl<G: TrickleGraph + ?Sized> PartialEq for PositiveElement<'_, G> {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl<G: TrickleGraph + ?Sized> Eq for PositiveElement<'_, G> {}

impl<G: TrickleGraph + ?Sized> fmt::Debug for PositiveElement<'_, G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PositiveElement({})", self.0)
    }
}

impl<G: TrickleGraph + ?Sized> fmt::Display for PositiveElement<'_, G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl<'g, G: TrickleGraph + ?Sized> Deref for PositiveElement<'g, G> {
    type Target = GroupElement<'g, G>;
    fn deref(&self) -> &GroupElement<'g, G> {
        &self.0
    }
}

impl<'g, G: TrickleGraph + ?Sized> PositiveElement<'g, G> {
    pub fn new(e: GroupElement<'g, G>) -> Result<Self> {
        if is_positive(&e)? {
            Ok(PositiveElement(e))
        } else {
            Err(Error::NotPositive)
        }
    }

    pub fn parse(graph: &'g G, text: &str) -> Result<Self> {
        Self::new(GroupElement::parse(graph, text)?)
    }

    pub fn identity(graph: &'g G) -> Result<Self> {
        Self::new(GroupElement::identity(graph))
    }

    pub fn element(&self) -> &GroupElement<'g, G> {
        &self.0
    }

    pub fn into_element(self) -> GroupElement<'g, G> {
        self.0
    }

    /// Letter length, well defined since the relations are homogeneous.
    pub fn norm(&self) -> usize {
        self.0.nf().len()
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        Ok(PositiveElement(self.0.multiply(&other.0)?))
    }
}

/// `a ≤_L b`: `a⁻¹b` is positive.
pub fn left_divides<G: TrickleGraph + ?Sized>(
    a: &PositiveElement<'_, G>,
    b: &PositiveElement<'_, G>,
) -> Result<bool> {
    is_positive(&a.invert()?.multiply(b)?)
}

fn reversed_in_dual<'d, G: TrickleGraph + ?Sized>(
    d: &'d Dual<&G>,
    e: &GroupElement<'_, G>,
) -> Result<GroupElement<'d, Dual<&'d G>>> {
    GroupElement::from_word(d, &e.nf().reversed())
}

/// `a ≤_R b`: left divisibility of the reversed words in the dual graph.
pub fn right_divides<G: TrickleGraph + ?Sized>(
    a: &PositiveElement<'_, G>,
    b: &PositiveElement<'_, G>,
) -> Result<bool> {
    let d = Dual(a.graph());
    let ra = PositiveElement::new(reversed_in_dual(&d, a)?)?;
    let rb = PositiveElement::new(reversed_in_dual(&d, b)?)?;
    left_divides(&ra, &rb)
}

/// Vertices `x` with `x ≤_L g`: `ψ` applied to the support of the first
/// stratum, `≼`-descending.
pub fn atom_left_divisors<G: TrickleGraph + ?Sized>(g: &PositiveElement<'_, G>) -> Vec<G::Vertex> {
    let graph = g.graph();
    let Some(u) = g.piling().strata.first() else {
        return Vec::new();
    };
    // ψ(x_i) = γ(U, x_i) since φ_{x_j} fixes x_i for j ≥ i.
    let vs = (0..u.len()).map(|i| extract_at(graph, u, i).vertex).collect();
    descending(graph, vs)
}

/// Vertices `x` with `x ≤_R g`, `≼`-descending.
pub fn atom_right_divisors<G: TrickleGraph + ?Sized>(g: &PositiveElement<'_, G>) -> Result<Vec<G::Vertex>> {
    let d = Dual(g.graph());
    let r = PositiveElement::new(reversed_in_dual(&d, g)?)?;
    Ok(descending(g.graph(), atom_left_divisors(&r)))
}

fn finite_complete_vertices<G: TrickleGraph + ?Sized>(g: &G) -> Result<Vec<G::Vertex>> {
    require_pregarside(g)?;
    match g.vertices() {
        Some(vs) if g.is_complete() => Ok(descending(g, vs)),
        _ => Err(Error::NotFiniteComplete),
    }
}

fn descending_product<'g, G: TrickleGraph + ?Sized>(
    g: &'g G,
    vs: &[G::Vertex],
) -> Result<PositiveElement<'g, G>> {
    let w = Word::new(vs.iter().map(|v| Letter::new(v.clone(), false)).collect());
    PositiveElement::new(GroupElement::from_word(g, &w)?)
}

/// Square-free elements: products of distinct vertices in `≼`-descending
/// order, one per vertex subset, listed by subset bitmask over the
/// descending vertex list.
pub fn square_free<G: TrickleGraph + ?Sized>(g: &G) -> Result<Vec<PositiveElement<'_, G>>> {
    let vs = finite_complete_vertices(g)?;
    if vs.len() >= usize::BITS as usize {
        return Err(Error::Overflow);
    }
    (0..1usize << vs.len())
        .map(|mask| {
            let sub: Vec<G::Vertex> = (0..vs.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| vs[i].clone())
                .collect();
            descending_product(g, &sub)
        })
        .collect()
}

/// `Δ`: the product of all vertices in `≼`-descending order.
pub fn garside_element<G: TrickleGraph + ?Sized>(g: &G) -> Result<PositiveElement<'_, G>> {
    let vs = finite_complete_vertices(g)?;
    descending_product(g, &vs)
}

/// The left lcm of a vertex set: the square-free `g` whose atom left divisors
/// are exactly `X`.
pub fn lcm_atoms<'g, G: TrickleGraph + ?Sized>(
    g: &'g G,
    xs: &BTreeSet<G::Vertex>,
) -> Result<PositiveElement<'g, G>> {
    let vs = finite_complete_vertices(g)?;
    if let Some(v) = xs.iter().find(|v| !g.contains(v)) {
        return Err(Error::UnknownVertex(format!("{v:?}")));
    }
    for h in square_free(g)? {
        let divs: BTreeSet<G::Vertex> = atom_left_divisors(&h).into_iter().collect();
        if &divs == xs {
            return Ok(h);
        }
    }
    Err(Error::Graph(format!(
        "no square-free element among {} vertices has these atom divisors",
        vs.len()
    )))
}

/// The `≤_L`-least common upper bound of `a` and `b` among positive elements
/// of letter length at most `max_len`, by exhaustive enumeration.
pub fn lcm_bruteforce<'g, G: TrickleGraph + ?Sized>(
    a: &PositiveElement<'g, G>,
    b: &PositiveElement<'g, G>,
    max_len: usize,
) -> Result<Option<PositiveElement<'g, G>>> {
    let g = a.graph();
    require_pregarside(g)?;
    let vs = g.vertices().ok_or(Error::Lazy)?;
    let atoms: Vec<GroupElement<'g, G>> = vs
        .iter()
        .map(|v| GroupElement::from_word(g, &Word::new(vec![Letter::new(v.clone(), false)])))
        .collect::<Result<_>>()?;
    let mut layer: Vec<GroupElement<'g, G>> = vec![GroupElement::identity(g)];
    let mut uppers: Vec<PositiveElement<'g, G>> = Vec::new();
    for len in 0..=max_len {
        for e in &layer {
            let p = PositiveElement(e.clone());
            if left_divides(a, &p)? && left_divides(b, &p)? {
                uppers.push(p);
            }
        }
        if len == max_len {
            break;
        }
        let mut seen: HashSet<Piling<G::Vertex>> = HashSet::new();
        let mut next = Vec::new();
        for e in &layer {
            for x in &atoms {
                let f = e.multiply(x)?;
                if seen.insert(f.piling().clone()) {
                    next.push(f);
                }
            }
        }
        layer = next;
    }
    for c in &uppers {
        let mut least = true;
        for d in &uppers {
            if !left_divides(c, d)? {
                least = false;
                break;
            }
        }
        if least {
            return Ok(Some(c.clone()));
        }
    }
    Ok(None)
}

/// `Some(None)` is the empty word, `None` undefined.
type Star<V> = Option<Option<V>>;

fn star_op<G: TrickleGraph + ?Sized>(g: &G, x: &Star<G::Vertex>, y: &Star<G::Vertex>) -> Star<G::Vertex> {
    match (x, y) {
        (None, _) | (_, None) => None,
        (Some(None), _) => Some(None),
        (Some(x), Some(None)) => Some(x.clone()),
        (Some(Some(x)), Some(Some(y))) if x == y => Some(None),
        (Some(Some(x)), Some(Some(y))) => g.edge(x, y).then(|| Some(g.phi(y, x))),
    }
}

fn theta_side<G: TrickleGraph + ?Sized>(g: &G, vs: &[G::Vertex], side: &str, report: &mut ValidationReport) {
    let s = |v: &G::Vertex| Some(Some(v.clone()));
    for x in vs {
        for y in vs.iter().filter(|y| *y != x) {
            for z in vs.iter().filter(|z| *z != x && *z != y) {
                report.checked += 1;
                let lhs = star_op(g, &star_op(g, &s(z), &s(x)), &star_op(g, &s(y), &s(x)));
                let rhs = star_op(g, &star_op(g, &s(z), &s(y)), &star_op(g, &s(x), &s(y)));
                let triangle = g.edge(x, y) && g.edge(x, z) && g.edge(y, z);
                let names = format!(
                    "({}, {}, {})",
                    g.vertex_name(x),
                    g.vertex_name(y),
                    g.vertex_name(z)
                );
                if lhs.is_some() != triangle || rhs.is_some() != triangle {
                    report.structural.push(format!("{side} theta-cube definedness fails at {names}"));
                } else if lhs != rhs {
                    report.structural.push(format!("{side} theta-cube equality fails at {names}"));
                }
            }
        }
    }
}

/// The sharp θ-cube condition for `x ⋆ y = φ_y(x)` on every triple of
/// pairwise distinct vertices, left side on the graph and right side on its
/// dual. Failures are listed in `structural` with the triple `(x, y, z)`.
pub fn theta_cube_check<G: TrickleGraph + ?Sized>(g: &G) -> Result<ValidationReport> {
    let vs = g.vertices().ok_or(Error::Lazy)?;
    let mut report = ValidationReport::default();
    theta_side(g, &vs, "left", &mut report);
    theta_side(&Dual(g), &vs, "right", &mut report);
    Ok(report)
}

/// A Garside element exists iff the vertex set is finite and the graph complete.
pub fn is_garside<G: TrickleGraph + ?Sized>(g: &G) -> Result<bool> {
    require_pregarside(g)?;
    Ok(g.vertices().is_some() && g.is_complete())
}
