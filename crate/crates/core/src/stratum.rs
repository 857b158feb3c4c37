//! Syllables and strata, with the operations `L` (remove), `γ` (extract),
//! `R` (add) and the T-transformation built from them.

use crate::error::{Error, Result};
use crate::graph::TrickleGraph;

/// `x^a` with `a` a canonical nonzero residue of `Z_μ(x)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Syllable<V> {
    pub vertex: V,
    pub exp: i64,
}

impl<V> Syllable<V> {
    pub fn new(vertex: V, exp: i64) -> Self {
        Syllable { vertex, exp }
    }
}

/// `Syllable` with its exponent reduced; errors on a zero residue.
pub fn syllable<G: TrickleGraph + ?Sized>(g: &G, x: G::Vertex, a: i64) -> Result<Syllable<G::Vertex>> {
    match g.mu(&x).reduce(a) {
        Some(e) => Ok(Syllable::new(x, e)),
        None => Err(Error::InvalidStratum(format!("{}^{a} is trivial", g.vertex_name(&x)))),
    }
}

pub fn format_syllable<G: TrickleGraph + ?Sized>(g: &G, s: &Syllable<G::Vertex>) -> String {
    format!("{}^{}", g.vertex_name(&s.vertex), s.exp)
}

/// A set of syllables on pairwise adjacent, distinct vertices, held in
/// `≼`-descending vertex order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Stratum<V> {
    syllables: Vec<Syllable<V>>,
}

impl<V> Default for Stratum<V> {
    fn default() -> Self {
        Stratum { syllables: Vec::new() }
    }
}

impl<V: Clone + Eq> Stratum<V> {
    pub fn empty() -> Self {
        Stratum::default()
    }

    /// Checks distinctness, adjacency and exponents, then sorts.
    pub fn new<G>(g: &G, syllables: Vec<Syllable<V>>) -> Result<Self>
    where
        G: TrickleGraph<Vertex = V> + ?Sized,
        V: std::fmt::Debug,
    {
        let mut out = Vec::with_capacity(syllables.len());
        for s in syllables {
            if !g.contains(&s.vertex) {
                return Err(Error::UnknownVertex(format!("{:?}", s.vertex)));
            }
            out.push(syllable(g, s.vertex, s.exp)?);
        }
        for (i, a) in out.iter().enumerate() {
            for b in &out[i + 1..] {
                if a.vertex == b.vertex {
                    return Err(Error::InvalidStratum(format!(
                        "vertex {} repeated",
                        g.vertex_name(&a.vertex)
                    )));
                }
                if !g.edge(&a.vertex, &b.vertex) {
                    return Err(Error::NotAdjacent(
                        g.vertex_name(&a.vertex),
                        g.vertex_name(&b.vertex),
                    ));
                }
            }
        }
        Ok(Self::sorted(g, out))
    }

    pub(crate) fn sorted<G>(g: &G, mut syllables: Vec<Syllable<V>>) -> Self
    where
        G: TrickleGraph<Vertex = V> + ?Sized,
    {
        syllables.sort_by(|a, b| g.rank_cmp(&b.vertex, &a.vertex));
        Stratum { syllables }
    }

    pub(crate) fn from_sorted_unchecked(syllables: Vec<Syllable<V>>) -> Self {
        Stratum { syllables }
    }

    /// Syllables in `≼`-descending order.
    pub fn syllables(&self) -> &[Syllable<V>] {
        &self.syllables
    }

    pub fn support(&self) -> impl Iterator<Item = &V> {
        self.syllables.iter().map(|s| &s.vertex)
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn contains(&self, s: &Syllable<V>) -> bool {
        self.syllables.contains(s)
    }

    pub fn position(&self, s: &Syllable<V>) -> Option<usize> {
        self.syllables.iter().position(|t| t == s)
    }

    pub fn exponent_of(&self, x: &V) -> Option<i64> {
        self.syllables.iter().find(|s| &s.vertex == x).map(|s| s.exp)
    }

    /// `true` when every exponent is positive.
    pub fn is_positive(&self) -> bool {
        self.syllables.iter().all(|s| s.exp > 0)
    }
}

pub fn format_stratum<G: TrickleGraph + ?Sized>(g: &G, u: &Stratum<G::Vertex>) -> String {
    let inner: Vec<String> = u.syllables().iter().map(|s| format_syllable(g, s)).collect();
    format!("{{{}}}", inner.join(", "))
}

fn not_in<G: TrickleGraph + ?Sized>(g: &G, s: &Syllable<G::Vertex>) -> Error {
    Error::NotInStratum(format_syllable(g, s))
}

/// `L(U, s) = U ∖ {s}`.
pub fn stratum_remove<G: TrickleGraph + ?Sized>(
    g: &G,
    u: &Stratum<G::Vertex>,
    s: &Syllable<G::Vertex>,
) -> Result<Stratum<G::Vertex>> {
    let i = u.position(s).ok_or_else(|| not_in(g, s))?;
    Ok(remove_at(u, i))
}

pub(crate) fn remove_at<V: Clone>(u: &Stratum<V>, i: usize) -> Stratum<V> {
    let mut syllables = u.syllables.clone();
    syllables.remove(i);
    Stratum { syllables }
}

/// `γ(U, s)`: with `U` numbered `≼`-descending and `s = x_i^{a_i}`, the syllable
/// `((φ_{x_1}^{a_1} ∘ ⋯ ∘ φ_{x_{i-1}}^{a_{i-1}})(x_i))^{a_i}`.
pub fn stratum_extract<G: TrickleGraph + ?Sized>(
    g: &G,
    u: &Stratum<G::Vertex>,
    s: &Syllable<G::Vertex>,
) -> Result<Syllable<G::Vertex>> {
    let i = u.position(s).ok_or_else(|| not_in(g, s))?;
    Ok(extract_at(g, u, i))
}

pub(crate) fn extract_at<G: TrickleGraph + ?Sized>(
    g: &G,
    u: &Stratum<G::Vertex>,
    i: usize,
) -> Syllable<G::Vertex> {
    let mut v = u.syllables[i].vertex.clone();
    for t in u.syllables[..i].iter().rev() {
        v = g.phi_pow_unchecked(&t.vertex, t.exp, &v);
    }
    Syllable::new(v, u.syllables[i].exp)
}

/// `y^b` can be added to `U` when `y ∈ supp(U)` or `y` is adjacent to all of `supp(U)`.
pub fn stratum_can_add<G: TrickleGraph + ?Sized>(
    g: &G,
    u: &Stratum<G::Vertex>,
    s: &Syllable<G::Vertex>,
) -> bool {
    u.support().any(|x| *x == s.vertex) || u.support().all(|x| g.edge(x, &s.vertex))
}

/// `R(U, y^b)`: apply `φ_y^{-b}` to the other syllables, then insert, merge or
/// cancel `y^b`.
pub fn stratum_add<G: TrickleGraph + ?Sized>(
    g: &G,
    u: &Stratum<G::Vertex>,
    s: &Syllable<G::Vertex>,
) -> Result<Stratum<G::Vertex>> {
    if !stratum_can_add(g, u, s) {
        return Err(Error::CannotAdd(format_syllable(g, s)));
    }
    let y = &s.vertex;
    let neg = s.exp.checked_neg().ok_or(Error::Overflow)?;
    let mut out = Vec::with_capacity(u.len() + 1);
    let mut merged = false;
    for t in &u.syllables {
        if &t.vertex == y {
            merged = true;
            let e = t.exp.checked_add(s.exp).ok_or(Error::Overflow)?;
            if let Some(e) = g.mu(y).reduce(e) {
                out.push(Syllable::new(y.clone(), e));
            }
        } else {
            out.push(Syllable::new(g.phi_pow_unchecked(y, neg, &t.vertex), t.exp));
        }
    }
    if !merged {
        out.push(s.clone());
    }
    Ok(Stratum::sorted(g, out))
}

/// The T-transformation at `s ∈ V`: `(R(U, γ(V, s)), L(V, s))`, or `None`
/// when `γ(V, s)` cannot be added to `U`.
pub fn t_transform<G: TrickleGraph + ?Sized>(
    g: &G,
    u: &Stratum<G::Vertex>,
    v: &Stratum<G::Vertex>,
    s: &Syllable<G::Vertex>,
) -> Result<Option<(Stratum<G::Vertex>, Stratum<G::Vertex>)>> {
    let i = v.position(s).ok_or_else(|| not_in(g, s))?;
    t_transform_at(g, u, v, i)
}

pub(crate) fn t_transform_at<G: TrickleGraph + ?Sized>(
    g: &G,
    u: &Stratum<G::Vertex>,
    v: &Stratum<G::Vertex>,
    i: usize,
) -> Result<Option<(Stratum<G::Vertex>, Stratum<G::Vertex>)>> {
    let gamma = extract_at(g, v, i);
    if !stratum_can_add(g, u, &gamma) {
        return Ok(None);
    }
    Ok(Some((stratum_add(g, u, &gamma)?, remove_at(v, i))))
}
