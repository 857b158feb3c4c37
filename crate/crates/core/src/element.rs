//! Group elements in canonical form, words, and the word problem.

use std::fmt;

use crate::error::{parse_err, Error, Result};
use crate::graph::{Mu, TrickleGraph};
use crate::piling::{normalize, Piling};
use crate::stratum::{Stratum, Syllable};

/// A generator or its inverse.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter<V> {
    pub vertex: V,
    pub inverse: bool,
}

impl<V> Letter<V> {
    pub fn new(vertex: V, inverse: bool) -> Self {
        Letter { vertex, inverse }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word<V> {
    pub letters: Vec<Letter<V>>,
}

impl<V> Default for Word<V> {
    fn default() -> Self {
        Word { letters: Vec::new() }
    }
}

impl<V: Clone> Word<V> {
    pub fn new(letters: Vec<Letter<V>>) -> Self {
        Word { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The formal inverse: reversed with every letter inverted.
    pub fn inverse(&self) -> Word<V> {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter::new(l.vertex.clone(), !l.inverse))
                .collect(),
        }
    }

    pub fn reversed(&self) -> Word<V> {
        Word {
            letters: self.letters.iter().rev().cloned().collect(),
        }
    }

    pub fn concat(&self, other: &Word<V>) -> Word<V> {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Word { letters }
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| !l.inverse)
    }
}

/// Splits `v^k` into `(v, k)`; a token without a valid integer suffix is a
/// bare vertex with `k = 1`.
pub(crate) fn split_power(token: &str) -> (&str, Option<i64>) {
    if let Some((base, k)) = token.rsplit_once('^') {
        if !base.is_empty() {
            if let Ok(k) = k.parse::<i64>() {
                return (base, Some(k));
            }
        }
    }
    (token, None)
}

/// Parses whitespace-separated tokens `v`, `v^-1`, `v^k`; `ε` denotes the empty word.
pub fn parse_word<G: TrickleGraph + ?Sized>(g: &G, text: &str) -> Result<Word<G::Vertex>> {
    let mut letters = Vec::new();
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens == ["ε"] {
        return Ok(Word::default());
    }
    for (pos, tok) in tokens.iter().enumerate() {
        let (name, k) = split_power(tok);
        let (v, k) = match g.parse_vertex(name) {
            Some(v) => (v, k.unwrap_or(1)),
            None => match g.parse_vertex(tok) {
                Some(v) => (v, 1),
                None => return Err(parse_err(pos, tok, "unknown vertex")),
            },
        };
        if k == 0 {
            return Err(parse_err(pos, tok, "exponent must be nonzero"));
        }
        if k.unsigned_abs() > 1 << 20 {
            return Err(parse_err(pos, tok, "exponent too large to expand"));
        }
        for _ in 0..k.unsigned_abs() {
            letters.push(Letter::new(v.clone(), k < 0));
        }
    }
    Ok(Word { letters })
}

/// Writes runs of equal letters as `v^k`; the empty word is `ε`.
pub fn format_word<G: TrickleGraph + ?Sized>(g: &G, w: &Word<G::Vertex>) -> String {
    if w.is_empty() {
        return "ε".to_string();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < w.letters.len() {
        let l = &w.letters[i];
        let mut j = i + 1;
        while j < w.letters.len() && w.letters[j] == *l {
            j += 1;
        }
        let k = (j - i) as i64 * if l.inverse { -1 } else { 1 };
        let name = g.vertex_name(&l.vertex);
        parts.push(if k == 1 { name } else { format!("{name}^{k}") });
        i = j;
    }
    parts.join(" ")
}

/// An element of the trickle group, held as its irreducible piling.
pub struct GroupElement<'g, G: TrickleGraph + ?Sized> {
    graph: &'g G,
    piling: Piling<G::Vertex>,
}

impl<G: TrickleGraph + ?Sized> Clone for GroupElement<'_, G> {
    fn clone(&self) -> Self {
        GroupElement {
            graph: self.graph,
            piling: self.piling.clone(),
        }
    }
}

impl<G: TrickleGraph + ?Sized> PartialEq for GroupElement<'_, G> {
    fn eq(&self, other: &Self) -> bool {
        same_graph(self.graph, other.graph) && self.piling == other.piling
    }
}

impl<G: TrickleGraph + ?Sized> Eq for GroupElement<'_, G> {}

impl<G: TrickleGraph + ?Sized> fmt::Debug for GroupElement<'_, G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupElement({})", crate::piling::format_piling(self.graph, &self.piling))
    }
}

impl<G: TrickleGraph + ?Sized> fmt::Display for GroupElement<'_, G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_word(self.graph, &self.nf()))
    }
}

fn same_graph<G: ?Sized>(a: &G, b: &G) -> bool {
    std::ptr::eq(a as *const G as *const u8, b as *const G as *const u8)
}

/// The singleton-stratum piling of a word.
pub fn word_piling<G: TrickleGraph + ?Sized>(g: &G, w: &Word<G::Vertex>) -> Result<Piling<G::Vertex>> {
    let mut strata = Vec::with_capacity(w.len());
    for l in &w.letters {
        if !g.contains(&l.vertex) {
            return Err(Error::UnknownVertex(format!("{:?}", l.vertex)));
        }
        let a = if l.inverse { -1 } else { 1 };
        strata.push(match g.mu(&l.vertex).reduce(a) {
            Some(e) => Stratum::sorted(g, vec![Syllable::new(l.vertex.clone(), e)]),
            None => Stratum::empty(),
        });
    }
    Ok(Piling::new(strata))
}

/// `ω̂(U)`: the syllables of `U` in `≼`-descending order, each expanded to letters.
pub fn stratum_word<G: TrickleGraph + ?Sized>(g: &G, u: &Stratum<G::Vertex>) -> Word<G::Vertex> {
    let mut letters = Vec::new();
    for s in u.syllables() {
        push_syllable(g, &mut letters, s);
    }
    Word { letters }
}

pub(crate) fn push_syllable<G: TrickleGraph + ?Sized>(
    g: &G,
    letters: &mut Vec<Letter<G::Vertex>>,
    s: &Syllable<G::Vertex>,
) {
    let (count, inverse) = match g.mu(&s.vertex) {
        Mu::Finite(_) => (s.exp as u64, false),
        Mu::Infinite => (s.exp.unsigned_abs(), s.exp < 0),
    };
    for _ in 0..count {
        letters.push(Letter::new(s.vertex.clone(), inverse));
    }
}

impl<'g, G: TrickleGraph + ?Sized> GroupElement<'g, G> {
    pub fn identity(graph: &'g G) -> Self {
        GroupElement {
            graph,
            piling: Piling::empty(),
        }
    }

    pub fn from_piling(graph: &'g G, p: &Piling<G::Vertex>) -> Result<Self> {
        Ok(GroupElement {
            graph,
            piling: normalize(graph, p)?,
        })
    }

    pub fn from_word(graph: &'g G, w: &Word<G::Vertex>) -> Result<Self> {
        Self::from_piling(graph, &word_piling(graph, w)?)
    }

    /// Parses and evaluates a word.
    pub fn parse(graph: &'g G, text: &str) -> Result<Self> {
        Self::from_word(graph, &parse_word(graph, text)?)
    }

    pub fn from_syllable(graph: &'g G, s: &Syllable<G::Vertex>) -> Result<Self> {
        let u = Stratum::new(graph, vec![s.clone()])?;
        Ok(GroupElement {
            graph,
            piling: Piling::new(vec![u]),
        })
    }

    pub fn graph(&self) -> &'g G {
        self.graph
    }

    pub fn piling(&self) -> &Piling<G::Vertex> {
        &self.piling
    }

    pub fn is_identity(&self) -> bool {
        self.piling.is_empty()
    }

    /// Concatenation of `ω̂(U)` over the strata.
    pub fn nf(&self) -> Word<G::Vertex> {
        let mut letters = Vec::new();
        for u in &self.piling.strata {
            for s in u.syllables() {
                push_syllable(self.graph, &mut letters, s);
            }
        }
        Word { letters }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_graph(self.graph, other.graph) {
            Ok(())
        } else {
            Err(Error::GraphMismatch)
        }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Self::from_piling(self.graph, &self.piling.concat(&other.piling))
    }

    pub fn invert(&self) -> Result<Self> {
        Self::from_word(self.graph, &self.nf().inverse())
    }

    pub fn equal(&self, other: &Self) -> Result<bool> {
        self.check(other)?;
        Ok(self.piling == other.piling)
    }

    /// `self^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.invert()? } else { self.clone() };
        let mut acc = Self::identity(self.graph);
        for _ in 0..k.unsigned_abs() {
            acc = acc.multiply(&base)?;
        }
        Ok(acc)
    }
}

/// Compares two words of the same graph.
pub fn words_equal<G: TrickleGraph + ?Sized>(g: &G, a: &Word<G::Vertex>, b: &Word<G::Vertex>) -> Result<bool> {
    Ok(GroupElement::from_word(g, a)? == GroupElement::from_word(g, b)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Finiteness {
    Finite { order: u128 },
    Infinite { reason: String },
}

impl fmt::Display for Finiteness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finiteness::Finite { order } => write!(f, "finite, order {order}"),
            Finiteness::Infinite { reason } => write!(f, "infinite ({reason})"),
        }
    }
}

/// The group is finite iff the vertex set is finite, the graph complete and
/// every `μ` finite; the order is then `∏ μ(x)`.
pub fn is_finite<G: TrickleGraph + ?Sized>(g: &G) -> Finiteness {
    let Some(vs) = g.vertices() else {
        return Finiteness::Infinite {
            reason: "infinitely many vertices".into(),
        };
    };
    for (i, x) in vs.iter().enumerate() {
        for y in &vs[i + 1..] {
            if !g.edge(x, y) {
                return Finiteness::Infinite {
                    reason: format!("no edge {{{}, {}}}", g.vertex_name(x), g.vertex_name(y)),
                };
            }
        }
    }
    let mut order: u128 = 1;
    for x in &vs {
        match g.mu(x) {
            Mu::Finite(m) => {
                order = match order.checked_mul(m as u128) {
                    Some(o) => o,
                    None => {
                        return Finiteness::Infinite {
                            reason: "order exceeds u128; refusing to report".into(),
                        }
                    }
                }
            }
            Mu::Infinite => {
                return Finiteness::Infinite {
                    reason: format!("mu({}) = inf", g.vertex_name(x)),
                }
            }
        }
    }
    Finiteness::Finite { order }
}
