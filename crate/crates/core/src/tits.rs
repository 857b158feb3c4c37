//! Syllabic words and Tits-style reduction.
//!
//! Move I merges or cancels two adjacent syllables on the same vertex. Move II
//! rewrites an adjacent pair on an edge, `(x^a, y^b) → (φ_x^a(y)^b, φ_y^{-b}(x)^a)`,
//! preserving length. A word is reduced iff no sequence of II moves exposes an
//! I move, and two reduced words represent the same element iff they are
//! connected by II moves.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{parse_err, Error, Result};
use crate::graph::TrickleGraph;
use crate::piling::{normalize, Piling};
use crate::stratum::{format_syllable, syllable, Stratum, Syllable};

pub const DEFAULT_ORBIT_BOUND: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SyllabicWord<V> {
    pub syllables: Vec<Syllable<V>>,
}

impl<V> Default for SyllabicWord<V> {
    fn default() -> Self {
        SyllabicWord { syllables: Vec::new() }
    }
}

impl<V: Clone> SyllabicWord<V> {
    pub fn new(syllables: Vec<Syllable<V>>) -> Self {
        SyllabicWord { syllables }
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }
}

/// Tokens `v^k` with `k ≠ 0`; `v` alone means `v^1`.
pub fn parse_syllabic<G: TrickleGraph + ?Sized>(g: &G, text: &str) -> Result<SyllabicWord<G::Vertex>> {
    let mut out = Vec::new();
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens == ["ε"] {
        return Ok(SyllabicWord::default());
    }
    for (pos, tok) in tokens.iter().enumerate() {
        let (name, k) = crate::element::split_power(tok);
        let (v, k) = match g.parse_vertex(name) {
            Some(v) => (v, k.unwrap_or(1)),
            None => match g.parse_vertex(tok) {
                Some(v) => (v, 1),
                None => return Err(parse_err(pos, tok, "unknown vertex")),
            },
        };
        let s = syllable(g, v, k).map_err(|_| parse_err(pos, tok, "trivial syllable"))?;
        out.push(s);
    }
    Ok(SyllabicWord::new(out))
}

pub fn format_syllabic<G: TrickleGraph + ?Sized>(g: &G, w: &SyllabicWord<G::Vertex>) -> String {
    if w.is_empty() {
        return "ε".to_string();
    }
    w.syllables
        .iter()
        .map(|s| format_syllable(g, s))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Move I at `pos`: merge or cancel the syllables at `pos` and `pos + 1`.
pub fn apply_i<G: TrickleGraph + ?Sized>(
    g: &G,
    w: &SyllabicWord<G::Vertex>,
    pos: usize,
) -> Result<SyllabicWord<G::Vertex>> {
    let (Some(s), Some(t)) = (w.syllables.get(pos), w.syllables.get(pos + 1)) else {
        return Err(Error::NoMove(pos));
    };
    if s.vertex != t.vertex {
        return Err(Error::NoMove(pos));
    }
    let e = s.exp.checked_add(t.exp).ok_or(Error::Overflow)?;
    let mut out = w.syllables[..pos].to_vec();
    if let Some(e) = g.mu(&s.vertex).reduce(e) {
        out.push(Syllable::new(s.vertex.clone(), e));
    }
    out.extend_from_slice(&w.syllables[pos + 2..]);
    Ok(SyllabicWord::new(out))
}

/// Move II at `pos`.
pub fn apply_ii<G: TrickleGraph + ?Sized>(
    g: &G,
    w: &SyllabicWord<G::Vertex>,
    pos: usize,
) -> Result<SyllabicWord<G::Vertex>> {
    let (Some(s), Some(t)) = (w.syllables.get(pos), w.syllables.get(pos + 1)) else {
        return Err(Error::NoMove(pos));
    };
    if !g.edge(&s.vertex, &t.vertex) {
        return Err(Error::NotAdjacent(g.vertex_name(&s.vertex), g.vertex_name(&t.vertex)));
    }
    let mut out = w.syllables.clone();
    out[pos] = Syllable::new(g.phi_pow_unchecked(&s.vertex, s.exp, &t.vertex), t.exp);
    out[pos + 1] = Syllable::new(
        g.phi_pow_unchecked(&t.vertex, t.exp.checked_neg().ok_or(Error::Overflow)?, &s.vertex),
        s.exp,
    );
    Ok(SyllabicWord::new(out))
}

fn syllabic_piling<V: Clone + Eq>(w: &SyllabicWord<V>) -> Piling<V> {
    Piling::new(
        w.syllables
            .iter()
            .map(|s| Stratum::from_sorted_unchecked(vec![s.clone()]))
            .collect(),
    )
}

/// `nf^S`: normalize the piling of singleton strata and read each stratum as a
/// `≼`-descending run of syllables.
pub fn syllabic_reduce<G: TrickleGraph + ?Sized>(
    g: &G,
    w: &SyllabicWord<G::Vertex>,
) -> Result<SyllabicWord<G::Vertex>> {
    let p = normalize(g, &syllabic_piling(w))?;
    Ok(SyllabicWord::new(
        p.strata.iter().flat_map(|u| u.syllables().iter().cloned()).collect(),
    ))
}

pub fn is_syllabically_reduced<G: TrickleGraph + ?Sized>(
    g: &G,
    w: &SyllabicWord<G::Vertex>,
) -> Result<bool> {
    Ok(syllabic_reduce(g, w)?.len() == w.len())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitSearch {
    Connected,
    NotConnected,
    BoundExceeded,
}

impl fmt::Display for OrbitSearch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrbitSearch::Connected => "connected",
            OrbitSearch::NotConnected => "not connected",
            OrbitSearch::BoundExceeded => "bound exceeded",
        })
    }
}

fn ii_neighbours<G: TrickleGraph + ?Sized>(
    g: &G,
    w: &SyllabicWord<G::Vertex>,
) -> Vec<SyllabicWord<G::Vertex>> {
    (0..w.len().saturating_sub(1))
        .filter(|&i| g.edge(&w.syllables[i].vertex, &w.syllables[i + 1].vertex))
        .filter_map(|i| apply_ii(g, w, i).ok())
        .collect()
}

/// Breadth-first search over II moves from `w` for `v`; both must be reduced.
pub fn ii_connected<G: TrickleGraph + ?Sized>(
    g: &G,
    w: &SyllabicWord<G::Vertex>,
    v: &SyllabicWord<G::Vertex>,
    bound: usize,
) -> Result<OrbitSearch> {
    for x in [w, v] {
        if !is_syllabically_reduced(g, x)? {
            return Err(Error::NotReduced(format_syllabic(g, x)));
        }
    }
    if w.len() != v.len() {
        return Ok(OrbitSearch::NotConnected);
    }
    let mut seen: HashSet<SyllabicWord<G::Vertex>> = HashSet::from([w.clone()]);
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(cur) = queue.pop_front() {
        if cur == *v {
            return Ok(OrbitSearch::Connected);
        }
        for next in ii_neighbours(g, &cur) {
            if seen.insert(next.clone()) {
                if seen.len() > bound {
                    return Ok(OrbitSearch::BoundExceeded);
                }
                queue.push_back(next);
            }
        }
    }
    Ok(OrbitSearch::NotConnected)
}

/// Reduction without the piling engine: search the II orbit for a word with an
/// available I move, apply it, repeat. `None` if an orbit exceeds `bound`.
pub fn m_reduce<G: TrickleGraph + ?Sized>(
    g: &G,
    w: &SyllabicWord<G::Vertex>,
    bound: usize,
) -> Result<Option<SyllabicWord<G::Vertex>>> {
    let mut cur = w.clone();
    'outer: loop {
        let mut seen: HashSet<SyllabicWord<G::Vertex>> = HashSet::from([cur.clone()]);
        let mut queue = VecDeque::from([cur.clone()]);
        while let Some(x) = queue.pop_front() {
            if let Some(i) = (0..x.len().saturating_sub(1))
                .find(|&i| x.syllables[i].vertex == x.syllables[i + 1].vertex)
            {
                cur = apply_i(g, &x, i)?;
                continue 'outer;
            }
            for next in ii_neighbours(g, &x) {
                if seen.insert(next.clone()) {
                    if seen.len() > bound {
                        return Ok(None);
                    }
                    queue.push_back(next);
                }
            }
        }
        return Ok(Some(cur));
    }
}
