//! Pilings and the rewriting system on them.
//!
//! Two kinds of rule act on a piling `(U_1, …, U_r)`: an empty stratum is
//! deleted anywhere, and a T-transformation rewrites an adjacent pair
//! `(U_i, U_{i+1})`. The system terminates and is confluent, so every piling
//! has a unique irreducible form.

use rand::Rng;

use crate::error::Result;
use crate::graph::TrickleGraph;
use crate::stratum::{format_stratum, t_transform_at, Stratum};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Piling<V> {
    pub strata: Vec<Stratum<V>>,
}

impl<V> Default for Piling<V> {
    fn default() -> Self {
        Piling { strata: Vec::new() }
    }
}

impl<V: Clone + Eq> Piling<V> {
    pub fn new(strata: Vec<Stratum<V>>) -> Self {
        Piling { strata }
    }

    pub fn empty() -> Self {
        Piling { strata: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.strata.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strata.is_empty()
    }

    pub fn concat(&self, other: &Piling<V>) -> Piling<V> {
        let mut strata = self.strata.clone();
        strata.extend(other.strata.iter().cloned());
        Piling { strata }
    }

    /// Total number of syllables.
    pub fn syllable_count(&self) -> usize {
        self.strata.iter().map(Stratum::len).sum()
    }

    /// `r + Σ i·|U_i|`, which every rule strictly decreases.
    pub fn weight(&self) -> usize {
        self.strata.len()
            + self
                .strata
                .iter()
                .enumerate()
                .map(|(i, u)| (i + 1) * u.len())
                .sum::<usize>()
    }
}

pub fn format_piling<G: TrickleGraph + ?Sized>(g: &G, p: &Piling<G::Vertex>) -> String {
    if p.is_empty() {
        return "ε".to_string();
    }
    let inner: Vec<String> = p.strata.iter().map(|u| format_stratum(g, u)).collect();
    format!("({})", inner.join(", "))
}

/// One rule application.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rewrite {
    /// Delete the empty stratum at this index.
    DropEmpty(usize),
    /// T-transformation on `(U_pair, U_{pair+1})` at the syllable of index
    /// `syllable` in `U_{pair+1}`.
    T { pair: usize, syllable: usize },
}

/// Every rule application available on `p`.
pub fn applicable_rewrites<G: TrickleGraph + ?Sized>(
    g: &G,
    p: &Piling<G::Vertex>,
) -> Result<Vec<Rewrite>> {
    let mut out = Vec::new();
    for (i, u) in p.strata.iter().enumerate() {
        if u.is_empty() {
            out.push(Rewrite::DropEmpty(i));
        }
    }
    for i in 0..p.strata.len().saturating_sub(1) {
        for j in 0..p.strata[i + 1].len() {
            if t_transform_at(g, &p.strata[i], &p.strata[i + 1], j)?.is_some() {
                out.push(Rewrite::T { pair: i, syllable: j });
            }
        }
    }
    Ok(out)
}

/// Applies `r`; returns `None` if it does not apply.
pub fn apply<G: TrickleGraph + ?Sized>(
    g: &G,
    p: &Piling<G::Vertex>,
    r: Rewrite,
) -> Result<Option<Piling<G::Vertex>>> {
    match r {
        Rewrite::DropEmpty(i) => {
            if p.strata.get(i).is_some_and(Stratum::is_empty) {
                let mut strata = p.strata.clone();
                strata.remove(i);
                Ok(Some(Piling { strata }))
            } else {
                Ok(None)
            }
        }
        Rewrite::T { pair, syllable } => {
            if pair + 1 >= p.strata.len() || syllable >= p.strata[pair + 1].len() {
                return Ok(None);
            }
            let Some((u, v)) = t_transform_at(g, &p.strata[pair], &p.strata[pair + 1], syllable)?
            else {
                return Ok(None);
            };
            let mut strata = p.strata.clone();
            strata[pair] = u;
            strata[pair + 1] = v;
            Ok(Some(Piling { strata }))
        }
    }
}

pub fn is_irreducible<G: TrickleGraph + ?Sized>(g: &G, p: &Piling<G::Vertex>) -> Result<bool> {
    Ok(applicable_rewrites(g, p)?.is_empty())
}

/// The irreducible form of `p`.
///
/// Sweeps left to right; within a pair, syllables of the right stratum are
/// tried in `≼`-descending order. After a rewrite at pair `i` the sweep
/// resumes at `i - 1`.
pub fn normalize<G: TrickleGraph + ?Sized>(
    g: &G,
    p: &Piling<G::Vertex>,
) -> Result<Piling<G::Vertex>> {
    let mut s: Vec<Stratum<G::Vertex>> =
        p.strata.iter().filter(|u| !u.is_empty()).cloned().collect();
    let mut i = 0;
    while i + 1 < s.len() {
        let mut hit = None;
        for j in 0..s[i + 1].len() {
            if let Some(pair) = t_transform_at(g, &s[i], &s[i + 1], j)? {
                hit = Some(pair);
                break;
            }
        }
        match hit {
            Some((u, v)) => {
                if v.is_empty() {
                    s.remove(i + 1);
                } else {
                    s[i + 1] = v;
                }
                if u.is_empty() {
                    s.remove(i);
                } else {
                    s[i] = u;
                }
                i = i.saturating_sub(1);
            }
            None => i += 1,
        }
    }
    Ok(Piling { strata: s })
}

/// Rewrites with a uniformly random applicable rule until irreducible.
pub fn normalize_random<G: TrickleGraph + ?Sized, R: Rng + ?Sized>(
    g: &G,
    p: &Piling<G::Vertex>,
    rng: &mut R,
) -> Result<Piling<G::Vertex>> {
    let mut cur = p.clone();
    loop {
        let moves = applicable_rewrites(g, &cur)?;
        if moves.is_empty() {
            return Ok(cur);
        }
        let r = moves[rng.gen_range(0..moves.len())];
        cur = apply(g, &cur, r)?.expect("listed rewrite applies");
    }
}
