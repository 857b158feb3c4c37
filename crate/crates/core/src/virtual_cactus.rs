//! The virtual cactus group `VJ_n = KJ_n ⋊ S_n`.
//!
//! `KJ_n` is the trickle group on tuples of distinct entries of `{1, …, n}`
//! of length at least 2. A tuple `y' ≤ y` when `y'` is a contiguous subtuple
//! of `y`; two tuples are adjacent when comparable or of disjoint support;
//! `μ ≡ 2`; and `φ_y` sends the subtuple at positions `p..q` of a length-`ℓ`
//! tuple to the one at positions `1+ℓ-q .. 1+ℓ-p`.
//!
//! A `VJ_n` word is folded left to right into a kernel element and a
//! permutation `w`: `ρ_i` replaces `w` by `w s_i`, and `x_{p,q}` appends the
//! generator of the tuple `(w(p), …, w(q))` to the kernel.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::element::GroupElement;
use crate::error::{parse_err, Error, Result};
use crate::examples::{cactus, interval_name, parse_interval};
use crate::graph::{FiniteGraph, Mu, TrickleGraph};
use crate::parabolic::ParabolicSubgraph;

/// A tuple of distinct entries. Derived `Ord` is only used for containers;
/// the graph ranks tuples by length, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tuple(pub Vec<u8>);

impl Tuple {
    /// `(p, p+1, …, q)`.
    pub fn consecutive(p: u8, q: u8) -> Tuple {
        Tuple((p..=q).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 0-based start of `self` as a contiguous subtuple of `of`.
    fn position_in(&self, of: &Tuple) -> Option<usize> {
        if self.len() > of.len() {
            return None;
        }
        of.0.windows(self.len()).position(|w| w == self.0.as_slice())
    }

    fn disjoint(&self, other: &Tuple) -> bool {
        self.0.iter().all(|a| !other.0.contains(a))
    }
}

impl fmt::Display for Tuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u8::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The graph of `KJ_n`, answered from predicates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KjnGraph {
    n: u8,
}

pub fn kjn_graph(n: usize) -> Result<KjnGraph> {
    if !(2..=u8::MAX as usize).contains(&n) {
        return Err(Error::Graph(format!("KJ_n needs 2 <= n <= 255, got {n}")));
    }
    Ok(KjnGraph { n: n as u8 })
}

impl KjnGraph {
    pub fn n(&self) -> usize {
        self.n as usize
    }

    fn valid(&self, t: &Tuple) -> bool {
        t.len() >= 2
            && t.len() <= self.n as usize
            && t.0.iter().all(|&a| a >= 1 && a <= self.n)
            && t.0.iter().collect::<BTreeSet<_>>().len() == t.len()
    }

    /// Every tuple, ordered by length then lexicographically.
    pub fn all_tuples(&self) -> Vec<Tuple> {
        let mut out = Vec::new();
        for len in 2..=self.n as usize {
            let mut cur = Vec::with_capacity(len);
            self.extend_tuples(len, &mut cur, &mut out);
        }
        out
    }

    fn extend_tuples(&self, len: usize, cur: &mut Vec<u8>, out: &mut Vec<Tuple>) {
        if cur.len() == len {
            out.push(Tuple(cur.clone()));
            return;
        }
        for a in 1..=self.n {
            if !cur.contains(&a) {
                cur.push(a);
                self.extend_tuples(len, cur, out);
                cur.pop();
            }
        }
    }
}

impl TrickleGraph for KjnGraph {
    type Vertex = Tuple;

    fn edge(&self, x: &Tuple, y: &Tuple) -> bool {
        x != y && (self.less(x, y) || self.less(y, x) || x.disjoint(y))
    }
    fn less(&self, x: &Tuple, y: &Tuple) -> bool {
        x.len() < y.len() && x.position_in(y).is_some()
    }
    fn mu(&self, _: &Tuple) -> Mu {
        Mu::Finite(2)
    }
    fn phi(&self, y: &Tuple, z: &Tuple) -> Tuple {
        match z.position_in(y) {
            Some(start) => {
                let l = y.len();
                let (p, q) = (start + 1, start + z.len());
                Tuple(y.0[l - q..=l - p].to_vec())
            }
            None => z.clone(),
        }
    }
    fn phi_inv(&self, y: &Tuple, z: &Tuple) -> Tuple {
        self.phi(y, z)
    }
    fn rank_cmp(&self, x: &Tuple, y: &Tuple) -> Ordering {
        x.len().cmp(&y.len()).then_with(|| x.0.cmp(&y.0))
    }
    fn vertices(&self) -> Option<Vec<Tuple>> {
        Some(self.all_tuples())
    }
    fn contains(&self, x: &Tuple) -> bool {
        self.valid(x)
    }
    fn vertex_name(&self, x: &Tuple) -> String {
        x.to_string()
    }
    fn parse_vertex(&self, token: &str) -> Option<Tuple> {
        let inner = token.strip_prefix('(')?.strip_suffix(')')?;
        let t = Tuple(
            inner
                .split(',')
                .map(|s| s.trim().parse().ok())
                .collect::<Option<Vec<u8>>>()?,
        );
        self.valid(&t).then_some(t)
    }
    fn phi_pow_unchecked(&self, x: &Tuple, a: i64, y: &Tuple) -> Tuple {
        if a.rem_euclid(2) == 0 {
            y.clone()
        } else {
            self.phi(x, y)
        }
    }
    fn all_mu_infinite(&self) -> bool {
        false
    }
}

/// A permutation of `{1, …, n}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation((1..=n as u8).collect())
    }

    pub fn from_one_line(images: Vec<u8>) -> Result<Permutation> {
        let n = images.len();
        let set: BTreeSet<u8> = images.iter().copied().collect();
        if set.len() != n || images.iter().any(|&a| a == 0 || a as usize > n) {
            return Err(Error::Graph(format!("{images:?} is not a permutation")));
        }
        Ok(Permutation(images))
    }

    pub fn one_line(&self) -> &[u8] {
        &self.0
    }

    pub fn apply(&self, i: u8) -> u8 {
        self.0[i as usize - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &a)| a as usize == i + 1)
    }

    /// `w ↦ w s_i`.
    fn right_multiply_transposition(&mut self, i: usize) {
        self.0.swap(i - 1, i);
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u8::to_string).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VjnToken {
    /// `x[p,q]`
    X(u8, u8),
    /// `r<i>`
    Rho(u8),
}

impl fmt::Display for VjnToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VjnToken::X(p, q) => write!(f, "x[{p},{q}]"),
            VjnToken::Rho(i) => write!(f, "r{i}"),
        }
    }
}

/// Whitespace-separated `x[p,q]` (`1 ≤ p < q ≤ n`) and `r<i>` (`1 ≤ i < n`).
pub fn parse_vjn_word(n: usize, text: &str) -> Result<Vec<VjnToken>> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens == ["ε"] {
        return Ok(Vec::new());
    }
    tokens
        .iter()
        .enumerate()
        .map(|(pos, tok)| {
            if let Some(rest) = tok.strip_prefix('x') {
                let (p, q) = parse_interval(rest).ok_or_else(|| parse_err(pos, tok, "expected x[p,q]"))?;
                if !(1 <= p && p < q && q <= n) {
                    return Err(parse_err(pos, tok, format!("need 1 <= p < q <= {n}")));
                }
                Ok(VjnToken::X(p as u8, q as u8))
            } else if let Some(rest) = tok.strip_prefix('r') {
                let i: usize = rest.parse().map_err(|_| parse_err(pos, tok, "expected r<i>"))?;
                if !(1 <= i && i < n) {
                    return Err(parse_err(pos, tok, format!("need 1 <= i < {n}")));
                }
                Ok(VjnToken::Rho(i as u8))
            } else {
                Err(parse_err(pos, tok, "expected x[p,q] or r<i>"))
            }
        })
        .collect()
}

/// `(kernel, w)` standing for `Φ(kernel) · ι_S(w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VjnElement<'g> {
    pub kernel: GroupElement<'g, KjnGraph>,
    pub perm: Permutation,
}

impl fmt::Display for VjnElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.kernel.to_string();
        write!(f, "kernel {} perm {}", if k.is_empty() { "ε" } else { &k }, self.perm)
    }
}

pub fn vjn_encode_tokens<'g>(g: &'g KjnGraph, tokens: &[VjnToken]) -> Result<VjnElement<'g>> {
    let n = g.n();
    let mut perm = Permutation::identity(n);
    let mut letters = Vec::new();
    for t in tokens {
        match *t {
            VjnToken::Rho(i) => {
                if !(1..n).contains(&(i as usize)) {
                    return Err(Error::UnknownVertex(t.to_string()));
                }
                perm.right_multiply_transposition(i as usize);
            }
            VjnToken::X(p, q) => {
                if !(1 <= p && p < q && q as usize <= n) {
                    return Err(Error::UnknownVertex(t.to_string()));
                }
                let y = Tuple((p..=q).map(|a| perm.apply(a)).collect());
                letters.push(crate::element::Letter::new(y, false));
            }
        }
    }
    let kernel = GroupElement::from_word(g, &crate::element::Word::new(letters))?;
    Ok(VjnElement { kernel, perm })
}

pub fn vjn_encode<'g>(g: &'g KjnGraph, text: &str) -> Result<VjnElement<'g>> {
    vjn_encode_tokens(g, &parse_vjn_word(g.n(), text)?)
}

pub fn vjn_equal(g: &KjnGraph, w1: &str, w2: &str) -> Result<bool> {
    Ok(vjn_encode(g, w1)? == vjn_encode(g, w2)?)
}

/// Rewrites `[p,q]` cactus tokens as `x[p,q]`; `ε` is kept.
pub fn cactus_word_to_vjn(word: &str) -> String {
    if word.trim() == "ε" {
        return "ε".to_string();
    }
    word.split_whitespace()
        .map(|t| format!("x{t}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// For each pair of cactus words (tokens `[p,q]`), equality in `J_n` agrees
/// with equality of their images in `VJ_n`.
pub fn jn_embedding_check(n: usize, pairs: &[(String, String)]) -> Result<bool> {
    let j = cactus(n)?;
    let k = kjn_graph(n)?;
    for (a, b) in pairs {
        let in_j = GroupElement::parse(&j, a)? == GroupElement::parse(&j, b)?;
        let in_v = vjn_equal(&k, &cactus_word_to_vjn(a), &cactus_word_to_vjn(b))?;
        if in_j != in_v {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The cactus vertex `[p,q]` ↦ the tuple `(p, …, q)`.
pub fn cactus_vertex_tuple(j: &FiniteGraph, v: crate::graph::VertexId) -> Option<Tuple> {
    let (p, q) = parse_interval(j.name(v))?;
    Some(Tuple::consecutive(p as u8, q as u8))
}

/// The parabolic subgraph of consecutive tuples.
pub fn consecutive_parabolic(g: &KjnGraph) -> Result<ParabolicSubgraph<'_, KjnGraph>> {
    let n = g.n;
    let vs = (1..=n)
        .flat_map(|p| (p + 1..=n).map(move |q| Tuple::consecutive(p, q)))
        .collect();
    ParabolicSubgraph::new(g, vs)
}

/// Every instance of the defining relations of `VJ_n`, as word pairs.
pub fn defining_relations(n: usize) -> Vec<(String, String)> {
    let ivs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|p| (p + 1..=n).map(move |q| (p, q)))
        .collect();
    let x = |p: usize, q: usize| format!("x{}", interval_name(p, q));
    let r = |i: usize| format!("r{i}");
    let mut out = Vec::new();
    for &(p, q) in &ivs {
        out.push((format!("{} {}", x(p, q), x(p, q)), "ε".to_string()));
        for &(m, rr) in &ivs {
            if q < m || rr < p {
                out.push((format!("{} {}", x(p, q), x(m, rr)), format!("{} {}", x(m, rr), x(p, q))));
            }
            if (m, rr) != (p, q) && p <= m && rr <= q {
                out.push((
                    format!("{} {}", x(p, q), x(m, rr)),
                    format!("{} {}", x(p + q - rr, p + q - m), x(p, q)),
                ));
            }
        }
    }
    for i in 1..n {
        out.push((format!("{} {}", r(i), r(i)), "ε".to_string()));
        for j in 1..n {
            if i.abs_diff(j) == 1 {
                out.push((format!("{} {} {}", r(i), r(j), r(i)), format!("{} {} {}", r(j), r(i), r(j))));
            }
            if i.abs_diff(j) > 1 {
                out.push((format!("{} {}", r(i), r(j)), format!("{} {}", r(j), r(i))));
            }
        }
        for &(p, q) in &ivs {
            if i + 1 < p || i > q {
                out.push((format!("{} {}", r(i), x(p, q)), format!("{} {}", x(p, q), r(i))));
            }
        }
    }
    for &(p, q) in &ivs {
        if q < n {
            let rhos: Vec<String> = (p..=q).rev().map(r).collect();
            let rhos = rhos.join(" ");
            out.push((format!("{} {rhos}", x(p, q)), format!("{rhos} {}", x(p + 1, q + 1))));
        }
    }
    out
}
