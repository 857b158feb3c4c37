//! Trickle graphs.
//!
//! A trickle graph is a simplicial graph with a strict partial order `<`, a
//! labeling `μ` by integers `≥ 2` or `∞`, and for each vertex `x` an
//! automorphism `φ_x` of the star of `x`. Every algorithm in the crate talks
//! to a graph through the [`TrickleGraph`] query trait, so finite tables and
//! lazily computed infinite graphs are interchangeable.
//!
//! Normal forms need a total order `≼` extending `<`; graphs expose it through
//! [`TrickleGraph::rank_cmp`].

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt::{self, Debug};
use std::hash::Hash;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mu {
    Finite(u32),
    Infinite,
}

impl Mu {
    pub fn is_finite(&self) -> bool {
        matches!(self, Mu::Finite(_))
    }

    /// Canonical representative of `a` in `Z_μ`, or `None` when `a ≡ 0`.
    pub fn reduce(&self, a: i64) -> Option<i64> {
        match *self {
            Mu::Finite(m) => {
                let r = a.rem_euclid(m as i64);
                (r != 0).then_some(r)
            }
            Mu::Infinite => (a != 0).then_some(a),
        }
    }
}

impl fmt::Display for Mu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mu::Finite(m) => write!(f, "{m}"),
            Mu::Infinite => write!(f, "inf"),
        }
    }
}

/// Query interface of a trickle graph.
///
/// `phi(x, y)` is only meaningful for `y` in the star of `x`; implementations
/// return `y` unchanged elsewhere.
pub trait TrickleGraph {
    type Vertex: Clone + Eq + Ord + Hash + Debug;

    fn edge(&self, x: &Self::Vertex, y: &Self::Vertex) -> bool;
    fn less(&self, x: &Self::Vertex, y: &Self::Vertex) -> bool;
    fn mu(&self, x: &Self::Vertex) -> Mu;
    fn phi(&self, x: &Self::Vertex, y: &Self::Vertex) -> Self::Vertex;
    fn phi_inv(&self, x: &Self::Vertex, y: &Self::Vertex) -> Self::Vertex;
    /// The total order `≼`.
    fn rank_cmp(&self, x: &Self::Vertex, y: &Self::Vertex) -> Ordering;
    /// `None` for lazy graphs.
    fn vertices(&self) -> Option<Vec<Self::Vertex>>;
    fn contains(&self, x: &Self::Vertex) -> bool;
    fn vertex_name(&self, x: &Self::Vertex) -> String;
    fn parse_vertex(&self, token: &str) -> Option<Self::Vertex>;

    fn less_eq(&self, x: &Self::Vertex, y: &Self::Vertex) -> bool {
        x == y || self.less(x, y)
    }

    fn in_star(&self, x: &Self::Vertex, y: &Self::Vertex) -> bool {
        x == y || self.edge(x, y)
    }

    /// `φ_x^a(y)` without the star check.
    fn phi_pow_unchecked(&self, x: &Self::Vertex, a: i64, y: &Self::Vertex) -> Self::Vertex {
        let a = match self.mu(x) {
            Mu::Finite(m) => {
                let r = a.rem_euclid(m as i64);
                if r > m as i64 / 2 {
                    r - m as i64
                } else {
                    r
                }
            }
            Mu::Infinite => a,
        };
        let mut v = y.clone();
        if a >= 0 {
            for _ in 0..a {
                v = self.phi(x, &v);
            }
        } else {
            for _ in 0..a.unsigned_abs() {
                v = self.phi_inv(x, &v);
            }
        }
        v
    }

    fn all_mu_infinite(&self) -> bool {
        match self.vertices() {
            Some(vs) => vs.iter().all(|v| !self.mu(v).is_finite()),
            None => false,
        }
    }

    fn is_complete(&self) -> bool {
        match self.vertices() {
            Some(vs) => vs
                .iter()
                .enumerate()
                .all(|(i, x)| vs[i + 1..].iter().all(|y| self.edge(x, y))),
            None => false,
        }
    }
}

/// `φ_x^a(y)`; errors when `y` is outside the star of `x`.
pub fn phi_pow<G: TrickleGraph + ?Sized>(
    g: &G,
    x: &G::Vertex,
    a: i64,
    y: &G::Vertex,
) -> Result<G::Vertex> {
    if !g.in_star(x, y) {
        return Err(Error::NotInStar {
            x: g.vertex_name(x),
            y: g.vertex_name(y),
        });
    }
    Ok(g.phi_pow_unchecked(x, a, y))
}

/// Parses a vertex token, erroring with its name.
pub fn vertex<G: TrickleGraph + ?Sized>(g: &G, token: &str) -> Result<G::Vertex> {
    g.parse_vertex(token)
        .ok_or_else(|| Error::UnknownVertex(token.to_string()))
}

/// Vertices sorted `≼`-descending.
pub fn descending<G: TrickleGraph + ?Sized>(g: &G, mut vs: Vec<G::Vertex>) -> Vec<G::Vertex> {
    vs.sort_by(|a, b| g.rank_cmp(b, a));
    vs
}

macro_rules! forward_graph {
    ($($t:tt)*) => {
        type Vertex = G::Vertex;
        fn edge(&self, x: &G::Vertex, y: &G::Vertex) -> bool { (**self).edge(x, y) }
        fn less(&self, x: &G::Vertex, y: &G::Vertex) -> bool { (**self).less(x, y) }
        fn mu(&self, x: &G::Vertex) -> Mu { (**self).mu(x) }
        fn phi(&self, x: &G::Vertex, y: &G::Vertex) -> G::Vertex { (**self).phi(x, y) }
        fn phi_inv(&self, x: &G::Vertex, y: &G::Vertex) -> G::Vertex { (**self).phi_inv(x, y) }
        fn rank_cmp(&self, x: &G::Vertex, y: &G::Vertex) -> Ordering { (**self).rank_cmp(x, y) }
        fn vertices(&self) -> Option<Vec<G::Vertex>> { (**self).vertices() }
        fn contains(&self, x: &G::Vertex) -> bool { (**self).contains(x) }
        fn vertex_name(&self, x: &G::Vertex) -> String { (**self).vertex_name(x) }
        fn parse_vertex(&self, t: &str) -> Option<G::Vertex> { (**self).parse_vertex(t) }
        fn phi_pow_unchecked(&self, x: &G::Vertex, a: i64, y: &G::Vertex) -> G::Vertex {
            (**self).phi_pow_unchecked(x, a, y)
        }
        fn all_mu_infinite(&self) -> bool { (**self).all_mu_infinite() }
        fn is_complete(&self) -> bool { (**self).is_complete() }
    };
}

impl<G: TrickleGraph + ?Sized> TrickleGraph for &G {
    forward_graph!();
}

/// The dual graph: same structure with every `φ_x` replaced by `φ_x^{-1}`.
#[derive(Clone, Copy, Debug)]
pub struct Dual<G>(pub G);

pub fn dual_graph<G: TrickleGraph>(g: G) -> Dual<G> {
    Dual(g)
}

impl<G: TrickleGraph> TrickleGraph for Dual<G> {
    type Vertex = G::Vertex;
    fn edge(&self, x: &G::Vertex, y: &G::Vertex) -> bool {
        self.0.edge(x, y)
    }
    fn less(&self, x: &G::Vertex, y: &G::Vertex) -> bool {
        self.0.less(x, y)
    }
    fn mu(&self, x: &G::Vertex) -> Mu {
        self.0.mu(x)
    }
    fn phi(&self, x: &G::Vertex, y: &G::Vertex) -> G::Vertex {
        self.0.phi_inv(x, y)
    }
    fn phi_inv(&self, x: &G::Vertex, y: &G::Vertex) -> G::Vertex {
        self.0.phi(x, y)
    }
    fn rank_cmp(&self, x: &G::Vertex, y: &G::Vertex) -> Ordering {
        self.0.rank_cmp(x, y)
    }
    fn vertices(&self) -> Option<Vec<G::Vertex>> {
        self.0.vertices()
    }
    fn contains(&self, x: &G::Vertex) -> bool {
        self.0.contains(x)
    }
    fn vertex_name(&self, x: &G::Vertex) -> String {
        self.0.vertex_name(x)
    }
    fn parse_vertex(&self, t: &str) -> Option<G::Vertex> {
        self.0.parse_vertex(t)
    }
    fn phi_pow_unchecked(&self, x: &G::Vertex, a: i64, y: &G::Vertex) -> G::Vertex {
        self.0.phi_pow_unchecked(x, a.checked_neg().unwrap_or(i64::MAX), y)
    }
    fn all_mu_infinite(&self) -> bool {
        self.0.all_mu_infinite()
    }
    fn is_complete(&self) -> bool {
        self.0.is_complete()
    }
}

/// Dense index of a vertex of a [`FiniteGraph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite trickle graph stored as dense tables.
///
/// `less` is transitively closed. `phi[x][y] = y` for unspecified entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGraph {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
    mu: Vec<Mu>,
    adj: Vec<Vec<bool>>,
    lt: Vec<Vec<bool>>,
    phi: Vec<Vec<u32>>,
    phi_inv: Vec<Vec<u32>>,
    /// Order of `φ_x` as a permutation of `V`; `None` if `phi[x]` is not a bijection.
    phi_order: Vec<Option<u64>>,
    rank: Vec<u32>,
}

impl FiniteGraph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::default()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.names.len() as u32).map(VertexId)
    }

    pub fn id(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.index()]
    }

    /// Vertices in `≼`-ascending order.
    pub fn ranking(&self) -> Vec<VertexId> {
        let mut vs: Vec<VertexId> = self.ids().collect();
        vs.sort_by_key(|v| self.rank[v.index()]);
        vs
    }

    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        for x in self.ids() {
            for y in self.ids().filter(|y| y.0 > x.0) {
                if self.adj[x.index()][y.index()] {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Pairs `(a, b)` with `a < b`.
    pub fn order_pairs(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        for a in self.ids() {
            for b in self.ids() {
                if self.lt[a.index()][b.index()] {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Non-identity entries `(x, y, φ_x(y))`.
    pub fn phi_entries(&self) -> Vec<(VertexId, VertexId, VertexId)> {
        let mut out = Vec::new();
        for x in self.ids() {
            for y in self.ids() {
                let img = self.phi[x.index()][y.index()];
                if img != y.0 {
                    out.push((x, y, VertexId(img)));
                }
            }
        }
        out
    }

    /// The dual graph as a table.
    pub fn dual(&self) -> FiniteGraph {
        let mut d = self.clone();
        std::mem::swap(&mut d.phi, &mut d.phi_inv);
        d
    }

    /// The same graph with `≼` replaced by `ranking` (ascending).
    pub fn with_ranking(&self, ranking: &[&str]) -> Result<FiniteGraph> {
        let mut g = self.clone();
        g.rank = rank_from_override(&self.names, &self.index, &self.lt, ranking)?;
        Ok(g)
    }
}

impl TrickleGraph for FiniteGraph {
    type Vertex = VertexId;

    fn edge(&self, x: &VertexId, y: &VertexId) -> bool {
        self.adj[x.index()][y.index()]
    }
    fn less(&self, x: &VertexId, y: &VertexId) -> bool {
        self.lt[x.index()][y.index()]
    }
    fn mu(&self, x: &VertexId) -> Mu {
        self.mu[x.index()]
    }
    fn phi(&self, x: &VertexId, y: &VertexId) -> VertexId {
        VertexId(self.phi[x.index()][y.index()])
    }
    fn phi_inv(&self, x: &VertexId, y: &VertexId) -> VertexId {
        VertexId(self.phi_inv[x.index()][y.index()])
    }
    fn rank_cmp(&self, x: &VertexId, y: &VertexId) -> Ordering {
        self.rank[x.index()].cmp(&self.rank[y.index()])
    }
    fn vertices(&self) -> Option<Vec<VertexId>> {
        Some(self.ids().collect())
    }
    fn contains(&self, x: &VertexId) -> bool {
        x.index() < self.names.len()
    }
    fn vertex_name(&self, x: &VertexId) -> String {
        self.names[x.index()].clone()
    }
    fn parse_vertex(&self, token: &str) -> Option<VertexId> {
        self.id(token)
    }
    fn phi_pow_unchecked(&self, x: &VertexId, a: i64, y: &VertexId) -> VertexId {
        let (row, a) = match self.phi_order[x.index()] {
            Some(ord) => {
                let r = a.rem_euclid(ord as i64);
                (&self.phi[x.index()], r)
            }
            None if a >= 0 => (&self.phi[x.index()], a),
            None => (&self.phi_inv[x.index()], -a),
        };
        let mut v = y.0;
        for _ in 0..a {
            v = row[v as usize];
        }
        VertexId(v)
    }
}

/// Incremental construction of a [`FiniteGraph`] by vertex name.
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    vertices: Vec<(String, Mu)>,
    less: Vec<(String, String)>,
    edges: Vec<(String, String)>,
    phi: Vec<(String, String, String)>,
    ranking: Option<Vec<String>>,
}

impl GraphBuilder {
    pub fn vertex(mut self, name: impl Into<String>, mu: Mu) -> Self {
        self.vertices.push((name.into(), mu));
        self
    }

    /// Declares `a < b`; the closure is taken at build time.
    pub fn less(mut self, a: impl Into<String>, b: impl Into<String>) -> Self {
        self.less.push((a.into(), b.into()));
        self
    }

    pub fn edge(mut self, a: impl Into<String>, b: impl Into<String>) -> Self {
        self.edges.push((a.into(), b.into()));
        self
    }

    /// Declares `φ_x(y) = image`.
    pub fn phi(
        mut self,
        x: impl Into<String>,
        y: impl Into<String>,
        image: impl Into<String>,
    ) -> Self {
        self.phi.push((x.into(), y.into(), image.into()));
        self
    }

    /// Explicit `≼`, listed ascending.
    pub fn ranking(mut self, names: Vec<String>) -> Self {
        self.ranking = Some(names);
        self
    }

    pub fn build(self) -> Result<FiniteGraph> {
        let n = self.vertices.len();
        let mut names = Vec::with_capacity(n);
        let mut index = HashMap::new();
        let mut mu = Vec::with_capacity(n);
        for (i, (name, m)) in self.vertices.into_iter().enumerate() {
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(Error::Graph(format!("invalid vertex id `{name}`")));
            }
            if let Mu::Finite(k) = m {
                if k < 2 {
                    return Err(Error::Graph(format!("mu({name}) = {k} is below 2")));
                }
            }
            if index.insert(name.clone(), VertexId(i as u32)).is_some() {
                return Err(Error::Graph(format!("duplicate vertex `{name}`")));
            }
            names.push(name);
            mu.push(m);
        }
        let look = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::UnknownVertex(s.to_string()))
        };

        let mut adj = vec![vec![false; n]; n];
        for (a, b) in &self.edges {
            let (a, b) = (look(a)?, look(b)?);
            if a == b {
                return Err(Error::Graph(format!("self-loop at `{}`", names[a.index()])));
            }
            adj[a.index()][b.index()] = true;
            adj[b.index()][a.index()] = true;
        }

        let mut lt = vec![vec![false; n]; n];
        for (a, b) in &self.less {
            let (a, b) = (look(a)?, look(b)?);
            lt[a.index()][b.index()] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if lt[i][k] {
                    for j in 0..n {
                        if lt[k][j] {
                            lt[i][j] = true;
                        }
                    }
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| lt[i][i]) {
            return Err(Error::Graph(format!(
                "order relation has a cycle through `{}`",
                names[i]
            )));
        }

        let mut phi: Vec<Vec<u32>> = (0..n).map(|_| (0..n as u32).collect()).collect();
        let mut seen = vec![vec![false; n]; n];
        for (x, y, img) in &self.phi {
            let (x, y, img) = (look(x)?, look(y)?, look(img)?);
            if std::mem::replace(&mut seen[x.index()][y.index()], true) {
                return Err(Error::Graph(format!(
                    "duplicate phi entry for `{}` at `{}`",
                    names[x.index()],
                    names[y.index()]
                )));
            }
            phi[x.index()][y.index()] = img.0;
        }
        let mut phi_inv: Vec<Vec<u32>> = (0..n).map(|_| (0..n as u32).collect()).collect();
        let mut phi_order = vec![None; n];
        for x in 0..n {
            let mut hit = vec![false; n];
            for y in 0..n {
                hit[phi[x][y] as usize] = true;
            }
            if hit.iter().all(|&h| h) {
                for y in 0..n {
                    phi_inv[x][phi[x][y] as usize] = y as u32;
                }
                phi_order[x] = Some(permutation_order(&phi[x]));
            }
        }

        let rank = match &self.ranking {
            Some(r) => {
                let r: Vec<&str> = r.iter().map(String::as_str).collect();
                rank_from_override(&names, &index, &lt, &r)?
            }
            None => default_rank(&names, &lt),
        };

        Ok(FiniteGraph {
            names,
            index,
            mu,
            adj,
            lt,
            phi,
            phi_inv,
            phi_order,
            rank,
        })
    }
}

fn permutation_order(p: &[u32]) -> u64 {
    let mut seen = vec![false; p.len()];
    let mut order: u64 = 1;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            v = p[v] as usize;
            len += 1;
        }
        order = lcm(order, len);
    }
    order
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Kahn's algorithm, always emitting the lexicographically least available name.
fn default_rank(names: &[String], lt: &[Vec<bool>]) -> Vec<u32> {
    let n = names.len();
    let mut indeg: Vec<usize> = (0..n).map(|j| (0..n).filter(|&i| lt[i][j]).count()).collect();
    let mut ready: BTreeSet<(&str, usize)> = (0..n)
        .filter(|&j| indeg[j] == 0)
        .map(|j| (names[j].as_str(), j))
        .collect();
    let mut rank = vec![0u32; n];
    let mut next = 0u32;
    while let Some(first) = ready.pop_first() {
        let v = first.1;
        rank[v] = next;
        next += 1;
        for w in 0..n {
            if lt[v][w] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.insert((names[w].as_str(), w));
                }
            }
        }
    }
    rank
}

fn rank_from_override(
    names: &[String],
    index: &HashMap<String, VertexId>,
    lt: &[Vec<bool>],
    ranking: &[&str],
) -> Result<Vec<u32>> {
    let n = names.len();
    if ranking.len() != n {
        return Err(Error::Ranking(format!(
            "expected {n} vertices, got {}",
            ranking.len()
        )));
    }
    let mut rank = vec![u32::MAX; n];
    for (r, name) in ranking.iter().enumerate() {
        let v = index
            .get(*name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))?;
        if rank[v.index()] != u32::MAX {
            return Err(Error::Ranking(format!("`{name}` listed twice")));
        }
        rank[v.index()] = r as u32;
    }
    for i in 0..n {
        for j in 0..n {
            if lt[i][j] && rank[i] > rank[j] {
                return Err(Error::Ranking(format!(
                    "`{}` < `{}` but is ranked above it",
                    names[i], names[j]
                )));
            }
        }
    }
    Ok(rank)
}
