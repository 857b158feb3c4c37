//! Example graphs: graph products of cyclic groups, cactus groups, a dual
//! cactus fixture over `S₃`, the three-vertex Garside fixture and the affine
//! quandle on dyadic rationals.

use std::cmp::Ordering;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::graph::{FiniteGraph, Mu, TrickleGraph};

/// Trivial order and identity `φ`. With `μ ≡ ∞` this is a right-angled Artin
/// group, with `μ ≡ 2` a right-angled Coxeter group.
pub fn graph_product(vertices: &[(&str, Mu)], edges: &[(&str, &str)]) -> Result<FiniteGraph> {
    let mut b = FiniteGraph::builder();
    for &(v, mu) in vertices {
        b = b.vertex(v, mu);
    }
    for &(x, y) in edges {
        b = b.edge(x, y);
    }
    b.build()
}

/// Path `v1 - v2 - … - vn`.
pub fn path_edges(n: usize) -> Vec<(String, String)> {
    (1..n).map(|i| (format!("v{i}"), format!("v{}", i + 1))).collect()
}

/// Cycle on `v1 … vn`, `n ≥ 3`.
pub fn cycle_edges(n: usize) -> Vec<(String, String)> {
    let mut e = path_edges(n);
    if n >= 3 {
        e.push((format!("v{n}"), "v1".to_string()));
    }
    e
}

/// Graph product on `v1 … vn` with the given edges and constant `μ`.
pub fn uniform_product(n: usize, edges: &[(String, String)], mu: Mu) -> Result<FiniteGraph> {
    let names: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let vs: Vec<(&str, Mu)> = names.iter().map(|s| (s.as_str(), mu)).collect();
    let es: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    graph_product(&vs, &es)
}

/// Name of the cactus generator `x_{p,q}`.
pub fn interval_name(p: usize, q: usize) -> String {
    format!("[{p},{q}]")
}

/// Parses `[p,q]`.
pub fn parse_interval(s: &str) -> Option<(usize, usize)> {
    let inner = s.strip_prefix('[')?.strip_suffix(']')?;
    let (p, q) = inner.split_once(',')?;
    Some((p.trim().parse().ok()?, q.trim().parse().ok()?))
}

fn nested(inner: (usize, usize), outer: (usize, usize)) -> bool {
    inner != outer && outer.0 <= inner.0 && inner.1 <= outer.1
}

/// The cactus group `J_n`: intervals `[p,q]`, `1 ≤ p < q ≤ n`, ordered by
/// strict inclusion, adjacent when nested or disjoint, `μ ≡ 2`, and
/// `φ_{[p,q]}([m,r]) = [p+q-r, p+q-m]` for `[m,r] ⊊ [p,q]`.
pub fn cactus(n: usize) -> Result<FiniteGraph> {
    cactus_with_mu(n, Mu::Finite(2))
}

/// The cactus graph with another constant `μ` (`∞` gives the Artin version).
pub fn cactus_with_mu(n: usize, mu: Mu) -> Result<FiniteGraph> {
    if n < 2 {
        return Err(Error::Graph(format!("cactus needs n >= 2, got {n}")));
    }
    let ivs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|p| (p + 1..=n).map(move |q| (p, q)))
        .collect();
    let mut b = FiniteGraph::builder();
    for &(p, q) in &ivs {
        b = b.vertex(interval_name(p, q), mu);
    }
    for (i, &s) in ivs.iter().enumerate() {
        for &t in &ivs[i + 1..] {
            let disjoint = s.1 < t.0 || t.1 < s.0;
            if nested(s, t) || nested(t, s) || disjoint {
                b = b.edge(interval_name(s.0, s.1), interval_name(t.0, t.1));
            }
        }
    }
    for &outer in &ivs {
        for &inner in &ivs {
            if nested(inner, outer) {
                let (p, q) = outer;
                let (m, r) = inner;
                b = b.less(interval_name(m, r), interval_name(p, q));
                let img = (p + q - r, p + q - m);
                if img != inner {
                    b = b.phi(interval_name(p, q), interval_name(m, r), interval_name(img.0, img.1));
                }
            }
        }
    }
    b.build()
}

/// Vertices `x, y, z < u`, edges to `u` only, `μ = 2` on `x, y, z` and
/// `μ(u) = 3`, `φ_u` the cycle `z → x → y → z`.
pub fn dual_cactus_s3() -> FiniteGraph {
    FiniteGraph::builder()
        .vertex("u", Mu::Finite(3))
        .vertex("x", Mu::Finite(2))
        .vertex("y", Mu::Finite(2))
        .vertex("z", Mu::Finite(2))
        .less("x", "u")
        .less("y", "u")
        .less("z", "u")
        .edge("x", "u")
        .edge("y", "u")
        .edge("z", "u")
        .phi("u", "z", "x")
        .phi("u", "x", "y")
        .phi("u", "y", "z")
        .build()
        .expect("fixture")
}

/// Complete graph on `x, y, z` with `y, z < x`, `φ_x = (y z)` and `μ ≡ ∞`.
pub fn gar3() -> FiniteGraph {
    FiniteGraph::builder()
        .vertex("x", Mu::Infinite)
        .vertex("y", Mu::Infinite)
        .vertex("z", Mu::Infinite)
        .less("y", "x")
        .less("z", "x")
        .edge("x", "y")
        .edge("x", "z")
        .edge("y", "z")
        .phi("x", "y", "z")
        .phi("x", "z", "y")
        .build()
        .expect("fixture")
}

/// The ordered quandle `x ∗ y = (x + y)/2` on dyadic rationals: complete
/// graph, usual order, `μ ≡ ∞`, `φ_x(y) = (y + x)/2` for `y ≤ x`.
#[derive(Clone, Copy, Debug, Default)]
pub struct AffineQuandle;

pub fn affine_quandle_graph() -> AffineQuandle {
    AffineQuandle
}

impl TrickleGraph for AffineQuandle {
    type Vertex = Dyadic;

    fn edge(&self, x: &Dyadic, y: &Dyadic) -> bool {
        x != y
    }
    fn less(&self, x: &Dyadic, y: &Dyadic) -> bool {
        x < y
    }
    fn mu(&self, _: &Dyadic) -> Mu {
        Mu::Infinite
    }
    fn phi(&self, x: &Dyadic, y: &Dyadic) -> Dyadic {
        if y <= x {
            (*y + *x).half()
        } else {
            *y
        }
    }
    fn phi_inv(&self, x: &Dyadic, y: &Dyadic) -> Dyadic {
        if y <= x {
            y.mul_pow2(1) - *x
        } else {
            *y
        }
    }
    fn rank_cmp(&self, x: &Dyadic, y: &Dyadic) -> Ordering {
        x.cmp(y)
    }
    fn vertices(&self) -> Option<Vec<Dyadic>> {
        None
    }
    fn contains(&self, _: &Dyadic) -> bool {
        true
    }
    fn vertex_name(&self, x: &Dyadic) -> String {
        x.to_string()
    }
    fn parse_vertex(&self, token: &str) -> Option<Dyadic> {
        token.parse().ok()
    }
    fn all_mu_infinite(&self) -> bool {
        true
    }
    fn is_complete(&self) -> bool {
        true
    }
}
