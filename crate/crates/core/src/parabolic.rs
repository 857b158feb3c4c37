//! Parabolic subgraphs and standard parabolic subgroups.
//!
//! A full subgraph on `X` is parabolic when, for every `x ∈ X`, `φ_x` maps the
//! star of `x` inside `X` onto itself. The induced structure is then a trickle
//! graph whose group embeds, and an element lies in it iff its normal form only
//! uses letters from `X`.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::element::GroupElement;
use crate::error::{Error, Result};
use crate::graph::{Mu, TrickleGraph};

pub fn is_parabolic<G: TrickleGraph + ?Sized>(g: &G, xs: &BTreeSet<G::Vertex>) -> Result<bool> {
    Ok(parabolic_witness(g, xs)?.is_none())
}

/// First `(x, y)` with `y` in the star of `x` inside `X` but `φ_x^{±1}(y) ∉ X`.
fn parabolic_witness<G: TrickleGraph + ?Sized>(
    g: &G,
    xs: &BTreeSet<G::Vertex>,
) -> Result<Option<(G::Vertex, G::Vertex)>> {
    if let Some(v) = xs.iter().find(|v| !g.contains(v)) {
        return Err(Error::UnknownVertex(format!("{v:?}")));
    }
    for x in xs {
        for y in xs.iter().filter(|y| g.in_star(x, y)) {
            for img in [g.phi(x, y), g.phi_inv(x, y)] {
                if !xs.contains(&img) {
                    return Ok(Some((x.clone(), y.clone())));
                }
            }
        }
    }
    Ok(None)
}

/// `X_↓ = {y : y ≤ x for some x ∈ X}`.
pub fn downward_closure<G: TrickleGraph + ?Sized>(
    g: &G,
    xs: &BTreeSet<G::Vertex>,
) -> Result<BTreeSet<G::Vertex>> {
    let vs = g.vertices().ok_or(Error::Lazy)?;
    Ok(vs
        .into_iter()
        .filter(|y| xs.iter().any(|x| g.less_eq(y, x)))
        .collect())
}

/// A parabolic vertex set of a parent graph.
#[derive(Debug)]
pub struct ParabolicSubgraph<'g, G: TrickleGraph + ?Sized> {
    parent: &'g G,
    vertices: BTreeSet<G::Vertex>,
}

impl<G: TrickleGraph + ?Sized> Clone for ParabolicSubgraph<'_, G> {
    fn clone(&self) -> Self {
        ParabolicSubgraph {
            parent: self.parent,
            vertices: self.vertices.clone(),
        }
    }
}

impl<'g, G: TrickleGraph + ?Sized> ParabolicSubgraph<'g, G> {
    pub fn new(parent: &'g G, vertices: BTreeSet<G::Vertex>) -> Result<Self> {
        if let Some((x, y)) = parabolic_witness(parent, &vertices)? {
            return Err(Error::NotParabolic(format!(
                "phi({}) moves {} out of the set",
                parent.vertex_name(&x),
                parent.vertex_name(&y)
            )));
        }
        Ok(ParabolicSubgraph { parent, vertices })
    }

    /// Parses a comma-separated vertex list.
    pub fn parse(parent: &'g G, list: &str) -> Result<Self> {
        let mut vs = BTreeSet::new();
        for tok in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            vs.insert(crate::graph::vertex(parent, tok)?);
        }
        Self::new(parent, vs)
    }

    pub fn parent(&self) -> &'g G {
        self.parent
    }

    pub fn vertices(&self) -> &BTreeSet<G::Vertex> {
        &self.vertices
    }

    /// The induced trickle graph.
    pub fn induced(&self) -> Induced<'_, G> {
        Induced {
            parent: self.parent,
            vertices: &self.vertices,
        }
    }

    pub fn contains_element(&self, g: &GroupElement<'_, G>) -> bool {
        member(g, self)
    }
}

/// `g` lies in the subgroup iff every letter of `nf(g)` does.
pub fn member<G: TrickleGraph + ?Sized>(g: &GroupElement<'_, G>, p: &ParabolicSubgraph<'_, G>) -> bool {
    g.piling()
        .strata
        .iter()
        .all(|u| u.support().all(|v| p.vertices.contains(v)))
}

pub fn intersect<'g, G: TrickleGraph + ?Sized>(
    a: &ParabolicSubgraph<'g, G>,
    b: &ParabolicSubgraph<'g, G>,
) -> Result<ParabolicSubgraph<'g, G>> {
    if !std::ptr::eq(a.parent as *const G as *const u8, b.parent as *const G as *const u8) {
        return Err(Error::GraphMismatch);
    }
    ParabolicSubgraph::new(a.parent, a.vertices.intersection(&b.vertices).cloned().collect())
}

/// The full subgraph on a vertex set, with the restricted order, labels, `φ`
/// and ranking.
#[derive(Debug)]
pub struct Induced<'a, G: TrickleGraph + ?Sized> {
    parent: &'a G,
    vertices: &'a BTreeSet<G::Vertex>,
}

impl<G: TrickleGraph + ?Sized> TrickleGraph for Induced<'_, G> {
    type Vertex = G::Vertex;

    fn edge(&self, x: &G::Vertex, y: &G::Vertex) -> bool {
        self.contains(x) && self.contains(y) && self.parent.edge(x, y)
    }
    fn less(&self, x: &G::Vertex, y: &G::Vertex) -> bool {
        self.contains(x) && self.contains(y) && self.parent.less(x, y)
    }
    fn mu(&self, x: &G::Vertex) -> Mu {
        self.parent.mu(x)
    }
    fn phi(&self, x: &G::Vertex, y: &G::Vertex) -> G::Vertex {
        self.parent.phi(x, y)
    }
    fn phi_inv(&self, x: &G::Vertex, y: &G::Vertex) -> G::Vertex {
        self.parent.phi_inv(x, y)
    }
    fn rank_cmp(&self, x: &G::Vertex, y: &G::Vertex) -> Ordering {
        self.parent.rank_cmp(x, y)
    }
    fn vertices(&self) -> Option<Vec<G::Vertex>> {
        Some(self.vertices.iter().cloned().collect())
    }
    fn contains(&self, x: &G::Vertex) -> bool {
        self.vertices.contains(x)
    }
    fn vertex_name(&self, x: &G::Vertex) -> String {
        self.parent.vertex_name(x)
    }
    fn parse_vertex(&self, token: &str) -> Option<G::Vertex> {
        self.parent.parse_vertex(token).filter(|v| self.contains(v))
    }
    fn phi_pow_unchecked(&self, x: &G::Vertex, a: i64, y: &G::Vertex) -> G::Vertex {
        self.parent.phi_pow_unchecked(x, a, y)
    }
}
