//! Checking the trickle-graph axioms.
//!
//! Axioms, for `x, y, z` vertices and `st(x)` the star of `x`:
//!
//! * (a) `x < y` implies `{x, y}` is an edge;
//! * (b) if `{x, y}` is an edge with `x ∥ y` and `z ≤ y`, then `{x, z}` is an edge with `x ∥ z`;
//! * (c) for `y, z ∈ st(x)`: `z ≤ y` iff `φ_x(z) ≤ φ_x(y)`;
//! * (d) `φ_x(y) ≠ y` implies `y < x`;
//! * (e) if `μ(x)` is finite, the order of `φ_x` divides `μ(x)`;
//! * (f) `μ(φ_x(y)) = μ(y)`;
//! * (g) `z < y < x` implies `φ_x(φ_y(z)) = φ_{y'}(φ_x(z))` where `y' = φ_x(y)`.
//!
//! Structural problems (a `φ_x` that is not an adjacency-preserving bijection
//! of the star, an inconsistent `φ_x^{-1}`, a ranking that does not extend `<`)
//! are listed first; axioms (c) to (g) are only checked when there are none.

use std::collections::BTreeSet;
use std::fmt;

use crate::graph::{Mu, TrickleGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Axiom::A => 'a',
            Axiom::B => 'b',
            Axiom::C => 'c',
            Axiom::D => 'd',
            Axiom::E => 'e',
            Axiom::F => 'f',
            Axiom::G => 'g',
        };
        write!(f, "({c})")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<String>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "axiom {} violated: witness ({})", self.axiom, self.witness.join(", "))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub structural: Vec<String>,
    pub violations: Vec<Violation>,
    /// Number of vertex tuples examined.
    pub checked: usize,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.structural.is_empty() && self.violations.is_empty()
    }

    pub fn is_vacuous(&self) -> bool {
        self.is_valid() && self.checked == 0
    }

    pub fn violates(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    pub fn has_witness(&self, axiom: Axiom, witness: &[&str]) -> bool {
        self.violations
            .iter()
            .any(|v| v.axiom == axiom && v.witness.iter().map(String::as_str).eq(witness.iter().copied()))
    }

    pub fn violated_axioms(&self) -> BTreeSet<Axiom> {
        self.violations.iter().map(|v| v.axiom).collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_vacuous() {
            return write!(f, "valid (vacuous)");
        }
        if self.is_valid() {
            return write!(f, "valid");
        }
        let mut first = true;
        for s in &self.structural {
            if !first {
                writeln!(f)?;
            }
            first = false;
            write!(f, "structural: {s}")?;
        }
        for v in &self.violations {
            if !first {
                writeln!(f)?;
            }
            first = false;
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

struct Checker<'a, G: TrickleGraph> {
    g: &'a G,
    report: ValidationReport,
    seen: BTreeSet<Violation>,
}

impl<'a, G: TrickleGraph> Checker<'a, G> {
    fn new(g: &'a G) -> Self {
        Checker {
            g,
            report: ValidationReport::default(),
            seen: BTreeSet::new(),
        }
    }

    fn name(&self, v: &G::Vertex) -> String {
        self.g.vertex_name(v)
    }

    fn violation(&mut self, axiom: Axiom, witness: &[&G::Vertex]) {
        let v = Violation {
            axiom,
            witness: witness.iter().map(|w| self.name(w)).collect(),
        };
        if self.seen.insert(v.clone()) {
            self.report.violations.push(v);
        }
    }

    fn structural(&mut self, msg: String) {
        if !self.report.structural.contains(&msg) {
            self.report.structural.push(msg);
        }
    }

    fn axiom_a(&mut self, x: &G::Vertex, y: &G::Vertex) {
        if self.g.less(x, y) && !self.g.edge(x, y) {
            self.violation(Axiom::A, &[x, y]);
        }
    }

    fn incomparable(&self, x: &G::Vertex, y: &G::Vertex) -> bool {
        !self.g.less(x, y) && !self.g.less(y, x)
    }

    fn axiom_b(&mut self, x: &G::Vertex, y: &G::Vertex, z: &G::Vertex) {
        let g = self.g;
        if x != y
            && g.edge(x, y)
            && self.incomparable(x, y)
            && g.less_eq(z, y)
            && !(x != z && g.edge(x, z) && self.incomparable(x, z))
        {
            self.violation(Axiom::B, &[x, y, z]);
        }
    }

    fn axiom_c(&mut self, x: &G::Vertex, y: &G::Vertex, z: &G::Vertex) {
        let g = self.g;
        if g.in_star(x, y) && g.in_star(x, z) {
            let before = g.less_eq(z, y);
            let after = g.less_eq(&g.phi(x, z), &g.phi(x, y));
            if before != after {
                self.violation(Axiom::C, &[x, y, z]);
            }
        }
    }

    fn axiom_d(&mut self, x: &G::Vertex, y: &G::Vertex) {
        let g = self.g;
        if g.in_star(x, y) && g.phi(x, y) != *y && !g.less(y, x) {
            self.violation(Axiom::D, &[x, y]);
        }
    }

    fn axiom_f(&mut self, x: &G::Vertex, y: &G::Vertex) {
        let g = self.g;
        if g.in_star(x, y) && g.mu(&g.phi(x, y)) != g.mu(y) {
            self.violation(Axiom::F, &[x, y]);
        }
    }

    fn axiom_g(&mut self, x: &G::Vertex, y: &G::Vertex, z: &G::Vertex) {
        let g = self.g;
        if g.less(z, y) && g.less(y, x) {
            let lhs = g.phi(x, &g.phi(y, z));
            let y2 = g.phi(x, y);
            let rhs = g.phi(&y2, &g.phi(x, z));
            if lhs != rhs {
                self.violation(Axiom::G, &[x, y, z]);
            }
        }
    }

    fn inverse_consistency(&mut self, x: &G::Vertex, y: &G::Vertex) {
        let g = self.g;
        if !g.in_star(x, y) {
            return;
        }
        if g.phi_inv(x, &g.phi(x, y)) != *y || g.phi(x, &g.phi_inv(x, y)) != *y {
            let msg = format!("phi_inv({}) is not inverse to phi({}) at {}", self.name(x), self.name(x), self.name(y));
            self.structural(msg);
        }
    }
}

/// Full check of a finite graph.
pub fn validate<G: TrickleGraph>(g: &G) -> ValidationReport {
    let Some(vs) = g.vertices() else {
        let mut r = ValidationReport::default();
        r.structural.push("graph is lazy; use spot_check".into());
        return r;
    };
    let mut c = Checker::new(g);

    for x in &vs {
        if g.edge(x, x) {
            c.structural(format!("self-loop at {}", c.name(x)));
        }
        if g.less(x, x) {
            c.structural(format!("{} < {}", c.name(x), c.name(x)));
        }
        for y in &vs {
            if g.edge(x, y) != g.edge(y, x) {
                c.structural(format!("edge relation not symmetric at ({}, {})", c.name(x), c.name(y)));
            }
            if x != y && g.less(x, y) && g.less(y, x) {
                c.structural(format!("order not antisymmetric at ({}, {})", c.name(x), c.name(y)));
            }
            if x != y && g.rank_cmp(x, y) == std::cmp::Ordering::Equal {
                c.structural(format!("ranking ties {} and {}", c.name(x), c.name(y)));
            }
            if g.less(x, y) && g.rank_cmp(x, y) != std::cmp::Ordering::Less {
                c.structural(format!(
                    "ranking does not extend the order: {} < {}",
                    c.name(x),
                    c.name(y)
                ));
            }
        }
    }
    for x in &vs {
        for y in &vs {
            if !g.less(x, y) {
                continue;
            }
            for z in &vs {
                if g.less(y, z) && !g.less(x, z) {
                    c.structural(format!("order not transitive at ({}, {}, {})", c.name(x), c.name(y), c.name(z)));
                }
            }
        }
    }

    for x in &vs {
        let star: Vec<&G::Vertex> = vs.iter().filter(|y| g.in_star(x, y)).collect();
        let mut images = BTreeSet::new();
        for y in &vs {
            let img = g.phi(x, y);
            if !g.in_star(x, y) {
                if img != *y {
                    c.structural(format!("phi({}) moves {} outside its star", c.name(x), c.name(y)));
                }
                continue;
            }
            if !g.contains(&img) || !g.in_star(x, &img) {
                c.structural(format!("phi({}) maps {} outside the star", c.name(x), c.name(y)));
            }
            if !images.insert(img) {
                c.structural(format!("phi({}) is not injective on the star", c.name(x)));
            }
            c.inverse_consistency(x, y);
        }
        for (i, y) in star.iter().enumerate() {
            for z in &star[i + 1..] {
                if g.edge(y, z) != g.edge(&g.phi(x, y), &g.phi(x, z)) {
                    c.structural(format!(
                        "phi({}) does not preserve adjacency of ({}, {})",
                        c.name(x),
                        c.name(y),
                        c.name(z)
                    ));
                }
            }
        }
    }

    for x in &vs {
        for y in &vs {
            c.report.checked += 1;
            c.axiom_a(x, y);
            for z in &vs {
                c.axiom_b(x, y, z);
            }
        }
    }
    if !c.report.structural.is_empty() {
        return c.report;
    }

    for x in &vs {
        let star: Vec<&G::Vertex> = vs.iter().filter(|y| g.in_star(x, y)).collect();
        for y in &star {
            c.axiom_d(x, y);
            c.axiom_f(x, y);
            for z in &star {
                c.axiom_c(x, y, z);
            }
        }
        if let Mu::Finite(m) = g.mu(x) {
            let mut k = 0u32;
            let mut cur: Vec<G::Vertex> = star.iter().map(|&v| v.clone()).collect();
            let order = loop {
                if k == m {
                    break None;
                }
                k += 1;
                cur = cur.iter().map(|v| g.phi(x, v)).collect();
                if cur.iter().zip(&star).all(|(a, b)| a == *b) {
                    break Some(k);
                }
            };
            match order {
                Some(k) if m % k == 0 => {}
                _ => c.violation(Axiom::E, &[x]),
            }
        }
        for y in vs.iter().filter(|y| g.less(y, x)) {
            for z in vs.iter().filter(|z| g.less(z, y)) {
                c.axiom_g(x, y, z);
            }
        }
    }
    c.report
}

/// Checks every axiom instance whose vertices all come from one sample triple.
pub fn spot_check<G: TrickleGraph>(
    g: &G,
    samples: &[(G::Vertex, G::Vertex, G::Vertex)],
) -> ValidationReport {
    let mut c = Checker::new(g);
    for (a, b, d) in samples {
        let t = [a, b, d];
        c.report.checked += 1;
        for x in t {
            if let Mu::Finite(m) = g.mu(x) {
                for y in t {
                    if g.in_star(x, y) && g.phi_pow_unchecked(x, m as i64, y) != *y {
                        c.violation(Axiom::E, &[x]);
                    }
                }
            }
            for y in t {
                c.axiom_a(x, y);
                c.axiom_d(x, y);
                c.axiom_f(x, y);
                c.inverse_consistency(x, y);
                for z in t {
                    c.axiom_b(x, y, z);
                    c.axiom_c(x, y, z);
                    c.axiom_g(x, y, z);
                }
            }
        }
    }
    c.report
}
