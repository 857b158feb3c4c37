//! Thompson's group `F` as the trickle group of a lazy complete graph on
//! `Z[1/2] ⊔ {∞}`.
//!
//! `V_0 = Z`, and `V_{p+1}` refines each gap `[x, s_p(x)]` of `V_p` by the
//! points `u_k = s_p(x) - (s_p(x) - x)/2^k`, `k ≥ 0`. Every vertex `x`
//! carries a piecewise-linear homeomorphism `h_x` of the line, and
//! `φ_x(y) = h_x(y)`. A word `w_1 ⋯ w_k` acts as `h_{w_1} ∘ ⋯ ∘ h_{w_k}`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::dyadic::Dyadic;
use crate::element::{GroupElement, Word};
use crate::error::{Error, Result};
use crate::graph::{Mu, TrickleGraph};

/// Bound on segment walks; the walks terminate, so reaching it is a bug.
const WALK_CAP: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FVertex {
    Finite(Dyadic),
    Inf,
}

impl fmt::Display for FVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FVertex::Finite(d) => d.fmt(f),
            FVertex::Inf => f.write_str("inf"),
        }
    }
}

impl FromStr for FVertex {
    type Err = Error;
    fn from_str(s: &str) -> Result<FVertex> {
        match s {
            "inf" | "∞" => Ok(FVertex::Inf),
            _ => s
                .parse()
                .map(FVertex::Finite)
                .map_err(|_| Error::UnknownVertex(s.to_string())),
        }
    }
}

impl From<Dyadic> for FVertex {
    fn from(d: Dyadic) -> FVertex {
        FVertex::Finite(d)
    }
}

/// The gap of the next level containing `x`, given the gap `(l, r)` of the
/// current level containing it.
fn refine((l, r): (Dyadic, Dyadic), x: Dyadic) -> (Dyadic, Dyadic) {
    let w = r - l;
    let mut k = 0;
    let mut u = l;
    loop {
        let next = r - w.mul_pow2(-(k + 1));
        if next <= x {
            u = next;
            k += 1;
        } else {
            return (u, next);
        }
    }
}

fn bracket0(x: Dyadic) -> (Dyadic, Dyadic) {
    let f = Dyadic::from_int(x.floor());
    (f, f + Dyadic::ONE)
}

/// Consecutive `l ≤ x < r` in `V_p`.
fn bracket(p: u32, x: Dyadic) -> (Dyadic, Dyadic) {
    (0..p).fold(bracket0(x), |b, _| refine(b, x))
}

/// The least `p` with `x ∈ V_p`.
pub fn level(x: Dyadic) -> u32 {
    let mut b = bracket0(x);
    let mut p = 0;
    while b.0 != x {
        b = refine(b, x);
        p += 1;
    }
    p
}

pub fn in_level(p: u32, x: Dyadic) -> bool {
    level(x) <= p
}

fn check_level(p: u32, x: Dyadic) -> Result<()> {
    if in_level(p, x) {
        Ok(())
    } else {
        Err(Error::NotInLevel(x.to_string(), p))
    }
}

/// `s_p(x)`, the successor of `x` in `V_p`.
pub fn succ(p: u32, x: Dyadic) -> Result<Dyadic> {
    check_level(p, x)?;
    Ok(bracket(p, x).1)
}

/// `t_p(x)`, which does not depend on `p ≥ level(x)`.
pub fn pred(p: u32, x: Dyadic) -> Result<Dyadic> {
    check_level(p, x)?;
    Ok(pred_any(x))
}

fn pred_any(x: Dyadic) -> Dyadic {
    match level(x) {
        0 => x - Dyadic::ONE,
        q => x.mul_pow2(1) - bracket(q - 1, x).1,
    }
}

/// `y ↦ (y - a)·(b' - a')/(b - a) + a'`, with a power-of-two slope.
fn affine(y: Dyadic, (a, b): (Dyadic, Dyadic), (a2, b2): (Dyadic, Dyadic)) -> Dyadic {
    a2 + (y - a).scale(b2 - a2, b - a)
}

/// Segment sequence of `h_x` to the right of `x' = t_p(x)`: `v_k = x - d/2^k`.
struct Ladder {
    x: Dyadic,
    xp: Dyadic,
    d: Dyadic,
}

impl Ladder {
    fn new(x: Dyadic) -> Ladder {
        let xp = pred_any(x);
        Ladder { x, xp, d: x - xp }
    }

    fn v(&self, k: i32) -> Dyadic {
        self.x - self.d.mul_pow2(-k)
    }

    /// `k ≥ 0` with `v_k ≤ y < v_{k+1}`, for `x' ≤ y < x`.
    fn locate(&self, y: Dyadic) -> i32 {
        let mut k = 0;
        while self.v(k + 1) <= y {
            k += 1;
        }
        k
    }
}

fn h_finite(x: Dyadic, y: Dyadic) -> Dyadic {
    let l = Ladder::new(x);
    if y >= l.xp {
        let k = l.locate(y);
        let seg = (l.v(k), l.v(k + 1));
        return if k >= 1 {
            affine(y, seg, (l.v(k - 1), l.v(k)))
        } else {
            let vm1 = pred_any(l.xp);
            affine(y, seg, (vm1, l.xp))
        };
    }
    let mut cur = l.xp;
    for _ in 0..WALK_CAP {
        if cur.is_integer() {
            return y - Dyadic::ONE;
        }
        let prev = pred_any(cur);
        if y >= prev {
            return affine(y, (prev, cur), (pred_any(prev), prev));
        }
        cur = prev;
    }
    panic!("segment walk for h_{x} at {y} exceeded {WALK_CAP} steps");
}

fn h_finite_inv(x: Dyadic, y: Dyadic) -> Dyadic {
    let l = Ladder::new(x);
    if y >= l.xp {
        let k = l.locate(y);
        return affine(y, (l.v(k), l.v(k + 1)), (l.v(k + 1), l.v(k + 2)));
    }
    let mut cur = l.xp;
    let mut next = l.v(1);
    for _ in 0..WALK_CAP {
        let prev = pred_any(cur);
        if y >= prev {
            return affine(y, (prev, cur), (cur, next));
        }
        if cur.is_integer() {
            return y + Dyadic::ONE;
        }
        next = cur;
        cur = prev;
    }
    panic!("segment walk for h_{x}^-1 at {y} exceeded {WALK_CAP} steps");
}

/// `h_x(y)`.
pub fn h_apply(x: &FVertex, y: Dyadic) -> Dyadic {
    match *x {
        FVertex::Inf => y - Dyadic::ONE,
        FVertex::Finite(x) if y >= x => y,
        FVertex::Finite(x) => h_finite(x, y),
    }
}

/// `h_x^{-1}(y)`.
pub fn h_apply_inv(x: &FVertex, y: Dyadic) -> Dyadic {
    match *x {
        FVertex::Inf => y + Dyadic::ONE,
        FVertex::Finite(x) if y >= x => y,
        FVertex::Finite(x) => h_finite_inv(x, y),
    }
}

/// The complete graph on `Z[1/2] ⊔ {∞}` with the usual order, `∞` on top,
/// `μ ≡ ∞` and `φ_x = h_x`, `φ_x(∞) = ∞`.
#[derive(Clone, Copy, Debug, Default)]
pub struct FGraph;

pub fn f_graph() -> FGraph {
    FGraph
}

impl TrickleGraph for FGraph {
    type Vertex = FVertex;

    fn edge(&self, x: &FVertex, y: &FVertex) -> bool {
        x != y
    }
    fn less(&self, x: &FVertex, y: &FVertex) -> bool {
        x < y
    }
    fn mu(&self, _: &FVertex) -> Mu {
        Mu::Infinite
    }
    fn phi(&self, x: &FVertex, y: &FVertex) -> FVertex {
        match y {
            FVertex::Inf => FVertex::Inf,
            FVertex::Finite(t) => FVertex::Finite(h_apply(x, *t)),
        }
    }
    fn phi_inv(&self, x: &FVertex, y: &FVertex) -> FVertex {
        match y {
            FVertex::Inf => FVertex::Inf,
            FVertex::Finite(t) => FVertex::Finite(h_apply_inv(x, *t)),
        }
    }
    fn rank_cmp(&self, x: &FVertex, y: &FVertex) -> Ordering {
        x.cmp(y)
    }
    fn vertices(&self) -> Option<Vec<FVertex>> {
        None
    }
    fn contains(&self, _: &FVertex) -> bool {
        true
    }
    fn vertex_name(&self, x: &FVertex) -> String {
        x.to_string()
    }
    fn parse_vertex(&self, token: &str) -> Option<FVertex> {
        token.parse().ok()
    }
    fn phi_pow_unchecked(&self, x: &FVertex, a: i64, y: &FVertex) -> FVertex {
        let FVertex::Finite(mut t) = *y else {
            return FVertex::Inf;
        };
        match *x {
            FVertex::Inf => FVertex::Finite(t - Dyadic::from_int(a as i128)),
            FVertex::Finite(xv) if t >= xv => *y,
            _ => {
                for _ in 0..a.unsigned_abs() {
                    t = if a > 0 { h_apply(x, t) } else { h_apply_inv(x, t) };
                }
                FVertex::Finite(t)
            }
        }
    }
    fn all_mu_infinite(&self) -> bool {
        true
    }
    fn is_complete(&self) -> bool {
        true
    }
}

/// `(h_{w_1} ∘ ⋯ ∘ h_{w_k})(t)`.
pub fn eval_word(w: &Word<FVertex>, t: Dyadic) -> Dyadic {
    w.letters.iter().rev().fold(t, |t, l| {
        if l.inverse {
            h_apply_inv(&l.vertex, t)
        } else {
            h_apply(&l.vertex, t)
        }
    })
}

/// A point moved by a nontrivial element: with `x_1 > x_2` the top vertices of
/// its single stratum, a point of `(x_2, x_1)`, or below `x_1` if there is only one.
pub fn witness_point(e: &GroupElement<'_, FGraph>) -> Option<Dyadic> {
    let u = e.piling().strata.first()?;
    let mut top = u.support();
    let x1 = *top.next()?;
    Some(match (x1, top.next()) {
        (FVertex::Inf, None) => Dyadic::ZERO,
        (FVertex::Finite(a), None) => a - Dyadic::ONE,
        (FVertex::Inf, Some(FVertex::Finite(b))) => *b + Dyadic::ONE,
        (FVertex::Finite(a), Some(FVertex::Finite(b))) => (a + *b).half(),
        (_, Some(FVertex::Inf)) => unreachable!("∞ is the largest vertex"),
    })
}

/// Integers and quarter points in `[-radius, radius]`.
pub fn sample_grid(radius: i64) -> Vec<Dyadic> {
    (-4 * radius..=4 * radius).map(|k| Dyadic::new(k as i128, 2)).collect()
}

/// The sample grid of radius 8 plus the witness point of `nf(w)`, if any.
pub fn witness_grid(e: &GroupElement<'_, FGraph>) -> Vec<Dyadic> {
    let mut grid = sample_grid(8);
    grid.extend(witness_point(e));
    grid
}

/// Whether the map of `w` fixes every point of `grid`.
pub fn fixes_grid(w: &Word<FVertex>, grid: &[Dyadic]) -> bool {
    grid.iter().all(|&t| eval_word(w, t) == t)
}
