//! Bounded certification of local confluence.
//!
//! Two rule applications on a piling overlap in one of three shapes:
//!
//! * `C1`: `(∅, W)`, deleting `∅` against a T-transformation into `∅`;
//! * `C2`: `(U, V, W)`, a T-transformation on `(U, V)` against one on `(V, W)`;
//! * `C3`: `(U, V)`, two T-transformations at distinct syllables of `V`.
//!
//! A pair resolves when both successors have the same irreducible form.
//! Strata range over supports of bounded size and exponents of bounded
//! magnitude (all residues when `μ` is finite).

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{descending, Mu, TrickleGraph};
use crate::piling::{apply, format_piling, normalize, normalize_random, Piling, Rewrite};
use crate::stratum::{t_transform_at, Stratum, Syllable};

pub const DEFAULT_MAX_SUPPORT: usize = 3;
pub const DEFAULT_MAX_EXP: i64 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Case {
    C1,
    C2,
    C3,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A root piling with two overlapping rule applications.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPair<V> {
    pub case: Case,
    pub root: Piling<V>,
    pub left: Rewrite,
    pub right: Rewrite,
}

impl<V: Clone + Eq> CriticalPair<V> {
    /// The two one-step successors of the root.
    pub fn successors<G: TrickleGraph<Vertex = V> + ?Sized>(&self, g: &G) -> Result<(Piling<V>, Piling<V>)> {
        let step = |r| {
            apply(g, &self.root, r)?
                .ok_or_else(|| Error::Graph(format!("rewrite {r:?} does not apply to the root")))
        };
        Ok((step(self.left)?, step(self.right)?))
    }

    /// The irreducible forms of both successors.
    pub fn forms<G: TrickleGraph<Vertex = V> + ?Sized>(&self, g: &G) -> Result<(Piling<V>, Piling<V>)> {
        let (a, b) = self.successors(g)?;
        Ok((normalize(g, &a)?, normalize(g, &b)?))
    }
}

/// `true` iff both successors reach one irreducible piling.
pub fn resolve<G: TrickleGraph + ?Sized>(g: &G, pair: &CriticalPair<G::Vertex>) -> bool {
    matches!(pair.forms(g), Ok((a, b)) if a == b)
}

/// Exponents allowed for `x` under the bound.
fn exponents(mu: Mu, max_exp: i64) -> Vec<i64> {
    match mu {
        Mu::Finite(m) => (1..m as i64).collect(),
        Mu::Infinite => (-max_exp..=max_exp).filter(|&a| a != 0).collect(),
    }
}

/// Every stratum with support at most `max_support`, the empty one first.
pub fn bounded_strata<G: TrickleGraph + ?Sized>(
    g: &G,
    max_support: usize,
    max_exp: i64,
) -> Result<Vec<Stratum<G::Vertex>>> {
    let vs = descending(g, g.vertices().ok_or(Error::Lazy)?);
    let mut out = vec![Stratum::empty()];
    let mut cur = Vec::new();
    extend(g, &vs, 0, max_support, max_exp, &mut cur, &mut out);
    Ok(out)
}

fn extend<G: TrickleGraph + ?Sized>(
    g: &G,
    vs: &[G::Vertex],
    from: usize,
    max_support: usize,
    max_exp: i64,
    cur: &mut Vec<Syllable<G::Vertex>>,
    out: &mut Vec<Stratum<G::Vertex>>,
) {
    if cur.len() == max_support {
        return;
    }
    for (k, x) in vs.iter().enumerate().skip(from) {
        if !cur.iter().all(|s| g.edge(&s.vertex, x)) {
            continue;
        }
        for a in exponents(g.mu(x), max_exp) {
            cur.push(Syllable::new(x.clone(), a));
            out.push(Stratum::from_sorted_unchecked(cur.clone()));
            extend(g, vs, k + 1, max_support, max_exp, cur, out);
            cur.pop();
        }
    }
}

/// The bounded strata and, for each ordered pair `(U, V)` of them, every
/// T-transformation that applies, as `(syllable index, U', V')`.
pub struct CriticalPairs<V> {
    strata: Vec<Stratum<V>>,
    /// `moves[u][v]`
    moves: Vec<Vec<Vec<Move<V>>>>,
}

type Move<V> = (usize, Stratum<V>, Stratum<V>);

pub fn enumerate_critical_pairs<G: TrickleGraph + ?Sized>(
    g: &G,
    max_support: usize,
    max_exp: i64,
) -> Result<CriticalPairs<G::Vertex>> {
    let strata = bounded_strata(g, max_support, max_exp)?;
    let mut moves = Vec::with_capacity(strata.len());
    for u in &strata {
        let mut row = Vec::with_capacity(strata.len());
        for v in &strata {
            let mut hits = Vec::new();
            for j in 0..v.len() {
                if let Some((a, b)) = t_transform_at(g, u, v, j)? {
                    hits.push((j, a, b));
                }
            }
            row.push(hits);
        }
        moves.push(row);
    }
    Ok(CriticalPairs { strata, moves })
}

impl<V: Clone + Eq> CriticalPairs<V> {
    pub fn strata(&self) -> &[Stratum<V>] {
        &self.strata
    }

    fn piling(&self, idx: &[usize]) -> Piling<V> {
        Piling::new(idx.iter().map(|&k| self.strata[k].clone()).collect())
    }

    pub fn c1(&self) -> impl Iterator<Item = CriticalPair<V>> + '_ {
        // strata[0] is the empty stratum.
        (0..self.strata.len()).flat_map(move |w| {
            self.moves[0][w].iter().map(move |&(j, _, _)| CriticalPair {
                case: Case::C1,
                root: self.piling(&[0, w]),
                left: Rewrite::DropEmpty(0),
                right: Rewrite::T { pair: 0, syllable: j },
            })
        })
    }

    pub fn c2(&self) -> impl Iterator<Item = CriticalPair<V>> + '_ {
        let n = self.strata.len();
        (0..n).flat_map(move |v| {
            (0..n).flat_map(move |u| {
                self.moves[u][v].iter().flat_map(move |&(i, _, _)| {
                    (0..n).flat_map(move |w| {
                        self.moves[v][w].iter().map(move |&(j, _, _)| CriticalPair {
                            case: Case::C2,
                            root: self.piling(&[u, v, w]),
                            left: Rewrite::T { pair: 0, syllable: i },
                            right: Rewrite::T { pair: 1, syllable: j },
                        })
                    })
                })
            })
        })
    }

    pub fn c3(&self) -> impl Iterator<Item = CriticalPair<V>> + '_ {
        let n = self.strata.len();
        (0..n).flat_map(move |u| {
            (0..n).flat_map(move |v| {
                let hits = &self.moves[u][v];
                (0..hits.len()).flat_map(move |a| {
                    hits[a + 1..].iter().map(move |&(j, _, _)| CriticalPair {
                        case: Case::C3,
                        root: self.piling(&[u, v]),
                        left: Rewrite::T { pair: 0, syllable: hits[a].0 },
                        right: Rewrite::T { pair: 0, syllable: j },
                    })
                })
            })
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = CriticalPair<V>> + '_ {
        self.c1().chain(self.c2()).chain(self.c3())
    }
}

/// An unresolved critical pair with both irreducible forms.
#[derive(Clone, Debug)]
pub struct Failure {
    pub case: Case,
    pub root: String,
    pub left: String,
    pub right: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} root {} -> {} vs {}", self.case, self.root, self.left, self.right)
    }
}

#[derive(Clone, Debug, Default)]
pub struct ConfluenceReport {
    pub strata: usize,
    pub c1: usize,
    pub c2: usize,
    pub c3: usize,
    pub failed: usize,
    /// At most `MAX_WITNESSES` failures.
    pub failures: Vec<Failure>,
}

pub const MAX_WITNESSES: usize = 20;

impl ConfluenceReport {
    pub fn checked(&self) -> usize {
        self.c1 + self.c2 + self.c3
    }

    pub fn is_confluent(&self) -> bool {
        self.failed == 0
    }
}

/// Enumerates and resolves every bounded critical pair.
pub fn verify<G: TrickleGraph + ?Sized>(g: &G, max_support: usize, max_exp: i64) -> Result<ConfluenceReport> {
    let pairs = enumerate_critical_pairs(g, max_support, max_exp)?;
    let mut report = ConfluenceReport {
        strata: pairs.strata.len(),
        ..Default::default()
    };
    let st = &pairs.strata;
    let mut check = |case: Case, root: &[usize], a: Vec<Stratum<G::Vertex>>, b: Vec<Stratum<G::Vertex>>| -> Result<()> {
        match case {
            Case::C1 => report.c1 += 1,
            Case::C2 => report.c2 += 1,
            Case::C3 => report.c3 += 1,
        }
        let (a, b) = (normalize(g, &Piling::new(a))?, normalize(g, &Piling::new(b))?);
        if a != b {
            report.failed += 1;
            if report.failures.len() < MAX_WITNESSES {
                report.failures.push(Failure {
                    case,
                    root: format_piling(g, &pairs.piling(root)),
                    left: format_piling(g, &a),
                    right: format_piling(g, &b),
                });
            }
        }
        Ok(())
    };
    let n = st.len();
    for w in 0..n {
        for (_, a, b) in &pairs.moves[0][w] {
            check(Case::C1, &[0, w], vec![st[w].clone()], vec![a.clone(), b.clone()])?;
        }
    }
    for v in 0..n {
        for u in 0..n {
            for (_, u1, v1) in &pairs.moves[u][v] {
                for w in 0..n {
                    for (_, v2, w2) in &pairs.moves[v][w] {
                        check(
                            Case::C2,
                            &[u, v, w],
                            vec![u1.clone(), v1.clone(), st[w].clone()],
                            vec![st[u].clone(), v2.clone(), w2.clone()],
                        )?;
                    }
                }
            }
        }
    }
    for u in 0..n {
        for v in 0..n {
            let hits = &pairs.moves[u][v];
            for (k, (_, a1, b1)) in hits.iter().enumerate() {
                for (_, a2, b2) in &hits[k + 1..] {
                    check(Case::C3, &[u, v], vec![a1.clone(), b1.clone()], vec![a2.clone(), b2.clone()])?;
                }
            }
        }
    }
    Ok(report)
}

/// A piling of `len` strata drawn uniformly from `pool`.
pub fn random_piling<V: Clone + Eq, R: Rng + ?Sized>(pool: &[Stratum<V>], len: usize, rng: &mut R) -> Piling<V> {
    Piling::new((0..len).filter_map(|_| pool.choose(rng).cloned()).collect())
}

/// Normalizes each piling with `strategies` random rule orders and compares
/// against the deterministic form. Returns the first disagreement as
/// `(piling, deterministic, random)`.
pub fn random_strategy_check<G: TrickleGraph + ?Sized, R: Rng + ?Sized>(
    g: &G,
    pilings: &[Piling<G::Vertex>],
    strategies: usize,
    rng: &mut R,
) -> Result<Option<(String, String, String)>> {
    for p in pilings {
        let want = normalize(g, p)?;
        for _ in 0..strategies {
            let got = normalize_random(g, p, rng)?;
            if got != want {
                return Ok(Some((format_piling(g, p), format_piling(g, &want), format_piling(g, &got))));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{cactus, gar3};
    use crate::graph::FiniteGraph;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn strata_counts() {
        let g = gar3();
        assert_eq!(bounded_strata(&g, 3, 2).unwrap().len(), 125);
        assert_eq!(bounded_strata(&g, 1, 2).unwrap().len(), 13);
        // J3: ∅, a, b, c, ab, ac; {b, c} is not a clique.
        let j = cactus(3).unwrap();
        let s = bounded_strata(&j, 3, 2).unwrap();
        assert_eq!(s.len(), 6);
        let (b, c) = (j.id("[1,2]").unwrap(), j.id("[2,3]").unwrap());
        assert!(s.iter().all(|u| !(u.support().any(|v| *v == b) && u.support().any(|v| *v == c))));
    }

    #[test]
    fn empty_graph_has_no_pairs() {
        let g = FiniteGraph::builder().build().unwrap();
        let pairs = enumerate_critical_pairs(&g, 3, 2).unwrap();
        assert_eq!(pairs.iter().count(), 0);
        assert!(verify(&g, 3, 2).unwrap().is_confluent());
    }

    #[test]
    fn c1_one_per_syllable() {
        let g = gar3();
        let pairs = enumerate_critical_pairs(&g, 3, 2).unwrap();
        let syllables: usize = pairs.strata().iter().map(Stratum::len).sum();
        assert_eq!(pairs.c1().count(), syllables);
    }

    #[test]
    fn shapes() {
        let g = cactus(3).unwrap();
        let pairs = enumerate_critical_pairs(&g, 2, 2).unwrap();
        for p in pairs.iter() {
            let (a, b) = p.successors(&g).unwrap();
            assert_ne!(a, b);
            match p.case {
                Case::C1 => assert!(p.root.strata[0].is_empty() && p.root.len() == 2),
                Case::C2 => assert_eq!(p.root.len(), 3),
                Case::C3 => assert!(p.root.len() == 2 && p.root.strata[1].len() >= 2),
            }
        }
        assert!(pairs.c3().count() > 0);
    }

    #[test]
    fn fixtures_resolve() {
        for g in [cactus(3).unwrap(), cactus(4).unwrap()] {
            let r = verify(&g, 3, 2).unwrap();
            assert!(r.is_confluent(), "{:?}", r.failures);
            assert!(r.c2 > 0 && r.c3 > 0);
        }
        let r = verify(&gar3(), 2, 1).unwrap();
        assert!(r.is_confluent(), "{:?}", r.failures);
    }

    #[test]
    fn verify_matches_stream() {
        let g = cactus(4).unwrap();
        let pairs = enumerate_critical_pairs(&g, 3, 2).unwrap();
        let r = verify(&g, 3, 2).unwrap();
        assert_eq!(r.checked(), pairs.iter().count());
        assert_eq!(r.c3, pairs.c3().count());
        assert!(pairs.iter().all(|p| resolve(&g, &p)));
    }

    #[test]
    fn corrupted_graph_fails() {
        // φ_x fixes y and z: the relation x y = y x conflicts with x y = z x.
        let g = FiniteGraph::builder()
            .vertex("x", Mu::Infinite)
            .vertex("y", Mu::Infinite)
            .vertex("z", Mu::Infinite)
            .less("y", "x")
            .less("z", "x")
            .edge("x", "y")
            .edge("x", "z")
            .edge("y", "z")
            .phi("x", "y", "z")
            .phi("x", "z", "z")
            .build()
            .unwrap();
        let r = verify(&g, 2, 1).unwrap();
        assert!(!r.is_confluent());
        assert_eq!(r.failures.len(), r.failed.min(MAX_WITNESSES));
        let pairs = enumerate_critical_pairs(&g, 2, 1).unwrap();
        assert_eq!(pairs.iter().filter(|p| !resolve(&g, p)).count(), r.failed);
    }

    #[test]
    fn random_strategies_agree() {
        let g = gar3();
        let pool = bounded_strata(&g, 3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let pilings: Vec<_> = (0..50).map(|_| random_piling(&pool, 5, &mut rng)).collect();
        assert_eq!(random_strategy_check(&g, &pilings, 10, &mut rng).unwrap(), None);
    }
}
