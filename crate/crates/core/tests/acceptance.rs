//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use trickle::confluence::{bounded_strata, random_piling, random_strategy_check, verify};
use trickle::dyadic::Dyadic;
use trickle::examples::{
    cactus, cactus_with_mu, cycle_edges, dual_cactus_s3, gar3, interval_name, path_edges, uniform_product,
};
use trickle::garside::{
    atom_left_divisors, atom_right_divisors, garside_element, is_positive, lcm_atoms, lcm_bruteforce, left_divides,
    right_divides, square_free, theta_cube_check, PositiveElement,
};
use trickle::graph::GraphBuilder;
use trickle::parabolic::{intersect, is_parabolic, member, ParabolicSubgraph};
use trickle::stratum::syllable;
use trickle::thompson::{f_graph, fixes_grid, h_apply, h_apply_inv, witness_grid, FVertex};
use trickle::tits::{ii_connected, m_reduce, parse_syllabic, OrbitSearch, SyllabicWord, DEFAULT_ORBIT_BOUND};
use trickle::virtual_cactus::{defining_relations, jn_embedding_check, kjn_graph, vjn_equal, KjnGraph};
use trickle::{
    format_word, is_finite, validate, Axiom, FiniteGraph, Finiteness, GroupElement, Letter, Mu, TrickleGraph,
    VertexId, Word,
};

type R<T> = Result<T, String>;

fn t<T>(r: trickle::Result<T>) -> R<T> {
    r.map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> R<()> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------- fixtures

fn finite_fixtures() -> Vec<(String, FiniteGraph)> {
    let mut v = Vec::new();
    for n in 2..=5 {
        v.push((format!("J{n}"), cactus(n).unwrap()));
    }
    v.push(("GAR3".into(), gar3()));
    v.push(("CSTAR".into(), dual_cactus_s3()));
    for n in 2..=6 {
        v.push((format!("RACG-P{n}"), uniform_product(n, &path_edges(n), Mu::Finite(2)).unwrap()));
        v.push((format!("RAAG-P{n}"), uniform_product(n, &path_edges(n), Mu::Infinite).unwrap()));
    }
    for n in 3..=6 {
        v.push((format!("RACG-C{n}"), uniform_product(n, &cycle_edges(n), Mu::Finite(2)).unwrap()));
        v.push((format!("RAAG-C{n}"), uniform_product(n, &cycle_edges(n), Mu::Infinite).unwrap()));
    }
    v
}

fn kjn_fixtures() -> Vec<(String, KjnGraph)> {
    (2..=4).map(|n| (format!("KJ{n}"), kjn_graph(n).unwrap())).collect()
}

fn raag(n: usize, cycle: bool) -> FiniteGraph {
    let edges = if cycle { cycle_edges(n) } else { path_edges(n) };
    uniform_product(n, &edges, Mu::Infinite).unwrap()
}

fn three(mu: [Mu; 3]) -> GraphBuilder {
    FiniteGraph::builder().vertex("x", mu[0]).vertex("y", mu[1]).vertex("z", mu[2])
}

const INF3: [Mu; 3] = [Mu::Infinite; 3];

/// The cactus construction with `φ` of one interval left as the identity.
fn cactus_without_phi(n: usize, mu: Mu, skip: (usize, usize)) -> FiniteGraph {
    let ivs: Vec<(usize, usize)> = (1..=n).flat_map(|p| (p + 1..=n).map(move |q| (p, q))).collect();
    let nested = |i: (usize, usize), o: (usize, usize)| i != o && o.0 <= i.0 && i.1 <= o.1;
    let mut b = FiniteGraph::builder();
    for &(p, q) in &ivs {
        b = b.vertex(interval_name(p, q), mu);
    }
    for (i, &s) in ivs.iter().enumerate() {
        for &u in &ivs[i + 1..] {
            if nested(s, u) || nested(u, s) || s.1 < u.0 || u.1 < s.0 {
                b = b.edge(interval_name(s.0, s.1), interval_name(u.0, u.1));
            }
        }
    }
    for &o in &ivs {
        for &i in &ivs {
            if nested(i, o) {
                b = b.less(interval_name(i.0, i.1), interval_name(o.0, o.1));
                let img = (o.0 + o.1 - i.1, o.0 + o.1 - i.0);
                if o != skip && img != i {
                    b = b.phi(interval_name(o.0, o.1), interval_name(i.0, i.1), interval_name(img.0, img.1));
                }
            }
        }
    }
    b.build().unwrap()
}

fn corrupted_g() -> FiniteGraph {
    cactus_without_phi(4, Mu::Infinite, (2, 4))
}

/// One graph per axiom, each with the witness the validator must report.
fn corrupted() -> Vec<(Axiom, FiniteGraph, Vec<&'static str>)> {
    let a = FiniteGraph::builder()
        .vertex("x", Mu::Infinite)
        .vertex("y", Mu::Infinite)
        .less("y", "x")
        .build()
        .unwrap();
    let b = three(INF3).less("z", "y").edge("y", "z").edge("x", "y").build().unwrap();
    let c = FiniteGraph::builder()
        .vertex("x", Mu::Infinite)
        .vertex("y", Mu::Infinite)
        .vertex("z", Mu::Infinite)
        .vertex("w", Mu::Infinite)
        .less("y", "x")
        .less("z", "x")
        .less("w", "x")
        .less("z", "y")
        .edge("x", "y")
        .edge("x", "z")
        .edge("x", "w")
        .edge("y", "z")
        .edge("y", "w")
        .edge("z", "w")
        .phi("x", "z", "w")
        .phi("x", "w", "z")
        .build()
        .unwrap();
    let d = three(INF3)
        .edge("x", "y")
        .edge("x", "z")
        .edge("y", "z")
        .phi("x", "y", "z")
        .phi("x", "z", "y")
        .build()
        .unwrap();
    let e = FiniteGraph::builder()
        .vertex("u", Mu::Finite(2))
        .vertex("x", Mu::Finite(2))
        .vertex("y", Mu::Finite(2))
        .vertex("z", Mu::Finite(2))
        .less("x", "u")
        .less("y", "u")
        .less("z", "u")
        .edge("u", "x")
        .edge("u", "y")
        .edge("u", "z")
        .phi("u", "z", "x")
        .phi("u", "x", "y")
        .phi("u", "y", "z")
        .build()
        .unwrap();
    let f = three([Mu::Infinite, Mu::Infinite, Mu::Finite(2)])
        .less("y", "x")
        .less("z", "x")
        .edge("x", "y")
        .edge("x", "z")
        .edge("y", "z")
        .phi("x", "y", "z")
        .phi("x", "z", "y")
        .build()
        .unwrap();
    vec![
        (Axiom::A, a, vec!["y", "x"]),
        (Axiom::B, b, vec!["x", "y", "z"]),
        (Axiom::C, c, vec!["x", "y", "z"]),
        (Axiom::D, d, vec!["x", "y"]),
        (Axiom::E, e, vec!["u"]),
        (Axiom::F, f, vec!["x", "y"]),
        (Axiom::G, corrupted_g(), vec!["[1,4]", "[1,3]", "[1,2]"]),
    ]
}

// ------------------------------------------------------------ word helpers

fn pos<V>(v: V) -> Letter<V> {
    Letter::new(v, false)
}

fn neg<V>(v: V) -> Letter<V> {
    Letter::new(v, true)
}

fn random_word<V: Clone, Q: Rng>(vs: &[V], len: usize, rng: &mut Q) -> Word<V> {
    Word::new(
        (0..len)
            .map(|_| Letter::new(vs.choose(rng).unwrap().clone(), rng.gen_bool(0.5)))
            .collect(),
    )
}

fn random_positive<V: Clone, Q: Rng>(vs: &[V], len: usize, rng: &mut Q) -> Vec<V> {
    (0..len).map(|_| vs.choose(rng).unwrap().clone()).collect()
}

/// `φ_x(y)·x = φ_y(x)·y` for each edge, as `(lhs, rhs)`.
fn relations<G: TrickleGraph>(g: &G, vs: &[G::Vertex]) -> Vec<(Vec<G::Vertex>, Vec<G::Vertex>)> {
    let mut out = Vec::new();
    for (i, x) in vs.iter().enumerate() {
        for y in &vs[i + 1..] {
            if g.edge(x, y) {
                out.push((vec![g.phi(x, y), x.clone()], vec![g.phi(y, x), y.clone()]));
            }
        }
    }
    out
}

/// Every relator: `x^μ` for finite `μ` and `lhs·rhs⁻¹` for each relation.
fn relators<G: TrickleGraph>(g: &G, vs: &[G::Vertex]) -> Vec<Word<G::Vertex>> {
    let mut out: Vec<Word<G::Vertex>> = vs
        .iter()
        .filter_map(|x| match g.mu(x) {
            Mu::Finite(m) => Some(Word::new(vec![pos(x.clone()); m as usize])),
            Mu::Infinite => None,
        })
        .collect();
    for (l, r) in relations(g, vs) {
        out.push(Word::new(vec![
            pos(l[0].clone()),
            pos(l[1].clone()),
            neg(r[1].clone()),
            neg(r[0].clone()),
        ]));
    }
    out
}

fn insert<V: Clone>(w: &Word<V>, at: usize, r: &Word<V>) -> Word<V> {
    let mut letters = w.letters[..at].to_vec();
    letters.extend(r.letters.iter().cloned());
    letters.extend(w.letters[at..].iter().cloned());
    Word::new(letters)
}

fn positive_word<V: Clone>(vs: &[V]) -> Word<V> {
    Word::new(vs.iter().cloned().map(pos).collect())
}

/// Words reachable from `w` by positive relation substitutions.
fn positive_class<V: Clone + Eq + std::hash::Hash>(rules: &[(Vec<V>, Vec<V>)], w: &[V]) -> HashSet<Vec<V>> {
    let mut seen = HashSet::from([w.to_vec()]);
    let mut queue = VecDeque::from([w.to_vec()]);
    while let Some(cur) = queue.pop_front() {
        for i in 0..cur.len().saturating_sub(1) {
            for (l, r) in rules {
                for (from, to) in [(l, r), (r, l)] {
                    if cur[i..i + 2] == from[..] {
                        let mut next = cur.clone();
                        next[i..i + 2].clone_from_slice(to);
                        if seen.insert(next.clone()) {
                            queue.push_back(next);
                        }
                    }
                }
            }
        }
    }
    seen
}

fn random_substitutions<V: Clone + Eq, Q: Rng>(rules: &[(Vec<V>, Vec<V>)], w: &[V], steps: usize, rng: &mut Q) -> Vec<V> {
    let mut cur = w.to_vec();
    for _ in 0..steps {
        let mut moves = Vec::new();
        for i in 0..cur.len().saturating_sub(1) {
            for (l, r) in rules {
                for (from, to) in [(l, r), (r, l)] {
                    if cur[i..i + 2] == from[..] {
                        moves.push((i, to.clone()));
                    }
                }
            }
        }
        if let Some((i, to)) = moves.choose(rng) {
            cur[*i..*i + 2].clone_from_slice(to);
        }
    }
    cur
}

// ------------------------------------------------------------- criterion 1

fn c1_axioms() -> R<String> {
    let mut n = 0;
    for (name, g) in finite_fixtures() {
        let r = validate(&g);
        ensure(r.is_valid(), || format!("{name}: {r}"))?;
        n += 1;
    }
    for (name, g) in kjn_fixtures() {
        let r = validate(&g);
        ensure(r.is_valid(), || format!("{name}: {r}"))?;
        n += 1;
    }
    for (axiom, g, witness) in corrupted() {
        let r = validate(&g);
        ensure(!r.is_valid(), || format!("corrupted {axiom} accepted"))?;
        ensure(r.has_witness(axiom, &witness), || {
            format!("corrupted {axiom}: expected witness {witness:?}, got {r}")
        })?;
    }
    Ok(format!("{n} fixtures valid; 7 corruptions rejected with the expected witness"))
}

// ------------------------------------------------------------- criterion 2

fn confluence_on<G: TrickleGraph>(name: &str, g: &G, rng: &mut ChaCha8Rng) -> R<usize> {
    let r = t(verify(g, 3, 2))?;
    ensure(r.is_confluent(), || format!("{name}: {} unresolved, e.g. {}", r.failed, r.failures[0]))?;
    let pool = t(bounded_strata(g, 3, 2))?;
    let pilings: Vec<_> = (0..1000)
        .map(|_| {
            let len = rng.gen_range(1..=5);
            random_piling(&pool, len, rng)
        })
        .collect();
    if let Some((p, a, b)) = t(random_strategy_check(g, &pilings, 20, rng))? {
        return Err(format!("{name}: {p} reaches both {a} and {b}"));
    }
    Ok(r.checked())
}

fn c2_confluence() -> R<String> {
    let mut rng = rng(2);
    let mut pairs = 0;
    let mut n = 0;
    for (name, g) in finite_fixtures() {
        pairs += confluence_on(&name, &g, &mut rng)?;
        n += 1;
    }
    for (name, g) in kjn_fixtures() {
        pairs += confluence_on(&name, &g, &mut rng)?;
        n += 1;
    }
    Ok(format!("{n} fixtures: {pairs} critical pairs resolved; 1000 pilings x 20 strategies each agree"))
}

// ------------------------------------------------------------- criterion 3

fn word_problem_on<G: TrickleGraph>(name: &str, g: &G, rng: &mut ChaCha8Rng) -> R<()> {
    let vs = g.vertices().unwrap();
    for (l, r) in relations(g, &vs) {
        let (a, b) = (
            t(GroupElement::from_word(g, &positive_word(&l)))?,
            t(GroupElement::from_word(g, &positive_word(&r)))?,
        );
        ensure(a == b, || format!("{name}: relation {a} != {b}"))?;
    }
    let rels = relators(g, &vs);
    for r in &rels {
        ensure(t(GroupElement::from_word(g, r))?.is_identity(), || {
            format!("{name}: relator {} is not trivial", format_word(g, r))
        })?;
    }
    for _ in 0..10_000 {
        let len = rng.gen_range(0..=10);
        let w = random_word(&vs, len, rng);
        let mut r = rels.choose(rng).unwrap().clone();
        if rng.gen_bool(0.5) {
            r = r.inverse();
        }
        let at = rng.gen_range(0..=w.len());
        let w2 = insert(&w, at, &r);
        let (a, b) = (t(GroupElement::from_word(g, &w))?, t(GroupElement::from_word(g, &w2))?);
        ensure(a == b, || {
            format!("{name}: {} and {} normalize differently", format_word(g, &w), format_word(g, &w2))
        })?;
    }
    Ok(())
}

fn c3_word_problem() -> R<String> {
    let mut rng = rng(3);
    let mut n = 0;
    for (name, g) in finite_fixtures() {
        word_problem_on(&name, &g, &mut rng)?;
        n += 1;
    }
    for (name, g) in kjn_fixtures() {
        word_problem_on(&name, &g, &mut rng)?;
        n += 1;
    }
    Ok(format!("{n} fixtures: relations and x^mu hold; 10^4 relator insertions each keep nf"))
}

// ------------------------------------------------------------- criterion 4

/// Coset enumeration (HLT with coincidence processing) over the trivial
/// subgroup. Columns `2i` and `2i+1` are generator `i` and its inverse.
struct ToddCoxeter {
    cols: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    limit: usize,
}

const NONE: usize = usize::MAX;

impl ToddCoxeter {
    fn new(gens: usize, limit: usize) -> Self {
        ToddCoxeter {
            cols: 2 * gens,
            table: vec![vec![NONE; 2 * gens]],
            parent: vec![0],
            limit,
        }
    }

    fn inv(c: usize) -> usize {
        c ^ 1
    }

    fn define(&mut self, c: usize, x: usize) -> bool {
        if self.table.len() >= self.limit {
            return false;
        }
        let d = self.table.len();
        self.table.push(vec![NONE; self.cols]);
        self.parent.push(d);
        self.table[c][x] = d;
        self.table[d][Self::inv(x)] = c;
        true
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = c;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi] = lo;
            queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.table[e][x];
                if f == NONE {
                    continue;
                }
                self.table[f][Self::inv(x)] = NONE;
                let (e1, f1) = (self.rep(e), self.rep(f));
                if self.table[e1][x] != NONE {
                    let t = self.table[e1][x];
                    self.merge(f1, t, &mut queue);
                } else if self.table[f1][Self::inv(x)] != NONE {
                    let t = self.table[f1][Self::inv(x)];
                    self.merge(e1, t, &mut queue);
                } else {
                    self.table[e1][x] = f1;
                    self.table[f1][Self::inv(x)] = e1;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, rel: &[usize]) -> bool {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, rel.len() as isize - 1);
        loop {
            while (i as isize) <= j && self.table[f][rel[i]] != NONE {
                f = self.table[f][rel[i]];
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return true;
            }
            while j >= i as isize && self.table[b][Self::inv(rel[j as usize])] != NONE {
                b = self.table[b][Self::inv(rel[j as usize])];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return true;
            }
            if j == i as isize {
                self.table[f][rel[i]] = b;
                self.table[b][Self::inv(rel[i])] = f;
                return true;
            }
            if !self.define(f, rel[i]) {
                return false;
            }
        }
    }

    /// The index of the trivial subgroup, or `None` past the coset limit.
    fn run(mut self, rels: &[Vec<usize>]) -> Option<usize> {
        let mut c = 0;
        while c < self.table.len() {
            if self.parent[c] == c {
                for r in rels {
                    if !self.scan_and_fill(c, r) {
                        return None;
                    }
                    if self.parent[c] != c {
                        break;
                    }
                }
                if self.parent[c] == c {
                    for x in 0..self.cols {
                        if self.table[c][x] == NONE && !self.define(c, x) {
                            return None;
                        }
                    }
                }
            }
            c += 1;
        }
        Some((0..self.table.len()).filter(|&k| self.parent[k] == k).count())
    }
}

fn todd_coxeter_order(g: &FiniteGraph) -> Option<usize> {
    let vs: Vec<VertexId> = g.ids().collect();
    let col = |l: &Letter<VertexId>| 2 * l.vertex.index() + usize::from(l.inverse);
    let rels: Vec<Vec<usize>> = relators(g, &vs)
        .iter()
        .map(|w| w.letters.iter().map(col).collect())
        .collect();
    ToddCoxeter::new(vs.len(), 200_000).run(&rels)
}

/// Orbit of the identity under right multiplication by generators.
fn enumerate_elements(g: &FiniteGraph, cap: usize) -> Option<usize> {
    let gens: Vec<GroupElement<'_, FiniteGraph>> = g
        .ids()
        .map(|v| GroupElement::from_word(g, &Word::new(vec![pos(v)])).unwrap())
        .collect();
    let id = GroupElement::identity(g);
    let mut seen = HashSet::from([id.piling().clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(e) = queue.pop_front() {
        for s in &gens {
            let next = e.multiply(s).unwrap();
            if seen.insert(next.piling().clone()) {
                if seen.len() > cap {
                    return None;
                }
                queue.push_back(next);
            }
        }
    }
    Some(seen.len())
}

/// A random valid complete graph on at most three vertices with `μ ≤ 4`;
/// with `twisted`, some `φ_x` is not the identity.
fn random_complete_graph(rng: &mut ChaCha8Rng, twisted: bool) -> FiniteGraph {
    const NAMES: [&str; 3] = ["a", "b", "c"];
    loop {
        let n = rng.gen_range(1..=3);
        let mus: Vec<Mu> = (0..n).map(|_| Mu::Finite(rng.gen_range(2..=4))).collect();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        let mut less = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(0.6) {
                    less.push((perm[i], perm[j]));
                }
            }
        }
        let base = |extra: &[(usize, usize, usize)]| {
            let mut b = FiniteGraph::builder();
            for (i, m) in mus.iter().enumerate() {
                b = b.vertex(NAMES[i], *m);
            }
            for i in 0..n {
                for j in i + 1..n {
                    b = b.edge(NAMES[i], NAMES[j]);
                }
            }
            for &(a, c) in &less {
                b = b.less(NAMES[a], NAMES[c]);
            }
            for &(x, y, z) in extra {
                b = b.phi(NAMES[x], NAMES[y], NAMES[z]);
            }
            b.build()
        };
        let Ok(plain) = base(&[]) else { continue };
        let mut phi = Vec::new();
        for x in 0..n {
            let below: Vec<usize> = (0..n)
                .filter(|&y| plain.less(&plain.id(NAMES[y]).unwrap(), &plain.id(NAMES[x]).unwrap()))
                .collect();
            if below.len() >= 2 && rng.gen_bool(0.7) {
                let mut img = below.clone();
                img.shuffle(rng);
                phi.extend(below.iter().zip(&img).map(|(&y, &z)| (x, y, z)));
            }
        }
        if twisted && phi.iter().all(|&(_, y, z)| y == z) {
            continue;
        }
        if let Ok(g) = base(&phi) {
            if validate(&g).is_valid() {
                return g;
            }
        }
    }
}

fn c4_finiteness() -> R<String> {
    let mut rng = rng(4);
    let mut twisted = 0;
    let mut orders = Vec::new();
    for i in 0..20 {
        let g = random_complete_graph(&mut rng, i % 2 == 0);
        if g.ids().any(|x| g.ids().any(|y| g.phi(&x, &y) != y)) {
            twisted += 1;
        }
        let expected: usize = g
            .ids()
            .map(|v| match g.mu(&v) {
                Mu::Finite(m) => m as usize,
                Mu::Infinite => unreachable!(),
            })
            .product();
        let tc = todd_coxeter_order(&g).ok_or("coset enumeration exceeded its limit")?;
        let bfs = enumerate_elements(&g, 10_000).ok_or("normal-form enumeration exceeded its cap")?;
        let claimed = match is_finite(&g) {
            Finiteness::Finite { order } => order as usize,
            Finiteness::Infinite { reason } => return Err(format!("claimed infinite: {reason}")),
        };
        ensure(tc == expected && bfs == expected && claimed == expected, || {
            format!("order mismatch: product {expected}, coset enumeration {tc}, nf enumeration {bfs}, is_finite {claimed}")
        })?;
        orders.push(expected);
    }
    let g = gar3();
    ensure(matches!(is_finite(&g), Finiteness::Infinite { .. }), || "GAR3 claimed finite".into())?;
    Ok(format!("20 graphs ({twisted} with nontrivial phi), orders {orders:?} agree with coset enumeration"))
}

// ------------------------------------------------------------- criterion 5

fn random_syllabic(g: &FiniteGraph, len: usize, rng: &mut ChaCha8Rng) -> SyllabicWord<VertexId> {
    let vs: Vec<VertexId> = g.ids().collect();
    let syllables = (0..len)
        .map(|_| {
            let v = *vs.choose(rng).unwrap();
            let a = match g.mu(&v) {
                Mu::Finite(m) => rng.gen_range(1..m as i64),
                Mu::Infinite => *[-2, -1, 1, 2].choose(rng).unwrap(),
            };
            syllable(g, v, a).unwrap()
        })
        .collect();
    SyllabicWord::new(syllables)
}

fn to_syllabic(g: &FiniteGraph, w: &Word<VertexId>) -> SyllabicWord<VertexId> {
    SyllabicWord::new(
        w.letters
            .iter()
            .map(|l| syllable(g, l.vertex, if l.inverse { -1 } else { 1 }).unwrap())
            .collect(),
    )
}

fn to_word(w: &SyllabicWord<VertexId>) -> Word<VertexId> {
    Word::new(
        w.syllables
            .iter()
            .flat_map(|s| std::iter::repeat_n(Letter::new(s.vertex, s.exp < 0), s.exp.unsigned_abs() as usize))
            .collect(),
    )
}

fn tits_equal(g: &FiniteGraph, a: &SyllabicWord<VertexId>, b: &SyllabicWord<VertexId>) -> R<bool> {
    let ra = t(m_reduce(g, a, DEFAULT_ORBIT_BOUND))?.ok_or("orbit bound exceeded")?;
    let rb = t(m_reduce(g, b, DEFAULT_ORBIT_BOUND))?.ok_or("orbit bound exceeded")?;
    if ra.len() != rb.len() {
        return Ok(false);
    }
    match t(ii_connected(g, &ra, &rb, DEFAULT_ORBIT_BOUND))? {
        OrbitSearch::Connected => Ok(true),
        OrbitSearch::NotConnected => Ok(false),
        OrbitSearch::BoundExceeded => Err("orbit bound exceeded".into()),
    }
}

fn c5_tits() -> R<String> {
    let mut rng = rng(5);
    let mut summary = Vec::new();
    for (name, g) in [("J3", cactus(3).unwrap()), ("GAR3", gar3())] {
        let vs: Vec<VertexId> = g.ids().collect();
        let rels = relators(&g, &vs);
        let mut equal = 0;
        for _ in 0..1000 {
            let len = rng.gen_range(0..=8);
            let a = random_syllabic(&g, len, &mut rng);
            let b = match rng.gen_range(0..4) {
                0 => {
                    let len = rng.gen_range(0..=8);
                    random_syllabic(&g, len, &mut rng)
                }
                1 => {
                    let r = to_syllabic(&g, rels.choose(&mut rng).unwrap());
                    let at = rng.gen_range(0..=a.len());
                    let mut s = a.syllables.clone();
                    s.splice(at..at, r.syllables);
                    SyllabicWord::new(s)
                }
                2 => {
                    let e = t(GroupElement::from_word(&g, &to_word(&a)))?;
                    t(parse_syllabic(&g, &format_word(&g, &e.nf())))?
                }
                _ => {
                    let x = *vs.choose(&mut rng).unwrap();
                    let w = Word::new(vec![pos(x), neg(x)]);
                    let at = rng.gen_range(0..=a.len());
                    let mut s = a.syllables.clone();
                    s.splice(at..at, to_syllabic(&g, &w).syllables);
                    SyllabicWord::new(s)
                }
            };
            let piling_eq =
                t(GroupElement::from_word(&g, &to_word(&a)))? == t(GroupElement::from_word(&g, &to_word(&b)))?;
            let tits_eq = tits_equal(&g, &a, &b)?;
            ensure(piling_eq == tits_eq, || {
                format!("{name}: piling says {piling_eq}, Tits reduction says {tits_eq}")
            })?;
            equal += usize::from(piling_eq);
        }
        summary.push(format!("{name} {equal}/1000 equal"));
    }
    Ok(format!("100% agreement ({})", summary.join(", ")))
}

// ------------------------------------------------------------- criterion 6

fn c6_parabolic() -> R<String> {
    let mut rng = rng(6);
    let g = cactus(4).unwrap();
    let vs: Vec<VertexId> = g.ids().collect();
    let mut parabolic = Vec::new();
    for mask in 1u32..(1 << vs.len()) {
        let set: BTreeSet<VertexId> = vs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, v)| *v).collect();
        if t(is_parabolic(&g, &set))? {
            parabolic.push(set);
        }
    }
    ensure(parabolic.len() >= 10, || format!("only {} parabolic subsets", parabolic.len()))?;
    let chosen: Vec<_> = parabolic.choose_multiple(&mut rng, 10).cloned().collect();
    let subs: Vec<ParabolicSubgraph<'_, FiniteGraph>> =
        chosen.into_iter().map(|s| ParabolicSubgraph::new(&g, s).unwrap()).collect();
    for p in &subs {
        let induced = p.induced();
        let letters: Vec<VertexId> = p.vertices().iter().copied().collect();
        for _ in 0..100 {
            let len = rng.gen_range(0..=10);
            let w = random_word(&letters, len, &mut rng);
            let e = t(GroupElement::from_word(&g, &w))?;
            let f = t(GroupElement::from_word(&induced, &w))?;
            ensure(member(&e, p), || format!("{} left the subgroup", format_word(&g, &w)))?;
            ensure(e.piling() == f.piling(), || format!("nf of {} differs in the subgraph", format_word(&g, &w)))?;
        }
    }
    let mut both = 0;
    for _ in 0..1000 {
        let p = subs.choose(&mut rng).unwrap();
        let q = subs.choose(&mut rng).unwrap();
        let pq = t(intersect(p, q))?;
        let pool: Vec<VertexId> = match rng.gen_range(0..4) {
            0 => pq.vertices().iter().copied().collect(),
            1 => p.vertices().iter().copied().collect(),
            2 => q.vertices().iter().copied().collect(),
            _ => vs.clone(),
        };
        let e = if pool.is_empty() {
            GroupElement::identity(&g)
        } else {
            let len = rng.gen_range(0..=8);
            t(GroupElement::from_word(&g, &random_word(&pool, len, &mut rng)))?
        };
        let lhs = member(&e, &pq);
        ensure(lhs == (member(&e, p) && member(&e, q)), || format!("intersection membership fails for {e}"))?;
        both += usize::from(lhs);
    }
    Ok(format!(
        "{} parabolic subsets; nf conservative on 1000 subgroup words; intersection property on 1000 elements ({both} in both)",
        parabolic.len()
    ))
}

// ------------------------------------------------------------- criterion 7

fn positive_words(vs: &[VertexId], max_len: usize) -> Vec<Vec<VertexId>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<VertexId>| {
                vs.iter().map(move |v| {
                    let mut w = w.clone();
                    w.push(*v);
                    w
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn c7_garside() -> R<String> {
    let g = gar3();
    let vs: Vec<VertexId> = g.ids().collect();
    let rules = relations(&g, &vs);
    let pe = |w: &[VertexId]| PositiveElement::new(GroupElement::from_word(&g, &positive_word(w)).unwrap()).unwrap();

    let words = positive_words(&vs, 4);
    for w in &words {
        let class = positive_class(&rules, w);
        let first: BTreeSet<VertexId> = class.iter().filter_map(|c| c.first().copied()).collect();
        let last: BTreeSet<VertexId> = class.iter().filter_map(|c| c.last().copied()).collect();
        let e = pe(w);
        let left: BTreeSet<VertexId> = atom_left_divisors(&e).into_iter().collect();
        let right: BTreeSet<VertexId> = t(atom_right_divisors(&e))?.into_iter().collect();
        ensure(left == first && right == last, || format!("atom divisors of {e} disagree with brute force"))?;
    }

    let sf = t(square_free(&g))?;
    let mut sizes = vec![0; vs.len() + 1];
    for h in &sf {
        sizes[h.norm()] += 1;
    }
    ensure(sizes == [1, 3, 3, 1], || format!("square-free sizes {sizes:?}"))?;

    let delta = t(garside_element(&g))?;
    let sf_set: BTreeSet<String> = sf.iter().map(|h| h.to_string()).collect();
    let mut div_l = BTreeSet::new();
    let mut div_r = BTreeSet::new();
    let mut seen = BTreeSet::new();
    for w in positive_words(&vs, 3) {
        let e = pe(&w);
        if !seen.insert(e.to_string()) {
            continue;
        }
        if t(left_divides(&e, &delta))? {
            div_l.insert(e.to_string());
        }
        if t(right_divides(&e, &delta))? {
            div_r.insert(e.to_string());
        }
    }
    ensure(div_l == sf_set && div_r == sf_set, || "divisors of Delta are not the square-free set".into())?;
    let delta_word: Vec<VertexId> = delta.nf().letters.iter().map(|l| l.vertex).collect();
    let class = positive_class(&rules, &delta_word);
    let prefixes: BTreeSet<String> =
        class.iter().flat_map(|w| (0..=w.len()).map(|k| pe(&w[..k]).to_string())).collect();
    let suffixes: BTreeSet<String> =
        class.iter().flat_map(|w| (0..=w.len()).map(|k| pe(&w[k..]).to_string())).collect();
    ensure(prefixes == sf_set && suffixes == sf_set, || "brute-force divisors of Delta differ".into())?;

    for (i, a) in vs.iter().enumerate() {
        for b in &vs[i..] {
            let via_atoms = t(lcm_atoms(&g, &BTreeSet::from([*a, *b])))?;
            let brute = t(lcm_bruteforce(&pe(&[*a]), &pe(&[*b]), 4))?.ok_or("no common multiple found")?;
            ensure(via_atoms == brute, || format!("lcm mismatch: {via_atoms} vs {brute}"))?;
        }
    }

    let mut pregarside = vec![("GAR3".to_string(), gar3())];
    for n in 2..=5 {
        pregarside.push((format!("J{n}-inf"), cactus_with_mu(n, Mu::Infinite).unwrap()));
    }
    for n in 2..=6 {
        pregarside.push((format!("RAAG-P{n}"), raag(n, false)));
    }
    for n in 3..=6 {
        pregarside.push((format!("RAAG-C{n}"), raag(n, true)));
    }
    for (name, g) in &pregarside {
        ensure(validate(g).is_valid(), || format!("{name} invalid"))?;
        let r = t(theta_cube_check(g))?;
        ensure(r.is_valid(), || format!("theta cube fails on {name}: {r}"))?;
    }
    let r = t(theta_cube_check(&corrupted_g()))?;
    ensure(!r.is_valid(), || "theta cube passes on the corrupted (g) fixture".into())?;
    Ok(format!(
        "{} words; |SF_p| = {sizes:?}; Div_L = Div_R = SF; lcms agree; theta cube on {} fixtures",
        words.len(),
        pregarside.len()
    ))
}

// ------------------------------------------------------------- criterion 8

fn c8_monoid() -> R<String> {
    let mut rng = rng(8);
    let mut summary = Vec::new();
    for (name, g) in [("GAR3", gar3()), ("RAAG-P6", raag(6, false)), ("RAAG-C6", raag(6, true))] {
        let vs: Vec<VertexId> = g.ids().collect();
        let rules = relations(&g, &vs);
        let mut equal = 0;
        for _ in 0..1000 {
            let len = rng.gen_range(0..=6);
            let a = random_positive(&vs, len, &mut rng);
            let b = if rng.gen_bool(0.5) {
                let steps = rng.gen_range(0..=6);
                random_substitutions(&rules, &a, steps, &mut rng)
            } else {
                random_positive(&vs, len, &mut rng)
            };
            let monoid_eq = positive_class(&rules, &a).contains(&b);
            let ea = t(GroupElement::from_word(&g, &positive_word(&a)))?;
            let eb = t(GroupElement::from_word(&g, &positive_word(&b)))?;
            ensure(t(is_positive(&ea))? && t(is_positive(&eb))?, || "positive word with non-positive nf".into())?;
            ensure(monoid_eq == (ea == eb), || format!("{name}: monoid says {monoid_eq} for {ea} / {eb}"))?;
            equal += usize::from(monoid_eq);
        }
        summary.push(format!("{name} {equal}/1000 equal"));
    }
    Ok(format!("100% agreement ({})", summary.join(", ")))
}

// ------------------------------------------------------------- criterion 9

fn cactus_word(tokens: &[String]) -> String {
    if tokens.is_empty() {
        "ε".to_string()
    } else {
        tokens.join(" ")
    }
}

fn c9_vjn() -> R<String> {
    let mut rng = rng(9);
    let mut instances = 0;
    for n in 2..=4 {
        let g = t(kjn_graph(n))?;
        for (a, b) in defining_relations(n) {
            ensure(t(vjn_equal(&g, &a, &b))?, || format!("n={n}: {a} != {b}"))?;
            instances += 1;
        }
    }
    let mut summary = Vec::new();
    for n in [3usize, 4] {
        let gens: Vec<String> =
            (1..=n).flat_map(|p| (p + 1..=n).map(move |q| interval_name(p, q))).collect();
        let rels: Vec<(Vec<String>, Vec<String>)> = defining_relations(n)
            .into_iter()
            .filter(|(a, b)| !a.contains('r') && !b.contains('r'))
            .map(|(a, b)| {
                let strip = |w: &str| -> Vec<String> {
                    w.split_whitespace().filter(|t| *t != "ε").map(|t| t.trim_start_matches('x').to_string()).collect()
                };
                (strip(&a), strip(&b))
            })
            .collect();
        let j = t(cactus(n))?;
        let mut pairs = Vec::new();
        for _ in 0..500 {
            let len = rng.gen_range(0..=6);
            let w: Vec<String> = (0..len).map(|_| gens.choose(&mut rng).unwrap().clone()).collect();
            let v = if rng.gen_bool(0.5) {
                let (l, r) = rels.choose(&mut rng).unwrap();
                let at = rng.gen_range(0..=w.len());
                let mut a = w.clone();
                let mut b = w.clone();
                a.splice(at..at, l.iter().cloned());
                b.splice(at..at, r.iter().cloned());
                pairs.push((cactus_word(&a), cactus_word(&b)));
                continue;
            } else {
                let len = rng.gen_range(0..=6);
                (0..len).map(|_| gens.choose(&mut rng).unwrap().clone()).collect::<Vec<_>>()
            };
            pairs.push((cactus_word(&w), cactus_word(&v)));
        }
        let equal = pairs
            .iter()
            .filter(|(a, b)| GroupElement::parse(&j, a).unwrap() == GroupElement::parse(&j, b).unwrap())
            .count();
        ensure(t(jn_embedding_check(n, &pairs))?, || format!("n={n}: embedding check disagrees"))?;
        summary.push(format!("n={n} {equal}/500 equal"));
    }
    Ok(format!("{instances} relation instances hold; embedding agrees ({})", summary.join(", ")))
}

// ------------------------------------------------------------ criterion 10

fn random_dyadic(rng: &mut ChaCha8Rng, max_exp: u32, radius: i128) -> Dyadic {
    let e = rng.gen_range(0..=max_exp);
    let bound = radius << e;
    Dyadic::new(rng.gen_range(-bound..=bound), e)
}

fn random_fvertex(rng: &mut ChaCha8Rng) -> FVertex {
    if rng.gen_bool(0.15) {
        FVertex::Inf
    } else {
        FVertex::Finite(random_dyadic(rng, 10, 8))
    }
}

fn c10_thompson() -> R<String> {
    let mut rng = rng(10);
    for _ in 0..1000 {
        let x = random_fvertex(&mut rng);
        let y = random_dyadic(&mut rng, 10, 16);
        ensure(h_apply_inv(&x, h_apply(&x, y)) == y && h_apply(&x, h_apply_inv(&x, y)) == y, || {
            format!("round trip fails at x={x}, y={y}")
        })?;
    }
    for _ in 0..500 {
        let x = random_fvertex(&mut rng);
        let y = match x {
            FVertex::Inf => random_dyadic(&mut rng, 10, 8),
            FVertex::Finite(v) => {
                let mut d = random_dyadic(&mut rng, 10, 4);
                if d < Dyadic::from_int(0) {
                    d = -d;
                }
                if d == Dyadic::from_int(0) {
                    d = Dyadic::new(1, 10);
                }
                v - d
            }
        };
        let tt = random_dyadic(&mut rng, 10, 16);
        let y2 = FVertex::Finite(h_apply(&x, y));
        let yv = FVertex::Finite(y);
        let lhs = h_apply(&x, h_apply(&yv, tt));
        let rhs = h_apply(&y2, h_apply(&x, tt));
        ensure(lhs == rhs, || format!("conjugation identity fails at x={x}, y={y}, t={tt}: {lhs} vs {rhs}"))?;
    }
    let g = f_graph();
    let pool: Vec<FVertex> = ["-1", "-1/2", "0", "1/2", "1", "inf"].iter().map(|s| s.parse().unwrap()).collect();
    let rels = relators(&g, &pool);
    let mut trivial = 0;
    for _ in 0..200 {
        let len = rng.gen_range(1..=8);
        let u = random_word(&pool, len, &mut rng);
        let w = if rng.gen_bool(0.5) {
            let r = rels.choose(&mut rng).unwrap();
            let at = rng.gen_range(0..=u.len());
            u.concat(&insert(&u, at, r).inverse())
        } else {
            let len = rng.gen_range(1..=8);
            u.concat(&random_word(&pool, len, &mut rng))
        };
        let e = t(GroupElement::from_word(&g, &w))?;
        let grid = witness_grid(&e);
        ensure(e.is_identity() == fixes_grid(&w, &grid), || {
            format!("nf {} but grid test says {}", e, fixes_grid(&w, &grid))
        })?;
        trivial += usize::from(e.is_identity());
    }
    Ok(format!("1000 round trips; 500 conjugation triples; 200 words ({trivial} trivial) match the PL action"))
}

// ------------------------------------------------------------ criterion 11

fn c11_torsion() -> R<String> {
    let mut rng = rng(11);
    let g = gar3();
    let vs: Vec<VertexId> = g.ids().collect();
    let mut n = 0;
    while n < 200 {
        let len = rng.gen_range(1..=8);
        let e = t(GroupElement::from_word(&g, &random_word(&vs, len, &mut rng)))?;
        if e.is_identity() {
            continue;
        }
        for k in 2..=6 {
            ensure(!t(e.pow(k))?.is_identity(), || format!("({e})^{k} = 1"))?;
        }
        n += 1;
    }
    Ok("200 nonidentity elements, g^k != 1 for 2 <= k <= 6".into())
}

// -------------------------------------------------------------------- main

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> R<String>); 11] = [
        ("axiom suite", c1_axioms),
        ("confluence", c2_confluence),
        ("word problem soundness", c3_word_problem),
        ("finiteness", c4_finiteness),
        ("Tits reduction", c5_tits),
        ("parabolic subgroups", c6_parabolic),
        ("Garside structure", c7_garside),
        ("monoid embedding", c8_monoid),
        ("virtual cactus", c9_vjn),
        ("Thompson F", c10_thompson),
        ("torsion spot check", c11_torsion),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name:<24} PASS  {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name:<24} FAIL  {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
