//! Brute-force ground truth for small digraphs.
//!
//! [`brute_force_strong_pfd`] tries every split `n = a·b` and searches for
//! an assignment of grid coordinates to vertices under which the graph is
//! a strong product of some `A` on `a` and `B` on `b` vertices. It shares no
//! code with the skeleton-based algorithm beyond the graph type.
//!
//! Random samplers use ChaCha8 seeded with `seed_from_u64`, so a seed
//! produces the same graphs on every platform.

use std::collections::{BTreeMap, VecDeque};
use std::ops::RangeInclusive;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::canon::canonical_form;
use crate::digraph::{Digraph, Vertex};
use crate::error::{Error, Result};
use crate::factorization::Factorization;
use crate::relations::is_thin;

/// Largest `n` accepted by [`enumerate_connected_digraphs`].
pub const ENUMERATION_LIMIT: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_vertices: usize,
    pub time_budget: Duration,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_vertices: 10, time_budget: Duration::from_secs(60) }
    }
}

pub type Rng64 = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Prime factors of a connected digraph by exhaustive search.
pub fn brute_force_strong_pfd(g: &Digraph, cfg: &OracleConfig) -> Result<Factorization> {
    if g.vertex_count() > cfg.max_vertices {
        return Err(Error::SizeLimitExceeded { n: g.vertex_count(), limit: cfg.max_vertices });
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    factor_recursive(g, Instant::now() + cfg.time_budget)
}

fn factor_recursive(g: &Digraph, deadline: Instant) -> Result<Factorization> {
    let n = g.vertex_count();
    for a in (2..).take_while(|a| a * a <= n).filter(|a| n.is_multiple_of(*a)) {
        if let Some(split) = SplitSearch::new(g, a, n / a, deadline).run()? {
            let left = factor_recursive(&split.factors[0], deadline)?;
            let right = factor_recursive(&split.factors[1], deadline)?;
            let f = split.refine_factor(0, &left);
            let last = f.factors.len() - 1;
            return Ok(f.refine_factor(last, &right));
        }
    }
    Ok(Factorization::trivial(g))
}

/// Backtracking search for `g ≅ A ⊠ B` with `|A| = a`, `|B| = b`.
struct SplitSearch<'g> {
    g: &'g Digraph,
    a: usize,
    b: usize,
    order: Vec<Vertex>,
    pos: Vec<(usize, usize)>,
    used: Vec<bool>,
    /// Tri-state arc matrices of the candidate factors.
    arcs_a: Vec<Option<bool>>,
    arcs_b: Vec<Option<bool>>,
    trail: Vec<(bool, usize)>,
    deadline: Instant,
    nodes: u64,
}

impl<'g> SplitSearch<'g> {
    fn new(g: &'g Digraph, a: usize, b: usize, deadline: Instant) -> Self {
        SplitSearch {
            g,
            a,
            b,
            order: bfs_order(g),
            pos: vec![(usize::MAX, usize::MAX); g.vertex_count()],
            used: vec![false; a * b],
            arcs_a: vec![None; a * a],
            arcs_b: vec![None; b * b],
            trail: Vec::new(),
            deadline,
            nodes: 0,
        }
    }

    fn run(mut self) -> Result<Option<Factorization>> {
        if self.search(0, 0, 0)? {
            let to_graph = |m: &[Option<bool>], k: usize| {
                Digraph::new(k, (0..k * k).filter(|&i| m[i] == Some(true)).map(|i| (i / k, i % k)))
                    .expect("factor arcs are loop free")
            };
            let factors = vec![to_graph(&self.arcs_a, self.a), to_graph(&self.arcs_b, self.b)];
            let coords = self.pos.iter().map(|&(i, j)| vec![i, j]).collect();
            Ok(Some(Factorization { factors, coords }))
        } else {
            Ok(None)
        }
    }

    fn set(&mut self, in_a: bool, from: usize, to: usize, value: bool) -> bool {
        let (m, k) = if in_a { (&mut self.arcs_a, self.a) } else { (&mut self.arcs_b, self.b) };
        let idx = from * k + to;
        match m[idx] {
            Some(old) => old == value,
            None => {
                m[idx] = Some(value);
                self.trail.push((in_a, idx));
                true
            }
        }
    }

    fn get(&self, in_a: bool, from: usize, to: usize) -> Option<bool> {
        if in_a {
            self.arcs_a[from * self.a + to]
        } else {
            self.arcs_b[from * self.b + to]
        }
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (in_a, idx) = self.trail.pop().unwrap();
            if in_a {
                self.arcs_a[idx] = None;
            } else {
                self.arcs_b[idx] = None;
            }
        }
    }

    /// Records what the pair `(u, v)` forces on the factor arcs.
    fn constrain(&mut self, u: Vertex, v: Vertex) -> bool {
        let (iu, ju) = self.pos[u];
        let (iv, jv) = self.pos[v];
        let (uv, vu) = (self.g.has_arc(u, v), self.g.has_arc(v, u));
        if iu == iv {
            return self.set(false, ju, jv, uv) && self.set(false, jv, ju, vu);
        }
        if ju == jv {
            return self.set(true, iu, iv, uv) && self.set(true, iv, iu, vu);
        }
        for (present, ia, ib, ja, jb) in [(uv, iu, iv, ju, jv), (vu, iv, iu, jv, ju)] {
            if present {
                if !(self.set(true, ia, ib, true) && self.set(false, ja, jb, true)) {
                    return false;
                }
            } else if self.get(true, ia, ib) == Some(true) && self.get(false, ja, jb) == Some(true) {
                return false;
            }
        }
        true
    }

    /// `|N⁺[v]| = |N⁺_A[i]|·|N⁺_B[j]|` and the same for `N⁻`, once the
    /// relevant factor rows are fully known.
    fn degrees_consistent(&self, v: Vertex) -> bool {
        let (i, j) = self.pos[v];
        let count = |in_a: bool, k: usize, fixed: usize, outgoing: bool| -> Option<usize> {
            let mut c = 1;
            for t in (0..k).filter(|&t| t != fixed) {
                let val = if outgoing { self.get(in_a, fixed, t) } else { self.get(in_a, t, fixed) };
                c += usize::from(val?);
            }
            Some(c)
        };
        let out_ok = match (count(true, self.a, i, true), count(false, self.b, j, true)) {
            (Some(x), Some(y)) => x * y == self.g.out_degree(v) + 1,
            _ => true,
        };
        let in_ok = match (count(true, self.a, i, false), count(false, self.b, j, false)) {
            (Some(x), Some(y)) => x * y == self.g.in_degree(v) + 1,
            _ => true,
        };
        out_ok && in_ok
    }

    fn search(&mut self, step: usize, labels_a: usize, labels_b: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) && Instant::now() > self.deadline {
            return Err(Error::TimeBudgetExceeded);
        }
        let n = self.g.vertex_count();
        if step == n {
            return Ok(self.is_exact());
        }
        let v = self.order[step];
        // new labels are introduced in increasing order
        for i in 0..(labels_a + 1).min(self.a) {
            for j in 0..(labels_b + 1).min(self.b) {
                if self.used[i * self.b + j] {
                    continue;
                }
                self.used[i * self.b + j] = true;
                self.pos[v] = (i, j);
                let mark = self.trail.len();
                let ok = (0..step).all(|s| {
                    let u = self.order[s];
                    self.constrain(u, v)
                }) && self.degrees_consistent(v);
                if ok && self.search(step + 1, labels_a.max(i + 1), labels_b.max(j + 1))? {
                    return Ok(true);
                }
                self.undo(mark);
                self.used[i * self.b + j] = false;
                self.pos[v] = (usize::MAX, usize::MAX);
            }
        }
        Ok(false)
    }

    fn is_exact(&self) -> bool {
        let n = self.g.vertex_count();
        (0..n).all(|u| {
            (0..n).filter(|&v| v != u).all(|v| {
                let (iu, ju) = self.pos[u];
                let (iv, jv) = self.pos[v];
                let in_a = iu == iv || self.get(true, iu, iv) == Some(true);
                let in_b = ju == jv || self.get(false, ju, jv) == Some(true);
                self.g.has_arc(u, v) == (in_a && in_b)
            })
        })
    }
}

fn bfs_order(g: &Digraph) -> Vec<Vertex> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

/// All arc configurations on `n` labeled vertices: each unordered pair is
/// empty, one of two arcs, or both.
pub(crate) fn all_labeled_digraphs(n: usize) -> impl Iterator<Item = Digraph> {
    let pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let total = 4usize.pow(pairs.len() as u32);
    (0..total).map(move |mut state| {
        let mut arcs = Vec::new();
        for &(u, v) in &pairs {
            match state % 4 {
                1 => arcs.push((u, v)),
                2 => arcs.push((v, u)),
                3 => arcs.extend([(u, v), (v, u)]),
                _ => {}
            }
            state /= 4;
        }
        Digraph::new(n, arcs).expect("pairs are loop free")
    })
}

/// One representative (its canonical form) per isomorphism class of
/// connected digraphs on `n` vertices, sorted by canonical form.
pub fn enumerate_connected_digraphs(n: usize) -> Result<Vec<Digraph>> {
    if n > ENUMERATION_LIMIT {
        return Err(Error::SizeLimitExceeded { n, limit: ENUMERATION_LIMIT });
    }
    let mut classes = BTreeMap::new();
    for g in all_labeled_digraphs(n).filter(Digraph::is_connected) {
        let form = canonical_form(&g)?;
        classes.entry(form).or_insert(());
    }
    Ok(classes.into_keys().map(|f| f.to_digraph()).collect())
}

/// A random weakly connected digraph on `n` vertices: a random spanning
/// tree plus each remaining pair with probability `density`; every present
/// pair is one arc either way or both, uniformly.
pub fn random_connected_digraph<R: Rng>(rng: &mut R, n: usize, density: f64) -> Digraph {
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(rng);
    let mut arcs = Vec::new();
    let mut push_pair = |rng: &mut R, u: Vertex, v: Vertex| match rng.gen_range(0..3) {
        0 => arcs.push((u, v)),
        1 => arcs.push((v, u)),
        _ => arcs.extend([(u, v), (v, u)]),
    };
    let mut in_tree = std::collections::HashSet::new();
    for i in 1..n {
        let parent = perm[rng.gen_range(0..i)];
        in_tree.insert((parent.min(perm[i]), parent.max(perm[i])));
        push_pair(rng, parent, perm[i]);
    }
    for u in 0..n {
        for v in u + 1..n {
            if !in_tree.contains(&(u, v)) && rng.gen_bool(density) {
                push_pair(rng, u, v);
            }
        }
    }
    Digraph::new(n, arcs).expect("generated arcs are valid")
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<Vertex> {
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

pub fn random_relabel<R: Rng>(rng: &mut R, g: &Digraph) -> Digraph {
    g.relabel(&random_permutation(rng, g.vertex_count()))
}

fn rejection_sample(
    n_range: RangeInclusive<usize>,
    seed: u64,
    cfg: &OracleConfig,
    mut accept: impl FnMut(&Digraph) -> Result<bool>,
) -> Result<Digraph> {
    let deadline = Instant::now() + cfg.time_budget;
    let mut rng = seeded_rng(seed);
    loop {
        if Instant::now() > deadline {
            return Err(Error::TimeBudgetExceeded);
        }
        let n = rng.gen_range(n_range.clone());
        let density = rng.gen_range(0.15..0.6);
        let g = random_connected_digraph(&mut rng, n, density);
        if accept(&g)? {
            return Ok(g);
        }
    }
}

/// A random connected digraph certified prime by the brute-force oracle.
pub fn random_prime_digraph(n_range: RangeInclusive<usize>, seed: u64, cfg: &OracleConfig) -> Result<Digraph> {
    rejection_sample(n_range, seed, cfg, |g| Ok(g.vertex_count() >= 2 && brute_force_strong_pfd(g, cfg)?.is_prime()))
}

/// A random connected thin digraph.
pub fn random_thin_digraph(n_range: RangeInclusive<usize>, seed: u64, cfg: &OracleConfig) -> Result<Digraph> {
    rejection_sample(n_range, seed, cfg, |g| Ok(is_thin(g)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::ProductKind;
    use crate::products::strong_product;

    fn cfg() -> OracleConfig {
        OracleConfig::default()
    }

    #[test]
    fn square_splits_into_two_paths() {
        let p2 = Digraph::directed_path(2);
        let g = strong_product(&[p2.clone(), p2.clone()]).unwrap().into_graph();
        let f = brute_force_strong_pfd(&g, &cfg()).unwrap();
        assert_eq!(f.factors.len(), 2);
        assert!(f.factors.iter().all(|h| canonical_form(h).unwrap() == canonical_form(&p2).unwrap()));
        assert!(f.reconstructs(&g, ProductKind::Strong));
    }

    #[test]
    fn cycle_is_prime() {
        assert!(brute_force_strong_pfd(&Digraph::directed_cycle(3), &cfg()).unwrap().is_prime());
    }

    #[test]
    fn k4_is_k2_squared() {
        let f = brute_force_strong_pfd(&Digraph::complete(4), &cfg()).unwrap();
        assert_eq!(f.factors, vec![Digraph::complete(2), Digraph::complete(2)]);
    }

    #[test]
    fn limits() {
        let small = OracleConfig { max_vertices: 3, ..cfg() };
        assert!(matches!(
            brute_force_strong_pfd(&Digraph::complete(4), &small),
            Err(Error::SizeLimitExceeded { n: 4, limit: 3 })
        ));
        assert_eq!(brute_force_strong_pfd(&Digraph::empty(2), &cfg()), Err(Error::NotConnected));
        assert!(matches!(enumerate_connected_digraphs(5), Err(Error::SizeLimitExceeded { .. })));
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_connected_digraphs(1).unwrap(), vec![Digraph::empty(1)]);
        let two = enumerate_connected_digraphs(2).unwrap();
        assert_eq!(two.len(), 2);
        assert!(two.iter().any(|g| g.arc_count() == 1) && two.iter().any(|g| g.arc_count() == 2));
    }

    #[test]
    fn samplers_are_deterministic() {
        let a = random_thin_digraph(3..=8, 42, &cfg()).unwrap();
        let b = random_thin_digraph(3..=8, 42, &cfg()).unwrap();
        assert_eq!(a, b);
        assert!(is_thin(&a) && a.is_connected());
        let p = random_prime_digraph(2..=6, 7, &cfg()).unwrap();
        assert_eq!(p, random_prime_digraph(2..=6, 7, &cfg()).unwrap());
        assert!(brute_force_strong_pfd(&p, &cfg()).unwrap().is_prime());
    }

    #[test]
    fn prime_sampler_times_out_on_impossible_range() {
        let quick = OracleConfig { time_budget: Duration::from_millis(50), ..cfg() };
        assert_eq!(random_prime_digraph(1..=1, 0, &quick), Err(Error::TimeBudgetExceeded));
    }
}
