//! Canonical forms and isomorphism tests for desk-scale digraphs.
//!
//! Both use iterated color refinement (by color, out-neighbor colors and
//! in-neighbor colors) plus individualization and backtracking. Branches on
//! vertices that are twins of an already tried vertex are skipped; swapping
//! two twins is an automorphism, so those branches reach the same leaves.
//! The worst case is exponential, so inputs are capped at
//! [`IsoConfig::max_vertices`].

use std::collections::{HashMap, HashSet};

use crate::digraph::{Arc, Digraph, Vertex};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_VERTICES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsoConfig {
    pub max_vertices: usize,
}

impl Default for IsoConfig {
    fn default() -> Self {
        IsoConfig { max_vertices: DEFAULT_MAX_VERTICES }
    }
}

impl IsoConfig {
    fn check(&self, n: usize) -> Result<()> {
        if n > self.max_vertices {
            Err(Error::SizeLimitExceeded { n, limit: self.max_vertices })
        } else {
            Ok(())
        }
    }
}

/// The arc list of a digraph under its canonical relabeling. Two digraphs
/// have equal forms iff they are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    n: usize,
    arcs: Vec<Arc>,
}

impl CanonicalForm {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn to_digraph(&self) -> Digraph {
        Digraph::new(self.n, self.arcs.iter().copied()).expect("canonical arcs are valid")
    }
}

pub fn canonical_form(g: &Digraph) -> Result<CanonicalForm> {
    canonical_form_with(g, &IsoConfig::default())
}

pub fn canonical_form_with(g: &Digraph, cfg: &IsoConfig) -> Result<CanonicalForm> {
    let labels = canonical_labeling(g, cfg)?;
    Ok(CanonicalForm { n: g.vertex_count(), arcs: relabeled_arcs(g, &labels) })
}

/// A permutation `v -> label` realizing the canonical form.
pub fn canonical_labeling(g: &Digraph, cfg: &IsoConfig) -> Result<Vec<Vertex>> {
    let n = g.vertex_count();
    cfg.check(n)?;
    let twins = Twins::new(g);
    let mut best: Option<(Vec<Arc>, Vec<Vertex>)> = None;
    canon_search(g, vec![0; n], &twins, &mut best);
    Ok(best.map(|(_, labels)| labels).unwrap_or_default())
}

pub fn is_isomorphic(g: &Digraph, h: &Digraph) -> Result<bool> {
    is_isomorphic_with(g, h, &IsoConfig::default())
}

pub fn is_isomorphic_with(g: &Digraph, h: &Digraph, cfg: &IsoConfig) -> Result<bool> {
    Ok(find_isomorphism(g, h, cfg)?.is_some())
}

/// Returns `phi` with `u -> v` in `g` iff `phi[u] -> phi[v]` in `h`.
pub fn find_isomorphism(g: &Digraph, h: &Digraph, cfg: &IsoConfig) -> Result<Option<Vec<Vertex>>> {
    cfg.check(g.vertex_count())?;
    cfg.check(h.vertex_count())?;
    let n = g.vertex_count();
    if n != h.vertex_count() || g.arc_count() != h.arc_count() {
        return Ok(None);
    }
    let union = Digraph::from_out_adjacency(
        g.vertices()
            .map(|v| g.successors(v).to_vec())
            .chain(h.vertices().map(|v| h.successors(v).iter().map(|&w| w + n).collect()))
            .collect(),
    );
    let twins = Twins::new(h);
    Ok(iso_search(&union, n, vec![0; 2 * n], &twins, g, h))
}

fn relabeled_arcs(g: &Digraph, labels: &[Vertex]) -> Vec<Arc> {
    let mut arcs: Vec<Arc> = g.arcs().map(|(u, v)| (labels[u], labels[v])).collect();
    arcs.sort_unstable();
    arcs
}

/// Refines `colors` to the coarsest stable coloring below it. On return the
/// colors are dense ranks `0..k`; returns `k`.
fn refine(g: &Digraph, colors: &mut [usize]) -> usize {
    let mut count = colors.iter().collect::<HashSet<_>>().len();
    loop {
        let sigs: Vec<(usize, Vec<usize>, Vec<usize>)> = g
            .vertices()
            .map(|v| {
                let mut outs: Vec<usize> = g.successors(v).iter().map(|&w| colors[w]).collect();
                let mut ins: Vec<usize> = g.predecessors(v).iter().map(|&w| colors[w]).collect();
                outs.sort_unstable();
                ins.sort_unstable();
                (colors[v], outs, ins)
            })
            .collect();
        let mut distinct: Vec<&(usize, Vec<usize>, Vec<usize>)> = sigs.iter().collect();
        distinct.sort_unstable();
        distinct.dedup();
        let next_count = distinct.len();
        for (v, sig) in sigs.iter().enumerate() {
            colors[v] = distinct.binary_search(&sig).expect("signature present");
        }
        if next_count == count {
            return count;
        }
        count = next_count;
    }
}

fn individualize(colors: &[usize], chosen: &[Vertex]) -> Vec<usize> {
    colors.iter().enumerate().map(|(u, &c)| 2 * c + usize::from(!chosen.contains(&u))).collect()
}

/// Closed twins (equal closed neighborhoods) and open twins (equal open
/// neighborhoods); each map sends a vertex to a class id.
struct Twins {
    closed: Vec<usize>,
    open: Vec<usize>,
}

impl Twins {
    fn new(g: &Digraph) -> Self {
        let out_closed = g.closed_out_lists();
        let in_closed = g.closed_in_lists();
        let closed = class_ids(g.vertices().map(|v| (&out_closed[v], &in_closed[v])));
        let open = class_ids(g.vertices().map(|v| (g.successors(v), g.predecessors(v))));
        Twins { closed, open }
    }
}

fn class_ids<K: std::hash::Hash + Eq>(keys: impl Iterator<Item = K>) -> Vec<usize> {
    let mut ids = HashMap::new();
    keys.map(|k| {
        let next = ids.len();
        *ids.entry(k).or_insert(next)
    })
    .collect()
}

fn first_split_cell(colors: &[usize], k: usize, members: impl Fn(usize) -> bool) -> Option<usize> {
    let mut sizes = vec![0usize; k];
    for (v, &c) in colors.iter().enumerate() {
        if members(v) {
            sizes[c] += 1;
        }
    }
    sizes.iter().position(|&s| s >= 2)
}

fn canon_search(g: &Digraph, mut colors: Vec<usize>, twins: &Twins, best: &mut Option<(Vec<Arc>, Vec<Vertex>)>) {
    let n = g.vertex_count();
    let k = refine(g, &mut colors);
    if k == n {
        let code = relabeled_arcs(g, &colors);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, colors));
        }
        return;
    }
    let cell = first_split_cell(&colors, k, |_| true).expect("non-discrete coloring has a split cell");
    let mut tried_closed = HashSet::new();
    let mut tried_open = HashSet::new();
    for v in (0..n).filter(|&v| colors[v] == cell) {
        if tried_closed.contains(&twins.closed[v]) || tried_open.contains(&twins.open[v]) {
            continue;
        }
        tried_closed.insert(twins.closed[v]);
        tried_open.insert(twins.open[v]);
        canon_search(g, individualize(&colors, &[v]), twins, best);
    }
}

/// Searches for an isomorphism between the two halves of `union`
/// (vertices `0..n` are `g`, `n..2n` are `h`).
fn iso_search(
    union: &Digraph,
    n: usize,
    mut colors: Vec<usize>,
    twins: &Twins,
    g: &Digraph,
    h: &Digraph,
) -> Option<Vec<Vertex>> {
    let k = refine(union, &mut colors);
    let mut balance = vec![0isize; k];
    for (v, &c) in colors.iter().enumerate() {
        balance[c] += if v < n { 1 } else { -1 };
    }
    if balance.iter().any(|&b| b != 0) {
        return None;
    }
    let Some(cell) = first_split_cell(&colors, k, |v| v < n) else {
        let mut h_of_color = vec![0; k];
        for w in n..2 * n {
            h_of_color[colors[w]] = w - n;
        }
        let phi: Vec<Vertex> = (0..n).map(|v| h_of_color[colors[v]]).collect();
        return g.arcs().all(|(u, v)| h.has_arc(phi[u], phi[v])).then_some(phi);
    };
    let v = (0..n).find(|&v| colors[v] == cell).expect("cell is nonempty on the g side");
    let mut tried_closed = HashSet::new();
    let mut tried_open = HashSet::new();
    for w in (n..2 * n).filter(|&w| colors[w] == cell) {
        let (c, o) = (twins.closed[w - n], twins.open[w - n]);
        if tried_closed.contains(&c) || tried_open.contains(&o) {
            continue;
        }
        tried_closed.insert(c);
        tried_open.insert(o);
        if let Some(phi) = iso_search(union, n, individualize(&colors, &[v, w]), twins, g, h) {
            return Some(phi);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c3() -> Digraph {
        Digraph::directed_cycle(3)
    }

    #[test]
    fn path_and_its_reverse_are_isomorphic() {
        let p2 = Digraph::directed_path(2);
        let rev = Digraph::new(2, [(1, 0)]).unwrap();
        assert!(is_isomorphic(&p2, &rev).unwrap());
        assert_eq!(canonical_form(&p2).unwrap(), canonical_form(&rev).unwrap());
    }

    #[test]
    fn cycle_and_reversal() {
        let rev = Digraph::new(3, [(1, 0), (2, 1), (0, 2)]).unwrap();
        let phi = find_isomorphism(&c3(), &rev, &IsoConfig::default()).unwrap().unwrap();
        for (u, v) in c3().arcs() {
            assert!(rev.has_arc(phi[u], phi[v]));
        }
    }

    #[test]
    fn different_arc_counts() {
        assert!(!is_isomorphic(&Digraph::directed_path(2), &Digraph::complete(2)).unwrap());
        assert_ne!(canonical_form(&Digraph::directed_path(2)).unwrap(), canonical_form(&Digraph::complete(2)).unwrap());
    }

    #[test]
    fn regular_non_isomorphic_pair() {
        // C6 vs two disjoint triangles, both symmetric and 2-regular
        let sym =
            |n, edges: &[(usize, usize)]| Digraph::new(n, edges.iter().flat_map(|&(u, v)| [(u, v), (v, u)])).unwrap();
        let c6 = sym(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let two_tri = sym(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        assert!(!is_isomorphic(&c6, &two_tri).unwrap());
        assert_ne!(canonical_form(&c6).unwrap(), canonical_form(&two_tri).unwrap());
        let shuffled = c6.relabel(&[3, 5, 0, 2, 4, 1]);
        assert!(is_isomorphic(&c6, &shuffled).unwrap());
        assert_eq!(canonical_form(&c6).unwrap(), canonical_form(&shuffled).unwrap());
    }

    #[test]
    fn complete_graphs_canonicalize_quickly() {
        let k = Digraph::complete(12);
        let form = canonical_form(&k).unwrap();
        assert_eq!(form.arcs().len(), 132);
    }

    #[test]
    fn size_limit() {
        let cfg = IsoConfig { max_vertices: 3 };
        assert!(matches!(
            canonical_form_with(&Digraph::empty(4), &cfg),
            Err(Error::SizeLimitExceeded { n: 4, limit: 3 })
        ));
    }

    #[test]
    fn canonical_form_round_trips_to_an_isomorphic_graph() {
        let g = Digraph::new(4, [(0, 1), (1, 2), (2, 0), (3, 0), (0, 3)]).unwrap();
        let form = canonical_form(&g).unwrap();
        assert!(is_isomorphic(&g, &form.to_digraph()).unwrap());
        assert_eq!(canonical_form(&form.to_digraph()).unwrap(), form);
    }
}
