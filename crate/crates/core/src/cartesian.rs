//! Prime factorization with respect to the Cartesian product.
//!
//! The underlying undirected graph is factored first. Its edges are colored
//! by the equivalence closure of two relations that every Cartesian
//! factorization respects:
//!
//! * opposite edges of a chordless square lie in the same factor;
//! * incident edges that lie on no chordless square together, or on two or
//!   more, lie in the same factor (edges of distinct factors span exactly
//!   one square, and it is chordless).
//!
//! The closure is therefore never coarser than the prime factorization. If
//! it does not describe a product, colors are coarsened by searching for
//! minimal color sets that split off as a factor.
//!
//! Arc directions are then compared between parallel layers. Two colors
//! whose layers disagree cannot belong to different digraph factors, so
//! they are merged, repeatedly, until no conflict remains.

use std::collections::BTreeSet;

use itertools::Itertools;
use petgraph::unionfind::UnionFind;

use crate::digraph::{Digraph, UndirectedGraph, Vertex};
use crate::error::{Error, Result};
use crate::factorization::Factorization;
use crate::products::encode;

/// A color per undirected edge, colors dense in `0..num_colors`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColoring {
    /// `(u, v)` with `u < v`, sorted.
    edges: Vec<(Vertex, Vertex)>,
    colors: Vec<usize>,
    num_colors: usize,
}

impl EdgeColoring {
    /// Builds a coloring from arbitrary labels. Colors are renumbered in
    /// order of first appearance along the sorted edge list.
    pub fn new(labeled: impl IntoIterator<Item = ((Vertex, Vertex), usize)>) -> Self {
        let mut pairs: Vec<((Vertex, Vertex), usize)> =
            labeled.into_iter().map(|((u, v), c)| ((u.min(v), u.max(v)), c)).collect();
        pairs.sort_unstable();
        pairs.dedup_by_key(|(e, _)| *e);
        let mut rename = std::collections::HashMap::new();
        let mut edges = Vec::with_capacity(pairs.len());
        let mut colors = Vec::with_capacity(pairs.len());
        for (e, c) in pairs {
            let next = rename.len();
            edges.push(e);
            colors.push(*rename.entry(c).or_insert(next));
        }
        EdgeColoring { num_colors: rename.len(), edges, colors }
    }

    /// Every edge of `ug` in color 0.
    pub fn single_color(ug: &UndirectedGraph) -> Self {
        EdgeColoring::new(ug.edges().map(|e| (e, 0)))
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    pub fn color_of(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok().map(|i| self.colors[i])
    }

    pub fn edges(&self) -> impl Iterator<Item = ((Vertex, Vertex), usize)> + '_ {
        self.edges.iter().copied().zip(self.colors.iter().copied())
    }

    /// Applies `f` to every color and renumbers.
    pub fn merged(&self, f: impl Fn(usize) -> usize) -> EdgeColoring {
        EdgeColoring::new(self.edges().map(|(e, c)| (e, f(c))))
    }

    fn covers_exactly(&self, ug: &UndirectedGraph) -> bool {
        self.edges.len() == ug.edge_count() && ug.edges().eq(self.edges.iter().copied())
    }
}

/// Coordinates induced by a coloring: coordinate `i` of `v` is the
/// component of `v` in the graph of all edges not colored `i`.
struct ProductStructure {
    sizes: Vec<usize>,
    coords: Vec<Vec<usize>>,
    /// Row-major coordinate index to vertex.
    vertex_of: Vec<Vertex>,
}

impl ProductStructure {
    fn build(ug: &UndirectedGraph, coloring: &EdgeColoring) -> Option<Self> {
        let n = ug.vertex_count();
        let k = coloring.num_colors();
        let mut coords = vec![Vec::with_capacity(k); n];
        let mut sizes = Vec::with_capacity(k);
        for i in 0..k {
            let mut uf = UnionFind::<usize>::new(n);
            for ((u, v), c) in coloring.edges() {
                if c != i {
                    uf.union(u, v);
                }
            }
            let mut id_of_root = vec![usize::MAX; n];
            let mut count = 0;
            for (v, c) in coords.iter_mut().enumerate() {
                let r = uf.find(v);
                if id_of_root[r] == usize::MAX {
                    id_of_root[r] = count;
                    count += 1;
                }
                c.push(id_of_root[r]);
            }
            sizes.push(count);
        }
        if sizes.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s)) != Some(n) {
            return None;
        }
        let mut vertex_of = vec![usize::MAX; n];
        for (v, c) in coords.iter().enumerate() {
            let idx = encode(c, &sizes);
            if vertex_of[idx] != usize::MAX {
                return None;
            }
            vertex_of[idx] = v;
        }
        Some(ProductStructure { sizes, coords, vertex_of })
    }

    fn vertex_with(&self, base: Vertex, j: usize, value: usize) -> Vertex {
        let mut c = self.coords[base].clone();
        c[j] = value;
        self.vertex_of[encode(&c, &self.sizes)]
    }

    /// Factor `i` read off the `i`-layer through vertex 0.
    fn factor(&self, g: &Digraph, i: usize) -> Digraph {
        let layer: Vec<Vertex> = (0..self.sizes[i]).map(|t| self.vertex_with(0, i, t)).collect();
        g.induced_subgraph(&layer)
    }

    /// The factors if `g` is exactly their Cartesian product under these
    /// coordinates.
    fn verify(&self, g: &Digraph, coloring: &EdgeColoring) -> Option<Vec<Digraph>> {
        let factors: Vec<Digraph> = (0..self.sizes.len()).map(|i| self.factor(g, i)).collect();
        let n = g.vertex_count();
        let expected: usize = factors.iter().zip(&self.sizes).map(|(f, &s)| f.arc_count() * (n / s)).sum();
        if expected != g.arc_count() {
            return None;
        }
        let ok = g.arcs().all(|(u, v)| {
            let Some(i) = coloring.color_of(u, v) else { return false };
            let (cu, cv) = (&self.coords[u], &self.coords[v]);
            (0..self.sizes.len()).all(|j| (j == i) != (cu[j] == cv[j])) && factors[i].has_arc(cu[i], cv[i])
        });
        ok.then_some(factors)
    }
}

/// Colors whose groups, taken as factors, give an exact Cartesian product
/// of `g`. Only checks; `g`'s shadow must be the graph `coloring` colors.
fn factors_if_product(
    g: &Digraph,
    ug: &UndirectedGraph,
    coloring: &EdgeColoring,
) -> Option<(ProductStructure, Vec<Digraph>)> {
    let structure = ProductStructure::build(ug, coloring)?;
    let factors = structure.verify(g, coloring)?;
    Some((structure, factors))
}

/// Coarsens `coloring` to the finest coloring coarser than it that is a
/// product coloring of `g`, by splitting off minimal color sets.
fn coarsen_by_subsets(g: &Digraph, ug: &UndirectedGraph, coloring: &EdgeColoring) -> Option<EdgeColoring> {
    let k = coloring.num_colors();
    let mut remaining: Vec<usize> = (0..k).collect();
    let mut group_of = vec![usize::MAX; k];
    let mut groups = 0;
    let mut size = 1;
    while size < remaining.len() {
        let found = remaining.iter().copied().combinations(size).find(|subset| {
            let split = coloring.merged(|c| usize::from(!subset.contains(&c)));
            factors_if_product(g, ug, &split).is_some()
        });
        match found {
            Some(subset) => {
                for &c in &subset {
                    group_of[c] = groups;
                }
                groups += 1;
                remaining.retain(|c| !subset.contains(c));
            }
            None => size += 1,
        }
    }
    for &c in &remaining {
        group_of[c] = groups;
    }
    let coarse = coloring.merged(|c| group_of[c]);
    factors_if_product(g, ug, &coarse).map(|_| coarse)
}

/// The prime factor coloring of a connected undirected graph.
pub fn undirected_cartesian_pfd(ug: &UndirectedGraph) -> Result<EdgeColoring> {
    if !ug.is_connected() {
        return Err(Error::NotConnected);
    }
    let closure = square_closure(ug);
    let sym = ug.to_symmetric_digraph();
    if factors_if_product(&sym, ug, &closure).is_some() {
        return Ok(closure);
    }
    coarsen_by_subsets(&sym, ug, &closure)
        .ok_or_else(|| Error::Internal("no product coloring coarser than the square closure".into()))
}

fn square_closure(ug: &UndirectedGraph) -> EdgeColoring {
    let edges: Vec<(Vertex, Vertex)> = ug.edges().collect();
    let id = |u: Vertex, v: Vertex| edges.binary_search(&(u.min(v), u.max(v))).expect("edge exists");
    let mut uf = UnionFind::<usize>::new(edges.len());
    for v in 0..ug.vertex_count() {
        let nbrs = ug.neighbors(v);
        for (ia, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[ia + 1..] {
                let (va, vb) = (id(v, a), id(v, b));
                if ug.has_edge(a, b) {
                    uf.union(va, vb);
                    continue;
                }
                let mut squares = 0;
                for &w in ug.neighbors(a) {
                    if w != v && !ug.has_edge(v, w) && ug.has_edge(w, b) {
                        squares += 1;
                        uf.union(va, id(w, b));
                        uf.union(vb, id(w, a));
                    }
                }
                if squares != 1 {
                    uf.union(va, vb);
                }
            }
        }
    }
    EdgeColoring::new(edges.iter().enumerate().map(|(i, &e)| (e, uf.find(i))))
}

/// Pairs `(i, j)` such that two `i`-layers joined by a `j`-edge carry
/// different arcs under the coordinate correspondence. Sorted.
pub fn direction_conflicts(g: &Digraph, coloring: &EdgeColoring) -> Result<Vec<(usize, usize)>> {
    let ug = g.underlying_undirected();
    if !coloring.covers_exactly(&ug) {
        return Err(Error::InvalidColoring("coloring does not match the underlying graph".into()));
    }
    let structure = ProductStructure::build(&ug, coloring)
        .filter(|s| s.verify(&ug.to_symmetric_digraph(), coloring).is_some())
        .ok_or_else(|| Error::InvalidColoring("coloring is not a Cartesian product coloring".into()))?;
    let mut conflicts = BTreeSet::new();
    for ((u, v), j) in coloring.edges() {
        for (p, q) in [(u, v), (v, u)] {
            for &w in ug.neighbors(p) {
                let i = coloring.color_of(p, w).expect("edge is colored");
                if i == j || conflicts.contains(&(i, j)) {
                    continue;
                }
                let w2 = structure.vertex_with(w, j, structure.coords[q][j]);
                if g.has_arc(p, w) != g.has_arc(q, w2) || g.has_arc(w, p) != g.has_arc(w2, q) {
                    conflicts.insert((i, j));
                }
            }
        }
    }
    Ok(conflicts.into_iter().collect())
}

/// The prime factorization of a connected digraph with respect to `□`.
pub fn cartesian_pfd(g: &Digraph) -> Result<Factorization> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if g.vertex_count() == 1 {
        return Ok(Factorization::trivial(g));
    }
    let ug = g.underlying_undirected();
    let mut coloring = undirected_cartesian_pfd(&ug)?;
    loop {
        let conflicts = direction_conflicts(g, &coloring)?;
        if conflicts.is_empty() {
            break;
        }
        let mut uf = UnionFind::<usize>::new(coloring.num_colors());
        for (i, j) in conflicts {
            uf.union(i, j);
        }
        coloring = coloring.merged(|c| uf.find(c));
    }
    let (structure, factors) = match factors_if_product(g, &ug, &coloring) {
        Some(found) => found,
        None => coarsen_by_subsets(g, &ug, &coloring)
            .and_then(|c| factors_if_product(g, &ug, &c))
            .ok_or_else(|| Error::Internal("conflict-free coloring does not reconstruct".into()))?,
    };
    Ok(Factorization { factors, coords: structure.coords })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_form;
    use crate::factorization::ProductKind;
    use crate::products::cartesian_product;

    fn sym(n: usize, edges: &[(usize, usize)]) -> UndirectedGraph {
        UndirectedGraph::new(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn four_cycle_has_two_colors() {
        let c4 = sym(4, &[(0, 1), (1, 3), (3, 2), (2, 0)]);
        let col = undirected_cartesian_pfd(&c4).unwrap();
        assert_eq!(col.num_colors(), 2);
        assert_eq!(col.color_of(0, 1), col.color_of(2, 3));
        assert_eq!(col.color_of(0, 2), col.color_of(1, 3));
        assert_ne!(col.color_of(0, 1), col.color_of(0, 2));
    }

    #[test]
    fn triangle_is_prime() {
        let tri = sym(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(undirected_cartesian_pfd(&tri).unwrap().num_colors(), 1);
    }

    #[test]
    fn cube_has_three_colors() {
        let k2 = Digraph::complete(2);
        let q3 = cartesian_product(&[k2.clone(), k2.clone(), k2]).unwrap().into_graph();
        let col = undirected_cartesian_pfd(&q3.underlying_undirected()).unwrap();
        assert_eq!(col.num_colors(), 3);
    }

    #[test]
    fn k23_is_prime() {
        let k23 = sym(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]);
        assert_eq!(undirected_cartesian_pfd(&k23).unwrap().num_colors(), 1);
    }

    #[test]
    fn disconnected_rejected() {
        assert_eq!(undirected_cartesian_pfd(&sym(3, &[(0, 1)])), Err(Error::NotConnected));
        assert_eq!(cartesian_pfd(&Digraph::empty(2)), Err(Error::NotConnected));
    }

    // (a, b) -> 2a + b; the two arcs changing the first coordinate point
    // opposite ways
    fn conflicted_square() -> Digraph {
        Digraph::new(4, [(0, 2), (3, 1), (0, 1), (2, 3)]).unwrap()
    }

    #[test]
    fn conflict_in_square() {
        let g = conflicted_square();
        let col = undirected_cartesian_pfd(&g.underlying_undirected()).unwrap();
        let horizontal = col.color_of(0, 2).unwrap();
        let vertical = col.color_of(0, 1).unwrap();
        assert_eq!(direction_conflicts(&g, &col).unwrap(), vec![(horizontal, vertical)]);
        let f = cartesian_pfd(&g).unwrap();
        assert!(f.is_prime());
        assert!(f.reconstructs(&g, ProductKind::Cartesian));
    }

    #[test]
    fn genuine_product_has_no_conflict() {
        let p2 = Digraph::directed_path(2);
        let c3 = Digraph::directed_cycle(3);
        let g = cartesian_product(&[p2.clone(), c3.clone()]).unwrap().into_graph();
        let col = undirected_cartesian_pfd(&g.underlying_undirected()).unwrap();
        assert!(direction_conflicts(&g, &col).unwrap().is_empty());
        let single = EdgeColoring::single_color(&g.underlying_undirected());
        assert!(direction_conflicts(&g, &single).unwrap().is_empty());

        let f = cartesian_pfd(&g.relabel(&[4, 0, 5, 2, 1, 3])).unwrap();
        let mut expected = vec![canonical_form(&p2).unwrap(), canonical_form(&c3).unwrap()];
        expected.sort();
        assert_eq!(f.canonical_factors().unwrap(), expected);
    }

    #[test]
    fn invalid_coloring_rejected() {
        let g = conflicted_square();
        let wrong = EdgeColoring::new([((0, 1), 0), ((0, 2), 1), ((1, 3), 0), ((2, 3), 1)]);
        assert!(matches!(direction_conflicts(&g, &wrong), Err(Error::InvalidColoring(_))));
        let partial = EdgeColoring::new([((0, 1), 0)]);
        assert!(matches!(direction_conflicts(&g, &partial), Err(Error::InvalidColoring(_))));
    }

    #[test]
    fn unit_graph() {
        let f = cartesian_pfd(&Digraph::empty(1)).unwrap();
        assert_eq!(f.factors, vec![Digraph::empty(1)]);
    }
}
