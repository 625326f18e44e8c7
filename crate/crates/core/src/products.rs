//! Strong and Cartesian products with coordinatized vertices.
//!
//! Product vertices are numbered in row-major order of their coordinate
//! tuples, the first factor being the most significant digit.

use crate::digraph::{Arc, Digraph, Vertex};
use crate::error::{Error, Result};

/// Row-major index of `digits` under `radices`.
pub(crate) fn encode(digits: &[usize], radices: &[usize]) -> usize {
    digits.iter().zip(radices).fold(0, |acc, (&d, &r)| {
        debug_assert!(d < r);
        acc * r + d
    })
}

/// Inverse of [`encode`].
pub(crate) fn decode(mut index: usize, radices: &[usize]) -> Vec<usize> {
    let mut digits = vec![0; radices.len()];
    for (d, &r) in digits.iter_mut().zip(radices).rev() {
        *d = index % r;
        index /= r;
    }
    digits
}

/// A digraph whose vertices carry coordinate tuples over a list of factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordGraph {
    graph: Digraph,
    factors: Vec<Digraph>,
    coords: Vec<Vec<Vertex>>,
}

/// How a product arc sits relative to the factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeClass {
    /// The endpoints differ in exactly this coordinate.
    Cartesian(usize),
    NonCartesian,
}

impl CoordGraph {
    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn into_graph(self) -> Digraph {
        self.graph
    }

    pub fn factors(&self) -> &[Digraph] {
        &self.factors
    }

    pub fn coords(&self, v: Vertex) -> &[Vertex] {
        &self.coords[v]
    }

    pub fn all_coords(&self) -> &[Vec<Vertex>] {
        &self.coords
    }

    pub fn factor_sizes(&self) -> Vec<usize> {
        self.factors.iter().map(Digraph::vertex_count).collect()
    }

    /// The vertex with the given coordinates, if they are in range.
    pub fn vertex_at(&self, coords: &[Vertex]) -> Option<Vertex> {
        let sizes = self.factor_sizes();
        (coords.len() == sizes.len() && coords.iter().zip(&sizes).all(|(c, s)| c < s)).then(|| encode(coords, &sizes))
    }

    /// Vertices of the `j`-layer through `x`, ordered by their `j`-th coordinate.
    pub fn layer_vertices(&self, j: usize, x: Vertex) -> Result<Vec<Vertex>> {
        self.check_layer_args(j, x)?;
        let mut c = self.coords[x].clone();
        Ok((0..self.factors[j].vertex_count())
            .map(|t| {
                c[j] = t;
                self.vertex_at(&c).expect("coordinates in range")
            })
            .collect())
    }

    /// The `j`-layer through `x`, relabeled by coordinate `j`. It is
    /// isomorphic to factor `j`.
    pub fn layer(&self, j: usize, x: Vertex) -> Result<Digraph> {
        Ok(self.graph.induced_subgraph(&self.layer_vertices(j, x)?))
    }

    fn check_layer_args(&self, j: usize, x: Vertex) -> Result<()> {
        if j >= self.factors.len() {
            return Err(Error::IndexOutOfRange { index: j, len: self.factors.len() });
        }
        if x >= self.graph.vertex_count() {
            return Err(Error::VertexOutOfRange { vertex: x, n: self.graph.vertex_count() });
        }
        Ok(())
    }

    pub fn classify_edge(&self, (u, v): Arc) -> Result<EdgeClass> {
        if !self.graph.has_arc(u, v) {
            return Err(Error::ArcNotPresent(u, v));
        }
        let mut differing = (0..self.factors.len()).filter(|&j| self.coords[u][j] != self.coords[v][j]);
        Ok(match (differing.next(), differing.next()) {
            (Some(j), None) => EdgeClass::Cartesian(j),
            _ => EdgeClass::NonCartesian,
        })
    }
}

fn grid(factors: &[Digraph]) -> Result<(Vec<usize>, usize)> {
    if factors.is_empty() {
        return Err(Error::EmptyFactorList);
    }
    let sizes: Vec<usize> = factors.iter().map(Digraph::vertex_count).collect();
    Ok((sizes.clone(), sizes.iter().product()))
}

/// `⊠ factors`: `x -> y` iff `x != y` and every coordinate of `y` is equal
/// to, or an out-neighbor of, the matching coordinate of `x`.
pub fn strong_product(factors: &[Digraph]) -> Result<CoordGraph> {
    let (sizes, n) = grid(factors)?;
    let closed_out: Vec<Vec<Vec<Vertex>>> = factors.iter().map(Digraph::closed_out_lists).collect();
    let coords: Vec<Vec<Vertex>> = (0..n).map(|v| decode(v, &sizes)).collect();
    let out_adj = coords
        .iter()
        .enumerate()
        .map(|(x, cx)| {
            // N⁺[(x1..xk)] = N⁺[x1] × ... × N⁺[xk]
            let mut targets = vec![0usize];
            for (j, &c) in cx.iter().enumerate() {
                let size = sizes[j];
                targets = targets.iter().flat_map(|&t| closed_out[j][c].iter().map(move |&w| t * size + w)).collect();
            }
            targets.retain(|&y| y != x);
            targets
        })
        .collect();
    Ok(CoordGraph { graph: Digraph::from_out_adjacency(out_adj), factors: factors.to_vec(), coords })
}

/// `□ factors`: `x -> y` iff they differ in exactly one coordinate, which
/// moves along an arc of its factor.
pub fn cartesian_product(factors: &[Digraph]) -> Result<CoordGraph> {
    let (sizes, n) = grid(factors)?;
    let coords: Vec<Vec<Vertex>> = (0..n).map(|v| decode(v, &sizes)).collect();
    let out_adj = coords
        .iter()
        .map(|cx| {
            let mut targets = Vec::new();
            let mut cy = cx.clone();
            for (j, f) in factors.iter().enumerate() {
                for &w in f.successors(cx[j]) {
                    cy[j] = w;
                    targets.push(encode(&cy, &sizes));
                }
                cy[j] = cx[j];
            }
            targets
        })
        .collect();
    Ok(CoordGraph { graph: Digraph::from_out_adjacency(out_adj), factors: factors.to_vec(), coords })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;

    fn p2() -> Digraph {
        Digraph::directed_path(2)
    }

    #[test]
    fn unit_factor_is_neutral() {
        let g = Digraph::directed_cycle(3);
        let s = strong_product(&[Digraph::empty(1), g.clone()]).unwrap();
        assert_eq!(s.graph(), &g);
        assert_eq!(s.coords(2), &[0, 2]);
        let c = cartesian_product(&[Digraph::empty(1), g.clone()]).unwrap();
        assert_eq!(c.graph(), &g);
    }

    #[test]
    fn strong_square_of_path() {
        let s = strong_product(&[p2(), p2()]).unwrap();
        let g = s.graph();
        assert_eq!(g.vertex_count(), 4);
        // (a,b) has id 2a+b
        let expected = vec![(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)];
        assert_eq!(g.arcs().collect::<Vec<_>>(), expected);
        assert_eq!(g.out_nbhd(0).unwrap().as_slice(), &[0, 1, 2, 3]);
    }

    #[test]
    fn cartesian_square_of_path() {
        let c = cartesian_product(&[p2(), p2()]).unwrap();
        assert_eq!(c.graph().arcs().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        let pc = cartesian_product(&[p2(), Digraph::directed_cycle(3)]).unwrap();
        assert_eq!(pc.graph().vertex_count(), 6);
        assert_eq!(pc.graph().arc_count(), 9);
    }

    #[test]
    fn layers() {
        let s = strong_product(&[p2(), p2()]).unwrap();
        let x = s.vertex_at(&[0, 1]).unwrap();
        assert_eq!(s.layer(0, x).unwrap(), p2());
        // layer through x equals layer through any vertex of it
        for y in s.layer_vertices(0, x).unwrap() {
            assert_eq!(s.layer_vertices(0, y).unwrap(), s.layer_vertices(0, x).unwrap());
        }
        let z = s.vertex_at(&[0, 0]).unwrap();
        let a = s.layer_vertices(0, x).unwrap();
        let b = s.layer_vertices(0, z).unwrap();
        assert!(a.iter().all(|v| !b.contains(v)));
        assert!(matches!(s.layer(2, 0), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn edge_classes() {
        let s = strong_product(&[p2(), p2()]).unwrap();
        assert_eq!(s.classify_edge((0, 2)).unwrap(), EdgeClass::Cartesian(0));
        assert_eq!(s.classify_edge((0, 3)).unwrap(), EdgeClass::NonCartesian);
        assert_eq!(s.classify_edge((3, 0)), Err(Error::ArcNotPresent(3, 0)));
        let c = cartesian_product(&[p2(), Digraph::directed_cycle(3)]).unwrap();
        for arc in c.graph().arcs() {
            assert!(matches!(c.classify_edge(arc).unwrap(), EdgeClass::Cartesian(_)));
        }
    }

    #[test]
    fn empty_factor_list() {
        assert_eq!(strong_product(&[]), Err(Error::EmptyFactorList));
        assert_eq!(cartesian_product(&[]), Err(Error::EmptyFactorList));
    }

    #[test]
    fn commutative_up_to_isomorphism() {
        let a = p2();
        let b = Digraph::directed_cycle(3);
        let ab = strong_product(&[a.clone(), b.clone()]).unwrap();
        let ba = strong_product(&[b, a]).unwrap();
        assert!(is_isomorphic(ab.graph(), ba.graph()).unwrap());
    }

    #[test]
    fn radix_round_trip() {
        let radices = [3, 1, 4];
        for i in 0..12 {
            assert_eq!(encode(&decode(i, &radices), &radices), i);
        }
    }
}
