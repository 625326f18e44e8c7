//! Loop-free digraphs over dense vertex ids.
//!
//! A [`Digraph`] stores both adjacency directions as sorted lists, so closed
//! neighborhoods, subset tests and intersections run in time linear in the
//! neighborhood sizes.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// A vertex id. Vertices of a graph on `n` vertices are `0..n`.
pub type Vertex = usize;

/// An ordered pair `(u, v)` standing for the arc `u -> v`.
pub type Arc = (Vertex, Vertex);

/// A strictly increasing list of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    /// Builds a set from arbitrary ids; sorts and deduplicates.
    pub fn new(mut ids: Vec<Vertex>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        VertexSet(ids)
    }

    /// Wraps a list that is already strictly increasing.
    pub(crate) fn from_sorted(ids: Vec<Vertex>) -> Self {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        VertexSet(ids)
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(sorted::intersection(&self.0, &other.0))
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet(sorted::union(&self.0, &other.0))
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        sorted::is_subset(&self.0, &other.0)
    }

    /// `self ⊂ other` with `self != other`.
    pub fn is_proper_subset(&self, other: &VertexSet) -> bool {
        sorted::is_proper_subset(&self.0, &other.0)
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

/// Merge-based set operations on strictly increasing slices.
pub(crate) mod sorted {
    use std::cmp::Ordering;

    pub fn intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
        let mut out = Vec::with_capacity(a.len().min(b.len()));
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    pub fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        out
    }

    pub fn is_subset(a: &[usize], b: &[usize]) -> bool {
        if a.len() > b.len() {
            return false;
        }
        let mut j = 0;
        for &x in a {
            while j < b.len() && b[j] < x {
                j += 1;
            }
            if j == b.len() || b[j] != x {
                return false;
            }
            j += 1;
        }
        true
    }

    pub fn is_proper_subset(a: &[usize], b: &[usize]) -> bool {
        a.len() < b.len() && is_subset(a, b)
    }
}

/// A finite digraph without loops. Immutable after construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    out_adj: Vec<Vec<Vertex>>,
    in_adj: Vec<Vec<Vertex>>,
    arc_count: usize,
}

impl Digraph {
    /// Builds a digraph on `n` vertices. Duplicate arcs are merged.
    pub fn new(n: usize, arcs: impl IntoIterator<Item = Arc>) -> Result<Self> {
        let mut out_adj = vec![Vec::new(); n];
        for (u, v) in arcs {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(Error::LoopArc { vertex: u });
            }
            out_adj[u].push(v);
        }
        Ok(Self::from_out_adjacency(out_adj))
    }

    /// Builds from per-vertex out-neighbor lists that are known to be loop
    /// free and in range.
    pub(crate) fn from_out_adjacency(mut out_adj: Vec<Vec<Vertex>>) -> Self {
        let n = out_adj.len();
        let mut in_adj = vec![Vec::new(); n];
        let mut arc_count = 0;
        for (u, outs) in out_adj.iter_mut().enumerate() {
            outs.sort_unstable();
            outs.dedup();
            arc_count += outs.len();
            for &v in outs.iter() {
                debug_assert!(v != u && v < n);
                in_adj[v].push(u);
            }
        }
        // in-lists come out sorted because `u` is visited in increasing order
        Digraph { out_adj, in_adj, arc_count }
    }

    /// The edgeless digraph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self::from_out_adjacency(vec![Vec::new(); n])
    }

    /// The complete digraph `K_n`: every ordered pair of distinct vertices.
    pub fn complete(n: usize) -> Self {
        Self::from_out_adjacency((0..n).map(|u| (0..n).filter(|&v| v != u).collect()).collect())
    }

    /// The directed path `0 -> 1 -> ... -> n-1`.
    pub fn directed_path(n: usize) -> Self {
        Self::from_out_adjacency((0..n).map(|u| if u + 1 < n { vec![u + 1] } else { vec![] }).collect())
    }

    /// The directed cycle `0 -> 1 -> ... -> n-1 -> 0` (`n >= 3`).
    pub fn directed_cycle(n: usize) -> Self {
        assert!(n >= 3, "directed cycle needs at least 3 vertices");
        Self::from_out_adjacency((0..n).map(|u| vec![(u + 1) % n]).collect())
    }

    pub fn vertex_count(&self) -> usize {
        self.out_adj.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.vertex_count()
    }

    /// All arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        self.out_adj.iter().enumerate().flat_map(|(u, outs)| outs.iter().map(move |&v| (u, v)))
    }

    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        u < self.vertex_count() && self.out_adj[u].binary_search(&v).is_ok()
    }

    /// Open out-neighbors (successors) of `v`, sorted.
    pub fn successors(&self, v: Vertex) -> &[Vertex] {
        &self.out_adj[v]
    }

    /// Open in-neighbors (predecessors) of `v`, sorted.
    pub fn predecessors(&self, v: Vertex) -> &[Vertex] {
        &self.in_adj[v]
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.in_adj[v].len()
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.vertex_count() })
        }
    }

    /// Closed out-neighborhood `N⁺[v]`, which contains `v`.
    pub fn out_nbhd(&self, v: Vertex) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(VertexSet::from_sorted(closed(&self.out_adj[v], v)))
    }

    /// Closed in-neighborhood `N⁻[v]`, which contains `v`.
    pub fn in_nbhd(&self, v: Vertex) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(VertexSet::from_sorted(closed(&self.in_adj[v], v)))
    }

    /// All closed out-neighborhoods, indexed by vertex.
    pub(crate) fn closed_out_lists(&self) -> Vec<Vec<Vertex>> {
        self.vertices().map(|v| closed(&self.out_adj[v], v)).collect()
    }

    /// All closed in-neighborhoods, indexed by vertex.
    pub(crate) fn closed_in_lists(&self) -> Vec<Vec<Vertex>> {
        self.vertices().map(|v| closed(&self.in_adj[v], v)).collect()
    }

    /// Open neighbors in either direction, sorted.
    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        sorted::union(&self.out_adj[v], &self.in_adj[v])
    }

    /// Weak connectivity. The graph on zero vertices is not connected.
    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &w in self.out_adj[u].iter().chain(&self.in_adj[u]) {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == n
    }

    /// The underlying undirected graph `U(G)`.
    pub fn underlying_undirected(&self) -> UndirectedGraph {
        UndirectedGraph { adj: self.vertices().map(|v| self.neighbors(v)).collect() }
    }

    /// Maximum over vertices of out-degree plus in-degree.
    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.out_degree(v) + self.in_degree(v)).max().unwrap_or(0)
    }

    /// Relabels vertex `v` to `perm[v]`. `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[Vertex]) -> Digraph {
        assert_eq!(perm.len(), self.vertex_count(), "permutation length mismatch");
        let mut out_adj = vec![Vec::new(); perm.len()];
        for (u, v) in self.arcs() {
            out_adj[perm[u]].push(perm[v]);
        }
        Digraph::from_out_adjacency(out_adj)
    }

    /// Induced subgraph on `vertices`, with `vertices[i]` becoming vertex `i`.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> Digraph {
        let mut position = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            position[v] = i;
        }
        Digraph::from_out_adjacency(
            vertices
                .iter()
                .map(|&u| {
                    self.out_adj[u].iter().filter_map(|&w| (position[w] != usize::MAX).then_some(position[w])).collect()
                })
                .collect(),
        )
    }

    /// The same vertex set with the arcs removed.
    pub(crate) fn without_arcs(&self, removed: &[Arc]) -> Digraph {
        let mut out_adj = self.out_adj.clone();
        for &(u, v) in removed {
            if let Ok(pos) = out_adj[u].binary_search(&v) {
                out_adj[u].remove(pos);
            }
        }
        Digraph::from_out_adjacency(out_adj)
    }

    /// True if every arc has its reverse.
    pub fn is_symmetric(&self) -> bool {
        self.arcs().all(|(u, v)| self.has_arc(v, u))
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph")
            .field("n", &self.vertex_count())
            .field("arcs", &self.arcs().collect::<Vec<_>>())
            .finish()
    }
}

fn closed(open: &[Vertex], v: Vertex) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(open.len() + 1);
    let pos = open.partition_point(|&w| w < v);
    out.extend_from_slice(&open[..pos]);
    out.push(v);
    out.extend_from_slice(&open[pos..]);
    out
}

/// A simple undirected graph, stored as sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirectedGraph {
    adj: Vec<Vec<Vertex>>,
}

impl UndirectedGraph {
    /// Builds from a list of unordered pairs; loops are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(Error::LoopArc { vertex: u });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(UndirectedGraph { adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// The symmetric digraph with both orientations of every edge.
    pub fn to_symmetric_digraph(&self) -> Digraph {
        Digraph::from_out_adjacency(self.adj.clone())
    }

    pub fn is_connected(&self) -> bool {
        self.to_symmetric_digraph().is_connected()
    }
}
