//! The neighborhood-equality relations `S⁺`, `S⁻` and `S`, thinness, the
//! quotient `G/S`, and its inverse, the blow-up.

use std::collections::HashMap;

use crate::digraph::{Digraph, Vertex};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    /// Equal closed out-neighborhoods.
    SPlus,
    /// Equal closed in-neighborhoods.
    SMinus,
    /// Both.
    S,
}

/// Equivalence classes ordered by smallest member; members sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub classes: Vec<Vec<Vertex>>,
    pub class_of: Vec<usize>,
}

impl Partition {
    fn from_keys<K: std::hash::Hash + Eq>(keys: impl Iterator<Item = K>) -> Self {
        let mut index = HashMap::new();
        let mut classes: Vec<Vec<Vertex>> = Vec::new();
        let class_of = keys
            .enumerate()
            .map(|(v, key)| {
                let c = *index.entry(key).or_insert_with(|| {
                    classes.push(Vec::new());
                    classes.len() - 1
                });
                classes[c].push(v);
                c
            })
            .collect();
        Partition { classes, class_of }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// The class containing `v`.
    pub fn class(&self, v: Vertex) -> &[Vertex] {
        &self.classes[self.class_of[v]]
    }
}

pub fn s_partition(g: &Digraph, relation: Relation) -> Partition {
    match relation {
        Relation::SPlus => Partition::from_keys(g.closed_out_lists().into_iter()),
        Relation::SMinus => Partition::from_keys(g.closed_in_lists().into_iter()),
        Relation::S => Partition::from_keys(g.closed_out_lists().into_iter().zip(g.closed_in_lists())),
    }
}

/// Every `S`-class is a singleton.
pub fn is_thin(g: &Digraph) -> bool {
    s_partition(g, Relation::S).len() == g.vertex_count()
}

/// `G/S` with the size of each class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientWithMultiplicity {
    pub quotient: Digraph,
    pub mult: Vec<usize>,
    pub partition: Partition,
}

pub fn quotient(g: &Digraph) -> QuotientWithMultiplicity {
    let partition = s_partition(g, Relation::S);
    let out_adj = partition
        .classes
        .iter()
        .enumerate()
        .map(|(a, members)| {
            // adjacency between classes is all-or-nothing, so one
            // representative suffices
            g.successors(members[0]).iter().map(|&w| partition.class_of[w]).filter(|&b| b != a).collect()
        })
        .collect();
    QuotientWithMultiplicity {
        quotient: Digraph::from_out_adjacency(out_adj),
        mult: partition.class_sizes(),
        partition,
    }
}

/// Replaces each vertex `a` of the thin digraph `q` by `mult[a]` mutually
/// adjacent copies; copies inherit every arc between distinct classes.
/// Copies of `a` get consecutive ids, classes in order.
pub fn blowup(q: &Digraph, mult: &[usize]) -> Result<Digraph> {
    if mult.len() != q.vertex_count() {
        return Err(Error::MultiplicityLength { expected: q.vertex_count(), found: mult.len() });
    }
    if let Some(class) = mult.iter().position(|&m| m == 0) {
        return Err(Error::ZeroMultiplicity { class });
    }
    if !is_thin(q) {
        return Err(Error::NonThinQuotient);
    }
    Ok(blowup_unchecked(q, mult))
}

pub(crate) fn blowup_unchecked(q: &Digraph, mult: &[usize]) -> Digraph {
    let offsets = block_offsets(mult);
    let mut out_adj = Vec::with_capacity(offsets[mult.len()]);
    for a in q.vertices() {
        let block = offsets[a]..offsets[a + 1];
        for copy in block.clone() {
            let mut outs: Vec<Vertex> = block.clone().filter(|&w| w != copy).collect();
            for &b in q.successors(a) {
                outs.extend(offsets[b]..offsets[b + 1]);
            }
            out_adj.push(outs);
        }
    }
    Digraph::from_out_adjacency(out_adj)
}

/// Prefix sums of `mult`: class `a` occupies `offsets[a]..offsets[a+1]`.
pub(crate) fn block_offsets(mult: &[usize]) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(mult.len() + 1);
    offsets.push(0);
    for &m in mult {
        offsets.push(offsets.last().unwrap() + m);
    }
    offsets
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Splits `g ≅ G' ⊠ K_l` with `l` maximal: `l` is the gcd of the
/// `S`-class sizes and `G'` the blow-up of `G/S` by the sizes divided by `l`.
pub fn extract_complete_factor(g: &Digraph) -> (Digraph, usize) {
    let q = quotient(g);
    let l = q.mult.iter().copied().fold(0, gcd).max(1);
    let reduced: Vec<usize> = q.mult.iter().map(|m| m / l).collect();
    (blowup_unchecked(&q.quotient, &reduced), l)
}
