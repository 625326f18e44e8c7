//! Prime factorization with respect to the strong product.
//!
//! For a thin digraph the Cartesian factors of its skeleton are grouped:
//! index sets are tried by increasing size and a set is accepted once the
//! layers it spans split the graph as an exact strong product. An arbitrary
//! connected digraph first loses its largest complete factor `K_l`; the
//! rest is quotiented by `S`, the thin quotient is factored, and quotient
//! factors are grouped again, this time by whether the class-size table
//! splits multiplicatively.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::cartesian::cartesian_pfd;
use crate::digraph::{Digraph, Vertex};
use crate::error::{Error, Result};
use crate::factorization::{Factorization, ProductKind};
use crate::products::{decode, encode, strong_product};
use crate::relations::{block_offsets, blowup_unchecked, gcd, is_thin, quotient};
use crate::skeleton::cartesian_skeleton;

/// Row-major projection of each vertex onto the coordinates in `dims`.
fn project(coords: &[Vec<Vertex>], sizes: &[usize], dims: &[usize]) -> (Vec<usize>, usize) {
    let radices: Vec<usize> = dims.iter().map(|&d| sizes[d]).collect();
    let ids = coords.iter().map(|c| encode(&dims.iter().map(|&d| c[d]).collect::<Vec<_>>(), &radices)).collect();
    (ids, radices.iter().product())
}

fn complement(dims: &[usize], k: usize) -> Vec<usize> {
    (0..k).filter(|d| !dims.contains(d)).collect()
}

/// Splits `g` along the coordinate set `group` of a Cartesian factorization
/// of its skeleton. Returns the layers `(A, B)` through vertex 0 if `g` is
/// exactly `A ⊠ B` under the projected coordinates.
pub fn verify_strong_grouping(
    g: &Digraph,
    skeleton_pfd: &Factorization,
    group: &[usize],
) -> Option<(Digraph, Digraph)> {
    let sizes = skeleton_pfd.factor_sizes();
    let k = sizes.len();
    if group.is_empty() || group.iter().any(|&d| d >= k) || !group.iter().all_unique() {
        return None;
    }
    let mut dims = group.to_vec();
    dims.sort_unstable();
    let (a_id, a_n) = project(&skeleton_pfd.coords, &sizes, &dims);
    let (b_id, b_n) = project(&skeleton_pfd.coords, &sizes, &complement(&dims, k));
    let n = g.vertex_count();
    if a_n * b_n != n || skeleton_pfd.coords.len() != n {
        return None;
    }
    let mut vertex_of = vec![usize::MAX; n];
    for v in 0..n {
        let slot = &mut vertex_of[a_id[v] * b_n + b_id[v]];
        if *slot != usize::MAX {
            return None;
        }
        *slot = v;
    }
    let a_layer: Vec<Vertex> = (0..a_n).map(|a| vertex_of[a * b_n + b_id[0]]).collect();
    let b_layer: Vec<Vertex> = (0..b_n).map(|b| vertex_of[a_id[0] * b_n + b]).collect();
    let a = g.induced_subgraph(&a_layer);
    let b = g.induced_subgraph(&b_layer);
    let product_arcs = (a_n + a.arc_count()) * (b_n + b.arc_count()) - n;
    let fits = product_arcs == g.arc_count()
        && g.arcs().all(|(u, v)| {
            (a_id[u] == a_id[v] || a.has_arc(a_id[u], a_id[v])) && (b_id[u] == b_id[v] || b.has_arc(b_id[u], b_id[v]))
        });
    fits.then_some((a, b))
}

/// Prime factors of a connected thin digraph.
pub fn strong_pfd_thin(g: &Digraph) -> Result<Factorization> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if !is_thin(g) {
        return Err(Error::NotThin);
    }
    if g.vertex_count() == 1 {
        return Ok(Factorization::trivial(g));
    }
    let skeleton = cartesian_skeleton(g)?.skeleton;
    let cart = cartesian_pfd(&skeleton)?;
    let k = cart.factors.len();
    if k == 1 {
        return Ok(Factorization::trivial(g));
    }

    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut remaining: Vec<usize> = (0..k).collect();
    let mut size = 1;
    while size < remaining.len() {
        let found = remaining
            .iter()
            .copied()
            .combinations(size)
            .find(|group| verify_strong_grouping(g, &cart, group).is_some());
        match found {
            Some(group) => {
                remaining.retain(|d| !group.contains(d));
                groups.push(group);
            }
            None => size += 1,
        }
    }
    if !remaining.is_empty() {
        groups.push(remaining);
    }

    let sizes = cart.factor_sizes();
    let mut factors = Vec::with_capacity(groups.len());
    let mut columns = Vec::with_capacity(groups.len());
    for group in &groups {
        let (ids, _) = project(&cart.coords, &sizes, group);
        let (rest, _) = project(&cart.coords, &sizes, &complement(group, k));
        let mut layer: Vec<(usize, Vertex)> =
            g.vertices().filter(|&v| rest[v] == rest[0]).map(|v| (ids[v], v)).collect();
        layer.sort_unstable();
        factors.push(g.induced_subgraph(&layer.iter().map(|&(_, v)| v).collect::<Vec<_>>()));
        columns.push(ids);
    }
    let coords = g.vertices().map(|v| columns.iter().map(|col| col[v]).collect()).collect();
    checked(g, Factorization { factors, coords })
}

fn checked(g: &Digraph, f: Factorization) -> Result<Factorization> {
    if f.reconstructs(g, ProductKind::Strong) {
        Ok(f)
    } else {
        Err(Error::Internal("strong factorization does not reconstruct its input".into()))
    }
}

/// Class sizes `D(x)` over the coordinate grid of a factored quotient,
/// stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityTable {
    pub sizes: Vec<usize>,
    pub values: Vec<usize>,
}

impl MultiplicityTable {
    pub fn new(sizes: Vec<usize>, values: Vec<usize>) -> Self {
        assert_eq!(sizes.iter().product::<usize>(), values.len(), "table does not fill its grid");
        MultiplicityTable { sizes, values }
    }

    pub fn get(&self, coords: &[usize]) -> usize {
        self.values[encode(coords, &self.sizes)]
    }

    /// Map view keyed by coordinate tuple.
    pub fn to_map(&self) -> BTreeMap<Vec<usize>, usize> {
        self.values.iter().enumerate().map(|(i, &d)| (decode(i, &self.sizes), d)).collect()
    }
}

/// `D_J(x_J) = gcd { D(x) : x agrees with x_J on J }`, as a table over the
/// dimensions in `dims` (kept in the given order).
pub fn gcd_multiplicity(table: &MultiplicityTable, dims: &[usize]) -> MultiplicityTable {
    let radices: Vec<usize> = dims.iter().map(|&d| table.sizes[d]).collect();
    let mut values = vec![0usize; radices.iter().product()];
    for (i, &d) in table.values.iter().enumerate() {
        let x = decode(i, &table.sizes);
        let j = encode(&dims.iter().map(|&d| x[d]).collect::<Vec<_>>(), &radices);
        values[j] = gcd(values[j], d);
    }
    MultiplicityTable { sizes: radices, values }
}

/// Prime divisors of `l` with multiplicity, ascending.
fn prime_divisors(mut l: usize) -> Vec<usize> {
    let mut primes = Vec::new();
    let mut p = 2;
    while p * p <= l {
        while l.is_multiple_of(p) {
            primes.push(p);
            l /= p;
        }
        p += 1;
    }
    if l > 1 {
        primes.push(l);
    }
    primes
}

/// One accepted group of quotient factors and its copy counts.
struct Group {
    /// Indices into the quotient factorization.
    dims: Vec<usize>,
    mult: MultiplicityTable,
}

/// Prime factors of a connected digraph.
pub fn strong_pfd(g: &Digraph) -> Result<Factorization> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let q = quotient(g);
    let l = q.mult.iter().copied().fold(0, gcd);
    let reduced: Vec<usize> = q.mult.iter().map(|m| m / l).collect();
    let complete_primes = prime_divisors(l);

    let h = &q.quotient;
    let hf = strong_pfd_thin(h)?;
    let k = hf.factors.len();
    let hsizes = hf.factor_sizes();
    let mut table_values = vec![0; h.vertex_count()];
    for (c, &d) in reduced.iter().enumerate() {
        table_values[encode(&hf.coords[c], &hsizes)] = d;
    }

    let mut groups: Vec<Group> = Vec::new();
    if h.vertex_count() > 1 {
        // `rest` lists the quotient factor indices still ungrouped, in the
        // same order as the dimensions of `table`
        let mut rest: Vec<usize> = (0..k).collect();
        let mut table = MultiplicityTable::new(hsizes.clone(), table_values);
        let mut size = 1;
        while size < rest.len() {
            let found = (0..rest.len()).combinations(size).find_map(|pos| {
                let others = complement(&pos, rest.len());
                let dj = gcd_multiplicity(&table, &pos);
                let dr = gcd_multiplicity(&table, &others);
                let splits = table.values.iter().enumerate().all(|(i, &d)| {
                    let x = decode(i, &table.sizes);
                    let pick = |dims: &[usize]| dims.iter().map(|&p| x[p]).collect::<Vec<_>>();
                    d == dj.get(&pick(&pos)) * dr.get(&pick(&others))
                });
                splits.then_some((pos, others, dj, dr))
            });
            match found {
                Some((pos, others, dj, dr)) => {
                    groups.push(Group { dims: pos.iter().map(|&p| rest[p]).collect(), mult: dj });
                    rest = others.iter().map(|&p| rest[p]).collect();
                    table = dr;
                }
                None => size += 1,
            }
        }
        groups.push(Group { dims: rest, mult: table });
    }

    let mut factors: Vec<Digraph> = Vec::new();
    for group in &groups {
        let parts: Vec<Digraph> = group.dims.iter().map(|&d| hf.factors[d].clone()).collect();
        let base = strong_product(&parts)?.into_graph();
        factors.push(blowup_unchecked(&base, &group.mult.values));
    }
    factors.extend(complete_primes.iter().map(|&p| Digraph::complete(p)));
    if factors.is_empty() {
        return Ok(Factorization::trivial(g));
    }

    // coordinates: the members of S-class c are split into G' copies and
    // K_l positions, then each further by mixed radix
    let offsets: Vec<Vec<usize>> = groups.iter().map(|grp| block_offsets(&grp.mult.values)).collect();
    let mut coords = vec![Vec::new(); g.vertex_count()];
    for (c, members) in q.partition.classes.iter().enumerate() {
        let x = &hf.coords[c];
        let class_ids: Vec<usize> = groups
            .iter()
            .map(|grp| {
                let radices: Vec<usize> = grp.dims.iter().map(|&d| hsizes[d]).collect();
                encode(&grp.dims.iter().map(|&d| x[d]).collect::<Vec<_>>(), &radices)
            })
            .collect();
        let copy_radices: Vec<usize> = groups.iter().zip(&class_ids).map(|(grp, &a)| grp.mult.values[a]).collect();
        for (t, &v) in members.iter().enumerate() {
            let copies = decode(t / l, &copy_radices);
            let mut coord: Vec<usize> =
                class_ids.iter().zip(&copies).zip(&offsets).map(|((&a, &r), off)| off[a] + r).collect();
            coord.extend(decode(t % l, &complete_primes));
            coords[v] = coord;
        }
    }
    checked(g, Factorization { factors, coords })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::{canonical_form, CanonicalForm};
    use crate::relations::blowup;

    fn forms(gs: &[Digraph]) -> Vec<CanonicalForm> {
        let mut f: Vec<CanonicalForm> = gs.iter().map(|g| canonical_form(g).unwrap()).collect();
        f.sort();
        f
    }

    fn p2() -> Digraph {
        Digraph::directed_path(2)
    }

    #[test]
    fn gcd_table_examples() {
        // D(0,0)=1, D(0,1)=3, D(1,0)=2, D(1,1)=6 in row-major order
        let t = MultiplicityTable::new(vec![2, 2], vec![1, 3, 2, 6]);
        assert_eq!(gcd_multiplicity(&t, &[0]).values, vec![1, 2]);
        assert_eq!(gcd_multiplicity(&t, &[1]).values, vec![1, 3]);
        let ones = MultiplicityTable::new(vec![2, 3], vec![1; 6]);
        assert_eq!(gcd_multiplicity(&ones, &[1]).values, vec![1; 3]);
        assert_eq!(gcd_multiplicity(&ones, &[0]).values, vec![1; 2]);
        assert_eq!(t.to_map()[&vec![1, 0]], 2);
    }

    #[test]
    fn prime_divisor_lists() {
        assert_eq!(prime_divisors(1), Vec::<usize>::new());
        assert_eq!(prime_divisors(12), vec![2, 2, 3]);
        assert_eq!(prime_divisors(7), vec![7]);
    }

    #[test]
    fn grouping_on_square() {
        let g = strong_product(&[p2(), p2()]).unwrap().into_graph();
        let skel = cartesian_skeleton(&g).unwrap().skeleton;
        let cart = cartesian_pfd(&skel).unwrap();
        assert_eq!(cart.factors.len(), 2);
        let (a, b) = verify_strong_grouping(&g, &cart, &[0]).unwrap();
        assert_eq!((a, b), (p2(), p2()));
        assert!(verify_strong_grouping(&g, &cart, &[]).is_none());
    }

    #[test]
    fn grouping_on_prime_cycle() {
        let c3 = Digraph::directed_cycle(3);
        let cart = cartesian_pfd(&cartesian_skeleton(&c3).unwrap().skeleton).unwrap();
        let (a, b) = verify_strong_grouping(&c3, &cart, &[0]).unwrap();
        assert_eq!(a, c3);
        assert_eq!(b, Digraph::empty(1));
    }

    #[test]
    fn thin_products_round_trip() {
        let c3 = Digraph::directed_cycle(3);
        for parts in [vec![p2(), p2()], vec![p2(), c3.clone()]] {
            let g = strong_product(&parts).unwrap().into_graph();
            let g = g.relabel(&(0..g.vertex_count()).rev().collect::<Vec<_>>());
            let f = strong_pfd_thin(&g).unwrap();
            assert_eq!(f.canonical_factors().unwrap(), forms(&parts));
            assert!(f.reconstructs(&g, ProductKind::Strong));
        }
        assert!(strong_pfd_thin(&c3).unwrap().is_prime());
        assert_eq!(strong_pfd_thin(&Digraph::complete(2)), Err(Error::NotThin));
    }

    #[test]
    fn complete_factor_is_split_off() {
        let g = strong_product(&[p2(), Digraph::complete(2)]).unwrap().into_graph();
        let f = strong_pfd(&g).unwrap();
        assert_eq!(f.canonical_factors().unwrap(), forms(&[p2(), Digraph::complete(2)]));
        let k6 = strong_pfd(&Digraph::complete(6)).unwrap();
        assert_eq!(k6.canonical_factors().unwrap(), forms(&[Digraph::complete(2), Digraph::complete(3)]));
        assert_eq!(strong_pfd(&Digraph::empty(1)).unwrap().factors, vec![Digraph::empty(1)]);
    }

    #[test]
    fn blown_up_factors_are_recovered() {
        let a = blowup(&p2(), &[1, 2]).unwrap();
        let b = blowup(&p2(), &[1, 3]).unwrap();
        let g = strong_product(&[a.clone(), b.clone()]).unwrap().into_graph();
        let f = strong_pfd(&g).unwrap();
        assert_eq!(f.canonical_factors().unwrap(), forms(&[a, b]));
    }

    #[test]
    fn quotient_product_can_hide_a_prime() {
        let h = strong_product(&[p2(), p2()]).unwrap().into_graph();
        // D(0,0)=1, D(0,1)=2, D(1,0)=2, D(1,1)=2
        let g = blowup(&h, &[1, 2, 2, 2]).unwrap();
        let f = strong_pfd(&g).unwrap();
        assert!(f.is_prime());
        assert_eq!(strong_pfd(&h).unwrap().factors.len(), 2);
    }

    #[test]
    fn rejects_disconnected() {
        assert_eq!(strong_pfd(&Digraph::empty(3)), Err(Error::NotConnected));
    }
}
