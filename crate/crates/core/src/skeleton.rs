//! Dispensable arcs and the Cartesian skeleton.
//!
//! For an arc `xy` and a vertex `z`, the `N⁺`-condition with `z` holds when
//! one of
//!
//! 1. `N⁺[x] ⊂ N⁺[z] ⊂ N⁺[y]`
//! 2. `N⁺[y] ⊂ N⁺[z] ⊂ N⁺[x]`
//! 3. `N⁺[x]∩N⁺[y] ⊂ N⁺[x]∩N⁺[z]` and `N⁺[x]∩N⁺[y] ⊂ N⁺[y]∩N⁺[z]`
//!
//! holds, all inclusions proper. The weak `N⁺`-condition is the third item
//! with non-strict inclusions. The `N⁻` variants use closed in-neighborhoods.
//!
//! An arc is dispensable if one of the rules D1 to D5 applies:
//!
//! * D1: some `z` satisfies both the `N⁺`- and the `N⁻`-condition.
//! * D2: some `z₁` satisfies item 3 of `N⁺` and the weak `N⁻`-condition, and
//!   some `z₂` satisfies item 3 of `N⁻` and the weak `N⁺`-condition.
//! * D3: some `z` satisfies the `N⁺`-condition and `N⁻[z]` equals `N⁻[x]` or `N⁻[y]`.
//! * D4: some `z` satisfies the `N⁻`-condition and `N⁺[z]` equals `N⁺[x]` or `N⁺[y]`.
//! * D5: distinct `z₁, z₂ ∉ {x, y}` with `N⁺[z₁] = N⁺[x]`, `N⁻[z₁] = N⁻[y]`,
//!   `N⁻[z₂] = N⁻[x]` and `N⁺[z₂] = N⁺[y]`.
//!
//! Every witness lies in `(N⁺[x]∪N⁻[x]) ∩ (N⁺[y]∪N⁻[y])`, so only those
//! vertices are scanned unless [`SkeletonOptions::exhaustive_z`] is set.
//! The skeleton is the input minus all dispensable arcs, each arc judged
//! against the original graph.

use std::fmt;

use crate::digraph::{sorted, Arc, Digraph, Vertex};
use crate::error::{Error, Result};
use crate::relations::{is_thin, s_partition, Partition, Relation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

/// The first of the three `N±`-condition items that holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NCondition {
    Cond1,
    Cond2,
    Cond3,
    None,
}

/// Which of the three `N±`-condition items hold.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct CondSet {
    pub cond1: bool,
    pub cond2: bool,
    pub cond3: bool,
}

impl CondSet {
    pub fn any(self) -> bool {
        self.cond1 || self.cond2 || self.cond3
    }

    pub fn first(self) -> NCondition {
        if self.cond1 {
            NCondition::Cond1
        } else if self.cond2 {
            NCondition::Cond2
        } else if self.cond3 {
            NCondition::Cond3
        } else {
            NCondition::None
        }
    }
}

impl fmt::Display for CondSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<&str> = [(self.cond1, "1"), (self.cond2, "2"), (self.cond3, "3")]
            .iter()
            .filter(|(on, _)| *on)
            .map(|(_, s)| *s)
            .collect();
        f.write_str(&items.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    D1,
    D2,
    D3,
    D4,
    D5,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Why an arc is dispensable. D1, D3 and D4 set `z`; D2 and D5 set `z1`
/// and `z2`. `plus` holds the `N⁺`-condition items of `z` (D1, D3) or `z1`
/// (D2); `minus` those of the `N⁻`-condition for `z` (D1, D4) or `z2` (D2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DispensabilityWitness {
    pub rule: Rule,
    pub z: Option<Vertex>,
    pub z1: Option<Vertex>,
    pub z2: Option<Vertex>,
    pub plus: CondSet,
    pub minus: CondSet,
}

impl DispensabilityWitness {
    fn single(rule: Rule, z: Vertex, plus: CondSet, minus: CondSet) -> Self {
        DispensabilityWitness { rule, z: Some(z), z1: None, z2: None, plus, minus }
    }

    fn pair(rule: Rule, z1: Vertex, z2: Vertex, plus: CondSet, minus: CondSet) -> Self {
        DispensabilityWitness { rule, z: None, z1: Some(z1), z2: Some(z2), plus, minus }
    }
}

impl fmt::Display for DispensabilityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rule)?;
        if let Some(z) = self.z {
            write!(f, " z={z}")?;
        }
        if let (Some(z1), Some(z2)) = (self.z1, self.z2) {
            write!(f, " z1={z1} z2={z2}")?;
        }
        if self.plus.any() {
            write!(f, " cond+={}", self.plus)?;
        }
        if self.minus.any() {
            write!(f, " cond-={}", self.minus)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SkeletonOptions {
    /// Scan every vertex as a witness candidate instead of the common
    /// neighborhood of the arc's endpoints.
    pub exhaustive_z: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletonResult {
    pub skeleton: Digraph,
    /// Removed arcs in lexicographic order with their witnesses.
    pub removed: Vec<(Arc, DispensabilityWitness)>,
}

impl SkeletonResult {
    /// One line per removed arc: `u v RULE witnesses`.
    pub fn ledger(&self) -> String {
        self.removed.iter().map(|((u, v), w)| format!("{u} {v} {w}\n")).collect()
    }

    pub fn removed_arcs(&self) -> Vec<Arc> {
        self.removed.iter().map(|&(a, _)| a).collect()
    }
}

fn conditions(nx: &[Vertex], ny: &[Vertex], ixy: &[Vertex], nz: &[Vertex]) -> CondSet {
    let proper = sorted::is_proper_subset;
    CondSet {
        cond1: proper(nx, nz) && proper(nz, ny),
        cond2: proper(ny, nz) && proper(nz, nx),
        cond3: proper(ixy, &sorted::intersection(nx, nz)) && proper(ixy, &sorted::intersection(ny, nz)),
    }
}

fn weak(nx: &[Vertex], ny: &[Vertex], ixy: &[Vertex], nz: &[Vertex]) -> bool {
    sorted::is_subset(ixy, &sorted::intersection(nx, nz)) && sorted::is_subset(ixy, &sorted::intersection(ny, nz))
}

/// Closed neighborhoods and `S±` classes of one graph.
struct Context<'g> {
    g: &'g Digraph,
    out: Vec<Vec<Vertex>>,
    inn: Vec<Vec<Vertex>>,
    splus: Partition,
    sminus: Partition,
    exhaustive: bool,
}

/// Per-candidate data for one arc.
struct Candidate {
    z: Vertex,
    plus: CondSet,
    minus: CondSet,
}

impl<'g> Context<'g> {
    fn new(g: &'g Digraph, exhaustive: bool) -> Self {
        Context {
            g,
            out: g.closed_out_lists(),
            inn: g.closed_in_lists(),
            splus: s_partition(g, Relation::SPlus),
            sminus: s_partition(g, Relation::SMinus),
            exhaustive,
        }
    }

    fn nbhd(&self, sign: Sign) -> &[Vec<Vertex>] {
        match sign {
            Sign::Plus => &self.out,
            Sign::Minus => &self.inn,
        }
    }

    fn conditions(&self, x: Vertex, y: Vertex, z: Vertex, sign: Sign) -> CondSet {
        let n = self.nbhd(sign);
        conditions(&n[x], &n[y], &sorted::intersection(&n[x], &n[y]), &n[z])
    }

    fn weak(&self, x: Vertex, y: Vertex, z: Vertex, sign: Sign) -> bool {
        let n = self.nbhd(sign);
        weak(&n[x], &n[y], &sorted::intersection(&n[x], &n[y]), &n[z])
    }

    fn candidates(&self, x: Vertex, y: Vertex) -> Vec<Vertex> {
        if self.exhaustive {
            return self.g.vertices().collect();
        }
        sorted::intersection(&sorted::union(&self.out[x], &self.inn[x]), &sorted::union(&self.out[y], &self.inn[y]))
    }

    fn witness(&self, x: Vertex, y: Vertex) -> Option<DispensabilityWitness> {
        let (ox, oy, ix, iy) = (&self.out[x], &self.out[y], &self.inn[x], &self.inn[y]);
        let oxy = sorted::intersection(ox, oy);
        let ixy = sorted::intersection(ix, iy);
        let cands: Vec<Candidate> = self
            .candidates(x, y)
            .into_iter()
            .map(|z| Candidate {
                z,
                plus: conditions(ox, oy, &oxy, &self.out[z]),
                minus: conditions(ix, iy, &ixy, &self.inn[z]),
            })
            .collect();

        if let Some(c) = cands.iter().find(|c| c.plus.any() && c.minus.any()) {
            return Some(DispensabilityWitness::single(Rule::D1, c.z, c.plus, c.minus));
        }

        let z1 = cands.iter().find(|c| c.plus.cond3 && weak(ix, iy, &ixy, &self.inn[c.z]));
        let z2 = cands.iter().find(|c| c.minus.cond3 && weak(ox, oy, &oxy, &self.out[c.z]));
        if let (Some(a), Some(b)) = (z1, z2) {
            return Some(DispensabilityWitness::pair(Rule::D2, a.z, b.z, a.plus, b.minus));
        }

        if let Some(c) = cands.iter().find(|c| c.plus.any() && (self.inn[c.z] == *ix || self.inn[c.z] == *iy)) {
            return Some(DispensabilityWitness::single(Rule::D3, c.z, c.plus, CondSet::default()));
        }
        if let Some(c) = cands.iter().find(|c| c.minus.any() && (self.out[c.z] == *ox || self.out[c.z] == *oy)) {
            return Some(DispensabilityWitness::single(Rule::D4, c.z, CondSet::default(), c.minus));
        }

        self.d5(x, y)
            .map(|(z1, z2)| DispensabilityWitness::pair(Rule::D5, z1, z2, CondSet::default(), CondSet::default()))
    }

    fn d5(&self, x: Vertex, y: Vertex) -> Option<(Vertex, Vertex)> {
        let outside = |z: &Vertex| *z != x && *z != y;
        let (first, second): (Vec<Vertex>, Vec<Vertex>) = if self.exhaustive {
            (
                self.g.vertices().filter(|&z| self.out[z] == self.out[x] && self.inn[z] == self.inn[y]).collect(),
                self.g.vertices().filter(|&z| self.inn[z] == self.inn[x] && self.out[z] == self.out[y]).collect(),
            )
        } else {
            (
                self.splus
                    .class(x)
                    .iter()
                    .copied()
                    .filter(|&z| self.sminus.class_of[z] == self.sminus.class_of[y])
                    .collect(),
                self.sminus
                    .class(x)
                    .iter()
                    .copied()
                    .filter(|&z| self.splus.class_of[z] == self.splus.class_of[y])
                    .collect(),
            )
        };
        first
            .iter()
            .filter(|z| outside(z))
            .find_map(|&z1| second.iter().copied().find(|&z2| z2 != z1 && outside(&z2)).map(|z2| (z1, z2)))
    }
}

fn check_arc(g: &Digraph, x: Vertex, y: Vertex) -> Result<()> {
    if g.has_arc(x, y) {
        Ok(())
    } else {
        Err(Error::ArcNotPresent(x, y))
    }
}

fn check_vertex(g: &Digraph, z: Vertex) -> Result<()> {
    if z < g.vertex_count() {
        Ok(())
    } else {
        Err(Error::VertexOutOfRange { vertex: z, n: g.vertex_count() })
    }
}

/// All `N±`-condition items that hold for the arc `xy` with `z`.
pub fn n_conditions(g: &Digraph, x: Vertex, y: Vertex, z: Vertex, sign: Sign) -> Result<CondSet> {
    check_arc(g, x, y)?;
    check_vertex(g, z)?;
    Ok(Context::new(g, false).conditions(x, y, z, sign))
}

pub fn n_condition(g: &Digraph, x: Vertex, y: Vertex, z: Vertex, sign: Sign) -> Result<NCondition> {
    Ok(n_conditions(g, x, y, z, sign)?.first())
}

pub fn weak_n_condition(g: &Digraph, x: Vertex, y: Vertex, z: Vertex, sign: Sign) -> Result<bool> {
    check_arc(g, x, y)?;
    check_vertex(g, z)?;
    Ok(Context::new(g, false).weak(x, y, z, sign))
}

/// The first rule (D1 to D5, candidates ascending) making `xy` dispensable.
pub fn dispensability(g: &Digraph, x: Vertex, y: Vertex) -> Result<Option<DispensabilityWitness>> {
    check_arc(g, x, y)?;
    Ok(Context::new(g, false).witness(x, y))
}

pub fn cartesian_skeleton(g: &Digraph) -> Result<SkeletonResult> {
    cartesian_skeleton_with(g, SkeletonOptions::default())
}

/// Removes every dispensable arc of a connected thin digraph.
pub fn cartesian_skeleton_with(g: &Digraph, options: SkeletonOptions) -> Result<SkeletonResult> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if !is_thin(g) {
        return Err(Error::NotThin);
    }
    let ctx = Context::new(g, options.exhaustive_z);
    let removed: Vec<(Arc, DispensabilityWitness)> =
        g.arcs().filter_map(|(x, y)| ctx.witness(x, y).map(|w| ((x, y), w))).collect();
    let skeleton = g.without_arcs(&removed.iter().map(|&(a, _)| a).collect::<Vec<_>>());
    Ok(SkeletonResult { skeleton, removed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::products::{cartesian_product, strong_product};

    // vertex (a, b) of a product of two P⃗₂ has id 2a + b
    fn square() -> Digraph {
        let p2 = Digraph::directed_path(2);
        strong_product(&[p2.clone(), p2]).unwrap().into_graph()
    }

    #[test]
    fn n_conditions_on_the_diagonal() {
        let g = square();
        assert_eq!(n_condition(&g, 0, 3, 1, Sign::Plus).unwrap(), NCondition::Cond2);
        assert_eq!(n_condition(&g, 0, 3, 1, Sign::Minus).unwrap(), NCondition::Cond1);
        assert_eq!(n_conditions(&g, 0, 3, 1, Sign::Plus).unwrap(), CondSet { cond1: false, cond2: true, cond3: false });
        assert_eq!(n_condition(&g, 3, 0, 1, Sign::Plus), Err(Error::ArcNotPresent(3, 0)));
        assert!(matches!(n_condition(&g, 0, 3, 7, Sign::Plus), Err(Error::VertexOutOfRange { vertex: 7, .. })));
    }

    #[test]
    fn equal_neighborhoods_admit_no_condition() {
        // 0 <-> 1 share N⁺ and N⁻; nothing can sit strictly between
        let g = Digraph::new(3, [(0, 1), (1, 0), (0, 2), (1, 2)]).unwrap();
        for z in 0..3 {
            assert_eq!(n_condition(&g, 0, 1, z, Sign::Plus).unwrap(), NCondition::None);
        }
    }

    #[test]
    fn weak_conditions() {
        let g = square();
        for (x, y) in g.arcs() {
            assert!(weak_n_condition(&g, x, y, x, Sign::Plus).unwrap());
            assert!(weak_n_condition(&g, x, y, x, Sign::Minus).unwrap());
        }
        assert!(weak_n_condition(&g, 0, 3, 2, Sign::Plus).unwrap());
        assert_eq!(weak_n_condition(&g, 3, 0, 1, Sign::Plus), Err(Error::ArcNotPresent(3, 0)));
    }

    #[test]
    fn strict_implies_weak() {
        let g = square();
        for (x, y) in g.arcs() {
            for z in g.vertices() {
                for sign in [Sign::Plus, Sign::Minus] {
                    if n_conditions(&g, x, y, z, sign).unwrap().cond3 {
                        assert!(weak_n_condition(&g, x, y, z, sign).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn diagonal_is_d1_and_sides_survive() {
        let g = square();
        let w = dispensability(&g, 0, 3).unwrap().unwrap();
        assert_eq!(w.rule, Rule::D1);
        assert_eq!(w.z, Some(1));
        assert!(w.plus.cond2 && w.minus.cond1);
        assert_eq!(w.to_string(), "D1 z=1 cond+=2 cond-=1");
        for arc in [(0, 1), (0, 2), (1, 3), (2, 3)] {
            assert_eq!(dispensability(&g, arc.0, arc.1).unwrap(), None);
        }
    }

    #[test]
    fn skeleton_of_square() {
        let g = square();
        let p2 = Digraph::directed_path(2);
        let s = cartesian_skeleton(&g).unwrap();
        assert_eq!(s.skeleton, cartesian_product(&[p2.clone(), p2]).unwrap().into_graph());
        assert_eq!(s.removed_arcs(), vec![(0, 3)]);
        assert_eq!(s.ledger(), "0 3 D1 z=1 cond+=2 cond-=1\n");
    }

    #[test]
    fn skeleton_preconditions() {
        assert_eq!(cartesian_skeleton(&Digraph::complete(2)), Err(Error::NotThin));
        assert_eq!(cartesian_skeleton(&Digraph::empty(2)), Err(Error::NotConnected));
    }

    #[test]
    fn prime_cycle_skeleton_is_itself() {
        let c3 = Digraph::directed_cycle(3);
        let s = cartesian_skeleton(&c3).unwrap();
        assert!(s.skeleton.is_connected());
        assert_eq!(s.skeleton.vertex_count(), 3);
    }

    #[test]
    fn condset_display() {
        let c = CondSet { cond1: true, cond2: false, cond3: true };
        assert_eq!(c.to_string(), "1,3");
        assert_eq!(c.first(), NCondition::Cond1);
        assert_eq!(CondSet::default().first(), NCondition::None);
    }
}
