use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, CanonicalForm};
use crate::digraph::{Digraph, Vertex};
use crate::error::Result;
use crate::products::{cartesian_product, encode, strong_product, CoordGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductKind {
    Strong,
    Cartesian,
}

impl fmt::Display for ProductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProductKind::Strong => "strong",
            ProductKind::Cartesian => "cartesian",
        })
    }
}

impl FromStr for ProductKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "strong" => Ok(ProductKind::Strong),
            "cartesian" => Ok(ProductKind::Cartesian),
            other => Err(format!("unknown product kind `{other}`")),
        }
    }
}

impl ProductKind {
    pub fn product(self, factors: &[Digraph]) -> Result<CoordGraph> {
        match self {
            ProductKind::Strong => strong_product(factors),
            ProductKind::Cartesian => cartesian_product(factors),
        }
    }
}

/// Factors of a digraph together with the coordinates of every original
/// vertex; `coords[v][i]` is a vertex of `factors[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<Digraph>,
    pub coords: Vec<Vec<Vertex>>,
}

impl Factorization {
    /// `g` as its own single factor.
    pub fn trivial(g: &Digraph) -> Self {
        Factorization { factors: vec![g.clone()], coords: g.vertices().map(|v| vec![v]).collect() }
    }

    pub fn factor_sizes(&self) -> Vec<usize> {
        self.factors.iter().map(Digraph::vertex_count).collect()
    }

    pub fn is_prime(&self) -> bool {
        self.factors.len() == 1
    }

    /// True if the product of the factors, read through `coords`, has
    /// exactly the arcs of `g`.
    pub fn reconstructs(&self, g: &Digraph, kind: ProductKind) -> bool {
        let n = g.vertex_count();
        let sizes = self.factor_sizes();
        if self.coords.len() != n || sizes.iter().product::<usize>() != n {
            return false;
        }
        let mut seen = vec![false; n];
        let mut phi = Vec::with_capacity(n);
        for c in &self.coords {
            if c.len() != sizes.len() || c.iter().zip(&sizes).any(|(x, s)| x >= s) {
                return false;
            }
            let id = encode(c, &sizes);
            if std::mem::replace(&mut seen[id], true) {
                return false;
            }
            phi.push(id);
        }
        let Ok(product) = kind.product(&self.factors) else {
            return false;
        };
        let p = product.graph();
        p.arc_count() == g.arc_count() && g.arcs().all(|(u, v)| p.has_arc(phi[u], phi[v]))
    }

    /// Canonical forms of the factors, sorted: the factor multiset up to
    /// isomorphism and order.
    pub fn canonical_factors(&self) -> Result<Vec<CanonicalForm>> {
        let mut forms = self.factors.iter().map(canonical_form).collect::<Result<Vec<_>>>()?;
        forms.sort();
        Ok(forms)
    }

    /// Concatenates coordinates: `self` covers the first block of factors,
    /// and each of its factor vertices is split further by `inner`.
    pub(crate) fn refine_factor(&self, index: usize, inner: &Factorization) -> Factorization {
        let mut factors = Vec::new();
        factors.extend_from_slice(&self.factors[..index]);
        factors.extend(inner.factors.iter().cloned());
        factors.extend_from_slice(&self.factors[index + 1..]);
        let coords = self
            .coords
            .iter()
            .map(|c| {
                let mut out = c[..index].to_vec();
                out.extend_from_slice(&inner.coords[c[index]]);
                out.extend_from_slice(&c[index + 1..]);
                out
            })
            .collect();
        Factorization { factors, coords }
    }
}
