//! Prime factor decomposition of connected digraphs.
//!
//! The crate factors a connected digraph into its unique prime factors with
//! respect to the strong product ([`strong::strong_pfd`]) or the Cartesian
//! product ([`cartesian::cartesian_pfd`]). The strong-product route goes
//! through the Cartesian skeleton ([`skeleton::cartesian_skeleton`]), the
//! spanning subgraph left after deleting every dispensable arc, whose
//! Cartesian factors are regrouped into strong factors. Non-thin inputs are
//! handled by quotienting by the `S` relation and restoring class sizes.
//!
//! ```
//! use digraph_pfd::{products::strong_product, strong::strong_pfd, Digraph};
//!
//! let p2 = Digraph::directed_path(2);
//! let c3 = Digraph::directed_cycle(3);
//! let g = strong_product(&[p2, c3]).unwrap().into_graph();
//! let pfd = strong_pfd(&g).unwrap();
//! assert_eq!(pfd.factors.len(), 2);
//! ```
//!
//! [`oracle`] holds an exhaustive brute-force factorizer used as ground
//! truth, and [`io`] the edge-list, DOT and JSON formats used by the `dpfd`
//! command line tool.

pub mod canon;
pub mod cartesian;
pub mod digraph;
pub mod error;
pub mod factorization;
pub mod io;
pub mod oracle;
pub mod products;
pub mod relations;
pub mod skeleton;
pub mod strong;

pub use canon::{canonical_form, is_isomorphic, CanonicalForm};
pub use digraph::{Arc, Digraph, UndirectedGraph, Vertex, VertexSet};
pub use error::{Error, FormatError, Result};
pub use factorization::{Factorization, ProductKind};
