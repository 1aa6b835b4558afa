//! Exact chain-level computations for permutohedra, simplices and the fiber
//! complexes of graph contractions.
//!
//! The crate builds the permutohedron complex `C_*(P_n)` on totally ordered
//! partitions, the simplex complex `C_*(Δ^{n-1})`, and for a connected
//! multigraph the complex `C_*(φ)` of flow-chart trees over its total
//! contraction. It verifies `d² = 0`, homology, width-filtration spectral
//! sequence pages, and the surjective quasi-isomorphisms
//! `C_*(P_n) -> Σⁿ C_*(φ) -> C_*(Δ^{n-1})`, all over ℚ.
//!
//! ```
//! use std::collections::BTreeMap;
//! use koszul::{build_fiber, build_perm, build_simplex, perm_to_simplex, MultiGraph};
//!
//! let perm = build_perm(3)?;
//! assert_eq!(perm.complex().homology_dims()?, BTreeMap::from([(0, 1)]));
//!
//! let fiber = build_fiber(&MultiGraph::path(3))?;
//! assert_eq!(fiber.dims_by_blocks(), vec![1, 5, 5]); // a pentagon
//! assert!(fiber.koszul_check()?.passed()); // one class in degree -3
//!
//! let simplex = build_simplex(3)?;
//! let up = fiber.perm_to_fiber(&perm)?;
//! let down = fiber.fiber_to_simplex(&simplex)?;
//! assert!(up.verify_chain_map().passed() && up.is_quasi_isomorphism()?);
//! assert_eq!(up.then(&down)?, perm_to_simplex(&perm, &simplex)?);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod cli;
pub mod complex;
pub mod fiber;
pub mod linalg;
pub mod polytopes;
pub mod topartition;

pub use complex::{ChainComplex, ChainMap, Degree, FilteredComplex, PageTable};
pub use fiber::{build_fiber, FiberComplex, FiberTree, MultiGraph, TreeShape};
pub use linalg::{Rational, SparseMatrix};
pub use polytopes::{build_perm, build_simplex, perm_to_simplex, PermComplex, SimplexComplex};
pub use topartition::{BlockSet, Sign, TOPartition};
