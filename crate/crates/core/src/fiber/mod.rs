//! Graph-contraction fibers.
//!
//! A connected multigraph with edges `1..n` stands for the basic morphism
//! that contracts every edge; each single-edge contraction has degree one.
//! Contracting the edges in some temporal order and recording which earlier
//! contraction produced each endpoint gives a flow-chart tree. Merging the
//! tree vertices whose edges share a block of a TO partition gives the
//! block trees spanning the fiber complex `C_*(φ)`.

mod complex;
mod graph;
mod tree;

use thiserror::Error;

pub use complex::{
    build_fiber, build_fiber_with_cap, FiberComplex, KoszulReport, PushForwardReport,
    DEFAULT_FIBER_CAP,
};
pub use graph::{GraphError, MultiGraph};
pub use tree::{
    fiber_element, fiber_element_with_order, flowchart, FiberElement, FiberTree, TreeShape,
};

use crate::complex::ComplexError;
use crate::topartition::PartitionError;

#[derive(Debug, Error)]
pub enum FiberError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph has {n} edges, above the cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("contraction order must be a permutation of 1..={n}, got {order:?}")]
    NotAPermutation { n: usize, order: Vec<usize> },
    #[error("partition is on {partition} elements but the graph has {edges} edges")]
    SizeMismatch { partition: usize, edges: usize },
    #[error("malformed tree {0:?}")]
    MalformedTree(String),
    #[error("order does not refine the partition")]
    NotARefinement,
    #[error("{0}")]
    Inconsistent(String),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}
