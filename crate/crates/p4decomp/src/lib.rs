//! Constructive decomposition of 8-regular graphs into edge-disjoint paths
//! of length four in which every vertex is an end of exactly two paths.
//!
//! The pipeline runs in stages, each exposed as its own module:
//!
//! 1. [`factorize`] — split the graph into two 4-regular spanning factors.
//! 2. [`p2`] — decompose the first factor into 2-edge paths, one centered
//!    at each vertex, so every vertex ends exactly two of them.
//! 3. [`trapped`] — classify the second factor's edges against the end-pairs
//!    of those short paths.
//! 4. [`orientation`] — orient the second factor Eulerianly while respecting
//!    the classified substructures.
//! 5. [`extension`] — extend each 2-edge path by one directed edge at each
//!    end, then repair closed walks and normalize triangles by swapping end
//!    edges between walks.
//! 6. [`completion`] — eliminate the remaining triangles via paired
//!    rewirings and emit the final decomposition.
//!
//! The [`verify`] module provides an independent checker, a brute-force
//! reference decomposer for small graphs, and a batch driver.

pub mod completion;
pub mod extension;
pub mod factorize;
pub mod graph;
pub mod orientation;
pub mod p2;
pub mod trapped;
pub mod verify;

pub use completion::{decompose, decompose_traced, DecomposeError, StageTrace};
pub use graph::{Graph, GraphError, Orientation, Tracking, TrackingDecomposition, Vertex};
pub use verify::{
    batch, brute_force_decompose, run_batch, verify_decomposition, verify_trackings, Flaw,
    VerifyReport,
};
