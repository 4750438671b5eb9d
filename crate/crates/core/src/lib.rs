//! Local-structure algorithms for sparse random graphs.
//!
//! - [`graph`]: simple graphs, Erdős–Rényi and preferential-attachment
//!   generators, neighborhoods, truncation and edge-list I/O.
//! - [`local`]: edge surplus, short-cycle and dense-subgraph counts,
//!   neighborhood-size and path-probability checks.
//! - [`expansion`]: low-degree orientation, transitive fraternal
//!   augmentation and p-centered colorings.
//! - [`iso`]: subgraph isomorphism by color-coding inside neighborhoods.
//! - [`scatter`]: scattered sets and basic local sentences.
//! - [`experiment`]: seeded experiment pipelines and their reports.

pub mod error;
pub mod expansion;
pub mod experiment;
pub mod graph;
pub mod iso;
pub mod local;
pub mod scatter;
pub mod seed;
pub mod stats;

pub use error::{Error, Result};
pub use graph::{Graph, Induced};
pub use seed::Seed;
