//! Exact computations in the forested graph complex, the graphical trace
//! cocycle, chord-diagram normal forms and the bordification chain complex
//! of filtered graphs.
//!
//! Everything is built on one half-edge multigraph type ([`graph::Graph`])
//! and one canonical labeling routine ([`canon`]); each complex supplies its
//! own colouring and orientation data on top of it.

pub mod bordification;
pub mod canon;
pub mod chain;
pub mod chord;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod forested;
pub mod format;
pub mod graph;
pub mod linalg;
pub mod morita;
pub mod perm;
pub mod random;
pub mod report;
pub mod trace;

pub use chain::{Chain, Key, Q};
pub use error::{Error, Result};
pub use graph::Graph;
