//! Exact edge-expansion toolkit for finite simple graphs.
//!
//! Computes Cheeger constants and Følner sets with exact rational
//! arithmetic, recursively decomposes graphs without small Følner sets into
//! certified expander parts, carries out the maximal-Følner structure
//! decomposition, and verifies quasi-isometries together with the constant
//! calculus that transfers smallness through them. Every certificate is
//! machine-checkable from scratch: there is no floating point anywhere, and
//! exhaustive enumeration refuses (with a cap error) instead of degrading.

#![forbid(unsafe_code)]

pub mod cheeger;
pub mod decompose;
pub mod error;
pub mod families;
pub mod graph;
pub mod qi;
pub mod ratio;
pub mod structure;

pub use cheeger::{CheegerResult, CheegerValue, HigherCheegerResult};
pub use decompose::{CutTrace, DecompositionResult, PartCertificate, VerificationReport};
pub use error::{Error, Result};
pub use graph::{EdgeSet, Graph, InducedSubgraph, VertexSet, INFINITE_DISTANCE};
pub use qi::{QiInstance, QiReport};
pub use ratio::Ratio;
pub use structure::{DichotomyEntry, StructureOutcome, StructureResult};
