//! Closure-system calculus on finite networks.
//!
//! A finite ground set with a directed boolean adjacency relation induces the
//! neighborhood closure: the closure of a set collects every node whose
//! dominated region lies inside the set's dominated region. This crate
//! provides that operator and its closed-set machinery, atomistic
//! transformations between systems with monotonicity/continuity/surjectivity
//! checks, separation and connectivity predicates, subsumption reduction to
//! an irreducible core, chordless k-cycle enumeration, a deterministic
//! seeded simulator of network decomposition under continuous edge
//! deletions, and a brute-force audit harness that cross-checks every
//! fast-path rule against exhaustive enumeration on small instances.

#![forbid(unsafe_code)]

pub mod closure;
pub mod dynamics;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod oracle;
pub mod reduction;
pub mod separation;
pub mod system;
pub mod transform;

pub use closure::{DEFAULT_MAX_N, HARD_MAX_N};
pub use error::{Error, Result};
pub use system::{NodeId, NodeSet, System, SystemBuilder};
