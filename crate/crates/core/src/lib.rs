//! Finite matroids given by independence and rank oracles, the standard
//! operations on them, and exhaustive audits of intersection bounds on small
//! ground sets.

pub mod audit;
pub mod axioms;
pub mod bounds;
pub mod error;
pub mod generate;
pub mod intersection;
pub mod linear;
pub mod matroid;
pub mod ops;
pub mod search;
pub mod subset;
pub mod system;

pub use error::{MatroidError, Result};
pub use matroid::{Construction, Derived, Matroid};
pub use subset::{GroundSet, Subset};
pub use system::{IndependenceOracle, IndependenceSystem};
