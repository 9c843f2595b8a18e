//! Star-factors of finite simple graphs.
//!
//! The crate enumerates star-factors, decides whether all of them carry the
//! same weight, classifies connected graphs of minimum degree two against
//! the known uniform families, generates small graphs up to isomorphism for
//! census runs, and solves for strictly positive edge weightings that make
//! every star-factor weigh the same.

pub mod canon;
pub mod classifier;
pub mod error;
pub mod factors;
pub mod families;
pub mod format;
pub mod graph;
pub mod linalg;
pub mod search;
pub mod uniformity;
pub mod weighting;

pub use canon::{are_isomorphic, canonical_form, CanonicalForm};
pub use error::{GraphError, ParseError};
pub use factors::{enumerate_star_factors, StarFactor, StarFactors};
pub use graph::{Edge, EdgeSet, Girth, Graph};
