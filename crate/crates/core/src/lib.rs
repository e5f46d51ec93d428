//! Exact cd-indices of matroid base polytopes.

pub mod cache;
pub mod catalog;
pub mod cli;
pub mod combinatorics;
pub mod corpus;
pub mod cuspidal;
pub mod engine;
pub mod error;
pub mod hypersimplex;
pub mod matroid;
pub mod memo;
pub mod ncpoly;
pub mod oracle;
pub mod product;
pub mod reference;

pub use error::{CdError, Result};
pub use memo::{CacheKind, Memo};
pub use ncpoly::{FlagFVector, Letter, NcPoly, Word};
