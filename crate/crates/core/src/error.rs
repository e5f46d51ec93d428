use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = CdError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum CdError {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("polynomial has no cd-form: {0}")]
    NoCdForm(String),
    #[error("mixed expression is not equivalent to a cd-polynomial: {0}")]
    NotCdEquivalent(String),
    #[error("negative flag count f_{set:?} = {value}")]
    NegativeFlag { set: Vec<usize>, value: String },
    #[error("degree mismatch: expected homogeneous degree {expected}, {found}")]
    DegreeMismatch { expected: usize, found: String },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("not a matroid: exchange fails for basis {basis:?} and element {element}")]
    NotAMatroid { basis: Vec<usize>, element: usize },
    #[error("no subset survives the cyclic flat inequalities")]
    EmptyMatroid,
    #[error("presentation mismatch at flat {set:?} (rank {rank})")]
    PresentationMismatch { set: Vec<usize>, rank: usize },
    #[error("matroid is not connected; use cd_index to combine components")]
    NotConnected,
    #[error("matroid is not split: {0}")]
    NotSplit(String),
    #[error("matroid is not sparse paving: {0}")]
    NotSparsePaving(String),
    #[error("unsupported matroid: {0}")]
    UnsupportedMatroid(String),
    #[error("modular pair {f:?}, {g:?} has dependent intersection")]
    ModularityAnomaly { f: Vec<usize>, g: Vec<usize> },
    #[error("scale exceeded: n = {n} is above the bound {bound}")]
    ScaleExceeded { n: usize, bound: usize },
    #[error("cache version mismatch: found {found}, expected {expected}")]
    CacheVersionMismatch { found: u64, expected: u64 },
    #[error("cache record mismatch for {0}")]
    CacheCorrupt(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CdError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CdError::Io {
            path: path.into(),
            source,
        }
    }
}
