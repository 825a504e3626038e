use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("sigma is not a permutation: {0}")]
    NotPermutation(String),
    #[error("expected {expected} signs, got {got}")]
    SignCount { expected: usize, got: usize },
    #[error("map is not connected")]
    Disconnected,
    #[error("map is not orientable")]
    NonOrientable,
    #[error("face {face} has {len} sides, family {family} needs {expected}")]
    FamilyMismatch {
        family: String,
        face: usize,
        len: usize,
        expected: usize,
    },
    #[error("surface is not a torus (chi = {chi})")]
    NotTorus { chi: i64 },
    #[error("nothing to develop: the map is empty")]
    EmptyMap,
    #[error("invalid loop: {0}")]
    InvalidLoop(String),
    #[error("cannot flip edge {edge}: {reason}")]
    DegenerateFlip { edge: usize, reason: String },
    #[error("edge {0} out of range")]
    NoSuchEdge(usize),
    #[error("lattice basis: {0}")]
    BadBasis(String),
    #[error("unknown catalogue entry {0:?}")]
    UnknownCatalogueEntry(String),
    #[error("edge swap: {0}")]
    EdgeSwap(String),
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
