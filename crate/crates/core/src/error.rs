use thiserror::Error;

use crate::geometry::BasisId;
use crate::rays::RayId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PauliError {
    #[error("unsupported Pauli letter {0:?}; only I, X and Z are allowed")]
    UnsupportedLetter(char),
    #[error("a word needs exactly 3 letters, got {0}")]
    WrongLength(usize),
    #[error("observables {0} and {1} do not commute")]
    NonCommuting(String, String),
    #[error("context product is not a signed identity")]
    NonScalarProduct,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RayError {
    #[error("zero vector has no ray")]
    ZeroVector,
    #[error("entries of {0:?} do not share a common magnitude")]
    NonUniformMagnitude(Vec<i64>),
    #[error("projector for eigenvalue pattern {0:?} is not rank 1")]
    DegenerateContext([i32; 4]),
    #[error("derived rays of column {0} differ from the fixture")]
    FixtureMismatch(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("expected 25 orthogonal octads, found {0}")]
    UnexpectedBasisCount(usize),
    #[error("basis {0} is not a valid pure or hybrid octad")]
    MalformedBasis(String),
    #[error("{0} is not a hybrid basis")]
    NotHybrid(BasisId),
    #[error("unknown basis identifier {0:?}")]
    UnknownBasis(String),
    #[error("derived gamma sets of column {0} differ from the fixture")]
    GammaMismatch(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("gamma sets must come from pairwise distinct columns")]
    SameColumn,
    #[error("gamma ({0}, {1}) is outside the 5 x 8 table")]
    UnknownGamma(usize, usize),
    #[error("expected {expected} gamma sets, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("tick/cross conflict on {0}: both members of a y-y' pair would be crossed")]
    CrossedPairConflict(BasisId),
    #[error("ray {ray} cannot be picked: {reason}")]
    InadmissiblePick { ray: RayId, reason: &'static str },
    #[error("no admissible new ray left while {0} hybrids are unmarked")]
    Stalled(usize),
    #[error("final-basis rule selects {0} of the remaining pair")]
    AmbiguousFinalBasis(usize),
    #[error("construction produced a set that is not a parity proof")]
    InvalidResult,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixtureError {
    #[error("{file}:{line}: {msg}")]
    Parse {
        file: String,
        line: usize,
        msg: String,
    },
    #[error("cannot read {0}: {1}")]
    Io(String, String),
}

/// Umbrella error for callers that drive the whole pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Ray(#[from] RayError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Fixture(#[from] FixtureError),
    #[error("not a parity proof")]
    NotParityProof,
    #[error("document error: {0}")]
    Document(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
