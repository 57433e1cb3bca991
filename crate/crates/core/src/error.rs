use thiserror::Error;

use crate::shape::{Shape, Translate};
use crate::system::Letter;
use crate::word::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("a tile system needs at least one direction")]
    ZeroRank,

    #[error("alphabet is empty")]
    EmptyAlphabet,

    #[error("duplicate name `{0}`")]
    DuplicateName(String),

    #[error("unknown letter `{0}`")]
    UnknownLetter(String),

    #[error("unknown decoration `{0}`")]
    UnknownDecoration(String),

    #[error("decoration set is empty")]
    EmptyDecorations,

    #[error("matrix {direction} is {rows}x{cols}, expected {expected}x{expected}")]
    MatrixDimension {
        direction: usize,
        rows: usize,
        cols: usize,
        expected: usize,
    },

    #[error("grid has {found} cells but shape {shape} needs {expected}")]
    GridMismatch {
        shape: Shape,
        expected: usize,
        found: usize,
    },

    #[error("word violates {} transition constraint(s), first at cell {:?} direction {}",
        .0.len(), .0[0].cell, .0[0].direction + 1)]
    InvalidWord(Vec<Violation>),

    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: Shape, found: Shape },

    #[error("box [{lo}, {hi}] is not inside [0, {shape}]")]
    OutOfBounds { lo: Shape, hi: Shape, shape: Shape },

    #[error("translate must be nonzero")]
    ZeroTranslate,

    #[error("direction {direction} out of range for rank {rank}")]
    BadDirection { direction: usize, rank: usize },

    #[error("transition {from} -> {to} is not allowed in direction {}", .direction + 1)]
    ForbiddenTransition {
        direction: usize,
        from: Letter,
        to: Letter,
    },

    #[error("path step {index} is not an allowed transition")]
    PathStep { index: usize },

    #[error("extension fill at cell {cell:?} has {candidates} candidate letters; the system does not have unique products")]
    FillFailure { cell: Vec<usize>, candidates: usize },

    #[error("terminus {terminus} of the left word differs from origin {origin} of the right word")]
    EndpointMismatch { terminus: Letter, origin: Letter },

    #[error(
        "product does not restrict back to its factors; the system does not have unique products"
    )]
    NonUniqueProduct,

    #[error("letter {from} has no successor in direction {}", .direction + 1)]
    DeadEnd { direction: usize, from: Letter },

    #[error("no path from {from} to {to}")]
    Unreachable { from: Letter, to: Letter },

    #[error(
        "no pair of distinct words with equal shape and origin up to total degree {max_degree}"
    )]
    NoDistinctPair { max_degree: usize },

    #[error("no non-{p}-periodic word of shape at most {shape_bound}")]
    MissingWitness { p: Translate, shape_bound: Shape },

    #[error("the pair ({0}, {1}) is not a generator index: termini differ")]
    TerminusMismatch(Letter, Letter),
}
