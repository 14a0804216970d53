//! Exact Lie algebra kernel: structure constants, brackets, coadjoint action and
//! annihilator computations over the rationals.

mod algebra;
mod parse;
mod subspace;

pub use algebra::{Covector, LieAlgebra, StructureReport};
pub use parse::{parse_algebra, parse_bracket_table, parse_covector, parse_covector_list, parse_vector};
pub use subspace::{Ambient, Subspace};


#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: bracket [{}, {}] already given on line {first_line}", pair.0, pair.1)]
    DuplicateBracket { line: usize, first_line: usize, pair: (String, String) },
    #[error("line {line}: bracket [{}, {}] contradicts antisymmetry", pair.0, pair.1)]
    InconsistentAntisymmetry { line: usize, pair: (String, String) },
    #[error("line {line}: unknown basis label {label:?}")]
    UnknownLabel { line: usize, label: String },
    #[error("Jacobi identity fails on {triple}")]
    JacobiViolation { triple: String },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("bracket pair ({i}, {j}) must satisfy i < j < dim")]
    InvalidPair { i: usize, j: usize },
    #[error("algebra must have positive dimension")]
    EmptyAlgebra,
    #[error("algebra is not nilpotent")]
    NotNilpotent,
}
