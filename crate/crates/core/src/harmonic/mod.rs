//! Positive-definite functions on finite groups: Gram tests, the three classical
//! inequalities, GNS modules, discrete induction, Mackey–Shoda bounds and spectral
//! concentration on finite abelian groups.

mod character;
mod group;
mod rep;
mod state;

pub use character::{linear_characters, Character};
pub use group::FiniteGroup;
pub use rep::{
    gns_finite, ind_discrete, induction_equivalence, intertwiner_dim, isotypic_vectors, mackey_bound, mackey_shoda, Equivalence,
    GnsModule, InducedRep, MackeyReport, UnitaryRep,
};
pub use state::{
    concentration_check, gram_psd, state_inequalities, ConcentrationReport, GramReport, InequalityReport, Slack, StateSample,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HarmonicError {
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not a subgroup")]
    NotSubgroup,
    #[error("not a character: {0}")]
    NotMultiplicative(String),
    #[error("not a state: {0}")]
    NotAState(String),
    #[error("not positive-definite (eigenvalue or spectral mass {0:e})")]
    NotPositive(f64),
    #[error("element {0} is outside the domain")]
    Domain(usize),
    #[error("the group is not presented as a product of cyclic groups")]
    NotCyclicProduct,
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("verification failed: {0}")]
    Audit(String),
}
