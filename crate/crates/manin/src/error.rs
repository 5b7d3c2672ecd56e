use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Error type shared by the whole crate. Checks that are expected to fail on
/// ordinary user input (Jacobi sweeps, Drinfeld conditions, closure tests)
/// return report structs with witnesses instead of erroring; `Error` is for
/// malformed input and violated preconditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("interior product requires degree {0} <= degree {1}")]
    DegreeOrder(usize, usize),
    #[error("matrix shape mismatch: {0}x{1} vs {2}x{3}")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("subspace is not closed under the bracket (basis pair {0}, {1})")]
    NotClosed(usize, usize),
    #[error("not a Lie algebra ({0} violated component(s); run validate for the list)")]
    InvalidLieAlgebra(usize),
    #[error("not a Lie bialgebra: double Jacobi fails on the basis triple ({0}, {1}, {2})")]
    NotLieBialgebra(String, String, String),
    #[error("subspace is not Lagrangian")]
    NotLagrangian,
    #[error("intersection with g differs from h")]
    WrongIntersection,
    #[error("vector is not in the required subspace")]
    NotInSubspace,
    #[error("invalid point frame: {0}")]
    InvalidFrame(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal convention mismatch: {0}")]
    Convention(String),
    #[error("module data incompatible with the complex: {0}")]
    ModuleIncompatible(String),
    #[error("parse error: {0}")]
    Parse(String),
}
