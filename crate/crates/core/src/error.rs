use thiserror::Error;

/// Engine errors. Parse errors live in [`crate::parser::ParseError`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate resultant: both inputs are constant in the elimination variable")]
    DegenerateResultant,
    #[error("division by zero")]
    DivisionByZero,
    #[error("minimal polynomial is reducible over Q")]
    ReducibleMinpoly,
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("conjugate index {index} out of range 1..={n}")]
    ConjugateOutOfRange { index: usize, n: usize },
    #[error("Puiseux expansion incomplete after {steps} Newton polygon steps")]
    IncompleteExpansion { steps: usize },
    #[error("curve is not regular perfect")]
    NotRegularPerfect,
    #[error("asymptote family unavailable: infinity point is singular")]
    FamilyUnavailable,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
