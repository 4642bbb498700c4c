use std::fmt;

/// Error type shared by all modules of the crate.
///
/// Variants are split into three families: caller errors (bad input or a
/// violated precondition), budget errors (a search or factorization was
/// refused because it would exceed the configured desk-scale budget), and
/// diagnostics (a condition that a theorem guarantees cannot happen did
/// happen; always a bug or a mathematical finding, never silently eaten).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Inversion of the zero element.
    DivisionByZero,
    /// Multiplicative order of zero requested.
    ZeroOrderUndefined,
    /// A factorization or enumeration exceeded its budget.
    BudgetExceeded(String),
    /// Discrete logarithm of zero (or of an element outside the group).
    NoLogarithm,
    /// A sum-of-powers search exhausted its space without a hit.
    NoDecomposition(String),
    /// Operation requires a monic polynomial.
    NotMonic,
    /// Exhausted polynomial search (legitimate only in documented exception cases).
    NoSuchPolynomial(String),
    /// An orbit polynomial produced a coefficient outside the base field.
    CoefficientNotInBase,
    /// Matrix inversion / solving hit a singular matrix.
    SingularMatrix,
    /// Similarity witness construction failed: inputs are not similar.
    NotSimilar(String),
    /// Prescribed columns violate the required staircase shape.
    PrescriptionViolation(String),
    /// Basis completion collapsed; the input matrix is derogatory.
    DegenerateBasis,
    /// Trace bookkeeping of a split does not balance.
    TraceMismatch(String),
    /// A verified block shape failed to materialize.
    ShapeViolation(String),
    /// The unipotent-part characteristic polynomial check failed.
    CharPolyViolation(String),
    /// The geometric sum in a block-root solve is singular for the chosen corner.
    SingularGeometricSum,
    /// A k-power witness does not validate.
    WitnessInvalid(String),
    /// Matrix order shares a factor with the requested root exponent.
    OrderNotCoprime,
    /// Characteristic polynomial is not irreducible where it must be.
    NotIrreducible,
    /// Decomposition requested outside every supported theorem's hypotheses.
    PreconditionViolated(String),
    /// The exhaustive fallback ran dry, contradicting a theorem.
    FallbackExhausted(String),
    /// A theorem-guaranteed search failed. Carries full context; this is
    /// either an implementation bug or a mathematical discovery.
    TheoremContradiction(String),
    /// Mixed tower levels, wrong dimensions, malformed input.
    InvalidInput(String),
    /// I/O or parse failure at the CLI boundary.
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::ZeroOrderUndefined => write!(f, "multiplicative order of zero is undefined"),
            Error::BudgetExceeded(what) => write!(f, "budget exceeded: {what}"),
            Error::NoLogarithm => write!(f, "discrete logarithm does not exist"),
            Error::NoDecomposition(what) => write!(f, "no decomposition found: {what}"),
            Error::NotMonic => write!(f, "polynomial is not monic"),
            Error::NoSuchPolynomial(what) => write!(f, "no such polynomial: {what}"),
            Error::CoefficientNotInBase => {
                write!(f, "orbit polynomial coefficient lies outside the base field")
            }
            Error::SingularMatrix => write!(f, "singular matrix"),
            Error::NotSimilar(what) => write!(f, "matrices are not similar: {what}"),
            Error::PrescriptionViolation(what) => write!(f, "column prescription violation: {what}"),
            Error::DegenerateBasis => write!(f, "basis completion degenerated (derogatory input)"),
            Error::TraceMismatch(what) => write!(f, "trace mismatch: {what}"),
            Error::ShapeViolation(what) => write!(f, "block shape violation: {what}"),
            Error::CharPolyViolation(what) => {
                write!(f, "characteristic polynomial check failed: {what}")
            }
            Error::SingularGeometricSum => write!(f, "geometric sum is singular for this corner"),
            Error::WitnessInvalid(what) => write!(f, "invalid k-power witness: {what}"),
            Error::OrderNotCoprime => write!(f, "matrix order is not coprime to the exponent"),
            Error::NotIrreducible => write!(f, "characteristic polynomial is not irreducible"),
            Error::PreconditionViolated(what) => write!(f, "precondition violated: {what}"),
            Error::FallbackExhausted(what) => write!(f, "exhaustive fallback found nothing: {what}"),
            Error::TheoremContradiction(what) => {
                write!(f, "theorem-contradiction diagnostic: {what}")
            }
            Error::InvalidInput(what) => write!(f, "invalid input: {what}"),
            Error::Io(what) => write!(f, "i/o error: {what}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
