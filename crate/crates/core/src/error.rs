use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not invertible in this ring: {0}")]
    NonInvertible(String),
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("valuation of the zero element is undefined")]
    ZeroElement,
    #[error("operands live in different coefficient rings")]
    RingMismatch,
    #[error("value does not belong to the requested ring: {0}")]
    NotInRing(String),
    #[error("Pochhammer symbol with negative index on an operator")]
    NegativePochhammer,
    #[error("index {index} is outside the support of {algebra}")]
    OutOfSupport { index: i64, algebra: String },
    #[error("h has zero derivative")]
    ZeroDerivative,
    #[error("h is not invertible in the coefficient ring")]
    NonInvertibleH,
    #[error("invalid branch: lambda must be c or -c-1")]
    InvalidBranch,
    #[error("order violation: {0}")]
    OrderViolation(String),
    #[error("symbol relation fails: {0}")]
    SymbolRelationFailure(String),
    #[error("branch ambiguous: {0}")]
    AmbiguousBranch(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("Casimir image is not a scalar operator")]
    NonScalarCasimir,
    #[error("substitution is not invertible: {0}")]
    NonInvertibleSubstitution(String),
    #[error("valuation out of range: {0}")]
    ValuationOutOfRange(String),
    #[error("no canonical form: {0}")]
    NoCanonicalForm(String),
    #[error("Casimir value is 1 (c in {{0, -1}}); the witness system is singular")]
    CasimirOne,
    #[error("constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("root is not in the coefficient field: {0}")]
    RootNotInField(String),
    #[error("cocycle values are not proportional: {0}")]
    NotProportional(String),
    #[error("division by an operator containing d")]
    NonCommutativeDivision,
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("too many parameters (limit {0})")]
    TooManyParameters(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable snake_case name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division_by_zero",
            Error::NonInvertible(_) => "non_invertible",
            Error::InsufficientPrecision(_) => "insufficient_precision",
            Error::ZeroElement => "zero_element",
            Error::RingMismatch => "ring_mismatch",
            Error::NotInRing(_) => "not_in_ring",
            Error::NegativePochhammer => "negative_pochhammer",
            Error::OutOfSupport { .. } => "out_of_support",
            Error::ZeroDerivative => "zero_derivative",
            Error::NonInvertibleH => "non_invertible_h",
            Error::InvalidBranch => "invalid_branch",
            Error::OrderViolation(_) => "order_violation",
            Error::SymbolRelationFailure(_) => "symbol_relation_failure",
            Error::AmbiguousBranch(_) => "ambiguous_branch",
            Error::Degenerate(_) => "degenerate",
            Error::NonScalarCasimir => "non_scalar_casimir",
            Error::NonInvertibleSubstitution(_) => "non_invertible_substitution",
            Error::ValuationOutOfRange(_) => "valuation_out_of_range",
            Error::NoCanonicalForm(_) => "no_canonical_form",
            Error::CasimirOne => "casimir_one",
            Error::ConstraintViolated(_) => "constraint_violated",
            Error::RootNotInField(_) => "root_not_in_field",
            Error::NotProportional(_) => "not_proportional",
            Error::NonCommutativeDivision => "non_commutative_division",
            Error::Parse { .. } => "parse",
            Error::TooManyParameters(_) => "too_many_parameters",
            Error::Precondition(_) => "precondition",
        }
    }
}
