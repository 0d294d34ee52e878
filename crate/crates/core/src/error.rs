use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds the supported range")]
    ModulusTooLarge(u64),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("denominator vanishes modulo {modulus}")]
    DenominatorVanishes { modulus: u64 },
    #[error("scalar belongs to an incompatible field")]
    Incompatible,
}

/// Violations of the quiver / path / relation invariants.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow `{0}`")]
    DuplicateArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("invalid identifier `{0}`")]
    InvalidIdentifier(String),
    #[error("arrows `{left}` and `{right}` do not compose: `{left}` must start where `{right}` ends")]
    NotComposable { left: String, right: String },
    #[error("relation terms are not parallel: `{first}` and `{other}` have different endpoints")]
    NotParallel { first: String, other: String },
    #[error("relation term `{0}` has length < 2")]
    RelationTooShort(String),
    #[error("zero coefficient on `{0}`")]
    ZeroCoefficient(String),
    #[error("path `{0}` occurs twice in one relation")]
    RepeatedPath(String),
    #[error("empty relation")]
    EmptyRelation,
    #[error("generated identifiers collide: `{0}`")]
    NameCollision(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error(transparent)]
    Invalid(#[from] PresentationError),
}

/// A DSL error with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdmissibilityError {
    #[error("cutoff insufficient: some path of length {cutoff} does not vanish modulo the relations")]
    CutoffInsufficient { cutoff: usize },
    #[error("cutoff must be at least 2, got {0}")]
    CutoffTooSmall(usize),
    #[error("path enumeration up to length {length} exceeds {limit} paths")]
    TooManyPaths { length: usize, limit: usize },
    #[error("computation cancelled")]
    Cancelled,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("element belongs to a different algebra")]
    ForeignElement,
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("idempotent is not a sum of primitive idempotents")]
    UnsupportedIdempotent,
    #[error("invalid algebra data: {0}")]
    InvalidData(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("module is defined over a different algebra")]
    WrongAlgebra,
    #[error("resolution is not exact at degree {0}")]
    NotExact(usize),
    #[error("resolution component {0} is not a sum of indecomposable projectives")]
    NotProjective(usize),
    #[error("computation cancelled")]
    Cancelled,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairError {
    #[error("input {which}: {source}")]
    Admissibility { which: char, source: AdmissibilityError },
    #[error("inputs are over different fields ({a} and {b})")]
    FieldMismatch { a: crate::field::Field, b: crate::field::Field },
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Module(#[from] ModuleError),
}
