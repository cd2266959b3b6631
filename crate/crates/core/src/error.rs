use std::fmt;

use thiserror::Error;

/// A hypothesis of the main theorem that an input failed to satisfy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Hypothesis {
    EvenDimension,
    CharacteristicTwo,
    NotSolvable,
    NotIrreducible,
    NotIsometries,
    DegenerateForm,
    NoInvariantForm,
}

impl Hypothesis {
    /// Stable machine-readable reason string.
    pub fn reason(&self) -> &'static str {
        match self {
            Hypothesis::EvenDimension => "dimension even",
            Hypothesis::CharacteristicTwo => "characteristic 2",
            Hypothesis::NotSolvable => "not solvable",
            Hypothesis::NotIrreducible => "not irreducible",
            Hypothesis::NotIsometries => "generators are not isometries",
            Hypothesis::DegenerateForm => "form degenerate",
            Hypothesis::NoInvariantForm => "no invariant nondegenerate form",
        }
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.reason())
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("characteristic 2 is unsupported: for odd n the radical of the polarization is nonzero")]
    CharacteristicTwo,
    #[error("field of order {0} exceeds the supported size 2^16")]
    FieldTooLarge(u64),
    #[error("modulus is not irreducible of the requested degree")]
    ReducibleModulus,
    #[error("no embedding of the source field into the target field")]
    NoEmbedding,
    #[error("subspace is not stable under the Frobenius map")]
    NotGaloisStable,
    #[error("matrix is not square")]
    NonSquare,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("scalar diagonal form requires odd dimension")]
    EvenDimension,
    #[error("quadratic form is degenerate")]
    DegenerateForm,
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("gram matrix is not a scalar matrix")]
    NonScalarForm,
    #[error("decomposition is not invariant: {0}")]
    NotInvariant(String),
    #[error("decomposition is invalid: {0}")]
    InvalidDecomposition(String),
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("group enumeration exceeded the bound of {0} elements")]
    BoundExceeded(usize),
    #[error("group is trivial")]
    TrivialGroup,
    #[error("zero vector")]
    ZeroVector,
    #[error("no algebra element with a suitable null space was found")]
    NoSuitableWord,
    #[error("group is not abelian")]
    NotAbelian,
    #[error("p-part of the abelian group acts nontrivially (order not coprime to the characteristic)")]
    NotCoprime,
    #[error("element is not semisimple (minimal polynomial not squarefree)")]
    NotSemisimple,
    #[error("matrix is not an isometry of the form")]
    NotIsometry,
    #[error("pairing violation: {0}")]
    PairingViolation(String),
    #[error("homogeneous components pair isotropically (W + W*), impossible in odd dimension: {0}")]
    ParityViolation(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(Hypothesis),
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("certificate check failed: {0}")]
    CertificateCheckFailed(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
