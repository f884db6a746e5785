use thiserror::Error;

/// Every failure the library can surface. `code()` gives a stable
/// machine-readable tag used by the command-line driver.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("context mismatch: {0} vs {1}")]
    ContextMismatch(String, String),
    #[error("division by an element indistinguishable from zero")]
    DivisionByZero,
    #[error("element is not a unit: {0}")]
    NotAUnit(String),
    #[error("residue {0} is not coprime to p = {1}")]
    NotCoprime(i64, u64),
    #[error("all coefficients vanish at the working precision")]
    ZeroPolynomial,
    #[error("precision insufficient: {0}")]
    PrecisionInsufficient(String),
    #[error("invalid context: {0}")]
    InvalidContext(String),
    #[error("invalid field data: {0}")]
    InvalidField(String),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("invalid character: {0}")]
    InvalidCharacter(String),
    #[error("context lacks the needed roots of unity: {0}")]
    MissingRootOfUnity(String),
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("matrix not in Sigma_0(p): {0}")]
    NotInSigma0(String),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("truncation too shallow: {0}")]
    TruncationTooShallow(String),
    #[error("non-critical character: {0}")]
    NonCritical(String),
    #[error("level too large: {0}")]
    LevelTooLarge(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("relation system unsolvable: {0}")]
    Unsolvable(String),
    #[error("iteration did not converge: {0}")]
    NonConvergence(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::ContextMismatch(..) => "E_CONTEXT_MISMATCH",
            Error::DivisionByZero => "E_DIV_ZERO",
            Error::NotAUnit(_) => "E_NOT_UNIT",
            Error::NotCoprime(..) => "E_NOT_COPRIME",
            Error::ZeroPolynomial => "E_ZERO_POLY",
            Error::PrecisionInsufficient(_) => "E_PRECISION",
            Error::InvalidContext(_) => "E_CONTEXT",
            Error::InvalidField(_) => "E_FIELD_INVALID",
            Error::InvalidModulus(_) => "E_MODULUS",
            Error::InvalidCharacter(_) => "E_CHARACTER",
            Error::MissingRootOfUnity(_) => "E_NO_ROOT_OF_UNITY",
            Error::InvalidWeight(_) => "E_WEIGHT",
            Error::NotInSigma0(_) => "E_NOT_SIGMA0",
            Error::SingularMatrix => "E_SINGULAR",
            Error::TruncationTooShallow(_) => "E_TRUNCATION",
            Error::NonCritical(_) => "E_NON_CRITICAL",
            Error::LevelTooLarge(_) => "E_LEVEL_TOO_LARGE",
            Error::Unsupported(_) => "E_UNSUPPORTED",
            Error::Unsolvable(_) => "E_UNSOLVABLE",
            Error::NonConvergence(_) => "E_NON_CONVERGENCE",
            Error::Precondition(_) => "E_PRECONDITION",
            Error::Parse(_) => "E_PARSE",
            Error::Io(_) => "E_IO",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
