use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report.
///
/// Each variant maps to a stable machine-readable code through
/// [`Error::code`], which the command line front end prints and writes into
/// sweep output.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("reference basis is singular: {0}")]
    SingularBasis(String),
    #[error("d∘d ≠ 0 in degree {degree} (residual {residual:.3e})")]
    NotAComplex { degree: usize, residual: f64 },
    #[error("degree {degree} has nontrivial homology but no homology basis was supplied")]
    MissingHomologyBasis { degree: usize },
    #[error("supplied vectors in degree {degree} are not a homology basis: {reason}")]
    InvalidHomologyBasis { degree: usize, reason: String },
    #[error("degenerate basis system in degree {degree}")]
    DegenerateLift { degree: usize },
    #[error("sequence is not short exact in degree {degree}: {reason}")]
    NotExact { degree: usize, reason: String },
    #[error(
        "bases incompatible with the short exact sequence in degree {degree} ([c'c''/c] = {det})"
    )]
    IncompatibleBases { degree: usize, det: String },

    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("relator {index} violated by the representation (‖ρ(r) − I‖ = {residual:.3e})")]
    RelatorViolation { index: usize, residual: f64 },
    #[error("matrix is not unimodular (|det − 1| = {0:.3e})")]
    NotUnimodular(f64),
    #[error("representation cannot be conjugated into SU(2): {0}")]
    NotUnitarizable(String),

    #[error("fiber restriction is reducible (dim H⁰(F) = {fixed_dim})")]
    ReducibleFiber { fixed_dim: usize },
    #[error("character is reducible (trace of commutator = {0})")]
    ReducibleCharacter(String),
    #[error("coboundary space not preserved by the monodromy action (residual {0:.3e})")]
    CoboundariesNotPreserved(f64),
    #[error("no eigenvalue within tolerance of 1: representation is not regular")]
    NoUnitEigenvalue,
    #[error("{count} eigenvalues within tolerance of 1: unit eigenvalue is not simple")]
    NonSimpleUnitEigenvalue { count: usize },
    #[error("eigenvalue {0} too close to 1 in the torsion product")]
    UnitEigenvalueDivision(String),
    #[error("eigenvalue computation did not converge")]
    EigenFailure,
    #[error("det(I − φ*) = 0: monodromy is not that of a fibered knot")]
    DegenerateMonodromy,
    #[error("invalid knot definition: {0}")]
    InvalidKnot(String),
    #[error("operation requires a genus-1 knot with a trace-coordinate map")]
    NoTraceMap,
    #[error(
        "character is not fixed by the monodromy: no intertwiner (smallest singular value {0:.3e})"
    )]
    NoIntertwiner(f64),
    #[error("intertwiner is singular")]
    SingularIntertwiner,
    #[error("unsupported fixed locus: {0}")]
    UnsupportedLocus(String),

    #[error("torus knot parameters are not coprime: gcd({p}, {q}) ≠ 1")]
    NotCoprime { p: u32, q: u32 },
    #[error("torus knot parameter a = {a} outside 0 < a < {p}")]
    AOutOfRange { a: u32, p: u32 },
    #[error("torus knot parameter b = {b} outside 0 < b < {q}")]
    BOutOfRange { b: u32, q: u32 },
    #[error("torus knot parameters violate a ≡ b (mod 2): a = {a}, b = {b}")]
    ParityViolation { a: u32, b: u32 },

    #[error("unknown knot `{0}`")]
    UnknownKnot(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "DIMENSION_MISMATCH",
            Error::SingularBasis(_) => "SINGULAR_BASIS",
            Error::NotAComplex { .. } => "NOT_A_COMPLEX",
            Error::MissingHomologyBasis { .. } => "MISSING_HOMOLOGY_BASIS",
            Error::InvalidHomologyBasis { .. } => "INVALID_HOMOLOGY_BASIS",
            Error::DegenerateLift { .. } => "DEGENERATE_LIFT",
            Error::NotExact { .. } => "NOT_EXACT",
            Error::IncompatibleBases { .. } => "INCOMPATIBLE_BASES",
            Error::Parse(_) => "PARSE_ERROR",
            Error::UnknownGenerator(_) => "UNKNOWN_GENERATOR",
            Error::RelatorViolation { .. } => "RELATOR_VIOLATION",
            Error::NotUnimodular(_) => "NOT_UNIMODULAR",
            Error::NotUnitarizable(_) => "NOT_UNITARIZABLE",
            Error::ReducibleFiber { .. } => "REDUCIBLE_FIBER",
            Error::ReducibleCharacter(_) => "REDUCIBLE_CHARACTER",
            Error::CoboundariesNotPreserved(_) => "COBOUNDARIES_NOT_PRESERVED",
            Error::NoUnitEigenvalue => "NO_UNIT_EIGENVALUE",
            Error::NonSimpleUnitEigenvalue { .. } => "NON_SIMPLE_UNIT_EIGENVALUE",
            Error::UnitEigenvalueDivision(_) => "UNIT_EIGENVALUE_DIVISION",
            Error::EigenFailure => "EIGEN_FAILURE",
            Error::DegenerateMonodromy => "DEGENERATE_MONODROMY",
            Error::InvalidKnot(_) => "INVALID_KNOT",
            Error::NoTraceMap => "NO_TRACE_MAP",
            Error::NoIntertwiner(_) => "NO_INTERTWINER",
            Error::SingularIntertwiner => "SINGULAR_INTERTWINER",
            Error::UnsupportedLocus(_) => "UNSUPPORTED_LOCUS",
            Error::NotCoprime { .. } => "NOT_COPRIME",
            Error::AOutOfRange { .. } => "A_OUT_OF_RANGE",
            Error::BOutOfRange { .. } => "B_OUT_OF_RANGE",
            Error::ParityViolation { .. } => "PARITY_VIOLATION",
            Error::UnknownKnot(_) => "UNKNOWN_KNOT",
            Error::Io(_) => "IO_ERROR",
        }
    }
}
