use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Errors produced by the numerical core.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A simplex was listed twice in the same degree.
    DuplicateSimplex(Vec<usize>),
    /// A simplex repeats one of its vertices.
    DegenerateSimplex(Vec<usize>),
    /// Weight not strictly positive (or not finite).
    InvalidWeight { simplex: Vec<usize>, weight: f64 },
    /// Weight list length does not match the simplex list of that degree.
    WeightCountMismatch { degree: usize, simplices: usize, weights: usize },
    EmptyComplex,
    DegreeOutOfRange { degree: usize, min: usize, max: usize },
    /// Cochain length or degree does not match the complex.
    CochainMismatch { expected_degree: usize, expected_len: usize, degree: usize, len: usize },
    InvalidExponent(f64),
    NegativeTime(f64),
    InvalidTolerance(f64),
    /// Operator is not self-adjoint with respect to the weighted inner product.
    NotSelfAdjoint { residual: f64 },
    NotPositiveSemidefinite { eigenvalue: f64 },
    ShapeMismatch { expected: (usize, usize), found: (usize, usize) },
    /// The spectrum has no nonzero part, so no decay rate exists.
    GapUnavailable,
    /// Quadrature horizon too short for the requested accuracy.
    HorizonTooShort { t_max: f64, required: f64 },
    /// Cochain is not closed (`d ω ≠ 0`).
    NotClosed { norm_d: f64, norm: f64 },
    InvalidParameter(String),
    /// A numerical certificate failed its tolerance.
    CertificateFailed { what: &'static str, value: f64, tolerance: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DuplicateSimplex(s) => write!(f, "duplicate simplex {s:?}"),
            Error::DegenerateSimplex(s) => write!(f, "simplex {s:?} repeats a vertex"),
            Error::InvalidWeight { simplex, weight } => {
                write!(f, "non-positive weight {weight} on simplex {simplex:?}")
            }
            Error::WeightCountMismatch { degree, simplices, weights } => write!(
                f,
                "degree {degree}: {weights} weights given for {simplices} simplices"
            ),
            Error::EmptyComplex => write!(f, "complex has no simplices"),
            Error::DegreeOutOfRange { degree, min, max } => {
                write!(f, "degree {degree} outside [{min}, {max}]")
            }
            Error::CochainMismatch { expected_degree, expected_len, degree, len } => write!(
                f,
                "cochain of degree {degree} with {len} values, expected degree {expected_degree} with {expected_len} values"
            ),
            Error::InvalidExponent(p) => write!(f, "exponent p = {p} is not in [1, inf]"),
            Error::NegativeTime(t) => write!(f, "time t = {t} must be nonnegative"),
            Error::InvalidTolerance(t) => write!(f, "tolerance {t} must be positive"),
            Error::NotSelfAdjoint { residual } => {
                write!(f, "operator not self-adjoint (relative residual {residual:e})")
            }
            Error::NotPositiveSemidefinite { eigenvalue } => {
                write!(f, "operator has negative eigenvalue {eigenvalue:e}")
            }
            Error::ShapeMismatch { expected, found } => {
                write!(f, "matrix shape {found:?}, expected {expected:?}")
            }
            Error::GapUnavailable => write!(f, "spectrum is {{0}}; no spectral gap"),
            Error::HorizonTooShort { t_max, required } => write!(
                f,
                "quadrature horizon t_max = {t_max} too short, need t_max >= {required}"
            ),
            Error::NotClosed { norm_d, norm } => {
                write!(f, "cochain is not closed: |d w| = {norm_d:e}, |w| = {norm:e}")
            }
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::CertificateFailed { what, value, tolerance } => {
                write!(f, "{what}: {value:e} exceeds tolerance {tolerance:e}")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
