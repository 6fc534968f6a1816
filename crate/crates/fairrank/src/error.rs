//! Error type shared across the crate.

use std::fmt;

/// Errors produced by instance validation, objective evaluation, the solver,
/// analytics, and instance I/O.
#[derive(Debug)]
pub enum Error {
    /// A dimension field is inconsistent (empty matrix, slot count vs. item
    /// count, ranking shape vs. instance shape, ...).
    InvalidDimensions(String),
    /// A preference value is negative.
    NegativePreference { row: usize, col: usize, value: f64 },
    /// Exposure weights are not non-negative and non-increasing.
    NonMonotoneWeights { index: usize },
    /// A reciprocal instance has an asymmetric preference matrix.
    AsymmetricReciprocal { row: usize, col: usize },
    /// A group is empty, out of range, or the groups do not cover their side.
    InvalidGroups(String),
    /// A user or item index is outside the instance.
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        len: usize,
    },
    /// Two objects that must agree in shape do not.
    DimensionMismatch(String),
    /// Quality-weighted targets are undefined when total quality is zero.
    ZeroTotalQuality,
    /// `psi` / `psi_prime` called with a non-positive argument.
    NonPositiveArgument { x: f64, alpha: f64 },
    /// A penalty kind that only makes sense in another recommendation mode.
    WrongModeForKind(String),
    /// Group welfare requested on an instance without groups.
    MissingGroups,
    /// The pairwise penalty needs strictly positive qualities.
    ZeroQuality { item: usize },
    /// Two profiles compared for dominance have different lengths.
    LengthMismatch { left: usize, right: usize },
    /// A Lorenz curve was requested for a vector with negative entries.
    NegativeUtility { index: usize, value: f64 },
    /// The Gini index is undefined for an all-zero vector.
    ZeroTotal,
    /// The regret bound is only stated for theta = (1/2, alpha, alpha), alpha <= 1.
    UnsupportedTheta(String),
    /// The linear oracle received a non-finite gradient entry.
    NonFiniteGradient { index: usize },
    /// The objective failed while the solver was iterating.
    ObjectiveEvaluationFailure(String),
    /// Instance file could not be parsed; `line` is 1-based, `col` 1-based when known.
    Parse {
        line: usize,
        col: Option<usize>,
        msg: String,
    },
    /// Underlying I/O failure.
    Io(std::io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidDimensions(msg) => write!(f, "invalid dimensions: {msg}"),
            Error::NegativePreference { row, col, value } => {
                write!(f, "negative preference {value} at row {row}, col {col}")
            }
            Error::NonMonotoneWeights { index } => {
                write!(f, "exposure weights must be non-increasing and non-negative (violated at index {index})")
            }
            Error::AsymmetricReciprocal { row, col } => {
                write!(f, "reciprocal instance requires a symmetric preference matrix (mu[{row}][{col}] != mu[{col}][{row}])")
            }
            Error::InvalidGroups(msg) => write!(f, "invalid groups: {msg}"),
            Error::IndexOutOfRange { what, index, len } => {
                write!(f, "{what} index {index} out of range (len {len})")
            }
            Error::DimensionMismatch(msg) => write!(f, "dimension mismatch: {msg}"),
            Error::ZeroTotalQuality => write!(
                f,
                "total quality is zero; quality-weighted targets are undefined"
            ),
            Error::NonPositiveArgument { x, alpha } => {
                write!(
                    f,
                    "psi requires a positive argument for alpha <= 0 (got x={x}, alpha={alpha})"
                )
            }
            Error::WrongModeForKind(msg) => write!(f, "penalty kind not applicable: {msg}"),
            Error::MissingGroups => write!(f, "group welfare requires an instance with groups"),
            Error::ZeroQuality { item } => write!(
                f,
                "pairwise penalty requires positive qualities (item {item} has zero quality)"
            ),
            Error::LengthMismatch { left, right } => {
                write!(f, "profiles have different lengths ({left} vs {right})")
            }
            Error::NegativeUtility { index, value } => {
                write!(f, "negative utility {value} at index {index}")
            }
            Error::ZeroTotal => write!(f, "gini index is undefined for a zero-total vector"),
            Error::UnsupportedTheta(msg) => write!(f, "unsupported theta: {msg}"),
            Error::NonFiniteGradient { index } => {
                write!(f, "gradient entry {index} is not finite")
            }
            Error::ObjectiveEvaluationFailure(msg) => {
                write!(f, "objective evaluation failed: {msg}")
            }
            Error::Parse {
                line,
                col: Some(col),
                msg,
            } => write!(f, "parse error at line {line}, col {col}: {msg}"),
            Error::Parse {
                line,
                col: None,
                msg,
            } => write!(f, "parse error at line {line}: {msg}"),
            Error::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
