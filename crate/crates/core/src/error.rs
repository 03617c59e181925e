use core::fmt;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An operation that needs a closed loop was handed an open path.
    OpenPath,
    /// A path needs at least `required` vertices.
    TooFewVertices { found: usize, required: usize },
    /// Two consecutive vertices coincide.
    RepeatedVertex { index: usize },
    /// A coordinate or parameter was NaN or infinite.
    NonFinite(&'static str),
    /// A scalar parameter is out of its admissible range.
    InvalidParameter {
        name: &'static str,
        reason: &'static str,
    },
    /// Zero-area polygon where an area-normalised quantity was requested.
    DegeneratePolygon,
    /// A vertex index past the end of the path.
    IndexOutOfRange { index: usize, len: usize },
    /// The pair (a, b) does not satisfy |a|² − |b|² = 1.
    NotInGroup { determinant: f64 },
    /// A point that should be fixed by a transformation is moved by `defect`.
    NotFixedPoint { defect: f64 },
    /// The holonomy is not elliptic, so it has no centre in the disk.
    NotElliptic,
    /// The parallelogram holonomy has no attracting fixed point.
    NotAttracting { im_bd: f64 },
    /// The parallelogram sides are parallel or negatively oriented.
    DegenerateParallelogram,
    /// Circle radius equal to the rod length: the asymptotic tractrix collapses
    /// to the centre and is only attracting from one side.
    CircleAtRodLength,
    /// Circle radius below the rod length: tractrices are cusped and there is
    /// no closed attractor.
    CircleInsideRodLength,
    /// Integration produced a non-finite value.
    NumericFailure(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::OpenPath => write!(f, "operation requires a closed path"),
            Error::TooFewVertices { found, required } => {
                write!(f, "path has {found} vertices, at least {required} required")
            }
            Error::RepeatedVertex { index } => {
                write!(f, "vertex {index} repeats its predecessor")
            }
            Error::NonFinite(what) => write!(f, "non-finite value in {what}"),
            Error::InvalidParameter { name, reason } => write!(f, "invalid {name}: {reason}"),
            Error::DegeneratePolygon => write!(f, "polygon has zero area"),
            Error::IndexOutOfRange { index, len } => {
                write!(f, "vertex index {index} out of range for path of {len} vertices")
            }
            Error::NotInGroup { determinant } => {
                write!(f, "|a|^2 - |b|^2 = {determinant}, expected 1")
            }
            Error::NotFixedPoint { defect } => {
                write!(f, "direction is not fixed by the holonomy (moved by {defect:e})")
            }
            Error::NotElliptic => write!(f, "holonomy is not elliptic"),
            Error::NotAttracting { im_bd } => {
                write!(f, "Im(conj(b) d) = {im_bd} <= 1: no attracting fixed point")
            }
            Error::DegenerateParallelogram => {
                write!(f, "parallelogram sides must be independent and positively oriented")
            }
            Error::CircleAtRodLength => write!(
                f,
                "radius equals rod length: the asymptotic tractrix reduces to the centre and is semi-attracting"
            ),
            Error::CircleInsideRodLength => write!(
                f,
                "radius below rod length: tractrices consist of regularly spaced cusps, no closed tractrix"
            ),
            Error::NumericFailure(what) => write!(f, "numeric failure: {what}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn ensure_finite(value: f64, what: &'static str) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite(what))
    }
}

pub(crate) fn ensure_positive(value: f64, name: &'static str) -> Result<f64> {
    ensure_finite(value, name)?;
    if value > 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            reason: "must be positive",
        })
    }
}
