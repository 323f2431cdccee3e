use core::fmt;

/// Failures of lattice construction and Voronoi cell computation.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The three basis vectors are (numerically) linearly dependent.
    DegenerateBasis { determinant: f64 },
    /// Cell lengths must be positive and angles inside (0, 180) degrees.
    InvalidCellParameters(&'static str),
    /// The cell angles admit no real basis.
    NonPositiveDefinite,
    /// The computed cell did not pass validation even at the fallback extent.
    CellValidationFailed { extent: u32 },
    /// Rotation grid resolution must be at least 1.
    InvalidGrid,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DegenerateBasis { determinant } => {
                write!(f, "degenerate basis (determinant {determinant:e})")
            }
            Error::InvalidCellParameters(what) => write!(f, "invalid cell parameters: {what}"),
            Error::NonPositiveDefinite => {
                write!(f, "cell angles do not define a positive definite metric")
            }
            Error::CellValidationFailed { extent } => {
                write!(
                    f,
                    "Voronoi cell failed validation at neighbor extent {extent}"
                )
            }
            Error::InvalidGrid => write!(f, "rotation grid resolution must be >= 1"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
