//! Error type shared across the crate.

use core::fmt;

/// Everything that can go wrong while evaluating kernels or integrals.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Evaluation point coincides with a pole of the kernel.
    Pole { what: &'static str },
    /// Argument outside the domain a routine is specified for.
    Domain { what: &'static str },
    /// A point lies outside the analyticity band required here.
    OutOfBand { what: &'static str },
    /// An iteration or series failed to reach the requested tolerance.
    NonConvergent { what: &'static str },
    /// Two evaluation points collide where a difference kernel is singular.
    CoincidentPoints,
    /// A generator was placed outside the strip its branch lives on.
    StripViolation { im: f64, lo: f64, hi: f64 },
    /// Elliptic modulus out of range (need 0 < k < 1, or a tau giving one).
    InvalidModulus,
    /// Principal-value quadrature detected a pole of order > 1.
    PoleOrder,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Pole { what } => write!(f, "evaluation at a pole: {what}"),
            Error::Domain { what } => write!(f, "argument outside domain: {what}"),
            Error::OutOfBand { what } => write!(f, "point outside analyticity band: {what}"),
            Error::NonConvergent { what } => write!(f, "failed to converge: {what}"),
            Error::CoincidentPoints => write!(f, "coincident evaluation points"),
            Error::StripViolation { im, lo, hi } => {
                write!(f, "imaginary part {im} outside strip ({lo}, {hi})")
            }
            Error::InvalidModulus => write!(f, "elliptic modulus outside (0, 1)"),
            Error::PoleOrder => write!(f, "principal value undefined: pole order exceeds 1"),
        }
    }
}

impl core::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
