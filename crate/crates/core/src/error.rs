use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of a function (e.g. `ln` of a
    /// non-positive intermediate).
    Domain { what: &'static str, value: f64 },
    /// Composition depth beyond what double precision can represent.
    DepthCap { depth: u32, max: u32 },
    /// A result exceeds the floating-point range.
    Overflow { what: &'static str, at: f64 },
    /// Dimension not supported by the requested path.
    Dimension { d: u32, required: &'static str },
    InvalidArgument(String),
    /// Adaptive quadrature exhausted its evaluation budget.
    NonConvergence {
        evaluations: usize,
        error_estimate: f64,
        tolerance: f64,
    },
    /// The integrand produced NaN or an infinity.
    NotANumber { abscissa: f64 },
    /// Potential evaluation failed at a grid point.
    AtGridPoint { index: usize, source: Box<Error> },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// True for failures of the numerical machinery, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::Overflow { .. } | Error::NonConvergence { .. } | Error::NotANumber { .. } => {
                true
            }
            Error::AtGridPoint { source, .. } => source.is_numerical(),
            _ => false,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => write!(f, "domain error in {what} at {value:e}"),
            Error::DepthCap { depth, max } => {
                write!(f, "composition depth {depth} exceeds the supported maximum {max}")
            }
            Error::Overflow { what, at } => write!(f, "overflow in {what} at {at:e}"),
            Error::Dimension { d, required } => {
                write!(f, "dimension {d} not supported here (requires {required})")
            }
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::NonConvergence {
                evaluations,
                error_estimate,
                tolerance,
            } => write!(
                f,
                "quadrature did not converge after {evaluations} evaluations \
                 (error estimate {error_estimate:e}, tolerance {tolerance:e})"
            ),
            Error::NotANumber { abscissa } => write!(f, "integrand is not finite at x = {abscissa:e}"),
            Error::AtGridPoint { index, source } => write!(f, "at grid point {index}: {source}"),
        }
    }
}

impl core::error::Error for Error {}
