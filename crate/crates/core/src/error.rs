//! Error type shared by the whole crate.
//!
//! Convention: violations of mathematical preconditions that indicate caller
//! bugs (dimension mismatches between group points, non-positive dilation
//! factors) panic, like the rest of the Rust numerics ecosystem. Conditions
//! that depend on runtime data — grid shapes, symbol bandwidth, quadrature
//! health — are reported through this enum.

use core::fmt;

/// Errors produced by grid, quadrature and representation routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Two grid-backed values live on different grids.
    GridMismatch,
    /// A grid axis size is not a power of two.
    NotPowerOfTwo(usize),
    /// A symbol varies too fast for the grid: relative Fourier tail mass.
    BandwidthExceeded { tail_mass: f64 },
    /// A Planck parameter of zero was supplied where a quantum fiber was
    /// requested.
    ZeroPlanck,
    /// An operator claimed Hermitian deviates from its adjoint by this much.
    NonHermitian { deviation: f64 },
    /// Time integration diverged (norm grew past the blow-up threshold).
    BlowUp { norm: f64 },
    /// A polynomial symbol exceeds the degree supported by the default grid.
    DegreeTooHigh { degree: u32, max: u32 },
    /// The quadrature tail estimate did not fall below the requested bound.
    QuadratureNonconvergence { tail: f64 },
    /// The operation is not defined for this symbol class
    /// (e.g. differentiating the dilation-invariant Gaussian mode).
    UnsupportedSymbolClass,
    /// Rescaled sweep coordinates leave the wave grid.
    OutOfBand { required: f64, available: f64 },
    /// The observable's term list grew past the supported size during
    /// analytic time integration.
    TermBlowUp { terms: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::GridMismatch => write!(f, "operands live on different grids"),
            Error::NotPowerOfTwo(n) => write!(f, "grid size {n} is not a power of two"),
            Error::BandwidthExceeded { tail_mass } => {
                write!(f, "symbol exceeds grid bandwidth (Fourier tail mass {tail_mass:.3e})")
            }
            Error::ZeroPlanck => write!(f, "Planck parameter must be nonzero"),
            Error::NonHermitian { deviation } => {
                write!(f, "operator is not Hermitian (max |A - A^*| = {deviation:.3e})")
            }
            Error::BlowUp { norm } => write!(f, "time integration diverged (norm {norm:.3e})"),
            Error::DegreeTooHigh { degree, max } => {
                write!(f, "polynomial symbol degree {degree} exceeds supported degree {max}")
            }
            Error::QuadratureNonconvergence { tail } => {
                write!(f, "quadrature tail estimate {tail:.3e} above bound")
            }
            Error::UnsupportedSymbolClass => {
                write!(f, "operation not defined for this symbol class")
            }
            Error::OutOfBand { required, available } => write!(
                f,
                "rescaled coordinates need halfwidth {required:.3} but grid provides {available:.3}"
            ),
            Error::TermBlowUp { terms } => {
                write!(f, "symbol term list grew to {terms} terms during integration")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
