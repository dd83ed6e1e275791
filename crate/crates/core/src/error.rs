use thiserror::Error;

/// Every failure the library can report. Each variant has a stable name
/// returned by [`Error::code`], which the command-line front end prints on
/// standard error.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("field is undefined on the solenoid surface (rho = {rho}, R = {radius})")]
    FieldUndefinedOnSolenoid { rho: f64, radius: f64 },

    #[error("radius must be positive and finite, got {0}")]
    InvalidRadius(f64),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("azimuth is undefined on the z-axis")]
    AzimuthUndefined,

    #[error("finite-difference step must be positive and finite, got {0}")]
    InvalidStep(f64),

    #[error("finite-difference stencil of half-width {step} at rho = {rho} straddles or touches rho = R")]
    StencilCrossesSolenoid { rho: f64, step: f64 },

    #[error("path comes within {clearance} of the solenoid surface")]
    PathCrossesSolenoid { clearance: f64 },

    #[error("path touches the z-axis")]
    PathTouchesAxis,

    #[error("segment {segment} sweeps an azimuth of {delta} rad (|dphi| must stay below pi)")]
    WindingUnresolvable { segment: usize, delta: f64 },

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("invalid quadrature settings: {0}")]
    InvalidQuadrature(String),

    #[error("quadrature did not converge after {subdivisions} subdivisions (estimate {estimate}, error {error})")]
    QuadratureNotConverged {
        subdivisions: usize,
        estimate: f64,
        error: f64,
    },

    #[error("stokes cross-check failed for {what}: {left} vs {right}")]
    StokesCrossCheckFailed {
        what: &'static str,
        left: f64,
        right: f64,
    },

    #[error("charge must be nonzero")]
    ZeroCharge,

    #[error("invalid interferometer geometry: {0}")]
    InvalidGeometry(String),

    #[error("charge set is empty")]
    EmptyChargeSet,

    #[error("integer range is empty")]
    EmptyRange,

    #[error("cannot parse rational {0:?}")]
    ParseRational(String),

    #[error("spectrum denominator must be a positive integer")]
    InvalidDenominator,
}

impl Error {
    /// Stable machine-readable name of the error kind.
    pub fn code(&self) -> &'static str {
        match self {
            Error::FieldUndefinedOnSolenoid { .. } => "FieldUndefinedOnSolenoid",
            Error::InvalidRadius(_) => "InvalidRadius",
            Error::NonFinite(_) => "NonFinite",
            Error::AzimuthUndefined => "AzimuthUndefined",
            Error::InvalidStep(_) => "InvalidStep",
            Error::StencilCrossesSolenoid { .. } => "StencilCrossesSolenoid",
            Error::PathCrossesSolenoid { .. } => "PathCrossesSolenoid",
            Error::PathTouchesAxis => "PathTouchesAxis",
            Error::WindingUnresolvable { .. } => "WindingUnresolvable",
            Error::InvalidPath(_) => "InvalidPath",
            Error::InvalidQuadrature(_) => "InvalidQuadrature",
            Error::QuadratureNotConverged { .. } => "QuadratureNotConverged",
            Error::StokesCrossCheckFailed { .. } => "StokesCrossCheckFailed",
            Error::ZeroCharge => "ZeroCharge",
            Error::InvalidGeometry(_) => "InvalidGeometry",
            Error::EmptyChargeSet => "EmptyChargeSet",
            Error::EmptyRange => "EmptyRange",
            Error::ParseRational(_) => "ParseRational",
            Error::InvalidDenominator => "InvalidDenominator",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
