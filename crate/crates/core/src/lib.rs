//! Numerical and exact-arithmetic toolkit for the Aharonov-Bohm solenoid:
//! the `γ/ρ` family of exterior potentials, Stokes checks on the disc split
//! at the solenoid surface, holonomy phases, and the charge-quantization
//! condition `q = n e / N` that follows from demanding `κ`-independent phases.

pub mod cli;
pub mod error;
pub mod fields;
pub mod geometry;
pub mod phase;
pub mod quadrature;
pub mod quantize;
pub mod stokes;

pub use error::{Error, Result};
pub use fields::{ab_standard, curl_fd, eval_a, eval_b, gauge_shift, Point, SolenoidField, Vec3};
pub use geometry::{circulation, flux_direct, winding_number, Circle, ClosedPath, Polyline};
pub use phase::{
    holonomy, interference, periodicity_check, phase_closed_form, phases_equivalent,
    InterferometerGeometry, PhaseFactor,
};
pub use quadrature::QuadratureSpec;
pub use quantize::{
    antiparticle_closure, charge_allowed, infer_minimal_n, kappa_allowed, kappa_constraints,
    spectrum, ChargeSpectrum, RationalCharge,
};
pub use stokes::{chart_audit, verify_stokes, StokesReport};
