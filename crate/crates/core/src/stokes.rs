//! Stokes' theorem on the disc `ρ < L`, split into the solenoid cross-section
//! `D₁ = {ρ < R}` and the annulus `D₂ = {R < ρ < L}` so that the potential
//! is C¹ on each piece.
//!
//! The boundary circles `Γ_I` (of `D₁`) and `Γ_R` (inner boundary of `D₂`)
//! both sit on `ρ = R`, where the field is undefined. They are evaluated as
//! one-sided limits: circulations at `ρ = R(1 ∓ δ)` for a few small `δ`,
//! extrapolated to `δ → 0`.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::{Region, SolenoidField};
use crate::geometry::{arc_circulation, circulation, disc_region_flux, segment_integral, Circle};
use crate::quadrature::QuadratureSpec;

/// Offsets (relative to `R`) used for the one-sided boundary limits.
pub const LIMIT_OFFSETS: [f64; 3] = [1e-4, 5e-5, 2.5e-5];

/// Fluxes and circulations of the decomposed disc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StokesReport {
    /// Flux through `D₁`, as the circulation of the interior branch on `Γ_I`.
    pub phi_1: f64,
    /// Flux through `D₂`, as `∮_{Γ_L} − ∮_{Γ_R}`.
    pub phi_2: f64,
    pub phi_total: f64,
    /// `∮_{Γ_L} A·dℓ` on the outer circle `ρ = L`.
    pub circ_outer: f64,
    /// `∮_{Γ_R} A·dℓ`, the exterior branch in the limit `ρ → R⁺`.
    pub circ_inner: f64,
    /// `circ_outer − phi_total`; equals `2πκ`.
    pub discrepancy: f64,
}

/// A report together with the configuration that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StokesRun {
    pub field: SolenoidField,
    #[serde(rename = "L")]
    pub l: f64,
    #[serde(flatten)]
    pub report: StokesReport,
}

fn check_outer_radius(f: &SolenoidField, l: f64) -> Result<()> {
    if !(l.is_finite() && l > f.radius() + 10.0 * f.boundary_eps()) {
        return Err(Error::InvalidRadius(l));
    }
    Ok(())
}

// Two computations of the same quantity agree if they are within ten
// tolerances of the larger of `scale` and the values themselves.
fn cross_check(what: &'static str, left: f64, right: f64, scale: f64, spec: &QuadratureSpec) -> Result<()> {
    let scale = scale.max(left.abs()).max(right.abs());
    let tol = 10.0 * spec.tolerance_for(scale).max(64.0 * f64::EPSILON * scale);
    if (left - right).abs() <= tol {
        Ok(())
    } else {
        Err(Error::StokesCrossCheckFailed { what, left, right })
    }
}

/// Richardson extrapolation of samples taken at `δ, δ/2, δ/4`, removing the
/// linear and quadratic terms in `δ`.
fn extrapolate(samples: [f64; 3]) -> f64 {
    let [c1, c2, c3] = samples;
    (8.0 * c3 - 6.0 * c2 + c1) / 3.0
}

/// Limit of the counterclockwise circulation over the arc `φ ∈ [phi0, phi1]`
/// of the circle `ρ = R` approached from `side`.
fn boundary_arc_limit(
    f: &SolenoidField,
    side: Region,
    phi0: f64,
    phi1: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let sign = match side {
        Region::Interior => -1.0,
        Region::Exterior => 1.0,
    };
    let mut samples = [0.0; 3];
    for (s, delta) in samples.iter_mut().zip(LIMIT_OFFSETS) {
        *s = arc_circulation(f, f.radius() * (1.0 + sign * delta), phi0, phi1, spec)?;
    }
    Ok(extrapolate(samples))
}

/// `∬_{D₁} B·dS` by polar quadrature over the solenoid cross-section.
pub fn phi_1_by_area(f: &SolenoidField, spec: &QuadratureSpec) -> Result<f64> {
    spec.validate()?;
    disc_region_flux(f, Region::Interior, 0.0, f.radius(), 0.0, TAU, spec)
}

/// `∮_{Γ_I} A_I·dℓ`, the interior branch on `ρ → R⁻`.
pub fn phi_1_by_circulation(f: &SolenoidField, spec: &QuadratureSpec) -> Result<f64> {
    spec.validate()?;
    boundary_arc_limit(f, Region::Interior, 0.0, TAU, spec)
}

/// `∮_{Γ_R} A_E·dℓ`, the exterior branch on `ρ → R⁺`.
pub fn inner_boundary_circulation(f: &SolenoidField, spec: &QuadratureSpec) -> Result<f64> {
    spec.validate()?;
    boundary_arc_limit(f, Region::Exterior, 0.0, TAU, spec)
}

/// Applies Stokes' theorem separately on `D₁` and `D₂` for the disc of
/// radius `l`, and compares the total flux with the outer circulation.
///
/// The flux through `D₁` is computed both as an area integral and as a
/// boundary circulation; disagreement is reported as
/// [`Error::StokesCrossCheckFailed`].
pub fn verify_stokes(f: &SolenoidField, l: f64, spec: &QuadratureSpec) -> Result<StokesReport> {
    spec.validate()?;
    check_outer_radius(f, l)?;

    let phi_1_area = phi_1_by_area(f, spec)?;
    let phi_1 = phi_1_by_circulation(f, spec)?;
    cross_check("phi_1 (area vs boundary)", phi_1_area, phi_1, 0.0, spec)?;

    let circ_outer = circulation(f, &Circle::centered(l, 1)?.into(), spec)?;
    let circ_inner = inner_boundary_circulation(f, spec)?;
    let phi_2 = circ_outer - circ_inner;
    let phi_total = phi_1 + phi_2;

    Ok(StokesReport {
        phi_1,
        phi_2,
        phi_total,
        circ_outer,
        circ_inner,
        discrepancy: circ_outer - phi_total,
    })
}

/// Recomputes the annulus flux chart by chart: `D₂` is cut along `φ = 0`
/// and `φ = π` into two half-annuli, Stokes is applied on each (boundary =
/// outer half-arc, inner half-arc, two radial cuts), and the sector results
/// are summed. Returns `|sector sum − φ₂|`.
///
/// Each sector's boundary circulation is also checked against its surface
/// integral.
pub fn chart_audit(f: &SolenoidField, l: f64, spec: &QuadratureSpec) -> Result<f64> {
    let report = verify_stokes(f, l, spec)?;
    let r_limit = f.radius() * (1.0 + LIMIT_OFFSETS[2]);

    let mut sector_sum = 0.0;
    for (phi0, phi1) in [(0.0, PI), (PI, TAU)] {
        let surface = disc_region_flux(f, Region::Exterior, f.radius(), l, phi0, phi1, spec)?;

        let outer = arc_circulation(f, l, phi0, phi1, spec)?;
        let inner = boundary_arc_limit(f, Region::Exterior, phi0, phi1, spec)?;
        let (c0, s0) = (phi0.cos(), phi0.sin());
        let (c1, s1) = (phi1.cos(), phi1.sin());
        // cut at phi1 runs inward, cut at phi0 outward
        let cut_in = segment_integral(f, (l * c1, l * s1), (r_limit * c1, r_limit * s1), spec)?;
        let cut_out = segment_integral(f, (r_limit * c0, r_limit * s0), (l * c0, l * s0), spec)?;

        let boundary = outer + cut_in - inner + cut_out;
        cross_check("sector (boundary vs surface)", boundary, surface, outer.abs() + inner.abs(), spec)?;
        sector_sum += boundary;
    }
    Ok((sector_sum - report.phi_2).abs())
}
