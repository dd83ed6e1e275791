//! Holonomy phases picked up by a charged wave function transported around
//! the solenoid, and a two-beam interference model that carries them.
//!
//! Convention: after one loop the wave function is multiplied by
//! `exp(−iθ)` with `θ = q ∮ A·dℓ`. Only `θ mod 2π` is stored.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::SolenoidField;
use crate::geometry::{circulation, ClosedPath};
use crate::quadrature::QuadratureSpec;

/// Default tolerance for comparing phases on the circle.
pub const PHASE_TOL: f64 = 1e-9;

/// Tolerance used by [`periodicity_check`].
pub const PERIODICITY_TOL: f64 = 1e-12;

/// The argument `θ ∈ [0, 2π)` of a phase factor `exp(−iθ)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct PhaseFactor {
    angle: f64,
}

impl PhaseFactor {
    /// Reduces an arbitrary finite angle into `[0, 2π)`.
    pub fn from_angle(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::NonFinite("phase angle"));
        }
        let mut angle = theta.rem_euclid(TAU);
        if angle >= TAU {
            angle = 0.0;
        }
        Ok(PhaseFactor { angle })
    }

    /// Phase of `t` full turns, i.e. `θ = 2π t`. Reducing `t` modulo 1 first
    /// keeps large arguments accurate.
    pub fn from_turns(t: f64) -> Result<Self> {
        if !t.is_finite() {
            return Err(Error::NonFinite("phase turns"));
        }
        PhaseFactor::from_angle(TAU * t.rem_euclid(1.0))
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    /// `(cos θ, −sin θ)`, the real and imaginary parts of `exp(−iθ)`.
    pub fn factor(&self) -> (f64, f64) {
        let (s, c) = self.angle.sin_cos();
        (c, -s)
    }

    /// Shortest distance between the two angles on the circle.
    pub fn distance(&self, other: &PhaseFactor) -> f64 {
        let d = (self.angle - other.angle).abs();
        d.min(TAU - d)
    }

    pub fn approx_eq(&self, other: &PhaseFactor, tol: f64) -> bool {
        self.distance(other) <= tol
    }
}

/// Phase acquired along `path` by a particle of charge `q`, from the
/// numerically integrated circulation.
pub fn holonomy(
    f: &SolenoidField,
    path: &ClosedPath,
    q: f64,
    spec: &QuadratureSpec,
) -> Result<PhaseFactor> {
    let circ = circulation(f, path, spec)?;
    PhaseFactor::from_angle(q * circ)
}

/// `2π q γ w mod 2π` without quadrature. Fails only on non-finite input.
pub fn phase_closed_form(q: f64, gamma: f64, w: i64) -> Result<PhaseFactor> {
    PhaseFactor::from_turns(q * gamma * w as f64)
}

/// True when `q (γ₁ − γ₂)` is within `tol` of an integer, i.e. the two
/// potentials give the same phase for charge `q`.
pub fn phases_equivalent(q: f64, gamma1: f64, gamma2: f64, tol: f64) -> bool {
    let x = q * (gamma1 - gamma2);
    (x - x.round()).abs() <= tol
}

/// Checks that shifting `γ` by `1/q` leaves the phase unchanged.
pub fn periodicity_check(q: f64, gamma: f64) -> Result<bool> {
    if q == 0.0 {
        return Err(Error::ZeroCharge);
    }
    let base = phase_closed_form(q, gamma, 1)?;
    let shifted = phase_closed_form(q, gamma + 1.0 / q, 1)?;
    Ok(shifted.approx_eq(&base, PERIODICITY_TOL))
}

/// Far-field two-slit set-up with the solenoid between the slits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct InterferometerGeometry {
    pub slit_separation: f64,
    pub screen_distance: f64,
    pub wavenumber: f64,
    pub half_extent: f64,
    pub samples: usize,
}

impl Default for InterferometerGeometry {
    // one fringe per 2π of screen coordinate
    fn default() -> Self {
        InterferometerGeometry {
            slit_separation: 1.0,
            screen_distance: 100.0,
            wavenumber: 100.0,
            half_extent: 10.0,
            samples: 201,
        }
    }
}

impl InterferometerGeometry {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("slit_separation", self.slit_separation),
            ("screen_distance", self.screen_distance),
            ("wavenumber", self.wavenumber),
            ("half_extent", self.half_extent),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidGeometry(format!("{name} = {v}")));
            }
        }
        if self.samples < 2 {
            return Err(Error::InvalidGeometry(format!("samples = {}", self.samples)));
        }
        Ok(())
    }

    /// Screen distance between neighbouring maxima.
    pub fn fringe_spacing(&self) -> f64 {
        TAU * self.screen_distance / (self.wavenumber * self.slit_separation)
    }
}

/// Fringe displacement in units of the fringe spacing, `qγ mod 1`.
pub fn fringe_shift(q: f64, gamma: f64) -> f64 {
    (q * gamma).rem_euclid(1.0)
}

/// Samples `I(x) = 1 + cos(k d x / D − Δφ)` uniformly on the screen, where
/// `Δφ` is the single-loop holonomy phase `2πqγ mod 2π`.
pub fn interference(
    f: &SolenoidField,
    q: f64,
    geom: &InterferometerGeometry,
) -> Result<Vec<(f64, f64)>> {
    geom.validate()?;
    let dphi = PhaseFactor::from_turns(q * f.gamma())?.angle();
    let k = geom.wavenumber * geom.slit_separation / geom.screen_distance;
    let last = (geom.samples - 1) as f64;
    Ok((0..geom.samples)
        .map(|i| {
            let x = geom.half_extent * ((2 * i) as f64 / last - 1.0);
            (x, 1.0 + (k * x - dphi).cos())
        })
        .collect())
}
