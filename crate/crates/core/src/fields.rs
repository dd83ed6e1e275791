//! The solenoid configuration: a uniform field `B ẑ` inside a cylinder of
//! radius `R` about the z-axis, nothing outside, and the family of vector
//! potentials `B ρ/2 φ̂` (inside) / `γ/ρ φ̂` (outside).
//!
//! Natural units throughout (ħ = c = 1, charges dimensionless).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative half-width of the band around `ρ = R` where the field is undefined.
pub const BOUNDARY_REL_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(&self, other: &Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

/// A point in space, stored in Cartesian components. Cylindrical coordinates
/// are derived on demand.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Point {
    x: f64,
    y: f64,
    z: f64,
}

impl Point {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(Error::NonFinite("point"));
        }
        Ok(Point { x, y, z })
    }

    /// Builds a point from `(ρ, φ, z)`; `ρ` must be non-negative.
    pub fn cylindrical(rho: f64, phi: f64, z: f64) -> Result<Self> {
        if rho.is_nan() || rho < 0.0 {
            return Err(Error::InvalidRadius(rho));
        }
        Point::new(rho * phi.cos(), rho * phi.sin(), z)
    }

    pub(crate) fn xyz_unchecked(x: f64, y: f64, z: f64) -> Self {
        Point { x, y, z }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    /// Distance from the z-axis.
    pub fn rho(&self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Azimuth in `[0, 2π)`. Undefined on the axis.
    pub fn phi(&self) -> Result<f64> {
        if self.x == 0.0 && self.y == 0.0 {
            return Err(Error::AzimuthUndefined);
        }
        let phi = self.y.atan2(self.x).rem_euclid(std::f64::consts::TAU);
        // rem_euclid can round up to exactly TAU for tiny negative angles
        Ok(if phi >= std::f64::consts::TAU { 0.0 } else { phi })
    }

    pub fn as_vec(&self) -> Vec3 {
        Vec3::new(self.x, self.y, self.z)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [x, y, z] = <[f64; 3]>::deserialize(d)?;
        Point::new(x, y, z).map_err(serde::de::Error::custom)
    }
}

/// Which side of the solenoid surface a point lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Interior,
    Exterior,
}

#[derive(Deserialize)]
struct FieldRepr {
    #[serde(rename = "B")]
    b: f64,
    #[serde(rename = "R")]
    r: f64,
    gamma: f64,
}

/// Solenoid of radius `R` with interior field strength `B` and exterior
/// potential coefficient `γ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FieldRepr")]
pub struct SolenoidField {
    #[serde(rename = "B")]
    b: f64,
    #[serde(rename = "R")]
    r: f64,
    gamma: f64,
}

impl TryFrom<FieldRepr> for SolenoidField {
    type Error = Error;

    fn try_from(repr: FieldRepr) -> Result<Self> {
        SolenoidField::new(repr.b, repr.r, repr.gamma)
    }
}

impl SolenoidField {
    pub fn new(b: f64, r: f64, gamma: f64) -> Result<Self> {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::InvalidRadius(r));
        }
        if !b.is_finite() {
            return Err(Error::NonFinite("field strength B"));
        }
        if !gamma.is_finite() {
            return Err(Error::NonFinite("gamma"));
        }
        Ok(SolenoidField { b, r, gamma })
    }

    /// Builds the field from `B`, `R` and the offset `κ` so that `γ = B R²/2 + κ`.
    pub fn with_kappa(b: f64, r: f64, kappa: f64) -> Result<Self> {
        SolenoidField::new(b, r, 0.5 * b * r * r + kappa)
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn radius(&self) -> f64 {
        self.r
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `κ = γ − B R²/2`, the deviation from the continuous choice.
    pub fn kappa(&self) -> f64 {
        self.gamma - 0.5 * self.b * self.r * self.r
    }

    /// Magnetic flux through the solenoid cross-section, `π B R²`.
    pub fn enclosed_flux(&self) -> f64 {
        std::f64::consts::PI * self.b * self.r * self.r
    }

    pub fn boundary_eps(&self) -> f64 {
        BOUNDARY_REL_EPS * self.r
    }

    /// Classifies a cylindrical radius, failing inside the undefined band.
    pub fn region_of(&self, rho: f64) -> Result<Region> {
        let d = rho - self.r;
        if d.abs() <= self.boundary_eps() {
            Err(Error::FieldUndefinedOnSolenoid {
                rho,
                radius: self.r,
            })
        } else if d < 0.0 {
            Ok(Region::Interior)
        } else {
            Ok(Region::Exterior)
        }
    }

    /// Potential in the xy-plane, Cartesian components `(A_x, A_y)`.
    pub(crate) fn potential_xy(&self, x: f64, y: f64) -> Result<(f64, f64)> {
        match self.region_of(x.hypot(y))? {
            Region::Interior => {
                let k = 0.5 * self.b;
                Ok((-k * y, k * x))
            }
            Region::Exterior => Ok(self.exterior_potential_xy(x, y)),
        }
    }

    // Exterior branch γ/ρ φ̂, off-axis only.
    fn exterior_potential_xy(&self, x: f64, y: f64) -> (f64, f64) {
        let k = self.gamma / (x * x + y * y);
        (-k * y, k * x)
    }
}

/// Magnetic field: `B ẑ` inside, zero outside.
pub fn eval_b(f: &SolenoidField, p: &Point) -> Result<Vec3> {
    match f.region_of(p.rho())? {
        Region::Interior => Ok(Vec3::new(0.0, 0.0, f.b)),
        Region::Exterior => Ok(Vec3::ZERO),
    }
}

/// Vector potential in Cartesian components. Zero on the axis.
pub fn eval_a(f: &SolenoidField, p: &Point) -> Result<Vec3> {
    let (ax, ay) = f.potential_xy(p.x, p.y)?;
    Ok(Vec3::new(ax, ay, 0.0))
}

/// Central-difference curl of [`eval_a`] with step `h` along each axis.
///
/// The whole six-point stencil must sit on one side of the solenoid surface,
/// clear of the undefined band.
pub fn curl_fd(f: &SolenoidField, p: &Point, h: f64) -> Result<Vec3> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::InvalidStep(h));
    }
    let crosses = || Error::StencilCrossesSolenoid { rho: p.rho(), step: h };
    let side = f.region_of(p.rho()).map_err(|_| crosses())?;

    let shifted = |dx: f64, dy: f64, dz: f64| -> Result<Vec3> {
        let q = Point::xyz_unchecked(p.x + dx, p.y + dy, p.z + dz);
        match f.region_of(q.rho()) {
            Ok(r) if r == side => eval_a(f, &q),
            _ => Err(crosses()),
        }
    };

    let xp = shifted(h, 0.0, 0.0)?;
    let xm = shifted(-h, 0.0, 0.0)?;
    let yp = shifted(0.0, h, 0.0)?;
    let ym = shifted(0.0, -h, 0.0)?;
    let zp = shifted(0.0, 0.0, h)?;
    let zm = shifted(0.0, 0.0, -h)?;

    let two_h = 2.0 * h;
    let d = |plus: f64, minus: f64| (plus - minus) / two_h;
    Ok(Vec3::new(
        d(yp.z, ym.z) - d(zp.y, zm.y),
        d(zp.x, zm.x) - d(xp.z, xm.z),
        d(xp.y, xm.y) - d(yp.x, ym.x),
    ))
}

/// The continuous choice `γ = B R²/2` (so `κ = 0`).
pub fn ab_standard(b: f64, r: f64) -> Result<SolenoidField> {
    SolenoidField::with_kappa(b, r, 0.0)
}

/// Adds `(κ/ρ) φ̂` to the exterior potential, i.e. `γ → γ + κ`. The interior
/// branch and the magnetic field are untouched.
pub fn gauge_shift(f: &SolenoidField, kappa_delta: f64) -> SolenoidField {
    SolenoidField {
        gamma: f.gamma + kappa_delta,
        ..*f
    }
}
