//! Closed paths, circulation of the vector potential along them, winding
//! numbers about the z-axis and direct flux integrals over discs.

use std::f64::consts::{PI, TAU};
use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{Point, Region, SolenoidField};
use crate::quadrature::{integrate, integrate_polar, QuadratureSpec};

/// Default clearance between a path and the solenoid surface, relative to `R`.
pub const PATH_REL_CLEARANCE: f64 = 1e-6;

/// A circle in a plane `z = const`, traversed `turns` times
/// (counterclockwise seen from `+z` when positive).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Circle {
    center: Point,
    radius: f64,
    turns: i64,
}

#[derive(Deserialize)]
struct CircleRepr {
    center: Point,
    radius: f64,
    #[serde(default = "one")]
    turns: i64,
}

fn one() -> i64 {
    1
}

impl<'de> Deserialize<'de> for Circle {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = CircleRepr::deserialize(d)?;
        Circle::new(repr.center, repr.radius, repr.turns).map_err(serde::de::Error::custom)
    }
}

impl Circle {
    pub fn new(center: Point, radius: f64, turns: i64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidRadius(radius));
        }
        if turns == 0 {
            return Err(Error::InvalidPath("circle must have a nonzero number of turns".into()));
        }
        Ok(Circle { center, radius, turns })
    }

    /// Circle centred on the z-axis in the plane `z = 0`.
    pub fn centered(radius: f64, turns: i64) -> Result<Self> {
        Circle::new(Point::new(0.0, 0.0, 0.0)?, radius, turns)
    }

    pub fn center(&self) -> Point {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn turns(&self) -> i64 {
        self.turns
    }

    // Range of ρ covered by the circle.
    fn rho_range(&self) -> (f64, f64) {
        let d = self.center.rho();
        ((d - self.radius).abs(), d + self.radius)
    }
}

/// A closed polygon; the last vertex connects back to the first.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Polyline {
    vertices: Vec<Point>,
}

impl Polyline {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidPath(format!(
                "polyline needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        Ok(Polyline { vertices })
    }

    /// Reads CSV rows `x,y,z`. A non-numeric first row is taken as a header.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_reader(reader);
        let mut vertices = Vec::new();
        for (i, record) in rdr.records().enumerate() {
            let record = record.map_err(|e| Error::InvalidPath(e.to_string()))?;
            if record.len() != 3 {
                return Err(Error::InvalidPath(format!(
                    "row {} has {} columns, expected x,y,z",
                    i + 1,
                    record.len()
                )));
            }
            let parsed: std::result::Result<Vec<f64>, _> =
                record.iter().map(str::parse::<f64>).collect();
            match parsed {
                Ok(c) => vertices.push(Point::new(c[0], c[1], c[2])?),
                Err(_) if i == 0 => continue,
                Err(e) => return Err(Error::InvalidPath(format!("row {}: {e}", i + 1))),
            }
        }
        Polyline::new(vertices)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Iterates over `(start, end)` of every edge, including the closing one.
    pub fn segments(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Traverses `self`, then `other`. Both loops must start at the same vertex.
    pub fn concat(&self, other: &Polyline) -> Result<Polyline> {
        if self.vertices[0] != other.vertices[0] {
            return Err(Error::InvalidPath("loops must share their first vertex".into()));
        }
        let mut vertices = self.vertices.clone();
        vertices.extend_from_slice(&other.vertices);
        Polyline::new(vertices)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedPath {
    Circle(Circle),
    Polyline(Polyline),
}

impl From<Circle> for ClosedPath {
    fn from(c: Circle) -> Self {
        ClosedPath::Circle(c)
    }
}

impl From<Polyline> for ClosedPath {
    fn from(p: Polyline) -> Self {
        ClosedPath::Polyline(p)
    }
}

impl ClosedPath {
    /// Same curve, opposite orientation.
    pub fn reversed(&self) -> ClosedPath {
        match self {
            ClosedPath::Circle(c) => ClosedPath::Circle(Circle {
                turns: -c.turns,
                ..*c
            }),
            ClosedPath::Polyline(p) => {
                let mut vertices = p.vertices.clone();
                vertices.reverse();
                ClosedPath::Polyline(Polyline { vertices })
            }
        }
    }

    /// Checks that the path keeps at least `PATH_REL_CLEARANCE · R` from the
    /// surface `ρ = R`, and reports which side it lies on.
    pub fn check_clearance(&self, f: &SolenoidField) -> Result<Region> {
        let clearance = PATH_REL_CLEARANCE * f.radius();
        let side = |lo: f64, hi: f64| -> Result<Region> {
            if hi < f.radius() - clearance {
                Ok(Region::Interior)
            } else if lo > f.radius() + clearance {
                Ok(Region::Exterior)
            } else {
                Err(Error::PathCrossesSolenoid { clearance })
            }
        };
        match self {
            ClosedPath::Circle(c) => {
                let (lo, hi) = c.rho_range();
                side(lo, hi)
            }
            ClosedPath::Polyline(p) => {
                let mut region = None;
                for (a, b) in p.segments() {
                    let (lo, hi) = segment_rho_range(&a, &b);
                    let r = side(lo, hi)?;
                    // a connected path cannot switch sides without crossing,
                    // so this only trips on inconsistent data
                    if region.is_some_and(|prev| prev != r) {
                        return Err(Error::PathCrossesSolenoid { clearance });
                    }
                    region = Some(r);
                }
                Ok(region.expect("polyline has segments"))
            }
        }
    }
}

// Min and max distance from the z-axis along a segment.
fn segment_rho_range(a: &Point, b: &Point) -> (f64, f64) {
    let (dx, dy) = (b.x() - a.x(), b.y() - a.y());
    let len2 = dx * dx + dy * dy;
    let hi = a.rho().max(b.rho());
    if len2 == 0.0 {
        return (a.rho(), hi);
    }
    let t = (-(a.x() * dx + a.y() * dy) / len2).clamp(0.0, 1.0);
    let lo = (a.x() + t * dx).hypot(a.y() + t * dy);
    (lo.min(a.rho()).min(b.rho()), hi)
}

/// `∮ A·dℓ` along `path`, by adaptive quadrature.
pub fn circulation(f: &SolenoidField, path: &ClosedPath, spec: &QuadratureSpec) -> Result<f64> {
    spec.validate()?;
    path.check_clearance(f)?;
    match path {
        ClosedPath::Circle(c) => {
            let sign = c.turns.signum() as f64;
            let (cx, cy) = (c.center.x(), c.center.y());
            let a = c.radius;
            let total = TAU * c.turns.unsigned_abs() as f64;
            let quarters = 4 * c.turns.unsigned_abs() as usize;
            let breaks: Vec<f64> = (0..=quarters).map(|i| total * i as f64 / quarters as f64).collect();
            let est = integrate(
                |t| {
                    let (s, co) = (sign * t).sin_cos();
                    let (ax, ay) = f.potential_xy(cx + a * co, cy + a * s)?;
                    Ok(sign * a * (-ax * s + ay * co))
                },
                &breaks,
                spec,
            )?;
            Ok(est.value)
        }
        ClosedPath::Polyline(p) => {
            let v = &p.vertices;
            let n = v.len();
            let breaks: Vec<f64> = (0..=n).map(|i| i as f64).collect();
            let est = integrate(
                |t| {
                    let k = (t.floor() as usize).min(n - 1);
                    let u = t - k as f64;
                    let (a, b) = (v[k], v[(k + 1) % n]);
                    let (dx, dy) = (b.x() - a.x(), b.y() - a.y());
                    let (ax, ay) = f.potential_xy(a.x() + u * dx, a.y() + u * dy)?;
                    Ok(ax * dx + ay * dy)
                },
                &breaks,
                spec,
            )?;
            Ok(est.value)
        }
    }
}

/// Counterclockwise circulation along the arc `ρ = radius`, `φ ∈ [phi0, phi1]`.
pub(crate) fn arc_circulation(
    f: &SolenoidField,
    radius: f64,
    phi0: f64,
    phi1: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let est = integrate(
        |t| {
            let (s, c) = t.sin_cos();
            let (ax, ay) = f.potential_xy(radius * c, radius * s)?;
            Ok(radius * (-ax * s + ay * c))
        },
        &[phi0, 0.5 * (phi0 + phi1), phi1],
        spec,
    )?;
    Ok(est.value)
}

/// Line integral of `A` along the straight segment from `a` to `b`.
pub(crate) fn segment_integral(
    f: &SolenoidField,
    a: (f64, f64),
    b: (f64, f64),
    spec: &QuadratureSpec,
) -> Result<f64> {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let est = integrate(
        |u| {
            let (ax, ay) = f.potential_xy(a.0 + u * dx, a.1 + u * dy)?;
            Ok(ax * dx + ay * dy)
        },
        &[0.0, 1.0],
        spec,
    )?;
    Ok(est.value)
}

/// Signed number of times `path` winds around the z-axis.
pub fn winding_number(path: &ClosedPath) -> Result<i64> {
    match path {
        ClosedPath::Circle(c) => {
            let d = c.center.rho();
            if (d - c.radius).abs() <= f64::EPSILON * 4.0 * c.radius.max(d) {
                Err(Error::PathTouchesAxis)
            } else if d < c.radius {
                Ok(c.turns)
            } else {
                Ok(0)
            }
        }
        ClosedPath::Polyline(p) => {
            let mut total = 0.0;
            for (i, (a, b)) in p.segments().enumerate() {
                if segment_rho_range(&a, &b).0 == 0.0 {
                    return Err(Error::PathTouchesAxis);
                }
                let cross = a.x() * b.y() - a.y() * b.x();
                let dot = a.x() * b.x() + a.y() * b.y();
                let delta = cross.atan2(dot);
                // an off-axis straight segment sweeps less than pi; this only
                // fires when round-off collapses a near-axis segment
                if delta.abs() >= PI {
                    return Err(Error::WindingUnresolvable { segment: i, delta });
                }
                total += delta;
            }
            Ok((total / TAU).round() as i64)
        }
    }
}

/// Magnetic flux through the disc of radius `l` centred on the axis, by
/// polar quadrature split at `ρ = R`.
pub fn flux_direct(f: &SolenoidField, l: f64, spec: &QuadratureSpec) -> Result<f64> {
    spec.validate()?;
    if !(l.is_finite() && l > 0.0) {
        return Err(Error::InvalidRadius(l));
    }
    f.region_of(l)?;
    let inner = disc_region_flux(f, Region::Interior, 0.0, l.min(f.radius()), 0.0, TAU, spec)?;
    let outer = if l > f.radius() {
        disc_region_flux(f, Region::Exterior, f.radius(), l, 0.0, TAU, spec)?
    } else {
        0.0
    };
    Ok(inner + outer)
}

/// `∬ B_z dS` over a polar rectangle lying entirely in `region`; the branch
/// is fixed so quadrature nodes on the boundary band are never evaluated.
pub(crate) fn disc_region_flux(
    f: &SolenoidField,
    region: Region,
    rho0: f64,
    rho1: f64,
    phi0: f64,
    phi1: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let bz = match region {
        Region::Interior => f.b(),
        Region::Exterior => 0.0,
    };
    integrate_polar(|r, _| Ok(bz * r), (rho0, rho1), (phi0, phi1), spec).map(|e| e.value)
}
