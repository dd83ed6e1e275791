//! Globally adaptive Gauss-Kronrod (7/15) integration.
//!
//! Every interval carries a 15-point Kronrod estimate and the difference to
//! the embedded 7-point Gauss estimate as its error. The interval with the
//! largest error is bisected until the summed error meets the tolerance.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

// Gauss weights for XGK[1], XGK[3], XGK[5] and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Tolerances for adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-9,
            abs_tol: 1e-12,
            max_subdivisions: 1 << 20,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol.is_finite() && self.rel_tol > 0.0) {
            return Err(Error::InvalidQuadrature(format!("rel_tol = {}", self.rel_tol)));
        }
        if !(self.abs_tol.is_finite() && self.abs_tol > 0.0) {
            return Err(Error::InvalidQuadrature(format!("abs_tol = {}", self.abs_tol)));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::InvalidQuadrature("max_subdivisions = 0".into()));
        }
        Ok(())
    }

    /// Tolerance this spec accepts for an integral of size `value`.
    pub fn tolerance_for(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    /// Integral of `|f|`, used as the round-off scale.
    pub magnitude: f64,
}

struct Interval {
    a: f64,
    b: f64,
    est: Estimate,
}

impl PartialEq for Interval {
    fn eq(&self, other: &Self) -> bool {
        self.est.error == other.est.error
    }
}

impl Eq for Interval {}

impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        self.est.error.total_cmp(&other.est.error)
    }
}

fn gauss_kronrod<F>(f: &mut F, a: f64, b: f64) -> Result<Estimate>
where
    F: FnMut(f64) -> Result<f64>,
{
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre)?;
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut magnitude = WGK[7] * fc.abs();
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(centre - dx)?;
        let f2 = f(centre + dx)?;
        kronrod += WGK[j] * (f1 + f2);
        magnitude += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let width = half.abs();
    Ok(Estimate {
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
        magnitude: magnitude * width,
    })
}

/// Integrates `f` over `[breaks[0], breaks[last]]`, starting from the pieces
/// delimited by `breaks` (which must be increasing).
///
/// The achievable error is floored at a small multiple of machine epsilon
/// times `∫|f|`; requesting less than that would only burn subdivisions on
/// round-off noise.
pub fn integrate<F>(mut f: F, breaks: &[f64], spec: &QuadratureSpec) -> Result<Estimate>
where
    F: FnMut(f64) -> Result<f64>,
{
    spec.validate()?;
    if breaks.len() < 2 {
        return Ok(Estimate {
            value: 0.0,
            error: 0.0,
            magnitude: 0.0,
        });
    }

    let mut heap = BinaryHeap::with_capacity(breaks.len() * 4);
    for w in breaks.windows(2) {
        let est = gauss_kronrod(&mut f, w[0], w[1])?;
        heap.push(Interval { a: w[0], b: w[1], est });
    }

    let mut subdivisions = 0usize;
    loop {
        // Re-summed each round in a fixed order so the result does not
        // depend on floating-point drift of running totals.
        let (value, error, magnitude) = heap.iter().fold((0.0, 0.0, 0.0), |acc, iv| {
            (acc.0 + iv.est.value, acc.1 + iv.est.error, acc.2 + iv.est.magnitude)
        });
        let target = spec
            .tolerance_for(value)
            .max(64.0 * f64::EPSILON * magnitude);
        if error <= target {
            return Ok(Estimate {
                value: sum_sorted(&heap),
                error,
                magnitude,
            });
        }
        if subdivisions >= spec.max_subdivisions {
            return Err(Error::QuadratureNotConverged {
                subdivisions,
                estimate: value,
                error,
            });
        }
        let worst = heap.pop().expect("heap is never empty here");
        let mid = 0.5 * (worst.a + worst.b);
        let left = gauss_kronrod(&mut f, worst.a, mid)?;
        let right = gauss_kronrod(&mut f, mid, worst.b)?;
        heap.push(Interval { a: worst.a, b: mid, est: left });
        heap.push(Interval { a: mid, b: worst.b, est: right });
        subdivisions += 1;
    }
}

// Sum in order of the interval positions; heap iteration order depends on
// the insertion history.
fn sum_sorted(heap: &BinaryHeap<Interval>) -> f64 {
    let mut parts: Vec<(f64, f64)> = heap.iter().map(|iv| (iv.a, iv.est.value)).collect();
    parts.sort_by(|l, r| l.0.total_cmp(&r.0));
    parts.iter().map(|p| p.1).sum()
}

/// Iterated integral `∫ dφ ∫ g(ρ, φ) dρ` over a polar rectangle, as used for
/// fluxes through discs, annuli and sectors.
pub fn integrate_polar<G>(
    g: G,
    rho: (f64, f64),
    phi: (f64, f64),
    spec: &QuadratureSpec,
) -> Result<Estimate>
where
    G: Fn(f64, f64) -> Result<f64>,
{
    let inner_spec = QuadratureSpec {
        rel_tol: spec.rel_tol * 0.1,
        abs_tol: spec.abs_tol * 0.1,
        ..*spec
    };
    integrate(
        |p| integrate(|r| g(r, p), &[rho.0, rho.1], &inner_spec).map(|e| e.value),
        &[phi.0, phi.1],
        spec,
    )
}
