//! Charge quantization in exact rational arithmetic.
//!
//! All charges are measured in units of the electron charge `e`, and `κ` in
//! units of `1/e`, so every quantity here is an exact rational. Requiring
//! `qκ ∈ ℤ` for every charge and a `κ` that is an integer multiple of `1/e`
//! forces all charges onto a lattice `q = n e / N`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational `p/d` in lowest terms with `d ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalCharge(BigRational);

impl RationalCharge {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::InvalidDenominator);
        }
        // BigRational::new reduces and moves the sign into the numerator
        Ok(RationalCharge(BigRational::new(numer.into(), denom)))
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        RationalCharge(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        RationalCharge(BigRational::zero())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    /// Nearest `f64`; exact only for small numerators and denominators.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn neg(&self) -> Self {
        RationalCharge(-self.0.clone())
    }

    pub fn mul(&self, other: &RationalCharge) -> Self {
        RationalCharge(&self.0 * &other.0)
    }
}

impl From<BigRational> for RationalCharge {
    fn from(r: BigRational) -> Self {
        RationalCharge(r)
    }
}

impl fmt::Display for RationalCharge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for RationalCharge {
    type Err = Error;

    /// Accepts `"p"` or `"p/d"` with optional sign on either part.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseRational(s.to_string());
        let int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| bad());
        match s.split_once('/') {
            None => Ok(RationalCharge::integer(int(s)?)),
            Some((p, d)) => RationalCharge::new(int(p)?, int(d)?).map_err(|_| bad()),
        }
    }
}

impl Serialize for RationalCharge {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The universal denominator `N` of the allowed charges `n e / N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ChargeSpectrum {
    #[serde(rename = "N", serialize_with = "serialize_display")]
    n: BigInt,
}

// Plain JSON number when it fits, decimal string otherwise.
fn serialize_display<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v.to_u64() {
        Some(n) => s.serialize_u64(n),
        None => s.collect_str(v),
    }
}

impl ChargeSpectrum {
    pub fn new(n: impl Into<BigInt>) -> Result<Self> {
        let n = n.into();
        if !n.is_positive() {
            return Err(Error::InvalidDenominator);
        }
        Ok(ChargeSpectrum { n })
    }

    pub fn denominator(&self) -> &BigInt {
        &self.n
    }

    /// The integer `n_q = qN` if `q` belongs to the spectrum.
    pub fn index_of(&self, q: &RationalCharge) -> Option<BigInt> {
        let scaled = &q.0 * BigRational::from_integer(self.n.clone());
        scaled.is_integer().then(|| scaled.to_integer())
    }
}

/// `κ` (given as `κe`) is allowed iff `κe` is an integer.
pub fn kappa_allowed(kappa_times_e: &RationalCharge) -> bool {
    kappa_times_e.is_integer()
}

/// `q` is allowed iff `qN ∈ ℤ`, i.e. its reduced denominator divides `N`.
pub fn charge_allowed(q: &RationalCharge, spec: &ChargeSpectrum) -> bool {
    spec.n.is_multiple_of(q.denom())
}

/// `{ n/N : n ∈ range }`, ascending.
pub fn spectrum(spec: &ChargeSpectrum, range: RangeInclusive<i64>) -> Result<Vec<RationalCharge>> {
    if range.is_empty() {
        return Err(Error::EmptyRange);
    }
    let mut out: Vec<RationalCharge> = range
        .map(|n| RationalCharge(BigRational::new(BigInt::from(n), spec.n.clone())))
        .collect();
    out.sort();
    Ok(out)
}

/// Smallest `N ≥ 1` with `qN ∈ ℤ` for every charge: the lcm of the reduced
/// denominators.
pub fn infer_minimal_n(charges: &[RationalCharge]) -> Result<ChargeSpectrum> {
    if charges.is_empty() {
        return Err(Error::EmptyChargeSet);
    }
    let n = charges
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    ChargeSpectrum::new(n)
}

/// True iff `qκ ∈ ℤ` for every charge in the set.
pub fn kappa_constraints(charges: &[RationalCharge], kappa_times_e: &RationalCharge) -> bool {
    charges.iter().all(|q| q.mul(kappa_times_e).is_integer())
}

/// True iff the spectrum over `range` is closed under `q → −q`.
pub fn antiparticle_closure(spec: &ChargeSpectrum, range: RangeInclusive<i64>) -> Result<bool> {
    let charges: BTreeSet<RationalCharge> = spectrum(spec, range)?.into_iter().collect();
    Ok(charges.iter().all(|q| charges.contains(&q.neg())))
}
