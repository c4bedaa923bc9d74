use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Values in `[-NEGATIVE_FLOOR, 0)` are treated as roundoff and clamped to 0.
pub const NEGATIVE_FLOOR: f64 = 1e-9;

/// A non-negative information quantity in bits.
#[derive(Debug, Clone, Copy, Default, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Bits(f64);

impl Bits {
    pub const ZERO: Bits = Bits(0.0);

    /// Clamps roundoff below zero; anything more negative is an error.
    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() {
            return Err(Error::NegativeInformation(f64::NAN));
        }
        if value < -NEGATIVE_FLOOR {
            return Err(Error::NegativeInformation(value));
        }
        Ok(Bits(value.max(0.0)))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<Bits> for f64 {
    fn from(b: Bits) -> f64 {
        b.0
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.6} bits", self.0)
    }
}

impl Add for Bits {
    type Output = Bits;
    fn add(self, rhs: Bits) -> Bits {
        Bits(self.0 + rhs.0)
    }
}

/// Differences of information quantities may be negative and are plain reals.
impl Sub for Bits {
    type Output = f64;
    fn sub(self, rhs: Bits) -> f64 {
        self.0 - rhs.0
    }
}

impl Mul<Bits> for f64 {
    type Output = f64;
    fn mul(self, rhs: Bits) -> f64 {
        self * rhs.0
    }
}
