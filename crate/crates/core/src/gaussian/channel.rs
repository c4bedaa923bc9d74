use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Real AWGN cognitive channel with unit direct gains and unit noise at
/// the secondary source and both destinations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussianChannel {
    /// Primary power.
    pub p_p: f64,
    /// Secondary power.
    pub p_c: f64,
    /// Power gain from the primary to the secondary source.
    pub g_pc: f64,
    /// Power gain from the primary source to the secondary destination.
    pub h_pc: f64,
    /// Power gain from the secondary source to the primary destination.
    pub h_cp: f64,
}

impl GaussianChannel {
    pub fn new(p_p: f64, p_c: f64, g_pc: f64, h_pc: f64, h_cp: f64) -> Result<Self> {
        let ch = Self {
            p_p,
            p_c,
            g_pc,
            h_pc,
            h_cp,
        };
        ch.validate()?;
        Ok(ch)
    }

    /// Gains and powers must be finite and non-negative, and the primary
    /// power positive. A silent secondary (`p_c = 0`) is allowed.
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("p_p", self.p_p),
            ("p_c", self.p_c),
            ("g_pc", self.g_pc),
            ("h_pc", self.h_pc),
            ("h_cp", self.h_cp),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::InvalidParameter(format!("{name} = {v}")));
            }
        }
        if self.p_p <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "p_p = {} must be positive",
                self.p_p
            )));
        }
        Ok(())
    }
}

/// `0.5 log2(1 + snr)`.
pub fn awgn(snr: f64) -> f64 {
    0.5 * (1.0 + snr).log2()
}
