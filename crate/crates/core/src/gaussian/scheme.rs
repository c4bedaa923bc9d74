use serde::{Deserialize, Serialize};

use super::channel::GaussianChannel;
use super::covariance::inflation_scale;
use crate::error::{Error, Result};
use crate::probability::StateRole;

/// Slack allowed on each group of power fractions.
pub const FRACTION_SLACK: f64 = 1e-12;

/// How the listen/transmit state of the secondary source is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScheduleMode {
    /// `S` is i.i.d. and may carry information (`R_s`).
    #[default]
    Random,
    /// `S` is a known deterministic pattern: `R_s = 0` and `I(S;Y) = 0`.
    Fixed,
}

/// Gaussian signaling parameters.
///
/// In the listen state the primary splits its power into `X_P1co`
/// (fraction `eta1`) and `X_P1pr`. In the transmit state the primary
/// splits its power over `T_P1co`, `T_P1pr`, `X_P2co`, `X_P2pr` with the
/// `theta_*` fractions, and the secondary splits its power over coherent
/// forwarding of `T_P1co`, `T_P1pr` and its own codewords with the
/// `beta_*` fractions. The auxiliaries are `U_Cco = X_Cco + lambda_co T_P1pr`
/// and `U_Cpr = X_Cpr + lambda_pr T_P1pr`; an auxiliary whose own power is
/// zero is the constant codeword.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GaussianScheme {
    pub alpha: f64,
    pub schedule: ScheduleMode,
    pub eta1: f64,
    pub theta_t1co: f64,
    pub theta_t1pr: f64,
    pub theta_p2co: f64,
    pub theta_p2pr: f64,
    pub beta_coop_co: f64,
    pub beta_coop_pr: f64,
    pub beta_cco: f64,
    pub beta_cpr: f64,
    pub lambda_co: f64,
    pub lambda_pr: f64,
    /// Average-power mode: share of the primary's energy spent in the
    /// listen state. `None` gives each state the full per-state power.
    pub listen_power_share: Option<f64>,
}

/// Powers available in one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatePowers {
    pub primary: f64,
    pub secondary: f64,
}

impl GaussianScheme {
    pub fn validate(&self) -> Result<()> {
        let unit = |name: &str, v: f64| -> Result<()> {
            if (0.0..=1.0).contains(&v) {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "{name} = {v} outside [0, 1]"
                )))
            }
        };
        unit("alpha", self.alpha)?;
        unit("eta1", self.eta1)?;
        for (name, v) in [
            ("theta_t1co", self.theta_t1co),
            ("theta_t1pr", self.theta_t1pr),
            ("theta_p2co", self.theta_p2co),
            ("theta_p2pr", self.theta_p2pr),
            ("beta_coop_co", self.beta_coop_co),
            ("beta_coop_pr", self.beta_coop_pr),
            ("beta_cco", self.beta_cco),
            ("beta_cpr", self.beta_cpr),
        ] {
            unit(name, v)?;
        }
        let theta = self.theta_t1co + self.theta_t1pr + self.theta_p2co + self.theta_p2pr;
        if theta > 1.0 + FRACTION_SLACK {
            return Err(Error::PowerBudget(format!(
                "primary fractions sum to {theta}"
            )));
        }
        let beta = self.beta_coop_co + self.beta_coop_pr + self.beta_cco + self.beta_cpr;
        if beta > 1.0 + FRACTION_SLACK {
            return Err(Error::PowerBudget(format!(
                "secondary fractions sum to {beta}"
            )));
        }
        for (name, v) in [("lambda_co", self.lambda_co), ("lambda_pr", self.lambda_pr)] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} = {v}")));
            }
        }
        if let Some(w) = self.listen_power_share {
            unit("listen_power_share", w)?;
        }
        Ok(())
    }

    /// Sum of the transmit-state primary fractions.
    pub fn theta_total(&self) -> f64 {
        self.theta_t1co + self.theta_t1pr + self.theta_p2co + self.theta_p2pr
    }

    /// Powers available in `state`.
    ///
    /// Per-state mode gives `p_p` and `p_c` to each state. Average-power
    /// mode spends a share `w` of the primary's energy while listening, so
    /// the per-use powers are `w p_p / alpha` and `(1 - w) p_p / (1 - alpha)`;
    /// the secondary only transmits in the transmit state.
    pub fn state_powers(&self, ch: &GaussianChannel, state: StateRole) -> StatePowers {
        match (self.listen_power_share, state) {
            (None, _) => StatePowers {
                primary: ch.p_p,
                secondary: ch.p_c,
            },
            (Some(w), StateRole::Listen) => StatePowers {
                primary: if self.alpha > 0.0 {
                    w * ch.p_p / self.alpha
                } else {
                    0.0
                },
                secondary: 0.0,
            },
            (Some(w), StateRole::Transmit) => {
                let abar = 1.0 - self.alpha;
                if abar > 0.0 {
                    StatePowers {
                        primary: (1.0 - w) * ch.p_p / abar,
                        secondary: ch.p_c / abar,
                    }
                } else {
                    StatePowers {
                        primary: 0.0,
                        secondary: 0.0,
                    }
                }
            }
        }
    }
}

/// Number of unit-box coordinates consumed by [`Family::scheme_at`].
pub const SAMPLE_DIM: usize = 14;

/// Relative weight of the unused-power coordinate in the simplex maps.
const SLACK_WEIGHT: f64 = 0.25;

/// A sub-family of schemes and its unit-box parameterization.
///
/// Coordinates: `alpha`, `eta1`, five for the primary simplex (four
/// fractions and unused power), five for the secondary simplex, and two
/// for the inflation factors. Disabled fractions are held at zero and the
/// simplex is drawn over the enabled ones only.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Family {
    pub alpha: Option<f64>,
    pub eta1: Option<f64>,
    /// Enabled flags for `theta_t1co, theta_t1pr, theta_p2co, theta_p2pr`.
    pub theta: [bool; 4],
    /// Enabled flags for `beta_coop_co, beta_coop_pr, beta_cco, beta_cpr`.
    pub beta: [bool; 4],
    pub lambda: bool,
    pub schedule: ScheduleMode,
    pub listen_power_share: Option<f64>,
}

impl Family {
    /// Every parameter free.
    pub fn full(schedule: ScheduleMode) -> Self {
        Self {
            alpha: None,
            eta1: None,
            theta: [true; 4],
            beta: [true; 4],
            lambda: true,
            schedule,
            listen_power_share: None,
        }
    }

    /// Never listens and sends no second-phase primary message.
    pub fn noncausal() -> Self {
        Self {
            alpha: Some(0.0),
            eta1: Some(0.0),
            theta: [true, true, false, false],
            ..Self::full(ScheduleMode::Fixed)
        }
    }

    /// Maps a point of the unit box to a scheme. The inflation factors
    /// range over `[0, k]`, `k` the largest gain of `T_P1pr` at either
    /// destination.
    pub fn scheme_at(&self, ch: &GaussianChannel, u: &[f64; SAMPLE_DIM]) -> GaussianScheme {
        let theta = simplex(&u[2..7], &self.theta);
        let beta = simplex(&u[7..12], &self.beta);
        let mut s = GaussianScheme {
            alpha: self.alpha.unwrap_or(u[0]),
            schedule: self.schedule,
            eta1: self.eta1.unwrap_or(u[1]),
            theta_t1co: theta[0],
            theta_t1pr: theta[1],
            theta_p2co: theta[2],
            theta_p2pr: theta[3],
            beta_coop_co: beta[0],
            beta_coop_pr: beta[1],
            beta_cco: beta[2],
            beta_cpr: beta[3],
            lambda_co: 0.0,
            lambda_pr: 0.0,
            listen_power_share: self.listen_power_share,
        };
        if self.lambda {
            let k = inflation_scale(ch, &s);
            s.lambda_co = u[12] * k;
            s.lambda_pr = u[13] * k;
        }
        s
    }
}

/// Fractions from five box coordinates: normalized exponential spacings,
/// the last being unused power.
fn simplex(u: &[f64], enabled: &[bool; 4]) -> [f64; 4] {
    let spacing = |v: f64| -(1.0 - v.min(1.0 - 1e-12)).ln();
    let mut e = [0.0; 4];
    for k in 0..4 {
        if enabled[k] {
            e[k] = spacing(u[k]);
        }
    }
    let slack = SLACK_WEIGHT * spacing(u[4]);
    let total: f64 = e.iter().sum::<f64>() + slack;
    if total <= 0.0 {
        return [0.0; 4];
    }
    e.map(|v| v / total)
}
