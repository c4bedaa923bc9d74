use nalgebra::DMatrix;

use super::channel::GaussianChannel;
use super::scheme::{GaussianScheme, ScheduleMode};
use crate::error::{Error, Result};
use crate::info::{gaussian_mi, state_output_mi, GaussianVector};
use crate::probability::vars::*;
use crate::probability::StateRole;
use crate::region::{assemble_terms, MiSource, MiTerms};

/// Variables of every assembled covariance, in row order.
pub const GAUSSIAN_ORDER: [&str; 13] = [
    T_P1CO, T_P1PR, X_P1CO, X_P1PR, X_P2CO, X_P2PR, X_P, U_CCO, U_CPR, X_C, V_C, Y_P, Y_C,
];

/// Slack allowed on per-state input variances.
pub const POWER_TOLERANCE: f64 = 1e-9;

const LISTEN_LATENTS: usize = 5;
const TRANSMIT_LATENTS: usize = 8;

fn row(name: &str) -> usize {
    GAUSSIAN_ORDER
        .iter()
        .position(|n| *n == name)
        .expect("known variable")
}

/// Forwarding amplitude turning a codeword of power `codeword` into a
/// component of power `budget`; zero when either vanishes.
fn amplitude(budget: f64, codeword: f64) -> f64 {
    if budget > 0.0 && codeword > 0.0 {
        (budget / codeword).sqrt()
    } else {
        0.0
    }
}

/// Coherent forwarding amplitudes `(a_co, a_pr)` of `T_P1co`, `T_P1pr`.
pub fn forwarding_amplitudes(ch: &GaussianChannel, sch: &GaussianScheme) -> (f64, f64) {
    let pw = sch.state_powers(ch, StateRole::Transmit);
    (
        amplitude(sch.beta_coop_co * pw.secondary, sch.theta_t1co * pw.primary),
        amplitude(sch.beta_coop_pr * pw.secondary, sch.theta_t1pr * pw.primary),
    )
}

/// Largest gain of `T_P1pr` at either destination, forwarding included.
pub fn inflation_scale(ch: &GaussianChannel, sch: &GaussianScheme) -> f64 {
    let (_, a_pr) = forwarding_amplitudes(ch, sch);
    (ch.h_pc.sqrt() + a_pr).max(1.0 + ch.h_cp.sqrt() * a_pr)
}

/// Joint covariance of all codewords and outputs in `state`.
///
/// Each variable is a linear combination of independent unit-variance
/// latents; codewords absent in `state` are constants (zero rows).
pub fn assemble_covariance(
    ch: &GaussianChannel,
    sch: &GaussianScheme,
    state: StateRole,
) -> Result<GaussianVector> {
    ch.validate()?;
    sch.validate()?;
    let pw = sch.state_powers(ch, state);
    let n = GAUSSIAN_ORDER.len();
    let a = match state {
        StateRole::Listen => {
            // Latents: X_P1co, X_P1pr, noise at S_C, D_P, D_C.
            let mut a = DMatrix::zeros(n, LISTEN_LATENTS);
            let co = (sch.eta1 * pw.primary).sqrt();
            let pr = ((1.0 - sch.eta1) * pw.primary).sqrt();
            a[(row(X_P1CO), 0)] = co;
            a[(row(X_P1PR), 1)] = pr;
            for out in [X_P, V_C, Y_P, Y_C] {
                let gain = match out {
                    V_C => ch.g_pc.sqrt(),
                    Y_C => ch.h_pc.sqrt(),
                    _ => 1.0,
                };
                a[(row(out), 0)] = gain * co;
                a[(row(out), 1)] = gain * pr;
            }
            a[(row(V_C), 2)] = 1.0;
            a[(row(Y_P), 3)] = 1.0;
            a[(row(Y_C), 4)] = 1.0;
            a
        }
        StateRole::Transmit => {
            // Latents: T_P1co, T_P1pr, X_P2co, X_P2pr, X_Cco, X_Cpr, noise at D_P, D_C.
            let mut a = DMatrix::zeros(n, TRANSMIT_LATENTS);
            let amp = [
                sch.theta_t1co,
                sch.theta_t1pr,
                sch.theta_p2co,
                sch.theta_p2pr,
            ]
            .map(|t| (t * pw.primary).sqrt());
            let own = [sch.beta_cco, sch.beta_cpr].map(|b| (b * pw.secondary).sqrt());
            let (a_co, a_pr) = forwarding_amplitudes(ch, sch);
            for (k, name) in [T_P1CO, T_P1PR, X_P2CO, X_P2PR].into_iter().enumerate() {
                a[(row(name), k)] = amp[k];
                a[(row(X_P), k)] = amp[k];
            }
            let mut x_c = [0.0; TRANSMIT_LATENTS];
            x_c[0] = a_co * amp[0];
            x_c[1] = a_pr * amp[1];
            x_c[4] = own[0];
            x_c[5] = own[1];
            for (u, k, lambda) in [(U_CCO, 4, sch.lambda_co), (U_CPR, 5, sch.lambda_pr)] {
                if own[k - 4] > 0.0 {
                    a[(row(u), k)] = own[k - 4];
                    a[(row(u), 1)] = lambda * amp[1];
                }
            }
            let (hpc, hcp) = (ch.h_pc.sqrt(), ch.h_cp.sqrt());
            for k in 0..6 {
                let x_p = if k < 4 { amp[k] } else { 0.0 };
                a[(row(X_C), k)] = x_c[k];
                a[(row(Y_P), k)] = x_p + hcp * x_c[k];
                a[(row(Y_C), k)] = hpc * x_p + x_c[k];
            }
            a[(row(Y_P), 6)] = 1.0;
            a[(row(Y_C), 7)] = 1.0;
            a
        }
    };
    let cov = &a * a.transpose();
    for (name, budget) in [(X_P, pw.primary), (X_C, pw.secondary)] {
        let v = cov[(row(name), row(name))];
        if v > budget + POWER_TOLERANCE {
            return Err(Error::PowerBudget(format!(
                "Var({name}) = {v} exceeds {budget}"
            )));
        }
    }
    GaussianVector::new(GAUSSIAN_ORDER.iter().map(|s| s.to_string()).collect(), cov)
}

/// Per-state Gaussian laws of one scheme.
pub struct GaussianSource {
    alpha: f64,
    schedule: ScheduleMode,
    listen: GaussianVector,
    transmit: GaussianVector,
}

impl GaussianSource {
    pub fn new(ch: &GaussianChannel, sch: &GaussianScheme) -> Result<Self> {
        Ok(Self {
            alpha: sch.alpha,
            schedule: sch.schedule,
            listen: assemble_covariance(ch, sch, StateRole::Listen)?,
            transmit: assemble_covariance(ch, sch, StateRole::Transmit)?,
        })
    }

    pub fn state(&self, state: StateRole) -> &GaussianVector {
        match state {
            StateRole::Listen => &self.listen,
            StateRole::Transmit => &self.transmit,
        }
    }
}

impl MiSource for GaussianSource {
    fn mi(&self, state: StateRole, x: &[&str], y: &[&str], z: &[&str]) -> Result<f64> {
        Ok(gaussian_mi(self.state(state), x, y, z)?.value())
    }

    /// Zero-mean per-state outputs: a two-component variance mixture.
    fn state_output_mi(&self, output: &str) -> Result<f64> {
        if self.schedule == ScheduleMode::Fixed {
            return Ok(0.0);
        }
        let v_l = self.listen.variance(output)?;
        let v_t = self.transmit.variance(output)?;
        Ok(state_output_mi(self.alpha, (0.0, v_l), (0.0, v_t))?.value())
    }
}

/// The eighteen right-hand sides under Gaussian signaling.
pub fn mi_terms_gaussian(ch: &GaussianChannel, sch: &GaussianScheme) -> Result<MiTerms> {
    mi_terms_gaussian_with(ch, sch, false)
}

/// As [`mi_terms_gaussian`]; with `genie` the decoding constraints at the
/// secondary source are left out.
pub fn mi_terms_gaussian_with(
    ch: &GaussianChannel,
    sch: &GaussianScheme,
    genie: bool,
) -> Result<MiTerms> {
    let src = GaussianSource::new(ch, sch)?;
    assemble_terms(sch.alpha, &src, genie)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::channel::awgn;

    fn ch() -> GaussianChannel {
        GaussianChannel::new(2.0, 3.0, 4.0, 0.5, 0.7).unwrap()
    }

    #[test]
    fn silent_secondary_leaves_primary_awgn() {
        let sch = GaussianScheme {
            alpha: 0.3,
            theta_p2pr: 1.0,
            ..Default::default()
        };
        let v = assemble_covariance(&ch(), &sch, StateRole::Transmit).unwrap();
        assert!((v.variance(Y_P).unwrap() - 3.0).abs() < 1e-12);
        assert_eq!(v.variance(X_C).unwrap(), 0.0);
    }

    #[test]
    fn listen_state_outputs() {
        let sch = GaussianScheme {
            alpha: 0.5,
            eta1: 0.25,
            ..Default::default()
        };
        let v = assemble_covariance(&ch(), &sch, StateRole::Listen).unwrap();
        assert!((v.variance(V_C).unwrap() - 9.0).abs() < 1e-12);
        assert!((v.variance(Y_C).unwrap() - 2.0).abs() < 1e-12);
        let i = gaussian_mi(&v, &[X_P1PR], &[V_C], &[X_P1CO])
            .unwrap()
            .value();
        assert!((i - awgn(4.0 * 1.5)).abs() < 1e-9);
    }

    #[test]
    fn forwarding_spends_secondary_budget() {
        let sch = GaussianScheme {
            theta_t1co: 0.5,
            theta_t1pr: 0.5,
            beta_coop_co: 0.25,
            beta_coop_pr: 0.25,
            beta_cco: 0.25,
            beta_cpr: 0.25,
            lambda_co: 0.3,
            lambda_pr: 0.2,
            ..Default::default()
        };
        let v = assemble_covariance(&ch(), &sch, StateRole::Transmit).unwrap();
        assert!((v.variance(X_C).unwrap() - 3.0).abs() < 1e-12);
        assert!((v.variance(X_P).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn alpha_one_zeroes_transmit_terms() {
        let sch = GaussianScheme {
            alpha: 1.0,
            eta1: 0.5,
            theta_p2pr: 1.0,
            beta_cpr: 1.0,
            ..Default::default()
        };
        let t = mi_terms_gaussian(&ch(), &sch).unwrap();
        for id in ['c', 'd', 'e', 'f', 'm', 'n', 'o', 'p'] {
            assert_eq!(t.get(id), Some(0.0));
        }
    }
}
