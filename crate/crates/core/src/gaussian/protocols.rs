//! Closed-form protocol bounds and the specializations of the Gaussian
//! evaluator.

use serde::{Deserialize, Serialize};

use super::channel::{awgn, GaussianChannel};
use super::scheme::{GaussianScheme, ScheduleMode};
use super::sweep::{evaluate_sweep, scheme_region, Sweep, SweepRegion};
use crate::error::{Error, Result};
use crate::region::{Point, Region2D};

/// Cap on the primary rate of protocol 1:
/// `(alpha/2) [log(1 + g (1-eta) P) + log(1 + eta P / (1 + (1-eta) P))]`.
pub fn protocol1_bound(ch: &GaussianChannel, alpha: f64, eta: f64) -> f64 {
    let p = ch.p_p;
    alpha * (awgn(ch.g_pc * (1.0 - eta) * p) + awgn(eta * p / (1.0 + (1.0 - eta) * p)))
}

/// First-slot private rate of protocol 1 decoded at the primary destination.
pub fn protocol1_listen_private(ch: &GaussianChannel, alpha: f64, eta: f64) -> f64 {
    let p = ch.p_p;
    alpha * awgn(eta * p / (1.0 + (1.0 - eta) * p))
}

/// Cap on the primary rate of the first improved region:
/// `(alpha/2) log(1 + g P)`.
pub fn r_in_1_bound(ch: &GaussianChannel, alpha: f64) -> f64 {
    alpha * awgn(ch.g_pc * ch.p_p)
}

/// First-slot common rate: decodable at both destinations.
pub fn r_in_1_listen_common(ch: &GaussianChannel, alpha: f64, eta1: f64) -> f64 {
    let p = ch.p_p;
    let eb = 1.0 - eta1;
    let at_p = awgn(eta1 * p / (1.0 + eb * p));
    let at_c = awgn(ch.h_pc * eta1 * p / (1.0 + ch.h_pc * eb * p));
    alpha * at_p.min(at_c)
}

/// First-slot private rate of the first improved region.
pub fn r_in_1_listen_private(ch: &GaussianChannel, alpha: f64, eta1: f64) -> f64 {
    alpha * awgn((1.0 - eta1) * ch.p_p)
}

/// Admissible `1 - eta1` for a protocol-1 split `eta`:
/// `[eta / (1 + (1-eta) P), 1]`.
pub fn eta1_bar_range(ch: &GaussianChannel, eta: f64) -> (f64, f64) {
    (eta / (1.0 + (1.0 - eta) * ch.p_p), 1.0)
}

/// `{(min(cap, shift + scale x), scale y) : (x, y) in region}`.
pub fn affine_capped(region: &Region2D, shift: f64, scale: f64, cap: f64) -> Result<Region2D> {
    let img: Vec<Point> = region
        .vertices()
        .iter()
        .map(|&(x, y)| (shift + scale * x, scale * y))
        .collect();
    let ring = Region2D::hull(&img)?;
    let v = ring.vertices();
    let mut kept = Vec::with_capacity(v.len() + 2);
    for (k, &p) in v.iter().enumerate() {
        let q = v[(k + 1) % v.len()];
        if p.0 <= cap {
            kept.push(p);
        }
        if (p.0 - cap) * (q.0 - cap) < 0.0 {
            let t = (cap - p.0) / (q.0 - p.0);
            kept.push((cap, p.1 + t * (q.1 - p.1)));
        }
    }
    if kept.is_empty() {
        kept.push((cap.max(0.0), 0.0));
    }
    Region2D::hull(&kept)
}

/// Protocol 1 for one `(alpha, eta)` and one phase-two region.
pub fn protocol1_piece(
    ch: &GaussianChannel,
    alpha: f64,
    eta: f64,
    phase2: &Region2D,
) -> Result<Region2D> {
    affine_capped(
        phase2,
        protocol1_listen_private(ch, alpha, eta),
        1.0 - alpha,
        protocol1_bound(ch, alpha, eta),
    )
}

/// The first improved region for one `(alpha, eta1)` and one phase-two region.
pub fn r_in_1_piece(
    ch: &GaussianChannel,
    alpha: f64,
    eta1: f64,
    phase2: &Region2D,
) -> Result<Region2D> {
    affine_capped(
        phase2,
        r_in_1_listen_common(ch, alpha, eta1) + r_in_1_listen_private(ch, alpha, eta1),
        1.0 - alpha,
        r_in_1_bound(ch, alpha),
    )
}

fn hull_over<F>(alphas: &[f64], splits: &[f64], phase2: &[Region2D], piece: F) -> Result<Region2D>
where
    F: Fn(f64, f64, &Region2D) -> Result<Region2D>,
{
    if alphas.is_empty() || splits.is_empty() || phase2.is_empty() {
        return Err(Error::Empty("protocol grid"));
    }
    for &v in alphas.iter().chain(splits) {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::InvalidParameter(format!(
                "grid value {v} outside [0, 1]"
            )));
        }
    }
    let mut pts = Vec::new();
    for &a in alphas {
        for &e in splits {
            for q in phase2 {
                pts.extend_from_slice(piece(a, e, q)?.vertices());
            }
        }
    }
    Region2D::hull(&pts)
}

/// Protocol 1 over an `(alpha, eta)` grid; `phase2` are the per-scheme
/// pieces of the non-causal region.
pub fn protocol1_region(
    ch: &GaussianChannel,
    alphas: &[f64],
    etas: &[f64],
    phase2: &[Region2D],
) -> Result<Region2D> {
    hull_over(alphas, etas, phase2, |a, e, q| protocol1_piece(ch, a, e, q))
}

/// The first improved region over an `(alpha, eta1)` grid.
pub fn r_in_1_region(
    ch: &GaussianChannel,
    alphas: &[f64],
    eta1s: &[f64],
    phase2: &[Region2D],
) -> Result<Region2D> {
    hull_over(alphas, eta1s, phase2, |a, e, q| r_in_1_piece(ch, a, e, q))
}

/// Which variables a protocol switches off.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Specialization {
    /// Always transmitting, no second-phase primary message.
    NonCausal,
    /// Fixed schedule, first-slot split independent, phase two non-causal.
    Protocol2,
    /// Always transmitting, no first-phase message at all.
    Protocol3,
    /// Fixed schedule; only the private first-phase message, relayed.
    Protocol4,
}

impl Specialization {
    pub fn apply(self, s: &GaussianScheme) -> GaussianScheme {
        let mut s = *s;
        s.schedule = ScheduleMode::Fixed;
        match self {
            Self::NonCausal => {
                s.alpha = 0.0;
                s.eta1 = 0.0;
                s.theta_p2co = 0.0;
                s.theta_p2pr = 0.0;
            }
            Self::Protocol2 => {
                s.theta_p2co = 0.0;
                s.theta_p2pr = 0.0;
            }
            Self::Protocol3 => {
                s.alpha = 0.0;
                s.eta1 = 0.0;
                s.theta_t1co = 0.0;
                s.theta_t1pr = 0.0;
                s.beta_coop_co = 0.0;
                s.beta_coop_pr = 0.0;
                s.lambda_co = 0.0;
                s.lambda_pr = 0.0;
            }
            Self::Protocol4 => {
                s.eta1 = 0.0;
                s.theta_t1co = 0.0;
                s.theta_p2co = 0.0;
                s.theta_p2pr = 0.0;
                s.beta_coop_co = 0.0;
                s.beta_cco = 0.0;
                s.beta_cpr = 0.0;
                s.lambda_co = 0.0;
                s.lambda_pr = 0.0;
            }
        }
        s
    }
}

fn specialized(which: Specialization, sweep: &Sweep) -> Sweep {
    Sweep {
        label: format!("{:?}/{}", which, sweep.label),
        seed: sweep.seed,
        schemes: sweep.schemes.iter().map(|s| which.apply(s)).collect(),
    }
}

/// The non-causal region: the evaluator with the [`Specialization::NonCausal`]
/// disablings; `genie` drops decoding at the secondary source.
pub fn noncausal_region(ch: &GaussianChannel, sweep: &Sweep, genie: bool) -> Result<SweepRegion> {
    ch.validate()?;
    let sw = specialized(Specialization::NonCausal, sweep);
    evaluate_sweep(&sw, |s| scheme_region(ch, s, genie))
}

/// A protocol's disablings applied to every scheme of `sweep`.
pub fn protocol_specialization(
    ch: &GaussianChannel,
    which: Specialization,
    sweep: &Sweep,
) -> Result<SweepRegion> {
    ch.validate()?;
    let sw = specialized(which, sweep);
    evaluate_sweep(&sw, |s| scheme_region(ch, s, false))
}

/// `0, 1/steps, ..., 1`.
pub fn unit_grid(steps: usize) -> Vec<f64> {
    (0..=steps).map(|k| k as f64 / steps as f64).collect()
}

/// Every `(alpha, eta1)` pairing with every transmit-state scheme.
pub fn protocol2_schemes(
    alphas: &[f64],
    eta1s: &[f64],
    transmit: &[GaussianScheme],
) -> Vec<GaussianScheme> {
    let mut out = Vec::with_capacity(alphas.len() * eta1s.len() * transmit.len());
    for &alpha in alphas {
        for &eta1 in eta1s {
            for t in transmit {
                out.push(Specialization::Protocol2.apply(&GaussianScheme { alpha, eta1, ..*t }));
            }
        }
    }
    out
}

/// Full-power splits between the two second-phase primary codewords and
/// the two secondary codewords.
pub fn protocol3_schemes(levels: &[f64]) -> Vec<GaussianScheme> {
    let mut out = Vec::with_capacity(levels.len() * levels.len());
    for &a in levels {
        for &b in levels {
            out.push(Specialization::Protocol3.apply(&GaussianScheme {
                theta_p2co: a,
                theta_p2pr: 1.0 - a,
                beta_cco: b,
                beta_cpr: 1.0 - b,
                ..Default::default()
            }));
        }
    }
    out
}

/// Listen fraction, relayed-codeword power and forwarding power.
pub fn protocol4_schemes(alphas: &[f64], thetas: &[f64], betas: &[f64]) -> Vec<GaussianScheme> {
    let mut out = Vec::with_capacity(alphas.len() * thetas.len() * betas.len());
    for &alpha in alphas {
        for &theta_t1pr in thetas {
            for &beta_coop_pr in betas {
                out.push(Specialization::Protocol4.apply(&GaussianScheme {
                    alpha,
                    theta_t1pr,
                    beta_coop_pr,
                    ..Default::default()
                }));
            }
        }
    }
    out
}

/// Fixed-schedule schemes listening a fraction `alpha` with the whole
/// first-slot power on `X_P1pr` and a non-causal transmit-state law: the
/// points covering the first improved region at `eta1 = 0`.
pub fn listen_then_noncausal_schemes(
    alphas: &[f64],
    transmit: &[GaussianScheme],
) -> Vec<GaussianScheme> {
    protocol2_schemes(alphas, &[0.0], transmit)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch() -> GaussianChannel {
        GaussianChannel::new(1.0, 1.0, 4.0, 0.5, 0.5).unwrap()
    }

    #[test]
    fn printed_point_values() {
        assert!((protocol1_bound(&ch(), 0.5, 0.0) - 0.580482).abs() < 1e-6);
        assert!((r_in_1_bound(&ch(), 0.5) - 0.580482).abs() < 1e-6);
    }

    #[test]
    fn eta1_zero_has_no_common_rate() {
        assert_eq!(r_in_1_listen_common(&ch(), 0.7, 0.0), 0.0);
    }

    #[test]
    fn strong_cross_gain_leaves_primary_term_active() {
        let strong = GaussianChannel::new(3.0, 1.0, 1.0, 2.0, 0.5).unwrap();
        let p = strong.p_p;
        let first = 0.8 * awgn(0.6 * p / (1.0 + 0.4 * p));
        assert!((r_in_1_listen_common(&strong, 0.8, 0.6) - first).abs() < 1e-12);
    }

    #[test]
    fn capped_affine_image() {
        let sq = Region2D::hull(&[(1.0, 1.0)]).unwrap();
        let r = affine_capped(&sq, 0.5, 0.5, 0.8).unwrap();
        assert!((r.max_rp() - 0.8).abs() < 1e-12);
        assert!((r.max_rc() - 0.5).abs() < 1e-12);
        assert!((r.area() - 0.4).abs() < 1e-12);
    }

    #[test]
    fn zero_alpha_protocol1_has_no_primary_rate() {
        let sq = Region2D::hull(&[(1.0, 1.0)]).unwrap();
        let r = protocol1_piece(&ch(), 0.0, 0.3, &sq).unwrap();
        assert_eq!(r.max_rp(), 0.0);
        assert_eq!(r.max_rc(), 1.0);
    }

    #[test]
    fn full_listening_protocol1_has_no_secondary_rate() {
        let sq = Region2D::hull(&[(1.0, 1.0)]).unwrap();
        assert_eq!(protocol1_piece(&ch(), 1.0, 0.3, &sq).unwrap().max_rc(), 0.0);
    }
}
