//! Two-slot parallel-channel evaluator: the primary's first-phase message
//! is one codebook spread over a listen slot of length `alpha` and a
//! transmit slot of length `1 - alpha`, with no state-carried part.

use nalgebra::DMatrix;

use super::channel::GaussianChannel;
use super::covariance::forwarding_amplitudes;
use super::scheme::{GaussianScheme, ScheduleMode};
use super::sweep::{evaluate_sweep, Sweep, SweepRegion};
use crate::error::Result;
use crate::info::{gaussian_mi, GaussianVector};
use crate::probability::vars::*;
use crate::probability::StateRole;
use crate::region::{
    assemble_terms, lhs, project_sums, MiSource, Region2D, CONSTRAINT_IDS, R_E, R_S,
};

/// Rate columns: merged first-phase common rate, then as the rate polytope.
pub const TD_VARIABLES: [&str; 6] = ["R_P1co", "R_P1pr", "R_P2co", "R_P2pr", "R_Cco", "R_Cpr"];

/// A slot variable as `sum coeff * latent`.
type Combo = Vec<(usize, f64)>;

fn slot_vector(vars: &[(&str, Combo)]) -> Result<GaussianVector> {
    let n = vars.len();
    let cov = DMatrix::from_fn(n, n, |i, j| {
        let mut s = 0.0;
        for &(li, ci) in &vars[i].1 {
            for &(lj, cj) in &vars[j].1 {
                if li == lj {
                    s += ci * cj;
                }
            }
        }
        s
    });
    GaussianVector::new(vars.iter().map(|(n, _)| n.to_string()).collect(), cov)
}

/// Listen slot: the primary alone, heard by all three receivers.
fn listen_slot(ch: &GaussianChannel, sch: &GaussianScheme) -> Result<GaussianVector> {
    let p = sch.state_powers(ch, StateRole::Listen).primary;
    let (co, pr) = ((sch.eta1 * p).sqrt(), ((1.0 - sch.eta1) * p).sqrt());
    let heard = |gain: f64, noise: usize| vec![(0, gain * co), (1, gain * pr), (noise, 1.0)];
    slot_vector(&[
        (X_P1CO, vec![(0, co)]),
        (X_P1PR, vec![(1, pr)]),
        (V_C, heard(ch.g_pc.sqrt(), 2)),
        (Y_P, heard(1.0, 3)),
        (Y_C, heard(ch.h_pc.sqrt(), 4)),
    ])
}

/// Transmit slot: both sources active, the secondary forwarding the
/// resolved first-phase codewords coherently.
fn transmit_slot(ch: &GaussianChannel, sch: &GaussianScheme) -> Result<GaussianVector> {
    let pw = sch.state_powers(ch, StateRole::Transmit);
    let t1co = (sch.theta_t1co * pw.primary).sqrt();
    let t1pr = (sch.theta_t1pr * pw.primary).sqrt();
    let p2co = (sch.theta_p2co * pw.primary).sqrt();
    let p2pr = (sch.theta_p2pr * pw.primary).sqrt();
    let cco = (sch.beta_cco * pw.secondary).sqrt();
    let cpr = (sch.beta_cpr * pw.secondary).sqrt();
    let (a_co, a_pr) = forwarding_amplitudes(ch, sch);
    let (hpc, hcp) = (ch.h_pc.sqrt(), ch.h_cp.sqrt());
    // Latents 0..6: T_P1co, T_P1pr, X_P2co, X_P2pr, X_Cco, X_Cpr; 6, 7: noise.
    let y_p = vec![
        (0, t1co * (1.0 + hcp * a_co)),
        (1, t1pr * (1.0 + hcp * a_pr)),
        (2, p2co),
        (3, p2pr),
        (4, hcp * cco),
        (5, hcp * cpr),
        (6, 1.0),
    ];
    let y_c = vec![
        (0, t1co * (hpc + a_co)),
        (1, t1pr * (hpc + a_pr)),
        (2, hpc * p2co),
        (3, hpc * p2pr),
        (4, cco),
        (5, cpr),
        (7, 1.0),
    ];
    let aux = |own: f64, latent: usize, lambda: f64| -> Combo {
        if own > 0.0 {
            vec![(latent, own), (1, lambda * t1pr)]
        } else {
            Vec::new()
        }
    };
    slot_vector(&[
        (T_P1CO, vec![(0, t1co)]),
        (T_P1PR, vec![(1, t1pr)]),
        (X_P2CO, vec![(2, p2co)]),
        (X_P2PR, vec![(3, p2pr)]),
        (U_CCO, aux(cco, 4, sch.lambda_co)),
        (U_CPR, aux(cpr, 5, sch.lambda_pr)),
        (Y_P, y_p),
        (Y_C, y_c),
    ])
}

struct Slots {
    listen: GaussianVector,
    transmit: GaussianVector,
}

impl MiSource for Slots {
    fn mi(&self, state: StateRole, x: &[&str], y: &[&str], z: &[&str]) -> Result<f64> {
        let v = match state {
            StateRole::Listen => &self.listen,
            StateRole::Transmit => &self.transmit,
        };
        Ok(gaussian_mi(v, x, y, z)?.value())
    }

    fn state_output_mi(&self, _output: &str) -> Result<f64> {
        Ok(0.0)
    }
}

/// Rows `(coeffs over TD_VARIABLES, bound)` of one scheme. Constraints
/// that differ only in the state-carried rate coincide and are merged.
pub fn time_division_rows(
    ch: &GaussianChannel,
    sch: &GaussianScheme,
) -> Result<Vec<(Vec<f64>, f64)>> {
    ch.validate()?;
    sch.validate()?;
    let slots = Slots {
        listen: listen_slot(ch, sch)?,
        transmit: transmit_slot(ch, sch)?,
    };
    let terms = assemble_terms(sch.alpha, &slots, false)?;
    let mut rows: Vec<(Vec<f64>, f64)> = Vec::with_capacity(CONSTRAINT_IDS.len());
    for id in CONSTRAINT_IDS {
        let Some(bound) = terms.get(id) else { continue };
        let mut a = vec![0.0; TD_VARIABLES.len()];
        for &col in lhs(id).expect("known id") {
            let k = if col == R_S || col == R_E { 0 } else { col - 1 };
            a[k] = 1.0;
        }
        match rows.iter_mut().find(|(b, _)| *b == a) {
            Some(row) => row.1 = row.1.min(bound),
            None => rows.push((a, bound)),
        }
    }
    Ok(rows)
}

/// Projection of one scheme's two-slot system onto `(R_P, R_C)`.
pub fn time_division_scheme_region(ch: &GaussianChannel, sch: &GaussianScheme) -> Result<Region2D> {
    let rows = time_division_rows(ch, sch)?;
    project_sums(6, &rows, &[0, 1, 2, 3], &[4, 5], &[5, 4, 3, 2, 1, 0])
}

/// Hull over the sweep of the two-slot regions; every scheme is run
/// with a fixed schedule.
pub fn time_division_region(ch: &GaussianChannel, sweep: &Sweep) -> Result<SweepRegion> {
    ch.validate()?;
    let fixed = Sweep {
        label: format!("time-division/{}", sweep.label),
        seed: sweep.seed,
        schemes: sweep
            .schemes
            .iter()
            .map(|s| GaussianScheme {
                schedule: ScheduleMode::Fixed,
                ..*s
            })
            .collect(),
    };
    evaluate_sweep(&fixed, |s| time_division_scheme_region(ch, s))
}
