//! Gaussian signaling: per-state covariances, the closed-form protocol
//! bounds, protocol specializations, the two-slot evaluator and sweeps.

mod channel;
mod compare;
mod covariance;
mod protocols;
mod scheme;
mod sweep;
mod time_division;

pub use channel::{awgn, GaussianChannel};
pub use compare::{run_compare, CompareReport, CompareSpec, SweepSummary};
pub use covariance::{
    assemble_covariance, forwarding_amplitudes, inflation_scale, mi_terms_gaussian,
    mi_terms_gaussian_with, GaussianSource, GAUSSIAN_ORDER, POWER_TOLERANCE,
};
pub use protocols::{
    affine_capped, eta1_bar_range, listen_then_noncausal_schemes, noncausal_region,
    protocol1_bound, protocol1_listen_private, protocol1_piece, protocol1_region,
    protocol2_schemes, protocol3_schemes, protocol4_schemes, protocol_specialization, r_in_1_bound,
    r_in_1_listen_common, r_in_1_listen_private, r_in_1_piece, r_in_1_region, unit_grid,
    Specialization,
};
pub use scheme::{Family, GaussianScheme, ScheduleMode, StatePowers, FRACTION_SLACK, SAMPLE_DIM};
pub use sweep::{evaluate_sweep, scheme_region, theorem1_region_gaussian, Sweep, SweepRegion};
pub use time_division::{
    time_division_region, time_division_rows, time_division_scheme_region, TD_VARIABLES,
};
