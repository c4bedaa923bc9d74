//! The full comparison: the four protocol regions, their hull, and the
//! swept region of the new scheme.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::channel::GaussianChannel;
use super::protocols::{
    listen_then_noncausal_schemes, noncausal_region, protocol1_region, protocol2_schemes,
    protocol3_schemes, protocol4_schemes, protocol_specialization, unit_grid, Specialization,
};
use super::scheme::{Family, GaussianScheme, ScheduleMode};
use super::sweep::{theorem1_region_gaussian, Sweep, SweepRegion};
use crate::error::Result;
use crate::region::{union_area, Region2D};

/// Grids and sweep sizes of a comparison run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CompareSpec {
    /// Sobol points of the unrestricted sweep.
    pub points: usize,
    /// Sobol points of the non-causal sweep that feeds the protocols.
    pub noncausal_points: usize,
    pub seed: u64,
    pub tolerance: f64,
    /// `alpha` and `eta` grids of protocol 1 use `1/steps` spacing.
    pub alpha_steps: usize,
    pub eta_steps: usize,
    pub protocol2_eta1: Vec<f64>,
    /// Split grid of protocol 3.
    pub protocol3_steps: usize,
    pub protocol4_theta: Vec<f64>,
    pub protocol4_beta: Vec<f64>,
    /// Schedule of the unrestricted sweep.
    pub schedule: ScheduleMode,
}

impl Default for CompareSpec {
    fn default() -> Self {
        Self {
            points: 1 << 13,
            noncausal_points: 512,
            seed: 0x5eed,
            tolerance: 1e-6,
            alpha_steps: 10,
            eta_steps: 10,
            protocol2_eta1: vec![0.0, 0.25, 0.5, 0.75, 1.0],
            protocol3_steps: 10,
            protocol4_theta: vec![0.25, 0.5, 0.75, 1.0],
            protocol4_beta: vec![0.0, 0.25, 0.5, 0.75, 1.0],
            schedule: ScheduleMode::Random,
        }
    }
}

/// Summary of one swept region.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSummary {
    pub label: String,
    pub points: usize,
    pub accepted: usize,
    pub rejected: usize,
}

impl SweepSummary {
    fn of(label: &str, s: &SweepRegion) -> Self {
        Self {
            label: label.into(),
            points: s.schemes.len(),
            accepted: s.accepted,
            rejected: s.rejected,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareReport {
    pub channel: GaussianChannel,
    pub spec: CompareSpec,
    pub noncausal: Region2D,
    pub protocol1: Region2D,
    pub protocol2: Region2D,
    pub protocol3: Region2D,
    pub protocol4: Region2D,
    /// Hull of the four protocol regions.
    pub r0: Region2D,
    /// Hull of the new scheme's swept regions.
    pub r: Region2D,
    /// Scheme achieving each vertex of `r`.
    pub r_vertex_schemes: Vec<Option<GaussianScheme>>,
    pub contained: bool,
    pub max_violation: f64,
    pub area_r0: f64,
    pub area_r: f64,
    pub area_margin: f64,
    /// Area of the hull of `r` minus the area of the plain union of its pieces.
    pub convexification_gap: f64,
    pub sweeps: Vec<SweepSummary>,
}

fn with_schedule(sweep: &Sweep, schedule: ScheduleMode) -> Sweep {
    Sweep {
        label: format!("{}/{schedule:?}", sweep.label),
        seed: sweep.seed,
        schemes: sweep
            .schemes
            .iter()
            .map(|s| GaussianScheme { schedule, ..*s })
            .collect(),
    }
}

/// Samples for the union-area diagnostic.
const UNION_AREA_SAMPLES: usize = 4096;

pub fn run_compare(ch: &GaussianChannel, spec: &CompareSpec) -> Result<CompareReport> {
    ch.validate()?;
    let alphas = unit_grid(spec.alpha_steps);
    let etas = unit_grid(spec.eta_steps);

    let nc_sweep = Sweep::sobol(ch, &Family::noncausal(), spec.noncausal_points, spec.seed);
    let nc = noncausal_region(ch, &nc_sweep, true)?;
    let nc_laws: Vec<GaussianScheme> = nc.accepted_pieces().map(|(s, _)| *s).collect();
    let nc_pieces: Vec<Region2D> = nc.accepted_pieces().map(|(_, p)| p.clone()).collect();
    let nc_hull_laws: Vec<GaussianScheme> = nc
        .vertex_sources
        .iter()
        .flatten()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .map(|&i| nc.schemes[i])
        .collect();

    let p1 = protocol1_region(ch, &alphas, &etas, &nc_pieces)?;
    let p2_sweep = Sweep::from_schemes(
        "protocol2",
        protocol2_schemes(&alphas, &spec.protocol2_eta1, &nc_hull_laws),
    );
    let p2 = protocol_specialization(ch, Specialization::Protocol2, &p2_sweep)?;
    let p3_sweep = Sweep::from_schemes(
        "protocol3",
        protocol3_schemes(&unit_grid(spec.protocol3_steps)),
    );
    let p3 = protocol_specialization(ch, Specialization::Protocol3, &p3_sweep)?;
    let p4_sweep = Sweep::from_schemes(
        "protocol4",
        protocol4_schemes(&alphas, &spec.protocol4_theta, &spec.protocol4_beta),
    );
    let p4 = protocol_specialization(ch, Specialization::Protocol4, &p4_sweep)?;
    let r0 = Region2D::union(&[
        p1.clone(),
        p2.region.clone(),
        p3.region.clone(),
        p4.region.clone(),
    ])?;

    let mut r_sweep = Sweep::sobol(ch, &Family::full(spec.schedule), spec.points, spec.seed);
    let corners = [
        Sweep::from_schemes(
            "listen-then-noncausal",
            listen_then_noncausal_schemes(&alphas, &nc_laws),
        ),
        Sweep::from_schemes("protocol2", p2.schemes.clone()),
        Sweep::from_schemes("protocol3", p3.schemes.clone()),
        Sweep::from_schemes("protocol4", p4.schemes.clone()),
    ];
    for c in corners {
        if spec.schedule == ScheduleMode::Random {
            r_sweep.extend(with_schedule(&c, ScheduleMode::Random));
        }
        r_sweep.extend(c);
    }
    let r = theorem1_region_gaussian(ch, &r_sweep)?;

    let (contained, max_violation) = r.region.contains(&r0, spec.tolerance);
    let area_r0 = r0.area();
    let area_r = r.region.area();
    let pieces: Vec<Region2D> = r.accepted_pieces().map(|(_, p)| p.clone()).collect();
    let convexification_gap = area_r - union_area(&pieces, UNION_AREA_SAMPLES);
    Ok(CompareReport {
        channel: *ch,
        spec: spec.clone(),
        noncausal: nc.region.clone(),
        protocol1: p1,
        protocol2: p2.region.clone(),
        protocol3: p3.region.clone(),
        protocol4: p4.region.clone(),
        r0,
        r_vertex_schemes: r
            .vertex_sources
            .iter()
            .map(|v| v.map(|i| r.schemes[i]))
            .collect(),
        r: r.region.clone(),
        contained,
        max_violation,
        area_r0,
        area_r,
        area_margin: area_r - area_r0,
        convexification_gap,
        sweeps: vec![
            SweepSummary::of("noncausal", &nc),
            SweepSummary::of("protocol2", &p2),
            SweepSummary::of("protocol3", &p3),
            SweepSummary::of("protocol4", &p4),
            SweepSummary::of("unrestricted", &r),
        ],
    })
}
