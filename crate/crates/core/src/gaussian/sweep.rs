use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::channel::GaussianChannel;
use super::covariance::mi_terms_gaussian_with;
use super::scheme::{Family, GaussianScheme, ScheduleMode, SAMPLE_DIM};
use crate::error::{Error, Result};
use crate::region::{build_polytope, project_fm, Point, Region2D, R_S};

/// An ordered list of schemes to evaluate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sweep {
    pub label: String,
    pub seed: Option<u64>,
    pub schemes: Vec<GaussianScheme>,
}

impl Sweep {
    pub fn from_schemes(label: impl Into<String>, schemes: Vec<GaussianScheme>) -> Self {
        Self {
            label: label.into(),
            seed: None,
            schemes,
        }
    }

    /// `points` scrambled Sobol points of `family`.
    pub fn sobol(ch: &GaussianChannel, family: &Family, points: usize, seed: u64) -> Self {
        let seed32 = (seed as u32) ^ ((seed >> 32) as u32);
        let schemes = (0..points)
            .map(|i| {
                let mut u = [0.0; SAMPLE_DIM];
                for (d, v) in u.iter_mut().enumerate() {
                    *v = f64::from(sobol_burley::sample(i as u32, d as u32, seed32));
                }
                family.scheme_at(ch, &u)
            })
            .collect();
        Self {
            label: format!("sobol/{points}"),
            seed: Some(seed),
            schemes,
        }
    }

    pub fn extend(&mut self, other: Sweep) {
        self.label = format!("{}+{}", self.label, other.label);
        self.seed = self.seed.or(other.seed);
        self.schemes.extend(other.schemes);
    }

    pub fn len(&self) -> usize {
        self.schemes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.schemes.is_empty()
    }
}

/// Hull of the per-scheme regions of a sweep, with provenance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRegion {
    pub region: Region2D,
    /// Index into `schemes` of the scheme achieving each vertex; `None`
    /// for vertices added by the downward closure.
    pub vertex_sources: Vec<Option<usize>>,
    pub schemes: Vec<GaussianScheme>,
    /// Per-scheme region; `None` where the scheme was rejected.
    #[serde(skip)]
    pub pieces: Vec<Option<Region2D>>,
    pub accepted: usize,
    pub rejected: usize,
    /// Rejection counts by error kind.
    pub rejections: BTreeMap<String, usize>,
}

impl SweepRegion {
    /// Regions of the accepted schemes, in sweep order.
    pub fn accepted_pieces(&self) -> impl Iterator<Item = (&GaussianScheme, &Region2D)> {
        self.schemes
            .iter()
            .zip(&self.pieces)
            .filter_map(|(s, p)| p.as_ref().map(|p| (s, p)))
    }
}

fn error_kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(['(', ' ', '{']).next().unwrap_or("").to_string()
}

/// Projection of a single scheme's rate polytope. The fixed schedule
/// switches `R_s` off.
pub fn scheme_region(ch: &GaussianChannel, sch: &GaussianScheme, genie: bool) -> Result<Region2D> {
    let terms = mi_terms_gaussian_with(ch, sch, genie)?;
    let mut poly = build_polytope(&terms);
    if sch.schedule == ScheduleMode::Fixed {
        poly.force_zero(R_S);
    }
    project_fm(&poly)
}

/// Evaluates `eval` on every scheme in parallel and takes the hull.
/// Results are merged in sweep order.
pub fn evaluate_sweep<F>(sweep: &Sweep, eval: F) -> Result<SweepRegion>
where
    F: Fn(&GaussianScheme) -> Result<Region2D> + Sync,
{
    if sweep.is_empty() {
        return Err(Error::Empty("sweep"));
    }
    let results: Vec<Result<Region2D>> = sweep.schemes.par_iter().map(&eval).collect();
    let mut tagged: Vec<(Point, usize)> = Vec::new();
    let mut pieces = Vec::with_capacity(results.len());
    let mut rejections = BTreeMap::new();
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(region) => {
                tagged.extend(region.vertices().iter().map(|&p| (p, i)));
                pieces.push(Some(region));
            }
            Err(e) => {
                *rejections.entry(error_kind(&e)).or_insert(0) += 1;
                pieces.push(None);
            }
        }
    }
    let rejected: usize = rejections.values().sum();
    if rejected == sweep.len() {
        return Err(Error::AllRejected(rejected));
    }
    let (region, vertex_sources) = Region2D::hull_tagged(&tagged)?;
    Ok(SweepRegion {
        region,
        vertex_sources,
        schemes: sweep.schemes.clone(),
        pieces,
        accepted: sweep.len() - rejected,
        rejected,
        rejections,
    })
}

/// Hull over the sweep of the projected rate polytopes.
pub fn theorem1_region_gaussian(ch: &GaussianChannel, sweep: &Sweep) -> Result<SweepRegion> {
    ch.validate()?;
    evaluate_sweep(sweep, |s| scheme_region(ch, s, false))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_zero_scheme_gives_origin() {
        let ch = GaussianChannel::new(1.0, 1.0, 1.0, 1.0, 1.0).unwrap();
        let sw = Sweep::from_schemes("zero", vec![GaussianScheme::default()]);
        let r = theorem1_region_gaussian(&ch, &sw).unwrap();
        assert_eq!(r.region.vertices(), &[(0.0, 0.0)]);
    }

    #[test]
    fn rejected_points_are_counted() {
        let ch = GaussianChannel::new(1.0, 1.0, 1.0, 1.0, 1.0).unwrap();
        let bad = GaussianScheme {
            theta_p2pr: 2.0,
            ..Default::default()
        };
        let sw = Sweep::from_schemes("mixed", vec![bad, GaussianScheme::default()]);
        let r = theorem1_region_gaussian(&ch, &sw).unwrap();
        assert_eq!((r.accepted, r.rejected), (1, 1));
        let only_bad = Sweep::from_schemes("bad", vec![bad]);
        assert!(matches!(
            theorem1_region_gaussian(&ch, &only_bad),
            Err(Error::AllRejected(1))
        ));
    }

    #[test]
    fn sobol_is_deterministic() {
        let ch = GaussianChannel::new(6.0, 6.0, 4.0, 0.55, 0.55).unwrap();
        let fam = Family::full(ScheduleMode::Random);
        assert_eq!(
            Sweep::sobol(&ch, &fam, 64, 9),
            Sweep::sobol(&ch, &fam, 64, 9)
        );
        assert_ne!(
            Sweep::sobol(&ch, &fam, 64, 9),
            Sweep::sobol(&ch, &fam, 64, 10)
        );
    }
}
