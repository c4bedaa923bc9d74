use std::collections::BTreeMap;

use hdccrc_core::config::{DmcConfig, GaussianConfig};
use hdccrc_core::gaussian::{
    run_compare, theorem1_region_gaussian, CompareSpec, Family, GaussianScheme, ScheduleMode, Sweep,
};
use hdccrc_core::probability::{validate_channel, validate_half_duplex, ValidationReport};
use hdccrc_core::region::{dmc_law_region, Point, Region2D};
use rayon::prelude::*;
use serde::Serialize;

use crate::output::{read_config, write_csv, write_gnuplot, write_json, Provenance};
use crate::{Common, Failure};

fn text(bytes: &[u8]) -> Result<&str, Failure> {
    std::str::from_utf8(bytes).map_err(|e| Failure::Usage(format!("config is not UTF-8: {e}")))
}

fn usage(e: hdccrc_core::Error) -> Failure {
    Failure::Usage(e.to_string())
}

fn tolerance(c: &Common, default: f64) -> Result<f64, Failure> {
    let tol = c.tol.unwrap_or(default);
    if tol.is_finite() && tol >= 0.0 {
        Ok(tol)
    } else {
        Err(Failure::Usage(format!(
            "tolerance {tol} must be finite and non-negative"
        )))
    }
}

pub fn validate(c: &Common) -> Result<(), Failure> {
    let bytes = read_config(&c.config)?;
    let cfg = DmcConfig::parse(text(&bytes)?).map_err(usage)?;
    let chan = cfg.channel().map_err(usage)?;
    let laws = cfg.explicit_laws().map_err(usage)?;
    let mut report = validate_channel(&chan);
    let mut failed = !report.passed();
    for (k, law) in laws.iter().enumerate() {
        let r = validate_half_duplex(law);
        failed |= !r.passed();
        report = report.merge(ValidationReport {
            checks: r
                .checks
                .into_iter()
                .map(|mut ch| {
                    ch.description = format!("law {k}: {}", ch.description);
                    ch
                })
                .collect(),
        });
    }
    if failed {
        eprint!("{report}");
        return Err(Failure::Domain("validation failed".into()));
    }
    println!("channel and {} law(s) pass", laws.len());
    Ok(())
}

#[derive(Serialize)]
struct VertexSource<T> {
    point: Point,
    source: Option<T>,
}

#[derive(Serialize)]
struct DmcResult {
    laws: usize,
    accepted: usize,
    rejected: Vec<(usize, String)>,
    region: Region2D,
    vertices: Vec<VertexSource<usize>>,
}

pub fn dmc_region(c: &Common) -> Result<(), Failure> {
    let bytes = read_config(&c.config)?;
    let cfg = DmcConfig::parse(text(&bytes)?).map_err(usage)?;
    let chan = cfg.channel().map_err(usage)?;
    let mut laws = cfg.explicit_laws().map_err(usage)?;
    laws.extend(cfg.random_laws(c.seed).map_err(usage)?);
    if laws.is_empty() {
        return Err(Failure::Usage("the configuration declares no laws".into()));
    }
    let results: Vec<_> = laws.par_iter().map(|l| dmc_law_region(l, &chan)).collect();
    let mut tagged = Vec::new();
    let mut rejected = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(region) => tagged.extend(region.vertices().iter().map(|&p| (p, i))),
            Err(e) => rejected.push((i, e.to_string())),
        }
    }
    if rejected.len() == laws.len() {
        return Err(Failure::Domain(format!(
            "all {} laws rejected: {}",
            laws.len(),
            rejected[0].1
        )));
    }
    let (region, sources) = Region2D::hull_tagged(&tagged).map_err(Failure::from)?;
    let seed = cfg.random.as_ref().and(c.seed.or(cfg.seed));
    let prov = Provenance::new("dmc-region", &bytes, seed);
    write_csv(&c.out, "dmc_region", &region, &prov)?;
    let result = DmcResult {
        laws: laws.len(),
        accepted: laws.len() - rejected.len(),
        rejected,
        vertices: region
            .vertices()
            .iter()
            .zip(sources)
            .map(|(&point, source)| VertexSource { point, source })
            .collect(),
        region,
    };
    write_json(&c.out, "dmc_region", &prov, &result)?;
    if c.gnuplot_data {
        write_gnuplot(&c.out, &[("dmc_region", &result.region)], &prov)?;
    }
    println!(
        "{} of {} laws accepted; max R_P {:.6}, max R_C {:.6}",
        result.accepted,
        result.laws,
        result.region.max_rp(),
        result.region.max_rc()
    );
    Ok(())
}

#[derive(Serialize)]
struct GaussianResult {
    points: usize,
    schedule: ScheduleMode,
    accepted: usize,
    rejected: usize,
    rejections: BTreeMap<String, usize>,
    region: Region2D,
    vertices: Vec<VertexSource<GaussianScheme>>,
}

pub fn gaussian_region(c: &Common) -> Result<(), Failure> {
    let bytes = read_config(&c.config)?;
    let cfg = GaussianConfig::parse(text(&bytes)?).map_err(usage)?;
    let points = c.points.unwrap_or(cfg.sweep.points);
    let seed = c.seed.or(cfg.sweep.seed);
    let schedule = if c.fixed_schedule {
        ScheduleMode::Fixed
    } else {
        cfg.sweep.schedule
    };
    let mut sweep = Sweep::from_schemes("configured", Vec::new());
    if points > 0 {
        let seed = seed.ok_or_else(|| Failure::Usage("a sampled sweep needs a seed".into()))?;
        let family = Family {
            listen_power_share: cfg.sweep.listen_power_share,
            ..Family::full(schedule)
        };
        sweep = Sweep::sobol(&cfg.channel, &family, points, seed);
    }
    let extra: Vec<GaussianScheme> = cfg
        .sweep
        .schemes
        .iter()
        .map(|s| {
            if c.fixed_schedule {
                GaussianScheme { schedule, ..*s }
            } else {
                *s
            }
        })
        .collect();
    sweep.extend(Sweep::from_schemes("configured", extra));
    if sweep.is_empty() {
        return Err(Failure::Usage("the sweep is empty".into()));
    }
    let r = theorem1_region_gaussian(&cfg.channel, &sweep)?;
    let prov = Provenance::new("gaussian-region", &bytes, sweep.seed);
    write_csv(&c.out, "gaussian_region", &r.region, &prov)?;
    let result = GaussianResult {
        points: sweep.len(),
        schedule,
        accepted: r.accepted,
        rejected: r.rejected,
        rejections: r.rejections.clone(),
        vertices: r
            .region
            .vertices()
            .iter()
            .zip(&r.vertex_sources)
            .map(|(&point, src)| VertexSource {
                point,
                source: src.map(|i| r.schemes[i]),
            })
            .collect(),
        region: r.region.clone(),
    };
    write_json(&c.out, "gaussian_region", &prov, &result)?;
    if c.gnuplot_data {
        write_gnuplot(&c.out, &[("gaussian_region", &r.region)], &prov)?;
    }
    println!(
        "{} of {} schemes accepted; max R_P {:.6}, max R_C {:.6}, area {:.6}",
        r.accepted,
        sweep.len(),
        r.region.max_rp(),
        r.region.max_rc(),
        r.region.area()
    );
    Ok(())
}

pub fn protocols(c: &Common, gate: bool) -> Result<(), Failure> {
    let bytes = read_config(&c.config)?;
    let cfg = GaussianConfig::parse(text(&bytes)?).map_err(usage)?;
    let spec = CompareSpec {
        points: c.points.unwrap_or(cfg.compare.points),
        seed: c.seed.unwrap_or(cfg.compare.seed),
        tolerance: tolerance(c, cfg.compare.tolerance)?,
        schedule: if c.fixed_schedule {
            ScheduleMode::Fixed
        } else {
            cfg.compare.schedule
        },
        ..cfg.compare.clone()
    };
    let report = run_compare(&cfg.channel, &spec)?;
    let command = if gate { "compare" } else { "protocols" };
    let prov = Provenance::new(command, &bytes, Some(spec.seed));
    let regions = [
        ("noncausal", &report.noncausal),
        ("protocol1", &report.protocol1),
        ("protocol2", &report.protocol2),
        ("protocol3", &report.protocol3),
        ("protocol4", &report.protocol4),
        ("r0", &report.r0),
        ("r", &report.r),
    ];
    for (name, region) in regions {
        write_csv(&c.out, name, region, &prov)?;
    }
    write_json(&c.out, command, &prov, &report)?;
    if c.gnuplot_data {
        write_gnuplot(&c.out, &regions, &prov)?;
    }
    println!(
        "R0 inside R: {} (max violation {:.3e}, tolerance {:.1e})",
        report.contained, report.max_violation, spec.tolerance
    );
    println!(
        "area R0 {:.6}, area R {:.6}, margin {:.6}",
        report.area_r0, report.area_r, report.area_margin
    );
    if gate && !report.contained {
        return Err(Failure::Domain(format!(
            "protocol hull leaves the swept region by {:.3e} bits",
            report.max_violation
        )));
    }
    Ok(())
}
