#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hdccrc_core::probability::HalfDuplexLaw;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hdccrc"))
        .args(args)
        .env_remove("CCRC_THREADS")
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn law(alpha: f64, seed: u64) -> HalfDuplexLaw {
    HalfDuplexLaw::random(
        common::alphabets(),
        alpha,
        &mut ChaCha8Rng::seed_from_u64(seed),
    )
    .unwrap()
}

fn dmc_file(dir: &Path, laws: &[HalfDuplexLaw], random: Option<(u64, Vec<f64>, usize)>) -> PathBuf {
    write(
        dir,
        "dmc.toml",
        &common::dmc_config(laws, random).to_toml().unwrap(),
    )
}

/// Vertices of a written region CSV.
fn csv_points(path: &Path) -> Vec<(f64, f64)> {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    assert_eq!(lines.next(), Some("R_P_bits,R_C_bits"));
    lines
        .map(|l| {
            let (a, b) = l.split_once(',').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect()
}

const GAUSSIAN_SMALL: &str = "\
[channel]
p_p = 2.0
p_c = 2.0
g_pc = 3.0
h_pc = 0.5
h_cp = 0.5

[sweep]
points = 64
seed = 3

[compare]
points = 128
noncausal_points = 32
alpha_steps = 4
eta_steps = 4
protocol3_steps = 4
protocol4_theta = [0.5, 1.0]
protocol4_beta = [0.0, 0.5, 1.0]
";

#[test]
fn validate_accepts_generated_law() {
    let dir = TempDir::new().unwrap();
    let cfg = dmc_file(dir.path(), &[law(0.5, 1)], None);
    let o = run(&["validate", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stdout).contains("1 law(s) pass"));
}

#[test]
fn validate_names_the_broken_restriction() {
    let dir = TempDir::new().unwrap();
    let mut cfg = common::dmc_config(&[law(0.5, 2)], None);
    common::break_x_p1co(&mut cfg.laws[0]);
    let path = write(dir.path(), "bad.toml", &cfg.to_toml().unwrap());
    let o = run(&["validate", "--config", path.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("(2g)"), "{err}");
}

#[test]
fn malformed_inputs_are_usage_errors() {
    let dir = TempDir::new().unwrap();
    let bad = write(dir.path(), "bad.toml", "[channel\ntable = 3");
    assert_eq!(
        code(&run(&["validate", "--config", bad.to_str().unwrap()])),
        2
    );
    let missing = dir.path().join("missing.toml");
    assert_eq!(
        code(&run(&["validate", "--config", missing.to_str().unwrap()])),
        2
    );
    assert_eq!(
        code(&run(&["compare", "--config", bad.to_str().unwrap()])),
        2
    );
    assert_eq!(code(&run(&["frobnicate"])), 2);
    let cfg = write(dir.path(), "g.toml", GAUSSIAN_SMALL);
    let o = run(&["compare", "--config", cfg.to_str().unwrap(), "--tol", "-1"]);
    assert_eq!(code(&o), 2);
    let o = Command::new(env!("CARGO_BIN_EXE_hdccrc"))
        .args(["gaussian-region", "--config", cfg.to_str().unwrap()])
        .env("CCRC_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn single_law_region() {
    let dir = TempDir::new().unwrap();
    let cfg = dmc_file(dir.path(), &[law(0.4, 3)], None);
    let out = dir.path().join("out");
    let o = run(&[
        "dmc-region",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let pts = csv_points(&out.join("dmc_region.csv"));
    let segment = pts.len() == 2 && pts.iter().all(|p| p.1 == 0.0 || p.0 == 0.0);
    assert!(pts.len() >= 3 || segment, "{pts:?}");
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("dmc_region.json")).unwrap()).unwrap();
    assert_eq!(json["provenance"]["tool"], "hdccrc");
    assert_eq!(
        json["provenance"]["config_sha256"].as_str().unwrap().len(),
        64
    );
    assert_eq!(json["result"]["accepted"], 1);
}

#[test]
fn full_listening_law_has_no_secondary_rate() {
    let dir = TempDir::new().unwrap();
    let cfg = dmc_file(dir.path(), &[law(1.0, 4)], None);
    let o = run(&[
        "dmc-region",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let pts = csv_points(&dir.path().join("dmc_region.csv"));
    assert!(pts.iter().all(|p| p.1 == 0.0), "{pts:?}");
}

#[test]
fn random_laws_need_a_seed() {
    let dir = TempDir::new().unwrap();
    let mut cfg = common::dmc_config(&[], Some((1, vec![0.5], 2)));
    cfg.seed = None;
    let path = write(dir.path(), "d.toml", &cfg.to_toml().unwrap());
    let o = run(&[
        "dmc-region",
        "--config",
        path.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 2);
    let o = run(&[
        "dmc-region",
        "--config",
        path.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
        "--seed",
        "5",
    ]);
    assert_eq!(code(&o), 0);
}

#[test]
fn gaussian_region_writes_sources() {
    let dir = TempDir::new().unwrap();
    let cfg = write(dir.path(), "g.toml", GAUSSIAN_SMALL);
    let o = run(&[
        "gaussian-region",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
        "--gnuplot-data",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("gaussian_region.json")).unwrap())
            .unwrap();
    assert_eq!(json["result"]["points"], 64);
    assert!(json["result"]["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .any(|v| v["source"].is_object()));
    assert!(fs::read_to_string(dir.path().join("regions.dat"))
        .unwrap()
        .contains("# gaussian_region"));
    let fixed = run(&[
        "gaussian-region",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
        "--fixed-schedule",
        "--points",
        "16",
    ]);
    assert_eq!(code(&fixed), 0);
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("gaussian_region.json")).unwrap())
            .unwrap();
    assert_eq!(json["result"]["schedule"], "fixed");
}

#[test]
fn silent_secondary_collapses_onto_primary_axis() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        dir.path(),
        "g.toml",
        &GAUSSIAN_SMALL.replace("p_c = 2.0", "p_c = 0.0"),
    );
    let o = run(&[
        "compare",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    for name in [
        "noncausal",
        "protocol1",
        "protocol2",
        "protocol3",
        "protocol4",
        "r0",
        "r",
    ] {
        let pts = csv_points(&dir.path().join(format!("{name}.csv")));
        assert!(pts.iter().all(|p| p.1 == 0.0), "{name}: {pts:?}");
    }
}

#[test]
fn compare_at_zero_tolerance() {
    let dir = TempDir::new().unwrap();
    let cfg = write(dir.path(), "g.toml", GAUSSIAN_SMALL);
    let o = run(&[
        "compare",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
        "--tol",
        "0",
    ]);
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("compare.json")).unwrap())
            .unwrap();
    assert!(json["result"]["max_violation"].as_f64().unwrap() <= 0.0);
    assert_eq!(code(&o), 0);
}

#[test]
fn outputs_are_reproducible() {
    let dir = TempDir::new().unwrap();
    let dmc = dmc_file(dir.path(), &[law(0.3, 6)], Some((17, vec![0.2, 0.7], 3)));
    let gauss = write(dir.path(), "g.toml", GAUSSIAN_SMALL);
    for (cmd, cfg) in [
        ("dmc-region", &dmc),
        ("gaussian-region", &gauss),
        ("protocols", &gauss),
    ] {
        let a = dir.path().join(format!("{cmd}-a"));
        let b = dir.path().join(format!("{cmd}-b"));
        for out in [&a, &b] {
            let o = run(&[
                cmd,
                "--config",
                cfg.to_str().unwrap(),
                "--out",
                out.to_str().unwrap(),
                "--gnuplot-data",
            ]);
            assert_eq!(code(&o), 0, "{cmd}: {}", String::from_utf8_lossy(&o.stderr));
        }
        let mut names: Vec<_> = fs::read_dir(&a)
            .unwrap()
            .map(|e| e.unwrap().file_name())
            .collect();
        names.sort();
        assert!(names.len() >= 2);
        for n in names {
            assert_eq!(
                fs::read(a.join(&n)).unwrap(),
                fs::read(b.join(&n)).unwrap(),
                "{cmd}: {n:?}"
            );
        }
    }
}
