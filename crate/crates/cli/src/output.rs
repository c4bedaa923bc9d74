use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use hdccrc_core::region::Region2D;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::Failure;

pub const TOOL: &str = env!("CARGO_PKG_NAME");
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Identifies the run that produced an output file.
#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub config_sha256: String,
    pub seed: Option<u64>,
}

impl Provenance {
    pub fn new(command: &'static str, config: &[u8], seed: Option<u64>) -> Self {
        Self {
            tool: TOOL,
            version: VERSION,
            command,
            config_sha256: hex::encode(Sha256::digest(config)),
            seed,
        }
    }

    pub fn comments(&self) -> Vec<String> {
        let mut c = vec![
            format!("{} {} {}", self.tool, self.version, self.command),
            format!("config sha256 {}", self.config_sha256),
        ];
        if let Some(s) = self.seed {
            c.push(format!("seed {s}"));
        }
        c
    }
}

pub fn read_config(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write(dir: &Path, name: &str, text: &str) -> Result<(), Failure> {
    fs::create_dir_all(dir)
        .map_err(|e| Failure::Usage(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    fs::write(&path, text)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

pub fn write_csv(
    dir: &Path,
    name: &str,
    region: &Region2D,
    prov: &Provenance,
) -> Result<(), Failure> {
    write(
        dir,
        &format!("{name}.csv"),
        &region.to_csv(&prov.comments()),
    )
}

/// `{"provenance": ..., "result": ...}`, pretty-printed.
pub fn write_json<T: Serialize>(
    dir: &Path,
    name: &str,
    prov: &Provenance,
    result: &T,
) -> Result<(), Failure> {
    #[derive(Serialize)]
    struct Doc<'a, T> {
        provenance: &'a Provenance,
        result: &'a T,
    }
    let mut text = serde_json::to_string_pretty(&Doc {
        provenance: prov,
        result,
    })
    .map_err(|e| Failure::Domain(format!("cannot serialize {name}: {e}")))?;
    text.push('\n');
    write(dir, &format!("{name}.json"), &text)
}

/// One closed polygon per region, as gnuplot data blocks separated by
/// two blank lines (select with `index`).
pub fn write_gnuplot(
    dir: &Path,
    regions: &[(&str, &Region2D)],
    prov: &Provenance,
) -> Result<(), Failure> {
    let mut out = String::new();
    for c in prov.comments() {
        let _ = writeln!(out, "# {c}");
    }
    for (k, (name, r)) in regions.iter().enumerate() {
        if k > 0 {
            out.push_str("\n\n");
        }
        let _ = writeln!(out, "# {name}");
        let v = r.vertices();
        for p in v.iter().chain(v.first()) {
            let _ = writeln!(out, "{:.12} {:.12}", p.0, p.1);
        }
    }
    write(dir, "regions.dat", &out)
}
