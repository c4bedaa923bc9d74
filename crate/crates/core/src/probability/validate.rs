use std::fmt;

use serde::{Deserialize, Serialize};

use super::channel::ChannelSpec;
use super::law::{restricted_state, Conditional, HalfDuplexLaw, StateRole};
use super::pmf::PMF_TOLERANCE;
use super::vars::*;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub description: String,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn merge(mut self, other: ValidationReport) -> Self {
        self.checks.extend(other.checks);
        self
    }

    fn push(&mut self, id: &str, description: &str, failure: Option<String>) {
        self.checks.push(Check {
            id: id.to_string(),
            description: description.to_string(),
            passed: failure.is_none(),
            detail: failure,
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            write!(f, "{tag} {} {}", c.id, c.description)?;
            if let Some(d) = &c.detail {
                write!(f, ": {d}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// The eight codeword restrictions, in order, with the variable they bind.
pub const RESTRICTIONS: [(&str, &str); 8] = [
    ("(2a)", T_P1CO),
    ("(2b)", T_P1PR),
    ("(2c)", X_P2CO),
    ("(2d)", X_P2PR),
    ("(2e)", U_CCO),
    ("(2f)", U_CPR),
    ("(2g)", X_P1CO),
    ("(2h)", X_P1PR),
];

fn describe_row(law: &HalfDuplexLaw, c: &Conditional, row: usize) -> String {
    let tuple = c.parent_tuple(row);
    c.parents
        .iter()
        .zip(tuple)
        .map(|(p, i)| format!("{p}={}", law.alphabet(p).symbol(i)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn row_normalization_failure(c: &Conditional) -> Option<String> {
    for r in 0..c.row_count() {
        let row = &c.table[r * c.child_dim..(r + 1) * c.child_dim];
        if let Some(p) = row.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Some(format!("row {r} has entry {p}"));
        }
        let total: f64 = row.iter().sum();
        if (total - 1.0).abs() > PMF_TOLERANCE {
            return Some(format!("row {r} sums to {total}"));
        }
    }
    None
}

/// Checks factor normalization, the eight codeword restrictions and the
/// null-input rule for `x_c` in the listen state.
pub fn validate_half_duplex(law: &HalfDuplexLaw) -> ValidationReport {
    let mut report = ValidationReport::default();

    let norm = law
        .conditionals()
        .iter()
        .find_map(|c| row_normalization_failure(c).map(|e| format!("p({} | ..): {e}", c.child)));
    report.push("norm", "every factor slice sums to 1", norm);

    let l = law.listen_index();
    for (id, var) in RESTRICTIONS {
        let c = law.conditional(var);
        let role = restricted_state(var).expect("restricted variable");
        let description = match role {
            StateRole::Listen => format!("{var} is null when s=l"),
            StateRole::Transmit => format!("{var} is null when s=t"),
        };
        let failure = match law.alphabet(var).null() {
            None => Some(format!("alphabet of {var} has no null symbol")),
            Some(null) => {
                let s_pos = c.parents.iter().position(|p| p == S).expect("s parent");
                (0..c.row_count()).find_map(|r| {
                    let tuple = c.parent_tuple(r);
                    let in_state = (tuple[s_pos] == l) == (role == StateRole::Listen);
                    if !in_state {
                        return None;
                    }
                    let row = c.row(&tuple);
                    let ok = row.iter().enumerate().all(|(i, &p)| {
                        if i == null {
                            (p - 1.0).abs() <= PMF_TOLERANCE
                        } else {
                            p.abs() <= PMF_TOLERANCE
                        }
                    });
                    (!ok).then(|| {
                        format!(
                            "slice [{}]: p({var}={}) = {}",
                            describe_row(law, c, r),
                            law.alphabet(var).symbol(null),
                            row[null]
                        )
                    })
                })
            }
        };
        report.push(id, &description, failure);
    }

    let map = law.x_c_map();
    let failure = match law.alphabet(X_C).null() {
        None => Some("alphabet of x_c has no null symbol".to_string()),
        Some(null) => (0..map.table.len()).find_map(|r| {
            let t = map.parent_tuple(r);
            (t[0] == l && map.table[r] != null).then(|| {
                format!(
                    "x_c = {} for parents {:?}",
                    law.alphabet(X_C).symbol(map.table[r]),
                    t
                )
            })
        }),
    };
    report.push("x_c-null", "x_c is null when s=l", failure);
    report
}

/// Checks the two structural clauses of the half-duplex channel law.
pub fn validate_channel(chan: &ChannelSpec) -> ValidationReport {
    let mut report = ValidationReport::default();
    let dim = |n: &str| chan.alphabet(n).len();
    let (nxp, nxc, ns) = (dim(X_P), dim(X_C), dim(S));
    let (nyp, nyc, nv) = (dim(Y_P), dim(Y_C), dim(V_C));
    let l = chan.listen_index();

    let mut norm = None;
    'outer: for xp in 0..nxp {
        for xc in 0..nxc {
            for s in 0..ns {
                let row = chan.row(xp, xc, s);
                if let Some(p) = row.iter().find(|p| !p.is_finite() || **p < 0.0) {
                    norm = Some(format!("row (x_p={xp}, x_c={xc}, s={s}) has entry {p}"));
                    break 'outer;
                }
                let total: f64 = row.iter().sum();
                if (total - 1.0).abs() > PMF_TOLERANCE {
                    norm = Some(format!("row (x_p={xp}, x_c={xc}, s={s}) sums to {total}"));
                    break 'outer;
                }
            }
        }
    }
    report.push("norm", "every channel slice sums to 1", norm);

    let erasure = match chan.alphabet(V_C).erasure() {
        None => Some("alphabet of v_c has no erasure symbol".to_string()),
        Some(e) => {
            let mut fail = None;
            'erasure: for xp in 0..nxp {
                for xc in 0..nxc {
                    let mut pe = 0.0;
                    for yp in 0..nyp {
                        for yc in 0..nyc {
                            pe += chan.prob(xp, xc, 1 - l, yp, yc, e);
                        }
                    }
                    if (pe - 1.0).abs() > PMF_TOLERANCE {
                        fail = Some(format!(
                            "Pr[v_c=e | x_p={}, x_c={}, s=t] = {pe}",
                            chan.alphabet(X_P).symbol(xp),
                            chan.alphabet(X_C).symbol(xc)
                        ));
                        break 'erasure;
                    }
                }
            }
            fail
        }
    };
    report.push("eq1-erasure", "v_c is erased when s=t", erasure);

    let mut listen = None;
    'listen: for xp in 0..nxp {
        let base = chan.row(xp, 0, l);
        for xc in 1..nxc {
            let row = chan.row(xp, xc, l);
            if let Some(k) = (0..nyp * nyc * nv).find(|&k| (row[k] - base[k]).abs() > PMF_TOLERANCE)
            {
                listen = Some(format!(
                    "outputs depend on x_c under s=l (x_p={}, x_c={} vs {}, entry {k})",
                    chan.alphabet(X_P).symbol(xp),
                    chan.alphabet(X_C).symbol(xc),
                    chan.alphabet(X_C).symbol(0),
                ));
                break 'listen;
            }
        }
    }
    report.push("eq1-listen", "outputs depend on x_p only when s=l", listen);
    report
}
