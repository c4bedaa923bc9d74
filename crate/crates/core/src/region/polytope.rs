use serde::{Deserialize, Serialize};

use super::lp::{maximize, Constraint, LpOutcome};
use super::terms::{
    MiTerms, CONSTRAINT_IDS, LHS_MAP, PRIMARY_COLUMNS, RATE_VARIABLES, SECONDARY_COLUMNS,
};
use crate::error::{Error, Result};

pub const DIM: usize = RATE_VARIABLES.len();

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RowKind {
    Constraint(char),
    NonNegative(usize),
    /// `x[k] <= 0`: the column is switched off.
    Forced(usize),
}

/// `coeffs . x <= bound`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Inequality {
    pub kind: RowKind,
    pub coeffs: [f64; DIM],
    pub bound: f64,
}

/// Rate-split polytope over [`RATE_VARIABLES`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatePolytope {
    rows: Vec<Inequality>,
}

/// Emits one row per constraint present in `terms`, then the seven
/// non-negativity rows.
pub fn build_polytope(terms: &MiTerms) -> RatePolytope {
    let mut rows = Vec::with_capacity(CONSTRAINT_IDS.len() + DIM);
    for (id, cols) in LHS_MAP {
        if let Some(bound) = terms.get(id) {
            let mut coeffs = [0.0; DIM];
            for &c in cols {
                coeffs[c] = 1.0;
            }
            rows.push(Inequality {
                kind: RowKind::Constraint(id),
                coeffs,
                bound,
            });
        }
    }
    for k in 0..DIM {
        let mut coeffs = [0.0; DIM];
        coeffs[k] = -1.0;
        rows.push(Inequality {
            kind: RowKind::NonNegative(k),
            coeffs,
            bound: 0.0,
        });
    }
    RatePolytope { rows }
}

/// `(sum of primary columns, sum of secondary columns)`.
pub fn project_point(x: &[f64; DIM]) -> (f64, f64) {
    (
        PRIMARY_COLUMNS.iter().map(|&k| x[k]).sum(),
        SECONDARY_COLUMNS.iter().map(|&k| x[k]).sum(),
    )
}

impl RatePolytope {
    pub fn rows(&self) -> &[Inequality] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, id: char) -> Option<&Inequality> {
        self.rows.iter().find(|r| r.kind == RowKind::Constraint(id))
    }

    /// Largest amount by which `x` violates any row.
    pub fn max_violation(&self, x: &[f64; DIM]) -> f64 {
        self.rows
            .iter()
            .map(|r| r.coeffs.iter().zip(x).map(|(a, v)| a * v).sum::<f64>() - r.bound)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn contains(&self, x: &[f64; DIM], tol: f64) -> bool {
        self.max_violation(x) <= tol
    }

    /// Adds `x[col] <= 0`.
    pub fn force_zero(&mut self, col: usize) {
        let mut coeffs = [0.0; DIM];
        coeffs[col] = 1.0;
        self.rows.push(Inequality {
            kind: RowKind::Forced(col),
            coeffs,
            bound: 0.0,
        });
    }

    /// Constraint and forced rows as LP constraints; non-negativity is implicit there.
    pub(crate) fn lp_rows(&self) -> Vec<Constraint> {
        self.rows
            .iter()
            .filter(|r| !matches!(r.kind, RowKind::NonNegative(_)))
            .map(|r| Constraint::le(r.coeffs.to_vec(), r.bound))
            .collect()
    }

    /// Maximizes `weights . x` over the polytope.
    pub fn maximize(&self, weights: &[f64; DIM]) -> Result<([f64; DIM], f64)> {
        match maximize(weights, &self.lp_rows()) {
            LpOutcome::Optimal { x, value } => {
                let mut out = [0.0; DIM];
                out.copy_from_slice(&x);
                Ok((out, value))
            }
            LpOutcome::Infeasible => Err(Error::Infeasible),
            LpOutcome::Unbounded => Err(Error::Unbounded),
        }
    }

    /// Whether every rate variable has a finite maximum.
    pub fn is_bounded(&self) -> bool {
        (0..DIM).all(|k| {
            let mut w = [0.0; DIM];
            w[k] = 1.0;
            self.maximize(&w).is_ok()
        })
    }

    /// A split vector projecting onto `point`, if one exists within `tol`.
    pub fn lift(&self, point: (f64, f64), tol: f64) -> Option<[f64; DIM]> {
        let mut p = [0.0; DIM];
        let mut c = [0.0; DIM];
        PRIMARY_COLUMNS.iter().for_each(|&k| p[k] = 1.0);
        SECONDARY_COLUMNS.iter().for_each(|&k| c[k] = 1.0);
        let mut rows = self.lp_rows();
        rows.push(Constraint::le(p.to_vec(), point.0));
        rows.push(Constraint::le(c.to_vec(), point.1));
        let w: Vec<f64> = (0..DIM).map(|k| p[k] + c[k]).collect();
        let LpOutcome::Optimal { x, .. } = maximize(&w, &rows) else {
            return None;
        };
        let mut out = [0.0; DIM];
        out.copy_from_slice(&x);
        let (rp, rc) = project_point(&out);
        let ok = rp >= point.0 - tol && rc >= point.1 - tol && self.contains(&out, tol);
        ok.then_some(out)
    }
}
