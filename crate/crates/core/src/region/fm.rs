//! Fourier–Motzkin projection of split-rate systems onto `(R_P, R_C)`.

use super::lp::{maximize, Constraint, LpOutcome};
use super::polytope::RatePolytope;
use super::region2d::Region2D;
use super::terms::{
    PRIMARY_COLUMNS, R_CCO, R_CPR, R_E, R_P1PR, R_P2CO, R_P2PR, R_S, SECONDARY_COLUMNS,
};
use crate::error::{Error, Result};

/// Elimination order over the seven rate-split columns.
pub const ELIMINATION_ORDER: [usize; 7] = [R_CPR, R_CCO, R_P2PR, R_P2CO, R_P1PR, R_E, R_S];

const ZERO_COEFF: f64 = 1e-13;
const REDUNDANCY_SLACK: f64 = 1e-11;

#[derive(Debug, Clone, PartialEq)]
struct Row {
    a: Vec<f64>,
    b: f64,
}

impl Row {
    fn combine(&self, s: f64, other: &Row, t: f64) -> Row {
        Row {
            a: self
                .a
                .iter()
                .zip(&other.a)
                .map(|(x, y)| s * x + t * y)
                .collect(),
            b: s * self.b + t * other.b,
        }
    }
}

/// A linear system over `[R_P, R_C, split...]`.
///
/// Non-negativity of every live column is implicit: the LP treats all
/// columns as non-negative, and pairwise elimination pairs each
/// positive row with the column's own `-x <= 0`. Substituting a column
/// away through an equality turns its non-negativity into an explicit row.
struct System {
    width: usize,
    ineq: Vec<Row>,
    eq: Vec<Row>,
}

impl System {
    fn eliminate(&mut self, col: usize) -> Result<()> {
        if let Some(pos) = self.eq.iter().position(|r| r.a[col].abs() > ZERO_COEFF) {
            let e = self.eq.remove(pos);
            let ek = e.a[col];
            let mut nonneg = vec![0.0; self.width];
            nonneg[col] = -1.0;
            self.ineq.push(Row { a: nonneg, b: 0.0 });
            for r in self.ineq.iter_mut().chain(self.eq.iter_mut()) {
                let rk = r.a[col];
                if rk != 0.0 {
                    *r = r.combine(1.0, &e, -rk / ek);
                    r.a[col] = 0.0;
                }
            }
        } else {
            let (mut pos, mut neg, mut keep) = (Vec::new(), Vec::new(), Vec::new());
            let mut own = vec![0.0; self.width];
            own[col] = -1.0;
            neg.push(Row { a: own, b: 0.0 });
            for r in self.ineq.drain(..) {
                let k = r.a[col];
                if k > ZERO_COEFF {
                    pos.push(r);
                } else if k < -ZERO_COEFF {
                    neg.push(r);
                } else {
                    keep.push(r);
                }
            }
            for p in &pos {
                for q in &neg {
                    let mut r = p.combine(1.0 / p.a[col], q, -1.0 / q.a[col]);
                    r.a[col] = 0.0;
                    keep.push(r);
                }
            }
            self.ineq = keep;
        }
        self.cleanup()
    }

    fn cleanup(&mut self) -> Result<()> {
        let mut rows = Vec::with_capacity(self.ineq.len());
        for mut r in self.ineq.drain(..) {
            let scale = r.a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if scale <= ZERO_COEFF {
                if r.b < -1e-9 {
                    return Err(Error::Infeasible);
                }
                continue;
            }
            r.a.iter_mut().for_each(|v| {
                *v /= scale;
                if v.abs() <= ZERO_COEFF {
                    *v = 0.0;
                }
            });
            r.b /= scale;
            rows.push(r);
        }
        rows.sort_by(|x, y| {
            x.a.iter()
                .zip(&y.a)
                .map(|(p, q)| p.total_cmp(q))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(x.b.total_cmp(&y.b))
        });
        rows.dedup_by(|later, earlier| {
            later
                .a
                .iter()
                .zip(&earlier.a)
                .all(|(p, q)| (p - q).abs() <= 1e-12)
        });
        self.ineq = rows;
        self.drop_dominated();
        self.prune_redundant()
    }

    /// Drops `a.x <= b` when another row `c.x <= d` has `c >= a` and `d <= b`.
    fn drop_dominated(&mut self) {
        let n = self.ineq.len();
        let mut dead = vec![false; n];
        for i in 0..n {
            for j in 0..n {
                if i == j || dead[j] {
                    continue;
                }
                let (ri, rj) = (&self.ineq[i], &self.ineq[j]);
                if rj.b <= ri.b && rj.a.iter().zip(&ri.a).all(|(c, a)| c >= a) {
                    dead[i] = true;
                    break;
                }
            }
        }
        let mut k = 0;
        self.ineq.retain(|_| {
            k += 1;
            !dead[k - 1]
        });
    }

    fn prune_redundant(&mut self) -> Result<()> {
        let mut i = 0;
        while i < self.ineq.len() {
            let mut others: Vec<Constraint> = self
                .ineq
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, r)| Constraint::le(r.a.clone(), r.b))
                .collect();
            others.extend(self.eq.iter().map(|r| Constraint::eq(r.a.clone(), r.b)));
            let row = &self.ineq[i];
            match maximize(&row.a, &others) {
                LpOutcome::Optimal { value, .. }
                    if value <= row.b + REDUNDANCY_SLACK * row.b.abs().max(1.0) =>
                {
                    self.ineq.remove(i);
                }
                LpOutcome::Infeasible => return Err(Error::Infeasible),
                _ => i += 1,
            }
        }
        Ok(())
    }
}

/// Projects `{x >= 0 : rows}` onto `(sum x[p_cols], sum x[c_cols])`,
/// eliminating split columns in `order`.
pub fn project_sums(
    n: usize,
    rows: &[(Vec<f64>, f64)],
    p_cols: &[usize],
    c_cols: &[usize],
    order: &[usize],
) -> Result<Region2D> {
    let width = n + 2;
    let lift = |a: &[f64]| {
        let mut v = vec![0.0; width];
        v[2..].copy_from_slice(a);
        v
    };
    let ineq: Vec<Row> = rows
        .iter()
        .map(|(a, b)| Row { a: lift(a), b: *b })
        .collect();
    let sum_row = |axis: usize, cols: &[usize]| {
        let mut a = vec![0.0; width];
        a[axis] = 1.0;
        cols.iter().for_each(|&k| a[k + 2] = -1.0);
        Row { a, b: 0.0 }
    };
    let mut sys = System {
        width,
        ineq,
        eq: vec![sum_row(0, p_cols), sum_row(1, c_cols)],
    };
    sys.cleanup()?;
    for &k in order {
        sys.eliminate(k + 2)?;
    }
    if !sys.eq.is_empty() {
        return Err(Error::InvalidParameter(
            "elimination order leaves an aggregate-rate equality".into(),
        ));
    }

    let planar: Vec<(f64, f64, f64)> = sys.ineq.iter().map(|r| (r.a[0], r.a[1], r.b)).collect();
    let lp: Vec<Constraint> = planar
        .iter()
        .map(|&(a, b, c)| Constraint::le(vec![a, b], c))
        .collect();
    for w in [[1.0, 0.0], [0.0, 1.0]] {
        match maximize(&w, &lp) {
            LpOutcome::Optimal { .. } => {}
            LpOutcome::Unbounded => return Err(Error::Unbounded),
            LpOutcome::Infeasible => return Err(Error::Infeasible),
        }
    }
    Region2D::from_halfplanes(&planar)
}

/// Projection of the rate polytope onto `(R_P, R_C)` by Fourier–Motzkin
/// elimination with redundancy pruning after every step.
pub fn project_fm(poly: &RatePolytope) -> Result<Region2D> {
    let rows: Vec<(Vec<f64>, f64)> = poly
        .rows()
        .iter()
        .map(|r| (r.coeffs.to_vec(), r.bound))
        .collect();
    project_sums(
        7,
        &rows,
        &PRIMARY_COLUMNS,
        &SECONDARY_COLUMNS,
        &ELIMINATION_ORDER,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::region::{build_polytope, MiTerms};

    #[test]
    fn toy_triangle_without_elimination() {
        // Split columns are the aggregates themselves.
        let rows = vec![(vec![1.0, 1.0], 1.0)];
        let r = project_sums(2, &rows, &[0], &[1], &[0, 1]).unwrap();
        assert_eq!(r.vertices(), &[(1.0, 0.0), (0.0, 1.0), (0.0, 0.0)]);
    }

    #[test]
    fn unit_terms() {
        let poly = build_polytope(&MiTerms::from_array(0.5, [1.0; 18]).unwrap());
        let r = project_fm(&poly).unwrap();
        assert!((r.max_rp() - 1.0).abs() < 1e-12);
        assert!((r.max_rc() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_n_forces_primary_axis() {
        let mut v = [1.0; 18];
        v[13] = 0.0;
        let r = project_fm(&build_polytope(&MiTerms::from_array(0.5, v).unwrap())).unwrap();
        assert!(r.vertices().iter().all(|p| p.1 == 0.0));
    }

    #[test]
    fn missing_rows_are_unbounded() {
        let t = MiTerms::new(0.5, [('a', 1.0)]).unwrap();
        assert!(matches!(
            project_fm(&build_polytope(&t)),
            Err(Error::Unbounded)
        ));
    }
}
