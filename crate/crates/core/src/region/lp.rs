//! Dense two-phase simplex for the small programs met in projection.
//!
//! All variables are implicitly non-negative.

const PIVOT_EPS: f64 = 1e-11;
const COST_EPS: f64 = 1e-11;
const DANTZIG_ITERATIONS: usize = 200;
const MAX_ITERATIONS: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub cmp: Cmp,
    pub rhs: f64,
}

impl Constraint {
    pub fn le(coeffs: Vec<f64>, rhs: f64) -> Self {
        Self {
            coeffs,
            cmp: Cmp::Le,
            rhs,
        }
    }

    pub fn eq(coeffs: Vec<f64>, rhs: f64) -> Self {
        Self {
            coeffs,
            cmp: Cmp::Eq,
            rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<f64>, value: f64 },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: usize,
    width: usize,
    cells: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    fn at(&self, r: usize, c: usize) -> f64 {
        self.cells[r * self.width + c]
    }

    fn rhs(&self, r: usize) -> f64 {
        self.at(r, self.width - 1)
    }

    /// Index of the objective row (the last one).
    fn obj(&self) -> usize {
        self.rows
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let w = self.width;
        let p = self.cells[r * w + c];
        for k in 0..w {
            self.cells[r * w + k] /= p;
        }
        let pivot_row: Vec<f64> = self.cells[r * w..(r + 1) * w].to_vec();
        for i in 0..=self.rows {
            if i == r {
                continue;
            }
            let f = self.cells[i * w + c];
            if f == 0.0 {
                continue;
            }
            let row = &mut self.cells[i * w..(i + 1) * w];
            for (dst, src) in row.iter_mut().zip(&pivot_row) {
                *dst -= f * src;
            }
            row[c] = 0.0;
        }
        self.basis[r] = c;
    }

    /// Maximizes the objective encoded in the last row over `allowed` columns.
    /// Returns `false` when unbounded.
    fn run(&mut self, allowed: &[bool]) -> Option<bool> {
        let obj = self.obj();
        for iter in 0..MAX_ITERATIONS {
            let bland = iter >= DANTZIG_ITERATIONS;
            let mut enter = None;
            let mut best = -COST_EPS;
            for (j, ok) in allowed.iter().enumerate() {
                if !ok {
                    continue;
                }
                let v = self.at(obj, j);
                if v < best {
                    enter = Some(j);
                    if bland {
                        break;
                    }
                    best = v;
                }
            }
            let Some(c) = enter else {
                return Some(true);
            };
            let mut leave: Option<(usize, f64)> = None;
            for r in 0..self.rows {
                let a = self.at(r, c);
                if a > PIVOT_EPS {
                    let ratio = self.rhs(r) / a;
                    let better = match leave {
                        None => true,
                        Some((lr, lratio)) => {
                            ratio < lratio - 1e-15
                                || (ratio <= lratio + 1e-15 && self.basis[r] < self.basis[lr])
                        }
                    };
                    if better {
                        leave = Some((r, ratio));
                    }
                }
            }
            match leave {
                None => return Some(false),
                Some((r, _)) => self.pivot(r, c),
            }
        }
        None
    }
}

/// Maximizes `objective . x` subject to `constraints` and `x >= 0`.
pub fn maximize(objective: &[f64], constraints: &[Constraint]) -> LpOutcome {
    let n = objective.len();
    let m = constraints.len();
    let mut slack_cols = 0;
    let mut art_cols = 0;
    let normalized: Vec<(Vec<f64>, Cmp, f64)> = constraints
        .iter()
        .map(|c| {
            debug_assert_eq!(c.coeffs.len(), n);
            if c.rhs < 0.0 {
                let cmp = match c.cmp {
                    Cmp::Le => Cmp::Ge,
                    Cmp::Ge => Cmp::Le,
                    Cmp::Eq => Cmp::Eq,
                };
                (c.coeffs.iter().map(|v| -v).collect(), cmp, -c.rhs)
            } else {
                (c.coeffs.clone(), c.cmp, c.rhs)
            }
        })
        .inspect(|(_, cmp, _)| {
            if *cmp != Cmp::Eq {
                slack_cols += 1;
            }
            if *cmp != Cmp::Le {
                art_cols += 1;
            }
        })
        .collect();

    let total = n + slack_cols + art_cols;
    let width = total + 1;
    let mut t = Tableau {
        rows: m,
        width,
        cells: vec![0.0; (m + 1) * width],
        basis: vec![0; m],
    };
    let mut is_art = vec![false; total];
    let (mut s, mut a) = (n, n + slack_cols);
    for (r, (coeffs, cmp, rhs)) in normalized.iter().enumerate() {
        t.cells[r * width..r * width + n].copy_from_slice(coeffs);
        t.cells[r * width + total] = *rhs;
        match cmp {
            Cmp::Le => {
                t.cells[r * width + s] = 1.0;
                t.basis[r] = s;
                s += 1;
            }
            Cmp::Ge => {
                t.cells[r * width + s] = -1.0;
                s += 1;
                t.cells[r * width + a] = 1.0;
                t.basis[r] = a;
                is_art[a] = true;
                a += 1;
            }
            Cmp::Eq => {
                t.cells[r * width + a] = 1.0;
                t.basis[r] = a;
                is_art[a] = true;
                a += 1;
            }
        }
    }

    let obj = t.obj();
    if art_cols > 0 {
        for (j, _) in is_art.iter().enumerate().filter(|(_, &a)| a) {
            t.cells[obj * width + j] = 1.0;
        }
        for r in 0..m {
            if is_art[t.basis[r]] {
                for k in 0..width {
                    t.cells[obj * width + k] -= t.cells[r * width + k];
                }
            }
        }
        let all = vec![true; total];
        if t.run(&all) != Some(true) {
            return LpOutcome::Infeasible;
        }
        let scale = normalized.iter().map(|c| c.2).fold(1.0, f64::max);
        if t.rhs(obj) < -1e-9 * scale {
            return LpOutcome::Infeasible;
        }
        // Drive remaining artificials out of the basis or drop their rows.
        let mut r = 0;
        while r < t.rows {
            if is_art[t.basis[r]] {
                let col = (0..total).find(|&j| !is_art[j] && t.at(r, j).abs() > 1e-9);
                match col {
                    Some(j) => t.pivot(r, j),
                    None => {
                        t.cells.drain(r * width..(r + 1) * width);
                        t.basis.remove(r);
                        t.rows -= 1;
                        continue;
                    }
                }
            }
            r += 1;
        }
    }

    let obj = t.obj();
    for k in 0..width {
        t.cells[obj * width + k] = 0.0;
    }
    for (j, c) in objective.iter().enumerate() {
        t.cells[obj * width + j] = -c;
    }
    for r in 0..t.rows {
        let b = t.basis[r];
        if b < n && objective[b] != 0.0 {
            let cb = objective[b];
            for k in 0..width {
                t.cells[obj * width + k] += cb * t.cells[r * width + k];
            }
        }
    }
    let allowed: Vec<bool> = is_art.iter().map(|a| !a).collect();
    match t.run(&allowed) {
        Some(true) => {}
        Some(false) => return LpOutcome::Unbounded,
        None => return LpOutcome::Infeasible,
    }
    let mut x = vec![0.0; n];
    for r in 0..t.rows {
        if t.basis[r] < n {
            x[t.basis[r]] = t.rhs(r).max(0.0);
        }
    }
    let value = objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    LpOutcome::Optimal { x, value }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn optimal(o: LpOutcome) -> (Vec<f64>, f64) {
        match o {
            LpOutcome::Optimal { x, value } => (x, value),
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn textbook_maximum() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36.
        let rows = vec![
            Constraint::le(vec![1.0, 0.0], 4.0),
            Constraint::le(vec![0.0, 2.0], 12.0),
            Constraint::le(vec![3.0, 2.0], 18.0),
        ];
        let (x, v) = optimal(maximize(&[3.0, 5.0], &rows));
        assert!((v - 36.0).abs() < 1e-12);
        assert!((x[0] - 2.0).abs() < 1e-12 && (x[1] - 6.0).abs() < 1e-12);
    }

    #[test]
    fn equality_and_lower_bound() {
        // max x subject to x + y = 3, y >= 1.
        let rows = vec![
            Constraint::eq(vec![1.0, 1.0], 3.0),
            Constraint {
                coeffs: vec![0.0, 1.0],
                cmp: Cmp::Ge,
                rhs: 1.0,
            },
        ];
        let (x, v) = optimal(maximize(&[1.0, 0.0], &rows));
        assert!((v - 2.0).abs() < 1e-12);
        assert!((x[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn detects_infeasible_and_unbounded() {
        let infeasible = vec![Constraint::le(vec![1.0], -1.0)];
        assert_eq!(maximize(&[1.0], &infeasible), LpOutcome::Infeasible);
        let unbounded = vec![Constraint::le(vec![1.0, -1.0], 1.0)];
        assert_eq!(maximize(&[1.0, 1.0], &unbounded), LpOutcome::Unbounded);
    }

    #[test]
    fn degenerate_origin_only() {
        let rows = vec![Constraint::le(vec![1.0, 1.0], 0.0)];
        let (_, v) = optimal(maximize(&[1.0, 2.0], &rows));
        assert_eq!(v, 0.0);
    }
}
