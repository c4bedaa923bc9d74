//! Monte Carlo estimate of Gaussian conditional mutual information.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

/// `(mean, standard error)` of `I(X;Y|Z)` in bits from `n` samples of
/// `v = B e`, `e` i.i.d. standard normal, with the log density ratio
/// evaluated under the zero-mean Gaussian with covariance `density`.
///
/// `v` stacks `X` (`dx` entries), `Y` (`dy`), then `Z`.
pub fn mc_mi<R: Rng>(
    b: &DMatrix<f64>,
    dx: usize,
    dy: usize,
    density: &DMatrix<f64>,
    n: usize,
    rng: &mut R,
) -> (f64, f64) {
    let d = b.nrows();
    let x: Vec<usize> = (0..dx).collect();
    let y: Vec<usize> = (dx..dx + dy).collect();
    let z: Vec<usize> = (dx + dy..d).collect();
    let all: Vec<usize> = (0..d).collect();
    let xz: Vec<usize> = x.iter().chain(&z).copied().collect();
    let yz: Vec<usize> = y.iter().chain(&z).copied().collect();

    // log-ratio = c - q(v)/2 with q(v) = v' Q v
    let mut q = DMatrix::zeros(d, d);
    let mut c = 0.0;
    for (idx, sign) in [(&all, 1.0), (&z, 1.0), (&xz, -1.0), (&yz, -1.0)] {
        if idx.is_empty() {
            continue;
        }
        let k = density.select_rows(idx.iter()).select_columns(idx.iter());
        let chol = k.clone().cholesky().expect("positive definite block");
        let inv = chol.inverse();
        let logdet = 2.0 * chol.l().diagonal().iter().map(|v| v.ln()).sum::<f64>();
        c -= sign * 0.5 * logdet;
        for (i, &a) in idx.iter().enumerate() {
            for (j, &bb) in idx.iter().enumerate() {
                q[(a, bb)] += sign * inv[(i, j)];
            }
        }
    }

    let m = b.ncols();
    let mut e = DVector::zeros(m);
    let mut v = DVector::zeros(d);
    let mut qv = DVector::zeros(d);
    let (mut sum, mut sum2) = (0.0, 0.0);
    for _ in 0..n {
        for slot in e.iter_mut() {
            *slot = rng.sample(StandardNormal);
        }
        b.mul_to(&e, &mut v);
        q.mul_to(&v, &mut qv);
        let r = c - 0.5 * v.dot(&qv);
        sum += r;
        sum2 += r * r;
    }
    let mean = sum / n as f64;
    let var = (sum2 / n as f64 - mean * mean).max(0.0);
    let ln2 = std::f64::consts::LN_2;
    (mean / ln2, (var / n as f64).sqrt() / ln2)
}
