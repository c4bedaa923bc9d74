use std::collections::BTreeSet;

use super::bits::Bits;
use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};

/// Maximum absolute asymmetry accepted in a covariance.
pub const SYMMETRY_TOLERANCE: f64 = 1e-10;
/// Most negative eigenvalue accepted in a covariance.
pub const PSD_TOLERANCE: f64 = 1e-9;
/// Variables with variance at or below this are treated as constants.
const CONSTANT_VARIANCE: f64 = 1e-14;
/// Relative eigenvalue threshold of the conditioning-block ridge.
const RIDGE: f64 = 1e-12;

/// Zero-mean jointly Gaussian vector over named scalar variables.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianVector {
    names: Vec<String>,
    mean: DVector<f64>,
    cov: DMatrix<f64>,
}

impl GaussianVector {
    pub fn new(names: Vec<String>, cov: DMatrix<f64>) -> Result<Self> {
        let n = names.len();
        if cov.nrows() != n || cov.ncols() != n {
            return Err(Error::InvalidParameter(format!(
                "covariance is {}x{} for {n} names",
                cov.nrows(),
                cov.ncols()
            )));
        }
        let unique: BTreeSet<&str> = names.iter().map(String::as_str).collect();
        if unique.len() != n {
            return Err(Error::InvalidParameter("duplicate variable names".into()));
        }
        if cov.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(
                "non-finite covariance entry".into(),
            ));
        }
        let asym = (&cov - cov.transpose()).amax();
        if asym > SYMMETRY_TOLERANCE {
            return Err(Error::AsymmetricCovariance(asym));
        }
        let cov = (&cov + cov.transpose()) * 0.5;
        if n > 0 {
            let min_eig = cov.clone().symmetric_eigenvalues().min();
            if min_eig < -PSD_TOLERANCE {
                return Err(Error::IndefiniteCovariance(min_eig));
            }
        }
        Ok(Self {
            names,
            mean: DVector::zeros(n),
            cov,
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn mean(&self) -> &DVector<f64> {
        &self.mean
    }

    pub fn cov(&self) -> &DMatrix<f64> {
        &self.cov
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn variance(&self, name: &str) -> Result<f64> {
        let i = self.index_of(name)?;
        Ok(self.cov[(i, i)])
    }

    /// Indices of the named variables, dropping those that are constants.
    fn random_indices<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(names.len());
        for n in names {
            let i = self.index_of(n.as_ref())?;
            if self.cov[(i, i)] > CONSTANT_VARIANCE {
                out.push(i);
            }
        }
        Ok(out)
    }

    fn block(&self, rows: &[usize], cols: &[usize]) -> DMatrix<f64> {
        DMatrix::from_fn(rows.len(), cols.len(), |i, j| self.cov[(rows[i], cols[j])])
    }

    /// Covariance of `a` given `z` by Schur complement, inverting the
    /// conditioning block on its numerically non-null eigenspace.
    fn conditional_cov(&self, a: &[usize], z: &[usize]) -> DMatrix<f64> {
        let saa = self.block(a, a);
        if z.is_empty() {
            return saa;
        }
        let szz = self.block(z, z);
        let saz = self.block(a, z);
        let eig = szz.symmetric_eigen();
        let top = eig.eigenvalues.amax().max(1.0);
        let mut pinv = DMatrix::zeros(z.len(), z.len());
        for (k, &lam) in eig.eigenvalues.iter().enumerate() {
            if lam > RIDGE * top {
                let v = eig.eigenvectors.column(k);
                pinv += (v * v.transpose()) / lam;
            }
        }
        let s = &saa - &saz * pinv * saz.transpose();
        (&s + s.transpose()) * 0.5
    }
}

fn log2det_floored(m: DMatrix<f64>, floor: f64) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    m.symmetric_eigenvalues()
        .iter()
        .map(|&l| l.max(floor).log2())
        .sum()
}

/// `I(X;Y|Z) = 1/2 log2(det S_{X|Z} / det S_{X|Y,Z})`.
///
/// Constant variables are dropped first. Directions that are deterministic
/// given the conditioning set are floored identically in both determinants
/// and cancel.
pub fn gaussian_mi<S: AsRef<str>>(vec: &GaussianVector, x: &[S], y: &[S], z: &[S]) -> Result<Bits> {
    let mut seen = BTreeSet::new();
    for n in x.iter().chain(y).chain(z) {
        if !seen.insert(n.as_ref()) {
            return Err(Error::OverlappingSets(n.as_ref().to_string()));
        }
    }
    let ix = vec.random_indices(x)?;
    let iy = vec.random_indices(y)?;
    let iz = vec.random_indices(z)?;
    if ix.is_empty() || iy.is_empty() {
        return Ok(Bits::ZERO);
    }
    let scale = vec.cov.diagonal().amax().max(1.0);
    let floor = RIDGE * scale;
    let yz: Vec<usize> = iy.iter().chain(&iz).copied().collect();
    let before = log2det_floored(vec.conditional_cov(&ix, &iz), floor);
    let after = log2det_floored(vec.conditional_cov(&ix, &yz), floor);
    Bits::new(0.5 * (before - after))
}
