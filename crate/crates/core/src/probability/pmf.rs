use serde::{Deserialize, Serialize};

use super::alphabet::Alphabet;
use crate::error::{Error, Result};

/// Absolute tolerance on the total mass of a pmf.
pub const PMF_TOLERANCE: f64 = 1e-12;

/// Largest dense table we are willing to allocate.
pub const MAX_TABLE_LEN: usize = 1 << 26;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    pub alphabet: Alphabet,
}

impl Variable {
    pub fn new(name: impl Into<String>, alphabet: Alphabet) -> Self {
        Self {
            name: name.into(),
            alphabet,
        }
    }
}

/// Dense joint pmf over named finite variables.
///
/// Entries are stored row-major with the last variable varying fastest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointPmf {
    vars: Vec<Variable>,
    probs: Vec<f64>,
}

pub(crate) fn table_len(dims: &[usize]) -> Result<usize> {
    dims.iter().try_fold(1usize, |acc, &d| {
        acc.checked_mul(d)
            .filter(|&n| n <= MAX_TABLE_LEN)
            .ok_or(Error::TableTooLarge(usize::MAX))
    })
}

impl JointPmf {
    pub fn new(vars: Vec<Variable>, probs: Vec<f64>) -> Result<Self> {
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].iter().any(|w| w.name == v.name) {
                return Err(Error::InvalidPmf(format!(
                    "duplicate variable `{}`",
                    v.name
                )));
            }
        }
        let dims: Vec<usize> = vars.iter().map(|v| v.alphabet.len()).collect();
        let len = table_len(&dims)?;
        if probs.len() != len {
            return Err(Error::InvalidPmf(format!(
                "table has {} entries, expected {len}",
                probs.len()
            )));
        }
        if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::InvalidPmf(format!(
                "entry {p} is not a non-negative real"
            )));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > PMF_TOLERANCE {
            return Err(Error::InvalidPmf(format!("entries sum to {total}")));
        }
        Ok(Self { vars, probs })
    }

    /// Uniform pmf over the product alphabet.
    pub fn uniform(vars: Vec<Variable>) -> Result<Self> {
        let dims: Vec<usize> = vars.iter().map(|v| v.alphabet.len()).collect();
        let len = table_len(&dims)?;
        Self::new(vars, vec![1.0 / len as f64; len])
    }

    pub fn variables(&self) -> &[Variable] {
        &self.vars
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.vars.iter().map(|v| v.name.as_str())
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn dims(&self) -> Vec<usize> {
        self.vars.iter().map(|v| v.alphabet.len()).collect()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v.name == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn indices_of<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<usize>> {
        names.iter().map(|n| self.index_of(n.as_ref())).collect()
    }

    /// Flat offset of a full symbol-index tuple.
    pub fn offset(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.vars.len());
        tuple
            .iter()
            .zip(&self.vars)
            .fold(0, |acc, (&i, v)| acc * v.alphabet.len() + i)
    }

    pub fn prob(&self, tuple: &[usize]) -> f64 {
        self.probs[self.offset(tuple)]
    }

    /// Marginal table over `keep` (in the given order, last fastest).
    pub(crate) fn marginal_table(&self, keep: &[usize]) -> Vec<f64> {
        let dims = self.dims();
        let n = dims.len();
        let mut tstride = vec![0usize; n];
        let mut size = 1usize;
        for &k in keep.iter().rev() {
            tstride[k] = size;
            size *= dims[k];
        }
        let mut out = vec![0.0; size];
        if n == 0 {
            out[0] = self.probs.iter().sum();
            return out;
        }
        let mut digits = vec![0usize; n];
        let mut t = 0usize;
        for &p in &self.probs {
            out[t] += p;
            let mut j = n;
            while j > 0 {
                j -= 1;
                digits[j] += 1;
                t += tstride[j];
                if digits[j] < dims[j] {
                    break;
                }
                t -= tstride[j] * dims[j];
                digits[j] = 0;
            }
        }
        out
    }

    /// Exact marginal onto `keep`; variables stay in their original order.
    pub fn marginalize<S: AsRef<str>>(&self, keep: &[S]) -> Result<JointPmf> {
        let mut idx = self.indices_of(keep)?;
        idx.sort_unstable();
        idx.dedup();
        let table = self.marginal_table(&idx);
        let vars = idx.iter().map(|&i| self.vars[i].clone()).collect();
        Ok(JointPmf { vars, probs: table })
    }

    pub fn event_probability(&self, variable: &str, symbol: &str) -> Result<f64> {
        let k = self.index_of(variable)?;
        let s = self.symbol_index(k, symbol)?;
        Ok(self.marginal_table(&[k])[s])
    }

    fn symbol_index(&self, k: usize, symbol: &str) -> Result<usize> {
        self.vars[k]
            .alphabet
            .position(symbol)
            .ok_or_else(|| Error::UnknownSymbol {
                variable: self.vars[k].name.clone(),
                symbol: symbol.to_string(),
            })
    }

    /// Conditional pmf of the remaining variables given `variable = value`.
    pub fn condition_on_event(&self, variable: &str, value: &str) -> Result<JointPmf> {
        let k = self.index_of(variable)?;
        let s = self.symbol_index(k, value)?;
        let dims = self.dims();
        let inner: usize = dims[k + 1..].iter().product();
        let outer: usize = dims[..k].iter().product();
        let mut probs = Vec::with_capacity(outer * inner);
        for o in 0..outer {
            let base = (o * dims[k] + s) * inner;
            probs.extend_from_slice(&self.probs[base..base + inner]);
        }
        let mass: f64 = probs.iter().sum();
        if mass <= 0.0 {
            return Err(Error::ZeroProbabilityEvent {
                variable: variable.to_string(),
                symbol: value.to_string(),
            });
        }
        probs.iter_mut().for_each(|p| *p /= mass);
        let vars = self
            .vars
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, v)| v.clone())
            .collect();
        Ok(JointPmf { vars, probs })
    }

    /// Total mass on tuples satisfying `pred`.
    pub fn mass_where(&self, mut pred: impl FnMut(&[usize]) -> bool) -> f64 {
        let dims = self.dims();
        let mut digits = vec![0usize; dims.len()];
        let mut total = 0.0;
        for &p in &self.probs {
            if p > 0.0 && pred(&digits) {
                total += p;
            }
            for j in (0..dims.len()).rev() {
                digits[j] += 1;
                if digits[j] < dims[j] {
                    break;
                }
                digits[j] = 0;
            }
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bin(name: &str) -> Variable {
        Variable::new(name, Alphabet::new(&["0", "1"]).unwrap())
    }

    fn tri(name: &str) -> Variable {
        Variable::new(name, Alphabet::new(&["a", "b", "c"]).unwrap())
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(JointPmf::new(vec![bin("x")], vec![0.5, 0.4]).is_err());
        assert!(JointPmf::new(vec![bin("x")], vec![1.5, -0.5]).is_err());
        assert!(JointPmf::new(vec![bin("x")], vec![1.0]).is_err());
        assert!(JointPmf::new(vec![bin("x"), bin("x")], vec![0.25; 4]).is_err());
    }

    #[test]
    fn marginalize_all_is_identity() {
        let p = JointPmf::new(
            vec![bin("x"), tri("y")],
            vec![0.1, 0.2, 0.05, 0.3, 0.15, 0.2],
        )
        .unwrap();
        let m = p.marginalize(&["y", "x"]).unwrap();
        assert_eq!(m, p);
    }

    #[test]
    fn marginal_of_uniform_pair() {
        let p = JointPmf::uniform(vec![bin("x"), bin("y")]).unwrap();
        let m = p.marginalize(&["x"]).unwrap();
        assert_eq!(m.probs(), &[0.5, 0.5]);
        assert!(p.marginalize(&["z"]).is_err());
    }

    #[test]
    fn marginal_matches_nested_loops() {
        // deterministic pseudo-random 3-variable table
        let mut w: Vec<f64> = (0..18).map(|i| ((i * 7919) % 31) as f64 + 0.5).collect();
        let s: f64 = w.iter().sum();
        w.iter_mut().for_each(|v| *v /= s);
        let p = JointPmf::new(vec![bin("x"), tri("y"), tri("z")], w.clone()).unwrap();
        let m = p.marginalize(&["x", "z"]).unwrap();
        for x in 0..2 {
            for z in 0..3 {
                let mut acc = 0.0;
                for y in 0..3 {
                    acc += w[(x * 3 + y) * 3 + z];
                }
                assert!((m.prob(&[x, z]) - acc).abs() < 1e-15);
            }
        }
        let total: f64 = m.probs().iter().sum();
        assert!((total - 1.0).abs() < 1e-14);
    }

    #[test]
    fn conditioning_uniform_pair() {
        let p = JointPmf::uniform(vec![bin("x"), bin("y")]).unwrap();
        let c = p.condition_on_event("x", "0").unwrap();
        assert_eq!(c.names().collect::<Vec<_>>(), vec!["y"]);
        assert_eq!(c.probs(), &[0.5, 0.5]);
    }

    #[test]
    fn conditioning_on_point_mass_keeps_marginals() {
        let p =
            JointPmf::new(vec![bin("x"), tri("y")], vec![0.2, 0.3, 0.5, 0.0, 0.0, 0.0]).unwrap();
        let c = p.condition_on_event("x", "0").unwrap();
        assert_eq!(c.probs(), p.marginalize(&["y"]).unwrap().probs());
    }

    #[test]
    fn conditioning_on_zero_event_fails() {
        let p = JointPmf::new(vec![bin("x"), bin("y")], vec![0.5, 0.5, 0.0, 0.0]).unwrap();
        assert!(matches!(
            p.condition_on_event("x", "1"),
            Err(Error::ZeroProbabilityEvent { .. })
        ));
        assert!(p.condition_on_event("x", "7").is_err());
    }

    #[test]
    fn conditioning_matches_bayes_rule() {
        let mut w: Vec<f64> = (0..12).map(|i| ((i * 37) % 11) as f64 + 1.0).collect();
        let s: f64 = w.iter().sum();
        w.iter_mut().for_each(|v| *v /= s);
        let p = JointPmf::new(vec![tri("y"), bin("s"), bin("z")], w.clone()).unwrap();
        let c = p.condition_on_event("s", "1").unwrap();
        let ps: f64 = (0..3)
            .flat_map(|y| (0..2).map(move |z| (y, z)))
            .map(|(y, z)| w[(y * 2 + 1) * 2 + z])
            .sum();
        for y in 0..3 {
            for z in 0..2 {
                let expect = w[(y * 2 + 1) * 2 + z] / ps;
                assert!((c.prob(&[y, z]) - expect).abs() < 1e-14);
            }
        }
    }
}
