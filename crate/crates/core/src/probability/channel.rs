use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::alphabet::Alphabet;
use super::law::Conditional;
use super::vars::*;
use crate::error::{Error, Result};

/// Channel law `p(y_p, y_c, v_c | x_p, x_c, s)`.
///
/// Rows are indexed by `(x_p, x_c, s)` (x_p slowest); each row is a
/// distribution over `(y_p, y_c, v_c)` with `v_c` fastest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelSpec {
    alphabets: BTreeMap<String, Alphabet>,
    table: Vec<f64>,
}

pub const CHANNEL_INPUTS: [&str; 3] = [X_P, X_C, S];
pub const CHANNEL_OUTPUTS: [&str; 3] = [Y_P, Y_C, V_C];

impl ChannelSpec {
    pub fn new(alphabets: BTreeMap<String, Alphabet>, table: Vec<f64>) -> Result<Self> {
        for name in CHANNEL_INPUTS.iter().chain(&CHANNEL_OUTPUTS) {
            if !alphabets.contains_key(*name) {
                return Err(Error::UnknownVariable(name.to_string()));
            }
        }
        let s = &alphabets[S];
        if s.len() != 2 || s.position("l").is_none() || s.position("t").is_none() {
            return Err(Error::InvalidAlphabet(
                "state alphabet must be {l, t}".into(),
            ));
        }
        let ch = Self {
            alphabets,
            table: Vec::new(),
        };
        let expect = ch.row_count() * ch.row_len();
        if table.len() != expect {
            return Err(Error::InvalidPmf(format!(
                "channel table has {} entries, expected {expect}",
                table.len()
            )));
        }
        Ok(Self { table, ..ch })
    }

    /// Builds the table from a closure `f(x_p, x_c, s, y_p, y_c, v_c)` over
    /// symbol indices.
    pub fn from_fn(
        alphabets: BTreeMap<String, Alphabet>,
        f: impl Fn(usize, usize, usize, usize, usize, usize) -> f64,
    ) -> Result<Self> {
        let d = |n: &str| alphabets.get(n).map(|a| a.len()).unwrap_or(0);
        let (nxp, nxc, ns) = (d(X_P), d(X_C), d(S));
        let (nyp, nyc, nv) = (d(Y_P), d(Y_C), d(V_C));
        let mut table = Vec::with_capacity(nxp * nxc * ns * nyp * nyc * nv);
        for xp in 0..nxp {
            for xc in 0..nxc {
                for s in 0..ns {
                    for yp in 0..nyp {
                        for yc in 0..nyc {
                            for v in 0..nv {
                                table.push(f(xp, xc, s, yp, yc, v));
                            }
                        }
                    }
                }
            }
        }
        Self::new(alphabets, table)
    }

    pub fn alphabets(&self) -> &BTreeMap<String, Alphabet> {
        &self.alphabets
    }

    pub fn alphabet(&self, name: &str) -> &Alphabet {
        &self.alphabets[name]
    }

    fn dim(&self, name: &str) -> usize {
        self.alphabets[name].len()
    }

    pub fn row_count(&self) -> usize {
        CHANNEL_INPUTS.iter().map(|n| self.dim(n)).product()
    }

    pub fn row_len(&self) -> usize {
        CHANNEL_OUTPUTS.iter().map(|n| self.dim(n)).product()
    }

    pub fn row(&self, x_p: usize, x_c: usize, s: usize) -> &[f64] {
        let r = (x_p * self.dim(X_C) + x_c) * self.dim(S) + s;
        let len = self.row_len();
        &self.table[r * len..(r + 1) * len]
    }

    pub fn prob(
        &self,
        x_p: usize,
        x_c: usize,
        s: usize,
        y_p: usize,
        y_c: usize,
        v_c: usize,
    ) -> f64 {
        let (nyc, nv) = (self.dim(Y_C), self.dim(V_C));
        self.row(x_p, x_c, s)[(y_p * nyc + y_c) * nv + v_c]
    }

    pub fn listen_index(&self) -> usize {
        self.alphabets[S].position("l").expect("validated")
    }

    /// Marginal conditional `p(output | x_p, x_c, s)` of one output.
    pub fn output_factor(&self, output: &str) -> Result<Conditional> {
        let k = CHANNEL_OUTPUTS
            .iter()
            .position(|n| *n == output)
            .ok_or_else(|| Error::UnknownVariable(output.to_string()))?;
        let dims: Vec<usize> = CHANNEL_OUTPUTS.iter().map(|n| self.dim(n)).collect();
        let cd = dims[k];
        let mut table = Vec::with_capacity(self.row_count() * cd);
        for xp in 0..self.dim(X_P) {
            for xc in 0..self.dim(X_C) {
                for s in 0..self.dim(S) {
                    let row = self.row(xp, xc, s);
                    let mut acc = vec![0.0; cd];
                    for (flat, &p) in row.iter().enumerate() {
                        let idx = [
                            flat / (dims[1] * dims[2]),
                            (flat / dims[2]) % dims[1],
                            flat % dims[2],
                        ];
                        acc[idx[k]] += p;
                    }
                    table.extend(acc);
                }
            }
        }
        Ok(Conditional {
            child: output.to_string(),
            parents: CHANNEL_INPUTS.iter().map(|s| s.to_string()).collect(),
            parent_dims: CHANNEL_INPUTS.iter().map(|n| self.dim(n)).collect(),
            child_dim: cd,
            table,
        })
    }
}
