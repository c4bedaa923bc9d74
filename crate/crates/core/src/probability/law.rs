use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::alphabet::Alphabet;
use super::vars::*;
use crate::error::{Error, Result};

/// Conditional pmf `p(child | parents)`.
///
/// `table` holds one row per parent tuple (first parent slowest), each row a
/// distribution over the child alphabet.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Conditional {
    pub child: String,
    pub parents: Vec<String>,
    pub parent_dims: Vec<usize>,
    pub child_dim: usize,
    pub table: Vec<f64>,
}

impl Conditional {
    pub fn row_count(&self) -> usize {
        self.parent_dims.iter().product()
    }

    pub fn row_index(&self, parent_tuple: &[usize]) -> usize {
        parent_tuple
            .iter()
            .zip(&self.parent_dims)
            .fold(0, |acc, (&i, &d)| acc * d + i)
    }

    pub fn row(&self, parent_tuple: &[usize]) -> &[f64] {
        let r = self.row_index(parent_tuple);
        &self.table[r * self.child_dim..(r + 1) * self.child_dim]
    }

    pub fn prob(&self, parent_tuple: &[usize], child: usize) -> f64 {
        self.row(parent_tuple)[child]
    }

    /// Decodes a flat row index back into a parent tuple.
    pub fn parent_tuple(&self, mut row: usize) -> Vec<usize> {
        let mut t = vec![0; self.parent_dims.len()];
        for (slot, &d) in t.iter_mut().zip(&self.parent_dims).rev() {
            *slot = row % d;
            row /= d;
        }
        t
    }
}

/// Deterministic map `child = f(parents)`, one child symbol index per parent tuple.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeterministicMap {
    pub child: String,
    pub parents: Vec<String>,
    pub parent_dims: Vec<usize>,
    pub table: Vec<usize>,
}

impl DeterministicMap {
    pub fn eval(&self, parent_tuple: &[usize]) -> usize {
        let r = parent_tuple
            .iter()
            .zip(&self.parent_dims)
            .fold(0, |acc, (&i, &d)| acc * d + i);
        self.table[r]
    }

    pub fn parent_tuple(&self, mut row: usize) -> Vec<usize> {
        let mut t = vec![0; self.parent_dims.len()];
        for (slot, &d) in t.iter_mut().zip(&self.parent_dims).rev() {
            *slot = row % d;
            row /= d;
        }
        t
    }
}

/// Canonical parent lists of every factor, in chain order.
pub const CONDITIONAL_PARENTS: [(&str, &[&str]); 9] = [
    (S, &[]),
    (T_P1CO, &[S]),
    (T_P1PR, &[T_P1CO, S]),
    (X_P1CO, &[T_P1CO, S]),
    (X_P1PR, &[X_P1CO, T_P1PR, T_P1CO, S]),
    (X_P2CO, &[T_P1CO, S]),
    (X_P2PR, &[X_P2CO, T_P1PR, T_P1CO, S]),
    (U_CCO, &[T_P1CO, S]),
    (U_CPR, &[U_CCO, T_P1CO, S]),
];

pub const X_P_PARENTS: [&str; 7] = [X_P2PR, X_P2CO, X_P1PR, X_P1CO, T_P1PR, T_P1CO, S];
pub const X_C_PARENTS: [&str; 5] = [S, T_P1CO, T_P1PR, U_CCO, U_CPR];

/// Input law of the half-duplex scheme: a chain of conditionals plus the
/// two deterministic encoder maps. Construction checks shapes only; the
/// pmf and restriction checks live in the validators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HalfDuplexLaw {
    alphabets: BTreeMap<String, Alphabet>,
    conditionals: Vec<Conditional>,
    x_p: DeterministicMap,
    x_c: DeterministicMap,
}

impl HalfDuplexLaw {
    /// `tables` maps each conditional child name to its flattened table;
    /// `x_p_map`/`x_c_map` hold child symbol indices per parent tuple.
    pub fn from_tables(
        alphabets: BTreeMap<String, Alphabet>,
        tables: &BTreeMap<String, Vec<f64>>,
        x_p_map: Vec<usize>,
        x_c_map: Vec<usize>,
    ) -> Result<Self> {
        for name in INPUT_VARIABLES {
            if !alphabets.contains_key(name) {
                return Err(Error::UnknownVariable(name.to_string()));
            }
        }
        let s = &alphabets[S];
        if s.len() != 2 || s.position("l").is_none() || s.position("t").is_none() {
            return Err(Error::InvalidAlphabet(
                "state alphabet must be {l, t}".into(),
            ));
        }
        let dim = |n: &str| alphabets[n].len();
        let mut conditionals = Vec::with_capacity(CONDITIONAL_PARENTS.len());
        for (child, parents) in CONDITIONAL_PARENTS {
            let table = tables
                .get(child)
                .ok_or_else(|| Error::InvalidPmf(format!("missing factor for `{child}`")))?
                .clone();
            let parent_dims: Vec<usize> = parents.iter().map(|p| dim(p)).collect();
            let expect = parent_dims.iter().product::<usize>() * dim(child);
            if table.len() != expect {
                return Err(Error::InvalidPmf(format!(
                    "factor for `{child}` has {} entries, expected {expect}",
                    table.len()
                )));
            }
            conditionals.push(Conditional {
                child: child.to_string(),
                parents: parents.iter().map(|p| p.to_string()).collect(),
                parent_dims,
                child_dim: dim(child),
                table,
            });
        }
        let make_map = |child: &str, parents: &[&str], table: Vec<usize>| -> Result<_> {
            let parent_dims: Vec<usize> = parents.iter().map(|p| dim(p)).collect();
            let expect: usize = parent_dims.iter().product();
            if table.len() != expect {
                return Err(Error::InvalidPmf(format!(
                    "map for `{child}` has {} entries, expected {expect}",
                    table.len()
                )));
            }
            if table.iter().any(|&v| v >= dim(child)) {
                return Err(Error::InvalidPmf(format!("map for `{child}` out of range")));
            }
            Ok(DeterministicMap {
                child: child.to_string(),
                parents: parents.iter().map(|p| p.to_string()).collect(),
                parent_dims,
                table,
            })
        };
        let x_p = make_map(X_P, &X_P_PARENTS, x_p_map)?;
        let x_c = make_map(X_C, &X_C_PARENTS, x_c_map)?;
        Ok(Self {
            alphabets,
            conditionals,
            x_p,
            x_c,
        })
    }

    pub fn alphabets(&self) -> &BTreeMap<String, Alphabet> {
        &self.alphabets
    }

    pub fn alphabet(&self, name: &str) -> &Alphabet {
        &self.alphabets[name]
    }

    /// Factors in chain order, starting with `p(s)`.
    pub fn conditionals(&self) -> &[Conditional] {
        &self.conditionals
    }

    pub fn conditional(&self, child: &str) -> &Conditional {
        self.conditionals
            .iter()
            .find(|c| c.child == child)
            .expect("canonical factor")
    }

    pub fn x_p_map(&self) -> &DeterministicMap {
        &self.x_p
    }

    pub fn x_c_map(&self) -> &DeterministicMap {
        &self.x_c
    }

    pub fn listen_index(&self) -> usize {
        self.alphabets[S].position("l").expect("validated")
    }

    pub fn transmit_index(&self) -> usize {
        self.alphabets[S].position("t").expect("validated")
    }

    /// `α = Pr[S = l]`.
    pub fn alpha(&self) -> f64 {
        self.conditional(S).table[self.listen_index()]
    }

    /// Samples a law that satisfies the half-duplex restrictions by
    /// construction: restricted rows are point masses on the null symbol,
    /// every other row is a random strictly positive distribution.
    ///
    /// Every restricted variable and `x_c` must have a null symbol.
    pub fn random<R: Rng + ?Sized>(
        alphabets: BTreeMap<String, Alphabet>,
        alpha: f64,
        rng: &mut R,
    ) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::InvalidParameter(format!("alpha = {alpha}")));
        }
        let dim = |n: &str| alphabets.get(n).map(|a| a.len()).unwrap_or(0);
        let null_of = |n: &str| -> Result<usize> {
            alphabets
                .get(n)
                .and_then(|a| a.null())
                .ok_or_else(|| Error::InvalidAlphabet(format!("`{n}` needs a null symbol")))
        };
        let s_alpha = alphabets
            .get(S)
            .ok_or_else(|| Error::UnknownVariable(S.into()))?;
        let l = s_alpha
            .position("l")
            .ok_or_else(|| Error::InvalidAlphabet("state alphabet must be {l, t}".into()))?;
        let mut tables = BTreeMap::new();
        let mut p_s = vec![0.0; 2];
        p_s[l] = alpha;
        p_s[1 - l] = 1.0 - alpha;
        tables.insert(S.to_string(), p_s);
        for (child, parents) in CONDITIONAL_PARENTS.iter().skip(1) {
            let restricted_in = restricted_state(child);
            let null = if restricted_in.is_some() {
                Some(null_of(child)?)
            } else {
                None
            };
            let parent_dims: Vec<usize> = parents.iter().map(|p| dim(p)).collect();
            let rows: usize = parent_dims.iter().product();
            let cd = dim(child);
            let s_pos = parents.iter().position(|p| *p == S).expect("s is a parent");
            let mut table = Vec::with_capacity(rows * cd);
            for r in 0..rows {
                let mut rem = r;
                let mut tuple = vec![0; parents.len()];
                for (slot, &d) in tuple.iter_mut().zip(&parent_dims).rev() {
                    *slot = rem % d;
                    rem /= d;
                }
                let s_is_l = tuple[s_pos] == l;
                let point = match restricted_in {
                    Some(StateRole::Listen) if s_is_l => null,
                    Some(StateRole::Transmit) if !s_is_l => null,
                    _ => None,
                };
                match point {
                    Some(z) => table.extend((0..cd).map(|i| if i == z { 1.0 } else { 0.0 })),
                    None => {
                        let w: Vec<f64> = (0..cd).map(|_| rng.random_range(0.05..1.0)).collect();
                        let total: f64 = w.iter().sum();
                        table.extend(w.iter().map(|v| v / total));
                    }
                }
            }
            tables.insert(child.to_string(), table);
        }
        let xp_rows: usize = X_P_PARENTS.iter().map(|p| dim(p)).product();
        let x_p_map = (0..xp_rows)
            .map(|_| rng.random_range(0..dim(X_P)))
            .collect();
        let xc_null = null_of(X_C)?;
        let xc_rows: usize = X_C_PARENTS.iter().map(|p| dim(p)).product();
        let xc_tail = xc_rows / 2;
        let x_c_map = (0..xc_rows)
            .map(|r| {
                // s is the first x_c parent
                if r / xc_tail == l {
                    xc_null
                } else {
                    rng.random_range(0..dim(X_C))
                }
            })
            .collect();
        Self::from_tables(alphabets, &tables, x_p_map, x_c_map)
    }
}

/// Which state forces a variable onto the null symbol, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateRole {
    Listen,
    Transmit,
}

pub fn restricted_state(var: &str) -> Option<StateRole> {
    match var {
        T_P1CO | T_P1PR | X_P2CO | X_P2PR | U_CCO | U_CPR => Some(StateRole::Listen),
        X_P1CO | X_P1PR => Some(StateRole::Transmit),
        _ => None,
    }
}
