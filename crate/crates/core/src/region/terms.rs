use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::info::{Bits, NEGATIVE_FLOOR};
use crate::probability::vars::*;
use crate::probability::StateRole;

/// Constraint identifiers, in order.
pub const CONSTRAINT_IDS: [char; 18] = [
    'a', 'b', 'c', 'd', 'e', 'f', 'g', 'h', 'i', 'j', 'k', 'l', 'm', 'n', 'o', 'p', 'q', 'r',
];

/// Rate-split variables, in polytope column order.
pub const RATE_VARIABLES: [&str; 7] =
    ["R_s", "R_e", "R_P1pr", "R_P2co", "R_P2pr", "R_Cco", "R_Cpr"];

pub const R_S: usize = 0;
pub const R_E: usize = 1;
pub const R_P1PR: usize = 2;
pub const R_P2CO: usize = 3;
pub const R_P2PR: usize = 4;
pub const R_CCO: usize = 5;
pub const R_CPR: usize = 6;

/// Columns summing to `R_P`.
pub const PRIMARY_COLUMNS: [usize; 5] = [R_S, R_E, R_P1PR, R_P2CO, R_P2PR];
/// Columns summing to `R_C`.
pub const SECONDARY_COLUMNS: [usize; 2] = [R_CCO, R_CPR];

/// Left-hand side of each constraint: the columns carrying coefficient 1.
pub const LHS_MAP: [(char, &[usize]); 18] = [
    ('a', &[R_P1PR]),
    ('b', &[R_S, R_E, R_P1PR]),
    ('c', &[R_P2PR]),
    ('d', &[R_P2CO, R_P2PR]),
    ('e', &[R_P2PR, R_CCO]),
    ('f', &[R_P2CO, R_P2PR, R_CCO]),
    ('g', &[R_P1PR, R_P2PR]),
    ('h', &[R_P1PR, R_P2CO, R_P2PR]),
    ('i', &[R_P1PR, R_P2PR, R_CCO]),
    ('j', &[R_P1PR, R_P2CO, R_P2PR, R_CCO]),
    ('k', &[R_E, R_P1PR, R_P2CO, R_P2PR, R_CCO]),
    ('l', &[R_S, R_E, R_P1PR, R_P2CO, R_P2PR, R_CCO]),
    ('m', &[R_CPR]),
    ('n', &[R_CCO, R_CPR]),
    ('o', &[R_P2CO, R_CPR]),
    ('p', &[R_P2CO, R_CCO, R_CPR]),
    ('q', &[R_E, R_P2CO, R_CCO, R_CPR]),
    ('r', &[R_S, R_E, R_P2CO, R_CCO, R_CPR]),
];

/// Columns on the left-hand side of constraint `id`.
pub fn lhs(id: char) -> Option<&'static [usize]> {
    LHS_MAP
        .iter()
        .find(|(c, _)| *c == id)
        .map(|(_, cols)| *cols)
}

/// Binning-rate thresholds of the secondary's two auxiliary codebooks.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Binning {
    pub rp_cco: Bits,
    pub rp_cpr: Bits,
}

/// `I(S;Y_P)` and `I(S;Y_C)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct StateInfo {
    pub s_y_p: Bits,
    pub s_y_c: Bits,
}

/// Right-hand sides of the rate constraints, prefactors applied.
///
/// A missing entry means the constraint is not imposed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MiTerms {
    pub alpha: f64,
    c: BTreeMap<char, Bits>,
    pub binning: Binning,
    pub state_info: StateInfo,
}

impl MiTerms {
    /// Fails with [`Error::NegativeRhs`] on any value below the roundoff floor.
    pub fn new(alpha: f64, values: impl IntoIterator<Item = (char, f64)>) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::InvalidParameter(format!(
                "alpha = {alpha} outside [0, 1]"
            )));
        }
        let mut c = BTreeMap::new();
        for (id, value) in values {
            if !CONSTRAINT_IDS.contains(&id) {
                return Err(Error::InvalidParameter(format!(
                    "unknown constraint id `{id}`"
                )));
            }
            if value.is_nan() || value < -NEGATIVE_FLOOR {
                return Err(Error::NegativeRhs { id, value });
            }
            if !value.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "constraint ({id}) bound {value}"
                )));
            }
            c.insert(id, Bits::new(value)?);
        }
        Ok(Self {
            alpha,
            c,
            binning: Binning::default(),
            state_info: StateInfo::default(),
        })
    }

    /// All eighteen constraints, values in [`CONSTRAINT_IDS`] order.
    pub fn from_array(alpha: f64, values: [f64; 18]) -> Result<Self> {
        Self::new(alpha, CONSTRAINT_IDS.into_iter().zip(values))
    }

    pub fn get(&self, id: char) -> Option<f64> {
        self.c.get(&id).map(|b| b.value())
    }

    pub fn iter(&self) -> impl Iterator<Item = (char, f64)> + '_ {
        self.c.iter().map(|(k, v)| (*k, v.value()))
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }
}

/// Per-state conditional mutual information of some joint law.
pub trait MiSource {
    /// `I(X;Y|Z, S=state)` in bits.
    fn mi(&self, state: StateRole, x: &[&str], y: &[&str], z: &[&str]) -> Result<f64>;

    /// `I(S;output)` in bits.
    fn state_output_mi(&self, output: &str) -> Result<f64>;
}

/// Evaluates the eighteen right-hand sides from per-state information.
///
/// With `genie`, the two constraints on decoding at the secondary source
/// ('a' and 'b') are left out.
pub fn assemble_terms(alpha: f64, src: &impl MiSource, genie: bool) -> Result<MiTerms> {
    let abar = 1.0 - alpha;
    let l = |x: &[&str], y: &[&str], z: &[&str]| -> Result<f64> {
        if alpha == 0.0 {
            Ok(0.0)
        } else {
            Ok(alpha * src.mi(StateRole::Listen, x, y, z)?)
        }
    };
    let t = |x: &[&str], y: &[&str], z: &[&str]| -> Result<f64> {
        if abar == 0.0 {
            Ok(0.0)
        } else {
            src.mi(StateRole::Transmit, x, y, z)
        }
    };
    let tb = |x: &[&str], y: &[&str], z: &[&str]| -> Result<f64> { Ok(abar * t(x, y, z)?) };

    let s_y_p = src.state_output_mi(Y_P)?;
    let s_y_c = src.state_output_mi(Y_C)?;

    let l_p1pr_yp = l(&[X_P1PR], &[Y_P], &[X_P1CO])?;
    let l_k = l(&[X_P1PR], &[Y_P], &[])?;
    let t_k = tb(&[T_P1CO, T_P1PR, X_P2PR, U_CCO], &[Y_P], &[])?;
    let l_q = l(&[X_P1CO], &[Y_C], &[])?;

    // Binning penalties, before the transmit-state prefactor.
    let pen_cpr = t(&[U_CPR], &[T_P1PR, U_CCO], &[T_P1CO])?;
    let pen_both = t(&[U_CCO, U_CPR], &[T_P1PR], &[T_P1CO])?;
    let t_q = abar * (t(&[T_P1CO, X_P2CO, U_CCO, U_CPR], &[Y_C], &[])? - pen_both);

    let mut values = Vec::with_capacity(18);
    if !genie {
        values.push(('a', l(&[X_P1PR], &[V_C], &[X_P1CO])?));
        values.push(('b', l(&[X_P1PR], &[V_C], &[])?));
    }
    values.extend([
        (
            'c',
            tb(&[X_P2PR], &[Y_P, U_CCO], &[X_P2CO, T_P1PR, T_P1CO])?,
        ),
        ('d', tb(&[X_P2PR], &[Y_P, U_CCO], &[T_P1PR, T_P1CO])?),
        (
            'e',
            tb(&[X_P2PR, U_CCO], &[Y_P], &[X_P2CO, T_P1PR, T_P1CO])?,
        ),
        ('f', tb(&[X_P2PR, U_CCO], &[Y_P], &[T_P1PR, T_P1CO])?),
        (
            'g',
            l_p1pr_yp + tb(&[T_P1PR, X_P2PR], &[Y_P, U_CCO], &[X_P2CO, T_P1CO])?,
        ),
        (
            'h',
            l_p1pr_yp + tb(&[T_P1PR, X_P2PR], &[Y_P, U_CCO], &[T_P1CO])?,
        ),
        (
            'i',
            l_p1pr_yp + tb(&[T_P1PR, X_P2PR, U_CCO], &[Y_P], &[X_P2CO, T_P1CO])?,
        ),
        (
            'j',
            l_p1pr_yp + tb(&[T_P1PR, X_P2PR, U_CCO], &[Y_P], &[T_P1CO])?,
        ),
        ('k', l_k + t_k),
        ('l', s_y_p + l_k + t_k),
        (
            'm',
            abar * (t(&[U_CPR], &[Y_C, U_CCO], &[X_P2CO, T_P1CO])? - pen_cpr),
        ),
        (
            'n',
            abar * (t(&[U_CCO, U_CPR], &[Y_C], &[X_P2CO, T_P1CO])? - pen_both),
        ),
        (
            'o',
            abar * (t(&[X_P2CO, U_CPR], &[Y_C, U_CCO], &[T_P1CO])? - pen_cpr),
        ),
        (
            'p',
            abar * (t(&[X_P2CO, U_CCO, U_CPR], &[Y_C], &[T_P1CO])? - pen_both),
        ),
        ('q', l_q + t_q),
        ('r', s_y_c + l_q + t_q),
    ]);

    let mut terms = MiTerms::new(alpha, values)?;
    terms.binning = Binning {
        rp_cco: Bits::new(abar * t(&[U_CCO], &[T_P1PR], &[T_P1CO])?)?,
        rp_cpr: Bits::new(abar * t(&[U_CPR], &[T_P1PR], &[U_CCO, T_P1CO])?)?,
    };
    terms.state_info = StateInfo {
        s_y_p: Bits::new(s_y_p)?,
        s_y_c: Bits::new(s_y_c)?,
    };
    Ok(terms)
}

/// The two binning thresholds; diagnostic only.
pub fn binning_report(terms: &MiTerms) -> (Bits, Bits) {
    (terms.binning.rp_cco, terms.binning.rp_cpr)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lhs_map_is_complete() {
        for id in CONSTRAINT_IDS {
            assert!(lhs(id).is_some());
        }
        assert_eq!(lhs('l').unwrap().len(), 6);
        assert_eq!(lhs('r').unwrap(), &[R_S, R_E, R_P2CO, R_CCO, R_CPR]);
    }

    #[test]
    fn rejects_negative_rhs() {
        let mut v = [1.0; 18];
        v[13] = -1e-6;
        match MiTerms::from_array(0.5, v) {
            Err(Error::NegativeRhs { id, .. }) => assert_eq!(id, 'n'),
            other => panic!("unexpected {other:?}"),
        }
        v[13] = -1e-10;
        assert_eq!(MiTerms::from_array(0.5, v).unwrap().get('n'), Some(0.0));
    }

    #[test]
    fn json_round_trip() {
        let t = MiTerms::from_array(0.25, [0.5; 18]).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        let back: MiTerms = serde_json::from_str(&s).unwrap();
        assert_eq!(t, back);
    }
}
