use std::collections::BTreeSet;

use super::bits::Bits;
use crate::error::{Error, Result};
use crate::probability::JointPmf;

fn table_entropy(table: &[f64]) -> f64 {
    table
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum()
}

/// Shannon entropy `H = -sum p log2 p`, with `0 log 0 = 0`.
pub fn entropy(pmf: &JointPmf) -> Bits {
    Bits::new(table_entropy(pmf.probs())).expect("entropy is non-negative")
}

/// Entropy of the marginal on the named variables.
pub fn entropy_of<S: AsRef<str>>(pmf: &JointPmf, names: &[S]) -> Result<Bits> {
    let mut idx = pmf.indices_of(names)?;
    idx.sort_unstable();
    idx.dedup();
    Ok(Bits::new(table_entropy(&pmf.marginal_table(&idx))).expect("entropy is non-negative"))
}

fn check_disjoint<S: AsRef<str>>(sets: [&[S]; 3]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for set in sets {
        for name in set {
            if !seen.insert(name.as_ref()) {
                return Err(Error::OverlappingSets(name.as_ref().to_string()));
            }
        }
    }
    Ok(())
}

/// `I(X;Y|Z) = H(X,Z) + H(Y,Z) - H(X,Y,Z) - H(Z)`.
pub fn cond_mutual_info<S: AsRef<str>>(pmf: &JointPmf, x: &[S], y: &[S], z: &[S]) -> Result<Bits> {
    check_disjoint([x, y, z])?;
    let ix = pmf.indices_of(x)?;
    let iy = pmf.indices_of(y)?;
    let iz = pmf.indices_of(z)?;
    let h = |parts: &[&[usize]]| {
        let mut keep: Vec<usize> = parts.iter().flat_map(|p| p.iter().copied()).collect();
        keep.sort_unstable();
        table_entropy(&pmf.marginal_table(&keep))
    };
    let value = h(&[&ix, &iz]) + h(&[&iy, &iz]) - h(&[&ix, &iy, &iz]) - h(&[&iz]);
    Bits::new(value)
}

/// `I(X;Y|Z, V=v)` on the pmf conditioned on the event `V = v`.
pub fn event_cond_mi<S: AsRef<str>>(
    pmf: &JointPmf,
    x: &[S],
    y: &[S],
    z: &[S],
    event: (&str, &str),
) -> Result<Bits> {
    check_disjoint([x, y, z])?;
    if [x, y, z]
        .iter()
        .any(|set| set.iter().any(|n| n.as_ref() == event.0))
    {
        return Err(Error::OverlappingSets(event.0.to_string()));
    }
    let conditioned = pmf.condition_on_event(event.0, event.1)?;
    cond_mutual_info(&conditioned, x, y, z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probability::{Alphabet, Variable};

    fn binary(name: &str) -> Variable {
        Variable::new(name, Alphabet::new(&["0", "1"]).unwrap())
    }

    fn bsc(eps: f64) -> JointPmf {
        let p = vec![0.5 * (1.0 - eps), 0.5 * eps, 0.5 * eps, 0.5 * (1.0 - eps)];
        JointPmf::new(vec![binary("x"), binary("y")], p).unwrap()
    }

    #[test]
    fn uniform_four_symbols_is_two_bits() {
        let v = Variable::new("x", Alphabet::new(&["a", "b", "c", "d"]).unwrap());
        let pmf = JointPmf::uniform(vec![v]).unwrap();
        assert!((entropy(&pmf).value() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn point_mass_has_zero_entropy() {
        let pmf = JointPmf::new(vec![binary("x")], vec![0.0, 1.0]).unwrap();
        assert_eq!(entropy(&pmf).value(), 0.0);
    }

    #[test]
    fn bernoulli_tenth() {
        let pmf = JointPmf::new(vec![binary("x")], vec![0.9, 0.1]).unwrap();
        assert!((entropy(&pmf).value() - 0.468996).abs() < 1e-6);
    }

    #[test]
    fn copied_variable_gives_one_bit() {
        let none: [&str; 0] = [];
        let mi = cond_mutual_info(&bsc(0.0), &["x"], &["y"], &none).unwrap();
        assert!((mi.value() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bsc_tenth() {
        let none: [&str; 0] = [];
        let mi = cond_mutual_info(&bsc(0.1), &["x"], &["y"], &none).unwrap();
        assert!((mi.value() - 0.531004).abs() < 1e-6);
    }

    #[test]
    fn independent_given_z_is_zero() {
        let vars = vec![binary("x"), binary("y"), binary("z")];
        let pmf = JointPmf::uniform(vars).unwrap();
        let mi = cond_mutual_info(&pmf, &["x"], &["y"], &["z"]).unwrap();
        assert_eq!(mi.value(), 0.0);
    }

    #[test]
    fn overlapping_sets_rejected() {
        let none: [&str; 0] = [];
        let err = cond_mutual_info(&bsc(0.1), &["x"], &["x"], &none).unwrap_err();
        assert!(matches!(err, Error::OverlappingSets(_)));
    }

    #[test]
    fn event_split_by_state() {
        // s=l: x, y independent uniform; s=t: y = x.
        let vars = vec![binary("s"), binary("x"), binary("y")];
        let probs = vec![0.125, 0.125, 0.125, 0.125, 0.25, 0.0, 0.0, 0.25];
        let pmf = JointPmf::new(vars, probs).unwrap();
        let none: [&str; 0] = [];
        let l = event_cond_mi(&pmf, &["x"], &["y"], &none, ("s", "0")).unwrap();
        let t = event_cond_mi(&pmf, &["x"], &["y"], &none, ("s", "1")).unwrap();
        assert_eq!(l.value(), 0.0);
        assert!((t.value() - 1.0).abs() < 1e-15);
    }
}
