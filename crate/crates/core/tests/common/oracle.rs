//! Brute-force enumeration of conditional mutual information.

use std::collections::HashMap;

type Marginal = HashMap<Vec<usize>, f64>;

/// Decodes a flat row-major index (last variable fastest).
pub fn decode(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut t = vec![0; dims.len()];
    for (slot, &d) in t.iter_mut().zip(dims).rev() {
        *slot = index % d;
        index /= d;
    }
    t
}

/// `I(X;Y|Z)` in bits, summing `p log p(xyz)p(z)/(p(xz)p(yz))` over the
/// support of a flat table; `x`, `y`, `z` are variable positions.
pub fn brute_cmi(probs: &[f64], dims: &[usize], x: &[usize], y: &[usize], z: &[usize]) -> f64 {
    let pick = |t: &[usize], a: &[usize], b: &[usize]| -> Vec<usize> {
        a.iter().chain(b).map(|&i| t[i]).collect()
    };
    let mut p_xyz: HashMap<[Vec<usize>; 3], f64> = HashMap::new();
    let mut p_xz: Marginal = HashMap::new();
    let mut p_yz: Marginal = HashMap::new();
    let mut p_z: Marginal = HashMap::new();
    for (k, &p) in probs.iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        let t = decode(k, dims);
        let (tx, ty, tz) = (pick(&t, x, &[]), pick(&t, y, &[]), pick(&t, z, &[]));
        *p_xz.entry(pick(&t, x, z)).or_default() += p;
        *p_yz.entry(pick(&t, y, z)).or_default() += p;
        *p_z.entry(tz.clone()).or_default() += p;
        *p_xyz.entry([tx, ty, tz]).or_default() += p;
    }
    let mut total = 0.0;
    for ([tx, ty, tz], p) in &p_xyz {
        let xz: Vec<usize> = tx.iter().chain(tz).copied().collect();
        let yz: Vec<usize> = ty.iter().chain(tz).copied().collect();
        total += p * (p * p_z[tz] / (p_xz[&xz] * p_yz[&yz])).log2();
    }
    total.max(0.0)
}

/// Restriction of a flat table to the tuples where variable `var` takes
/// `value`, renormalized.
pub fn condition(probs: &[f64], dims: &[usize], var: usize, value: usize) -> Vec<f64> {
    let mut out: Vec<f64> = probs
        .iter()
        .enumerate()
        .map(|(k, &p)| {
            if decode(k, dims)[var] == value {
                p
            } else {
                0.0
            }
        })
        .collect();
    let mass: f64 = out.iter().sum();
    out.iter_mut().for_each(|p| *p /= mass);
    out
}
