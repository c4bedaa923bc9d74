use std::f64::consts::{E, PI};

use super::bits::Bits;
use crate::error::{Error, Result};

const QUAD_TOLERANCE: f64 = 1e-8;
const TAIL_SIGMAS: f64 = 12.0;
const MAX_DEPTH: u32 = 40;
const MAX_PANELS: usize = 1 << 14;

/// `H2(p)` in bits.
pub fn binary_entropy(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        return 0.0;
    }
    -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
}

/// Differential entropy of `N(mu, variance)` in bits.
pub fn gaussian_entropy(variance: f64) -> f64 {
    0.5 * (2.0 * PI * E * variance).log2()
}

struct Mixture<'a> {
    weights: &'a [f64],
    means: &'a [f64],
    variances: &'a [f64],
}

impl Mixture<'_> {
    fn density(&self, x: f64) -> f64 {
        self.weights
            .iter()
            .zip(self.means)
            .zip(self.variances)
            .filter(|((w, _), _)| **w > 0.0)
            .map(|((w, m), v)| w * (-(x - m) * (x - m) / (2.0 * v)).exp() / (2.0 * PI * v).sqrt())
            .sum()
    }

    fn integrand(&self, x: f64) -> f64 {
        let f = self.density(x);
        if f > 0.0 {
            -f * f.log2()
        } else {
            0.0
        }
    }
}

struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

fn adaptive(mix: &Mixture, p: Panel, tol: f64, depth: u32) -> Result<f64> {
    let m = 0.5 * (p.a + p.b);
    let lm = 0.5 * (p.a + m);
    let rm = 0.5 * (m + p.b);
    let flm = mix.integrand(lm);
    let frm = mix.integrand(rm);
    let left = simpson(p.a, m, p.fa, flm, p.fm);
    let right = simpson(m, p.b, p.fm, frm, p.fb);
    let delta = left + right - p.whole;
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(Error::QuadratureNonConvergence { lo: p.a, hi: p.b });
    }
    let l = Panel {
        a: p.a,
        b: m,
        fa: p.fa,
        fm: flm,
        fb: p.fm,
        whole: left,
    };
    let r = Panel {
        a: m,
        b: p.b,
        fa: p.fm,
        fm: frm,
        fb: p.fb,
        whole: right,
    };
    Ok(adaptive(mix, l, 0.5 * tol, depth - 1)? + adaptive(mix, r, 0.5 * tol, depth - 1)?)
}

/// Differential entropy in bits of `sum_k w_k N(mu_k, var_k)` by adaptive
/// Simpson quadrature over `[min mu - 12 sigma_max, max mu + 12 sigma_max]`.
pub fn mixture_entropy(weights: &[f64], means: &[f64], variances: &[f64]) -> Result<Bits> {
    if weights.is_empty() {
        return Err(Error::Empty("mixture components"));
    }
    if weights.len() != means.len() || weights.len() != variances.len() {
        return Err(Error::InvalidParameter(
            "mixture component lengths differ".into(),
        ));
    }
    if weights.iter().any(|w| w.is_nan() || *w < 0.0)
        || (weights.iter().sum::<f64>() - 1.0).abs() > 1e-12
    {
        return Err(Error::InvalidParameter(
            "mixture weights must be a pmf".into(),
        ));
    }
    if variances.iter().any(|v| !v.is_finite() || *v <= 0.0) {
        return Err(Error::InvalidParameter(
            "mixture variances must be positive".into(),
        ));
    }
    let active = |k: &usize| weights[*k] > 0.0;
    let idx: Vec<usize> = (0..weights.len()).filter(active).collect();
    let sd_max = idx.iter().map(|&k| variances[k].sqrt()).fold(0.0, f64::max);
    let sd_min = idx
        .iter()
        .map(|&k| variances[k].sqrt())
        .fold(f64::INFINITY, f64::min);
    let lo = idx.iter().map(|&k| means[k]).fold(f64::INFINITY, f64::min) - TAIL_SIGMAS * sd_max;
    let hi = idx
        .iter()
        .map(|&k| means[k])
        .fold(f64::NEG_INFINITY, f64::max)
        + TAIL_SIGMAS * sd_max;

    let mix = Mixture {
        weights,
        means,
        variances,
    };
    // Panels no wider than the narrowest component keep every peak visible.
    let panels = (((hi - lo) / sd_min).ceil() as usize).clamp(16, MAX_PANELS);
    let width = (hi - lo) / panels as f64;
    let tol = QUAD_TOLERANCE / panels as f64;
    let mut total = 0.0;
    let mut fa = mix.integrand(lo);
    for k in 0..panels {
        let a = lo + k as f64 * width;
        let b = if k + 1 == panels { hi } else { a + width };
        let fm = mix.integrand(0.5 * (a + b));
        let fb = mix.integrand(b);
        let panel = Panel {
            a,
            b,
            fa,
            fm,
            fb,
            whole: simpson(a, b, fa, fm, fb),
        };
        total += adaptive(&mix, panel, tol, MAX_DEPTH)?;
        fa = fb;
    }
    Ok(Bits::new(total.max(0.0)).unwrap_or(Bits::ZERO))
}

/// `I(S;Y)` for `Y` equal in law to `comp_l` when `S=l` (probability
/// `alpha`) and to `comp_t` otherwise, clamped into `[0, H2(alpha)]`.
pub fn state_output_mi(alpha: f64, comp_l: (f64, f64), comp_t: (f64, f64)) -> Result<Bits> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidParameter(format!(
            "alpha = {alpha} outside [0, 1]"
        )));
    }
    if alpha == 0.0 || alpha == 1.0 {
        return Ok(Bits::ZERO);
    }
    if comp_l == comp_t {
        return Ok(Bits::ZERO);
    }
    let h_mix = mixture_entropy(
        &[alpha, 1.0 - alpha],
        &[comp_l.0, comp_t.0],
        &[comp_l.1, comp_t.1],
    )?
    .value();
    let h_cond = alpha * gaussian_entropy(comp_l.1) + (1.0 - alpha) * gaussian_entropy(comp_t.1);
    Ok(Bits::new((h_mix - h_cond).clamp(0.0, binary_entropy(alpha))).expect("clamped"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_standard_normal() {
        let h = mixture_entropy(&[1.0], &[0.0], &[1.0]).unwrap().value();
        assert!((h - 2.047096).abs() < 1e-6);
        assert!((h - gaussian_entropy(1.0)).abs() < 1e-8);
    }

    #[test]
    fn identical_components_collapse() {
        let h = mixture_entropy(&[0.3, 0.7], &[1.0, 1.0], &[2.0, 2.0])
            .unwrap()
            .value();
        assert!((h - gaussian_entropy(2.0)).abs() < 1e-8);
    }

    #[test]
    fn far_separation_adds_one_bit() {
        let h = mixture_entropy(&[0.5, 0.5], &[0.0, 20.0], &[1.0, 1.0])
            .unwrap()
            .value();
        assert!((h - gaussian_entropy(1.0) - 1.0).abs() < 1e-4);
    }

    #[test]
    fn state_output_degenerate_cases() {
        assert_eq!(
            state_output_mi(0.0, (0.0, 1.0), (0.0, 5.0))
                .unwrap()
                .value(),
            0.0
        );
        assert_eq!(
            state_output_mi(1.0, (0.0, 1.0), (0.0, 5.0))
                .unwrap()
                .value(),
            0.0
        );
        assert_eq!(
            state_output_mi(0.4, (0.0, 3.0), (0.0, 3.0))
                .unwrap()
                .value(),
            0.0
        );
        let v = state_output_mi(0.5, (0.0, 1.0), (0.0, 101.0))
            .unwrap()
            .value();
        assert!(v > 0.0 && v <= 1.0);
    }
}
