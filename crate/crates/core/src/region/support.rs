use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use super::polytope::{project_point, RatePolytope, DIM};
use super::region2d::{Point, Region2D};
use super::terms::{PRIMARY_COLUMNS, SECONDARY_COLUMNS};
use crate::error::{Error, Result};

/// `count` unit directions evenly spaced over the closed first quadrant.
pub fn quadrant_directions(count: usize) -> Vec<(f64, f64)> {
    match count {
        0 => Vec::new(),
        1 => vec![(FRAC_1_SQRT_2, FRAC_1_SQRT_2)],
        _ => (0..count)
            .map(|k| {
                let th = FRAC_PI_2 * k as f64 / (count - 1) as f64;
                (th.cos(), th.sin())
            })
            .collect(),
    }
}

/// The `(R_P, R_C)` maximizer of `mu R_P + nu R_C` for each direction.
pub fn support_points(poly: &RatePolytope, directions: &[(f64, f64)]) -> Result<Vec<Point>> {
    directions
        .iter()
        .map(|&(mu, nu)| {
            if !(mu >= 0.0 && nu >= 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "direction ({mu}, {nu}) is not non-negative"
                )));
            }
            let mut w = [0.0; DIM];
            PRIMARY_COLUMNS.iter().for_each(|&k| w[k] = mu);
            SECONDARY_COLUMNS.iter().for_each(|&k| w[k] = nu);
            let (x, _) = poly.maximize(&w)?;
            Ok(project_point(&x))
        })
        .collect()
}

/// Inner approximation of the projection: hull of the LP maximizers over
/// at least three non-negative directions.
pub fn support_sweep(poly: &RatePolytope, directions: &[(f64, f64)]) -> Result<Region2D> {
    if directions.len() < 3 {
        return Err(Error::InvalidParameter(format!(
            "support sweep needs at least 3 directions, got {}",
            directions.len()
        )));
    }
    Region2D::hull(&support_points(poly, directions)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::region::{build_polytope, MiTerms};

    #[test]
    fn directions_span_quadrant() {
        let d = quadrant_directions(721);
        assert_eq!(d[0], (1.0, 0.0));
        assert!(d[720].0.abs() < 1e-15 && d[720].1 == 1.0);
    }

    #[test]
    fn too_few_directions() {
        let poly = build_polytope(&MiTerms::from_array(0.5, [1.0; 18]).unwrap());
        assert!(support_sweep(&poly, &quadrant_directions(2)).is_err());
    }
}
