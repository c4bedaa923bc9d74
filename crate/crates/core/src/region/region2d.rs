use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cross products at or below this are treated as collinear.
pub const COLLINEAR_TOLERANCE: f64 = 1e-12;
/// Input coordinates down to this negative value are snapped to zero.
const SNAP: f64 = 1e-9;

pub type Point = (f64, f64);

/// Downward-closed convex polygon in the `(R_P, R_C)` plane.
///
/// Vertices run counter-clockwise from `(max R_P, 0)` along the frontier to
/// `(0, max R_C)` and close at the origin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Region2D {
    vertices: Vec<Point>,
}

fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

fn snap(p: Point) -> Result<Point> {
    if !p.0.is_finite() || !p.1.is_finite() || p.0 < -SNAP || p.1 < -SNAP {
        return Err(Error::InvalidParameter(format!(
            "rate point ({}, {}) is not a finite non-negative pair",
            p.0, p.1
        )));
    }
    Ok((p.0.max(0.0), p.1.max(0.0)))
}

impl Region2D {
    /// The region `{(0, 0)}`.
    pub fn origin() -> Self {
        Self {
            vertices: vec![(0.0, 0.0)],
        }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Convex hull of `points` together with their downward closure.
    pub fn hull(points: &[Point]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Empty("hull input"));
        }
        let mut pts = Vec::with_capacity(3 * points.len() + 1);
        pts.push((0.0, 0.0));
        for &p in points {
            let p = snap(p)?;
            pts.push(p);
            pts.push((p.0, 0.0));
            pts.push((0.0, p.1));
        }
        pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        pts.dedup();
        if pts.len() == 1 {
            return Ok(Self::origin());
        }

        let mut lower: Vec<Point> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2
                && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= COLLINEAR_TOLERANCE
            {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<Point> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2
                && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= COLLINEAR_TOLERANCE
            {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        let mut ring: Vec<Point> = lower.into_iter().chain(upper).collect();
        ring.dedup();

        let start = ring
            .iter()
            .enumerate()
            .filter(|(_, p)| p.1 == 0.0)
            .max_by(|a, b| a.1 .0.total_cmp(&b.1 .0))
            .map(|(i, _)| i)
            .unwrap_or(0);
        ring.rotate_left(start);
        Ok(Self { vertices: ring })
    }

    /// Hull of tagged points; returns for each vertex the tag of an input
    /// point located there, if any.
    pub fn hull_tagged(points: &[(Point, usize)]) -> Result<(Self, Vec<Option<usize>>)> {
        let plain: Vec<Point> = points.iter().map(|(p, _)| *p).collect();
        let region = Self::hull(&plain)?;
        let tags = region
            .vertices
            .iter()
            .map(|v| {
                points
                    .iter()
                    .find(|(p, _)| {
                        (p.0.max(0.0) - v.0).abs() <= 1e-12 && (p.1.max(0.0) - v.1).abs() <= 1e-12
                    })
                    .map(|(_, t)| *t)
            })
            .collect();
        Ok((region, tags))
    }

    /// Hull of the union of the regions' vertex sets.
    pub fn union(regions: &[Region2D]) -> Result<Self> {
        if regions.is_empty() {
            return Err(Error::Empty("union input"));
        }
        let pts: Vec<Point> = regions
            .iter()
            .flat_map(|r| r.vertices.iter().copied())
            .collect();
        Self::hull(&pts)
    }

    /// Polygon `{x, y >= 0, a x + b y <= c for every row}`; the caller
    /// guarantees boundedness.
    pub fn from_halfplanes(rows: &[(f64, f64, f64)]) -> Result<Self> {
        let mut lines: Vec<(f64, f64, f64)> = rows.to_vec();
        lines.push((1.0, 0.0, 0.0));
        lines.push((0.0, 1.0, 0.0));
        let feasible = |p: Point| {
            p.0 >= -SNAP
                && p.1 >= -SNAP
                && rows
                    .iter()
                    .all(|&(a, b, c)| a * p.0 + b * p.1 <= c + SNAP * c.abs().max(1.0))
        };
        let mut pts = Vec::new();
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                let (a1, b1, c1) = lines[i];
                let (a2, b2, c2) = lines[j];
                let det = a1 * b2 - a2 * b1;
                if det.abs() < 1e-14 {
                    continue;
                }
                let p = ((c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det);
                if feasible(p) {
                    pts.push((p.0.max(0.0), p.1.max(0.0)));
                }
            }
        }
        if pts.is_empty() {
            return Err(Error::Infeasible);
        }
        Self::hull(&pts)
    }

    pub fn max_rp(&self) -> f64 {
        self.vertices.iter().map(|v| v.0).fold(0.0, f64::max)
    }

    pub fn max_rc(&self) -> f64 {
        self.vertices.iter().map(|v| v.1).fold(0.0, f64::max)
    }

    /// Shoelace area.
    pub fn area(&self) -> f64 {
        let n = self.vertices.len();
        if n < 3 {
            return 0.0;
        }
        let twice: f64 = (0..n)
            .map(|i| {
                let (p, q) = (self.vertices[i], self.vertices[(i + 1) % n]);
                p.0 * q.1 - q.0 * p.1
            })
            .sum();
        0.5 * twice.abs()
    }

    /// Largest signed distance by which `p` leaves the region (non-positive
    /// when inside).
    pub fn violation(&self, p: Point) -> f64 {
        let mut worst = (-p.0)
            .max(-p.1)
            .max(p.0 - self.max_rp())
            .max(p.1 - self.max_rc());
        let n = self.vertices.len();
        if n >= 2 {
            for i in 0..n {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
                let (dx, dy) = (b.0 - a.0, b.1 - a.1);
                let len = dx.hypot(dy);
                if len <= 1e-15 {
                    continue;
                }
                worst = worst.max((dy * (p.0 - a.0) - dx * (p.1 - a.1)) / len);
            }
        }
        worst
    }

    /// Whether every vertex of `other` lies within `tol` of this region,
    /// with the worst signed violation.
    pub fn contains(&self, other: &Region2D, tol: f64) -> (bool, f64) {
        let worst = other
            .vertices
            .iter()
            .map(|&v| self.violation(v))
            .fold(f64::NEG_INFINITY, f64::max);
        (worst <= tol, worst)
    }

    /// Largest `R_C` with `(x, R_C)` in the region; `None` beyond `max R_P`.
    pub fn frontier_at(&self, x: f64) -> Option<f64> {
        if x < 0.0 || x > self.max_rp() {
            return None;
        }
        let n = self.vertices.len();
        let mut best: f64 = 0.0;
        for i in 0..n {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
            let (lo, hi) = if a.0 <= b.0 { (a, b) } else { (b, a) };
            if x < lo.0 || x > hi.0 {
                continue;
            }
            let y = if hi.0 - lo.0 <= 1e-15 {
                lo.1.max(hi.1)
            } else {
                lo.1 + (hi.1 - lo.1) * (x - lo.0) / (hi.0 - lo.0)
            };
            best = best.max(y);
        }
        Some(best)
    }

    /// The region shifted by `(dx, dy)` and closed downward again.
    pub fn shifted(&self, dx: f64, dy: f64) -> Result<Self> {
        let pts: Vec<Point> = self.vertices.iter().map(|v| (v.0 + dx, v.1 + dy)).collect();
        Self::hull(&pts)
    }

    /// CSV with `#` comment lines, header `R_P_bits,R_C_bits`, one vertex per row.
    pub fn to_csv(&self, comments: &[String]) -> String {
        let mut out = String::new();
        for c in comments {
            let _ = writeln!(out, "# {c}");
        }
        out.push_str("R_P_bits,R_C_bits\n");
        for v in &self.vertices {
            let _ = writeln!(out, "{:.12},{:.12}", v.0, v.1);
        }
        out
    }
}

/// Free-function form of [`Region2D::hull`].
pub fn hull(points: &[Point]) -> Result<Region2D> {
    Region2D::hull(points)
}

/// Free-function form of [`Region2D::union`].
pub fn union(regions: &[Region2D]) -> Result<Region2D> {
    Region2D::union(regions)
}

/// Free-function form of [`Region2D::contains`].
pub fn contains(a: &Region2D, b: &Region2D, tol: f64) -> (bool, f64) {
    a.contains(b, tol)
}

/// Area of the (generally non-convex) union of downward-closed regions,
/// integrating the pointwise-maximum frontier by the midpoint rule on a
/// grid refined at every vertex abscissa.
pub fn union_area(regions: &[Region2D], samples: usize) -> f64 {
    let xmax = regions.iter().map(Region2D::max_rp).fold(0.0, f64::max);
    if xmax == 0.0 {
        return 0.0;
    }
    let mut xs: Vec<f64> = (0..=samples)
        .map(|k| xmax * k as f64 / samples as f64)
        .collect();
    xs.extend(
        regions
            .iter()
            .flat_map(|r| r.vertices().iter().map(|v| v.0)),
    );
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let height = |x: f64| {
        regions
            .iter()
            .filter_map(|r| r.frontier_at(x))
            .fold(0.0, f64::max)
    };
    xs.windows(2)
        .map(|w| (w[1] - w[0]) * height(0.5 * (w[0] + w[1])))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle(s: f64) -> Region2D {
        Region2D::hull(&[(s, 0.0), (0.0, s)]).unwrap()
    }

    #[test]
    fn triangle_vertices_ccw_from_rp_axis() {
        assert_eq!(
            triangle(1.0).vertices(),
            &[(1.0, 0.0), (0.0, 1.0), (0.0, 0.0)]
        );
        assert!((triangle(1.0).area() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn single_point_hull_is_rectangle() {
        let r = Region2D::hull(&[(2.0, 1.0)]).unwrap();
        assert_eq!(
            r.vertices(),
            &[(2.0, 0.0), (2.0, 1.0), (0.0, 1.0), (0.0, 0.0)]
        );
        assert!((r.area() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn degenerate_shapes() {
        assert_eq!(Region2D::hull(&[(0.0, 0.0)]).unwrap(), Region2D::origin());
        let seg = Region2D::hull(&[(1.5, 0.0)]).unwrap();
        assert_eq!(seg.vertices(), &[(1.5, 0.0), (0.0, 0.0)]);
        assert_eq!(seg.area(), 0.0);
        assert!(seg.violation((1.0, 0.0)) <= 0.0);
        assert!(seg.violation((1.0, 0.1)) > 0.0);
    }

    #[test]
    fn interior_and_collinear_points_are_pruned() {
        let r = Region2D::hull(&[(1.0, 0.0), (0.5, 0.5), (0.0, 1.0), (0.2, 0.2)]).unwrap();
        assert_eq!(r.vertices().len(), 3);
    }

    #[test]
    fn containment() {
        let (ok, worst) = triangle(1.0).contains(&triangle(1.0), 0.0);
        assert!(ok && worst.abs() < 1e-15);
        assert!(triangle(1.0).contains(&triangle(0.5), 0.0).0);
        let (ok, worst) = triangle(0.5).contains(&triangle(1.0), 1e-6);
        assert!(!ok && worst > 0.3);
    }

    #[test]
    fn halfplanes_give_pentagon() {
        let r = Region2D::from_halfplanes(&[(1.0, 0.0, 2.0), (0.0, 1.0, 2.0), (1.0, 1.0, 3.0)])
            .unwrap();
        assert_eq!(
            r.vertices(),
            &[(2.0, 0.0), (2.0, 1.0), (1.0, 2.0), (0.0, 2.0), (0.0, 0.0)]
        );
    }

    #[test]
    fn frontier_and_union_area() {
        let a = Region2D::hull(&[(2.0, 0.5)]).unwrap();
        let b = Region2D::hull(&[(0.5, 2.0)]).unwrap();
        assert_eq!(a.frontier_at(1.0), Some(0.5));
        assert_eq!(a.frontier_at(2.5), None);
        let u = union_area(&[a.clone(), b.clone()], 1000);
        assert!((u - (1.0 + 1.0 - 0.25)).abs() < 1e-12);
        assert!(Region2D::union(&[a, b]).unwrap().area() > u);
    }

    #[test]
    fn empty_inputs_fail() {
        assert!(Region2D::hull(&[]).is_err());
        assert!(Region2D::union(&[]).is_err());
        assert!(Region2D::hull(&[(-1.0, 0.0)]).is_err());
    }
}
