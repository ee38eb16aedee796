//! Points, point sets, and enclosing balls in low-dimensional Euclidean space.
//!
//! Everything downstream (partitioning, cap covers, the verification sweeps)
//! works on finite point sets, which stand in for arbitrary bounded sets: a
//! bounded set and its finite samples have the same diameter in the limit,
//! and every partition bound proved here is witnessed on finite samples.

mod meb;
pub mod simplex;

pub use meb::{min_enclosing_ball, min_enclosing_ball_with_support, MebResult};

use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};

/// Largest dimension the exact enclosing-ball solver accepts.
pub const MAX_DIM: usize = 10;

/// Slack for geometric containment comparisons.
pub const GEOM_TOL: f64 = 1e-9;

/// A point in `dim`-dimensional Euclidean space.
#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    /// Builds a point, rejecting empty or non-finite coordinates.
    pub fn new(coords: Vec<f64>) -> Result<Point> {
        if coords.is_empty() {
            return Err(Error::domain("point must have at least one coordinate"));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::domain("point coordinates must be finite"));
        }
        Ok(Point { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dist(&self, other: &Point) -> f64 {
        self.dist2(other).sqrt()
    }

    pub fn dist2(&self, other: &Point) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b) * (a - b))
            .sum()
    }

    pub(crate) fn from_vec(coords: Vec<f64>) -> Point {
        Point { coords }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A nonempty finite set of points sharing one dimension.
#[derive(Clone, Debug)]
pub struct PointSet {
    dim: usize,
    points: Vec<Point>,
}

impl PointSet {
    /// Builds a set, enforcing a common dimension across all points.
    pub fn new(points: Vec<Point>) -> Result<PointSet> {
        let first = points
            .first()
            .ok_or_else(|| Error::domain("point set must be nonempty"))?;
        let dim = first.dim();
        if let Some(bad) = points.iter().position(|p| p.dim() != dim) {
            return Err(Error::domain(format!(
                "point {bad} has dimension {} but the set has dimension {dim}",
                points[bad].dim()
            )));
        }
        Ok(PointSet { dim, points })
    }

    /// Parses the plain-text exchange format: one point per line, coordinates
    /// separated by commas, `#` starting a comment line.  The dimension is
    /// inferred from the first data line and enforced afterwards.
    pub fn parse(text: &str) -> Result<PointSet> {
        let mut points = Vec::new();
        let mut dim = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let coords: Vec<f64> = trimmed
                .split(',')
                .map(|field| {
                    field.trim().parse::<f64>().map_err(|_| Error::Parse {
                        line,
                        msg: format!("cannot parse coordinate {:?}", field.trim()),
                    })
                })
                .collect::<Result<_>>()?;
            if coords.iter().any(|c| !c.is_finite()) {
                return Err(Error::Parse {
                    line,
                    msg: "coordinates must be finite".into(),
                });
            }
            match dim {
                None => dim = Some(coords.len()),
                Some(d) if d != coords.len() => {
                    return Err(Error::Parse {
                        line,
                        msg: format!("expected {d} coordinates, found {}", coords.len()),
                    });
                }
                _ => {}
            }
            points.push(Point { coords });
        }
        if points.is_empty() {
            return Err(Error::Parse {
                line: 0,
                msg: "no points found".into(),
            });
        }
        PointSet::new(points)
    }

    pub fn from_path(path: &Path) -> Result<PointSet> {
        PointSet::parse(&std::fs::read_to_string(path)?)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false // by construction
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// The set scaled about the origin by `factor`.
    pub fn scaled(&self, factor: f64) -> PointSet {
        let points = self
            .points
            .iter()
            .map(|p| Point::from_vec(p.coords.iter().map(|c| c * factor).collect()))
            .collect();
        PointSet {
            dim: self.dim,
            points,
        }
    }
}

/// Exact pairwise maximum distance.  `O(m^2)`, which is fine at desk scale.
pub fn diameter(ps: &PointSet) -> f64 {
    let pts = ps.points();
    let mut best = 0.0f64;
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            best = best.max(pts[i].dist2(&pts[j]));
        }
    }
    best.sqrt()
}

/// A closed Euclidean ball.
#[derive(Clone, Debug)]
pub struct Ball {
    center: Point,
    radius: f64,
}

impl Ball {
    pub fn new(center: Point, radius: f64) -> Result<Ball> {
        if !radius.is_finite() || radius < 0.0 {
            return Err(Error::domain("ball radius must be finite and nonnegative"));
        }
        Ok(Ball { center, radius })
    }

    pub fn center(&self) -> &Point {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn dim(&self) -> usize {
        self.center.dim()
    }

    /// Containment with absolute slack `tol` on the radius.
    pub fn contains(&self, p: &Point, tol: f64) -> bool {
        self.center.dist(p) <= self.radius + tol
    }
}

/// Jung's constant `sqrt(n / (2n + 2))`: every set of diameter `d` in
/// dimension `n` fits in a ball of radius `d * jung_radius(n)`.  Tends to
/// `1/sqrt(2)` from below as `n` grows.
pub fn jung_radius(dim: usize) -> f64 {
    let n = dim as f64;
    (n / (2.0 * n + 2.0)).sqrt()
}

/// Outcome of checking a concrete set against Jung's bound.
#[derive(Clone, Debug)]
pub struct JungReport {
    pub dim: usize,
    pub points: usize,
    pub diameter: f64,
    pub meb_radius: f64,
    pub bound: f64,
    pub ok: bool,
}

/// Verifies `meb_radius <= diameter * jung_radius(dim)` on a concrete set.
pub fn jung_check(ps: &PointSet) -> Result<JungReport> {
    let ball = min_enclosing_ball(ps)?;
    let diam = diameter(ps);
    let bound = diam * jung_radius(ps.dim());
    Ok(JungReport {
        dim: ps.dim(),
        points: ps.len(),
        diameter: diam,
        meb_radius: ball.radius(),
        bound,
        ok: ball.radius() <= bound + GEOM_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn set(rows: &[&[f64]]) -> PointSet {
        PointSet::new(
            rows.iter()
                .map(|r| Point::new(r.to_vec()).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn diameter_of_unit_square() {
        let ps = set(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]]);
        assert_abs_diff_eq!(diameter(&ps), 2.0f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn diameter_of_singleton_is_zero() {
        assert_eq!(diameter(&set(&[&[3.0, 4.0]])), 0.0);
    }

    #[test]
    fn parse_roundtrip_with_comments() {
        let ps = PointSet::parse("# header\n0.5, 0.25\n\n-1e-3, 2.0\n").unwrap();
        assert_eq!(ps.dim(), 2);
        assert_eq!(ps.len(), 2);
        assert_eq!(ps.points()[1].coords(), &[-1e-3, 2.0]);
    }

    #[test]
    fn parse_rejects_ragged_rows_with_line_number() {
        let err = PointSet::parse("1.0, 2.0\n3.0\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_garbage_and_empty() {
        assert!(PointSet::parse("1.0, two\n").is_err());
        assert!(PointSet::parse("# only a comment\n").is_err());
    }

    #[test]
    fn jung_radius_values() {
        // n = 1: interval of diameter d sits in a ball (interval) of radius d/2.
        assert_abs_diff_eq!(jung_radius(1), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(jung_radius(2), 0.5773502691896257, epsilon = 1e-12);
        // Approaches 1/sqrt(2) from below.
        assert_abs_diff_eq!(
            jung_radius(1_000_000),
            std::f64::consts::FRAC_1_SQRT_2,
            epsilon = 1e-6
        );
        assert!(jung_radius(1_000_000) < std::f64::consts::FRAC_1_SQRT_2);
    }

    #[test]
    fn jung_check_two_points() {
        // Two points at distance 1 in R^3: enclosing radius 1/2, bound 0.6123724357.
        let ps = set(&[&[0.0, 0.0, 0.0], &[1.0, 0.0, 0.0]]);
        let report = jung_check(&ps).unwrap();
        assert_abs_diff_eq!(report.meb_radius, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(report.bound, 0.6123724356957945, epsilon = 1e-10);
        assert!(report.ok);
    }
}
