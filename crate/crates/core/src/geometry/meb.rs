//! Exact minimum enclosing ball (Welzl's move-to-front algorithm).
//!
//! Recursion only happens when a point is forced onto the boundary, so the
//! stack depth is bounded by `dim + 2` regardless of how many points there
//! are.  Boundary balls are circumspheres of the support set solved through a
//! Gram system; near-dependent supports (collinear/coplanar configurations)
//! are handled by skipping pivots below a tolerance, which restricts the
//! solve to the affinely independent part of the support.

use super::{Ball, Point, PointSet, MAX_DIM};
use crate::error::{Error, Result};

/// Pivot threshold (relative to the largest diagonal) below which a Gram
/// system row is treated as dependent and dropped.
const PIVOT_TOL: f64 = 1e-12;

/// Containment slack used inside the solver; small enough not to inflate the
/// ball, large enough to keep boundary points from flip-flopping.
const INSIDE_TOL: f64 = 1e-12;

/// Minimum enclosing ball together with the support points that pin it.
#[derive(Clone, Debug)]
pub struct MebResult {
    pub ball: Ball,
    /// Indices into the input set; at most `dim + 1` of them, all on the
    /// boundary of `ball`.
    pub support: Vec<usize>,
}

/// Smallest ball containing every point of `ps`.
pub fn min_enclosing_ball(ps: &PointSet) -> Result<Ball> {
    Ok(min_enclosing_ball_with_support(ps)?.ball)
}

/// As [`min_enclosing_ball`], but also reports the support set.
pub fn min_enclosing_ball_with_support(ps: &PointSet) -> Result<MebResult> {
    if ps.dim() > MAX_DIM {
        return Err(Error::UnsupportedDimension {
            dim: ps.dim(),
            max: MAX_DIM,
        });
    }
    let pts = ps.points();
    let mut order: Vec<usize> = (0..pts.len()).collect();
    let mut boundary = Vec::with_capacity(ps.dim() + 1);
    let ball = mtf_ball(pts, &mut order, pts.len(), &mut boundary, ps.dim());
    let ball = ball.ok_or_else(|| Error::Internal("empty support for nonempty set".into()))?;
    Ok(MebResult {
        ball: Ball::new(ball.center, ball.radius.max(0.0))?,
        support: ball.support,
    })
}

/// A candidate ball along with the support set whose circumsphere it is.
struct Pinned {
    center: Point,
    radius: f64,
    support: Vec<usize>,
}

type Candidate = Option<Pinned>;

/// Welzl move-to-front over the prefix `order[..end]`, with `boundary`
/// holding the points forced onto the sphere by the callers.
fn mtf_ball(
    pts: &[Point],
    order: &mut [usize],
    end: usize,
    boundary: &mut Vec<usize>,
    dim: usize,
) -> Candidate {
    let mut ball = ball_of_support(pts, boundary);
    if boundary.len() == dim + 1 {
        return ball;
    }
    let mut i = 0;
    while i < end {
        let cur = order[i];
        if !inside(&ball, &pts[cur]) {
            boundary.push(cur);
            ball = mtf_ball(pts, order, i, boundary, dim);
            boundary.pop();
            order[..=i].rotate_right(1);
        }
        i += 1;
    }
    ball
}

fn inside(ball: &Candidate, p: &Point) -> bool {
    match ball {
        None => false,
        Some(b) => b.center.dist(p) <= b.radius + INSIDE_TOL,
    }
}

/// Smallest ball with every support point on its boundary.  The center lies
/// in the affine hull of the support; with `S = {x0, .., xk}` it solves
/// `2 (xi - x0) . (c - x0) = |xi - x0|^2` via the Gram matrix of the edges.
fn ball_of_support(pts: &[Point], support: &[usize]) -> Candidate {
    match support.len() {
        0 => None,
        1 => Some(Pinned {
            center: pts[support[0]].clone(),
            radius: 0.0,
            support: support.to_vec(),
        }),
        _ => {
            let x0 = &pts[support[0]];
            let dim = x0.dim();
            let k = support.len() - 1;
            let edges: Vec<Vec<f64>> = support[1..]
                .iter()
                .map(|&i| {
                    pts[i]
                        .coords()
                        .iter()
                        .zip(x0.coords())
                        .map(|(a, b)| a - b)
                        .collect()
                })
                .collect();
            let mut gram = vec![vec![0.0; k + 1]; k];
            for i in 0..k {
                for j in 0..k {
                    gram[i][j] = 2.0 * dot(&edges[i], &edges[j]);
                }
                gram[i][k] = dot(&edges[i], &edges[i]);
            }
            let coeff = solve_with_pivot_drop(&mut gram, k);
            let mut center = x0.coords().to_vec();
            for (c, edge) in coeff.iter().zip(&edges) {
                for d in 0..dim {
                    center[d] += c * edge[d];
                }
            }
            let center = Point::from_vec(center);
            let radius = support
                .iter()
                .map(|&i| center.dist(&pts[i]))
                .fold(0.0f64, f64::max);
            Some(Pinned {
                center,
                radius,
                support: support.to_vec(),
            })
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Gaussian elimination with partial pivoting on the augmented system
/// `m[.][..k] | m[.][k]`.  Pivots below `PIVOT_TOL` times the dominant scale
/// are skipped: the corresponding coefficient is pinned to zero, which keeps
/// the center inside the hull of an independent sub-support.
fn solve_with_pivot_drop(m: &mut [Vec<f64>], k: usize) -> Vec<f64> {
    let scale = (0..k)
        .map(|i| m[i][i].abs())
        .fold(0.0f64, f64::max)
        .max(f64::MIN_POSITIVE);
    let mut coeff = vec![0.0; k];
    let mut used = vec![false; k];
    let mut pivot_cols = Vec::new();
    for col in 0..k {
        let row = (0..k)
            .filter(|&r| !used[r])
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()));
        let row = match row {
            Some(r) if m[r][col].abs() > PIVOT_TOL * scale => r,
            _ => continue, // dependent direction: leave coeff[col] at zero
        };
        used[row] = true;
        pivot_cols.push((row, col));
        for r in 0..k {
            if r != row && m[r][col].abs() > 0.0 {
                let factor = m[r][col] / m[row][col];
                for c in 0..=k {
                    m[r][c] -= factor * m[row][c];
                }
            }
        }
    }
    for &(row, col) in pivot_cols.iter().rev() {
        let mut rhs = m[row][k];
        for c in 0..k {
            if c != col {
                rhs -= m[row][c] * coeff[c];
            }
        }
        coeff[col] = rhs / m[row][col];
    }
    coeff
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
    fn single_point() {
        let r = min_enclosing_ball_with_support(&set(&[&[2.0, -1.0]])).unwrap();
        assert_eq!(r.ball.radius(), 0.0);
        assert_eq!(r.support, vec![0]);
    }

    #[test]
    fn two_points_midpoint() {
        let r = min_enclosing_ball(&set(&[&[0.0, 0.0], &[2.0, 0.0]])).unwrap();
        assert_abs_diff_eq!(r.radius(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.center().coords()[0], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn collinear_points_use_extremes() {
        // Rank-deficient support configurations show up here: three collinear
        // points in the plane are enclosed by the segment's midpoint ball.
        let r = min_enclosing_ball(&set(&[&[0.0, 0.0], &[1.0, 1.0], &[3.0, 3.0]])).unwrap();
        assert_abs_diff_eq!(r.radius(), 18.0f64.sqrt() / 2.0, epsilon = 1e-10);
        assert_abs_diff_eq!(r.center().coords()[0], 1.5, epsilon = 1e-10);
    }

    #[test]
    fn square_in_three_dimensions() {
        // A planar square embedded in R^3: strictly fewer support dimensions
        // than ambient dimensions.
        let ps = set(&[
            &[0.0, 0.0, 5.0],
            &[1.0, 0.0, 5.0],
            &[0.0, 1.0, 5.0],
            &[1.0, 1.0, 5.0],
        ]);
        let r = min_enclosing_ball(&ps).unwrap();
        assert_abs_diff_eq!(r.radius(), 0.5f64.sqrt(), epsilon = 1e-10);
        assert_abs_diff_eq!(r.center().coords()[2], 5.0, epsilon = 1e-10);
    }

    #[test]
    fn interior_points_do_not_matter() {
        let mut rows: Vec<Vec<f64>> = vec![
            vec![1.0, 0.0, 0.0],
            vec![-1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, -1.0, 0.0],
        ];
        for i in 0..20 {
            let t = i as f64 / 40.0;
            rows.push(vec![t * 0.3, -t * 0.2, t * 0.4]);
        }
        let ps = PointSet::new(
            rows.into_iter()
                .map(|r| Point::new(r).unwrap())
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let r = min_enclosing_ball(&ps).unwrap();
        assert_abs_diff_eq!(r.radius(), 1.0, epsilon = 1e-10);
    }

    #[test]
    fn support_points_sit_on_boundary() {
        let ps = set(&[
            &[0.3, 0.9],
            &[-1.0, 0.1],
            &[0.7, -0.6],
            &[0.2, 0.2],
            &[0.9, 0.4],
        ]);
        let r = min_enclosing_ball_with_support(&ps).unwrap();
        assert!(r.support.len() <= 3);
        for &i in &r.support {
            let d = r.ball.center().dist(&ps.points()[i]);
            assert_abs_diff_eq!(d, r.ball.radius(), epsilon = 1e-9);
        }
        // Re-solving on just the support reproduces the ball.
        let sub = PointSet::new(r.support.iter().map(|&i| ps.points()[i].clone()).collect()).unwrap();
        let again = min_enclosing_ball(&sub).unwrap();
        assert_abs_diff_eq!(again.radius(), r.ball.radius(), epsilon = 1e-9);
    }

    #[test]
    fn dimension_cap_enforced() {
        let p = Point::new(vec![0.0; 11]).unwrap();
        let ps = PointSet::new(vec![p]).unwrap();
        assert!(matches!(
            min_enclosing_ball(&ps),
            Err(Error::UnsupportedDimension { dim: 11, max: 10 })
        ));
    }
}
