//! Vertex directions of a regular simplex.
//!
//! The `n + 1` unit vectors returned here have pairwise inner product
//! `-1/n` and sum to zero.  They are built exactly: take the standard basis
//! of `R^(n+1)` recentred at its centroid, then rotate the hull's
//! `n`-dimensional subspace onto `R^n` with a single Householder reflection
//! that sends the all-ones direction to the last axis.

use crate::error::{Error, Result};

/// Unit vertex directions of a regular `n`-simplex centred at the origin.
pub fn regular_simplex_directions(dim: usize) -> Result<Vec<Vec<f64>>> {
    if dim == 0 {
        return Err(Error::domain("simplex dimension must be at least 1"));
    }
    let m = dim + 1;
    // Householder vector v = u - e_m for u = (1, .., 1)/sqrt(m).
    let u = 1.0 / (m as f64).sqrt();
    let mut v = vec![u; m];
    v[m - 1] -= 1.0;
    let vv: f64 = v.iter().map(|x| x * x).sum();

    let scale = ((m as f64) / (m as f64 - 1.0)).sqrt(); // |e_i - centroid|^-1
    let mut dirs = Vec::with_capacity(m);
    for i in 0..m {
        // w = (e_i - centroid) normalized, expressed in R^m.
        let mut w: Vec<f64> = (0..m)
            .map(|j| {
                let delta = if i == j { 1.0 } else { 0.0 };
                (delta - 1.0 / m as f64) * scale
            })
            .collect();
        // Reflect: w -= 2 (v.w / v.v) v. Afterwards the last coordinate is 0.
        let coef = 2.0 * w.iter().zip(&v).map(|(a, b)| a * b).sum::<f64>() / vv;
        for (wj, vj) in w.iter_mut().zip(&v) {
            *wj -= coef * vj;
        }
        debug_assert!(w[m - 1].abs() < 1e-12);
        w.truncate(dim);
        dirs.push(w);
    }
    Ok(dirs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn dot(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    #[test]
    fn one_dimensional_simplex_is_plus_minus_one() {
        let dirs = regular_simplex_directions(1).unwrap();
        assert_eq!(dirs.len(), 2);
        let mut xs: Vec<f64> = dirs.iter().map(|d| d[0]).collect();
        xs.sort_by(f64::total_cmp);
        assert_abs_diff_eq!(xs[0], -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(xs[1], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn directions_are_unit_balanced_and_equiangular() {
        for dim in 1..=8 {
            let dirs = regular_simplex_directions(dim).unwrap();
            assert_eq!(dirs.len(), dim + 1);
            let expected = -1.0 / dim as f64;
            for i in 0..dirs.len() {
                assert_abs_diff_eq!(dot(&dirs[i], &dirs[i]), 1.0, epsilon = 1e-12);
                for j in (i + 1)..dirs.len() {
                    assert_abs_diff_eq!(dot(&dirs[i], &dirs[j]), expected, epsilon = 1e-12);
                }
            }
            for d in 0..dim {
                let sum: f64 = dirs.iter().map(|v| v[d]).sum();
                assert_abs_diff_eq!(sum, 0.0, epsilon = 1e-12);
            }
        }
    }
}
