//! The cap-separation ratio `f(r, rho, a)`, its maximizer in `rho`, and the
//! closed-form maximum `sqrt(4a^2 + 1)` — each cross-checked by an
//! independent golden-section oracle.
//!
//! In the cap-pair geometry of [`crate::cap_pair`], two caps of chordal
//! radius `rho` sit on a sphere of radius `r`, and `a` is half the distance
//! between the circumcenters of the point sets living on the two cap rims.
//! `f(r, rho, a)` is then the distance between the cap centers measured in
//! units of `rho`.  The sharp estimate `f <= sqrt(4a^2 + 1)` is what turns a
//! half-separation limit into the partition bound base `sqrt(1/b^2 + 1/2)`,
//! so this module never lets the closed forms stand unchecked:
//! [`f_max_numeric`] re-derives the maximum by 1-D search, and
//! [`verify_ratio_max`] sweeps the whole admissible region with seeded
//! Monte Carlo draws.

use std::f64::consts::SQRT_2;

use rand::Rng;

use crate::error::{Error, Result};
use crate::seeding;

/// Substream tag for the Monte Carlo sweep; each sample derives its own
/// stream from this base so runs parallelize without reordering draws.
const SWEEP_STREAM: u64 = 0x7261_7469_0000_0000;

/// Radicands that are algebraically nonnegative may dip this far below zero
/// in floats (the `rho = 1/2` and `rho = r` boundaries are exact zeros);
/// anything lower is a genuine domain violation.
const RADICAND_SLACK: f64 = -1e-12;

fn sqrt_clamped(x: f64, what: &str) -> Result<f64> {
    if x.is_nan() || x < RADICAND_SLACK {
        return Err(Error::domain(format!("{what} = {x} is negative")));
    }
    Ok(x.max(0.0).sqrt())
}

/// Largest admissible half-separation at relative diameter `d`:
/// `sqrt(d^2/4 - 1/8)`.
///
/// Plugging it into [`max_ratio`] gives `sqrt(d^2 + 1/2)` — the base of the
/// strongest partition bound ([`crate::bounds::BoundId::Theorem1`]).  The
/// radicand is nonnegative from `d = 1/sqrt(2)` on; callers normally have
/// `d >= 1`.
pub fn alpha_max(d: f64) -> Result<f64> {
    let radicand = d * d / 4.0 - 0.125;
    if !d.is_finite() || d < 0.0 || radicand < 0.0 {
        return Err(Error::domain(format!(
            "half-separation limit needs d >= 1/sqrt(2), got {d}"
        )));
    }
    Ok(radicand.sqrt())
}

/// The closed-form maximum of the ratio over `rho`: `sqrt(4a^2 + 1)`.
pub fn max_ratio(a: f64) -> f64 {
    (4.0 * a * a + 1.0).sqrt()
}

/// One argument tuple for the ratio function: relative diameter `d`,
/// half-separation `a`, sphere radius `r`, chordal radius `rho`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioParams {
    pub d: f64,
    pub a: f64,
    pub r: f64,
    pub rho: f64,
}

/// Checks the four admissibility clauses — `d >= 1`, `0 <= a <= alpha_max`,
/// `sqrt(a^2 + 1/4) <= r <= d/sqrt(2)`, `1/2 <= rho <= r` — and returns one
/// message per violated clause.  An empty list means the tuple is valid.
pub fn validate_params(p: &RatioParams) -> Vec<String> {
    let RatioParams { d, a, r, rho } = *p;
    let mut violations = Vec::new();
    if !(d >= 1.0) {
        violations.push(format!("d = {d} must be at least 1"));
    } else {
        let a_hi = (d * d / 4.0 - 0.125).sqrt();
        if !(a >= 0.0) {
            violations.push(format!("a = {a} must be nonnegative"));
        }
        if !(a <= a_hi) {
            violations.push(format!("a = {a} exceeds the half-separation limit {a_hi}"));
        }
    }
    let r_lo = (a * a + 0.25).sqrt();
    let r_hi = d / SQRT_2;
    if !(r >= r_lo) {
        violations.push(format!("r = {r} is below sqrt(a^2 + 1/4) = {r_lo}"));
    }
    if !(r <= r_hi) {
        violations.push(format!("r = {r} exceeds d/sqrt(2) = {r_hi}"));
    }
    if !(rho >= 0.5) {
        violations.push(format!("rho = {rho} is below 1/2"));
    }
    if !(rho <= r) {
        violations.push(format!("rho = {rho} exceeds r = {r}"));
    }
    violations
}

/// Evaluates the cap-separation ratio
/// `f(r, rho, a) = (r/rho) * (a*sqrt(r^2 - rho^2)
///   + sqrt(r^2 - 1/4 - a^2) * sqrt(rho^2 - 1/4)) / (r^2 - 1/4)`.
///
/// Differences like `r^2 - 1/4` are computed in factored form so the
/// boundary cases `rho = 1/2` and `rho = r` stay exact; radicands within
/// 1e-12 of zero are clamped, anything lower is a domain error.
pub fn f_value(r: f64, rho: f64, a: f64) -> Result<f64> {
    let r2m = (r - 0.5) * (r + 0.5);
    if !(r2m > 0.0) {
        return Err(Error::domain(format!("ratio needs r > 1/2, got r = {r}")));
    }
    let plane = sqrt_clamped((r - rho) * (r + rho), "r^2 - rho^2")?;
    let depth = sqrt_clamped(r2m - a * a, "r^2 - 1/4 - a^2")?;
    let rim = sqrt_clamped((rho - 0.5) * (rho + 0.5), "rho^2 - 1/4")?;
    Ok((r / rho) * (a * plane + depth * rim) / r2m)
}

/// The `rho`-derivative of [`f_value`], in the factored form
/// `(r/(r^2 - 1/4)) * ((1/4)*sqrt(r^2 - 1/4 - a^2)*sqrt(r^2 - rho^2)
///   - a*r^2*sqrt(rho^2 - 1/4)) / (rho^2 * sqrt(r^2 - rho^2) * sqrt(rho^2 - 1/4))`.
///
/// Only defined strictly inside `(1/2, r)` — both square roots in the
/// denominator vanish at the endpoints.
pub fn f_partial_rho(r: f64, rho: f64, a: f64) -> Result<f64> {
    let r2m = (r - 0.5) * (r + 0.5);
    if !(r2m > 0.0) {
        return Err(Error::domain(format!("ratio needs r > 1/2, got r = {r}")));
    }
    if !(rho > 0.5 && rho < r) {
        return Err(Error::domain(format!(
            "derivative defined for 1/2 < rho < r only, got rho = {rho} (r = {r})"
        )));
    }
    let plane = ((r - rho) * (r + rho)).sqrt();
    let rim = ((rho - 0.5) * (rho + 0.5)).sqrt();
    let depth = sqrt_clamped(r2m - a * a, "r^2 - 1/4 - a^2")?;
    Ok(r / r2m * (0.25 * depth * plane - a * r * r * rim) / (rho * rho * plane * rim))
}

/// The stationary point of the ratio in `rho`:
/// `rho* = (1/r^2 + 16a^2/(4a^2 + 1))^(-1/2)`.
///
/// Whenever `r >= sqrt(a^2 + 1/4)` the result lands in `[1/2, r]`, with
/// `rho* = 1/2` exactly at `r = sqrt(a^2 + 1/4)` and `rho* = r` at `a = 0`.
pub fn rho_star(r: f64, a: f64) -> Result<f64> {
    if !(a >= 0.0) || !a.is_finite() {
        return Err(Error::domain(format!("half-separation a = {a} must be >= 0")));
    }
    if !(r * r - (a * a + 0.25) >= RADICAND_SLACK) {
        return Err(Error::domain(format!(
            "maximizer needs r >= sqrt(a^2 + 1/4), got r = {r}, a = {a}"
        )));
    }
    Ok(1.0 / (1.0 / (r * r) + 16.0 * a * a / (4.0 * a * a + 1.0)).sqrt())
}

/// Points in the coarse scan that brackets the maximum and screens for
/// non-unimodal profiles before golden-section refinement.
const SCAN_POINTS: usize = 256;

/// `(sqrt(5) - 1)/2`, the golden-section interior-point ratio.
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximizes the ratio over `rho ∈ [1/2, r]` by coarse scan plus
/// golden-section refinement, returning `(rho_hat, f_hat)`.
///
/// This is the independent oracle for [`rho_star`] and [`max_ratio`]:
/// it never consults either closed form.  `tol` (clamped into
/// `[1e-12, 1e-3]` by the domain check) bounds the final bracket width; the
/// bracket is always refined to at most 1e-9 so the maximizer comes back
/// with comfortably more accuracy than the 1e-6 the sweeps demand.
///
/// # Errors
///
/// [`Error::NonUnimodal`] when the scan sees the profile rise again after
/// falling — golden-section bracketing would silently return a local
/// maximum in that case, so the shape assumption is checked, not trusted.
pub fn f_max_numeric(r: f64, a: f64, tol: f64) -> Result<(f64, f64)> {
    if !(1e-12..=1e-3).contains(&tol) {
        return Err(Error::domain(format!("tolerance {tol} outside [1e-12, 1e-3]")));
    }
    if !(a >= 0.0) || !a.is_finite() {
        return Err(Error::domain(format!("half-separation a = {a} must be >= 0")));
    }
    if !(r * r - (a * a + 0.25) >= RADICAND_SLACK) {
        return Err(Error::domain(format!(
            "maximization needs r >= sqrt(a^2 + 1/4), got r = {r}, a = {a}"
        )));
    }
    let x_tol = tol.min(1e-9);
    if r - 0.5 <= x_tol {
        // Degenerate interval: rho is pinned (and necessarily a ~ 0).
        let f = f_value(r, r, a)?;
        return Ok((r, f));
    }

    // Coarse scan: locate the best cell and reject profiles that rise again
    // after having fallen.
    let cell = (r - 0.5) / (SCAN_POINTS - 1) as f64;
    let mut best_i = 0;
    let mut best_f = f64::NEG_INFINITY;
    let mut prev = f64::NEG_INFINITY;
    let mut fallen = false;
    let mut scale = 0.0_f64;
    for i in 0..SCAN_POINTS {
        let rho = (0.5 + cell * i as f64).min(r);
        let f = f_value(r, rho, a)?;
        scale = scale.max(f.abs());
        let noise = 1e-12 * scale.max(1.0);
        if i > 0 {
            let diff = f - prev;
            if diff > noise && fallen {
                return Err(Error::NonUnimodal { r, a, lo: 0.5, hi: r });
            }
            if diff < -noise {
                fallen = true;
            }
        }
        if f > best_f {
            best_f = f;
            best_i = i;
        }
        prev = f;
    }

    // Golden-section inside the bracket around the best scan cell.
    let mut lo = 0.5 + cell * best_i.saturating_sub(1) as f64;
    let mut hi = (0.5 + cell * (best_i + 1) as f64).min(r);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f_value(r, x1, a)?;
    let mut f2 = f_value(r, x2, a)?;
    while hi - lo > x_tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f_value(r, x2, a)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f_value(r, x1, a)?;
        }
    }
    let mid = 0.5 * (lo + hi);
    let fm = f_value(r, mid, a)?;
    // Return the best point actually evaluated.
    let (rho_hat, f_hat) = [(mid, fm), (x1, f1), (x2, f2)]
        .into_iter()
        .max_by(|p, q| p.1.total_cmp(&q.1))
        .unwrap();
    Ok((rho_hat, f_hat))
}

/// Summary of one seeded Monte Carlo sweep of [`f_max_numeric`] against the
/// closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioSweep {
    pub samples: u64,
    pub seed: u64,
    /// Acceptance threshold on `max_abs_error`; `ok` mirrors it.
    pub tol: f64,
    /// Worst `|f_hat - sqrt(4a^2 + 1)|` seen.
    pub max_abs_error: f64,
    /// Worst `|rho_hat - rho_star|` seen.
    pub max_rho_error: f64,
    /// The draw attaining `max_abs_error` (`rho` holds the found maximizer).
    pub worst: RatioParams,
    pub ok: bool,
}

/// Sweeps seeded uniform draws over the admissible region — `d` in
/// `[1, 10]`, `a` in `[0, alpha_max(d)]`, `r` in `[sqrt(a^2+1/4), d/sqrt(2)]`
/// — and compares the numeric maximum against `sqrt(4a^2 + 1)` and the
/// numeric maximizer against `rho*`.
///
/// `ok` is `max_abs_error <= tol`, which is exactly the CLI exit criterion.
pub fn verify_ratio_max(samples: u64, seed: u64, tol: f64) -> Result<RatioSweep> {
    if samples == 0 {
        return Err(Error::domain("sweep needs at least one sample"));
    }
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::domain(format!("tolerance must be positive, got {tol}")));
    }
    let inner_tol = tol.clamp(1e-12, 1e-9);
    let mut max_abs_error = f64::NEG_INFINITY;
    let mut max_rho_error: f64 = 0.0;
    let mut worst = RatioParams { d: f64::NAN, a: f64::NAN, r: f64::NAN, rho: f64::NAN };
    for i in 0..samples {
        let mut rng = seeding::stream(seed, SWEEP_STREAM + i);
        let d = rng.gen_range(1.0..=10.0);
        let a = rng.gen_range(0.0..=alpha_max(d)?);
        let r = rng.gen_range((a * a + 0.25).sqrt()..=d / SQRT_2);
        let (rho_hat, f_hat) = f_max_numeric(r, a, inner_tol)?;
        let abs_error = (f_hat - max_ratio(a)).abs();
        max_rho_error = max_rho_error.max((rho_hat - rho_star(r, a)?).abs());
        if abs_error > max_abs_error {
            max_abs_error = abs_error;
            worst = RatioParams { d, a, r, rho: rho_hat };
        }
    }
    Ok(RatioSweep {
        samples,
        seed,
        tol,
        max_abs_error,
        max_rho_error,
        worst,
        ok: max_abs_error <= tol,
    })
}
