//! The two-cap separation argument: rim angles, cap-center distance, the
//! ratio chain ending at `sqrt(d^2 + 1/2)`, and the circumsphere identity
//! that feeds the chain's last step.
//!
//! Setting: two spherical caps of equal chordal radius `rho` sit on a sphere
//! of radius `r`, and each cap's rim circle circumscribes a piece of a set
//! of diameter `d` (measured relative to the target part diameter, so
//! `d = 1/b >= 1`).  Writing `2*alpha` for the distance between the two rim
//! circumcenters, the distance between the cap centers is
//! `dist = r*sin(phi + psi)` with `sin(phi) = alpha/sqrt(r^2 - 1/4)` and
//! `sin(psi) = sqrt(rho^2 - 1/4)/sqrt(r^2 - 1/4)`.  The chain
//!
//! `dist/rho <= f(r, rho, alpha) <= sqrt(4*alpha^2 + 1) <= sqrt(d^2 + 1/2)`
//!
//! is what caps the number of well-separated caps and hence the partition
//! count; [`chain_check`] evaluates every link with explicit closures and
//! [`verify_chain`] sweeps it over seeded random admissible configurations.
//! The first link is an exact algebraic identity (`dist = rho * f` by the
//! sine addition formula), which doubles as a cross-check between this
//! module and [`crate::cap_ratio`].
//!
//! The final link rests on a quadratic identity for sets circumscribed by
//! spheres: for weighted point families with barycenters `u`, `v` equal to
//! their circumcenters and circumradii `t1`, `t2`,
//! `sum_ij w_i w_j' |x_j - y_i|^2 = |u - v|^2 + t1^2 + t2^2`.
//! [`circumsphere_identity`] measures the residual on concrete instances and
//! [`diameter_consequence`] checks the inequality it implies.

use std::f64::consts::SQRT_2;

use rand::Rng;

use crate::cap_ratio::{self, max_ratio};
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::seeding;

/// Substream tags for the seeded drivers, one per sampler family.
const CHAIN_STREAM: u64 = 0x6368_6169_0000_0000;
const CIRCUM_STREAM: u64 = 0x6369_7263_0000_0000;
const IDENT_STREAM: u64 = 0x6964_656e_0000_0000;

/// Closure slack for the chain comparisons: each `<=` is verified up to this
/// absolute play so exact-boundary configurations (alpha at its limit,
/// rho = r) do not fail on the last bit.
pub const CHAIN_SLACK: f64 = 1e-12;

/// Computes the two rim angles `(phi, psi)` of a cap pair:
/// `phi = asin(alpha/sqrt(r^2 - 1/4))`, `psi = asin(sqrt(rho^2 - 1/4)/sqrt(r^2 - 1/4))`.
///
/// Both angles land in `[0, pi/2]`; `rho = r` pins `psi` to `pi/2` exactly.
///
/// # Errors
///
/// Domain error for `r <= 1/2`, `rho` outside `[1/2, r]`, or `alpha` outside
/// `[0, sqrt(r^2 - 1/4)]`.
pub fn cap_angles(r: f64, rho: f64, alpha: f64) -> Result<(f64, f64)> {
    let r2m = (r - 0.5) * (r + 0.5);
    if !(r2m > 0.0) {
        return Err(Error::domain(format!("cap angles need r > 1/2, got r = {r}")));
    }
    if !(rho >= 0.5 && rho <= r) {
        return Err(Error::domain(format!(
            "chordal radius rho = {rho} outside [1/2, r = {r}]"
        )));
    }
    let rim_span = r2m.sqrt();
    if !(alpha >= 0.0 && alpha <= rim_span * (1.0 + 1e-12)) {
        return Err(Error::domain(format!(
            "half-separation alpha = {alpha} outside [0, sqrt(r^2 - 1/4) = {rim_span}]"
        )));
    }
    let sin_phi = (alpha / rim_span).min(1.0);
    let sin_psi = (((rho - 0.5) * (rho + 0.5)).sqrt() / rim_span).min(1.0);
    Ok((sin_phi.asin(), sin_psi.asin()))
}

/// Distance between the two cap centers, `r * sin(phi + psi)`.
///
/// Equals `rho * f_value(r, rho, alpha)` exactly (sine addition), which
/// [`verify_chain`] re-measures as a cross-module identity.
pub fn center_distance(r: f64, rho: f64, alpha: f64) -> Result<f64> {
    let (phi, psi) = cap_angles(r, rho, alpha)?;
    Ok(r * (phi + psi).sin())
}

/// One admissible cap-pair configuration with its derived quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairConfig {
    pub r: f64,
    pub rho: f64,
    pub alpha: f64,
    pub d: f64,
    /// Rim angle from the half-separation.
    pub phi: f64,
    /// Rim angle from the chordal radius.
    pub psi: f64,
    /// Cap-center distance `r * sin(phi + psi)`.
    pub dist: f64,
}

impl PairConfig {
    /// Validates the admissibility box — `d >= 1`,
    /// `0 <= alpha <= alpha_max(d)`, `r >= sqrt(alpha_max^2 + 1/4)`,
    /// `1/2 <= rho <= r` — and derives the angles and center distance.
    ///
    /// All bounds are closed (the `alpha = alpha_max` boundary is accepted):
    /// closed comparisons are the float-robust reading, and every downstream
    /// inequality is verified with the same closure slack.  No upper bound
    /// is placed on `r`: the separation argument applies it with
    /// `r <= d/sqrt(2)`, but the chain inequalities themselves hold for
    /// every `r` above the threshold (the middle link's maximum
    /// `sqrt(4 alpha^2 + 1)` is attained at an interior `rho` regardless),
    /// and reference configurations with `r = d` are meaningful.
    pub fn new(r: f64, rho: f64, alpha: f64, d: f64) -> Result<PairConfig> {
        if !(d >= 1.0) || !d.is_finite() {
            return Err(Error::domain(format!("cap pair needs d >= 1, got {d}")));
        }
        let a_hi = cap_ratio::alpha_max(d)?;
        if !(alpha >= 0.0 && alpha <= a_hi + CHAIN_SLACK) {
            return Err(Error::domain(format!(
                "alpha = {alpha} outside [0, alpha_max(d) = {a_hi}]"
            )));
        }
        let r_lo = (a_hi * a_hi + 0.25).sqrt();
        if !r.is_finite() || !(r >= r_lo - CHAIN_SLACK) {
            return Err(Error::domain(format!(
                "r = {r} below the large-radius threshold {r_lo}"
            )));
        }
        if !(rho >= 0.5 && rho <= r + CHAIN_SLACK) {
            return Err(Error::domain(format!("rho = {rho} outside [1/2, r = {r}]")));
        }
        let rho = rho.min(r);
        let (phi, psi) = cap_angles(r, rho, alpha.min(rim_span_of(r)))?;
        Ok(PairConfig {
            r,
            rho,
            alpha,
            d,
            phi,
            psi,
            dist: r * (phi + psi).sin(),
        })
    }
}

fn rim_span_of(r: f64) -> f64 {
    ((r - 0.5) * (r + 0.5)).sqrt()
}

/// Every link of the separation chain for one configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainReport {
    /// `dist/rho`, the cap-center separation in chordal units.
    pub ratio: f64,
    /// First link: the ratio function of [`crate::cap_ratio`] — equal to
    /// `ratio` up to float noise.
    pub cap1: f64,
    /// Second link: `sqrt(4*alpha^2 + 1)`, the maximum over `rho`.
    pub cap2: f64,
    /// Last link: `sqrt(d^2 + 1/2)`, the value at the half-separation limit.
    pub cap3: f64,
    /// All three `<=` comparisons hold within [`CHAIN_SLACK`].
    pub ok: bool,
    /// `cap3 - ratio`: room left by the final bound.
    pub margin: f64,
    /// `|dist - rho * cap1|` — the cross-module identity residual.
    pub identity_error: f64,
}

/// Evaluates the full chain `dist/rho <= f <= sqrt(4 alpha^2 + 1)
/// <= sqrt(d^2 + 1/2)` for one configuration.
///
/// Configurations with `dist <= rho` (overlapping caps) pass through the
/// same chain — their ratio is at most 1 and sits far below the final bound.
pub fn chain_check(r: f64, rho: f64, alpha: f64, d: f64) -> Result<ChainReport> {
    let cfg = PairConfig::new(r, rho, alpha, d)?;
    chain_report(&cfg)
}

fn chain_report(cfg: &PairConfig) -> Result<ChainReport> {
    let ratio = cfg.dist / cfg.rho;
    let cap1 = cap_ratio::f_value(cfg.r, cfg.rho, cfg.alpha.min(rim_span_of(cfg.r)))?;
    let cap2 = max_ratio(cfg.alpha);
    let cap3 = (cfg.d * cfg.d + 0.5).sqrt();
    let ok = ratio <= cap1 + CHAIN_SLACK && cap1 <= cap2 + CHAIN_SLACK && cap2 <= cap3 + CHAIN_SLACK;
    Ok(ChainReport {
        ratio,
        cap1,
        cap2,
        cap3,
        ok,
        margin: cap3 - ratio,
        identity_error: (cfg.dist - cfg.rho * cap1).abs(),
    })
}

/// Summary of a seeded sweep of [`chain_check`] over the admissible box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainSweep {
    pub samples: u64,
    pub seed: u64,
    /// Configurations whose chain failed (expected 0).
    pub violations: u64,
    /// Smallest `cap3 - ratio` seen.
    pub min_margin: f64,
    /// Largest `|dist - rho * f|` seen.
    pub max_identity_error: f64,
    /// The configuration attaining `min_margin`.
    pub worst: PairConfig,
    pub ok: bool,
}

/// Draws `samples` admissible configurations — `d` in `[1, 10]`, `alpha` in
/// `[0, alpha_max]`, `r` in `[sqrt(alpha_max^2 + 1/4), d/sqrt(2)]`, `rho` in
/// `[1/2, r]` — and runs [`chain_check`] on each.  `ok` means zero
/// violations, the CLI exit criterion.
pub fn verify_chain(samples: u64, seed: u64) -> Result<ChainSweep> {
    if samples == 0 {
        return Err(Error::domain("sweep needs at least one sample"));
    }
    let mut violations = 0;
    let mut min_margin = f64::INFINITY;
    let mut max_identity_error: f64 = 0.0;
    let mut worst: Option<PairConfig> = None;
    for i in 0..samples {
        let mut rng = seeding::stream(seed, CHAIN_STREAM + i);
        let d = rng.gen_range(1.0..=10.0);
        let a_hi = cap_ratio::alpha_max(d)?;
        let alpha = rng.gen_range(0.0..=a_hi);
        let r = rng.gen_range((a_hi * a_hi + 0.25).sqrt()..=d / SQRT_2);
        let rho = rng.gen_range(0.5..=r);
        let cfg = PairConfig::new(r, rho, alpha, d)?;
        let report = chain_report(&cfg)?;
        if !report.ok {
            violations += 1;
        }
        max_identity_error = max_identity_error.max(report.identity_error);
        if report.margin < min_margin {
            min_margin = report.margin;
            worst = Some(cfg);
        }
    }
    Ok(ChainSweep {
        samples,
        seed,
        violations,
        min_margin,
        max_identity_error,
        worst: worst.expect("samples >= 1"),
        ok: violations == 0,
    })
}

/// A weighted point family whose barycenter is also its circumcenter.
///
/// Invariants (checked on construction): weights are nonnegative and sum to
/// 1 within 1e-10, and every point lies at the same distance from the
/// weighted barycenter within 1e-10.  This is exactly the configuration the
/// circumsphere identity speaks about.
#[derive(Debug, Clone, PartialEq)]
pub struct CircumscribedSet {
    points: Vec<Point>,
    weights: Vec<f64>,
    center: Point,
    radius: f64,
}

impl CircumscribedSet {
    /// Construction tolerance on the invariants.
    pub const TOL: f64 = 1e-10;

    /// Validates the invariants and derives the barycenter and circumradius.
    pub fn new(points: Vec<Point>, weights: Vec<f64>) -> Result<CircumscribedSet> {
        if points.len() < 2 {
            return Err(Error::domain("a circumscribed family needs at least 2 points"));
        }
        if points.len() != weights.len() {
            return Err(Error::domain(format!(
                "{} points but {} weights",
                points.len(),
                weights.len()
            )));
        }
        let dim = points[0].dim();
        if points.iter().any(|p| p.dim() != dim) {
            return Err(Error::domain("points of mixed dimension"));
        }
        let mut sum = 0.0;
        for &w in &weights {
            if !(w >= -1e-12) || !w.is_finite() {
                return Err(Error::domain(format!("negative weight {w}")));
            }
            sum += w;
        }
        if (sum - 1.0).abs() > Self::TOL {
            return Err(Error::domain(format!("weights sum to {sum}, need 1")));
        }
        let mut center = vec![0.0; dim];
        for (p, &w) in points.iter().zip(&weights) {
            for (c, &x) in center.iter_mut().zip(p.coords()) {
                *c += w * x;
            }
        }
        let center = Point::new(center)?;
        let dists: Vec<f64> = points.iter().map(|p| p.dist(&center)).collect();
        let radius = dists.iter().sum::<f64>() / dists.len() as f64;
        for (p, &dist) in points.iter().zip(&dists) {
            if (dist - radius).abs() > Self::TOL {
                return Err(Error::domain(format!(
                    "point {p} lies at distance {dist} from the barycenter, \
                     not the common {radius}"
                )));
            }
        }
        Ok(CircumscribedSet { points, weights, center, radius })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// The weighted barycenter, which the invariants force to coincide with
    /// the circumcenter.
    pub fn center(&self) -> &Point {
        &self.center
    }

    /// Common distance of the points from the center.
    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn dim(&self) -> usize {
        self.center.dim()
    }
}

/// Residual of the circumsphere identity
/// `sum_ij w_i w_j' |x_j - y_i|^2 = |u - v|^2 + t1^2 + t2^2`
/// for two circumscribed families; at most ~1e-13 on honest instances.
pub fn circumsphere_identity(xs: &CircumscribedSet, ys: &CircumscribedSet) -> Result<f64> {
    if xs.dim() != ys.dim() {
        return Err(Error::domain(format!(
            "dimension mismatch: {} vs {}",
            xs.dim(),
            ys.dim()
        )));
    }
    let mut quad = 0.0;
    for (x, &wx) in xs.points.iter().zip(&xs.weights) {
        for (y, &wy) in ys.points.iter().zip(&ys.weights) {
            quad += wx * wy * x.dist2(y);
        }
    }
    let target = xs.center.dist2(&ys.center) + xs.radius * xs.radius + ys.radius * ys.radius;
    Ok((quad - target).abs())
}

/// Outcome of [`diameter_consequence`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiameterCheck {
    /// `|u - v|^2 + t1^2 + t2^2`.
    pub lhs: f64,
    /// `lhs <= d^2` within 1e-10.
    pub ok: bool,
}

/// Checks the inequality the identity buys: when all cross distances stay
/// within `d`, then `|u - v|^2 + t1^2 + t2^2 <= d^2`.
///
/// With `alpha = |u - v|/2` and both circumradii above `1/2` this is what
/// pins `alpha` below `alpha_max(d)`.  The radius condition is accepted
/// closed (`t >= 1/2`) so the exact boundary case can be exercised.
///
/// # Errors
///
/// A cross pair farther apart than `d` (beyond 1e-9) means the hypothesis
/// does not apply — the instance is rejected as input, which is not a
/// verification failure.
pub fn diameter_consequence(
    xs: &CircumscribedSet,
    ys: &CircumscribedSet,
    d: f64,
) -> Result<DiameterCheck> {
    if xs.dim() != ys.dim() {
        return Err(Error::domain(format!(
            "dimension mismatch: {} vs {}",
            xs.dim(),
            ys.dim()
        )));
    }
    if !(d > 0.0) || !d.is_finite() {
        return Err(Error::domain(format!("diameter bound must be positive, got {d}")));
    }
    if !(xs.radius >= 0.5 - 1e-12 && ys.radius >= 0.5 - 1e-12) {
        return Err(Error::domain(format!(
            "both circumradii must be at least 1/2, got {} and {}",
            xs.radius, ys.radius
        )));
    }
    for x in &xs.points {
        for y in &ys.points {
            let dist = x.dist(y);
            if dist > d + 1e-9 {
                return Err(Error::domain(format!(
                    "cross distance {dist} exceeds d = {d}; instance rejected"
                )));
            }
        }
    }
    let lhs = xs.center.dist2(&ys.center) + xs.radius * xs.radius + ys.radius * ys.radius;
    Ok(DiameterCheck { lhs, ok: lhs <= d * d + 1e-10 })
}

/// Draws one random circumscribed family: `count - 1` uniform directions
/// plus one closed-form balancing direction.
///
/// With directions `e_1..e_{count-1}` summing to `s`, appending
/// `e_count = -s/|s|` and weighting the first `count - 1` points by
/// `1/(count - 1 + |s|)` and the last by `|s|/(count - 1 + |s|)` makes the
/// weighted direction sum vanish exactly, so the barycenter equals the
/// center the points were placed around.  A nearly-zero `s` (no balancing
/// direction) triggers a redraw; `count = 2` always degenerates to an
/// antipodal pair with weights `(1/2, 1/2)`.
pub fn sample_circumscribed(
    seed: u64,
    dim: usize,
    t: f64,
    count: usize,
) -> Result<CircumscribedSet> {
    if dim < 1 {
        return Err(Error::domain("dimension must be at least 1"));
    }
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::domain(format!("circumradius must be positive, got {t}")));
    }
    if count < 2 {
        return Err(Error::domain("need at least 2 points"));
    }
    let mut rng = seeding::stream(seed, CIRCUM_STREAM);
    for _ in 0..100 {
        let center: Vec<f64> = (0..dim).map(|_| 0.5 * seeding::gauss(&mut rng)).collect();
        let mut dirs: Vec<Vec<f64>> = (0..count - 1)
            .map(|_| seeding::unit_vector(&mut rng, dim))
            .collect();
        let mut s = vec![0.0; dim];
        for dir in &dirs {
            for (acc, &x) in s.iter_mut().zip(dir) {
                *acc += x;
            }
        }
        let norm = s.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-9 {
            continue;
        }
        dirs.push(s.iter().map(|x| -x / norm).collect());
        let total = (count - 1) as f64 + norm;
        let mut weights = vec![1.0 / total; count];
        weights[count - 1] = norm / total;

        let points = dirs
            .into_iter()
            .map(|dir| {
                Point::new(
                    center
                        .iter()
                        .zip(&dir)
                        .map(|(&c, &e)| c + t * e)
                        .collect(),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        return CircumscribedSet::new(points, weights);
    }
    Err(Error::Internal(
        "balancing direction degenerated 100 times in a row".into(),
    ))
}

/// Summary of a seeded sweep of the circumsphere identity and its diameter
/// consequence.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentitySweep {
    pub samples: u64,
    pub seed: u64,
    pub dim: usize,
    /// Points in the first family.
    pub m: usize,
    /// Points in the second family.
    pub s: usize,
    /// Largest identity residual seen.
    pub max_residual: f64,
    /// Diameter-consequence failures (expected 0).
    pub violations: u64,
    pub ok: bool,
}

/// Residual threshold under which the identity counts as verified.
pub const IDENTITY_TOL: f64 = 1e-10;

/// Samples `samples` pairs of circumscribed families (`m` and `s` points, in
/// dimension `dim`, circumradii drawn from `[0.55, 2]`), measures the
/// identity residual on each, and checks the diameter consequence with `d`
/// set to the exact maximum cross distance.
pub fn verify_identity(
    dim: usize,
    m: usize,
    s: usize,
    samples: u64,
    seed: u64,
) -> Result<IdentitySweep> {
    if samples == 0 {
        return Err(Error::domain("sweep needs at least one sample"));
    }
    if m < 2 || s < 2 {
        return Err(Error::domain("both families need at least 2 points"));
    }
    let mut max_residual: f64 = 0.0;
    let mut violations = 0;
    for i in 0..samples {
        let mut rng = seeding::stream(seed, IDENT_STREAM + i);
        let t1 = rng.gen_range(0.55..=2.0);
        let t2 = rng.gen_range(0.55..=2.0);
        let xs = sample_circumscribed(rng.gen(), dim, t1, m)?;
        let ys = sample_circumscribed(rng.gen(), dim, t2, s)?;
        max_residual = max_residual.max(circumsphere_identity(&xs, &ys)?);
        let d_max = xs
            .points()
            .iter()
            .flat_map(|x| ys.points().iter().map(move |y| x.dist(y)))
            .fold(0.0_f64, f64::max);
        if !diameter_consequence(&xs, &ys, d_max)?.ok {
            violations += 1;
        }
    }
    Ok(IdentitySweep {
        samples,
        seed,
        dim,
        m,
        s,
        max_residual,
        violations,
        ok: max_residual <= IDENTITY_TOL && violations == 0,
    })
}
