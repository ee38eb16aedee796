//! Closed-form bases of the partition-count upper bounds and their
//! comparisons.
//!
//! Every estimate handled here has the shape `(base + o(1))^n` for the number
//! of parts of diameter `< b` sufficient to split any diameter-1 set in
//! `R^n`.  The `o(1)` corrections are not computable at finite `n`, so this
//! module works exclusively with the bases: evaluating them, ranking them,
//! locating crossovers between competing estimates, and inverting them.  Any
//! finite-`n` part count derived from a base (see [`parts_estimate`]) is a
//! labelled heuristic, never a claim.
//!
//! The strongest family member, [`BoundId::Theorem1`], has base
//! `sqrt(1/b^2 + 1/2)`; the module also exposes the auxiliary parameters of
//! its construction — the threshold coefficient `lambda` and the small/large
//! split on the enclosing-sphere radius — because the verification drivers in
//! [`crate::cap_ratio`] and [`crate::cap_pair`] exercise exactly those
//! regimes.

use std::f64::consts::{E, PI, SQRT_2};

use crate::error::{Error, Result};

/// Identifies one of the seven upper-bound families.
///
/// The numeric codes (2, 4–9) are the stable external names used by the CLI
/// and in CSV output; the uppercase tags appear in JSON.  Code order doubles
/// as the deterministic tie-breaking order in [`best_bound`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundId {
    /// Split along the 2^n orthants around a center point.  Guarantees parts
    /// of diameter `< 1` only, so it is evaluable solely at `b = 1`.
    Orthant2,
    /// Cover the enclosing ball (circumradius tending to `1/sqrt(2)`) by
    /// balls of diameter `b`: base `sqrt(2)/b`.
    CoverSqrt2,
    /// Sharpened ball-covering step: base `sqrt(3/2)/b`.
    BlSub,
    /// Covering with an additive rather than multiplicative overhead:
    /// base `1/b + 1`.
    RogersZong,
    /// Tiling by permutohedra scaled to diameter `b`:
    /// base `sqrt(pi*e/6) * (2 + 1/b)`.
    Permutohedron,
    /// Direct cubic-lattice covering: base `2/b + 4`.
    Lattice,
    /// The strongest bound of the family: base `sqrt(1/b^2 + 1/2)`.
    Theorem1,
}

impl BoundId {
    /// All ids in code order.
    pub const ALL: [BoundId; 7] = [
        BoundId::Orthant2,
        BoundId::CoverSqrt2,
        BoundId::BlSub,
        BoundId::RogersZong,
        BoundId::Permutohedron,
        BoundId::Lattice,
        BoundId::Theorem1,
    ];

    /// The candidates ranked by [`best_bound`]: every family evaluable on all
    /// of `(0, 1]`, i.e. everything except [`BoundId::Orthant2`].
    pub const COMPARABLE: [BoundId; 6] = [
        BoundId::CoverSqrt2,
        BoundId::BlSub,
        BoundId::RogersZong,
        BoundId::Permutohedron,
        BoundId::Lattice,
        BoundId::Theorem1,
    ];

    /// Stable numeric code (2, 4–9).
    pub fn code(self) -> u32 {
        match self {
            BoundId::Orthant2 => 2,
            BoundId::CoverSqrt2 => 4,
            BoundId::BlSub => 5,
            BoundId::RogersZong => 6,
            BoundId::Permutohedron => 7,
            BoundId::Lattice => 8,
            BoundId::Theorem1 => 9,
        }
    }

    /// Uppercase tag used in JSON output.
    pub fn tag(self) -> &'static str {
        match self {
            BoundId::Orthant2 => "ORTHANT_2",
            BoundId::CoverSqrt2 => "COVER_SQRT2",
            BoundId::BlSub => "BL_SUB",
            BoundId::RogersZong => "ROGERS_ZONG",
            BoundId::Permutohedron => "PERMUTOHEDRON",
            BoundId::Lattice => "LATTICE",
            BoundId::Theorem1 => "THEOREM1",
        }
    }

    /// Looks an id up by numeric code.
    pub fn from_code(code: u32) -> Result<Self> {
        BoundId::ALL
            .into_iter()
            .find(|id| id.code() == code)
            .ok_or_else(|| Error::domain(format!("no bound has code {code} (valid: 2, 4-9)")))
    }
}

impl std::fmt::Display for BoundId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

impl std::str::FromStr for BoundId {
    type Err = Error;

    /// Accepts either the numeric code ("9") or the tag, case-insensitively
    /// ("theorem1").
    fn from_str(s: &str) -> Result<Self> {
        if let Ok(code) = s.parse::<u32>() {
            return BoundId::from_code(code);
        }
        let upper = s.to_ascii_uppercase();
        BoundId::ALL
            .into_iter()
            .find(|id| id.tag() == upper)
            .ok_or_else(|| Error::domain(format!("unknown bound id {s:?}")))
    }
}

fn check_b(b: f64) -> Result<()> {
    if !b.is_finite() || !(b > 0.0 && b <= 1.0) {
        return Err(Error::domain(format!("b must lie in (0, 1], got {b}")));
    }
    Ok(())
}

/// Evaluates the o(1)-free base of a bound at part diameter `b`.
///
/// The result is the `c` in a part count of the form `(c + o(1))^n`.  All
/// bases are strictly decreasing in `b` and at least 1 on the valid range.
///
/// # Errors
///
/// `b` outside `(0, 1]` is a domain error, as is [`BoundId::Orthant2`] with
/// `b < 1` (the orthant split shrinks diameters below 1, not below an
/// arbitrary `b`).
pub fn bound_base(id: BoundId, b: f64) -> Result<f64> {
    check_b(b)?;
    let inv = 1.0 / b;
    Ok(match id {
        BoundId::Orthant2 => {
            if b != 1.0 {
                return Err(Error::domain(format!(
                    "the orthant split only guarantees parts of diameter < 1; \
                     it is inapplicable at b = {b}"
                )));
            }
            2.0
        }
        BoundId::CoverSqrt2 => SQRT_2 * inv,
        BoundId::BlSub => 1.5_f64.sqrt() * inv,
        BoundId::RogersZong => inv + 1.0,
        BoundId::Permutohedron => (PI * E / 6.0).sqrt() * (2.0 + inv),
        BoundId::Lattice => 2.0 * inv + 4.0,
        BoundId::Theorem1 => (inv * inv + 0.5).sqrt(),
    })
}

/// The known lower bound, with its caveat.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowerBoundInfo {
    /// `(2/sqrt(3))^sqrt(2)` — the base of the best known lower bound at
    /// `b = 1`.
    pub base_b1: f64,
    /// The lower bound is exponential in `sqrt(n)`, not in `n`, so its base
    /// is not directly comparable with the upper-bound bases.
    pub exponent_is_sqrt_n: bool,
}

/// Returns the lower-bound base `(2/sqrt(3))^sqrt(2) = 1.2255894...` together
/// with the flag that its exponent grows like `sqrt(n)` rather than `n`.
pub fn lower_bound_info() -> LowerBoundInfo {
    LowerBoundInfo {
        base_b1: (2.0 / 3.0_f64.sqrt()).powf(SQRT_2),
        exponent_is_sqrt_n: true,
    }
}

/// Picks the smallest base among the six families evaluable on `(0, 1]`.
///
/// Ties break toward the lowest numeric code, which keeps the output
/// deterministic at `b = 1` where the `sqrt(3/2)/b` and `sqrt(1/b^2 + 1/2)`
/// bases coincide exactly.
pub fn best_bound(b: f64) -> Result<(BoundId, f64)> {
    check_b(b)?;
    let mut best: Option<(BoundId, f64)> = None;
    for id in BoundId::COMPARABLE {
        let base = bound_base(id, b)?;
        match best {
            Some((_, incumbent)) if base >= incumbent => {}
            _ => best = Some((id, base)),
        }
    }
    // COMPARABLE is sorted by code and non-empty, so the first strict minimum
    // wins and the unwrap cannot fail.
    Ok(best.unwrap())
}

/// Outcome of a crossover search between two bound bases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Crossover {
    /// The base difference changes sign; `b` locates the first crossing.
    Root {
        b: f64,
        /// More than one sign change was seen on the scan grid; `b` is the
        /// first of them.
        multiple: bool,
    },
    /// The difference keeps one sign over the whole scanned interval.
    NoCrossing,
}

/// Number of points in the sign-scan grid used by [`crossover`] and required
/// before declaring [`Crossover::NoCrossing`].
const CROSSOVER_GRID: usize = 10_000;

/// Bisection width at which [`crossover`] stops refining a root bracket.
const CROSSOVER_TOL: f64 = 1e-10;

/// Finds where `bound_base(id1, b) - bound_base(id2, b)` changes sign on
/// `[lo, hi]`.
///
/// A 10^4-point scan brackets sign changes; the first bracket is refined by
/// bisection to width 1e-10.  If the scan sees no sign change the result is
/// [`Crossover::NoCrossing`]; if it sees several, the first root is returned
/// with `multiple` set.
///
/// # Errors
///
/// Domain error unless `0 < lo < hi <= 1` and both bases are evaluable on
/// the whole interval.
pub fn crossover(id1: BoundId, id2: BoundId, lo: f64, hi: f64) -> Result<Crossover> {
    if !lo.is_finite() || !hi.is_finite() || !(lo > 0.0 && lo < hi && hi <= 1.0) {
        return Err(Error::domain(format!(
            "crossover interval must satisfy 0 < lo < hi <= 1, got [{lo}, {hi}]"
        )));
    }
    let diff = |b: f64| -> Result<f64> { Ok(bound_base(id1, b)? - bound_base(id2, b)?) };

    let mut brackets: Vec<(f64, f64)> = Vec::new();
    let mut prev_b = lo;
    let mut prev_f = diff(lo)?;
    for i in 1..CROSSOVER_GRID {
        let t = i as f64 / (CROSSOVER_GRID - 1) as f64;
        let b = lo + (hi - lo) * t;
        let f = diff(b)?;
        if prev_f == 0.0 {
            brackets.push((prev_b, prev_b));
        } else if f != 0.0 && (prev_f < 0.0) != (f < 0.0) {
            brackets.push((prev_b, b));
        }
        prev_b = b;
        prev_f = f;
    }
    if prev_f == 0.0 {
        brackets.push((prev_b, prev_b));
    }

    let Some(&(mut a, mut c)) = brackets.first() else {
        return Ok(Crossover::NoCrossing);
    };
    let mut fa = diff(a)?;
    while c - a > CROSSOVER_TOL {
        let m = 0.5 * (a + c);
        let fm = diff(m)?;
        if fm == 0.0 {
            a = m;
            c = m;
        } else if (fa < 0.0) != (fm < 0.0) {
            c = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    Ok(Crossover::Root {
        b: 0.5 * (a + c),
        multiple: brackets.len() > 1,
    })
}

/// One failed strict-dominance claim found by [`dominance_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DominanceViolation {
    pub b: f64,
    /// The family claimed to have the strictly smaller base at `b`.
    pub stronger: BoundId,
    /// The family claimed to have the strictly larger base at `b`.
    pub weaker: BoundId,
    pub stronger_base: f64,
    pub weaker_base: f64,
}

/// The strict orderings the family is expected to satisfy everywhere on
/// `(0, 1)`: the strongest base beats the two runner-up families, the
/// additive-overhead base beats the permutohedron tiling, and everything
/// beats the cubic lattice.  Listed as (stronger, weaker) pairs.
pub const DOMINANCE_CLAIMS: [(BoundId, BoundId); 7] = [
    (BoundId::Theorem1, BoundId::BlSub),
    (BoundId::Theorem1, BoundId::RogersZong),
    (BoundId::RogersZong, BoundId::Permutohedron),
    (BoundId::CoverSqrt2, BoundId::Lattice),
    (BoundId::BlSub, BoundId::Lattice),
    (BoundId::RogersZong, BoundId::Lattice),
    (BoundId::Permutohedron, BoundId::Lattice),
];

/// Checks every claim in [`DOMINANCE_CLAIMS`] on a `grid_size`-point uniform
/// grid over `b ∈ [0.001, 0.999]` and returns the violations (empty when all
/// claims hold).
pub fn dominance_check(grid_size: usize) -> Result<Vec<DominanceViolation>> {
    if grid_size < 2 {
        return Err(Error::domain(format!(
            "dominance grid needs at least 2 points, got {grid_size}"
        )));
    }
    const LO: f64 = 0.001;
    const HI: f64 = 0.999;
    let mut violations = Vec::new();
    for i in 0..grid_size {
        let b = LO + (HI - LO) * i as f64 / (grid_size - 1) as f64;
        for (stronger, weaker) in DOMINANCE_CLAIMS {
            let s = bound_base(stronger, b)?;
            let w = bound_base(weaker, b)?;
            if !(s < w) {
                violations.push(DominanceViolation {
                    b,
                    stronger,
                    weaker,
                    stronger_base: s,
                    weaker_base: w,
                });
            }
        }
    }
    Ok(violations)
}

/// Excess of a base over the trivial `1/b` term, for the three families whose
/// small-`b` behaviour is worth comparing.
///
/// For [`BoundId::RogersZong`] the gap is exactly 1; for
/// [`BoundId::Theorem1`] it shrinks like `b/4`; for [`BoundId::BlSub`] it
/// diverges like `(sqrt(3/2) - 1)/b`.
///
/// # Errors
///
/// Domain error unless `b ∈ (0, 0.2]` and `id` is one of the three families
/// above — the comparison is only meaningful in the small-`b` regime.
pub fn asymptotic_gap(id: BoundId, b: f64) -> Result<f64> {
    if !b.is_finite() || !(b > 0.0 && b <= 0.2) {
        return Err(Error::domain(format!(
            "asymptotic gap is defined for b in (0, 0.2], got {b}"
        )));
    }
    match id {
        BoundId::BlSub | BoundId::RogersZong | BoundId::Theorem1 => {
            Ok(bound_base(id, b)? - 1.0 / b)
        }
        other => Err(Error::domain(format!(
            "asymptotic gap is tracked for codes 5, 6 and 9 only, not {other}"
        ))),
    }
}

/// A part-count estimate, with a log-scale fallback once the plain count
/// overflows `f64`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PartsEstimate {
    /// `base^n` evaluated directly.
    Count(f64),
    /// `n * log10(base)` — reported instead when `base^n` is not finite.
    Log10(f64),
}

/// Raises the bound base to the `n`-th power.
///
/// This ignores the `o(1)` correction entirely and is therefore a heuristic
/// order-of-magnitude figure, not a certified part count.  Once `base^n`
/// overflows, the log10 of the estimate is reported instead.
pub fn parts_estimate(id: BoundId, b: f64, n: u32) -> Result<PartsEstimate> {
    if n < 1 {
        return Err(Error::domain("parts estimate needs n >= 1"));
    }
    let base = bound_base(id, b)?;
    let count = base.powi(n as i32);
    if count.is_finite() {
        Ok(PartsEstimate::Count(count))
    } else {
        Ok(PartsEstimate::Log10(n as f64 * base.log10()))
    }
}

/// Solves `bound_base(id, b) = target` for `b ∈ (0, 1)` in closed form.
///
/// Every base is strictly decreasing on `(0, 1]`, so the solution exists and
/// is unique exactly when `target` exceeds the base's value at `b = 1`.
///
/// # Errors
///
/// Domain error when `target` is unreachable, and always for
/// [`BoundId::Orthant2`], which is a single point rather than a curve.
pub fn invert_base(id: BoundId, target: f64) -> Result<f64> {
    if id == BoundId::Orthant2 {
        return Err(Error::domain(
            "the orthant bound is only defined at b = 1 and cannot be inverted",
        ));
    }
    let at_one = bound_base(id, 1.0)?;
    if !target.is_finite() || !(target > at_one) {
        return Err(Error::domain(format!(
            "target {target} is unreachable: {id} only takes values above {at_one} on (0, 1)"
        )));
    }
    Ok(match id {
        BoundId::Orthant2 => unreachable!("rejected above"),
        BoundId::CoverSqrt2 => SQRT_2 / target,
        BoundId::BlSub => 1.5_f64.sqrt() / target,
        BoundId::RogersZong => 1.0 / (target - 1.0),
        BoundId::Permutohedron => 1.0 / (target / (PI * E / 6.0).sqrt() - 2.0),
        BoundId::Lattice => 2.0 / (target - 4.0),
        BoundId::Theorem1 => 1.0 / (target * target - 0.5).sqrt(),
    })
}

/// Threshold coefficient steering the recursive construction behind the
/// strongest bound: `min(5/9, sqrt(d^2/4 + 1/8)/d)` for `d = 1/b >= 1`.
///
/// The value always lands in `(1/2, 5/9]`; the second branch takes over for
/// `d` above roughly 1.46 and tends to `1/2` from above as `d` grows.
pub fn lambda_for_diameter(d: f64) -> Result<f64> {
    if !d.is_finite() || !(d >= 1.0) {
        return Err(Error::domain(format!(
            "the threshold coefficient needs d >= 1, got {d}"
        )));
    }
    Ok((5.0_f64 / 9.0).min((d * d / 4.0 + 0.125).sqrt() / d))
}

/// Which of the two radius regimes a (radius, diameter) pair falls into.
///
/// The construction behind the strongest bound treats an enclosing sphere of
/// radius `r` differently depending on whether `r` stays below the threshold
/// `sqrt(d^2/4 + 1/8)`: small spheres are covered in one shot, large ones go
/// through the cap-pair argument of [`crate::cap_pair`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RadiusCase {
    /// `r <= sqrt(d^2/4 + 1/8)` (the boundary belongs to this case).
    Small,
    /// `sqrt(d^2/4 + 1/8) < r <= d/sqrt(2)`.
    Large,
}

/// Classifies the enclosing-sphere radius `r` against the case threshold for
/// relative diameter `d = 1/b`.
///
/// The boundary itself classifies as [`RadiusCase::Small`].  Radii above
/// `d/sqrt(2) + 1e-12` are rejected: the circumradius guarantee makes them
/// impossible for a diameter-`d` set.
pub fn radius_case(r: f64, d: f64) -> Result<RadiusCase> {
    if !d.is_finite() || !(d >= 1.0) {
        return Err(Error::domain(format!("radius case needs d >= 1, got {d}")));
    }
    if !r.is_finite() || !(r > 0.0 && r <= d / SQRT_2 + 1e-12) {
        return Err(Error::domain(format!(
            "radius {r} outside (0, d/sqrt(2) = {}]",
            d / SQRT_2
        )));
    }
    let boundary = (d * d / 4.0 + 0.125).sqrt();
    Ok(if r <= boundary {
        RadiusCase::Small
    } else {
        RadiusCase::Large
    })
}

/// The bundle of derived parameters for one (radius, diameter) instance of
/// the strongest bound's construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaseParams {
    /// Relative diameter `d = 1/b >= 1`.
    pub d: f64,
    /// Threshold coefficient from [`lambda_for_diameter`].
    pub lambda: f64,
    /// Largest admissible half-separation, `sqrt(d^2/4 - 1/8)`; see
    /// [`crate::cap_ratio::alpha_max`].
    pub alpha_max: f64,
    /// The enclosing-sphere radius under consideration.
    pub r: f64,
    /// Which regime `r` falls into.
    pub case: RadiusCase,
}

impl CaseParams {
    /// Derives all parameters for an enclosing sphere of radius `r` around a
    /// set of diameter `d`; fails on the same domains as [`radius_case`].
    pub fn new(r: f64, d: f64) -> Result<Self> {
        Ok(CaseParams {
            d,
            lambda: lambda_for_diameter(d)?,
            alpha_max: crate::cap_ratio::alpha_max(d)?,
            r,
            case: radius_case(r, d)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn base_values_at_pinned_points() {
        assert_relative_eq!(
            bound_base(BoundId::Theorem1, 1.0).unwrap(),
            1.224744871391589,
            epsilon = 1e-12
        );
        // At b = 1 the two strongest bases coincide exactly (both are
        // sqrt(1.5) of the same operand).
        assert_eq!(
            bound_base(BoundId::Theorem1, 1.0).unwrap(),
            bound_base(BoundId::BlSub, 1.0).unwrap()
        );
        assert_relative_eq!(
            bound_base(BoundId::RogersZong, 0.25).unwrap(),
            5.0,
            epsilon = 1e-12
        );
        assert_relative_eq!(
            bound_base(BoundId::Permutohedron, 1.0).unwrap(),
            3.5790503396865416,
            epsilon = 1e-12
        );
        assert_relative_eq!(
            bound_base(BoundId::CoverSqrt2, 0.5).unwrap(),
            2.8284271247461903,
            epsilon = 1e-12
        );
        assert_relative_eq!(bound_base(BoundId::Lattice, 0.5).unwrap(), 8.0, epsilon = 1e-12);
        assert_eq!(bound_base(BoundId::Orthant2, 1.0).unwrap(), 2.0);
    }

    #[test]
    fn domain_checks() {
        assert!(bound_base(BoundId::Theorem1, 0.0).is_err());
        assert!(bound_base(BoundId::Theorem1, -0.5).is_err());
        assert!(bound_base(BoundId::Theorem1, 1.5).is_err());
        assert!(bound_base(BoundId::Theorem1, f64::NAN).is_err());
        assert!(bound_base(BoundId::Orthant2, 0.9).is_err());
    }

    #[test]
    fn lower_bound_value() {
        let info = lower_bound_info();
        assert_relative_eq!(info.base_b1, 1.2255894896086426, epsilon = 1e-12);
        assert!(info.exponent_is_sqrt_n);
        assert!(info.base_b1 > 1.0);
        // Slightly above sqrt(3/2): no contradiction with the upper bounds,
        // because this base is raised to sqrt(n) rather than n.
        assert!(info.base_b1 > bound_base(BoundId::Theorem1, 1.0).unwrap());
    }

    #[test]
    fn best_bound_prefers_strongest_family() {
        let (id, base) = best_bound(0.5).unwrap();
        assert_eq!(id, BoundId::Theorem1);
        assert_relative_eq!(base, 2.1213203435596424, epsilon = 1e-12);

        let (id, base) = best_bound(0.1).unwrap();
        assert_eq!(id, BoundId::Theorem1);
        assert_relative_eq!(base, 10.024968827881711, epsilon = 1e-12);

        let (id, base) = best_bound(0.9).unwrap();
        assert_eq!(id, BoundId::Theorem1);
        assert_relative_eq!(base, 1.3170299545699664, epsilon = 1e-12);
    }

    #[test]
    fn best_bound_tie_breaks_by_code_at_b_one() {
        let (id, base) = best_bound(1.0).unwrap();
        assert_eq!(id, BoundId::BlSub);
        assert_relative_eq!(base, 1.224744871391589, epsilon = 1e-12);
    }

    #[test]
    fn crossover_of_the_runner_up_pair() {
        match crossover(BoundId::BlSub, BoundId::RogersZong, 0.01, 0.99).unwrap() {
            Crossover::Root { b, multiple } => {
                // sqrt(3/2) - 1
                assert_relative_eq!(b, 0.22474487139158894, epsilon = 1e-9);
                assert!(!multiple);
            }
            Crossover::NoCrossing => panic!("expected a crossing"),
        }
    }

    #[test]
    fn strongest_bound_never_crosses_the_runners_up() {
        assert_eq!(
            crossover(BoundId::Theorem1, BoundId::BlSub, 0.01, 0.99).unwrap(),
            Crossover::NoCrossing
        );
        assert_eq!(
            crossover(BoundId::Theorem1, BoundId::RogersZong, 0.01, 0.99).unwrap(),
            Crossover::NoCrossing
        );
    }

    #[test]
    fn crossover_rejects_bad_intervals() {
        assert!(crossover(BoundId::BlSub, BoundId::RogersZong, 0.0, 0.9).is_err());
        assert!(crossover(BoundId::BlSub, BoundId::RogersZong, 0.9, 0.5).is_err());
        assert!(crossover(BoundId::BlSub, BoundId::RogersZong, 0.5, 1.5).is_err());
        // Orthant2 is not evaluable below b = 1, so any interval fails.
        assert!(crossover(BoundId::Orthant2, BoundId::BlSub, 0.5, 0.9).is_err());
    }

    #[test]
    fn dominance_grid_is_clean() {
        assert!(dominance_check(1000).unwrap().is_empty());
        assert!(dominance_check(1).is_err());
    }

    #[test]
    fn dominance_spot_values() {
        let b9 = bound_base(BoundId::Theorem1, 0.5).unwrap();
        let b5 = bound_base(BoundId::BlSub, 0.5).unwrap();
        let b6 = bound_base(BoundId::RogersZong, 0.5).unwrap();
        assert_relative_eq!(b9, 2.1213203435596424, epsilon = 1e-12);
        assert_relative_eq!(b5, 2.449489742783178, epsilon = 1e-12);
        assert_relative_eq!(b6, 3.0, epsilon = 1e-12);
        assert!(b9 < b5 && b5 < b6);

        let b8 = bound_base(BoundId::Lattice, 0.1).unwrap();
        let b7 = bound_base(BoundId::Permutohedron, 0.1).unwrap();
        assert_relative_eq!(b8, 24.0, epsilon = 1e-12);
        assert_relative_eq!(b7, 14.316201358746167, epsilon = 1e-12);
        assert!(b8 > b7);
    }

    #[test]
    fn gaps_above_the_leading_term() {
        assert_relative_eq!(
            asymptotic_gap(BoundId::RogersZong, 0.1).unwrap(),
            1.0,
            epsilon = 1e-12
        );
        assert_relative_eq!(
            asymptotic_gap(BoundId::Theorem1, 0.01).unwrap(),
            0.002499968750782955,
            epsilon = 1e-9
        );
        // The strongest bound's gap tracks b/4 ever closer as b shrinks.
        let ratio = asymptotic_gap(BoundId::Theorem1, 0.001).unwrap() / (0.001 / 4.0);
        assert!((ratio - 1.0).abs() < 1e-5, "gap/(b/4) = {ratio}");
        assert_relative_eq!(
            asymptotic_gap(BoundId::BlSub, 0.1).unwrap(),
            2.2474487139158894,
            epsilon = 1e-9
        );
        assert!(asymptotic_gap(BoundId::Theorem1, 0.3).is_err());
        assert!(asymptotic_gap(BoundId::Lattice, 0.1).is_err());
    }

    #[test]
    fn parts_estimates() {
        assert_eq!(
            parts_estimate(BoundId::RogersZong, 0.5, 3).unwrap(),
            PartsEstimate::Count(27.0)
        );
        match parts_estimate(BoundId::Theorem1, 1.0, 2).unwrap() {
            PartsEstimate::Count(v) => assert_relative_eq!(v, 1.5, epsilon = 1e-12),
            other => panic!("unexpected {other:?}"),
        }
        match parts_estimate(BoundId::Theorem1, 0.5, 4).unwrap() {
            PartsEstimate::Count(v) => assert_relative_eq!(v, 20.25, epsilon = 1e-12),
            other => panic!("unexpected {other:?}"),
        }
        // 101^1000 overflows; the estimate degrades to log scale.
        match parts_estimate(BoundId::RogersZong, 0.01, 1000).unwrap() {
            PartsEstimate::Log10(lg) => {
                assert_relative_eq!(lg, 1000.0 * 101.0_f64.log10(), epsilon = 1e-9)
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parts_estimate(BoundId::RogersZong, 0.5, 0).is_err());
    }

    #[test]
    fn closed_form_inversions() {
        assert_relative_eq!(
            invert_base(BoundId::Theorem1, 1.5).unwrap(),
            0.7559289460184544,
            epsilon = 1e-10
        );
        assert_relative_eq!(invert_base(BoundId::RogersZong, 3.0).unwrap(), 0.5, epsilon = 1e-12);
        assert_relative_eq!(
            invert_base(BoundId::BlSub, 2.449489742783178).unwrap(),
            0.5,
            epsilon = 1e-9
        );
        assert!(invert_base(BoundId::Theorem1, 1.0).is_err());
        assert!(invert_base(BoundId::Orthant2, 3.0).is_err());
    }

    #[test]
    fn inversion_round_trips() {
        for id in BoundId::COMPARABLE {
            for b in [0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99] {
                let base = bound_base(id, b).unwrap();
                let back = invert_base(id, base).unwrap();
                assert!((back - b).abs() <= 1e-9, "{id} at b = {b}: got {back}");
            }
        }
    }

    #[test]
    fn threshold_coefficient() {
        assert_relative_eq!(lambda_for_diameter(1.0).unwrap(), 5.0 / 9.0, epsilon = 1e-12);
        assert_relative_eq!(
            lambda_for_diameter(4.0).unwrap(),
            0.5077524002897476,
            epsilon = 1e-12
        );
        // Branch switch: below d* the cap 5/9 binds, above it the formula does.
        let d_star = 1.459992790176863;
        assert_relative_eq!(
            (d_star * d_star / 4.0 + 0.125_f64).sqrt() / d_star,
            5.0 / 9.0,
            epsilon = 1e-12
        );
        assert_eq!(lambda_for_diameter(1.2).unwrap(), 5.0 / 9.0);
        assert!(lambda_for_diameter(2.0).unwrap() < 5.0 / 9.0);
        assert!(lambda_for_diameter(0.99).is_err());
    }

    #[test]
    fn radius_case_split() {
        assert_eq!(radius_case(0.5, 1.0).unwrap(), RadiusCase::Small);
        assert_eq!(radius_case(0.65, 1.0).unwrap(), RadiusCase::Large);
        // The threshold itself belongs to the small case.
        let boundary = (0.25_f64 + 0.125).sqrt();
        assert_relative_eq!(boundary, 0.6123724356957945, epsilon = 1e-12);
        assert_eq!(radius_case(boundary, 1.0).unwrap(), RadiusCase::Small);
        // Radii beyond the circumradius guarantee are impossible inputs.
        assert!(radius_case(0.8, 1.0).is_err());
        assert!(radius_case(0.0, 1.0).is_err());
        // Small-case worst ratio at d = 1 equals the b = 1 base.
        assert_relative_eq!(boundary / 0.5, 1.224744871391589, epsilon = 1e-12);
    }

    #[test]
    fn case_params_bundle() {
        let p = CaseParams::new(0.6, 1.5).unwrap();
        assert_eq!(p.case, RadiusCase::Small);
        assert_relative_eq!(p.alpha_max, 0.6614378277661477, epsilon = 1e-12);
        assert_relative_eq!(p.lambda, (1.5 * 1.5 / 4.0 + 0.125_f64).sqrt() / 1.5, epsilon = 1e-12);
        assert!(CaseParams::new(2.0, 1.5).is_err());
    }

    #[test]
    fn id_codes_tags_and_parsing() {
        for id in BoundId::ALL {
            assert_eq!(BoundId::from_code(id.code()).unwrap(), id);
            assert_eq!(id.tag().parse::<BoundId>().unwrap(), id);
            assert_eq!(id.code().to_string().parse::<BoundId>().unwrap(), id);
        }
        assert_eq!("theorem1".parse::<BoundId>().unwrap(), BoundId::Theorem1);
        assert!("3".parse::<BoundId>().is_err());
        assert!("nonsense".parse::<BoundId>().is_err());
        assert_eq!(BoundId::Theorem1.to_string(), "THEOREM1");
    }
}
