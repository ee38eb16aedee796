//! Constructive partitioning of finite point sets of diameter 1 into parts
//! of diameter strictly below a target `b`.
//!
//! The pipeline mirrors the counting argument behind the `(sqrt(2)/b)^n`
//! bound at desk scale: enclose the set in its minimum enclosing ball (whose
//! radius is controlled by Jung's inequality), cover that ball with small
//! balls from a cubic lattice, and — when the small balls have radius
//! exactly `b/2` — split each one into `n+1` nearest-vertex cells of a
//! regular simplex to turn part diameters `<= b` into `< b`.  A shrunken
//! cover (radius `b(1-eps)/2`, no split) achieves strictness more cheaply;
//! an orthant split of the enclosing ball handles the `b = 1` case with at
//! most `2^n` parts.
//!
//! Everything here is exact on the given finite set: [`verify_partition`]
//! recomputes every part diameter from scratch, and [`partition_set`] errors
//! out rather than return a partition that misses the target.

use crate::error::{Error, Result};
use crate::geometry::simplex::regular_simplex_directions;
use crate::geometry::{diameter, min_enclosing_ball, Ball, Point, PointSet, GEOM_TOL};
use crate::seeding;
use rand::Rng;
use std::fmt;
use std::str::FromStr;

/// Comparison slack for the strict part-diameter requirement.
pub const STRICT_TOL: f64 = 1e-12;

/// Containment slack when assigning points to covering balls.
const ASSIGN_TOL: f64 = 1e-9;

/// Cell-count guard for the lattice cover.
const MAX_LATTICE_CELLS: usize = 5_000_000;

/// Largest dimension the simplex split supports.
pub const MAX_SPLIT_DIM: usize = 6;

/// How a point set gets cut into parts of diameter below `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Lattice cover by balls of radius `b(1-eps)/2`; one part per ball.
    ShrunkCover,
    /// Lattice cover by balls of radius exactly `b/2`, then an `n+1`-way
    /// simplex split inside each ball.
    CoverPlusSplit,
    /// Sign-pattern split of the enclosing ball; only valid for `b = 1`.
    Orthant,
}

impl Strategy {
    /// Wire tag used in serialized output.
    pub fn tag(self) -> &'static str {
        match self {
            Strategy::ShrunkCover => "SHRUNK_COVER",
            Strategy::CoverPlusSplit => "COVER_PLUS_SPLIT",
            Strategy::Orthant => "ORTHANT",
        }
    }

    /// Short name accepted on the command line.
    pub fn cli_name(self) -> &'static str {
        match self {
            Strategy::ShrunkCover => "shrunk",
            Strategy::CoverPlusSplit => "split",
            Strategy::Orthant => "orthant",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Strategy> {
        match s.to_ascii_lowercase().as_str() {
            "shrunk" | "shrunk_cover" => Ok(Strategy::ShrunkCover),
            "split" | "cover_plus_split" => Ok(Strategy::CoverPlusSplit),
            "orthant" => Ok(Strategy::Orthant),
            _ => Err(Error::domain(format!(
                "unknown strategy {s:?} (expected shrunk, split, or orthant)"
            ))),
        }
    }
}

/// A labeling of a point set into parts, with its exact quality figures.
///
/// Labels are contiguous: every value in `0..part_count` occurs at least
/// once ([`verify_partition`] rejects holes).
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    /// One part label per input point, in input order.
    pub labels: Vec<usize>,
    pub part_count: usize,
    /// Exact maximum over parts of the part's diameter.
    pub max_part_diameter: f64,
}

/// The covering stage of a partition: which balls, and how many regions
/// each ball contributes.
#[derive(Debug, Clone)]
pub struct CoverPlan {
    pub strategy: Strategy,
    pub epsilon: f64,
    /// Covering balls in lattice (lexicographic) order.
    pub balls: Vec<Ball>,
    /// 1 for the shrunk cover, `n+1` when each ball gets simplex-split,
    /// `2^n` for the orthant split.
    pub regions_per_ball: usize,
}

impl CoverPlan {
    /// Lays out the covering balls for `strategy` over `ball` (normally the
    /// set's minimum enclosing ball).
    pub fn build(ball: &Ball, b: f64, strategy: Strategy, epsilon: f64) -> Result<CoverPlan> {
        check_target(b)?;
        if !(epsilon > 0.0 && epsilon < 0.5) {
            return Err(Error::domain(format!(
                "epsilon = {epsilon} outside (0, 0.5)"
            )));
        }
        let n = ball.dim();
        let (balls, regions_per_ball) = match strategy {
            Strategy::ShrunkCover => {
                (cover_ball_lattice(ball, b * (1.0 - epsilon) / 2.0)?, 1)
            }
            Strategy::CoverPlusSplit => {
                if n > MAX_SPLIT_DIM {
                    return Err(Error::UnsupportedDimension { dim: n, max: MAX_SPLIT_DIM });
                }
                (cover_ball_lattice(ball, b / 2.0)?, n + 1)
            }
            Strategy::Orthant => {
                if b != 1.0 {
                    return Err(Error::domain(format!(
                        "orthant strategy requires b = 1, got {b}"
                    )));
                }
                (vec![ball.clone()], 1usize << n)
            }
        };
        Ok(CoverPlan { strategy, epsilon, balls, regions_per_ball })
    }
}

fn check_target(b: f64) -> Result<()> {
    if !(b > 0.0 && b <= 1.0) {
        return Err(Error::domain(format!(
            "target diameter b must lie in (0, 1], got {b}"
        )));
    }
    Ok(())
}

/// Splits a ball's contents by the sign pattern of `point - center`:
/// coordinates equal to zero count as nonnegative.  Produces at most `2^n`
/// parts, and always strictly reduces the diameter of a nondegenerate set.
///
/// # Errors
///
/// A point outside the ball (beyond 1e-9) is rejected, as is a degenerate
/// set whose diameter the split cannot strictly reduce.
pub fn orthant_partition(ps: &PointSet, ball: &Ball) -> Result<Partition> {
    if ps.is_empty() {
        return Err(Error::domain("cannot partition an empty set"));
    }
    if ps.dim() != ball.dim() {
        return Err(Error::domain(format!(
            "point dimension {} does not match ball dimension {}",
            ps.dim(),
            ball.dim()
        )));
    }
    let center = ball.center().coords();
    let mut raw = Vec::with_capacity(ps.len());
    for p in ps.points() {
        if !ball.contains(p, ASSIGN_TOL) {
            return Err(Error::domain(format!("point {p} lies outside the ball")));
        }
        let mut mask = 0usize;
        for (i, (&x, &c)) in p.coords().iter().zip(center).enumerate() {
            if x - c < 0.0 {
                mask |= 1 << i;
            }
        }
        raw.push(mask);
    }
    let partition = finish_partition(ps, &raw);
    let full = diameter(ps);
    if !(partition.max_part_diameter < full - GEOM_TOL) {
        return Err(Error::domain(format!(
            "orthant split does not strictly shrink the diameter \
             ({} vs {full})",
            partition.max_part_diameter
        )));
    }
    Ok(partition)
}

/// Covers a ball by balls of radius `rho_small` centered on a cubic lattice
/// with spacing `2*rho_small/sqrt(n)`, anchored at the ball's bounding-box
/// corner.  Cells whose box intersects the ball are kept, in lexicographic
/// index order; each cell's circumradius is exactly `rho_small`, so the kept
/// centers cover the ball.
///
/// A `rho_small >= radius` collapses the lattice to the single ball at the
/// center.
pub fn cover_ball_lattice(ball: &Ball, rho_small: f64) -> Result<Vec<Ball>> {
    if !(rho_small > 0.0) || !rho_small.is_finite() {
        return Err(Error::domain(format!(
            "covering radius must be positive, got {rho_small}"
        )));
    }
    let r = ball.radius();
    let n = ball.dim();
    if rho_small >= r {
        return Ok(vec![Ball::new(ball.center().clone(), rho_small)?]);
    }
    let h = 2.0 * rho_small / (n as f64).sqrt();
    let cells_per_axis = (2.0 * r / h).ceil() as usize;
    if cells_per_axis.checked_pow(n as u32).map_or(true, |total| total > MAX_LATTICE_CELLS) {
        return Err(Error::domain(format!(
            "lattice cover would need more than {MAX_LATTICE_CELLS} cells \
             ({cells_per_axis} per axis in dimension {n})"
        )));
    }
    let center = ball.center().coords();
    let lo: Vec<f64> = center.iter().map(|&c| c - r).collect();
    let mut balls = Vec::new();
    let mut index = vec![0usize; n];
    loop {
        let cell_center: Vec<f64> = (0..n)
            .map(|i| lo[i] + h * (index[i] as f64 + 0.5))
            .collect();
        // Distance from the ball center to the cell box, per-coordinate clamp.
        let gap2: f64 = (0..n)
            .map(|i| ((center[i] - cell_center[i]).abs() - h / 2.0).max(0.0).powi(2))
            .sum();
        if gap2 <= r * r {
            balls.push(Ball::new(Point::new(cell_center)?, rho_small)?);
        }
        // Lexicographic odometer: last axis fastest.
        let mut axis = n;
        loop {
            if axis == 0 {
                return Ok(balls);
            }
            axis -= 1;
            index[axis] += 1;
            if index[axis] < cells_per_axis {
                break;
            }
            index[axis] = 0;
        }
    }
}

/// Nearest-vertex classifier for the `n+1` cells of a regular simplex
/// inscribed in a ball.  Ties go to the lowest label, making the classifier
/// total and deterministic.
#[derive(Debug, Clone)]
pub struct SimplexSplitter {
    center: Vec<f64>,
    directions: Vec<Vec<f64>>,
}

impl SimplexSplitter {
    pub fn regions(&self) -> usize {
        self.directions.len()
    }

    /// Label in `0..=n` of the simplex vertex nearest to `p` (equivalently,
    /// the vertex direction with the largest component of `p - center`).
    pub fn classify(&self, p: &Point) -> usize {
        let rel: Vec<f64> = p
            .coords()
            .iter()
            .zip(&self.center)
            .map(|(&x, &c)| x - c)
            .collect();
        let mut best = 0;
        let mut best_dot = f64::NEG_INFINITY;
        for (label, dir) in self.directions.iter().enumerate() {
            let dot: f64 = rel.iter().zip(dir).map(|(&x, &d)| x * d).sum();
            if dot > best_dot {
                best_dot = dot;
                best = label;
            }
        }
        best
    }
}

/// Builds the `n+1`-region splitter for a ball (dimension at most
/// [`MAX_SPLIT_DIM`]).
pub fn simplex_split(ball: &Ball) -> Result<SimplexSplitter> {
    let n = ball.dim();
    if n > MAX_SPLIT_DIM {
        return Err(Error::UnsupportedDimension { dim: n, max: MAX_SPLIT_DIM });
    }
    Ok(SimplexSplitter {
        center: ball.center().coords().to_vec(),
        directions: regular_simplex_directions(n)?,
    })
}

/// Measures, by uniform sampling, the diameter of each simplex-split region
/// of a ball: draws `samples` points, buckets them by region, and returns
/// the exact max pairwise distance inside each bucket.
///
/// This is the measured (not proven) part of the split construction — the
/// returned values certify the margin `2*radius - diameter` observed on the
/// sample.
pub fn sampled_split_diameters(ball: &Ball, samples: usize, seed: u64) -> Result<Vec<f64>> {
    if samples < 2 {
        return Err(Error::domain("need at least 2 samples"));
    }
    let splitter = simplex_split(ball)?;
    let n = ball.dim();
    let r = ball.radius();
    let center = ball.center().coords();
    let mut rng = seeding::stream(seed, 0x7370_6c69_0000_0000);
    let mut buckets: Vec<Vec<Point>> = vec![Vec::new(); splitter.regions()];
    for _ in 0..samples {
        let dir = seeding::unit_vector(&mut rng, n);
        let radius = r * rng.gen::<f64>().powf(1.0 / n as f64);
        let p = Point::new(
            center
                .iter()
                .zip(&dir)
                .map(|(&c, &d)| c + radius * d)
                .collect(),
        )?;
        let label = splitter.classify(&p);
        buckets[label].push(p);
    }
    Ok(buckets
        .iter()
        .map(|bucket| {
            let mut max = 0.0_f64;
            for (i, p) in bucket.iter().enumerate() {
                for q in &bucket[i + 1..] {
                    max = max.max(p.dist(q));
                }
            }
            max
        })
        .collect())
}

/// Relabels raw region ids to contiguous labels (ascending raw order) and
/// computes the exact part diameters.
fn finish_partition(ps: &PointSet, raw: &[usize]) -> Partition {
    let mut distinct: Vec<usize> = raw.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let labels: Vec<usize> = raw
        .iter()
        .map(|id| distinct.binary_search(id).expect("id came from raw"))
        .collect();
    let part_count = distinct.len();
    let mut max_part_diameter = 0.0_f64;
    let points = ps.points();
    for part in 0..part_count {
        let members: Vec<&Point> = points
            .iter()
            .zip(&labels)
            .filter(|(_, &l)| l == part)
            .map(|(p, _)| p)
            .collect();
        for (i, p) in members.iter().enumerate() {
            for q in &members[i + 1..] {
                max_part_diameter = max_part_diameter.max(p.dist(q));
            }
        }
    }
    Partition { labels, part_count, max_part_diameter }
}

/// Partitions a set of diameter at most 1 into parts of diameter strictly
/// below `b`, using the requested strategy.
///
/// Points are assigned to the first covering ball that contains them (balls
/// in lattice order), then to the simplex region within that ball when the
/// strategy splits.  The result is re-measured exactly; an uncovered point
/// or a part that misses the target is an internal error, not a silently
/// bad partition.
pub fn partition_set(
    ps: &PointSet,
    b: f64,
    strategy: Strategy,
    epsilon: f64,
) -> Result<Partition> {
    if ps.is_empty() {
        return Err(Error::domain("cannot partition an empty set"));
    }
    let diam = diameter(ps);
    if diam > 1.0 + GEOM_TOL {
        return Err(Error::domain(format!(
            "input diameter {diam} exceeds 1; rescale first"
        )));
    }
    check_target(b)?;
    let enclosing = min_enclosing_ball(ps)?;
    if strategy == Strategy::Orthant {
        if b != 1.0 {
            return Err(Error::domain(format!(
                "orthant strategy requires b = 1, got {b}"
            )));
        }
        return orthant_partition(ps, &enclosing);
    }
    let plan = CoverPlan::build(&enclosing, b, strategy, epsilon)?;
    let splitter = match strategy {
        Strategy::CoverPlusSplit => Some(simplex_split(&enclosing)?),
        _ => None,
    };
    let mut raw = Vec::with_capacity(ps.len());
    for p in ps.points() {
        let ball_idx = plan
            .balls
            .iter()
            .position(|ball| ball.contains(p, ASSIGN_TOL))
            .ok_or_else(|| {
                Error::Internal(format!("coverage hole: point {p} missed every ball"))
            })?;
        let region = match &splitter {
            Some(s) => {
                // Classify relative to this ball's center; the vertex
                // directions are shared across balls.
                let ball = &plan.balls[ball_idx];
                let local = SimplexSplitter {
                    center: ball.center().coords().to_vec(),
                    directions: s.directions.clone(),
                };
                local.classify(p)
            }
            None => 0,
        };
        raw.push(ball_idx * plan.regions_per_ball + region);
    }
    let partition = finish_partition(ps, &raw);
    if !(partition.max_part_diameter < b - STRICT_TOL) {
        return Err(Error::Internal(format!(
            "partition missed the target: max part diameter {} vs b = {b}",
            partition.max_part_diameter
        )));
    }
    Ok(partition)
}

/// Outcome of [`verify_partition`]: recomputed from scratch, independent of
/// whatever the partition claims about itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartitionCheck {
    /// `max_part_diameter < b - 1e-12`.
    pub ok: bool,
    pub part_count: usize,
    pub max_part_diameter: f64,
}

/// Recomputes every part diameter of `partition` on `ps` and checks the
/// strict target.
///
/// # Errors
///
/// Label/point count mismatch, or labels with holes (some value in
/// `0..part_count` unused) — a malformed partition rather than a failed one.
pub fn verify_partition(ps: &PointSet, partition: &Partition, b: f64) -> Result<PartitionCheck> {
    check_target(b)?;
    if partition.labels.len() != ps.len() {
        return Err(Error::domain(format!(
            "{} labels for {} points",
            partition.labels.len(),
            ps.len()
        )));
    }
    let mut seen = vec![false; partition.part_count];
    for &label in &partition.labels {
        if label >= partition.part_count {
            return Err(Error::domain(format!(
                "label {label} out of range for part_count {}",
                partition.part_count
            )));
        }
        seen[label] = true;
    }
    if let Some(hole) = seen.iter().position(|&s| !s) {
        return Err(Error::domain(format!("label {hole} has no points")));
    }
    let mut max = 0.0_f64;
    let points = ps.points();
    for part in 0..partition.part_count {
        let members: Vec<&Point> = points
            .iter()
            .zip(&partition.labels)
            .filter(|(_, &l)| l == part)
            .map(|(p, _)| p)
            .collect();
        for (i, p) in members.iter().enumerate() {
            for q in &members[i + 1..] {
                max = max.max(p.dist(q));
            }
        }
    }
    Ok(PartitionCheck {
        ok: max < b - STRICT_TOL,
        part_count: partition.part_count,
        max_part_diameter: max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::Rng;

    fn point_set(coords: Vec<Vec<f64>>) -> PointSet {
        PointSet::new(coords.into_iter().map(|c| Point::new(c).unwrap()).collect()).unwrap()
    }

    /// `count` seeded points in the ball of the given radius about origin.
    fn ball_sample(dim: usize, radius: f64, count: usize, seed: u64) -> PointSet {
        let mut rng = seeding::stream(seed, 77);
        let points = (0..count)
            .map(|_| {
                let dir = seeding::unit_vector(&mut rng, dim);
                let r = radius * rng.gen::<f64>().powf(1.0 / dim as f64);
                Point::new(dir.into_iter().map(|d| r * d).collect()).unwrap()
            })
            .collect();
        PointSet::new(points).unwrap()
    }

    #[test]
    fn orthant_halves_a_segment() {
        let ps = point_set(vec![
            vec![-0.5],
            vec![-0.3],
            vec![0.0],
            vec![0.3],
            vec![0.5],
        ]);
        let ball = Ball::new(Point::new(vec![0.0]).unwrap(), 0.5).unwrap();
        let partition = orthant_partition(&ps, &ball).unwrap();
        assert_eq!(partition.part_count, 2);
        assert_relative_eq!(partition.max_part_diameter, 0.5, epsilon = 1e-12);
        // Zero goes to the nonnegative side.
        assert_eq!(partition.labels[1], partition.labels[0]);
        assert_ne!(partition.labels[2], partition.labels[0]);
    }

    #[test]
    fn orthant_quarters_a_disk() {
        // Dense circle of radius 1/sqrt(3): the quarter-disk diameter is the
        // chord between the two axis points, r*sqrt(2).
        let r = 1.0 / 3.0_f64.sqrt();
        let coords: Vec<Vec<f64>> = (0..256)
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * k as f64 / 256.0;
                vec![r * t.cos(), r * t.sin()]
            })
            .collect();
        let ps = point_set(coords);
        let ball = Ball::new(Point::new(vec![0.0, 0.0]).unwrap(), r).unwrap();
        let partition = orthant_partition(&ps, &ball).unwrap();
        assert_eq!(partition.part_count, 4);
        assert_relative_eq!(
            partition.max_part_diameter,
            r * std::f64::consts::SQRT_2,
            epsilon = 1e-9
        );
    }

    #[test]
    fn orthant_part_count_is_bounded() {
        for seed in 0..60 {
            let dim = 1 + (seed as usize % 4);
            let ps = ball_sample(dim, 0.5, 40, seed);
            let ball = min_enclosing_ball(&ps).unwrap();
            let partition = orthant_partition(&ps, &ball).unwrap();
            assert!(partition.part_count <= 1 << dim);
            assert!(partition.max_part_diameter < diameter(&ps));
        }
    }

    #[test]
    fn orthant_rejects_bad_inputs() {
        let ps = point_set(vec![vec![0.0, 0.9], vec![0.1, 0.0]]);
        let far_ball = Ball::new(Point::new(vec![5.0, 5.0]).unwrap(), 0.5).unwrap();
        assert!(orthant_partition(&ps, &far_ball).is_err());

        // A degenerate (single-point) set cannot be strictly improved.
        let degenerate = point_set(vec![vec![0.1, 0.1], vec![0.1, 0.1]]);
        let ball = Ball::new(Point::new(vec![0.1, 0.1]).unwrap(), 0.5).unwrap();
        assert!(orthant_partition(&degenerate, &ball).is_err());
    }

    #[test]
    fn lattice_cover_interval_counts() {
        let ball = Ball::new(Point::new(vec![0.0]).unwrap(), 1.0).unwrap();
        let cover = cover_ball_lattice(&ball, 0.3).unwrap();
        assert_eq!(cover.len(), 4);

        // Covering radius at least the ball radius: single ball.
        let single = cover_ball_lattice(&ball, 1.5).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].center(), ball.center());

        assert!(cover_ball_lattice(&ball, 0.0).is_err());
        assert!(cover_ball_lattice(&ball, -0.4).is_err());
    }

    #[test]
    fn lattice_cover_has_no_holes() {
        let mut rng = seeding::stream(11, 5);
        for dim in 1..=4usize {
            let center: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let radius = rng.gen_range(0.4..1.2);
            let rho = rng.gen_range(0.15..0.5) * radius;
            let ball = Ball::new(Point::new(center.clone()).unwrap(), radius).unwrap();
            let cover = cover_ball_lattice(&ball, rho).unwrap();
            for _ in 0..2500 {
                let dir = seeding::unit_vector(&mut rng, dim);
                let r = radius * rng.gen::<f64>().powf(1.0 / dim as f64);
                let p = Point::new(
                    center.iter().zip(&dir).map(|(&c, &d)| c + r * d).collect(),
                )
                .unwrap();
                assert!(
                    cover.iter().any(|small| small.contains(&p, 1e-9)),
                    "uncovered point in dim {dim}"
                );
            }
        }
    }

    #[test]
    fn simplex_split_sector_diameters() {
        // n = 2, radius 0.5: three 120-degree sectors, max chord
        // 2 * 0.5 * sin(60 deg) = sqrt(3)/2.
        let ball = Ball::new(Point::new(vec![0.0, 0.0]).unwrap(), 0.5).unwrap();
        let splitter = simplex_split(&ball).unwrap();
        assert_eq!(splitter.regions(), 3);
        // Sector boundaries lie along the negated vertex directions (the
        // vertices sum to zero), so +/- every vertex hits each sector's two
        // extreme boundary points; ties go to the lowest sector.
        let dirs = regular_simplex_directions(2).unwrap();
        let mut coords: Vec<Vec<f64>> = Vec::new();
        for dir in &dirs {
            coords.push(dir.iter().map(|&x| 0.5 * x).collect());
            coords.push(dir.iter().map(|&x| -0.5 * x).collect());
        }
        let ps = point_set(coords);
        let raw: Vec<usize> = ps.points().iter().map(|p| splitter.classify(p)).collect();
        let partition = finish_partition(&ps, &raw);
        assert_eq!(partition.part_count, 3);
        assert_relative_eq!(
            partition.max_part_diameter,
            3.0_f64.sqrt() * 0.5,
            epsilon = 1e-9
        );
        assert!(partition.max_part_diameter < 1.0);
    }

    #[test]
    fn simplex_split_margin_in_3d() {
        // Measured-margin regression: tetrahedral cells of the radius-1/2
        // ball stay below diameter 0.95 on a dense sample.
        let ball = Ball::new(Point::new(vec![0.0; 3]).unwrap(), 0.5).unwrap();
        let diameters = sampled_split_diameters(&ball, 3000, seeding::DEFAULT_SEED).unwrap();
        assert_eq!(diameters.len(), 4);
        for &d in &diameters {
            assert!(d < 0.95, "sampled region diameter {d}");
        }
        // Deterministic given the seed.
        assert_eq!(
            diameters,
            sampled_split_diameters(&ball, 3000, seeding::DEFAULT_SEED).unwrap()
        );
    }

    #[test]
    fn split_rejects_high_dimension() {
        let ball = Ball::new(Point::new(vec![0.0; 7]).unwrap(), 0.5).unwrap();
        assert!(simplex_split(&ball).is_err());
    }

    #[test]
    fn tiny_cluster_needs_one_part() {
        let ps = point_set(vec![
            vec![0.01, 0.0],
            vec![0.0, 0.01],
            vec![-0.01, 0.0],
        ]);
        let partition = partition_set(&ps, 0.9, Strategy::ShrunkCover, 0.01).unwrap();
        assert_eq!(partition.part_count, 1);
    }

    #[test]
    fn pipeline_beats_target_on_disk_samples() {
        let ps = ball_sample(2, 0.5, 500, 1);
        for (strategy, b) in [
            (Strategy::ShrunkCover, 0.9),
            (Strategy::CoverPlusSplit, 0.9),
            (Strategy::Orthant, 1.0),
        ] {
            let partition = partition_set(&ps, b, strategy, 0.01).unwrap();
            let check = verify_partition(&ps, &partition, b).unwrap();
            assert!(check.ok, "{strategy} max {}", check.max_part_diameter);
            assert_eq!(check.part_count, partition.part_count);
            if strategy == Strategy::Orthant {
                assert!(partition.part_count <= 4);
            }
        }
    }

    #[test]
    fn pipeline_is_deterministic() {
        let ps = ball_sample(3, 0.5, 200, 9);
        let a = partition_set(&ps, 0.6, Strategy::CoverPlusSplit, 0.01).unwrap();
        let b = partition_set(&ps, 0.6, Strategy::CoverPlusSplit, 0.01).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn shrinking_b_never_merges_parts() {
        let ps = ball_sample(2, 0.5, 300, 4);
        let mut last = 0usize;
        for b in [0.9, 0.7, 0.5, 0.3] {
            let partition = partition_set(&ps, b, Strategy::ShrunkCover, 0.01).unwrap();
            assert!(
                partition.part_count >= last,
                "b = {b}: {} parts after {last}",
                partition.part_count
            );
            last = partition.part_count;
        }
    }

    #[test]
    fn strategy_and_target_must_agree() {
        let ps = ball_sample(2, 0.5, 50, 2);
        assert!(partition_set(&ps, 0.9, Strategy::Orthant, 0.01).is_err());
        assert!(partition_set(&ps, 0.0, Strategy::ShrunkCover, 0.01).is_err());
        assert!(partition_set(&ps, 1.2, Strategy::ShrunkCover, 0.01).is_err());
        assert!(partition_set(&ps, 0.9, Strategy::ShrunkCover, 0.7).is_err());

        let wide = point_set(vec![vec![0.0, 0.0], vec![1.5, 0.0]]);
        assert!(partition_set(&wide, 0.9, Strategy::ShrunkCover, 0.01).is_err());
    }

    #[test]
    fn verify_rejects_malformed_and_flags_bad_partitions() {
        let ps = point_set(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.5, 0.1]]);

        // Negative control: one part holding a diameter-1 set fails b = 0.5.
        let lump = Partition {
            labels: vec![0, 0, 0],
            part_count: 1,
            max_part_diameter: 1.0,
        };
        let check = verify_partition(&ps, &lump, 0.5).unwrap();
        assert!(!check.ok);
        assert_relative_eq!(check.max_part_diameter, 1.0, epsilon = 1e-12);

        let short = Partition { labels: vec![0, 0], part_count: 1, max_part_diameter: 0.0 };
        assert!(verify_partition(&ps, &short, 0.5).is_err());

        let hole = Partition {
            labels: vec![0, 0, 2],
            part_count: 3,
            max_part_diameter: 0.0,
        };
        assert!(verify_partition(&ps, &hole, 0.5).is_err());

        let out_of_range = Partition {
            labels: vec![0, 0, 5],
            part_count: 2,
            max_part_diameter: 0.0,
        };
        assert!(verify_partition(&ps, &out_of_range, 0.5).is_err());
    }

    #[test]
    fn strategy_names_round_trip() {
        for s in [Strategy::ShrunkCover, Strategy::CoverPlusSplit, Strategy::Orthant] {
            assert_eq!(s.cli_name().parse::<Strategy>().unwrap(), s);
            assert_eq!(s.tag().parse::<Strategy>().unwrap(), s);
        }
        assert!("voronoi".parse::<Strategy>().is_err());
    }
}
