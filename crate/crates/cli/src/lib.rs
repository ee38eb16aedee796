//! Command-line front end: argument parsing, dispatch, and report emission.
//!
//! The binary is a thin wrapper over [`run`], which is also the in-process
//! entry point for integration tests — it never touches the process
//! environment or exits, it just returns captured output and an exit code.
//!
//! Exit codes: `0` success (and, for verification subcommands, the check
//! passed), `1` a verification ran to completion and failed, `2` bad
//! arguments or any other error.  A verification subcommand's exit code
//! always agrees with the `ok` field of the JSON summary it printed.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use borsuk_core::bounds::{self, BoundId, Crossover};
use borsuk_core::cap_pair;
use borsuk_core::cap_ratio;
use borsuk_core::cover;
use borsuk_core::geometry::{self, PointSet};
use borsuk_core::partition::{self, Strategy};
use borsuk_core::report::{canonical_json, csv_table, fixed10, fmt_fixed10, write_atomic};
use borsuk_core::seeding::DEFAULT_SEED;
use borsuk_core::Result;

/// Captured outcome of one CLI invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser)]
#[command(
    name = "borsuk",
    version,
    about = "Diameter-reduction bounds: sweeps, verification drivers, partitions, and cap covers"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Upper-bound bases: grid sweeps, the pointwise best, crossovers.
    Bounds {
        #[command(subcommand)]
        cmd: BoundsCmd,
    },
    /// Seeded Monte Carlo verification of the core inequalities.
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
    /// Check a point-set file against the enclosing-ball radius bound.
    Jung {
        /// Point-set file: one comma-separated point per line.
        #[arg(long)]
        input: PathBuf,
    },
    /// Partition a point-set file into parts of diameter < b.
    Partition {
        /// Point-set file: one comma-separated point per line.
        #[arg(long)]
        input: PathBuf,
        /// Target part diameter, in (0, 1].
        #[arg(long)]
        b: f64,
        /// shrunk | split | orthant
        #[arg(long)]
        strategy: Strategy,
        /// Cover shrink factor for the shrunk strategy, in (0, 1/2).
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        /// Output path for the full partition JSON (labels included).
        #[arg(long)]
        out: PathBuf,
    },
    /// Certified greedy cap covers of the circle and the sphere.
    Cover {
        #[command(subcommand)]
        cmd: CoverCmd,
    },
    /// Build, dump, and verify a multi-scale cap hierarchy.
    Hierarchy {
        /// Sphere dimension: 2 (circle) or 3.
        #[arg(long)]
        dim: usize,
        /// Sphere radius, at least 1/2.
        #[arg(long)]
        r: f64,
        /// Radius-to-diameter ratio, in (1/2, 5/9].
        #[arg(long)]
        lambda: f64,
        /// Slack for the informational count references.
        #[arg(long)]
        eps: f64,
        /// Geometric growth of the diameter schedule.
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Construction mesh density (defaults by dimension).
        #[arg(long)]
        mesh: Option<usize>,
        /// Output path for the hierarchy JSON dump.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum BoundsCmd {
    /// CSV of all comparable bases over a b-grid.
    Sweep {
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        step: f64,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The smallest base at one value of b.
    Best {
        #[arg(long)]
        b: f64,
    },
    /// Where two bases cross, by numeric bound id.
    Crossover {
        #[arg(long)]
        id1: u32,
        #[arg(long)]
        id2: u32,
        #[arg(long, default_value_t = 0.01)]
        lo: f64,
        #[arg(long, default_value_t = 0.99)]
        hi: f64,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Cap-ratio maximum: numeric optimum vs the closed forms.
    Lemma2 {
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Also write the JSON summary here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cap-center separation chain on random admissible configurations.
    Lemma3 {
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Also write the JSON summary here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Circumscribed-set identity and its diameter consequence.
    Identity {
        #[arg(long)]
        dim: usize,
        /// Points in the first family.
        #[arg(long)]
        m: usize,
        /// Points in the second family.
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 1_000)]
        samples: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Also write the JSON summary here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CoverCmd {
    /// Greedy arc cover of a circle, with the exact oracle alongside.
    Circle {
        #[arg(long)]
        r: f64,
        #[arg(long)]
        rho: f64,
        #[arg(long, default_value_t = 4096)]
        mesh: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Greedy cap cover of the 2-sphere.
    Sphere {
        #[arg(long)]
        r: f64,
        #[arg(long)]
        rho: f64,
        #[arg(long, default_value_t = 20_000)]
        mesh: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

/// Rendered subcommand result: what to print and how to exit.
struct Rendered {
    stdout: String,
    code: i32,
}

impl Rendered {
    fn json(value: &Value, ok: bool) -> Rendered {
        Rendered { stdout: canonical_json(value), code: i32::from(!ok) }
    }
}

/// Parses and executes one invocation, capturing output instead of printing.
pub fn run<I, S>(args: I) -> RunOutput
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    RunOutput { code: 0, stdout: rendered, stderr: String::new() }
                }
                _ => RunOutput { code: 2, stdout: String::new(), stderr: rendered },
            };
        }
    };
    match dispatch(cli.cmd) {
        Ok(r) => RunOutput { code: r.code, stdout: r.stdout, stderr: String::new() },
        Err(e) => RunOutput { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn dispatch(cmd: Cmd) -> Result<Rendered> {
    match cmd {
        Cmd::Bounds { cmd } => match cmd {
            BoundsCmd::Sweep { from, to, step, out } => bounds_sweep(from, to, step, out),
            BoundsCmd::Best { b } => bounds_best(b),
            BoundsCmd::Crossover { id1, id2, lo, hi } => bounds_crossover(id1, id2, lo, hi),
        },
        Cmd::Verify { cmd } => match cmd {
            VerifyCmd::Lemma2 { samples, seed, tol, out } => verify_lemma2(samples, seed, tol, out),
            VerifyCmd::Lemma3 { samples, seed, out } => verify_lemma3(samples, seed, out),
            VerifyCmd::Identity { dim, m, s, samples, seed, out } => {
                verify_identity(dim, m, s, samples, seed, out)
            }
        },
        Cmd::Jung { input } => jung(&input),
        Cmd::Partition { input, b, strategy, epsilon, out } => {
            run_partition(&input, b, strategy, epsilon, &out)
        }
        Cmd::Cover { cmd } => match cmd {
            CoverCmd::Circle { r, rho, mesh, seed } => cover_report(2, r, rho, mesh, seed),
            CoverCmd::Sphere { r, rho, mesh, seed } => cover_report(3, r, rho, mesh, seed),
        },
        Cmd::Hierarchy { dim, r, lambda, eps, delta, seed, mesh, out } => {
            hierarchy(dim, r, lambda, eps, delta, seed, mesh, &out)
        }
    }
}

/// The six b-dependent bases, in CSV column order.
const SWEEP_COLUMNS: [BoundId; 6] = [
    BoundId::CoverSqrt2,
    BoundId::BlSub,
    BoundId::RogersZong,
    BoundId::Permutohedron,
    BoundId::Lattice,
    BoundId::Theorem1,
];

fn bounds_sweep(from: f64, to: f64, step: f64, out: Option<PathBuf>) -> Result<Rendered> {
    if !(from > 0.0 && from <= to && to <= 1.0) || !(step > 0.0) || !step.is_finite() {
        return Err(borsuk_core::Error::domain(format!(
            "sweep grid needs 0 < from <= to <= 1 and step > 0, got from = {from}, to = {to}, step = {step}"
        )));
    }
    let mut rows = Vec::new();
    let mut k = 0u64;
    loop {
        let b = from + k as f64 * step;
        if b > to + 1e-12 {
            break;
        }
        let b = b.min(to);
        let mut row = vec![fmt_fixed10(b)];
        for id in SWEEP_COLUMNS {
            row.push(fmt_fixed10(bounds::bound_base(id, b)?));
        }
        row.push(bounds::best_bound(b)?.0.tag().to_string());
        rows.push(row);
        k += 1;
    }
    let csv = csv_table(
        &["b", "base4", "base5", "base6", "base7", "base8", "base9", "best_id"],
        &rows,
    );
    match out {
        Some(path) => {
            write_atomic(&path, &csv)?;
            Ok(Rendered { stdout: String::new(), code: 0 })
        }
        None => Ok(Rendered { stdout: csv, code: 0 }),
    }
}

fn bounds_best(b: f64) -> Result<Rendered> {
    let (id, base) = bounds::best_bound(b)?;
    let v = json!({ "id": id.tag(), "base": fixed10(base) });
    Ok(Rendered::json(&v, true))
}

fn bounds_crossover(id1: u32, id2: u32, lo: f64, hi: f64) -> Result<Rendered> {
    let a = BoundId::from_code(id1)?;
    let b = BoundId::from_code(id2)?;
    let v = match bounds::crossover(a, b, lo, hi)? {
        Crossover::Root { b, multiple } => {
            if multiple {
                json!({ "b": fixed10(b), "multiple": true })
            } else {
                json!({ "b": fixed10(b) })
            }
        }
        Crossover::NoCrossing => json!({ "result": "NO_CROSSING" }),
    };
    Ok(Rendered::json(&v, true))
}

/// Prints the summary and mirrors it to `--out` when given.
fn emit_summary(v: &Value, ok: bool, out: Option<PathBuf>) -> Result<Rendered> {
    if let Some(path) = out {
        write_atomic(&path, &canonical_json(v))?;
    }
    Ok(Rendered::json(v, ok))
}

fn verify_lemma2(samples: u64, seed: u64, tol: f64, out: Option<PathBuf>) -> Result<Rendered> {
    let sweep = cap_ratio::verify_ratio_max(samples, seed, tol)?;
    let v = json!({
        "samples": sweep.samples,
        "seed": sweep.seed,
        "tol": sweep.tol,
        "max_abs_error": sweep.max_abs_error,
        "max_rho_error": sweep.max_rho_error,
        "worst_case_params": {
            "d": sweep.worst.d,
            "a": sweep.worst.a,
            "r": sweep.worst.r,
            "rho": sweep.worst.rho,
        },
        "ok": sweep.ok,
    });
    emit_summary(&v, sweep.ok, out)
}

fn verify_lemma3(samples: u64, seed: u64, out: Option<PathBuf>) -> Result<Rendered> {
    let sweep = cap_pair::verify_chain(samples, seed)?;
    let v = json!({
        "samples": sweep.samples,
        "seed": sweep.seed,
        "violations": sweep.violations,
        "min_margin": sweep.min_margin,
        "max_identity_error": sweep.max_identity_error,
        "worst_config": {
            "r": sweep.worst.r,
            "rho": sweep.worst.rho,
            "alpha": sweep.worst.alpha,
            "d": sweep.worst.d,
            "dist": sweep.worst.dist,
        },
        "ok": sweep.ok,
    });
    emit_summary(&v, sweep.ok, out)
}

fn verify_identity(
    dim: usize,
    m: usize,
    s: usize,
    samples: u64,
    seed: u64,
    out: Option<PathBuf>,
) -> Result<Rendered> {
    let sweep = cap_pair::verify_identity(dim, m, s, samples, seed)?;
    let v = json!({
        "samples": sweep.samples,
        "seed": sweep.seed,
        "dim": sweep.dim,
        "m": sweep.m,
        "s": sweep.s,
        "max_residual": sweep.max_residual,
        "violations": sweep.violations,
        "ok": sweep.ok,
    });
    emit_summary(&v, sweep.ok, out)
}

fn jung(input: &std::path::Path) -> Result<Rendered> {
    let ps = PointSet::from_path(input)?;
    let report = geometry::jung_check(&ps)?;
    let v = json!({
        "dim": report.dim,
        "points": report.points,
        "diameter": fixed10(report.diameter),
        "meb_radius": fixed10(report.meb_radius),
        "bound": fixed10(report.bound),
        "ok": report.ok,
    });
    Ok(Rendered::json(&v, report.ok))
}

fn run_partition(
    input: &std::path::Path,
    b: f64,
    strategy: Strategy,
    epsilon: f64,
    out: &std::path::Path,
) -> Result<Rendered> {
    let ps = PointSet::from_path(input)?;
    let part = partition::partition_set(&ps, b, strategy, epsilon)?;
    let check = partition::verify_partition(&ps, &part, b)?;
    let summary = json!({
        "b": fixed10(b),
        "strategy": strategy.tag(),
        "epsilon": fixed10(epsilon),
        "points": ps.len(),
        "part_count": part.part_count,
        "max_part_diameter": fixed10(part.max_part_diameter),
        "verified": check.ok,
    });
    let mut dump = summary.clone();
    dump["labels"] = json!(part.labels);
    write_atomic(out, &canonical_json(&dump))?;
    Ok(Rendered::json(&summary, check.ok))
}

fn cover_report(n: usize, r: f64, rho: f64, mesh: usize, seed: u64) -> Result<Rendered> {
    let caps = cover::greedy_cap_cover(n, r, rho, mesh, seed)?;
    let mut v = json!({
        "dim": n,
        "r": fixed10(r),
        "rho": fixed10(rho),
        "mesh": mesh,
        "seed": seed,
        "count": caps.len(),
        "certified": true,
    });
    if n == 2 {
        v["oracle"] = json!(cover::circle_cover_count(r, rho)?);
    }
    Ok(Rendered::json(&v, true))
}

#[allow(clippy::too_many_arguments)]
fn hierarchy(
    dim: usize,
    r: f64,
    lambda: f64,
    eps: f64,
    delta: f64,
    seed: u64,
    mesh: Option<usize>,
    out: &std::path::Path,
) -> Result<Rendered> {
    let mesh = mesh.unwrap_or(if dim == 2 { 4096 } else { 20_000 });
    let h = cover::build_hierarchy(dim, r, lambda, eps, delta, mesh, seed)?;
    let report = cover::verify_hierarchy(&h)?;
    let levels: Vec<Value> = h
        .levels
        .iter()
        .map(|level| {
            let caps: Vec<Value> = level
                .caps
                .iter()
                .map(|cap| {
                    let dir: Vec<f64> =
                        cap.center_direction().iter().map(|&x| fixed10(x)).collect();
                    json!({ "dir": dir, "rho": fixed10(cap.chordal_radius()) })
                })
                .collect();
            json!({ "rho": fixed10(level.rho), "M": level.caps.len(), "caps": caps })
        })
        .collect();
    let dump = json!({
        "n": h.dim,
        "r": fixed10(h.r),
        "lambda": fixed10(h.lambda),
        "delta": fixed10(h.delta),
        "epsilon": fixed10(h.epsilon),
        "k0": h.k0,
        "levels": levels,
        "nesting": h.nesting,
        "notes": h.notes,
        "mesh": h.mesh_density,
        "seed": h.seed,
    });
    write_atomic(out, &canonical_json(&dump))?;
    let level_reports: Vec<Value> = report
        .levels
        .iter()
        .map(|l| {
            json!({
                "rho": fixed10(l.rho),
                "cap_count": l.cap_count,
                "count_reference": fixed10(l.count_reference),
                "max_nest_size": l.max_nest_size,
                "nest_reference": fixed10(l.nest_reference),
                "coverage_ok": l.coverage_ok,
            })
        })
        .collect();
    let v = json!({
        "ok": report.ok,
        "schedule_ok": report.schedule_ok,
        "depth_ok": report.depth_ok,
        "nesting_ok": report.nesting_ok,
        "seed": h.seed,
        "levels": level_reports,
    });
    Ok(Rendered::json(&v, report.ok))
}
