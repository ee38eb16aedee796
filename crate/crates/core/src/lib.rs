//! Upper bounds and constructions for partitioning bounded sets into pieces
//! of strictly smaller diameter.
//!
//! The central quantity is the minimum number of pieces of diameter less
//! than `b` needed to split an arbitrary set of diameter 1 in `R^n`.  All
//! known upper bounds of the form `(base + o(1))^n` are collected in
//! [`bounds`], with the strongest one, `sqrt(1/b^2 + 1/2)`, backed here by a
//! verifiable chain of finite-dimensional facts:
//!
//! * [`cap_ratio`] — a one-variable optimization: the cap-separation ratio
//!   function attains its maximum `sqrt(4a^2 + 1)` at an explicit interior
//!   point, checked both in closed form and by golden-section search;
//! * [`cap_pair`] — the geometry of two spherical caps cut off by congruent
//!   balls: center distance, the inequality chain bounding it, and the
//!   circumscribed-set identity that feeds the chain its `alpha` bound;
//! * [`cover`] — cap covers of circles and spheres plus the multi-scale cap
//!   hierarchy whose counting argument turns the chain into a bound;
//! * [`partition`] — concrete partitioning strategies for finite point sets,
//!   with exact per-piece diameter verification;
//! * [`geometry`] — points, diameters, exact minimum enclosing balls, and
//!   Jung's bound tying diameter to enclosing radius.
//!
//! Randomized drivers are deterministic given a seed ([`seeding`]), and
//! [`report`] renders results in byte-stable CSV/JSON.

pub mod bounds;
pub mod cap_pair;
pub mod cap_ratio;
pub mod cover;
pub mod error;
pub mod geometry;
pub mod partition;
pub mod report;
pub mod seeding;

pub use error::{Error, Result};
pub use geometry::{Ball, Point, PointSet};
