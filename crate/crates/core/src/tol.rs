//! Numerical tolerances shared across modules.
//!
//! The underlying geometry is exact-arithmetic; every band below is an
//! implementation choice and is pinned here so tests and library agree.

/// Edge-length validation band.
pub const EDGE: f64 = 1e-9;
/// Collinearity / boundary-membership band for planar predicates.
pub const GEOM: f64 = 1e-9;
/// Angle classification band (regular vs small/large, straight vertices).
pub const ANGLE: f64 = 1e-12;
/// Height band for planarity and min-height membership.
pub const FLAT: f64 = 1e-8;
/// Minimum separation of the two vertices defining a reflection axis.
pub const AXIS: f64 = 1e-9;
/// Minimum useful gain of the expose-phase progress measure.
pub const PROGRESS: f64 = 1e-12;
/// Step used when verifying local extrema of the distance function.
pub const EXTREMUM_DELTA: f64 = 1e-7;
/// Slack on one-sided extremum checks.
pub const EXTREMUM_SLACK: f64 = 1e-12;
/// Slack allowed on thickness monotonicity.
pub const THICKNESS_SLACK: f64 = 1e-9;
