//! Thick equilateral polygonal knots: thickness, reflection moves, a
//! reflection Markov chain sampler and canonicalization to the regular
//! planar polygon.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod canonicalize;
pub mod error;
pub mod geom;
pub mod mcmc;
pub mod moves;
pub mod hull;
pub mod polygon;
pub mod thickness;
pub mod tol;

pub use error::{Error, Result};
pub use geom::{Point2, Point3};
pub use polygon::{regular_polygon, validate_polygon, KnotPolygon, PointOnKnot};
pub use thickness::{injectivity_radius, radius_via_tc, thickness, ThicknessReport};
