//! Canonicalization: any knot to the regular planar polygon through moves
//! that never decrease thickness.
//!
//! The pipeline runs in three phases. [`expose_projection`] reflects arcs
//! across vertical supporting planes until the top-down shadow is an
//! exposed polygon; [`flatten`] alternates that with [`pushout_move`] and
//! height-lowering rotations until the knot is planar and convex;
//! [`regularize`] then equalizes angles with the six-reflection move.

mod expose;
mod flatten;
mod pushout;
mod regularize;

pub use expose::{expose_projection, find_edge_pair_move, is_exposed, reversal_count};
pub use flatten::flatten;
pub use pushout::{pushout_move, PushoutMove};
pub use regularize::{choose_four_vertices, regularize, regularize_step};

use crate::error::{Error, Result, Stage};
use crate::geom::{rotate_about_axis, segment_segment_dist2d, Point3};
use crate::hull::convex_hull_2d;
use crate::moves::{apply_arc_rotation, apply_hextuple, apply_reflection, Quadruple, ReflectionMove};
use crate::polygon::{regular_polygon, KnotPolygon};
use crate::thickness::thickness;
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StageKind {
    ExposeProjection,
    Pushout,
    FlattenRotate,
    FlattenRigid,
    Regularize,
    RigidMotion,
}

/// A move as recorded in a trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Move {
    Reflection(ReflectionMove),
    /// Rigid rotation of the forward arc between `i` and `j` about their axis.
    ArcRotation { i: usize, j: usize, phi: f64 },
    /// Rotation of the whole knot about the line through `point`.
    Rigid { point: Point3, axis: Point3, angle: f64 },
    Translation(Point3),
    Hextuple { quad: Quadruple, theta: f64 },
}

impl Move {
    pub fn apply(&self, k: &KnotPolygon) -> Result<KnotPolygon> {
        match *self {
            Move::Reflection(m) => apply_reflection(k, &m),
            Move::ArcRotation { i, j, phi } => apply_arc_rotation(k, i, j, phi),
            Move::Rigid { point, axis, angle } => {
                Ok(k.map_isometry(|p| rotate_about_axis(p, point, axis, angle)))
            }
            Move::Translation(d) => Ok(k.translated(d)),
            Move::Hextuple { quad, theta } => apply_hextuple(k, quad, theta),
        }
    }

    /// The same move with its continuous parameter shifted by `delta`.
    pub fn perturbed(&self, delta: f64) -> Move {
        match *self {
            Move::Reflection(m) => Move::Reflection(ReflectionMove {
                theta: m.theta + delta,
                ..m
            }),
            Move::ArcRotation { i, j, phi } => Move::ArcRotation {
                i,
                j,
                phi: phi + delta,
            },
            Move::Rigid { point, axis, angle } => Move::Rigid {
                point,
                axis,
                angle: angle + delta,
            },
            Move::Translation(d) => Move::Translation(d),
            Move::Hextuple { quad, theta } => Move::Hextuple {
                quad,
                theta: theta + delta,
            },
        }
    }
}

#[derive(Debug, Clone)]
pub struct TraceEntry {
    pub stage: StageKind,
    pub mv: Move,
    pub thickness_before: f64,
    pub thickness_after: f64,
    /// Values after the move.
    pub mu: f64,
    pub incidence: usize,
    pub min_height_count: usize,
    pub polygon: KnotPolygon,
}

#[derive(Debug, Clone)]
pub struct CanonicalizationTrace {
    pub initial: KnotPolygon,
    pub entries: Vec<TraceEntry>,
}

impl CanonicalizationTrace {
    pub fn new(initial: KnotPolygon) -> Self {
        Self {
            initial,
            entries: Vec::new(),
        }
    }

    pub fn last_polygon(&self) -> &KnotPolygon {
        self.entries
            .last()
            .map(|e| &e.polygon)
            .unwrap_or(&self.initial)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Records `after` as the result of `mv` applied to the current state.
    pub(crate) fn push(&mut self, stage: StageKind, mv: Move, after: KnotPolygon) {
        let thickness_before = self
            .entries
            .last()
            .map(|e| e.thickness_after)
            .unwrap_or_else(|| thickness(&self.initial));
        self.entries.push(TraceEntry {
            stage,
            mv,
            thickness_before,
            thickness_after: thickness(&after),
            mu: mu(&after),
            incidence: incidence(&after),
            min_height_count: min_height_count(&after),
            polygon: after,
        });
    }

    pub(crate) fn extend(&mut self, other: CanonicalizationTrace) {
        self.entries.extend(other.entries);
    }

    /// Polygon before entry `i`.
    pub fn before(&self, i: usize) -> &KnotPolygon {
        if i == 0 {
            &self.initial
        } else {
            &self.entries[i - 1].polygon
        }
    }
}

/// Sum over vertex pairs of the distance between their shadows in the
/// x-y plane.
pub fn mu(k: &KnotPolygon) -> f64 {
    let p = k.projection();
    let mut sum = 0.0;
    for i in 0..p.len() {
        for j in (i + 1)..p.len() {
            sum += p[i].dist(p[j]);
        }
    }
    sum
}

/// Number of edge pairs whose shadows meet non-trivially: anywhere for
/// non-adjacent edges, beyond the shared vertex for adjacent ones.
pub fn incidence(k: &KnotPolygon) -> usize {
    let n = k.len();
    let p = k.projection();
    let mut count = 0;
    for e in 0..n {
        let (a, b) = (p[e], p[(e + 1) % n]);
        // adjacent pair (e, e + 1) sharing the image of vertex e + 1
        let c = p[(e + 2) % n];
        let u = a - b;
        let w = c - b;
        if u.norm() > tol::GEOM && w.norm() > tol::GEOM {
            let cross = u.cross(w) / (u.norm() * w.norm());
            if cross.abs() <= tol::GEOM && u.dot(w) > 0.0 {
                count += 1;
            }
        }
        for f in (e + 2)..n {
            if (f + 1) % n == e {
                continue;
            }
            let (c, d) = (p[f], p[(f + 1) % n]);
            if segment_segment_dist2d(a, b, c, d) <= tol::GEOM {
                count += 1;
            }
        }
    }
    count
}

/// Number of vertices within [`tol::FLAT`] of the lowest height.
pub fn min_height_count(k: &KnotPolygon) -> usize {
    let zmin = k.vertices().iter().map(|v| v.z).fold(f64::INFINITY, f64::min);
    k.vertices().iter().filter(|v| v.z <= zmin + tol::FLAT).count()
}

/// Exposed shadow with no incidences and non-empty interior.
pub fn is_convex_projection(k: &KnotPolygon) -> bool {
    let hull = convex_hull_2d(&k.projection());
    !hull.is_subdimensional() && incidence(k) == 0 && is_exposed(k)
}

/// Full pipeline. The returned trace ends at a polygon congruent to
/// `regular_polygon(n)`; the final alignment is verified.
pub fn canonicalize(k: &KnotPolygon) -> Result<CanonicalizationTrace> {
    let mut trace = CanonicalizationTrace::new(k.clone());
    let (_, t) = flatten(k)?;
    trace.extend(t);
    let planar = trace.last_polygon().clone();
    let (_, t) = regularize(&planar)?;
    trace.extend(t);
    let fin = trace.last_polygon();
    let rms = aligned_rms(fin, &regular_polygon(k.len())?);
    if rms > 1e-6 {
        return Err(Error::PipelineStall {
            stage: Stage::Regularize,
            iterations: trace.len(),
            detail: format!("final polygon is {rms:e} (RMS) from the regular polygon"),
        });
    }
    Ok(trace)
}

/// RMS vertex distance after the best proper rigid alignment of `a` onto
/// `b` (same vertex labels).
pub fn aligned_rms(a: &KnotPolygon, b: &KnotPolygon) -> f64 {
    use nalgebra::{Matrix3, Vector3};
    assert_eq!(a.len(), b.len());
    let ca = a.centroid();
    let cb = b.centroid();
    let mut h = Matrix3::zeros();
    for (p, q) in a.vertices().iter().zip(b.vertices()) {
        let x = Vector3::from((*p - ca).to_array());
        let y = Vector3::from((*q - cb).to_array());
        h += x * y.transpose();
    }
    let svd = h.svd(true, true);
    let (u, vt) = (svd.u.unwrap(), svd.v_t.unwrap());
    let mut d = Matrix3::identity();
    if (vt.transpose() * u.transpose()).determinant() < 0.0 {
        d[(2, 2)] = -1.0;
    }
    let r = vt.transpose() * d * u.transpose();
    let sum: f64 = a
        .vertices()
        .iter()
        .zip(b.vertices())
        .map(|(p, q)| {
            let x = Vector3::from((*p - ca).to_array());
            let y = Vector3::from((*q - cb).to_array());
            (r * x - y).norm_squared()
        })
        .sum();
    (sum / a.len() as f64).sqrt()
}
