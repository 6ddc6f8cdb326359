//! Reflection moves on polygonal knots.
//!
//! A move picks two vertices `v_i`, `v_j` and one of the circle of planes
//! through the line `v_i v_j`, then reflects one of the two arcs between
//! them across that plane. Edge lengths are preserved because the cut
//! points lie on the plane.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geom::{rotate_about_axis, Plane, Point3};
use crate::polygon::KnotPolygon;
use crate::tol;

/// Which of the two arcs between `v_i` and `v_j` moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ArcChoice {
    /// Vertices strictly between `i` and `j` going forward.
    #[default]
    Forward,
    /// Vertices strictly between `j` and `i` going forward.
    Complement,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionMove {
    pub i: usize,
    pub j: usize,
    pub theta: f64,
    pub arc_choice: ArcChoice,
}

impl ReflectionMove {
    pub fn new(i: usize, j: usize, theta: f64) -> Self {
        Self {
            i,
            j,
            theta,
            arc_choice: ArcChoice::Forward,
        }
    }

    /// Indices of the vertices that move.
    pub fn moving(&self, n: usize) -> Vec<usize> {
        let (a, b) = match self.arc_choice {
            ArcChoice::Forward => (self.i, self.j),
            ArcChoice::Complement => (self.j, self.i),
        };
        let steps = (b + n - a) % n;
        (1..steps).map(|k| (a + k) % n).collect()
    }
}

/// Reflections applied left to right; empty is the identity.
pub type MoveBatch = Vec<ReflectionMove>;

/// Orthonormal frame `(b1, b2, u)` for the line from `a` to `b`, with `u`
/// along the line. Right-handed.
pub fn axis_frame(a: Point3, b: Point3) -> Option<(Point3, Point3, Point3)> {
    let d = b - a;
    if d.norm() <= tol::AXIS {
        return None;
    }
    let u = d / d.norm();
    let e = [Point3::X, Point3::Y, Point3::Z]
        .into_iter()
        .find(|e| e.dot(u).abs() < 0.9)
        .expect("some basis vector is far from any unit vector");
    let b1 = (e - u * e.dot(u)).normalized()?;
    let b2 = u.cross(b1);
    Some((b1, b2, u))
}

/// The plane through `v_i` and `v_j` at angle `theta` in the circle of
/// planes about their common line.
pub fn reflection_plane(k: &KnotPolygon, i: usize, j: usize, theta: f64) -> Result<Plane> {
    check_index(k, i)?;
    check_index(k, j)?;
    let a = k.vertex(i as isize);
    let b = k.vertex(j as isize);
    let (b1, b2, _) = axis_frame(a, b).ok_or(Error::DegenerateAxis { i, j })?;
    Ok(Plane {
        point: a,
        normal: b1 * theta.cos() + b2 * theta.sin(),
    })
}

fn check_index(k: &KnotPolygon, i: usize) -> Result<()> {
    if i >= k.len() {
        return Err(Error::Config(format!(
            "vertex index {i} out of range for n = {}",
            k.len()
        )));
    }
    Ok(())
}

/// Reflects `p` unless it already lies on the plane up to rounding, so
/// that arcs inside the plane come back bit-for-bit.
fn reflect_point(plane: &Plane, p: Point3) -> Point3 {
    let d = plane.signed_distance(p);
    if d.abs() <= 4.0 * f64::EPSILON * (p - plane.point).norm() {
        p
    } else {
        p - plane.normal * (2.0 * d)
    }
}

fn reflect_vertices(k: &KnotPolygon, plane: &Plane, moving: &[usize]) -> KnotPolygon {
    let mut v = k.vertices().to_vec();
    for &m in moving {
        v[m] = reflect_point(plane, v[m]);
    }
    KnotPolygon::from_vertices_unchecked(v)
}

pub fn apply_reflection(k: &KnotPolygon, m: &ReflectionMove) -> Result<KnotPolygon> {
    let plane = reflection_plane(k, m.i, m.j, m.theta)?;
    Ok(reflect_vertices(k, &plane, &m.moving(k.len())))
}

/// Applies the batch left to right. The first failing move aborts.
pub fn apply_batch(k: &KnotPolygon, batch: &[ReflectionMove]) -> Result<KnotPolygon> {
    let mut cur = k.clone();
    for m in batch {
        cur = apply_reflection(&cur, m)?;
    }
    Ok(cur)
}

/// Rotates the forward arc strictly between `v_i` and `v_j` rigidly by
/// `phi` (right-handed about `v_j - v_i`), as the composition of the
/// reflections at angles 0 and `phi / 2`.
pub fn apply_arc_rotation(k: &KnotPolygon, i: usize, j: usize, phi: f64) -> Result<KnotPolygon> {
    let first = ReflectionMove::new(i, j, 0.0);
    let second = ReflectionMove::new(i, j, 0.5 * phi);
    apply_batch(k, &[first, second])
}

/// Four distinguished vertices in forward cyclic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Quadruple {
    pub v1: usize,
    pub w1: usize,
    pub v2: usize,
    pub w2: usize,
}

impl Quadruple {
    pub fn as_array(&self) -> [usize; 4] {
        [self.v1, self.w1, self.v2, self.w2]
    }

    fn in_cyclic_order(&self, n: usize) -> bool {
        let q = self.as_array();
        if q.iter().any(|&x| x >= n) {
            return false;
        }
        let gap = |a: usize, b: usize| (b + n - a) % n;
        let total: usize = (0..4).map(|t| gap(q[t], q[(t + 1) % 4])).sum();
        total == n && (0..4).all(|t| gap(q[t], q[(t + 1) % 4]) > 0)
    }
}

/// First hextuple stage: rotate the arc through `v1` about the line
/// `w1 w2` by `2 theta`, lifting `v1` off the plane.
fn lift_v1(k: &KnotPolygon, q: Quadruple, theta: f64) -> Result<KnotPolygon> {
    let w1 = k.vertex(q.w1 as isize);
    let w2 = k.vertex(q.w2 as isize);
    let v1 = k.vertex(q.v1 as isize);
    let d = w1 - w2;
    let d = Point3::new(d.x, d.y, 0.0);
    let u = d.normalized().ok_or(Error::DegenerateAxis { i: q.w2, j: q.w1 })?;
    let mut h = Point3::new(-u.y, u.x, 0.0);
    if (v1 - w2).dot(h) < 0.0 {
        h = -h;
    }
    let plane = Plane {
        point: w2,
        normal: h * (-theta.sin()) + Point3::Z * theta.cos(),
    };
    let m = ReflectionMove::new(q.w2, q.w1, 0.0);
    Ok(reflect_vertices(k, &plane, &m.moving(k.len())))
}

/// The quadrilateral diagnostic `(e1 x e2) . (e3 x e4)` of `T_theta(K)`,
/// with the quadrilateral edges `e1 = v1 - w2`, `e2 = w1 - v1`,
/// `e3 = v2 - w1`, `e4 = w2 - v2`. It is positive on a convex
/// quadrilateral and vanishes when `v1` or `v2` lines up with `w1, w2`.
pub fn hextuple_diagnostic(k: &KnotPolygon, q: Quadruple, theta: f64) -> Result<f64> {
    let out = apply_hextuple(k, q, theta)?;
    Ok(quad_diagnostic(&out, q))
}

pub(crate) fn quad_diagnostic(k: &KnotPolygon, q: Quadruple) -> f64 {
    let [v1, w1, v2, w2] = q.as_array().map(|i| k.vertex(i as isize));
    let e1 = v1 - w2;
    let e2 = w1 - v1;
    let e3 = v2 - w1;
    let e4 = w2 - v2;
    e1.cross(e2).dot(e3.cross(e4))
}

/// Normal of the plane containing `axis` that mirrors direction `from`
/// onto `to` (both perpendicular to `axis`), or `None` when they already
/// agree. Built from the bisector so it stays accurate for nearby
/// directions.
fn mirror_normal(axis: Point3, from: Point3, to: Point3) -> Option<Point3> {
    let from = from.normalized()?;
    let to = to.normalized()?;
    if (from - to).norm() <= 1e-15 {
        return None;
    }
    match (from + to).normalized() {
        Some(bis) if (from + to).norm() > 1e-8 => axis.cross(bis).normalized(),
        _ => (from - to).normalized(),
    }
}

/// The six-reflection move `T_theta` on a planar convex polygon in the
/// x-y plane. Returns a planar polygon in the same horizontal plane;
/// `T_0` is the identity.
pub fn apply_hextuple(k: &KnotPolygon, q: Quadruple, theta: f64) -> Result<KnotPolygon> {
    let n = k.len();
    if !q.in_cyclic_order(n) {
        return Err(Error::Config(format!(
            "quadruple {:?} is not in forward cyclic order",
            q.as_array()
        )));
    }
    // stage 1
    let mut cur = lift_v1(k, q, theta)?;

    // stage 2: swing the arc through w2 about v1 v2 into plane(v1, w1, v2)
    let v1 = cur.vertex(q.v1 as isize);
    let w1 = cur.vertex(q.w1 as isize);
    let v2 = cur.vertex(q.v2 as isize);
    let w2 = cur.vertex(q.w2 as isize);
    let a = (v2 - v1)
        .normalized()
        .ok_or(Error::DegenerateAxis { i: q.v1, j: q.v2 })?;
    let off = w1 - v1;
    let perp = off - a * off.dot(a);
    if perp.norm() <= tol::GEOM {
        return Err(Error::NotCoplanarizable {
            residual: perp.norm(),
        });
    }
    let m = perp / perp.norm();
    let c = v1 + a * (w2 - v1).dot(a);
    let r = (w2 - c).norm();
    // of the two in-plane images, the one across v1 v2 from w1 keeps the
    // quadrilateral convex; it is the higher one until the two are level,
    // where a height rule would jump branches
    let x = c - m * r;
    if let Some(normal) = mirror_normal(a, w2 - c, x - c) {
        let plane = Plane { point: v1, normal };
        let mv = ReflectionMove::new(q.v2, q.v1, 0.0);
        cur = reflect_vertices(&cur, &plane, &mv.moving(n));
    }

    // stage 3: fold each flap into the common plane
    let [v1, w1, v2, w2] = q.as_array().map(|i| cur.vertex(i as isize));
    let common = (v2 - v1)
        .cross(w2 - w1)
        .normalized()
        .ok_or(Error::NotCoplanarizable { residual: 0.0 })?;
    let centre = (v1 + w1 + v2 + w2) / 4.0;
    let ids = q.as_array();
    for t in 0..4 {
        let (s, e) = (ids[t], ids[(t + 1) % 4]);
        let mv = ReflectionMove::new(s, e, 0.0);
        let flap = mv.moving(n);
        if flap.is_empty() {
            continue;
        }
        let ps = cur.vertex(s as isize);
        let pe = cur.vertex(e as isize);
        let chord = match (pe - ps).normalized() {
            Some(c) => c,
            None => continue,
        };
        // farthest flap vertex from the chord fixes the flap's half-plane
        let off = flap
            .iter()
            .map(|&f| {
                let r = cur.vertex(f as isize) - ps;
                r - chord * r.dot(chord)
            })
            .max_by(|a, b| a.norm().total_cmp(&b.norm()))
            .expect("flap is non-empty");
        let Some(h_flap) = off.normalized() else {
            continue;
        };
        if off.norm() <= tol::GEOM {
            continue;
        }
        // outside the quadrilateral, as at theta = 0; a nearest-side rule
        // flips flaps that have swung past vertical
        let mut h_target = common.cross(chord);
        if h_target.dot(centre - ps) > 0.0 {
            h_target = -h_target;
        }
        let Some(normal) = mirror_normal(chord, h_flap, h_target) else {
            continue;
        };
        let plane = Plane { point: ps, normal };
        cur = reflect_vertices(&cur, &plane, &flap);
    }

    // stage 4: rigid re-alignment back into the horizontal plane through w1
    let [a, b, c, d] = q.as_array().map(|i| k.vertex(i as isize));
    let side = if (c - a).cross(d - b).z < 0.0 { -1.0 } else { 1.0 };
    let nrm = common * side;
    let pivot = cur.vertex(q.w1 as isize);
    let axis = nrm.cross(Point3::Z);
    let angle = axis.norm().atan2(nrm.z);
    Ok(match axis.normalized() {
        Some(ax) if angle != 0.0 => cur.map_isometry(|p| rotate_about_axis(p, pivot, ax, angle)),
        _ if nrm.z < 0.0 => cur.map_isometry(|p| rotate_about_axis(p, pivot, Point3::X, PI)),
        _ => cur,
    })
}
