//! Knot determinant |Δ(−1)| from a generic projection.
//!
//! Determinant 1 is necessary for the unknot but not sufficient, so this is
//! a one-sided unknot test.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::geom::{point_segment_dist2d, Point2, Point3};
use crate::moves::axis_frame;
use crate::polygon::KnotPolygon;
use crate::tol;

/// Projection directions tried before giving up.
pub const PROJECTION_ATTEMPTS: usize = 64;

struct Crossing {
    /// Position along the knot of the under strand: edge index plus parameter.
    under: f64,
    over: f64,
}

/// |Δ(−1)| using the first generic direction in a fixed sequence starting
/// at +z.
pub fn alexander_determinant(k: &KnotPolygon) -> Result<u64> {
    for a in 0..PROJECTION_ATTEMPTS {
        if let Some(d) = alexander_determinant_along(k, direction(a)) {
            return Ok(d);
        }
    }
    Err(Error::NoGenericProjection {
        attempts: PROJECTION_ATTEMPTS,
    })
}

fn direction(attempt: usize) -> Point3 {
    if attempt == 0 {
        return Point3::Z;
    }
    let polar = 0.05 * (attempt as f64).sqrt();
    let azimuth = 2.399_963_229_728_653 * attempt as f64;
    Point3::new(
        polar.sin() * azimuth.cos(),
        polar.sin() * azimuth.sin(),
        polar.cos(),
    )
}

/// |Δ(−1)| from the projection along `dir`, or `None` when that projection
/// is not generic.
pub fn alexander_determinant_along(k: &KnotPolygon, dir: Point3) -> Option<u64> {
    let crossings = crossings(k, dir)?;
    Some(coloring_determinant(&crossings))
}

fn crossings(k: &KnotPolygon, dir: Point3) -> Option<Vec<Crossing>> {
    let n = k.len();
    let (e1, e2, d) = axis_frame(Point3::ZERO, dir)?;
    let flat: Vec<Point2> = k.vertices().iter().map(|&v| Point2::new(v.dot(e1), v.dot(e2))).collect();
    let height: Vec<f64> = k.vertices().iter().map(|&v| v.dot(d)).collect();
    let eps = tol::GEOM;

    for (v, &p) in flat.iter().enumerate() {
        for e in 0..n {
            if e == v || (e + 1) % n == v {
                continue;
            }
            if point_segment_dist2d(p, flat[e], flat[(e + 1) % n]) <= eps {
                return None;
            }
        }
    }

    let mut out = Vec::new();
    let mut points = Vec::new();
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (a, b) = (flat[i], flat[(i + 1) % n]);
            let (c, e) = (flat[j], flat[(j + 1) % n]);
            let r = b - a;
            let s = e - c;
            let den = r.cross(s);
            if den.abs() <= eps * eps {
                continue;
            }
            let t = (c - a).cross(s) / den;
            let u = (c - a).cross(r) / den;
            if !(0.0 < t && t < 1.0 && 0.0 < u && u < 1.0) {
                continue;
            }
            let hi = height[i] + t * (height[(i + 1) % n] - height[i]);
            let hj = height[j] + u * (height[(j + 1) % n] - height[j]);
            if (hi - hj).abs() <= eps {
                return None;
            }
            let (pi, pj) = (i as f64 + t, j as f64 + u);
            let (over, under) = if hi > hj { (pi, pj) } else { (pj, pi) };
            out.push(Crossing { under, over });
            points.push(a + r * t);
        }
    }
    for x in 0..points.len() {
        for y in x + 1..points.len() {
            if points[x].dist(points[y]) <= eps {
                return None;
            }
        }
    }
    Some(out)
}

fn coloring_determinant(crossings: &[Crossing]) -> u64 {
    let c = crossings.len();
    if c < 2 {
        return 1;
    }
    let mut unders: Vec<f64> = crossings.iter().map(|x| x.under).collect();
    unders.sort_by(f64::total_cmp);
    // arc k runs from undercrossing k to undercrossing k + 1
    let arc_at = |pos: f64| match unders.iter().rposition(|&u| u < pos) {
        Some(k) => k,
        None => c - 1,
    };
    let mut m = vec![vec![BigInt::zero(); c]; c];
    for (row, x) in crossings.iter().enumerate() {
        let k = unders.iter().position(|&u| u == x.under).unwrap();
        let incoming = (k + c - 1) % c;
        m[row][arc_at(x.over)] += 2;
        m[row][incoming] -= 1;
        m[row][k] -= 1;
    }
    let minor: Vec<Vec<BigInt>> = m[1..].iter().map(|r| r[1..].to_vec()).collect();
    bareiss(minor).abs().to_u64().unwrap_or(u64::MAX)
}

fn bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::from(1);
    }
    a[n - 1][n - 1].clone() * sign
}
