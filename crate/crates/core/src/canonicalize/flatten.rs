use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result, Stage};
use crate::geom::Point3;
use crate::polygon::KnotPolygon;
use crate::tol;

use super::{
    expose_projection, is_convex_projection, pushout_move, CanonicalizationTrace, Move, StageKind,
};

fn lowest(k: &KnotPolygon) -> (f64, Vec<usize>) {
    let zmin = k.vertices().iter().map(|v| v.z).fold(f64::INFINITY, f64::min);
    let low = (0..k.len())
        .filter(|&i| k.vertex(i as isize).z <= zmin + tol::FLAT)
        .collect();
    (zmin, low)
}

/// Rotation taking a planar but tilted knot to a horizontal plane.
fn level_plane(k: &KnotPolygon) -> Option<Move> {
    if lowest(k).1.len() == k.len() {
        return None;
    }
    // Newell's normal
    let n = k.len();
    let mut normal = Point3::ZERO;
    for i in 0..n {
        let (a, b) = (k.vertex(i as isize), k.vertex(i as isize + 1));
        normal += Point3::new(
            (a.y - b.y) * (a.z + b.z),
            (a.z - b.z) * (a.x + b.x),
            (a.x - b.x) * (a.y + b.y),
        );
    }
    let mut normal = normal.normalized()?;
    if normal.z < 0.0 {
        normal = normal * -1.0;
    }
    let c = k.centroid();
    if k.vertices().iter().any(|&v| (v - c).dot(normal).abs() > tol::FLAT) {
        return None;
    }
    let axis = normal.cross(Point3::Z);
    Some(Move::Rigid {
        point: c,
        axis: axis.normalized()?,
        angle: axis.norm().atan2(normal.z),
    })
}

/// Expose and push out until the shadow is convex.
fn convexify(k: &KnotPolygon, trace: &mut CanonicalizationTrace) -> Result<KnotPolygon> {
    let n = k.len();
    let cap = 10 * n * n;
    let mut cur = k.clone();
    for _ in 0..cap {
        let (exposed, t) = expose_projection(&cur)?;
        trace.extend(t);
        cur = exposed;
        if is_convex_projection(&cur) {
            return Ok(cur);
        }
        let p = pushout_move(&cur)?;
        trace.push(StageKind::Pushout, p.mv, p.after.clone());
        cur = p.after;
    }
    Err(Error::PipelineStall {
        stage: Stage::Pushout,
        iterations: cap,
        detail: "shadow not convex after the iteration cap".into(),
    })
}

/// Rigid rotation about a horizontal axis through the single lowest
/// vertex, stopping when a second vertex comes down to its height.
fn rigid_step(k: &KnotPolygon, m: usize) -> Option<Move> {
    let pivot = k.vertex(m as isize);
    let rel: Vec<Point3> = (0..k.len())
        .filter(|&i| i != m)
        .map(|i| k.vertex(i as isize) - pivot)
        .collect();
    let mut best: Option<(f64, Point3)> = None;
    for r in &rel {
        let h = Point3::new(r.x, r.y, 0.0);
        let Some(h) = h.normalized() else { continue };
        let axis = Point3::Z.cross(h);
        // each height is A cos(phi) + B sin(phi) with A > 0
        let stop = rel
            .iter()
            .map(|s| {
                let a = s.z;
                let b = axis.cross(*s).z;
                b.atan2(a) + FRAC_PI_2
            })
            .fold(f64::INFINITY, f64::min);
        if stop > 0.0 && best.is_none_or(|(s, _)| stop < s) {
            best = Some((stop, axis));
        }
    }
    best.map(|(angle, axis)| Move::Rigid {
        point: pivot,
        axis,
        angle,
    })
}

/// Rotates the arc between two consecutive lowest vertices down about
/// their common horizontal axis until one of its vertices touches down.
fn arc_step(k: &KnotPolygon, low: &[usize]) -> Result<Option<Move>> {
    let is_low = |i: usize| low.contains(&i);
    for (t, &a) in low.iter().enumerate() {
        let b = low[(t + 1) % low.len()];
        let interior: Vec<usize> = k.arc_interior(a, b).collect();
        if interior.is_empty() || interior.iter().any(|&x| is_low(x)) {
            continue;
        }
        let va = k.vertex(a as isize);
        let vb = k.vertex(b as isize);
        let Some(u) = (vb - va).normalized() else { continue };
        let perp = Point3::Z.cross(u);
        // o points from the axis toward the shadow of the moving arc
        let lean: f64 = interior.iter().map(|&x| (k.vertex(x as isize) - va).dot(perp)).sum();
        let lean = if lean.abs() > tol::GEOM {
            lean
        } else {
            -k.arc_interior(b, a).map(|x| (k.vertex(x as isize) - va).dot(perp)).sum::<f64>()
        };
        let o = if lean >= 0.0 { perp } else { -perp };
        let angle_of = |x: usize| {
            let r = k.vertex(x as isize) - va;
            r.dot(Point3::Z).atan2(r.dot(o))
        };
        let theta = interior.iter().map(|&x| angle_of(x)).fold(f64::INFINITY, f64::min);
        if !(theta > 0.0) {
            continue;
        }
        // safety window: the fixed arc must sit on the far side of the vertical plane
        for x in k.arc_interior(b, a) {
            if angle_of(x) < FRAC_PI_2 - 1e-9 && !is_low(x) {
                return Err(Error::PipelineStall {
                    stage: Stage::Flatten,
                    iterations: 0,
                    detail: format!("vertex {x} of the fixed arc is inside the rotation window"),
                });
            }
        }
        let s = u.cross(o).z;
        return Ok(Some(Move::ArcRotation {
            i: a,
            j: b,
            phi: -s * theta,
        }));
    }
    Ok(None)
}

/// Makes the knot planar and horizontal with a convex shadow, raising the
/// number of lowest vertices at each rotation step. The result lies in the
/// plane z = 0.
pub fn flatten(k: &KnotPolygon) -> Result<(KnotPolygon, CanonicalizationTrace)> {
    let n = k.len();
    let cap = 10 * n * n;
    let mut trace = CanonicalizationTrace::new(k.clone());
    let mut cur = k.clone();
    if let Some(mv) = level_plane(&cur) {
        cur = mv.apply(&cur)?;
        trace.push(StageKind::RigidMotion, mv, cur.clone());
    }
    for _ in 0..cap {
        cur = convexify(&cur, &mut trace)?;
        let (zmin, low) = lowest(&cur);
        if low.len() == n {
            if zmin != 0.0 {
                let mv = Move::Translation(Point3::new(0.0, 0.0, -zmin));
                cur = mv.apply(&cur)?;
                trace.push(StageKind::RigidMotion, mv, cur.clone());
            }
            return Ok((cur, trace));
        }
        let (stage, mv) = if low.len() == 1 {
            let mv = rigid_step(&cur, low[0]).ok_or_else(|| Error::PipelineStall {
                stage: Stage::Flatten,
                iterations: trace.len(),
                detail: "no rigid rotation lowers a second vertex".into(),
            })?;
            (StageKind::FlattenRigid, mv)
        } else {
            let mv = arc_step(&cur, &low)?.ok_or_else(|| Error::PipelineStall {
                stage: Stage::Flatten,
                iterations: trace.len(),
                detail: "no lowest pair bounds a raised arc".into(),
            })?;
            (StageKind::FlattenRotate, mv)
        };
        let next = mv.apply(&cur)?;
        trace.push(stage, mv, next.clone());
        cur = next;
    }
    Err(Error::PipelineStall {
        stage: Stage::Flatten,
        iterations: cap,
        detail: "knot not flat after the iteration cap".into(),
    })
}
