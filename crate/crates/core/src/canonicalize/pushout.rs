use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result, Stage};
use crate::geom::{Point2, Point3};
use crate::hull::{convex_hull_2d, PointLocation};
use crate::moves::{apply_reflection, axis_frame, ReflectionMove};
use crate::polygon::KnotPolygon;
use crate::tol;

use super::{incidence, is_exposed, Move};

/// Result of [`pushout_move`]: the move and the polygon it produces.
#[derive(Debug, Clone)]
pub struct PushoutMove {
    pub mv: Move,
    pub after: KnotPolygon,
}

fn min_height_set(k: &KnotPolygon) -> (f64, Vec<usize>) {
    let zmin = k.vertices().iter().map(|v| v.z).fold(f64::INFINITY, f64::min);
    let set = (0..k.len())
        .filter(|&i| k.vertex(i as isize).z <= zmin + tol::FLAT)
        .collect();
    (zmin, set)
}

/// A move that strictly lowers the incidence of an exposed but not convex
/// shadow, keeping the lowest vertices where they are. A knot whose shadow
/// has empty interior is turned on its side instead.
pub fn pushout_move(k: &KnotPolygon) -> Result<PushoutMove> {
    let n = k.len();
    let shadow = k.projection();
    let hull = convex_hull_2d(&shadow);

    if hull.is_subdimensional() {
        let dir = if hull.len() == 2 {
            let (a, b) = hull.edge(0);
            let d = (b - a).normalized().unwrap_or(Point2::new(1.0, 0.0));
            Point3::new(d.x, d.y, 0.0)
        } else {
            Point3::X
        };
        let mv = Move::Rigid {
            point: k.centroid(),
            axis: dir,
            angle: FRAC_PI_2,
        };
        let after = mv.apply(k)?;
        return Ok(PushoutMove { mv, after });
    }

    let before = incidence(k);
    if before == 0 && is_exposed(k) {
        return Err(Error::NotApplicable("shadow is already convex".into()));
    }
    let (zmin, low) = min_height_set(k);

    let m = hull.len();
    for e in 0..m {
        let (a, b) = hull.edge(e);
        let dir2 = (b - a).normalized().expect("hull edges have positive length");
        let on_edge: Vec<bool> = (0..n)
            .map(|i| match hull.location(i) {
                PointLocation::Vertex(v) => v == e || v == (e + 1) % m,
                PointLocation::Edge(f) => f == e,
                PointLocation::Interior => false,
            })
            .collect();
        for run in cyclic_runs(&on_edge) {
            if run.len() < 3 {
                continue;
            }
            let strip: Vec<Point2> = run
                .iter()
                .map(|&i| Point2::new((shadow[i] - a).dot(dir2), k.vertex(i as isize).z))
                .collect();
            let outward = hull.edge_normal(e);
            let inward = Point3::new(-outward.x, -outward.y, 0.0);
            for (p, q) in support_pairs(&strip) {
                let (i, j) = (run[p], run[q]);
                if let Some(res) = tilt_candidate(k, i, j, inward, before, zmin, &low) {
                    return Ok(res);
                }
            }
        }
    }
    Err(Error::PipelineStall {
        stage: Stage::Pushout,
        iterations: 0,
        detail: format!("no incidence-reducing pushout found (incidence {before})"),
    })
}

/// Maximal cyclic runs of `true`, each in forward order.
fn cyclic_runs(flags: &[bool]) -> Vec<Vec<usize>> {
    let n = flags.len();
    if flags.iter().all(|&f| f) {
        return vec![(0..n).collect()];
    }
    let start = (0..n).find(|&i| !flags[i]).expect("some flag is false");
    let mut runs = Vec::new();
    let mut cur = Vec::new();
    for s in 1..=n {
        let i = (start + s) % n;
        if flags[i] {
            cur.push(i);
        } else if !cur.is_empty() {
            runs.push(std::mem::take(&mut cur));
        }
    }
    if !cur.is_empty() {
        runs.push(cur);
    }
    runs
}

/// Index pairs `(p, q)`, `q >= p + 2`, of strip points on a common lower
/// or upper hull line of the strip with every point strictly between them
/// off that line.
fn support_pairs(strip: &[Point2]) -> Vec<(usize, usize)> {
    let hull = convex_hull_2d(strip);
    if hull.is_subdimensional() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for e in 0..hull.edge_count() {
        let normal = hull.edge_normal(e);
        // only lower and upper supporting lines; vertical ones are the hull corners
        if normal.y.abs() <= tol::GEOM {
            continue;
        }
        let m = hull.len();
        let on: Vec<usize> = (0..strip.len())
            .filter(|&i| match hull.location(i) {
                PointLocation::Vertex(v) => v == e || v == (e + 1) % m,
                PointLocation::Edge(f) => f == e,
                PointLocation::Interior => false,
            })
            .collect();
        for w in on.windows(2) {
            if w[1] >= w[0] + 2 {
                out.push((w[0], w[1]));
            }
        }
    }
    out
}

/// Reflects the arc from `v_i` to `v_j` across the plane through their
/// line tilted by a small angle from the strip plane, if that keeps the
/// lowest vertices and lowers the incidence.
fn tilt_candidate(
    k: &KnotPolygon,
    i: usize,
    j: usize,
    inward: Point3,
    before: usize,
    zmin: f64,
    low: &[usize],
) -> Option<PushoutMove> {
    let vi = k.vertex(i as isize);
    let vj = k.vertex(j as isize);
    let l = (vj - vi).normalized()?;
    // in-strip normal of the line, pointing away from the arc
    let mut d0 = (Point3::Z - l * Point3::Z.dot(l)).normalized()?;
    let arc: Vec<usize> = k.arc_interior(i, j).collect();
    let side: f64 = arc.iter().map(|&x| (k.vertex(x as isize) - vi).dot(d0)).sum();
    if side > 0.0 {
        d0 = -d0;
    }
    let d_n = (inward - l * inward.dot(l)).normalized()?;

    let mut theta_min = f64::INFINITY;
    for x in 0..k.len() {
        let r = k.vertex(x as isize) - vi;
        let r = r - l * r.dot(l);
        if r.norm() <= tol::GEOM {
            continue;
        }
        let mut ang = r.dot(d_n).atan2(r.dot(d0));
        if ang < -FRAC_PI_2 {
            ang += 2.0 * std::f64::consts::PI;
        }
        theta_min = theta_min.min(ang.max(0.0));
    }
    if !(theta_min > tol::ANGLE) || !theta_min.is_finite() {
        return None;
    }

    let (b1, b2, _) = axis_frame(vi, vj)?;
    let mut eps = 0.5 * theta_min;
    for _ in 0..60 {
        let normal = d_n * eps.cos() - d0 * eps.sin();
        let m = ReflectionMove::new(i, j, normal.dot(b2).atan2(normal.dot(b1)));
        let after = apply_reflection(k, &m).ok()?;
        let (zmin_after, low_after) = min_height_set(&after);
        if (zmin_after - zmin).abs() <= tol::FLAT && low_after == low {
            if incidence(&after) < before {
                return Some(PushoutMove {
                    mv: Move::Reflection(m),
                    after,
                });
            }
            return None;
        }
        eps *= 0.5;
    }
    None
}
