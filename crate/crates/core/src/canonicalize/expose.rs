use crate::error::{Error, Result, Stage};
use crate::geom::{Point2, Point3};
use crate::hull::{convex_hull_2d, Hull2D, PointLocation};
use crate::moves::{apply_reflection, axis_frame, ReflectionMove};
use crate::polygon::KnotPolygon;
use crate::tol;

use super::{mu, CanonicalizationTrace, Move, StageKind};

/// Hull vertex a shadow point sits on, if any.
fn hull_vertex_of(h: &Hull2D, i: usize) -> Option<usize> {
    match h.location(i) {
        PointLocation::Vertex(k) => Some(k),
        _ => None,
    }
}

/// Hull edges whose closed segment contains the shadow point.
fn hull_edges_at(h: &Hull2D, i: usize) -> [Option<usize>; 2] {
    let m = h.edge_count();
    match h.location(i) {
        PointLocation::Vertex(_) if m == 0 => [None, None],
        PointLocation::Vertex(k) if m == 1 => [Some(0), None].map(|e| e.filter(|_| k < 2)),
        PointLocation::Vertex(k) => [Some((k + m - 1) % m), Some(k)],
        PointLocation::Edge(f) => [Some(f), None],
        PointLocation::Interior => [None, None],
    }
}

/// The whole shadow (edges included) lies on the hull boundary and every
/// hull vertex has a cyclically contiguous preimage.
pub fn is_exposed(k: &KnotPolygon) -> bool {
    let n = k.len();
    let h = convex_hull_2d(&k.projection());
    if (0..n).any(|i| !h.on_boundary(i)) {
        return false;
    }
    if h.edge_count() > 1 {
        for i in 0..n {
            let j = (i + 1) % n;
            let same_vertex = matches!(
                (h.location(i), h.location(j)),
                (PointLocation::Vertex(a), PointLocation::Vertex(b)) if a == b
            );
            let (a, b) = (hull_edges_at(&h, i), hull_edges_at(&h, j));
            let shared = a.iter().flatten().any(|e| b.contains(&Some(*e)));
            if !same_vertex && !shared {
                return false;
            }
        }
    }
    for hv in 0..h.len() {
        let members: Vec<bool> = (0..n).map(|i| hull_vertex_of(&h, i) == Some(hv)).collect();
        // contiguous iff the membership flag changes at most twice around the cycle
        let changes = (0..n).filter(|&i| members[i] != members[(i + 1) % n]).count();
        if changes > 2 {
            return false;
        }
    }
    true
}

/// Shadow vertices where the projected path reverses direction.
pub fn reversal_count(k: &KnotPolygon) -> usize {
    let p = k.projection();
    let n = p.len();
    (0..n)
        .filter(|&i| {
            let a = p[(i + n - 1) % n] - p[i];
            let b = p[(i + 1) % n] - p[i];
            let (na, nb) = (a.norm(), b.norm());
            na > tol::GEOM
                && nb > tol::GEOM
                && (a.cross(b) / (na * nb)).abs() <= tol::GEOM
                && a.dot(b) > 0.0
        })
        .count()
}

/// A vertical supporting plane of the shadow hull: unit outward normal and
/// the knot vertices lying on it.
struct SupportLine {
    normal: Point2,
    on_line: Vec<bool>,
}

fn support_lines(h: &Hull2D, n: usize) -> Vec<SupportLine> {
    let m = h.len();
    let mut lines = Vec::new();
    for e in 0..h.edge_count() {
        let on_line = (0..n)
            .map(|i| match h.location(i) {
                PointLocation::Vertex(v) => v == e || v == (e + 1) % m,
                PointLocation::Edge(f) => f == e,
                PointLocation::Interior => false,
            })
            .collect();
        lines.push(SupportLine {
            normal: h.edge_normal(e),
            on_line,
        });
        if m == 2 {
            // both sides of a segment hull support it
            let on_line = lines[0].on_line.clone();
            lines.push(SupportLine {
                normal: h.edge_normal(e) * -1.0,
                on_line,
            });
        }
    }
    for v in 0..m {
        let on_line: Vec<bool> = (0..n).map(|i| hull_vertex_of(h, i) == Some(v)).collect();
        if on_line.iter().filter(|&&b| b).count() >= 2 {
            lines.push(SupportLine {
                normal: h.vertex_normal(v),
                on_line,
            });
        }
    }
    lines
}

/// Reflection across the vertical plane through `v_i`, `v_j` with the
/// given horizontal normal, expressed in the canonical plane frame.
fn vertical_move(k: &KnotPolygon, i: usize, j: usize, normal: Point2) -> Option<ReflectionMove> {
    let (b1, b2, _) = axis_frame(k.vertex(i as isize), k.vertex(j as isize))?;
    let nu = Point3::new(normal.x, normal.y, 0.0);
    Some(ReflectionMove::new(i, j, nu.dot(b2).atan2(nu.dot(b1))))
}

/// A reflection across a vertical supporting plane through an edge pair
/// of the shadow hull, or `None` once the shadow is exposed.
///
/// Moves that reduce the number of shadow reversals win; otherwise the
/// largest resulting `mu`. Ties go to the smallest `(i, j)`.
pub fn find_edge_pair_move(k: &KnotPolygon) -> Option<ReflectionMove> {
    if is_exposed(k) {
        return None;
    }
    let n = k.len();
    let h = convex_hull_2d(&k.projection());
    let reversals = reversal_count(k);
    // (reduces reversals, mu, move)
    let mut best: Option<(bool, f64, (usize, usize), ReflectionMove)> = None;
    for line in support_lines(&h, n) {
        for i in 0..n {
            if !line.on_line[i] {
                continue;
            }
            for j in 0..n {
                if j == i || !line.on_line[j] {
                    continue;
                }
                let forward_off = k.arc_interior(i, j).any(|x| !line.on_line[x]);
                let backward_off = k.arc_interior(j, i).any(|x| !line.on_line[x]);
                if !forward_off || !backward_off {
                    continue;
                }
                let Some(m) = vertical_move(k, i, j, line.normal) else {
                    continue;
                };
                let Ok(after) = apply_reflection(k, &m) else {
                    continue;
                };
                let reduces = reversal_count(&after) < reversals;
                let value = mu(&after);
                let better = match &best {
                    None => true,
                    Some((r, v, key, _)) => {
                        (reduces && !r)
                            || (reduces == *r && value > *v + tol::PROGRESS)
                            || (reduces == *r
                                && (value - *v).abs() <= tol::PROGRESS
                                && (i, j) < *key)
                    }
                };
                if better {
                    best = Some((reduces, value, (i, j), m));
                }
            }
        }
    }
    best.map(|b| b.3)
}

/// Applies edge-pair reflections until the shadow is exposed. Heights are
/// untouched.
pub fn expose_projection(k: &KnotPolygon) -> Result<(KnotPolygon, CanonicalizationTrace)> {
    let n = k.len();
    let cap = 10 * n * n;
    let mut trace = CanonicalizationTrace::new(k.clone());
    let mut cur = k.clone();
    let mut value = mu(&cur);
    for _ in 0..cap {
        let Some(m) = find_edge_pair_move(&cur) else {
            return Ok((cur, trace));
        };
        let next = apply_reflection(&cur, &m)?;
        let next_value = mu(&next);
        if next_value - value < tol::PROGRESS {
            return Err(Error::PipelineStall {
                stage: Stage::Expose,
                iterations: trace.len(),
                detail: format!("mu gain {:e} below progress threshold", next_value - value),
            });
        }
        value = next_value;
        trace.push(StageKind::ExposeProjection, Move::Reflection(m), next.clone());
        cur = next;
    }
    Err(Error::PipelineStall {
        stage: Stage::Expose,
        iterations: cap,
        detail: "iteration cap reached before the shadow was exposed".into(),
    })
}
