//! Polygonal injectivity radius and thickness.
//!
//! Two independent routes are provided. [`injectivity_radius`] enumerates
//! doubly critical pairs with closed-form per-pair geometry;
//! [`radius_via_tc`] minimizes distance over pairs separated by more than
//! pi of total turning. The two agree on every polygon.

use std::f64::consts::PI;

use crate::geom::Point3;
use crate::polygon::{total_curvature_with, KnotPolygon, PointOnKnot};
use crate::tol;

/// Which primitives realize a doubly critical pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    VertexVertex,
    VertexEdge,
    EdgeEdge,
}

/// Two points of the knot, each a local extremum of distance to the other.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoublyCriticalPair {
    pub kind: PairKind,
    pub a: PointOnKnot,
    pub b: PointOnKnot,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThicknessReport {
    pub minrad: f64,
    pub minrad_vertex: usize,
    pub dcsd: Option<f64>,
    pub dcsd_pair: Option<DoublyCriticalPair>,
    pub injectivity_radius: f64,
    pub thickness: f64,
    pub arclength: f64,
}

/// Short-range radius: the minimum over vertices of `tan(interior / 2) / 2`.
/// Straight vertices impose no constraint and are skipped.
pub fn minrad(k: &KnotPolygon) -> (f64, usize) {
    let mut best = (f64::INFINITY, 0);
    for (i, theta) in k.interior_angles().into_iter().enumerate() {
        if PI - theta <= tol::ANGLE {
            continue;
        }
        let d = 0.5 * (0.5 * theta).tan();
        if d < best.0 {
            best = (d, i);
        }
    }
    best
}

/// Is `v` (vertex `j`) a local extremum of distance to `b` along the knot?
fn vertex_is_extremum(k: &KnotPolygon, j: usize, b: Point3) -> bool {
    let v = k.vertex(j as isize);
    let r = v - b;
    let d1 = r.dot(k.vertex(j as isize + 1) - v);
    let d2 = r.dot(k.vertex(j as isize - 1) - v);
    let slack = tol::EXTREMUM_SLACK;
    // a vanishing first derivative still increases distance at second order
    let is_min = d1 >= -slack && d2 >= -slack;
    let is_max = d1 < -slack && d2 < -slack;
    is_min || is_max
}

/// Visits every doubly critical pair. Adjacent edges, edges incident to a
/// vertex and coincident primitives are skipped.
fn visit_pairs(k: &KnotPolygon, mut visit: impl FnMut(DoublyCriticalPair)) {
    let n = k.len();
    let interior = |t: f64| t > 1e-12 && t < 1.0 - 1e-12;

    for i in 0..n {
        let vi = k.vertex(i as isize);
        for j in (i + 1)..n {
            let vj = k.vertex(j as isize);
            if vertex_is_extremum(k, i, vj) && vertex_is_extremum(k, j, vi) {
                visit(DoublyCriticalPair {
                    kind: PairKind::VertexVertex,
                    a: PointOnKnot::vertex(i),
                    b: PointOnKnot::vertex(j),
                    distance: vi.dist(vj),
                });
            }
        }
    }

    for j in 0..n {
        let v = k.vertex(j as isize);
        for e in 0..n {
            if e == j || (e + 1) % n == j {
                continue;
            }
            let (a, b) = k.edge(e);
            let u = b - a;
            let t = (v - a).dot(u) / u.norm_sq();
            if !interior(t) {
                continue;
            }
            let foot = a + u * t;
            if vertex_is_extremum(k, j, foot) {
                visit(DoublyCriticalPair {
                    kind: PairKind::VertexEdge,
                    a: PointOnKnot::vertex(j),
                    b: PointOnKnot::on_edge(e, t),
                    distance: v.dist(foot),
                });
            }
        }
    }

    for e in 0..n {
        for f in (e + 2)..n {
            if (f + 1) % n == e {
                continue;
            }
            let (a, b) = k.edge(e);
            let (c, d) = k.edge(f);
            let u = b - a;
            let v = d - c;
            let w = a - c;
            let uu = u.dot(u);
            let vv = v.dot(v);
            let uv = u.dot(v);
            let den = uu * vv - uv * uv;
            let (s, t) = if den > 1e-12 * uu * vv {
                let s = (uv * v.dot(w) - vv * u.dot(w)) / den;
                let t = (uu * v.dot(w) - uv * u.dot(w)) / den;
                (s, t)
            } else {
                // parallel edges: a whole interval of perpendicular pairs
                let t0 = (c - a).dot(u) / uu;
                let t1 = (d - a).dot(u) / uu;
                let lo = t0.min(t1).max(0.0);
                let hi = t0.max(t1).min(1.0);
                if hi - lo <= 1e-12 {
                    continue;
                }
                let s = 0.5 * (lo + hi);
                let p = a + u * s;
                (s, (p - c).dot(v) / vv)
            };
            if interior(s) && interior(t) {
                let p = a + u * s;
                let q = c + v * t;
                visit(DoublyCriticalPair {
                    kind: PairKind::EdgeEdge,
                    a: PointOnKnot::on_edge(e, s),
                    b: PointOnKnot::on_edge(f, t),
                    distance: p.dist(q),
                });
            }
        }
    }
}

/// All doubly critical pairs, sorted by distance.
pub fn doubly_critical_pairs(k: &KnotPolygon) -> Vec<DoublyCriticalPair> {
    let mut pairs = Vec::new();
    visit_pairs(k, |p| pairs.push(p));
    pairs.sort_by(|x, y| x.distance.total_cmp(&y.distance));
    pairs
}

pub fn injectivity_radius(k: &KnotPolygon) -> ThicknessReport {
    let (minrad, minrad_vertex) = minrad(k);
    let mut best: Option<DoublyCriticalPair> = None;
    visit_pairs(k, |p| {
        if best.is_none_or(|b| p.distance < b.distance) {
            best = Some(p);
        }
    });
    let dcsd = best.map(|p| p.distance);
    let injectivity_radius = match dcsd {
        Some(d) => minrad.min(0.5 * d),
        None => minrad,
    };
    let arclength = k.arclength();
    ThicknessReport {
        minrad,
        minrad_vertex,
        dcsd,
        dcsd_pair: best,
        injectivity_radius,
        thickness: injectivity_radius / arclength,
        arclength,
    }
}

/// Thickness (injectivity radius over arclength).
pub fn thickness(k: &KnotPolygon) -> f64 {
    injectivity_radius(k).thickness
}

#[derive(Debug, Clone, Copy)]
enum Primitive {
    Vertex(usize),
    Edge(usize),
}

impl Primitive {
    /// A point whose total-curvature class represents the whole primitive.
    fn representative(self) -> PointOnKnot {
        match self {
            Primitive::Vertex(i) => PointOnKnot::vertex(i),
            Primitive::Edge(e) => PointOnKnot::on_edge(e, 0.5),
        }
    }

    /// Point at parameter `s` of the primitive's closure.
    fn at(self, k: &KnotPolygon, s: f64) -> Point3 {
        match self {
            Primitive::Vertex(i) => k.vertex(i as isize),
            Primitive::Edge(e) => {
                let (a, b) = k.edge(e);
                a.lerp(b, s)
            }
        }
    }
}

fn golden_min(f: impl Fn(f64) -> f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > 1e-12 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    f1.min(f2).min(f(0.0)).min(f(1.0))
}

/// Distance from `p` to the closed primitive.
fn dist_to_closure(k: &KnotPolygon, p: Point3, q: Primitive) -> f64 {
    match q {
        Primitive::Vertex(j) => p.dist(k.vertex(j as isize)),
        Primitive::Edge(e) => {
            let (a, b) = k.edge(e);
            let u = b - a;
            let t = ((p - a).dot(u) / u.norm_sq()).clamp(0.0, 1.0);
            p.dist(a + u * t)
        }
    }
}

/// Injectivity radius through the total-curvature characterization:
/// `min(MinRad, min over tc(a, b) > pi of |a - b| / 2)`.
///
/// Total curvature is constant on each (vertex | open edge) pair of
/// primitives, so the region is a union of cells; the distance minimum over
/// each closed cell is found by golden-section search.
pub fn radius_via_tc(k: &KnotPolygon) -> f64 {
    let n = k.len();
    let turning = k.turning_angles();
    let prims: Vec<Primitive> = (0..n)
        .flat_map(|i| [Primitive::Vertex(i), Primitive::Edge(i)])
        .collect();
    let mut best = f64::INFINITY;
    for (x, &p) in prims.iter().enumerate() {
        for &q in &prims[x + 1..] {
            let tc = total_curvature_with(&turning, p.representative(), q.representative());
            if tc <= PI + tol::ANGLE {
                continue;
            }
            let d = match p {
                Primitive::Vertex(_) => dist_to_closure(k, p.at(k, 0.0), q),
                Primitive::Edge(_) => golden_min(|s| dist_to_closure(k, p.at(k, s), q)),
            };
            best = best.min(d);
        }
    }
    minrad(k).0.min(0.5 * best)
}

/// Checks that vertex pairs with total curvature exactly pi are at least
/// `2 MinRad` apart.
pub fn boundary_turning_check(k: &KnotPolygon) -> bool {
    let n = k.len();
    let turning = k.turning_angles();
    let (mr, _) = minrad(k);
    for i in 0..n {
        for j in (i + 1)..n {
            let tc = total_curvature_with(&turning, PointOnKnot::vertex(i), PointOnKnot::vertex(j));
            if (tc - PI).abs() <= tol::ANGLE
                && k.vertex(i as isize).dist(k.vertex(j as isize)) < 2.0 * mr - 1e-9
            {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::regular_polygon;

    fn square() -> KnotPolygon {
        regular_polygon(4).unwrap()
    }

    #[test]
    fn minrad_closed_forms() {
        assert!((minrad(&square()).0 - 0.5).abs() < 1e-15);
        let dec = regular_polygon(10).unwrap();
        let want = 0.5 * (2.0 * PI / 5.0).tan();
        assert!((minrad(&dec).0 - want).abs() < 1e-13);
        let tri = regular_polygon(3).unwrap();
        assert!((minrad(&tri).0 - 1.0 / (2.0 * 3f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn square_pairs() {
        let pairs = doubly_critical_pairs(&square());
        let near = |d: f64| pairs.iter().filter(|p| (p.distance - d).abs() < 1e-12).count();
        // opposite edge midpoints
        assert!(pairs
            .iter()
            .any(|p| p.kind == PairKind::EdgeEdge && (p.distance - 1.0).abs() < 1e-12));
        assert_eq!(
            pairs.iter().filter(|p| p.kind == PairKind::EdgeEdge).count(),
            2
        );
        assert_eq!(near(2f64.sqrt()), 2);
        let r = injectivity_radius(&square());
        assert!((r.minrad - 0.5).abs() < 1e-15);
        assert!((r.dcsd.unwrap() - 1.0).abs() < 1e-12);
        assert!((r.injectivity_radius - 0.5).abs() < 1e-12);
        assert!((r.thickness - 0.125).abs() < 1e-12);
    }

    #[test]
    fn hexagon_opposite_edges() {
        let pairs = doubly_critical_pairs(&regular_polygon(6).unwrap());
        let ee: Vec<_> = pairs.iter().filter(|p| p.kind == PairKind::EdgeEdge).collect();
        assert_eq!(ee.len(), 3);
        for p in ee {
            assert!((p.distance - 3f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn regular_decagon_thickness() {
        let r = injectivity_radius(&regular_polygon(10).unwrap());
        assert!((r.thickness - 0.153_884_176_858_763).abs() < 1e-12);
        assert!((r.thickness - 0.1539).abs() < 2e-4);
    }

    #[test]
    fn folded_polygon_has_zero_radius() {
        let s = 0.5f64.sqrt();
        let folded = KnotPolygon::new(vec![
            Point3::new(s, 0.0, 0.0),
            Point3::new(0.0, -s, 0.0),
            Point3::new(-s, 0.0, 0.0),
            Point3::new(0.0, -s, 0.0),
        ])
        .unwrap();
        assert!(injectivity_radius(&folded).injectivity_radius.abs() < 1e-9);
        assert!(radius_via_tc(&folded).abs() < 1e-9);
    }

    #[test]
    fn convex_planar_tc_route_is_minrad() {
        for n in 3..15 {
            let k = regular_polygon(n).unwrap();
            assert_eq!(radius_via_tc(&k), minrad(&k).0);
            let r = injectivity_radius(&k);
            assert!((r.injectivity_radius - r.minrad).abs() < 1e-12, "n = {n}");
            assert!(boundary_turning_check(&k));
        }
    }

    #[test]
    fn square_boundary_turning() {
        assert!(boundary_turning_check(&square()));
    }
}
