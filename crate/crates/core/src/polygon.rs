//! Equilateral polygonal knots and their angle geometry.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geom::{Point2, Point3};
use crate::tol;

/// Closed equilateral polygon in 3-space. Indices are cyclic.
///
/// Constructed through [`validate_polygon`] (or [`KnotPolygon::new`]), which
/// guarantees at least three vertices and unit edges within [`tol::EDGE`].
/// Embeddedness is *not* required: a self-intersecting polygon is a valid
/// knot of thickness zero.
#[derive(Debug, Clone, PartialEq)]
pub struct KnotPolygon {
    vertices: Vec<Point3>,
}

/// Result of [`validate_polygon`].
#[derive(Debug, Clone)]
pub struct Validated {
    pub polygon: KnotPolygon,
    pub embedded: bool,
}

pub fn validate_polygon(vertices: Vec<Point3>) -> Result<Validated> {
    let polygon = KnotPolygon::new(vertices)?;
    let embedded = polygon.is_embedded();
    Ok(Validated { polygon, embedded })
}

impl KnotPolygon {
    pub fn new(vertices: Vec<Point3>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::TooFewVertices { n });
        }
        if let Some(bad) = vertices.iter().position(|v| !v.is_finite()) {
            return Err(Error::EdgeLengthViolation {
                index: bad,
                deviation: f64::INFINITY,
            });
        }
        let polygon = Self { vertices };
        let (index, deviation) = polygon.max_edge_deviation();
        if deviation > tol::EDGE {
            return Err(Error::EdgeLengthViolation { index, deviation });
        }
        Ok(polygon)
    }

    /// Skips validation; used by isometric moves whose output is unit-edged
    /// up to rounding.
    pub(crate) fn from_vertices_unchecked(vertices: Vec<Point3>) -> Self {
        debug_assert!(vertices.len() >= 3);
        Self { vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Point3> {
        self.vertices
    }

    /// Vertex with cyclic indexing (any integer index).
    pub fn vertex(&self, i: isize) -> Point3 {
        self.vertices[self.wrap(i)]
    }

    pub fn wrap(&self, i: isize) -> usize {
        i.rem_euclid(self.len() as isize) as usize
    }

    /// Endpoints of edge `i`, i.e. `(v_i, v_{i+1})`.
    pub fn edge(&self, i: usize) -> (Point3, Point3) {
        let n = self.len();
        (self.vertices[i % n], self.vertices[(i + 1) % n])
    }

    pub fn point_at(&self, p: PointOnKnot) -> Point3 {
        let (a, b) = self.edge(p.edge);
        a.lerp(b, p.t)
    }

    /// Largest deviation of an edge length from 1, with its edge index.
    pub fn max_edge_deviation(&self) -> (usize, f64) {
        (0..self.len())
            .map(|i| {
                let (a, b) = self.edge(i);
                (i, (a.dist(b) - 1.0).abs())
            })
            .fold((0, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc })
    }

    /// Total arclength; equal to `n` for a valid polygon.
    pub fn arclength(&self) -> f64 {
        self.len() as f64
    }

    pub fn centroid(&self) -> Point3 {
        let sum = self.vertices.iter().fold(Point3::ZERO, |acc, &v| acc + v);
        sum / self.len() as f64
    }

    /// Orthogonal projection of the vertices to the x-y plane.
    pub fn projection(&self) -> Vec<Point2> {
        self.vertices.iter().map(|v| v.xy()).collect()
    }

    /// Applies `f` to every vertex. The caller promises `f` is an isometry.
    pub fn map_isometry(&self, f: impl Fn(Point3) -> Point3) -> Self {
        Self::from_vertices_unchecked(self.vertices.iter().map(|&v| f(v)).collect())
    }

    pub fn translated(&self, d: Point3) -> Self {
        self.map_isometry(|v| v + d)
    }

    /// Indices strictly inside the forward arc from `i` to `j`.
    pub fn arc_interior(&self, i: usize, j: usize) -> impl Iterator<Item = usize> {
        let n = self.len();
        let steps = (j + n - i) % n;
        (1..steps.max(1)).map(move |k| (i + k) % n)
    }

    /// True when no two non-adjacent edges meet and no two adjacent edges
    /// fold back onto each other.
    pub fn is_embedded(&self) -> bool {
        let n = self.len();
        for i in 0..n {
            let (a, b) = self.edge(i);
            let (c, d) = self.edge((i + 1) % n);
            // adjacent edges overlap only when the shared vertex has interior angle 0
            let u = a - b;
            let w = d - c;
            if u.cross(w).norm() <= tol::GEOM && u.dot(w) > 0.0 {
                return false;
            }
            for j in (i + 2)..n {
                if (j + 1) % n == i {
                    continue;
                }
                let (p, q) = self.edge(j);
                if segment_distance(a, b, p, q) <= tol::GEOM {
                    return false;
                }
            }
        }
        true
    }

    /// Interior and turning angle at vertex `i`.
    pub fn vertex_angles(&self, i: usize) -> Result<VertexAngles> {
        let v = self.vertex(i as isize);
        let a = self.vertex(i as isize + 1) - v;
        let b = self.vertex(i as isize - 1) - v;
        if a.norm() < tol::EDGE || b.norm() < tol::EDGE {
            return Err(Error::DegenerateAngle { index: i });
        }
        let interior = a.cross(b).norm().atan2(a.dot(b));
        Ok(VertexAngles {
            interior,
            turning: PI - interior,
            class: AngleClass::classify(interior, self.len()),
        })
    }

    /// Interior angles of all vertices; unit edges make them well defined.
    pub fn interior_angles(&self) -> Vec<f64> {
        (0..self.len())
            .map(|i| {
                let v = self.vertices[i];
                let a = self.vertex(i as isize + 1) - v;
                let b = self.vertex(i as isize - 1) - v;
                a.cross(b).norm().atan2(a.dot(b))
            })
            .collect()
    }

    pub fn turning_angles(&self) -> Vec<f64> {
        self.interior_angles().into_iter().map(|a| PI - a).collect()
    }
}

/// Closest distance between 3D segments `[a, b]` and `[c, d]`.
pub(crate) fn segment_distance(a: Point3, b: Point3, c: Point3, d: Point3) -> f64 {
    let (s, t) = closest_params(a, b, c, d);
    a.lerp(b, s).dist(c.lerp(d, t))
}

/// Parameters of a closest pair between two 3D segments (clamped).
pub(crate) fn closest_params(a: Point3, b: Point3, c: Point3, d: Point3) -> (f64, f64) {
    let u = b - a;
    let v = d - c;
    let w = a - c;
    let uu = u.dot(u);
    let vv = v.dot(v);
    let uv = u.dot(v);
    let uw = u.dot(w);
    let vw = v.dot(w);
    let den = uu * vv - uv * uv;
    let mut s = if den > 1e-14 * uu * vv {
        ((uv * vw - vv * uw) / den).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let mut t = if vv > 0.0 { ((uv * s + vw) / vv).clamp(0.0, 1.0) } else { 0.0 };
    if uu > 0.0 {
        s = ((uv * t - uw) / uu).clamp(0.0, 1.0);
    }
    if vv > 0.0 {
        t = ((uv * s + vw) / vv).clamp(0.0, 1.0);
    }
    (s, t)
}

/// Comparison of an interior angle with the regular value `pi (n - 2) / n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngleClass {
    Small,
    Regular,
    Large,
}

impl AngleClass {
    pub fn classify(interior: f64, n: usize) -> Self {
        let diff = interior - regular_angle(n);
        if diff > tol::ANGLE {
            AngleClass::Large
        } else if diff < -tol::ANGLE {
            AngleClass::Small
        } else {
            AngleClass::Regular
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VertexAngles {
    pub interior: f64,
    pub turning: f64,
    pub class: AngleClass,
}

/// Interior angle of the regular planar n-gon.
pub fn regular_angle(n: usize) -> f64 {
    PI * (n as f64 - 2.0) / n as f64
}

/// The regular planar n-gon with unit edges, centred at the origin in the
/// x-y plane, vertices counterclockwise starting on the positive x axis.
pub fn regular_polygon(n: usize) -> Result<KnotPolygon> {
    if n < 3 {
        return Err(Error::TooFewVertices { n });
    }
    let r = circumradius(n);
    let vertices = (0..n)
        .map(|k| {
            let a = 2.0 * PI * k as f64 / n as f64;
            Point3::new(r * a.cos(), r * a.sin(), 0.0)
        })
        .collect();
    KnotPolygon::new(vertices)
}

/// Circumradius `1 / (2 sin(pi / n))` of the unit-edge regular n-gon.
pub fn circumradius(n: usize) -> f64 {
    0.5 / (PI / n as f64).sin()
}

/// A point on the knot addressed by edge index and parameter; vertex `i`
/// is `(i, 0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointOnKnot {
    pub edge: usize,
    pub t: f64,
}

impl PointOnKnot {
    pub fn vertex(i: usize) -> Self {
        Self { edge: i, t: 0.0 }
    }

    pub fn on_edge(edge: usize, t: f64) -> Self {
        Self { edge, t }
    }

    pub fn is_vertex(&self) -> bool {
        self.t == 0.0
    }

    /// Canonical form: `t` in `[0, 1)` with `t = 1` rolled to the next vertex.
    fn normalize(self, n: usize) -> Result<Self> {
        if self.edge >= n || !(0.0..=1.0).contains(&self.t) {
            return Err(Error::PointNotOnKnot(format!(
                "edge {} t {} (n = {n})",
                self.edge, self.t
            )));
        }
        Ok(if self.t == 1.0 {
            Self::vertex((self.edge + 1) % n)
        } else {
            self
        })
    }
}

/// Forward/backward sub-arcs between two points of the knot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArcSpan {
    pub start: usize,
    pub end: usize,
}

impl ArcSpan {
    /// Vertex indices of `{v_start, ..., v_end}` traversed forward.
    pub fn indices(&self, n: usize) -> Vec<usize> {
        let len = (self.end + n - self.start) % n;
        (0..=len).map(|k| (self.start + k) % n).collect()
    }

    pub fn complement(&self) -> Self {
        Self {
            start: self.end,
            end: self.start,
        }
    }
}

/// Minimum over the two connecting arcs of the summed turning angles of the
/// vertices on the arc, endpoints included when they are vertices. The
/// empty arc (`a == b`) has curvature 0.
pub fn total_curvature(k: &KnotPolygon, a: PointOnKnot, b: PointOnKnot) -> Result<f64> {
    let n = k.len();
    let a = a.normalize(n)?;
    let b = b.normalize(n)?;
    if a == b {
        return Ok(0.0);
    }
    let turning = k.turning_angles();
    Ok(total_curvature_with(&turning, a, b))
}

/// Core of [`total_curvature`] given precomputed turning angles and
/// normalized addresses.
pub(crate) fn total_curvature_with(turning: &[f64], a: PointOnKnot, b: PointOnKnot) -> f64 {
    let forward = arc_turning(turning, a, b);
    let backward = arc_turning(turning, b, a);
    forward.min(backward)
}

fn arc_turning(turning: &[f64], from: PointOnKnot, to: PointOnKnot) -> f64 {
    let n = turning.len();
    // first vertex at or after `from`
    let first = if from.is_vertex() {
        from.edge
    } else {
        (from.edge + 1) % n
    };
    let pos = |p: PointOnKnot| p.edge as f64 + p.t;
    let mut span = pos(to) - pos(from);
    if span <= 0.0 {
        span += n as f64;
    }
    let offset = if from.is_vertex() { 0.0 } else { 1.0 - from.t };
    let mut sum = 0.0;
    let mut k = 0usize;
    while offset + k as f64 <= span + 1e-15 && k < n + 1 {
        sum += turning[(first + k) % n];
        k += 1;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> KnotPolygon {
        KnotPolygon::new(vec![
            Point3::new(0.0, 0.0, 0.0),
            Point3::new(1.0, 0.0, 0.0),
            Point3::new(1.0, 1.0, 0.0),
            Point3::new(0.0, 1.0, 0.0),
        ])
        .unwrap()
    }

    #[test]
    fn unit_square_is_valid_and_embedded() {
        let v = validate_polygon(square().into_vertices()).unwrap();
        assert!(v.embedded);
    }

    #[test]
    fn stretched_edge_is_rejected() {
        let mut verts = square().into_vertices();
        verts[1] = Point3::new(1.1, 0.0, 0.0);
        match validate_polygon(verts) {
            Err(Error::EdgeLengthViolation { deviation, .. }) => assert!(deviation > 0.09),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn too_few_vertices() {
        assert!(matches!(
            validate_polygon(vec![Point3::ZERO, Point3::X]),
            Err(Error::TooFewVertices { n: 2 })
        ));
        assert!(matches!(regular_polygon(2), Err(Error::TooFewVertices { .. })));
    }

    #[test]
    fn folded_planar_quadrilateral_is_not_embedded() {
        // planar equilateral 4-gons are rhombi or fold back onto themselves;
        // here v3 = v1 so edges 0 and 3 coincide
        let a = 1.0f64;
        let verts = vec![
            Point3::new(0.0, 0.0, 0.0),
            Point3::new(1.0, 0.0, 0.0),
            Point3::new(1.0 + a.cos(), a.sin(), 0.0),
            Point3::new(1.0, 0.0, 0.0),
        ];
        let v = validate_polygon(verts).unwrap();
        assert!(!v.embedded);
    }

    #[test]
    fn regular_polygon_geometry() {
        let sq = regular_polygon(4).unwrap();
        for v in sq.vertices() {
            assert!((v.norm() - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        }
        let tri = regular_polygon(3).unwrap();
        for i in 0..3 {
            let (a, b) = tri.edge(i);
            assert!((a.dist(b) - 1.0).abs() < 1e-15);
        }
        let dec = regular_polygon(10).unwrap();
        for i in 0..10 {
            let a = dec.vertex_angles(i).unwrap();
            assert!((a.interior - 4.0 * PI / 5.0).abs() < 1e-13);
            assert_eq!(a.class, AngleClass::Regular);
        }
        assert!(dec.centroid().norm() < 1e-14);
    }

    #[test]
    fn square_angles() {
        let sq = square();
        for i in 0..4 {
            let a = sq.vertex_angles(i).unwrap();
            assert!((a.interior - PI / 2.0).abs() < 1e-15);
            assert!((a.turning - PI / 2.0).abs() < 1e-15);
        }
    }

    #[test]
    fn straight_vertex_has_interior_pi() {
        // hexagon with a straight vertex at index 1: a 2x1 rectangle-ish loop
        let k = KnotPolygon::new(vec![
            Point3::new(0.0, 0.0, 0.0),
            Point3::new(1.0, 0.0, 0.0),
            Point3::new(2.0, 0.0, 0.0),
            Point3::new(2.0, 1.0, 0.0),
            Point3::new(1.0, 1.0, 0.0),
            Point3::new(0.0, 1.0, 0.0),
        ])
        .unwrap();
        let a = k.vertex_angles(1).unwrap();
        assert!((a.interior - PI).abs() < 1e-15);
        assert!(a.turning.abs() < 1e-15);
    }

    #[test]
    fn total_curvature_examples() {
        let sq = square();
        let tc = total_curvature(&sq, PointOnKnot::vertex(0), PointOnKnot::vertex(1)).unwrap();
        assert!((tc - PI).abs() < 1e-14);
        let same = total_curvature(&sq, PointOnKnot::vertex(2), PointOnKnot::vertex(2)).unwrap();
        assert_eq!(same, 0.0);
        let hex = regular_polygon(6).unwrap();
        let tc = total_curvature(&hex, PointOnKnot::on_edge(0, 0.5), PointOnKnot::on_edge(3, 0.5))
            .unwrap();
        assert!((tc - PI).abs() < 1e-14);
        assert!(total_curvature(&hex, PointOnKnot::on_edge(7, 0.5), PointOnKnot::vertex(0)).is_err());
    }

    #[test]
    fn arc_interior_wraps() {
        let k = regular_polygon(6).unwrap();
        assert_eq!(k.arc_interior(4, 1).collect::<Vec<_>>(), vec![5, 0]);
        assert_eq!(k.arc_interior(1, 2).count(), 0);
        assert_eq!(ArcSpan { start: 4, end: 1 }.indices(6), vec![4, 5, 0, 1]);
    }
}
