//! Planar convex hulls with an explicit collinearity band.

use crate::geom::{orient2d, point_segment_dist2d, Point2};
use crate::tol;

/// Where an input point sits relative to the hull.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointLocation {
    /// Coincides (within the band) with hull vertex `k`.
    Vertex(usize),
    /// On the relative interior of hull edge `k` (from vertex `k` to `k + 1`).
    Edge(usize),
    Interior,
}

/// Counterclockwise, strictly convex hull of a planar point set.
#[derive(Debug, Clone)]
pub struct Hull2D {
    vertices: Vec<Point2>,
    vertex_index: Vec<usize>,
    location: Vec<PointLocation>,
}

impl Hull2D {
    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    /// Input index chosen as representative of each hull vertex.
    pub fn vertex_indices(&self) -> &[usize] {
        &self.vertex_index
    }

    pub fn location(&self, input: usize) -> PointLocation {
        self.location[input]
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Hull with empty interior (a point or a segment).
    pub fn is_subdimensional(&self) -> bool {
        self.vertices.len() <= 2
    }

    /// Input points lying on a hull edge but not at a hull vertex.
    pub fn boundary_points(&self) -> Vec<usize> {
        (0..self.location.len())
            .filter(|&i| matches!(self.location[i], PointLocation::Edge(_)))
            .collect()
    }

    pub fn on_boundary(&self, input: usize) -> bool {
        !matches!(self.location[input], PointLocation::Interior)
    }

    /// Edge `k` as `(start, end)`.
    pub fn edge(&self, k: usize) -> (Point2, Point2) {
        let m = self.vertices.len();
        (self.vertices[k % m], self.vertices[(k + 1) % m])
    }

    /// Number of edges (0 for a single point, 1 for a segment).
    pub fn edge_count(&self) -> usize {
        match self.vertices.len() {
            0 | 1 => 0,
            2 => 1,
            m => m,
        }
    }

    /// Unit outward normal of edge `k`. For a segment hull edge 0 has
    /// the normal on its left.
    pub fn edge_normal(&self, k: usize) -> Point2 {
        let (a, b) = self.edge(k);
        let d = (b - a).normalized().unwrap_or(Point2::new(1.0, 0.0));
        Point2::new(d.y, -d.x)
    }

    /// A unit normal in the interior of the normal cone at vertex `k`.
    pub fn vertex_normal(&self, k: usize) -> Point2 {
        let m = self.vertices.len();
        match m {
            0 | 1 => Point2::new(1.0, 0.0),
            2 => {
                let other = self.vertices[1 - k];
                (self.vertices[k] - other)
                    .normalized()
                    .unwrap_or(Point2::new(1.0, 0.0))
            }
            _ => {
                let n1 = self.edge_normal((k + m - 1) % m);
                let n2 = self.edge_normal(k);
                (n1 + n2).normalized().unwrap_or(n2)
            }
        }
    }
}

/// Convex hull by Andrew's monotone chain. Ties are broken by
/// `(x, y, input index)`; points within [`tol::GEOM`] of a hull edge are
/// reported as boundary points rather than hull vertices.
pub fn convex_hull_2d(points: &[Point2]) -> Hull2D {
    assert!(!points.is_empty(), "convex hull of an empty point set");
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        let (p, q) = (points[a], points[b]);
        p.x.total_cmp(&q.x)
            .then(p.y.total_cmp(&q.y))
            .then(a.cmp(&b))
    });

    let pops = |chain: &[usize], p: usize| -> bool {
        let a = points[chain[chain.len() - 2]];
        let b = points[chain[chain.len() - 1]];
        let c = points[p];
        let base = (c - a).norm();
        base <= tol::GEOM || orient2d(a, b, c) <= tol::GEOM * base
    };

    let mut lower: Vec<usize> = Vec::new();
    for &i in &order {
        if let Some(&last) = lower.last() {
            if points[last].dist(points[i]) <= tol::GEOM {
                continue;
            }
        }
        while lower.len() >= 2 && pops(&lower, i) {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in order.iter().rev() {
        if let Some(&last) = upper.last() {
            if points[last].dist(points[i]) <= tol::GEOM {
                continue;
            }
        }
        while upper.len() >= 2 && pops(&upper, i) {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    let mut chain = lower;
    chain.extend(upper);
    if chain.is_empty() {
        chain.push(order[0]);
    }
    // collapse representatives that coincide within the band
    let mut vertex_index: Vec<usize> = Vec::with_capacity(chain.len());
    for i in chain {
        if vertex_index
            .iter()
            .all(|&j| points[j].dist(points[i]) > tol::GEOM)
        {
            vertex_index.push(i);
        }
    }
    let vertices: Vec<Point2> = vertex_index.iter().map(|&i| points[i]).collect();

    let mut hull = Hull2D {
        vertices,
        vertex_index,
        location: Vec::with_capacity(points.len()),
    };
    let m = hull.vertices.len();
    for &p in points {
        let loc = if let Some(k) = (0..m).find(|&k| hull.vertices[k].dist(p) <= tol::GEOM) {
            PointLocation::Vertex(k)
        } else if let Some(k) = (0..hull.edge_count()).find(|&k| {
            let (a, b) = hull.edge(k);
            point_segment_dist2d(p, a, b) <= tol::GEOM
        }) {
            PointLocation::Edge(k)
        } else {
            PointLocation::Interior
        };
        hull.location.push(loc);
    }
    hull
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn square_with_center() {
        let pts = [
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
            Point2::new(0.5, 0.5),
        ];
        let h = convex_hull_2d(&pts);
        assert_eq!(h.len(), 4);
        assert_eq!(h.location(4), PointLocation::Interior);
        assert!(!h.is_subdimensional());
        // counterclockwise
        let v = h.vertices();
        assert!(orient2d(v[0], v[1], v[2]) > 0.0);
    }

    #[test]
    fn collinear_points_are_subdimensional() {
        let pts = [
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 2.0),
            Point2::new(1.0, 1.0),
        ];
        let h = convex_hull_2d(&pts);
        assert!(h.is_subdimensional());
        assert_eq!(h.len(), 2);
        assert!(matches!(h.location(2), PointLocation::Edge(0)));
        let mut ends = h.vertex_indices().to_vec();
        ends.sort();
        assert_eq!(ends, vec![0, 1]);
    }

    #[test]
    fn single_point_hull() {
        let p = Point2::new(3.0, -1.0);
        let h = convex_hull_2d(&[p, p, p]);
        assert_eq!(h.len(), 1);
        assert_eq!(h.vertex_indices(), &[0]);
        assert_eq!(h.edge_count(), 0);
    }

    #[test]
    fn collinear_boundary_point_reported() {
        let pts = [
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
        ];
        let h = convex_hull_2d(&pts);
        assert_eq!(h.len(), 3);
        assert_eq!(h.boundary_points(), vec![2]);
    }

    /// Brute force: a point is a hull vertex iff it lies in no closed
    /// triangle or segment spanned by other points.
    fn brute_force_vertices(pts: &[Point2]) -> Vec<usize> {
        let n = pts.len();
        let inside_tri = |p: Point2, a: Point2, b: Point2, c: Point2| {
            let d1 = orient2d(a, b, p);
            let d2 = orient2d(b, c, p);
            let d3 = orient2d(c, a, p);
            let neg = d1 < 0.0 || d2 < 0.0 || d3 < 0.0;
            let pos = d1 > 0.0 || d2 > 0.0 || d3 > 0.0;
            !(neg && pos)
        };
        (0..n)
            .filter(|&i| {
                let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
                for (x, &a) in others.iter().enumerate() {
                    for (y, &b) in others.iter().enumerate().skip(x + 1) {
                        if point_segment_dist2d(pts[i], pts[a], pts[b]) == 0.0 {
                            return false;
                        }
                        for &c in others.iter().skip(y + 1) {
                            if inside_tri(pts[i], pts[a], pts[b], pts[c]) {
                                return false;
                            }
                        }
                    }
                }
                true
            })
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig { cases: 256, rng_seed: proptest::test_runner::RngSeed::Fixed(7), ..ProptestConfig::default() })]
        #[test]
        fn hull_matches_brute_force(coords in prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0), 3..=12)) {
            let pts: Vec<Point2> = coords.iter().map(|&(x, y)| Point2::new(x, y)).collect();
            let h = convex_hull_2d(&pts);
            let mut got = h.vertex_indices().to_vec();
            got.sort();
            let want = brute_force_vertices(&pts);
            prop_assert_eq!(&got, &want);
            for i in 0..pts.len() {
                prop_assert!(h.location(i) != PointLocation::Interior || !want.contains(&i));
            }
        }
    }
}
