use crate::polygon::KnotPolygon;

/// Mean squared vertex distance from the vertex centroid.
pub fn radius_of_gyration_sq(k: &KnotPolygon) -> f64 {
    let c = k.centroid();
    k.vertices().iter().map(|&v| (v - c).norm_sq()).sum::<f64>() / k.len() as f64
}

/// Vertex-based radius of gyration.
pub fn radius_of_gyration(k: &KnotPolygon) -> f64 {
    radius_of_gyration_sq(k).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point3;
    use crate::polygon::{circumradius, regular_polygon};

    #[test]
    fn unit_square() {
        let k = KnotPolygon::new(vec![
            Point3::new(0.0, 0.0, 0.0),
            Point3::new(1.0, 0.0, 0.0),
            Point3::new(1.0, 1.0, 0.0),
            Point3::new(0.0, 1.0, 0.0),
        ])
        .unwrap();
        assert!((radius_of_gyration(&k) - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn regular_is_circumradius() {
        for n in [3, 7, 10, 31] {
            let k = regular_polygon(n).unwrap();
            assert!((radius_of_gyration(&k) - circumradius(n)).abs() < 1e-12);
        }
    }
}
