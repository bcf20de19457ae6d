//! Fixed inputs shared by the benchmarks.

use chiral_core::sampling::{random_polygon, rng};
use chiral_core::{ConvexPolygon, TriangleShape};

/// Seeded random polygons with 5 to 12 vertices.
pub fn polygons(count: usize) -> Vec<ConvexPolygon> {
    let mut g = rng(2024);
    (0..count).map(|_| random_polygon(&mut g, 5, 12)).collect()
}

pub fn triangle_345() -> ConvexPolygon {
    TriangleShape::new(3.0, 4.0, 5.0)
        .and_then(|t| t.realization())
        .expect("valid triangle")
}

/// Regular `n`-gon on the unit circle.
pub fn regular(n: usize) -> ConvexPolygon {
    let pts = (0..n)
        .map(|i| chiral_core::Point2::from_angle(std::f64::consts::TAU * i as f64 / n as f64))
        .collect();
    ConvexPolygon::new(pts).expect("regular polygon")
}
