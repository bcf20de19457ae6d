//! Seeded random shapes for fuzzing and benchmarks.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::closed_form::{CanonicalParallelogram, ParallelogramShape, TriangleShape};
use crate::geometry::{ConvexPolygon, Point2};

pub type ShapeRng = ChaCha8Rng;

pub fn rng(seed: u64) -> ShapeRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian_point<R: Rng>(rng: &mut R) -> Point2 {
    Point2::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Hull of Gaussian points, redrawn until it has between `min` and `max`
/// vertices.
pub fn random_polygon<R: Rng>(rng: &mut R, min: usize, max: usize) -> ConvexPolygon {
    assert!(3 <= min && min <= max, "invalid vertex range {min}..={max}");
    loop {
        let n = rng.random_range(min..=3 * max);
        let pts: Vec<Point2> = (0..n).map(|_| gaussian_point(rng)).collect();
        if let Ok(k) = ConvexPolygon::convex_hull(&pts) {
            if (min..=max).contains(&k.len()) {
                return k;
            }
        }
    }
}

/// Hull of a Gaussian half-set and its reflection through the origin.
pub fn random_symmetric_polygon<R: Rng>(rng: &mut R, min: usize, max: usize) -> ConvexPolygon {
    assert!(4 <= min && min <= max, "invalid vertex range {min}..={max}");
    loop {
        let n = rng.random_range(2..=max);
        let half: Vec<Point2> = (0..n).map(|_| gaussian_point(rng)).collect();
        let pts: Vec<Point2> = half.iter().flat_map(|&p| [p, -p]).collect();
        if let Ok(k) = ConvexPolygon::convex_hull(&pts) {
            if (min..=max).contains(&k.len()) {
                return k;
            }
        }
    }
}

/// Side triples uniform on the region where the triangle inequality holds
/// with a small relative margin, by rejection from the unit cube.
pub fn random_triangle<R: Rng>(rng: &mut R) -> TriangleShape {
    loop {
        let s: [f64; 3] = std::array::from_fn(|_| rng.random_range(0.0..1.0));
        let mut sorted = s;
        sorted.sort_by(f64::total_cmp);
        if sorted[0] > 1e-3 && sorted[2] < (sorted[0] + sorted[1]) * (1.0 - 1e-6) {
            if let Ok(t) = TriangleShape::new(s[0], s[1], s[2]) {
                return t;
            }
        }
    }
}

/// `r` uniform on `(1, 4)`, `θ` uniform on `(π/2, π)`.
pub fn random_parallelogram<R: Rng>(rng: &mut R) -> ParallelogramShape {
    loop {
        let r = rng.random_range(1.0..4.0);
        let theta = rng.random_range(FRAC_PI_2..PI);
        if r > 1.0 && theta > FRAC_PI_2 {
            if let Ok(p) = ParallelogramShape::new(r, theta) {
                return p;
            }
        }
    }
}

/// Uniform on the open quarter disk `z₁, z₂ > 0`, `z₁² + z₂² < 1`.
pub fn random_canonical<R: Rng>(rng: &mut R) -> CanonicalParallelogram {
    loop {
        let z1 = rng.random_range(0.0..1.0);
        let z2 = rng.random_range(0.0..1.0);
        if z1 > 1e-6 && z2 > 1e-6 && z1 * z1 + z2 * z2 < 1.0 - 1e-6 {
            if let Ok(c) = CanonicalParallelogram::new(z1, z2) {
                return c;
            }
        }
    }
}

/// Random rotation, positive scaling and translation.
pub fn random_similarity<R: Rng>(rng: &mut R, k: &ConvexPolygon) -> ConvexPolygon {
    let angle = rng.random_range(0.0..2.0 * PI);
    let scale = rng.random_range(0.2..5.0);
    let shift = Point2::new(rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0));
    k.rotate(angle).scale(scale).translate(shift)
}
