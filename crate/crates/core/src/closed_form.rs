//! Exact chirality values for triangles and parallelograms.
//!
//! For a triangle with sides `x <= y <= z` the optimal reflection axis is
//! one of three candidates: the bisector of the smallest angle (`z/y`), the
//! bisector of the largest angle (`y/x`) or the perpendicular to the longest
//! edge (`1 + (y² - x²)/z²`). A parallelogram with side ratio `r >= 1` and
//! obtuse angle `θ` is optimally reflected across an edge bisector, a
//! diagonal bisector or an axis of its John ellipse.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::{Matrix2, SymmetricEigen};

use crate::chirality::{AxisKind, ChiralityResult};
use crate::error::{Error, Result};
use crate::geometry::{Axis, ConvexPolygon, EllipseSpec, Point2};

/// Values within this distance of the minimum count as ties.
pub const TIE_TOL: f64 = 1e-9;
/// Relative tolerance for parallel opposite edges.
const PARALLEL_TOL: f64 = 1e-10;

/// Side lengths of a triangle, sorted so that `x <= y <= z`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TriangleShape {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl TriangleShape {
    /// Sorts three side lengths. The flat limit `z = x + y` is accepted so
    /// the formulas can be evaluated on limiting shapes.
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        let mut s = [a, b, c];
        if s.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::DegenerateShape(format!("side lengths {a}, {b}, {c}")));
        }
        s.sort_by(f64::total_cmp);
        let [x, y, z] = s;
        if z > (x + y) * (1.0 + 1e-12) {
            return Err(Error::DegenerateShape(format!(
                "sides {x}, {y}, {z} violate the triangle inequality"
            )));
        }
        Ok(Self { x, y, z })
    }

    /// The triangle with longest edge from `(0, 0)` to `(z, 0)`, side `y`
    /// at the origin and side `x` at `(z, 0)`, apex above the axis.
    pub fn realization(&self) -> Result<ConvexPolygon> {
        let px = (self.y * self.y - self.x * self.x + self.z * self.z) / (2.0 * self.z);
        let py = (self.y * self.y - px * px).max(0.0).sqrt();
        ConvexPolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(self.z, 0.0),
            Point2::new(px, py),
        ])
    }
}

/// Side ratio `r >= 1` and the larger interior angle `θ ∈ [π/2, π)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParallelogramShape {
    pub r: f64,
    pub theta: f64,
}

impl ParallelogramShape {
    pub fn new(r: f64, theta: f64) -> Result<Self> {
        if !(r.is_finite() && r >= 1.0 && (FRAC_PI_2..PI).contains(&theta)) {
            return Err(Error::DegenerateShape(format!("parallelogram (r, θ) = ({r}, {theta})")));
        }
        Ok(Self { r, theta })
    }

    /// Vertices `0, (r, 0), (r, 0) + (cos θ, sin θ), (cos θ, sin θ)`.
    pub fn realization(&self) -> Result<ConvexPolygon> {
        let u = Point2::new(self.r, 0.0);
        let v = Point2::from_angle(self.theta);
        ConvexPolygon::new(vec![Point2::ORIGIN, u, u + v, v])
    }

    /// Rectangles and rhombi are mirror symmetric.
    pub fn is_achiral(&self) -> bool {
        self.r - 1.0 <= 1e-12 || self.theta - FRAC_PI_2 <= 1e-12
    }
}

/// Parallelogram `conv{±(1, 0), ±(z₁, z₂)}` similar to a given shape.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CanonicalParallelogram {
    pub z1: f64,
    pub z2: f64,
}

impl CanonicalParallelogram {
    pub fn new(z1: f64, z2: f64) -> Result<Self> {
        if !(z1 >= 0.0 && z2 > 0.0 && z1 * z1 + z2 * z2 <= 1.0) {
            return Err(Error::DegenerateShape(format!("canonical coordinates ({z1}, {z2})")));
        }
        Ok(Self { z1, z2 })
    }

    pub fn realization(&self) -> Result<ConvexPolygon> {
        let a = Point2::new(1.0, 0.0);
        let b = Point2::new(self.z1, self.z2);
        ConvexPolygon::new(vec![a, b, -a, -b])
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Shape {
    Triangle(TriangleShape),
    Parallelogram(ParallelogramShape),
}

/// Candidate axis values keyed by axis kind, in a fixed order.
#[derive(Clone, Debug, PartialEq)]
pub struct AxisValues {
    pub entries: Vec<(AxisKind, f64)>,
    /// Set for achiral parallelograms, where every value collapses towards 1.
    pub degenerate: bool,
}

impl AxisValues {
    pub fn get(&self, kind: AxisKind) -> Option<f64> {
        self.entries.iter().find(|e| e.0 == kind).map(|e| e.1)
    }
}

fn min_with_ties(entries: &[(AxisKind, f64)]) -> (f64, Vec<AxisKind>) {
    let min = entries.iter().map(|e| e.1).fold(f64::INFINITY, f64::min);
    let ties = entries
        .iter()
        .filter(|e| e.1 <= min + TIE_TOL)
        .map(|e| e.0)
        .collect();
    (min, ties)
}

/// All six bisector and perpendicular candidates of a triangle.
pub fn triangle_axis_values(t: &TriangleShape) -> AxisValues {
    let (x, y, z) = (t.x, t.y, t.z);
    AxisValues {
        entries: vec![
            (AxisKind::BisectorSmallestAngle, z / y),
            (AxisKind::BisectorLargestAngle, y / x),
            (AxisKind::PerpLongestEdge, 1.0 + (y * y - x * x) / (z * z)),
            (AxisKind::BisectorMiddleAngle, z / x),
            (AxisKind::PerpMiddleEdge, 1.0 + (z * z - x * x) / (y * y)),
            (AxisKind::PerpShortestEdge, 1.0 + (z * z - y * y) / (x * x)),
        ],
        degenerate: false,
    }
}

fn with_axis(mut result: ChiralityResult, polygon: Result<ConvexPolygon>) -> ChiralityResult {
    if let Ok(k) = polygon {
        let axes = candidate_axes(&k);
        result.axis = axes
            .iter()
            .find(|(kind, _)| *kind == result.classification)
            .map(|(_, a)| *a);
    }
    result
}

/// `α₁ = min{z/y, y/x, 1 + (y² - x²)/z²}`. The axis refers to
/// [`TriangleShape::realization`].
pub fn triangle_alpha1(t: &TriangleShape) -> ChiralityResult {
    let values = triangle_axis_values(t);
    let (value, ties) = min_with_ties(&values.entries[..3]);
    let result = ChiralityResult {
        value,
        axis: None,
        classification: ties[0],
        ties,
        profile: None,
    };
    with_axis(result, t.realization())
}

/// Edge-bisector, diagonal-bisector and John-axis values.
pub fn parallelogram_axis_values(p: &ParallelogramShape) -> AxisValues {
    let (r, c) = (p.r, p.theta.cos());
    let r2 = r * r;
    let diagonal = (r2 - 2.0 * r * c + 1.0) / ((r2 + 1.0).powi(2) - 4.0 * r2 * c * c).sqrt();
    let john = (r2 - 2.0 * r * c - 1.0) / ((r2 - 1.0).powi(2) + 4.0 * r2 * c * c).sqrt();
    AxisValues {
        entries: vec![
            (AxisKind::EdgeBisector, r),
            (AxisKind::DiagonalBisector, diagonal),
            (AxisKind::JohnAxis, john),
        ],
        degenerate: p.is_achiral(),
    }
}

/// `α₁` of a parallelogram; exactly 1 for rectangles and rhombi. The axis
/// refers to [`ParallelogramShape::realization`].
pub fn parallelogram_alpha1(p: &ParallelogramShape) -> ChiralityResult {
    if p.is_achiral() {
        return ChiralityResult::scalar(1.0, AxisKind::Identity);
    }
    let (value, ties) = min_with_ties(&parallelogram_axis_values(p).entries);
    let result = ChiralityResult {
        value,
        axis: None,
        classification: ties[0],
        ties,
        profile: None,
    };
    with_axis(result, p.realization())
}

fn is_parallel(a: Point2, b: Point2) -> bool {
    a.cross(b).abs() <= PARALLEL_TOL * a.norm() * b.norm()
}

fn as_parallelogram(k: &ConvexPolygon) -> Option<[Point2; 4]> {
    if k.len() != 4 {
        return None;
    }
    let v = [k.vertex(0), k.vertex(1), k.vertex(2), k.vertex(3)];
    let e = |i: usize| v[(i + 1) % 4] - v[i];
    (is_parallel(e(0), e(2)) && is_parallel(e(1), e(3))).then_some(v)
}

/// Similarity parameters of a triangle or parallelogram.
pub fn shape_from_vertices(k: &ConvexPolygon) -> Result<Shape> {
    if k.len() == 3 {
        let (a, b, c) = (k.vertex(0), k.vertex(1), k.vertex(2));
        return TriangleShape::new(a.distance(b), b.distance(c), c.distance(a)).map(Shape::Triangle);
    }
    let v = as_parallelogram(k).ok_or(Error::NotATriangleOrParallelogram(k.len()))?;
    let (u, w) = (v[1] - v[0], v[2] - v[1]);
    let (lu, lw) = (u.norm(), w.norm());
    let r = lu.max(lw) / lu.min(lw);
    let angle = (-u).dot(w) / (lu * lw);
    let interior = angle.clamp(-1.0, 1.0).acos();
    let theta = interior.max(PI - interior);
    Ok(Shape::Parallelogram(ParallelogramShape::new(r, theta)?))
}

/// Canonical coordinates `z₁ = (r² - 1)/(1 + r² - 2r cos θ)`,
/// `z₂ = 2r sin θ/(1 + r² - 2r cos θ)`.
pub fn canonical_coords(p: &ParallelogramShape) -> Result<CanonicalParallelogram> {
    if p.r <= 1.0 {
        return Err(Error::DegenerateShape("rhombus has no canonical chiral form".into()));
    }
    let (r, (s, c)) = (p.r, p.theta.sin_cos());
    let d = 1.0 + r * r - 2.0 * r * c;
    CanonicalParallelogram::new((r * r - 1.0) / d, 2.0 * r * s / d)
}

/// Major axis of the John ellipse from `cot 2φ = (1 + z₁² - z₂²)/(2 z₁ z₂)`.
pub fn john_axis(p: &CanonicalParallelogram) -> Result<Axis> {
    let num = 2.0 * p.z1 * p.z2;
    let den = 1.0 + p.z1 * p.z1 - p.z2 * p.z2;
    if num.hypot(den) <= 1e-12 {
        return Err(Error::DegenerateShape("John ellipse is a disk".into()));
    }
    Ok(Axis::new(0.5 * num.atan2(den)))
}

/// Shape matrix `Q` with John ellipse `{x : xᵀ Q x <= 1}` of the
/// 0-symmetric parallelogram with vertices `±a, ±b`: `Q = M⁻ᵀ M⁻¹` for the
/// map `M` taking the square `[-1, 1]²` onto it.
fn john_quadratic(a: Point2, b: Point2) -> Result<Matrix2<f64>> {
    let ab = Matrix2::new(a.x, b.x, a.y, b.y);
    let s = Matrix2::new(-1.0, 1.0, 1.0, 1.0);
    let m = ab * s.try_inverse().expect("constant matrix is invertible");
    let m_inv = m
        .try_inverse()
        .ok_or_else(|| Error::DegenerateShape("flat parallelogram".into()))?;
    Ok(m_inv.transpose() * m_inv)
}

fn ellipse_from_quadratic(q: &Matrix2<f64>, center: Point2) -> Result<EllipseSpec> {
    let eig = SymmetricEigen::new(*q);
    let (lo, hi) = if eig.eigenvalues[0] <= eig.eigenvalues[1] {
        (0, 1)
    } else {
        (1, 0)
    };
    let major = eig.eigenvectors.column(lo);
    Ok(EllipseSpec {
        center,
        major_angle: Axis::from_direction(Point2::new(major[0], major[1])).theta(),
        semi_major: 1.0 / eig.eigenvalues[lo].sqrt(),
        semi_minor: 1.0 / eig.eigenvalues[hi].sqrt(),
    })
}

/// Major axis of the John ellipse from the eigenvectors of `M⁻ᵀ M⁻¹`.
pub fn john_axis_eigen(p: &CanonicalParallelogram) -> Result<Axis> {
    let q = john_quadratic(Point2::new(1.0, 0.0), Point2::new(p.z1, p.z2))?;
    let e = ellipse_from_quadratic(&q, Point2::ORIGIN)?;
    if e.semi_major - e.semi_minor <= 1e-12 * e.semi_major {
        return Err(Error::DegenerateShape("John ellipse is a disk".into()));
    }
    Ok(Axis::new(e.major_angle))
}

/// `R(K, Φ_U(K))` for `U` the John axis:
/// `(1 - z₁² - z₂² + 2z₁)/√((1 + z₁² - z₂²)² + (2 z₁ z₂)²)`.
pub fn john_lambda(p: &CanonicalParallelogram) -> f64 {
    let (z1, z2) = (p.z1, p.z2);
    (1.0 - z1 * z1 - z2 * z2 + 2.0 * z1) / (1.0 + z1 * z1 - z2 * z2).hypot(2.0 * z1 * z2)
}

/// John ellipse of a parallelogram: it touches every edge at its midpoint.
pub fn john_ellipse(k: &ConvexPolygon) -> Result<EllipseSpec> {
    let v = as_parallelogram(k).ok_or(Error::NotAParallelogram)?;
    let center = k.centroid();
    let q = john_quadratic(v[0] - center, v[1] - center)?;
    ellipse_from_quadratic(&q, center)
}

fn bisectors(u: Point2, v: Point2) -> [Axis; 2] {
    let (u, v) = (u.normalized(), v.normalized());
    [Axis::from_direction(u + v), Axis::from_direction(u - v)]
}

/// The axes whose values [`triangle_axis_values`] and
/// [`parallelogram_axis_values`] report, located on a concrete polygon.
/// Empty for any other polygon.
pub fn candidate_axes(k: &ConvexPolygon) -> Vec<(AxisKind, Axis)> {
    if k.len() == 3 {
        let p = [k.vertex(0), k.vertex(1), k.vertex(2)];
        // order vertices by the length of the opposite side
        let mut idx = [0usize, 1, 2];
        let opposite = |i: usize| p[(i + 1) % 3].distance(p[(i + 2) % 3]);
        idx.sort_by(|&a, &b| opposite(a).total_cmp(&opposite(b)));
        let bisector = |i: usize| {
            let a = p[i];
            let d = (p[(i + 1) % 3] - a).normalized() + (p[(i + 2) % 3] - a).normalized();
            Axis::from_direction(d)
        };
        let perp = |i: usize| Axis::from_direction((p[(i + 2) % 3] - p[(i + 1) % 3]).perp());
        return vec![
            (AxisKind::BisectorSmallestAngle, bisector(idx[0])),
            (AxisKind::BisectorMiddleAngle, bisector(idx[1])),
            (AxisKind::BisectorLargestAngle, bisector(idx[2])),
            (AxisKind::PerpShortestEdge, perp(idx[0])),
            (AxisKind::PerpMiddleEdge, perp(idx[1])),
            (AxisKind::PerpLongestEdge, perp(idx[2])),
        ];
    }
    let Some(v) = as_parallelogram(k) else {
        return Vec::new();
    };
    let mut out = Vec::with_capacity(6);
    for a in bisectors(v[1] - v[0], v[2] - v[1]) {
        out.push((AxisKind::EdgeBisector, a));
    }
    for a in bisectors(v[2] - v[0], v[3] - v[1]) {
        out.push((AxisKind::DiagonalBisector, a));
    }
    if let Ok(e) = john_ellipse(k) {
        if e.semi_major - e.semi_minor > 1e-12 * e.semi_major {
            let major = Axis::new(e.major_angle);
            out.push((AxisKind::JohnAxis, major));
            out.push((AxisKind::JohnAxis, major.perpendicular()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chirality::chirality_profile;
    use crate::geometry::polygon;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

    fn lp_value(k: &ConvexPolygon, kind: AxisKind) -> f64 {
        candidate_axes(k)
            .iter()
            .filter(|(c, _)| *c == kind)
            .map(|(_, a)| chirality_profile(k, a.theta()).unwrap())
            .fold(f64::INFINITY, f64::min)
    }

    #[test]
    fn triangle_345_axis_values_match_lp() {
        let t = TriangleShape::new(3.0, 4.0, 5.0).unwrap();
        let values = triangle_axis_values(&t);
        let expected = [
            (AxisKind::BisectorSmallestAngle, 1.25),
            (AxisKind::BisectorLargestAngle, 4.0 / 3.0),
            (AxisKind::PerpLongestEdge, 1.28),
            (AxisKind::BisectorMiddleAngle, 5.0 / 3.0),
            (AxisKind::PerpMiddleEdge, 2.0),
            (AxisKind::PerpShortestEdge, 2.0),
        ];
        let k = t.realization().unwrap();
        for (kind, v) in expected {
            assert_abs_diff_eq!(values.get(kind).unwrap(), v, epsilon = 1e-12);
            assert_abs_diff_eq!(lp_value(&k, kind), v, epsilon = 1e-9);
        }
    }

    #[test]
    fn triangle_alpha1_examples() {
        let r = triangle_alpha1(&TriangleShape::new(3.0, 4.0, 5.0).unwrap());
        assert_abs_diff_eq!(r.value, 1.25, epsilon = 1e-15);
        assert_eq!(r.classification, AxisKind::BisectorSmallestAngle);
        assert!(r.axis.is_some());

        let eq = triangle_axis_values(&TriangleShape::new(1.0, 1.0, 1.0).unwrap());
        for kind in [AxisKind::BisectorSmallestAngle, AxisKind::BisectorLargestAngle, AxisKind::BisectorMiddleAngle] {
            assert_eq!(eq.get(kind), Some(1.0));
        }
        let iso = TriangleShape::new(1.0, 1.0, 1.5).unwrap();
        let v = triangle_axis_values(&iso);
        assert_eq!(v.get(AxisKind::BisectorSmallestAngle), Some(1.5));
        assert_eq!(v.get(AxisKind::BisectorLargestAngle), Some(1.0));
        assert_eq!(triangle_alpha1(&iso).value, 1.0);

        let limit = TriangleShape::new(1.0 - FRAC_1_SQRT_2, FRAC_1_SQRT_2, 1.0).unwrap();
        let r = triangle_alpha1(&limit);
        assert_abs_diff_eq!(r.value, SQRT_2, epsilon = 1e-12);
        assert!(r.ties.contains(&AxisKind::PerpLongestEdge));
    }

    #[test]
    fn parallelogram_axis_values_examples() {
        let rect = parallelogram_axis_values(&ParallelogramShape::new(2.0, FRAC_PI_2).unwrap());
        assert!(rect.degenerate);
        assert_abs_diff_eq!(rect.get(AxisKind::EdgeBisector).unwrap(), 2.0);
        assert_abs_diff_eq!(rect.get(AxisKind::DiagonalBisector).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(rect.get(AxisKind::JohnAxis).unwrap(), 1.0, epsilon = 1e-15);

        let theta = (-1.0 / (2.0 * SQRT_2)).acos();
        let p = ParallelogramShape::new(SQRT_2, theta).unwrap();
        let v = parallelogram_axis_values(&p);
        assert_abs_diff_eq!(v.get(AxisKind::EdgeBisector).unwrap(), SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(v.get(AxisKind::DiagonalBisector).unwrap(), SQRT_2, epsilon = 1e-14);
        assert_abs_diff_eq!(parallelogram_alpha1(&p).value, SQRT_2, epsilon = 1e-14);

        let p = ParallelogramShape::new(2.0, 2.0 * PI / 3.0).unwrap();
        let k = p.realization().unwrap();
        for (kind, value) in parallelogram_axis_values(&p).entries {
            assert_abs_diff_eq!(lp_value(&k, kind), value, epsilon = 1e-9);
        }
    }

    #[test]
    fn parallelogram_alpha1_achiral() {
        let r = parallelogram_alpha1(&ParallelogramShape::new(3.0, FRAC_PI_2).unwrap());
        assert_eq!(r.value, 1.0);
        assert_eq!(r.classification, AxisKind::Identity);
        assert_eq!(parallelogram_alpha1(&ParallelogramShape::new(1.0, 2.0).unwrap()).value, 1.0);
    }

    #[test]
    fn shape_from_vertices_examples() {
        let k = polygon(&[(1.0, 0.0), (2.0, 1.0), (-1.0, 0.0), (-2.0, -1.0)]).unwrap();
        let Shape::Parallelogram(p) = shape_from_vertices(&k).unwrap() else {
            panic!("expected a parallelogram");
        };
        assert_abs_diff_eq!(p.r, 5f64.sqrt(), epsilon = 1e-14);
        assert_abs_diff_eq!(p.theta, PI - (2.0 / 5f64.sqrt()).acos(), epsilon = 1e-14);
        assert_abs_diff_eq!(parallelogram_alpha1(&p).value, SQRT_2, epsilon = 1e-12);

        let sq = polygon(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]).unwrap();
        assert_eq!(
            shape_from_vertices(&sq).unwrap(),
            Shape::Parallelogram(ParallelogramShape { r: 1.0, theta: FRAC_PI_2 })
        );
        let t = polygon(&[(0.0, 0.0), (3.0, 0.0), (0.0, 4.0)]).unwrap();
        assert_eq!(
            shape_from_vertices(&t).unwrap(),
            Shape::Triangle(TriangleShape { x: 3.0, y: 4.0, z: 5.0 })
        );
        let penta: Vec<Point2> = (0..5).map(|i| Point2::from_angle(1.2 * i as f64)).collect();
        let penta = ConvexPolygon::convex_hull(&penta).unwrap();
        assert!(matches!(shape_from_vertices(&penta), Err(Error::NotATriangleOrParallelogram(5))));
        let trapezoid = polygon(&[(0.0, 0.0), (3.0, 0.0), (2.0, 1.0), (1.0, 1.0)]).unwrap();
        assert!(shape_from_vertices(&trapezoid).is_err());
    }

    #[test]
    fn canonical_round_trip() {
        let p = ParallelogramShape::new(SQRT_2, 3.0 * PI / 4.0).unwrap();
        let z = canonical_coords(&p).unwrap();
        // 1 + r² - 2r cos θ = 5 at this shape
        assert_abs_diff_eq!(z.z1, 0.2, epsilon = 1e-15);
        assert_abs_diff_eq!(z.z2, 0.4, epsilon = 1e-15);
        let Shape::Parallelogram(q) = shape_from_vertices(&z.realization().unwrap()).unwrap() else {
            panic!("expected a parallelogram");
        };
        assert_abs_diff_eq!(q.r, p.r, epsilon = 1e-9);
        assert_abs_diff_eq!(q.theta, p.theta, epsilon = 1e-9);

        let near = canonical_coords(&ParallelogramShape::new(2.0, FRAC_PI_2).unwrap()).unwrap();
        assert_abs_diff_eq!(near.z1, 3.0 / 5.0, epsilon = 1e-15);
    }

    #[test]
    fn john_axis_two_routes() {
        let z = CanonicalParallelogram::new(0.5, 0.3).unwrap();
        let cot = john_axis(&z).unwrap();
        assert_abs_diff_eq!(cot.theta(), 0.5 * (0.3f64).atan2(1.16), epsilon = 1e-15);
        assert_abs_diff_eq!(cot.theta(), 0.1265, epsilon = 1e-4);
        assert!(cot.angle_to(john_axis_eigen(&z).unwrap()) <= 1e-9);
        assert_abs_diff_eq!(john_lambda(&z), 1.66 / 1.4356f64.sqrt(), epsilon = 1e-15);

        let k = z.realization().unwrap();
        assert_abs_diff_eq!(chirality_profile(&k, cot.theta()).unwrap(), john_lambda(&z), epsilon = 1e-9);

        // square: the John ellipse is a disk
        let sq = CanonicalParallelogram::new(0.0, 1.0).unwrap();
        assert!(john_axis(&sq).is_err());
        assert!(john_axis_eigen(&sq).is_err());
    }

    #[test]
    fn john_ellipse_touches_midpoints() {
        let sq = polygon(&[(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)]).unwrap();
        let e = john_ellipse(&sq).unwrap();
        assert_abs_diff_eq!(e.semi_major, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e.semi_minor, 1.0, epsilon = 1e-12);

        let sheared = polygon(&[(0.0, 0.0), (2.0, 0.0), (2.8, 1.3), (0.8, 1.3)]).unwrap();
        let e = john_ellipse(&sheared).unwrap();
        for i in 0..4 {
            let (a, b) = sheared.edge(i);
            let mid = (a + b) * 0.5;
            assert_abs_diff_eq!(e.level(mid), 1.0, epsilon = 1e-9);
            // tangency: the gradient is normal to the edge
            assert!(e.gradient(mid).dot(b - a).abs() <= 1e-9 * e.gradient(mid).norm() * (b - a).norm());
        }

        let kite = polygon(&[(1.0, 0.0), (0.0, 0.5), (-1.0, 0.0), (0.0, -0.7)]).unwrap();
        assert!(matches!(john_ellipse(&kite), Err(Error::NotAParallelogram)));
    }
}
