//! Planar primitives: points, axes, convex polygons and the operations on
//! them that the containment and chirality code builds upon.
//!
//! Every [`ConvexPolygon`] is stored in canonical form: counter-clockwise,
//! strictly convex, starting at its lexicographically smallest vertex. Two
//! canonical polygons describe the same set exactly when their vertex lists
//! agree, which is what [`ConvexPolygon::approx_eq`] checks.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Tolerance for collinearity and degeneracy tests, relative to the
/// polygon's extent.
pub const EPS_GEOM: f64 = 1e-12;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Unit vector at angle `theta` from the positive x-axis.
    #[inline]
    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self::new(c, s)
    }

    #[inline]
    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product; positive when `other` is
    /// counter-clockwise from `self`.
    #[inline]
    pub fn cross(self, other: Self) -> f64 {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn distance(self, other: Self) -> f64 {
        (self - other).norm()
    }

    /// Counter-clockwise rotation by a quarter turn.
    #[inline]
    pub fn perp(self) -> Self {
        Self::new(-self.y, self.x)
    }

    pub fn rotate(self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn normalized(self) -> Self {
        self * (1.0 / self.norm())
    }

    /// Angle in `(-π, π]`.
    #[inline]
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point2 {
    type Output = Point2;
    #[inline]
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    #[inline]
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    #[inline]
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    #[inline]
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
}

impl Mul<Point2> for f64 {
    type Output = Point2;
    #[inline]
    fn mul(self, p: Point2) -> Point2 {
        p * self
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A line through the origin, stored by its angle normalized into `[0, π)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Axis {
    theta: f64,
}

impl Axis {
    pub fn new(theta: f64) -> Self {
        let mut t = theta.rem_euclid(PI);
        if t >= PI {
            t = 0.0;
        }
        Self { theta: t }
    }

    /// Axis spanned by a nonzero direction vector.
    pub fn from_direction(dir: Point2) -> Self {
        Self::new(dir.angle())
    }

    #[inline]
    pub fn theta(self) -> f64 {
        self.theta
    }

    #[inline]
    pub fn direction(self) -> Point2 {
        Point2::from_angle(self.theta)
    }

    pub fn perpendicular(self) -> Self {
        Self::new(self.theta + PI / 2.0)
    }

    /// Reflection across the axis: `2 P(x) - x`.
    #[inline]
    pub fn reflect_point(self, p: Point2) -> Point2 {
        // [cos 2θ  sin 2θ; sin 2θ  -cos 2θ]
        let (s, c) = (2.0 * self.theta).sin_cos();
        Point2::new(c * p.x + s * p.y, s * p.x - c * p.y)
    }

    /// Smallest angle between two axes, in `[0, π/2]`.
    pub fn angle_to(self, other: Axis) -> f64 {
        let d = (self.theta - other.theta).abs();
        d.min(PI - d)
    }
}

/// Closed halfplane `{x : normal · x <= offset}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Halfplane {
    pub normal: Point2,
    pub offset: f64,
}

impl Halfplane {
    #[inline]
    pub fn slack(&self, p: Point2) -> f64 {
        self.offset - self.normal.dot(p)
    }
}

/// Ellipse with center, major-axis angle in `[0, π)` and semi-axes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EllipseSpec {
    pub center: Point2,
    pub major_angle: f64,
    pub semi_major: f64,
    pub semi_minor: f64,
}

impl EllipseSpec {
    /// Value of the defining quadratic form; `<= 1` inside the ellipse.
    pub fn level(&self, p: Point2) -> f64 {
        let d = (p - self.center).rotate(-self.major_angle);
        (d.x / self.semi_major).powi(2) + (d.y / self.semi_minor).powi(2)
    }

    /// Outward normal (unnormalized gradient of the quadratic form) at `p`.
    pub fn gradient(&self, p: Point2) -> Point2 {
        let d = (p - self.center).rotate(-self.major_angle);
        let g = Point2::new(
            2.0 * d.x / self.semi_major.powi(2),
            2.0 * d.y / self.semi_minor.powi(2),
        );
        g.rotate(self.major_angle)
    }

    /// Inscribed `sides`-gon with vertices on the ellipse.
    pub fn to_polygon(&self, sides: usize) -> Result<ConvexPolygon> {
        let pts: Vec<Point2> = (0..sides)
            .map(|i| {
                let t = 2.0 * PI * i as f64 / sides as f64;
                let local = Point2::new(self.semi_major * t.cos(), self.semi_minor * t.sin());
                self.center + local.rotate(self.major_angle)
            })
            .collect();
        ConvexPolygon::new(pts)
    }
}

/// A strictly convex polygon in canonical form.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point2>,
}

fn extent(points: &[Point2]) -> f64 {
    let (mut lo, mut hi) = (points[0], points[0]);
    for p in points {
        lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    (hi - lo).norm()
}

fn rotate_to_lex_min(mut vertices: Vec<Point2>) -> Vec<Point2> {
    let start = (0..vertices.len())
        .min_by(|&i, &j| {
            let (a, b) = (vertices[i], vertices[j]);
            a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y))
        })
        .unwrap_or(0);
    vertices.rotate_left(start);
    vertices
}

fn signed_area(vertices: &[Point2]) -> f64 {
    let n = vertices.len();
    let mut twice = 0.0;
    for i in 0..n {
        twice += vertices[i].cross(vertices[(i + 1) % n]);
    }
    0.5 * twice
}

impl ConvexPolygon {
    /// Builds a polygon from vertices listed in convex position, in either
    /// orientation. Fails unless the vertices form a strictly convex polygon.
    pub fn new(vertices: Vec<Point2>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::DegenerateInput(format!(
                "need at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        if let Some(p) = vertices.iter().find(|p| !p.is_finite()) {
            return Err(Error::DegenerateInput(format!("non-finite vertex {p}")));
        }
        let mut vertices = vertices;
        let scale = extent(&vertices);
        let area = signed_area(&vertices);
        if area.abs() <= EPS_GEOM * scale * scale {
            return Err(Error::DegenerateInput("polygon has zero area".into()));
        }
        if area < 0.0 {
            vertices.reverse();
        }
        let n = vertices.len();
        let mut turning = 0.0;
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let c = vertices[(i + 2) % n];
            let (e1, e2) = (b - a, c - b);
            if e1.norm() <= EPS_GEOM * scale {
                return Err(Error::DegenerateInput(format!("coincident vertices at {a}")));
            }
            if e1.cross(e2) <= EPS_GEOM * scale * scale {
                return Err(Error::DegenerateInput(format!(
                    "vertex {b} is not strictly convex"
                )));
            }
            turning += e1.cross(e2).atan2(e1.dot(e2));
        }
        if (turning - 2.0 * PI).abs() > 1e-6 {
            return Err(Error::DegenerateInput("vertices wind more than once".into()));
        }
        Ok(Self {
            vertices: rotate_to_lex_min(vertices),
        })
    }

    /// Convex hull of a point set (Andrew's monotone chain). Collinear and
    /// duplicate points are dropped.
    pub fn convex_hull(points: &[Point2]) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::DegenerateInput(format!(
                "need at least 3 points, got {}",
                points.len()
            )));
        }
        if let Some(p) = points.iter().find(|p| !p.is_finite()) {
            return Err(Error::DegenerateInput(format!("non-finite point {p}")));
        }
        let mut pts = points.to_vec();
        pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
        pts.dedup();
        let scale = extent(&pts);
        let tol = EPS_GEOM * scale * scale;

        let mut hull: Vec<Point2> = Vec::with_capacity(pts.len() + 1);
        for pass in 0..2 {
            let start = hull.len();
            let iter: Box<dyn Iterator<Item = &Point2>> = if pass == 0 {
                Box::new(pts.iter())
            } else {
                Box::new(pts.iter().rev())
            };
            for &p in iter {
                while hull.len() >= start + 2 {
                    let a = hull[hull.len() - 2];
                    let b = hull[hull.len() - 1];
                    if (b - a).cross(p - b) <= tol {
                        hull.pop();
                    } else {
                        break;
                    }
                }
                hull.push(p);
            }
            hull.pop();
        }
        if hull.len() < 3 {
            return Err(Error::DegenerateInput(
                "all points lie on a common line".into(),
            ));
        }
        Self::new(hull)
    }

    /// Re-canonicalizes a vertex list already known to be a strictly convex
    /// CCW polygon (images under orientation-preserving similarities).
    fn from_ccw_unchecked(vertices: Vec<Point2>) -> Self {
        Self {
            vertices: rotate_to_lex_min(vertices),
        }
    }

    /// Applies an affine map `x -> m x + offset` with `det m != 0`.
    pub fn transform(&self, m: [[f64; 2]; 2], offset: Point2) -> Self {
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        let mut vs: Vec<Point2> = self
            .vertices
            .iter()
            .map(|p| {
                Point2::new(
                    m[0][0] * p.x + m[0][1] * p.y + offset.x,
                    m[1][0] * p.x + m[1][1] * p.y + offset.y,
                )
            })
            .collect();
        if det < 0.0 {
            vs.reverse();
        }
        Self::from_ccw_unchecked(vs)
    }

    #[inline]
    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    #[inline]
    pub fn vertex(&self, i: usize) -> Point2 {
        self.vertices[i % self.vertices.len()]
    }

    /// Edge `i` runs from vertex `i` to vertex `i + 1`.
    #[inline]
    pub fn edge(&self, i: usize) -> (Point2, Point2) {
        (self.vertex(i), self.vertex(i + 1))
    }

    pub fn translate(&self, v: Point2) -> Self {
        Self {
            vertices: self.vertices.iter().map(|&p| p + v).collect(),
        }
    }

    /// Dilation about the origin; `s > 0`.
    pub fn scale(&self, s: f64) -> Self {
        Self {
            vertices: self.vertices.iter().map(|&p| p * s).collect(),
        }
    }

    pub fn rotate(&self, angle: f64) -> Self {
        Self::from_ccw_unchecked(self.vertices.iter().map(|p| p.rotate(angle)).collect())
    }

    /// Point reflection `-K`.
    pub fn negate(&self) -> Self {
        Self::from_ccw_unchecked(self.vertices.iter().map(|&p| -p).collect())
    }

    /// Mirror image across a line through the origin.
    pub fn reflect(&self, axis: Axis) -> Self {
        let vs: Vec<Point2> = self
            .vertices
            .iter()
            .rev()
            .map(|&p| axis.reflect_point(p))
            .collect();
        Self::from_ccw_unchecked(vs)
    }

    /// Support function `max_v dir · v`.
    pub fn support(&self, dir: Point2) -> Result<f64> {
        if dir.x == 0.0 && dir.y == 0.0 {
            return Err(Error::ZeroDirection);
        }
        Ok(self.support_unchecked(dir))
    }

    #[inline]
    pub(crate) fn support_unchecked(&self, dir: Point2) -> f64 {
        self.vertices
            .iter()
            .map(|v| dir.dot(*v))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// One halfplane per edge, with outward unit normals.
    pub fn to_halfplanes(&self) -> Vec<Halfplane> {
        (0..self.len())
            .map(|i| {
                let (a, b) = self.edge(i);
                let e = b - a;
                let normal = Point2::new(e.y, -e.x).normalized();
                Halfplane {
                    normal,
                    offset: normal.dot(a),
                }
            })
            .collect()
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    /// Area-weighted centroid.
    pub fn centroid(&self) -> Point2 {
        // Shift to the first vertex to keep the sums well conditioned.
        let o = self.vertices[0];
        let n = self.len();
        let (mut cx, mut cy, mut twice) = (0.0, 0.0, 0.0);
        for i in 0..n {
            let p = self.vertices[i] - o;
            let q = self.vertices[(i + 1) % n] - o;
            let w = p.cross(q);
            twice += w;
            cx += (p.x + q.x) * w;
            cy += (p.y + q.y) * w;
        }
        o + Point2::new(cx, cy) * (1.0 / (3.0 * twice))
    }

    /// Largest distance between two vertices.
    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                d = d.max(a.distance(*b));
            }
        }
        d
    }

    /// Whether `p` lies in the polygon, allowing a slack of `tol`.
    pub fn contains(&self, p: Point2, tol: f64) -> bool {
        (0..self.len()).all(|i| {
            let (a, b) = self.edge(i);
            let e = b - a;
            e.cross(p - a) >= -tol * e.norm()
        })
    }

    /// Euclidean distance from `p` to the polygon (zero inside).
    pub fn distance_to_point(&self, p: Point2) -> f64 {
        if self.contains(p, 0.0) {
            return 0.0;
        }
        (0..self.len())
            .map(|i| {
                let (a, b) = self.edge(i);
                segment_distance(p, a, b)
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Polar body `{a : a · x <= 1 for all x in K}`; needs the origin in the
    /// interior.
    pub fn polar(&self) -> Result<Self> {
        let scale = extent(&self.vertices);
        let hs = self.to_halfplanes();
        if hs.iter().any(|h| h.offset <= EPS_GEOM * scale) {
            return Err(Error::OriginNotInterior);
        }
        Self::new(hs.iter().map(|h| h.normal * (1.0 / h.offset)).collect())
    }

    /// Vertexwise comparison of canonical forms, tolerant to the choice of
    /// start vertex.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let n = self.len();
        if n != other.len() {
            return false;
        }
        (0..n).any(|shift| {
            (0..n).all(|i| self.vertices[i].distance(other.vertices[(i + shift) % n]) <= tol)
        })
    }

    /// Whether `K = 2c - K` for the given center, up to `tol`.
    pub fn is_symmetric_about(&self, center: Point2, tol: f64) -> bool {
        let mirrored = self.translate(-center).negate().translate(center);
        self.approx_eq(&mirrored, tol)
    }

    /// Whether the polygon is point-symmetric about its centroid.
    pub fn is_point_symmetric(&self, tol: f64) -> bool {
        self.is_symmetric_about(self.centroid(), tol)
    }
}

fn segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let e = b - a;
    let len2 = e.norm_sq();
    let t = if len2 > 0.0 {
        ((p - a).dot(e) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    p.distance(a + e * t)
}

/// Convex hull of `points` as a canonical polygon.
pub fn convex_hull(points: &[Point2]) -> Result<ConvexPolygon> {
    ConvexPolygon::convex_hull(points)
}

/// Hausdorff distance between two convex polygons. For convex sets the
/// supremum is attained at a vertex, so vertex-to-polygon projections give
/// the exact value.
pub fn hausdorff(k: &ConvexPolygon, l: &ConvexPolygon) -> f64 {
    let one_sided = |a: &ConvexPolygon, b: &ConvexPolygon| {
        a.vertices()
            .iter()
            .map(|&v| b.distance_to_point(v))
            .fold(0.0, f64::max)
    };
    one_sided(k, l).max(one_sided(l, k))
}

/// Shorthand for building polygons in tests and examples.
pub fn polygon(coords: &[(f64, f64)]) -> Result<ConvexPolygon> {
    ConvexPolygon::new(coords.iter().map(|&(x, y)| Point2::new(x, y)).collect())
}
