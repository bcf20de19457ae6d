//! Optimal containment `R(K, C) = min { λ : K ⊂ t + λC }`.
//!
//! With `C = ∩ { a_i · x <= b_i }` the containment is equivalent to
//! `h_K(a_i) <= a_i · t + λ b_i` for every edge of `C`, a linear program in
//! the three unknowns `(t, λ)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{ConvexPolygon, Point2};
use crate::lp::solve_covering;

/// Feasibility slack allowed for a returned containment.
pub const EPS_FEAS: f64 = 1e-9;
/// Slack under which a vertex counts as touching an edge, relative to the
/// diameter of the scaled container.
pub const EPS_TOUCH: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq)]
pub struct ContainmentResult {
    pub lambda: f64,
    pub translation: Point2,
    /// Outward unit normals of the edges of `t + λC` touched by `K`.
    pub touching_normals: Vec<Point2>,
    /// `(vertex of K, edge of C)` pairs in contact.
    pub touching_pairs: Vec<(usize, usize)>,
}

/// Touched edge normals and `(vertex, edge)` pairs.
type Contacts = (Vec<Point2>, Vec<(usize, usize)>);

/// Touching pairs of `K` against `t + λC`; `None` when the containment is
/// infeasible beyond [`EPS_FEAS`].
fn contacts(
    k: &ConvexPolygon,
    c: &ConvexPolygon,
    lambda: f64,
    t: Point2,
) -> Option<Contacts> {
    let scale = (lambda * c.diameter()).max(f64::MIN_POSITIVE);
    let mut normals = Vec::new();
    let mut pairs = Vec::new();
    for (e, h) in c.to_halfplanes().iter().enumerate() {
        let offset = h.normal.dot(t) + lambda * h.offset;
        let mut touched = false;
        for (v, &p) in k.vertices().iter().enumerate() {
            let slack = offset - h.normal.dot(p);
            if slack < -EPS_FEAS * scale {
                return None;
            }
            if slack <= EPS_TOUCH * scale {
                pairs.push((v, e));
                touched = true;
            }
        }
        if touched {
            normals.push(h.normal);
        }
    }
    Some((normals, pairs))
}

/// Whether the origin lies in the convex hull of a set of unit vectors:
/// equivalently, no open halfplane through the origin contains them all.
fn origin_in_hull(normals: &[Point2]) -> bool {
    if normals.len() < 2 {
        return false;
    }
    let mut angles: Vec<f64> = normals.iter().map(|n| n.angle()).collect();
    angles.sort_by(f64::total_cmp);
    let wrap = angles[0] + 2.0 * PI - angles[angles.len() - 1];
    let gap = angles
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(wrap, f64::max);
    gap <= PI + EPS_TOUCH
}

/// Optimal `(λ, t)` without contact extraction.
pub(crate) fn solve_containment(k: &ConvexPolygon, c: &ConvexPolygon) -> Result<(f64, Point2)> {
    let center = c.centroid();
    let halfplanes = c.translate(-center).to_halfplanes();

    let rows: Vec<[f64; 3]> = halfplanes
        .iter()
        .map(|h| [h.normal.x, h.normal.y, h.offset])
        .collect();
    let support: Vec<f64> = halfplanes
        .iter()
        .map(|h| k.support_unchecked(h.normal))
        .collect();
    let sol = solve_covering(&rows, &support, &[0.0, 0.0, 1.0])?;
    let t = Point2::new(sol.x[0], sol.x[1]);

    // Tighten λ to the smallest value feasible for the recovered t.
    let lambda = halfplanes
        .iter()
        .zip(&support)
        .map(|(h, s)| (s - h.normal.dot(t)) / h.offset)
        .fold(f64::NEG_INFINITY, f64::max);
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::SolverFailure(format!("non-positive optimum {lambda}")));
    }
    Ok((lambda, t - center * lambda))
}

/// Smallest `λ` and a translation `t` with `K ⊂ t + λC`.
pub fn circumradius(k: &ConvexPolygon, c: &ConvexPolygon) -> Result<ContainmentResult> {
    let (lambda, translation) = solve_containment(k, c)?;
    let (touching_normals, touching_pairs) = contacts(k, c, lambda, translation)
        .ok_or_else(|| Error::SolverFailure("recovered containment is infeasible".into()))?;
    Ok(ContainmentResult {
        lambda,
        translation,
        touching_normals,
        touching_pairs,
    })
}

/// Largest `λ` such that a translate of `λC` fits in `K`.
pub fn inradius(k: &ConvexPolygon, c: &ConvexPolygon) -> Result<f64> {
    Ok(1.0 / circumradius(c, k)?.lambda)
}

/// Checks a containment for feasibility and for the optimality condition
/// that the touching outward normals have the origin in their convex hull.
/// Contacts are recomputed from `lambda` and `translation`.
pub fn certify_optimality(k: &ConvexPolygon, c: &ConvexPolygon, result: &ContainmentResult) -> bool {
    match contacts(k, c, result.lambda, result.translation) {
        Some((normals, _)) => origin_in_hull(&normals),
        None => false,
    }
}

/// `R(K, C) / r(K, C)`, symmetric in its arguments.
pub fn distance_dd(k: &ConvexPolygon, c: &ConvexPolygon) -> Result<f64> {
    Ok(circumradius(k, c)?.lambda / inradius(k, c)?)
}
