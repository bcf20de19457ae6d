//! Minkowski asymmetry `α₀`, chirality `α₁` and the trivial `α₂` of a
//! convex polygon.
//!
//! `α₁(K) = min_θ R(K, Φ_θ(K))` is found by sampling the profile
//! `θ ↦ R(K, Φ_θ(K))` on a uniform grid over `[0, π)` and refining every
//! near-optimal local minimum by golden-section search. The profile is
//! continuous but has kinks where the contact pattern changes, so no
//! derivative information is used.

use std::fmt;

use rayon::prelude::*;

use crate::closed_form::candidate_axes;
use crate::containment::{circumradius, solve_containment};
use crate::error::Result;
use crate::geometry::{Axis, ConvexPolygon};

/// Local minima within this margin of the best grid value are refined. The
/// margin widens to the largest jump between neighbouring samples, since a
/// kink between two samples can dip that far below both.
pub const REFINE_MARGIN: f64 = 1e-3;
/// Angular tolerance for matching a numeric axis to a known candidate.
pub const AXIS_MATCH_TOL: f64 = 1e-6;

/// Which reflection axis attains a chirality value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxisKind {
    Numeric,
    BisectorLargestAngle,
    BisectorMiddleAngle,
    BisectorSmallestAngle,
    PerpLongestEdge,
    PerpMiddleEdge,
    PerpShortestEdge,
    EdgeBisector,
    DiagonalBisector,
    JohnAxis,
    Identity,
}

impl AxisKind {
    pub fn as_str(self) -> &'static str {
        match self {
            AxisKind::Numeric => "numeric",
            AxisKind::BisectorLargestAngle => "bisector-largest-angle",
            AxisKind::BisectorMiddleAngle => "bisector-middle-angle",
            AxisKind::BisectorSmallestAngle => "bisector-smallest-angle",
            AxisKind::PerpLongestEdge => "perp-longest-edge",
            AxisKind::PerpMiddleEdge => "perp-middle-edge",
            AxisKind::PerpShortestEdge => "perp-shortest-edge",
            AxisKind::EdgeBisector => "edge-bisector",
            AxisKind::DiagonalBisector => "diagonal-bisector",
            AxisKind::JohnAxis => "john-axis",
            AxisKind::Identity => "identity",
        }
    }
}

impl fmt::Display for AxisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChiralityResult {
    pub value: f64,
    /// Optimal axis; `None` for `α₀` and `α₂`.
    pub axis: Option<Axis>,
    pub classification: AxisKind,
    /// Every candidate attaining the value, `classification` included.
    pub ties: Vec<AxisKind>,
    /// Sampled `(θ, R(K, Φ_θ(K)))` pairs, when requested.
    pub profile: Option<Vec<(f64, f64)>>,
}

impl ChiralityResult {
    pub(crate) fn scalar(value: f64, classification: AxisKind) -> Self {
        Self {
            value,
            axis: None,
            classification,
            ties: vec![classification],
            profile: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepOptions {
    pub grid: usize,
    pub refine_tol: f64,
    pub keep_profile: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            grid: 2048,
            refine_tol: 1e-10,
            keep_profile: false,
        }
    }
}

/// `α₀(K) = R(K, -K)`.
pub fn asymmetry_alpha0(k: &ConvexPolygon) -> Result<ChiralityResult> {
    let value = circumradius(k, &k.negate())?.lambda;
    let kind = if value <= 1.0 + 1e-9 {
        AxisKind::Identity
    } else {
        AxisKind::Numeric
    };
    Ok(ChiralityResult::scalar(value, kind))
}

/// `α₂(K) = 1`: reflection in the whole plane is the identity.
pub fn alpha2(_k: &ConvexPolygon) -> ChiralityResult {
    ChiralityResult::scalar(1.0, AxisKind::Identity)
}

/// `R(K, Φ_θ(K))` for the line through the origin at angle `theta`.
pub fn chirality_profile(k: &ConvexPolygon, theta: f64) -> Result<f64> {
    Ok(solve_containment(k, &k.reflect(Axis::new(theta)))?.0)
}

/// Profile sampled at `θ_i = iπ/grid`, `i = 0..grid`.
pub fn sample_profile(k: &ConvexPolygon, grid: usize) -> Result<Vec<(f64, f64)>> {
    (0..grid)
        .into_par_iter()
        .map(|i| {
            let theta = std::f64::consts::PI * i as f64 / grid as f64;
            chirality_profile(k, theta).map(|r| (theta, r))
        })
        .collect()
}

fn golden_section<F>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while b - a > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
    }
    Ok(if fc <= fd { (c, fc) } else { (d, fd) })
}

fn lex_better(a: (f64, f64), b: (f64, f64)) -> bool {
    a.1 < b.1 || (a.1 == b.1 && a.0 < b.0)
}

/// Numeric `α₁(K)` with the optimal axis and, for triangles and
/// parallelograms, the name of the candidate axis it coincides with.
pub fn alpha1_numeric(k: &ConvexPolygon, opts: &SweepOptions) -> Result<ChiralityResult> {
    let n = opts.grid.max(3);
    let step = std::f64::consts::PI / n as f64;
    let samples = sample_profile(k, n)?;
    let grid_min = samples.iter().map(|s| s.1).fold(f64::INFINITY, f64::min);

    let margin = (0..n)
        .map(|i| (samples[(i + 1) % n].1 - samples[i].1).abs())
        .fold(REFINE_MARGIN, f64::max);
    let seeds: Vec<usize> = (0..n)
        .filter(|&i| {
            let v = samples[i].1;
            v <= grid_min + margin
                && v <= samples[(i + n - 1) % n].1
                && v <= samples[(i + 1) % n].1
        })
        .collect();

    let refined: Vec<(f64, f64)> = seeds
        .par_iter()
        .map(|&i| {
            let center = samples[i].0;
            let (theta, value) = golden_section(
                |t| chirality_profile(k, t),
                center - step,
                center + step,
                opts.refine_tol,
            )?;
            Ok((Axis::new(theta).theta(), value))
        })
        .collect::<Result<_>>()?;

    let best = samples
        .iter()
        .chain(&refined)
        .copied()
        .fold((0.0, f64::INFINITY), |acc, s| if lex_better(s, acc) { s } else { acc });
    let axis = Axis::new(best.0);

    let mut ties: Vec<AxisKind> = candidate_axes(k)
        .into_iter()
        .filter(|(_, a)| a.angle_to(axis) <= AXIS_MATCH_TOL)
        .map(|(kind, _)| kind)
        .collect();
    ties.sort_unstable();
    ties.dedup();
    let classification = if best.1 <= 1.0 + 1e-9 && ties.is_empty() {
        AxisKind::Identity
    } else {
        ties.first().copied().unwrap_or(AxisKind::Numeric)
    };
    if ties.is_empty() {
        ties.push(classification);
    }
    Ok(ChiralityResult {
        value: best.1,
        axis: Some(axis),
        classification,
        ties,
        profile: opts.keep_profile.then_some(samples),
    })
}
