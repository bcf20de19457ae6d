//! Randomized verification of the general chirality inequalities and
//! evaluation of the explicit planar constants.
//!
//! Every check is stored as `lhs <= rhs`, passing when
//! `lhs <= rhs + EPS_BOUND`. Equalities are recorded as `|a - b| <= 0`.

use std::f64::consts::{PI, SQRT_2};
use std::io::Write;

use rayon::prelude::*;

use crate::chirality::{alpha1_numeric, alpha2, asymmetry_alpha0, SweepOptions};
use crate::containment::distance_dd;
use crate::error::{Error, Result};
use crate::geometry::{ConvexPolygon, Point2};
use crate::io::fmt_sig;
use crate::phase_atlas::bisect;
use crate::sampling::{random_polygon, random_symmetric_polygon, rng};

/// Slack allowed on every inequality; dominated by the sweep tolerance.
pub const EPS_BOUND: f64 = 1e-6;
/// Sides of the polygon standing in for the unit disk.
pub const DISK_SIDES: usize = 720;

#[derive(Clone, Debug, PartialEq)]
pub struct BoundCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`; negative margins within `EPS_BOUND` still pass.
    pub margin: f64,
    pub pass: bool,
}

impl BoundCheck {
    pub fn le(name: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        Self {
            name: name.into(),
            lhs,
            rhs,
            margin: rhs - lhs,
            pass: lhs <= rhs + EPS_BOUND,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub body_id: String,
    pub alpha0: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    pub checks: Vec<BoundCheck>,
}

impl BoundReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn min_margin(&self) -> f64 {
        self.checks.iter().map(|c| c.margin).fold(f64::INFINITY, f64::min)
    }

    fn new(body_id: &str, alpha0: f64, alpha1: f64) -> Self {
        Self {
            body_id: body_id.to_string(),
            alpha0,
            alpha1,
            alpha2: 1.0,
            checks: Vec::new(),
        }
    }
}

/// `α₀` and `α₁` of one body.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Alphas {
    pub alpha0: f64,
    pub alpha1: f64,
}

pub fn alphas(k: &ConvexPolygon, opts: &SweepOptions) -> Result<Alphas> {
    Ok(Alphas {
        alpha0: asymmetry_alpha0(k)?.value,
        alpha1: alpha1_numeric(k, opts)?.value,
    })
}

/// Regular `sides`-gon inscribed in the unit circle.
pub fn disk_polygon(sides: usize) -> Result<ConvexPolygon> {
    ConvexPolygon::new(
        (0..sides)
            .map(|i| Point2::from_angle(2.0 * PI * i as f64 / sides as f64))
            .collect(),
    )
}

/// Upper bound on `d_D(K, B)` for the unit disk `B`, from an inscribed
/// polygon `P ⊂ B ⊂ P / cos(π/m)`.
pub fn disk_distance_bound(k: &ConvexPolygon) -> Result<f64> {
    let disk = disk_polygon(DISK_SIDES)?;
    Ok(distance_dd(k, &disk)? / (PI / DISK_SIDES as f64).cos())
}

/// `1 <= α₁ <= min{2, (α₀ + 1)/2 · √2}`, `α₁ <= √(2α₀)`, `1 <= α₀ <= 2`,
/// `α₁ <= c(2,1)` and `α₁ <= d_D(K, disk)`.
pub fn check_main_bounds(k: &ConvexPolygon, opts: &SweepOptions) -> Result<BoundReport> {
    let a = alphas(k, opts)?;
    main_bounds_from(k, "body", a)
}

fn main_bounds_from(k: &ConvexPolygon, body_id: &str, a: Alphas) -> Result<BoundReport> {
    let c21 = eval_constants().c21_radical;
    let mut r = BoundReport::new(body_id, a.alpha0, a.alpha1);
    r.checks = vec![
        BoundCheck::le("1<=alpha1", 1.0, a.alpha1),
        BoundCheck::le("alpha1<=2", a.alpha1, 2.0),
        BoundCheck::le("alpha1<=(alpha0+1)/2*sqrt2", a.alpha1, (a.alpha0 + 1.0) / 2.0 * SQRT_2),
        BoundCheck::le("alpha1<=sqrt(2*alpha0)", a.alpha1, improved_upper_bound(a.alpha0, 2)),
        BoundCheck::le("1<=alpha0", 1.0, a.alpha0),
        BoundCheck::le("alpha0<=2", a.alpha0, 2.0),
        BoundCheck::le("alpha1<=c21", a.alpha1, c21),
        BoundCheck::le("alpha1<=dD-to-disk", a.alpha1, disk_distance_bound(k)?),
    ];
    Ok(r)
}

/// `max{α_j(K)/α_j(L), α_j(L)/α_j(K)} <= d_D(K, L)` for `j = 0, 1`, plus
/// `α_j(K) <= d_D(K, L)` whenever `α_j(L) = 1`.
pub fn check_ratio_bound(k: &ConvexPolygon, l: &ConvexPolygon, opts: &SweepOptions) -> Result<BoundReport> {
    ratio_bound_from(k, l, "pair", alphas(k, opts)?, alphas(l, opts)?)
}

fn ratio_bound_from(k: &ConvexPolygon, l: &ConvexPolygon, body_id: &str, ak: Alphas, al: Alphas) -> Result<BoundReport> {
    let dd = distance_dd(k, l)?;
    let mut r = BoundReport::new(body_id, ak.alpha0, ak.alpha1);
    let ratio = |a: f64, b: f64| (a / b).max(b / a);
    r.checks.push(BoundCheck::le("alpha0-ratio<=dD", ratio(ak.alpha0, al.alpha0), dd));
    r.checks.push(BoundCheck::le("alpha1-ratio<=dD", ratio(ak.alpha1, al.alpha1), dd));
    if al.alpha0 <= 1.0 + 1e-9 {
        r.checks.push(BoundCheck::le("alpha0<=dD(symmetric L)", ak.alpha0, dd));
    }
    if al.alpha1 <= 1.0 + 1e-9 {
        r.checks.push(BoundCheck::le("alpha1<=dD(mirror-symmetric L)", ak.alpha1, dd));
    }
    Ok(r)
}

/// `max{α₀/α₂, α₂/α₀, α₁/α₁} <= α₀`; for 0-symmetric bodies additionally
/// `α₁(K) = α₁(K°)` and `α₁ <= √2`.
pub fn check_symmetry_relations(k: &ConvexPolygon, opts: &SweepOptions) -> Result<BoundReport> {
    symmetry_from(k, "body", alphas(k, opts)?, opts)
}

fn symmetry_from(k: &ConvexPolygon, body_id: &str, a: Alphas, opts: &SweepOptions) -> Result<BoundReport> {
    let a2 = alpha2(k).value;
    let mut r = BoundReport::new(body_id, a.alpha0, a.alpha1);
    r.checks.push(BoundCheck::le("alpha1/alpha1<=alpha0", 1.0, a.alpha0));
    r.checks.push(BoundCheck::le("alpha0/alpha2<=alpha0", a.alpha0 / a2, a.alpha0));
    r.checks.push(BoundCheck::le("alpha2/alpha0<=alpha0", a2 / a.alpha0, a.alpha0));
    if k.is_symmetric_about(Point2::ORIGIN, 1e-9 * k.diameter()) {
        let polar = alpha1_numeric(&k.polar()?, opts)?.value;
        r.checks.push(BoundCheck::le("|alpha1(K)-alpha1(polar)|=0", (a.alpha1 - polar).abs(), 0.0));
        r.checks.push(BoundCheck::le("alpha1<=sqrt2(point-symmetric)", a.alpha1, SQRT_2));
    }
    Ok(r)
}

/// `√(α₀ n)`.
pub fn improved_upper_bound(alpha0: f64, n: usize) -> f64 {
    (alpha0 * n as f64).sqrt()
}

/// `s (1 + (n + 1) ε / (1 - n ε))`.
pub fn stability_factor(s: f64, n: usize, eps: f64) -> f64 {
    let n = n as f64;
    s * (1.0 + (n + 1.0) * eps / (1.0 - n * eps))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Constants {
    /// `s(2,1) = √2`, the supremum of `α₁` over triangles.
    pub s21: f64,
    /// `ε(2,1)` solving `√(2(2 - ε)) = s(2,1)(1 + 3ε/(1 - 2ε))`.
    pub eps21: f64,
    /// `c(2,1)` from its closed radical expression.
    pub c21_radical: f64,
    /// `c(2,1) = √(2(2 - ε(2,1)))` from the bisection root.
    pub c21_fixed_point: f64,
}

pub fn eval_constants() -> Constants {
    let s21 = SQRT_2;
    let cube = (631.0 + 54.0 * 137f64.sqrt()).cbrt();
    let c21_radical = ((13.0 - 11.0 / cube + cube) / 6.0).sqrt();
    let eps21 = bisect(
        |e| (2.0 * (2.0 - e)).sqrt() - stability_factor(s21, 2, e),
        0.0,
        0.5 - 1e-12,
        1e-16,
    );
    Constants {
        s21,
        eps21,
        c21_radical,
        c21_fixed_point: (2.0 * (2.0 - eps21)).sqrt(),
    }
}

/// `conv(B ∪ βT)` with `B` approximated by a regular `disk_sides`-gon and
/// `T` the regular triangle inscribed in the unit circle.
pub fn make_asymmetry_witness(beta: f64, disk_sides: usize) -> Result<ConvexPolygon> {
    if !(1.0..=2.0).contains(&beta) {
        return Err(Error::OutOfRange { value: beta, min: 1.0, max: 2.0 });
    }
    if disk_sides < 3 {
        return Err(Error::OutOfRange {
            value: disk_sides as f64,
            min: 3.0,
            max: f64::INFINITY,
        });
    }
    let mut pts: Vec<Point2> = (0..disk_sides)
        .map(|i| Point2::from_angle(2.0 * PI * i as f64 / disk_sides as f64))
        .collect();
    for k in 0..3 {
        pts.push(Point2::from_angle(PI / 2.0 + 2.0 * PI * k as f64 / 3.0) * beta);
    }
    ConvexPolygon::convex_hull(&pts)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CampaignConfig {
    pub bodies: usize,
    pub pairs: usize,
    pub symmetric: usize,
    pub seed: u64,
    pub sweep: SweepOptions,
}

impl CampaignConfig {
    /// `count` random bodies, with pair and symmetric counts scaled as
    /// 200 and 300 per 500 bodies.
    pub fn with_count(count: usize, seed: u64, sweep: SweepOptions) -> Self {
        Self {
            bodies: count,
            pairs: count * 2 / 5,
            symmetric: count * 3 / 5,
            seed,
            sweep,
        }
    }
}

/// Runs every check over seeded random bodies. Shapes are drawn
/// sequentially from one generator and evaluated in parallel, so the report
/// depends only on the configuration.
pub fn run_campaign(cfg: &CampaignConfig) -> Result<Vec<BoundReport>> {
    let mut g = rng(cfg.seed);
    let bodies: Vec<ConvexPolygon> = (0..cfg.bodies).map(|_| random_polygon(&mut g, 5, 12)).collect();
    let pairs: Vec<(ConvexPolygon, ConvexPolygon)> = (0..cfg.pairs)
        .map(|_| (random_polygon(&mut g, 5, 12), random_polygon(&mut g, 5, 12)))
        .collect();
    let symmetric: Vec<ConvexPolygon> = (0..cfg.symmetric)
        .map(|_| random_symmetric_polygon(&mut g, 4, 12))
        .collect();
    let opts = &cfg.sweep;

    let mut reports: Vec<BoundReport> = bodies
        .par_iter()
        .enumerate()
        .map(|(i, k)| {
            let a = alphas(k, opts)?;
            let id = format!("body-{i}");
            let mut r = main_bounds_from(k, &id, a)?;
            r.checks.extend(symmetry_from(k, &id, a, opts)?.checks);
            Ok(r)
        })
        .collect::<Result<_>>()?;
    reports.extend(
        pairs
            .par_iter()
            .enumerate()
            .map(|(i, (k, l))| ratio_bound_from(k, l, &format!("pair-{i}"), alphas(k, opts)?, alphas(l, opts)?))
            .collect::<Result<Vec<_>>>()?,
    );
    reports.extend(
        symmetric
            .par_iter()
            .enumerate()
            .map(|(i, k)| {
                let a = alphas(k, opts)?;
                let id = format!("symmetric-{i}");
                let mut r = main_bounds_from(k, &id, a)?;
                r.checks.extend(symmetry_from(k, &id, a, opts)?.checks);
                Ok(r)
            })
            .collect::<Result<Vec<_>>>()?,
    );
    Ok(reports)
}

/// CSV `body_id,check,lhs,rhs,margin,pass`.
pub fn write_report_csv<W: Write>(reports: &[BoundReport], mut w: W) -> Result<()> {
    writeln!(w, "body_id,check,lhs,rhs,margin,pass")?;
    for r in reports {
        for c in &r.checks {
            writeln!(
                w,
                "{},{},{},{},{},{}",
                r.body_id,
                c.name,
                fmt_sig(c.lhs, 12),
                fmt_sig(c.rhs, 12),
                fmt_sig(c.margin, 12),
                c.pass
            )?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::polygon;
    use approx::assert_abs_diff_eq;

    fn fast() -> SweepOptions {
        SweepOptions { grid: 512, ..SweepOptions::default() }
    }

    #[test]
    fn constants_agree() {
        let c = eval_constants();
        assert_abs_diff_eq!(c.c21_radical, 1.9490, epsilon = 1e-3);
        assert!(c.c21_radical < 1.95);
        assert_abs_diff_eq!(c.c21_radical, c.c21_fixed_point, epsilon = 1e-9);
        assert_eq!(stability_factor(SQRT_2, 2, 0.0), SQRT_2);
        assert_abs_diff_eq!(improved_upper_bound(2.0, 2), 2.0);
    }

    #[test]
    fn triangle_bounds() {
        let t = polygon(&[(0.0, 0.0), (1.0, 0.0), (0.3, 0.8)]).unwrap();
        let r = check_main_bounds(&t, &fast()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_abs_diff_eq!(r.alpha0, 2.0, epsilon = 1e-12);
        assert!(r.alpha1 < SQRT_2);
        let s = check_symmetry_relations(&t, &fast()).unwrap();
        assert!(s.passed());
        let tight = s.checks.iter().find(|c| c.name == "alpha0/alpha2<=alpha0").unwrap();
        assert_abs_diff_eq!(tight.margin, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn disk_polygon_is_nearly_round() {
        let d = disk_polygon(360).unwrap();
        let r = check_main_bounds(&d, &fast()).unwrap();
        assert!(r.passed());
        assert_abs_diff_eq!(r.alpha0, 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(r.alpha1, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn ratio_bound_with_mirror_symmetric_partner() {
        let k = polygon(&[(0.0, 0.0), (1.0, 0.0), (0.3, 0.8)]).unwrap();
        let l = polygon(&[(0.0, 0.0), (1.0, 0.0), (0.5, 0.8)]).unwrap();
        let r = check_ratio_bound(&k, &l, &fast()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.checks.iter().any(|c| c.name.starts_with("alpha1<=dD")));
        let same = check_ratio_bound(&k, &k, &fast()).unwrap();
        assert!(same.passed());
        for c in &same.checks {
            assert_abs_diff_eq!(c.lhs, 1.0, epsilon = 1e-9);
            assert_abs_diff_eq!(c.rhs, 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn polar_identity_only_for_centered_bodies() {
        let hex = polygon(&[(1.0, 0.0), (0.4, 0.9), (-0.7, 0.8), (-1.0, 0.0), (-0.4, -0.9), (0.7, -0.8)]).unwrap();
        let r = check_symmetry_relations(&hex, &fast()).unwrap();
        assert!(r.checks.iter().any(|c| c.name.starts_with("|alpha1(K)-alpha1(polar)|")));
        assert!(r.passed(), "{r:?}");

        let shifted = polygon(&[(2.0, 1.0), (-2.0, 1.0), (-2.0, -3.0), (2.0, -3.0)]).unwrap();
        let r = check_symmetry_relations(&shifted, &fast()).unwrap();
        assert!(!r.checks.iter().any(|c| c.name.contains("polar")));
    }

    #[test]
    fn witness_examples() {
        let disk = make_asymmetry_witness(1.0, 720).unwrap();
        assert_abs_diff_eq!(asymmetry_alpha0(&disk).unwrap().value, 1.0, epsilon = 1e-4);
        let simplex = make_asymmetry_witness(2.0, 720).unwrap();
        assert_eq!(simplex.len(), 3);
        assert_abs_diff_eq!(asymmetry_alpha0(&simplex).unwrap().value, 2.0, epsilon = 1e-9);
        let mid = make_asymmetry_witness(1.5, 720).unwrap();
        assert_abs_diff_eq!(asymmetry_alpha0(&mid).unwrap().value, 1.5, epsilon = 0.01);
        assert!(make_asymmetry_witness(2.5, 720).is_err());
    }

    #[test]
    fn small_campaign_is_deterministic() {
        let cfg = CampaignConfig::with_count(10, 7, fast());
        let a = run_campaign(&cfg).unwrap();
        assert!(a.iter().all(|r| r.passed()));
        let (mut x, mut y) = (Vec::new(), Vec::new());
        write_report_csv(&a, &mut x).unwrap();
        write_report_csv(&run_campaign(&cfg).unwrap(), &mut y).unwrap();
        assert_eq!(x, y);
    }
}
