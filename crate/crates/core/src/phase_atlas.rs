//! Phase diagrams: which candidate axis attains `α₁` across the shape
//! parameters of triangles and parallelograms.
//!
//! Three parameterizations are supported:
//!
//! * `triangle-sides`: sides `(x, y, 1)` with `0 < x < y < 1 < x + y`.
//! * `triangle-xy`: apex `(x, y)` over the base `(0, 0)–(1, 0)` with
//!   `x > 1/2`, `y > 0`, `x² + y² < 1`.
//! * `parallelogram`: side ratio `r > 1` and obtuse angle `θ ∈ (π/2, π)`.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI, SQRT_2};
use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;

use crate::chirality::AxisKind;
use crate::closed_form::{candidate_axes, parallelogram_axis_values, ParallelogramShape, TriangleShape};
use crate::error::{Error, Result};
use crate::geometry::{ConvexPolygon, Point2};
use crate::io::fmt_sig;

/// Parameter-space distance under which a point counts as on a boundary.
pub const EPS_PHASE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseConstants {
    /// Positive root of `y⁴ + y³ = 1`.
    pub y0: f64,
    /// Positive root of `16x⁴ - 2x - 1 = 0`.
    pub x0: f64,
}

/// Root of a continuous function with a sign change on `[lo, hi]`.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut flo = f(lo);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn solve_constants() -> PhaseConstants {
    PhaseConstants {
        y0: bisect(|y| y.powi(4) + y.powi(3) - 1.0, 0.5, 1.0, 1e-15),
        x0: bisect(|x| 16.0 * x.powi(4) - 2.0 * x - 1.0, 0.5, 1.0, 1e-15),
    }
}

fn constants() -> &'static PhaseConstants {
    static CONSTANTS: std::sync::OnceLock<PhaseConstants> = std::sync::OnceLock::new();
    CONSTANTS.get_or_init(solve_constants)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RegionTag {
    /// Parallelogram: edge bisector.
    B,
    /// Parallelogram: diagonal bisector.
    D,
    /// Parallelogram: John-ellipse axis.
    J,
    /// Triangle: bisector of the largest angle.
    L,
    /// Triangle: bisector of the smallest angle.
    S,
    /// Triangle: perpendicular to the longest edge.
    P,
}

impl RegionTag {
    pub fn axis_kind(self) -> AxisKind {
        match self {
            RegionTag::B => AxisKind::EdgeBisector,
            RegionTag::D => AxisKind::DiagonalBisector,
            RegionTag::J => AxisKind::JohnAxis,
            RegionTag::L => AxisKind::BisectorLargestAngle,
            RegionTag::S => AxisKind::BisectorSmallestAngle,
            RegionTag::P => AxisKind::PerpLongestEdge,
        }
    }

    pub fn from_axis_kind(kind: AxisKind) -> Option<Self> {
        [RegionTag::B, RegionTag::D, RegionTag::J, RegionTag::L, RegionTag::S, RegionTag::P]
            .into_iter()
            .find(|t| t.axis_kind() == kind)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RegionTag::B => "B",
            RegionTag::D => "D",
            RegionTag::J => "J",
            RegionTag::L => "L",
            RegionTag::S => "S",
            RegionTag::P => "P",
        }
    }

    fn color(self) -> &'static str {
        match self {
            RegionTag::B | RegionTag::L => "#4e79a7",
            RegionTag::D | RegionTag::S => "#f28e2b",
            RegionTag::J | RegionTag::P => "#59a14f",
        }
    }
}

impl fmt::Display for RegionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PhaseRegion {
    pub tag: RegionTag,
    pub on_boundary: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    TriangleSides,
    TriangleXy,
    Parallelogram,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::TriangleSides, Family::TriangleXy, Family::Parallelogram];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::TriangleSides => "triangle-sides",
            Family::TriangleXy => "triangle-xy",
            Family::Parallelogram => "parallelogram",
        }
    }

    /// Bounding box `(p1_min, p1_max, p2_min, p2_max)` of the domain.
    pub fn bounds(self) -> (f64, f64, f64, f64) {
        match self {
            Family::TriangleSides => (0.0, 1.0, 0.5, 1.0),
            Family::TriangleXy => (0.5, 1.0, 0.0, 1.0),
            Family::Parallelogram => (1.0, 3.0, FRAC_PI_2, PI),
        }
    }

    /// Maps the unit square onto the family's domain so that every interior
    /// point of the square lands on a valid shape.
    pub fn map_unit(self, s: f64, t: f64) -> (f64, f64) {
        match self {
            Family::TriangleSides => {
                let y = 0.5 + 0.5 * t;
                (1.0 - y + s * (2.0 * y - 1.0), y)
            }
            Family::TriangleXy => {
                let x = 0.5 + 0.5 * s;
                (x, t * (1.0 - x * x).sqrt())
            }
            Family::Parallelogram => (1.0 + 2.0 * s, FRAC_PI_2 + FRAC_PI_2 * t),
        }
    }

    pub fn contains(self, p1: f64, p2: f64) -> bool {
        match self {
            Family::TriangleSides => 0.0 < p1 && p1 < p2 && p2 < 1.0 && 1.0 < p1 + p2,
            Family::TriangleXy => p1 > 0.5 && p2 > 0.0 && p1 * p1 + p2 * p2 < 1.0,
            Family::Parallelogram => p1 > 1.0 && FRAC_PI_2 < p2 && p2 < PI,
        }
    }

    fn check(self, p1: f64, p2: f64) -> Result<()> {
        if self.contains(p1, p2) {
            Ok(())
        } else {
            Err(Error::OutOfDomain(p1, p2))
        }
    }

    /// Closed-form values of the three competing axes.
    pub fn values(self, p1: f64, p2: f64) -> Result<[(RegionTag, f64); 3]> {
        self.check(p1, p2)?;
        Ok(match self {
            Family::TriangleSides => {
                let (x, y) = (p1, p2);
                [(RegionTag::L, y / x), (RegionTag::S, 1.0 / y), (RegionTag::P, 1.0 + y * y - x * x)]
            }
            Family::TriangleXy => {
                let (x, y) = (p1, p2);
                let a = (x - 1.0).hypot(y);
                let b = x.hypot(y);
                [(RegionTag::L, b / a), (RegionTag::S, 1.0 / b), (RegionTag::P, 2.0 * x)]
            }
            Family::Parallelogram => {
                let v = parallelogram_axis_values(&ParallelogramShape::new(p1, p2)?);
                [(RegionTag::B, v.entries[0].1), (RegionTag::D, v.entries[1].1), (RegionTag::J, v.entries[2].1)]
            }
        })
    }

    /// Closed-form argmin with ties broken by the order of [`Family::values`].
    pub fn argmin(self, p1: f64, p2: f64) -> Result<(RegionTag, f64)> {
        let v = self.values(p1, p2)?;
        Ok(v.into_iter()
            .fold(v[0], |best, e| if e.1 < best.1 { e } else { best }))
    }

    /// The polygon the parameters describe.
    pub fn realization(self, p1: f64, p2: f64) -> Result<ConvexPolygon> {
        self.check(p1, p2)?;
        match self {
            Family::TriangleSides => TriangleShape::new(p1, p2, 1.0)?.realization(),
            Family::TriangleXy => ConvexPolygon::new(vec![
                Point2::ORIGIN,
                Point2::new(1.0, 0.0),
                Point2::new(p1, p2),
            ]),
            Family::Parallelogram => ParallelogramShape::new(p1, p2)?.realization(),
        }
    }

    pub fn classify(self, p1: f64, p2: f64) -> Result<PhaseRegion> {
        match self {
            Family::TriangleSides => triangle_phase(p1, p2),
            Family::TriangleXy => triangle_phase_xy(p1, p2),
            Family::Parallelogram => parallelogram_phase(p1, p2),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::Parse {
                line: 0,
                message: format!("unknown family '{s}'"),
            })
    }
}

/// Lower boundary `x = Ψ₁(y)` of the triangle-sides diagram: `S` for
/// `x <= Ψ₁(y)`.
pub fn sides_psi1(y: f64) -> f64 {
    if y <= FRAC_1_SQRT_2 {
        0.0
    } else if y <= constants().y0 {
        ((y.powi(3) + y - 1.0) / y).sqrt()
    } else {
        y * y
    }
}

/// Upper boundary `x = Ψ₂(y)` of the triangle-sides diagram: `L` for
/// `x > Ψ₂(y)`.
pub fn sides_psi2(y: f64) -> f64 {
    if y <= constants().y0 {
        0.5 * ((y * y + 4.0).sqrt() - y)
    } else {
        y * y
    }
}

/// Upper boundary `y = Ψ₁(x)` of the triangle-xy diagram: `S` for
/// `y >= Ψ₁(x)`.
pub fn xy_psi1(x: f64) -> f64 {
    if x <= constants().x0 {
        ((-2.0 * x * x + 1.0 + (5.0 - 8.0 * x).sqrt()) / 2.0).sqrt()
    } else if x < FRAC_1_SQRT_2 {
        (1.0 - 4.0 * x.powi(4)).sqrt() / (2.0 * x)
    } else {
        0.0
    }
}

/// Lower boundary `y = Ψ₂(x)` of the triangle-xy diagram: `P` for
/// `y < Ψ₂(x)`.
pub fn xy_psi2(x: f64) -> f64 {
    if x <= constants().x0 {
        (x * x * (3.0 - 2.0 * x) / (1.0 + 2.0 * x)).sqrt()
    } else if x < FRAC_1_SQRT_2 {
        (1.0 - 4.0 * x.powi(4)).sqrt() / (2.0 * x)
    } else {
        0.0
    }
}

fn f_jd(r: f64) -> f64 {
    (-r * r + (r.powi(4) + 6.0 * r * r - 7.0).sqrt() + 1.0) / (2.0 * r)
}

fn angle_of(y: f64) -> f64 {
    (-0.5 * y).clamp(-1.0, 1.0).acos()
}

/// Boundary `θ = Ψ₁(r)` of the parallelogram diagram: `D` for `θ <= Ψ₁(r)`.
pub fn para_psi1(r: f64) -> f64 {
    angle_of(if r < SQRT_2 { r - 1.0 / r } else { f_jd(r) })
}

/// Boundary `θ = Ψ₂(r)` of the parallelogram diagram: `J` for `θ >= Ψ₂(r)`.
pub fn para_psi2(r: f64) -> f64 {
    angle_of(if r < SQRT_2 {
        1.0 / r + (2.0 - r * r).sqrt()
    } else {
        f_jd(r)
    })
}

/// The obtuse angle at which a parallelogram with ratio `r >= √2` reaches
/// `α₁ = √2`, from `cos θ = (1/r - r)/2`.
pub fn para_extremal_theta(r: f64) -> f64 {
    (0.5 * (1.0 / r - r)).clamp(-1.0, 1.0).acos()
}

fn near(a: f64, b: f64) -> bool {
    (a - b).abs() <= EPS_PHASE
}

/// Region of the triangle with sides `(x, y, 1)`.
pub fn triangle_phase(x: f64, y: f64) -> Result<PhaseRegion> {
    Family::TriangleSides.check(x, y)?;
    let (lo, hi) = (sides_psi1(y), sides_psi2(y));
    let tag = if x <= lo {
        RegionTag::S
    } else if x > hi {
        RegionTag::L
    } else {
        RegionTag::P
    };
    let on_boundary = (lo > 0.0 && near(x, lo)) || near(x, hi);
    Ok(PhaseRegion { tag, on_boundary })
}

/// Region of the triangle with apex `(x, y)` over the unit base.
pub fn triangle_phase_xy(x: f64, y: f64) -> Result<PhaseRegion> {
    Family::TriangleXy.check(x, y)?;
    let (hi, lo) = (xy_psi1(x), xy_psi2(x));
    let tag = if y >= hi {
        RegionTag::S
    } else if y < lo {
        RegionTag::P
    } else {
        RegionTag::L
    };
    let on_boundary = near(y, hi) || near(y, lo) || near(x, FRAC_1_SQRT_2) && y <= EPS_PHASE;
    Ok(PhaseRegion { tag, on_boundary })
}

/// Region of the parallelogram with ratio `r` and obtuse angle `theta`.
pub fn parallelogram_phase(r: f64, theta: f64) -> Result<PhaseRegion> {
    Family::Parallelogram.check(r, theta)?;
    let (lo, hi) = (para_psi1(r), para_psi2(r));
    let tag = if theta <= lo {
        RegionTag::D
    } else if theta >= hi {
        RegionTag::J
    } else {
        RegionTag::B
    };
    let on_boundary = near(theta, lo) || near(theta, hi);
    Ok(PhaseRegion { tag, on_boundary })
}

/// One classified grid point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridCell {
    pub p1: f64,
    pub p2: f64,
    pub region: PhaseRegion,
    pub alpha1: f64,
    /// Angle of the optimal axis on [`Family::realization`].
    pub axis_theta: f64,
}

/// Cell-centred `resolution × resolution` grid in row-major order (`p2`
/// outer, `p1` inner).
pub fn phase_grid(family: Family, resolution: usize) -> Result<Vec<GridCell>> {
    if resolution < 16 {
        return Err(Error::OutOfRange {
            value: resolution as f64,
            min: 16.0,
            max: f64::INFINITY,
        });
    }
    let n = resolution;
    (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx % n, idx / n);
            let s = (i as f64 + 0.5) / n as f64;
            let t = (j as f64 + 0.5) / n as f64;
            let (p1, p2) = family.map_unit(s, t);
            let region = family.classify(p1, p2)?;
            let values = family.values(p1, p2)?;
            let alpha1 = values.iter().find(|v| v.0 == region.tag).map(|v| v.1).unwrap_or(f64::NAN);
            let k = family.realization(p1, p2)?;
            let kind = region.tag.axis_kind();
            let axis_theta = candidate_axes(&k)
                .into_iter()
                .find(|(c, _)| *c == kind)
                .map(|(_, a)| a.theta())
                .unwrap_or(f64::NAN);
            Ok(GridCell { p1, p2, region, alpha1, axis_theta })
        })
        .collect()
}

/// CSV `p1,p2,region,alpha1,axis_theta`; boundary cells carry a `*` after
/// the region tag.
pub fn write_grid_csv<W: Write>(cells: &[GridCell], mut w: W) -> Result<()> {
    writeln!(w, "p1,p2,region,alpha1,axis_theta")?;
    for c in cells {
        let star = if c.region.on_boundary { "*" } else { "" };
        writeln!(
            w,
            "{},{},{}{},{},{}",
            fmt_sig(c.p1, 12),
            fmt_sig(c.p2, 12),
            c.region.tag,
            star,
            fmt_sig(c.alpha1, 12),
            fmt_sig(c.axis_theta, 12)
        )?;
    }
    Ok(())
}

fn sample_curve<F: Fn(f64) -> Option<(f64, f64)>>(lo: f64, hi: f64, f: F) -> Vec<(f64, f64)> {
    (0..=400)
        .filter_map(|i| f(lo + (hi - lo) * i as f64 / 400.0))
        .collect()
}

/// Boundary curves in parameter coordinates, each with a dashed flag.
pub fn boundary_curves(family: Family) -> Vec<(Vec<(f64, f64)>, bool)> {
    let eps = 1e-9;
    match family {
        Family::TriangleSides => {
            let inside = |x: f64, y: f64| (x > 1.0 - y && x < y).then_some((x, y));
            vec![
                (sample_curve(FRAC_1_SQRT_2 + eps, 1.0 - eps, |y| inside(sides_psi1(y), y)), false),
                (sample_curve(0.5 + eps, 1.0 - eps, |y| inside(sides_psi2(y), y)), false),
            ]
        }
        Family::TriangleXy => {
            let inside = |x: f64, y: f64| (y > 0.0 && x * x + y * y < 1.0).then_some((x, y));
            vec![
                (sample_curve(0.5 + eps, FRAC_1_SQRT_2, |x| inside(x, xy_psi1(x))), false),
                (sample_curve(0.5 + eps, FRAC_1_SQRT_2, |x| inside(x, xy_psi2(x))), false),
            ]
        }
        Family::Parallelogram => vec![
            (sample_curve(1.0, 3.0, |r| Some((r, para_psi1(r)))), false),
            (sample_curve(1.0, SQRT_2, |r| Some((r, para_psi2(r)))), false),
            (sample_curve(SQRT_2, 3.0, |r| Some((r, para_extremal_theta(r)))), true),
        ],
    }
}

/// Scatter plot of the grid with the boundary curves overlaid. The view box
/// is the parameter domain with `p2` pointing up.
pub fn write_grid_svg<W: Write>(family: Family, cells: &[GridCell], resolution: usize, mut w: W) -> Result<()> {
    let (x0, x1, y0, y1) = family.bounds();
    let (wd, ht) = (x1 - x0, y1 - y0);
    let radius = 0.45 * wd.min(ht) / resolution as f64;
    writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="600" height="{}" preserveAspectRatio="none">"#,
        fmt_sig(x0, 12),
        fmt_sig(-y1, 12),
        fmt_sig(wd, 12),
        fmt_sig(ht, 12),
        (600.0 * ht / wd).round()
    )?;
    writeln!(w, "<title>{family} phase diagram</title>")?;
    writeln!(w, r#"<g transform="scale(1,-1)">"#)?;
    for c in cells {
        writeln!(
            w,
            r#"<circle cx="{}" cy="{}" r="{}" fill="{}"/>"#,
            fmt_sig(c.p1, 8),
            fmt_sig(c.p2, 8),
            fmt_sig(radius, 4),
            c.region.tag.color()
        )?;
    }
    for (curve, dashed) in boundary_curves(family) {
        if curve.is_empty() {
            continue;
        }
        let pts: Vec<String> = curve
            .iter()
            .map(|(a, b)| format!("{},{}", fmt_sig(*a, 8), fmt_sig(*b, 8)))
            .collect();
        let dash = if dashed { r#" stroke-dasharray="4 3""# } else { "" };
        writeln!(
            w,
            r#"<polyline points="{}" fill="none" stroke="black" stroke-width="1.5" vector-effect="non-scaling-stroke"{dash}/>"#,
            pts.join(" ")
        )?;
    }
    writeln!(w, "</g>")?;
    writeln!(w, "</svg>")?;
    Ok(())
}

/// Writes the grid CSV and, if requested, the SVG rendering. Returns the
/// number of rows written.
pub fn emit_grid(family: Family, resolution: usize, csv_path: &Path, svg_path: Option<&Path>) -> Result<usize> {
    let cells = phase_grid(family, resolution)?;
    let mut csv = BufWriter::new(File::create(csv_path)?);
    write_grid_csv(&cells, &mut csv)?;
    csv.flush()?;
    if let Some(path) = svg_path {
        let mut svg = BufWriter::new(File::create(path)?);
        write_grid_svg(family, &cells, resolution, &mut svg)?;
        svg.flush()?;
    }
    Ok(cells.len())
}
