//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit status
//! if any criterion fails.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, SQRT_2};
use std::time::Instant;

use chiral_core::bounds_lab::{
    check_main_bounds, check_ratio_bound, check_symmetry_relations, eval_constants, make_asymmetry_witness,
};
use chiral_core::closed_form::{
    john_axis, john_axis_eigen, john_lambda, parallelogram_axis_values, shape_from_vertices,
};
use chiral_core::phase_atlas::{phase_grid, solve_constants, triangle_phase};
use chiral_core::sampling::{
    random_canonical, random_parallelogram, random_polygon, random_similarity, random_symmetric_polygon,
    random_triangle, rng,
};
use chiral_core::{
    alpha1_numeric, asymmetry_alpha0, parallelogram_alpha1, triangle_alpha1, AxisKind, ConvexPolygon, Family,
    ParallelogramShape, Point2, Result, Shape, SweepOptions, TriangleShape,
};
use rand::Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { pass, detail: detail.into() })
}

fn sweep() -> SweepOptions {
    SweepOptions::default()
}

fn oracle_triangles() -> Result<Outcome> {
    let start = Instant::now();
    let mut g = rng(101);
    let mut worst: f64 = 0.0;
    for _ in 0..500 {
        let t = random_triangle(&mut g);
        let numeric = alpha1_numeric(&t.realization()?, &sweep())?.value;
        worst = worst.max((triangle_alpha1(&t).value - numeric).abs());
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        worst <= 1e-6 && secs <= 120.0,
        format!("500 triangles, max |closed - numeric| = {worst:.2e}, {secs:.1} s"),
    )
}

fn oracle_parallelograms() -> Result<Outcome> {
    let mut g = rng(102);
    let mut worst: f64 = 0.0;
    for _ in 0..500 {
        let p = random_parallelogram(&mut g);
        let numeric = alpha1_numeric(&p.realization()?, &sweep())?.value;
        worst = worst.max((parallelogram_alpha1(&p).value - numeric).abs());
    }
    outcome(worst <= 1e-6, format!("500 parallelograms, max |closed - numeric| = {worst:.2e}"))
}

fn extremal_parallelogram() -> Result<Outcome> {
    let k = ConvexPolygon::new(vec![
        Point2::new(1.0, 0.0),
        Point2::new(2.0, 1.0),
        Point2::new(-1.0, 0.0),
        Point2::new(-2.0, -1.0),
    ])?;
    let Shape::Parallelogram(p) = shape_from_vertices(&k)? else {
        return outcome(false, "not recognized as a parallelogram");
    };
    let closed = (parallelogram_alpha1(&p).value - SQRT_2).abs();
    let numeric = (alpha1_numeric(&k, &sweep())?.value - SQRT_2).abs();
    outcome(
        closed <= 1e-9 && numeric <= 1e-6,
        format!("|closed - √2| = {closed:.2e}, |numeric - √2| = {numeric:.2e}"),
    )
}

fn triangle_supremum() -> Result<Outcome> {
    let mut g = rng(104);
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let mut scalene = 0;
    while scalene < 100_000 {
        let t = random_triangle(&mut g);
        if t.y - t.x <= 1e-9 || t.z - t.y <= 1e-9 {
            continue;
        }
        scalene += 1;
        let v = triangle_alpha1(&t).value;
        lo = lo.min(v);
        hi = hi.max(v);
    }
    let in_range = lo > 1.0 && hi < SQRT_2;

    let apex = |i: usize| -> Result<f64> {
        let (x, y) = (FRAC_1_SQRT_2, 1.0 / (i as f64 + 2.0));
        let t = TriangleShape::new(1.0, x.hypot(y), (x - 1.0).hypot(y))?;
        Ok(triangle_alpha1(&t).value)
    };
    let seq: Vec<f64> = (0..=1000).map(apex).collect::<Result<_>>()?;
    let increasing = seq.windows(2).all(|w| w[1] > w[0]);
    let last = seq[1000];
    outcome(
        in_range && increasing && last >= SQRT_2 - 1e-3,
        format!(
            "1e5 scalene: α₁ ∈ [{lo:.6}, {hi:.9}]; apex sequence increasing = {increasing}, value at i=1000: {last:.9}"
        ),
    )
}

fn phase_constants() -> Result<Outcome> {
    let c = solve_constants();
    outcome(
        (c.y0 - 0.819173).abs() <= 1e-5 && (c.x0 - 0.61037).abs() <= 1e-5,
        format!("y0 = {:.12}, x0 = {:.12}", c.y0, c.x0),
    )
}

fn phase_consistency() -> Result<Outcome> {
    let mut pass = true;
    let mut parts = Vec::new();
    for family in Family::ALL {
        let n = 200;
        let cells = phase_grid(family, n)?;
        let mut boundary = 0;
        let mut argmin_mismatch = 0;
        for c in &cells {
            if c.region.on_boundary {
                boundary += 1;
                continue;
            }
            if family.argmin(c.p1, c.p2)?.0 != c.region.tag {
                argmin_mismatch += 1;
            }
        }
        let mut numeric_mismatch = 0;
        let mut sampled = 0;
        for j in (0..n).step_by(4) {
            for i in (0..n).step_by(4) {
                let c = &cells[j * n + i];
                if c.region.on_boundary {
                    continue;
                }
                sampled += 1;
                let k = family.realization(c.p1, c.p2)?;
                let r = alpha1_numeric(&k, &sweep())?;
                if !r.ties.contains(&c.region.tag.axis_kind()) {
                    numeric_mismatch += 1;
                }
            }
        }
        pass &= argmin_mismatch == 0 && numeric_mismatch == 0;
        parts.push(format!(
            "{family}: {argmin_mismatch} argmin mismatches ({boundary} boundary cells skipped), {numeric_mismatch}/{sampled} numeric mismatches"
        ));
    }
    outcome(pass, parts.join("; "))
}

fn worked_phase_point() -> Result<Outcome> {
    let v = Family::TriangleSides.values(0.6, 0.78)?;
    let expected = [1.3, 1.28205, 1.2484];
    let close = v.iter().zip(expected).all(|(a, e)| (a.1 - e).abs() <= 1e-4);
    let region = triangle_phase(0.6, 0.78)?;
    outcome(
        close && region.tag.as_str() == "P",
        format!("L = {:.6}, S = {:.6}, P = {:.6}, region {}", v[0].1, v[1].1, v[2].1, region.tag),
    )
}

fn constant_c21() -> Result<Outcome> {
    let c = eval_constants();
    let diff = (c.c21_radical - c.c21_fixed_point).abs();
    outcome(
        c.c21_radical < 1.95 && diff <= 1e-9,
        format!("radical {:.12}, fixed point {:.12} (ε = {:.12}), |Δ| = {diff:.1e}", c.c21_radical, c.c21_fixed_point, c.eps21),
    )
}

fn bounds_fuzz() -> Result<Outcome> {
    let mut g = rng(109);
    let mut min_margin = f64::INFINITY;
    let mut failures = 0;
    for _ in 0..500 {
        let k = random_polygon(&mut g, 5, 12);
        let r = check_main_bounds(&k, &sweep())?;
        min_margin = min_margin.min(r.min_margin());
        failures += usize::from(!r.passed());
    }
    let mut pair_margin = f64::INFINITY;
    for _ in 0..200 {
        let k = random_polygon(&mut g, 5, 12);
        let l = random_polygon(&mut g, 5, 12);
        let r = check_ratio_bound(&k, &l, &sweep())?;
        pair_margin = pair_margin.min(r.min_margin());
        failures += usize::from(!r.passed());
    }
    outcome(
        failures == 0 && min_margin >= -1e-6 && pair_margin >= -1e-6,
        format!("500 bodies min margin {min_margin:.3e}, 200 pairs min margin {pair_margin:.3e}, {failures} failures"),
    )
}

fn symmetry_identities() -> Result<Outcome> {
    let mut g = rng(110);
    let mut worst_polar: f64 = 0.0;
    let mut worst_alpha: f64 = 0.0;
    let mut failures = 0;
    for _ in 0..300 {
        let k = random_symmetric_polygon(&mut g, 4, 12);
        let r = check_symmetry_relations(&k, &sweep())?;
        failures += usize::from(!r.passed());
        for c in &r.checks {
            if c.name.contains("polar") {
                worst_polar = worst_polar.max(c.lhs);
            }
        }
        worst_alpha = worst_alpha.max(r.alpha1);
    }
    outcome(
        failures == 0 && worst_polar <= 1e-6 && worst_alpha <= SQRT_2 + 1e-6,
        format!("300 bodies, max |α₁(K) - α₁(K°)| = {worst_polar:.2e}, max α₁ = {worst_alpha:.9}"),
    )
}

fn equality_cases() -> Result<Outcome> {
    let mut g = rng(111);
    let mut worst_closed: f64 = 0.0;
    let mut worst_numeric: f64 = 0.0;
    let mut record = |closed: f64, k: &ConvexPolygon| -> Result<()> {
        worst_closed = worst_closed.max((closed - 1.0).abs());
        worst_numeric = worst_numeric.max((alpha1_numeric(k, &sweep())?.value - 1.0).abs());
        Ok(())
    };
    for _ in 0..50 {
        let leg = g.random_range(0.2..5.0);
        let base = leg * g.random_range(0.05..1.95);
        let t = TriangleShape::new(leg, leg, base)?;
        let k = random_similarity(&mut g, &t.realization()?);
        record(triangle_alpha1(&t).value, &k)?;
    }
    for _ in 0..50 {
        let p = ParallelogramShape::new(g.random_range(1.0..4.0), FRAC_PI_2)?;
        let k = random_similarity(&mut g, &p.realization()?);
        record(parallelogram_alpha1(&p).value, &k)?;
    }
    for _ in 0..50 {
        let p = ParallelogramShape::new(1.0, g.random_range(FRAC_PI_2..3.0))?;
        let k = random_similarity(&mut g, &p.realization()?);
        record(parallelogram_alpha1(&p).value, &k)?;
    }
    outcome(
        worst_closed <= 1e-7 && worst_numeric <= 1e-7,
        format!("150 bodies, max |closed - 1| = {worst_closed:.2e}, max |numeric - 1| = {worst_numeric:.2e}"),
    )
}

fn witness_calibration() -> Result<Outcome> {
    let mut pass = true;
    let mut parts = Vec::new();
    for beta in [1.2, 1.5, 1.8] {
        let a0 = asymmetry_alpha0(&make_asymmetry_witness(beta, 720)?)?.value;
        pass &= (a0 - beta).abs() <= 0.01;
        parts.push(format!("β = {beta}: α₀ = {a0:.6}"));
    }
    outcome(pass, parts.join(", "))
}

fn john_axis_routes() -> Result<Outcome> {
    let mut g = rng(113);
    let mut worst_axis: f64 = 0.0;
    let mut worst_lambda: f64 = 0.0;
    for _ in 0..500 {
        let z = random_canonical(&mut g);
        let a = john_axis(&z)?;
        let b = john_axis_eigen(&z)?;
        worst_axis = worst_axis.max(a.angle_to(b));
        let Shape::Parallelogram(p) = shape_from_vertices(&z.realization()?)? else {
            return outcome(false, "canonical realization is not a parallelogram");
        };
        let formula = parallelogram_axis_values(&p).get(AxisKind::JohnAxis).unwrap_or(f64::NAN);
        worst_lambda = worst_lambda.max((john_lambda(&z) - formula).abs());
    }
    outcome(
        worst_axis <= 1e-9 && worst_lambda <= 1e-9,
        format!("500 shapes, max axis gap {worst_axis:.2e} rad, max λ gap {worst_lambda:.2e}"),
    )
}

fn main() {
    type Criterion = (&'static str, fn() -> Result<Outcome>);
    let criteria: [Criterion; 13] = [
        ("oracle agreement, triangles", oracle_triangles),
        ("oracle agreement, parallelograms", oracle_parallelograms),
        ("extremal parallelogram", extremal_parallelogram),
        ("triangle supremum", triangle_supremum),
        ("phase constants", phase_constants),
        ("phase consistency", phase_consistency),
        ("worked phase point", worked_phase_point),
        ("constant c(2,1)", constant_c21),
        ("bounds fuzz", bounds_fuzz),
        ("symmetry identities", symmetry_identities),
        ("equality cases", equality_cases),
        ("witness calibration", witness_calibration),
        ("John axis dual derivation", john_axis_routes),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (pass, detail) = match run() {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        failed += usize::from(!pass);
        println!(
            "criterion {:>2} {} {title}: {detail} [{:.1} s]",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
