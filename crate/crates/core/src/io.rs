//! Text formats: polygon files, number formatting and profile CSV.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::geometry::{ConvexPolygon, Point2};

/// Formats like C's `%.{digits}g`: `digits` significant digits, trailing
/// zeros removed, exponent notation outside `[1e-5, 10^digits)`.
pub fn fmt_sig(v: f64, digits: usize) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{m}e{sign}{:02}", exp.abs());
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{v:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Reads "x y" vertex lines; `#` starts a comment, blank lines are skipped.
/// The polygon is the convex hull of the listed points.
pub fn read_polygon<R: BufRead>(reader: R) -> Result<ConvexPolygon> {
    let mut points = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|f| !f.is_empty())
            .collect();
        let parse_error = |message: String| Error::Parse { line: i + 1, message };
        if fields.len() != 2 {
            return Err(parse_error(format!("expected two coordinates, found {}", fields.len())));
        }
        let coord = |s: &str| {
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| parse_error(format!("invalid coordinate '{s}'")))
        };
        points.push(Point2::new(coord(fields[0])?, coord(fields[1])?));
    }
    ConvexPolygon::convex_hull(&points)
}

pub fn parse_polygon(text: &str) -> Result<ConvexPolygon> {
    read_polygon(text.as_bytes())
}

/// Writes vertices one per line in the format [`read_polygon`] accepts.
pub fn write_polygon<W: Write>(k: &ConvexPolygon, mut w: W) -> Result<()> {
    for v in k.vertices() {
        writeln!(w, "{} {}", fmt_sig(v.x, 17), fmt_sig(v.y, 17))?;
    }
    Ok(())
}

/// CSV with header `theta,R`.
pub fn write_profile_csv<W: Write>(profile: &[(f64, f64)], mut w: W) -> Result<()> {
    writeln!(w, "theta,R")?;
    for &(t, r) in profile {
        writeln!(w, "{},{}", fmt_sig(t, 12), fmt_sig(r, 12))?;
    }
    Ok(())
}
