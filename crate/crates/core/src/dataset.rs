//! CSV datasets: the `Φ` curve, the invariant density and natural-extension
//! orbits.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::{fmt_rational, rational_to_f64};
use crate::billiard::{density_h, FloatTable};
use crate::error::{Error, Result};
use crate::io::fmt_f64;
use crate::minkowski::phi_at_argument;
use crate::partition::UnimodularPartition;

pub const PHI_CURVE_HEADER: &str = "x,phi,phi_exact,error_bound";
pub const DENSITY_CURVE_HEADER: &str = "x,density";
pub const NATEXT_HEADER: &str = "step,interval,x,y,w1,w2,w3";

/// Dataset kinds accepted by the `dataset` command.
pub const KINDS: [&str; 5] = ["phi-curve", "density-curve", "natext-orbit", "orbit", "jsr"];

/// Lifted `Φ` on the grid `x = i / samples`, evaluated at the rational circle
/// point nearest to each `x`. `phi_exact` is the exact truncated value.
pub fn phi_curve(p: &UnimodularPartition, samples: usize, depth: usize) -> Result<String> {
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be positive".into()));
    }
    let rows: Vec<String> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let x = i as f64 / samples as f64;
            let (q, e) = phi_at_argument(p, x, depth)?;
            Ok(format!("{},{},{},{}", fmt_f64(x), fmt_f64(rational_to_f64(&q)), fmt_rational(&q), fmt_f64(e)))
        })
        .collect::<Result<_>>()?;
    Ok(csv(PHI_CURVE_HEADER, &rows))
}

/// Invariant density at bin midpoints `x = (i + 1/2) / samples`.
pub fn density_curve(p: &UnimodularPartition, samples: usize) -> Result<String> {
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be positive".into()));
    }
    let rows: Vec<String> = (0..samples)
        .map(|i| {
            let x = (i as f64 + 0.5) / samples as f64;
            format!("{},{}", fmt_f64(x), fmt_f64(density_h(p, x)))
        })
        .collect();
    Ok(csv(DENSITY_CURVE_HEADER, &rows))
}

/// De Sitter point of the geodesic joining the circle points at arguments
/// `x` and `y`, scaled to Lorentz norm one.
pub fn geodesic_point(x: f64, y: f64) -> [f64; 3] {
    let (u, v) = (x * std::f64::consts::TAU, y * std::f64::consts::TAU);
    // L s x L r for isotropic s, r
    let s = [u.cos(), u.sin(), -1.0];
    let r = [v.cos(), v.sin(), -1.0];
    let c = [s[1] * r[2] - s[2] * r[1], s[2] * r[0] - s[0] * r[2], s[0] * r[1] - s[1] * r[0]];
    let n = c[0] * c[0] + c[1] * c[1] - c[2] * c[2];
    let k = 1.0 / n.sqrt();
    [c[0] * k, c[1] * k, c[2] * k]
}

/// `n` points of a natural-extension orbit started from a seeded random pair
/// in different intervals, iterated in floating point on arguments.
pub fn natext_orbit(p: &UnimodularPartition, n: usize, seed: u64) -> Result<String> {
    let table = FloatTable::new(p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut x, mut y) = loop {
        let x: f64 = rng.gen();
        let y: f64 = rng.gen();
        if table.locate(x).0 != table.locate(y).0 {
            break (x, y);
        }
    };
    let mut rows = Vec::with_capacity(n);
    for k in 0..n {
        let (a, _) = table.locate(x);
        let w = geodesic_point(x, y);
        rows.push(format!(
            "{k},{a},{},{},{},{},{}",
            fmt_f64(x),
            fmt_f64(y),
            fmt_f64(w[0]),
            fmt_f64(w[1]),
            fmt_f64(w[2])
        ));
        x = table.reflect(a, x);
        y = table.reflect(a, y);
    }
    Ok(csv(NATEXT_HEADER, &rows))
}

fn csv(header: &str, rows: &[String]) -> String {
    let mut out = String::with_capacity(rows.len() * 64);
    writeln!(out, "{header}").expect("string write");
    for r in rows {
        writeln!(out, "{r}").expect("string write");
    }
    out
}

/// Parses a CSV produced here, checking the header and column count.
pub fn parse_csv(text: &str, header: &str) -> Result<Vec<Vec<String>>> {
    let mut lines = text.lines();
    if lines.next() != Some(header) {
        return Err(Error::Parse(format!("expected header '{header}'")));
    }
    let cols = header.split(',').count();
    lines
        .enumerate()
        .map(|(i, l)| {
            let f: Vec<String> = l.split(',').map(str::to_string).collect();
            if f.len() != cols {
                return Err(Error::Parse(format!("row {}: {} columns, expected {cols}", i + 1, f.len())));
            }
            Ok(f)
        })
        .collect()
}

/// Float column `c` of parsed rows.
pub fn float_column(rows: &[Vec<String>], c: usize) -> Result<Vec<f64>> {
    rows.iter()
        .map(|r| r[c].parse::<f64>().map_err(|_| Error::Parse(format!("bad float '{}'", r[c]))))
        .collect()
}
