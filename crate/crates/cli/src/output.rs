//! JSON and CSV rendering.
//!
//! Rational values always travel as decimal strings (`{"num": "1",
//! "den": "3"}`) so arbitrary precision survives any JSON consumer; the
//! `decimal` field is a convenience rounding only.

use std::fmt::Write as _;

use serde_json::{json, Value};

use orbmeas_core::measures::{rational_to_f64, MomentResult, Rank1Density};
use orbmeas_core::poly::rat_int;
use orbmeas_core::{Point, Rational};

use crate::oracle::ComparisonReport;

pub fn rational_value(r: &Rational) -> Value {
    json!({
        "num": r.numer().to_string(),
        "den": r.denom().to_string(),
    })
}

fn point_value(p: Option<&Point>) -> Value {
    match p {
        Some(p) => Value::String(p.to_string()),
        None => Value::Null,
    }
}

pub fn moment_to_json(res: &MomentResult) -> Value {
    json!({
        "value": rational_value(&res.value),
        "decimal": res.decimal,
        "meta": {
            "system": res.meta.system,
            "a": res.meta.a.to_string(),
            "b": point_value(res.meta.b.as_ref()),
            "poly": res.meta.poly,
        },
    })
}

pub fn moment_to_text(res: &MomentResult) -> String {
    format!("{} (~ {})", res.value, res.decimal)
}

pub fn gram_to_json(system: &str, value: &Rational) -> Value {
    json!({
        "value": rational_value(value),
        "decimal": rational_to_f64(value),
        "meta": { "system": system },
    })
}

pub fn verify_to_json(mode: &str, exact: &MomentResult, report: &ComparisonReport) -> Value {
    json!({
        "mode": mode,
        "system": exact.meta.system,
        "a": exact.meta.a.to_string(),
        "b": point_value(exact.meta.b.as_ref()),
        "poly": exact.meta.poly,
        "exact": rational_value(&exact.value),
        "exact_decimal": exact.decimal,
        "estimate": {
            "mean": report.estimate.mean,
            "stderr": report.estimate.stderr,
            "samples": report.estimate.samples,
            "seed": report.estimate.seed,
        },
        "zscore": report.zscore,
        "threshold": report.threshold,
        "pass": report.pass,
    })
}

pub fn verify_to_text(exact: &MomentResult, report: &ComparisonReport) -> String {
    format!(
        "exact {} (~ {})\nestimate {} +- {} ({} samples, seed {})\nz = {} -> {}",
        exact.value,
        exact.decimal,
        report.estimate.mean,
        report.estimate.stderr,
        report.estimate.samples,
        report.estimate.seed,
        report.zscore,
        if report.pass { "PASS" } else { "FAIL" },
    )
}

/// Density table over a uniform grid spanning the support, endpoints
/// included. Grid abscissae are exact rationals, so printed values are
/// rounded only at the very end.
pub fn density_to_csv(d: &Rank1Density, points: usize) -> String {
    assert!(points >= 2, "caller validates the grid size");
    let (lo, hi) = d.support();
    let step = (&hi - &lo) / rat_int(points as i64 - 1);
    let mut out = String::from("c,phi\n");
    for k in 0..points {
        let c = &lo + &step * rat_int(k as i64);
        let phi = d.eval(&c);
        writeln!(out, "{},{}", rational_to_f64(&c), rational_to_f64(&phi))
            .expect("writing to a String cannot fail");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use orbmeas_core::measures::projection_moment;
    use orbmeas_core::poly::rat;
    use orbmeas_core::{Family, Polynomial, RootSystem};

    #[test]
    fn moment_json_shape() {
        let a1 = RootSystem::build(Family::A, 1).unwrap();
        let f = Polynomial::variable(2, 1).pow_checked(2).unwrap();
        let res = projection_moment(&a1, &Point::from_integers(&[-1, 1]), &f).unwrap();
        let v = moment_to_json(&res);
        assert_eq!(v["value"]["num"], "1");
        assert_eq!(v["value"]["den"], "3");
        assert_eq!(v["meta"]["system"], "A1");
        assert_eq!(v["meta"]["a"], "-1,1");
        assert!(v["meta"]["b"].is_null());
        assert!((v["decimal"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn density_csv_has_the_known_convolution_row() {
        let d = Rank1Density::convolution(rat_int(2), rat_int(1)).unwrap();
        let csv = density_to_csv(&d, 25);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("c,phi"));
        let lines: Vec<&str> = csv.lines().collect();
        assert!(lines.contains(&"2,0.25"), "{csv}");
        assert!(lines.contains(&"-2,0.25"), "{csv}");
        assert!(lines.contains(&"0,0"), "{csv}");
        assert_eq!(lines.len(), 26);
    }

    #[test]
    fn density_csv_projection_grid() {
        let d = Rank1Density::projection(rat(3, 2)).unwrap();
        let csv = density_to_csv(&d, 3);
        assert_eq!(csv, "c,phi\n-1.5,0.3333333333333333\n0,0.3333333333333333\n1.5,0.3333333333333333\n");
    }

    #[test]
    fn rationals_render_as_strings() {
        let v = rational_value(&rat(-91, 3));
        assert_eq!(v["num"], "-91");
        assert_eq!(v["den"], "3");
    }
}
