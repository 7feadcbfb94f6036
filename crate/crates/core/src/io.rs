//! CSV input/output and text serialization.
//!
//! All numeric output carries 10 significant digits, a decimal point and LF
//! line endings, so repeated runs are byte-identical and the files round-trip
//! through the readers losslessly enough for downstream evaluation.

use std::io::{BufRead, Write};

use crate::bounds::{BoundPoint, FlatPlatePoint};
use crate::distribution::VelocityDistribution;
use crate::error::{Error, Result};
use crate::extremals::ExtremalDescriptor;
use crate::oracle::CompareReport;
use crate::real::Real;

/// Formats a scalar with 10 significant digits.
pub fn format_sig<T: Real>(x: T) -> String {
    let v = x.to_f64().unwrap_or(f64::NAN);
    if v.is_nan() {
        return "nan".to_string();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    format!("{v:.9e}")
}

/// Reads a `sigma,u` CSV into a tabulated velocity distribution.
pub fn read_velocity_csv<T: Real, R: BufRead>(reader: R) -> Result<VelocityDistribution<T>> {
    let mut sigma = Vec::new();
    let mut values = Vec::new();
    let mut lines = reader.lines().enumerate();

    let header = match lines.next() {
        Some((_, line)) => line?,
        None => {
            return Err(Error::Csv {
                line: 1,
                detail: "empty file".into(),
            })
        }
    };
    if header.trim() != "sigma,u" {
        return Err(Error::Csv {
            line: 1,
            detail: format!("expected header 'sigma,u', got '{}'", header.trim()),
        });
    }

    for (idx, line) in lines {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut fields = trimmed.split(',');
        let (a, b) = match (fields.next(), fields.next(), fields.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(Error::Csv {
                    line: idx + 1,
                    detail: format!("expected two fields, got '{trimmed}'"),
                })
            }
        };
        let parse = |field: &str| -> Result<T> {
            let v: f64 = field.trim().parse().map_err(|e| Error::Csv {
                line: idx + 1,
                detail: format!("bad number '{}': {e}", field.trim()),
            })?;
            T::from_f64(v).ok_or(Error::Csv {
                line: idx + 1,
                detail: format!("value {v} not representable"),
            })
        };
        sigma.push(parse(a)?);
        values.push(parse(b)?);
    }

    VelocityDistribution::from_table(&sigma, &values)
}

/// Writes `(sigma, u)` samples as the `sigma,u` CSV.
pub fn write_velocity_csv<T: Real, W: Write>(mut w: W, rows: &[(T, T)]) -> Result<()> {
    w.write_all(b"sigma,u\n")?;
    for &(s, u) in rows {
        writeln!(w, "{},{}", format_sig(s), format_sig(u))?;
    }
    Ok(())
}

/// Serializes a descriptor as `key=value` lines (branch first).
pub fn descriptor_key_values<T: Real>(desc: &ExtremalDescriptor<T>) -> String {
    let mut out = format!("branch={}\n", desc.branch_name());
    for (name, value) in desc.fields() {
        out.push_str(&format!("{name}={}\n", format_sig(value)));
    }
    out
}

/// Writes the bound-curve CSV
/// (`c_l,c_d_min,c_d_max,kappa_max,kappa_min,epsilon,q1,q2`).
pub fn write_bound_curve_csv<T: Real, W: Write>(mut w: W, rows: &[BoundPoint<T>]) -> Result<()> {
    w.write_all(b"c_l,c_d_min,c_d_max,kappa_max,kappa_min,epsilon,q1,q2\n")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            format_sig(r.c_l),
            format_sig(r.c_d_min),
            format_sig(r.c_d_max),
            format_sig(r.kappa_max),
            format_sig(r.kappa_min),
            format_sig(r.split.epsilon),
            format_sig(r.split.q1),
            format_sig(r.split.q2),
        )?;
    }
    Ok(())
}

/// Writes the flat-plate CSV (`alpha,c_l,c_d,kappa`).
pub fn write_flat_plate_csv<T: Real, W: Write>(mut w: W, rows: &[FlatPlatePoint<T>]) -> Result<()> {
    w.write_all(b"alpha,c_l,c_d,kappa\n")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{}",
            format_sig(r.alpha),
            format_sig(r.c_l),
            format_sig(r.c_d),
            format_sig(r.kappa),
        )?;
    }
    Ok(())
}

/// Writes the oracle comparison CSV (`q,mode,j_analytic,j_oracle,gap`).
pub fn write_oracle_csv<T: Real, W: Write>(mut w: W, report: &CompareReport<T>) -> Result<()> {
    w.write_all(b"q,mode,j_analytic,j_oracle,gap\n")?;
    for r in &report.rows {
        writeln!(
            w,
            "{},{},{},{},{}",
            format_sig(r.q),
            r.mode,
            format_sig(r.j_analytic),
            format_sig(r.j_oracle),
            format_sig(r.gap),
        )?;
    }
    Ok(())
}
