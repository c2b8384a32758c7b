use std::fs;
use std::io::{self, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::Value;

use crate::args::{Format, OutputArgs};

/// Six significant digits, trailing zeros kept so columns line up.
pub fn sig6(v: f64) -> String {
    if !v.is_finite() {
        return if v.is_nan() { "nan".into() } else if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0.00000".into();
    }
    let exp = v.abs().log10().floor() as i32;
    if !(-4..6).contains(&exp) {
        return format!("{v:.5e}");
    }
    let decimals = (5 - exp).max(0) as usize;
    let s = format!("{v:.decimals$}");
    // rounding can carry into a new digit, e.g. 9.9999996 -> 10.00000
    let carried = s.parse::<f64>().is_ok_and(|r| r.abs() >= 10f64.powi(exp + 1));
    if carried && decimals > 0 {
        let d = decimals - 1;
        return format!("{v:.d$}");
    }
    s
}

/// A table destined for CSV together with its full-precision JSON form.
pub struct Report {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub json: Value,
}

impl Report {
    pub fn json_only(json: Value) -> Self {
        Self { header: Vec::new(), rows: Vec::new(), json }
    }
}

fn csv_bytes(report: &Report) -> Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    w.write_record(&report.header)?;
    for r in &report.rows {
        w.write_record(r)?;
    }
    Ok(w.into_inner().map_err(|e| e.into_error())?)
}

fn json_bytes(v: &Value) -> Result<Vec<u8>> {
    let mut b = serde_json::to_vec_pretty(v)?;
    b.push(b'\n');
    Ok(b)
}

fn write_to(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}

/// CSV reports written to a file also get a `.json` sidecar next to it.
/// JSON-only reports ignore `--format`.
pub fn emit(out: &OutputArgs, report: &Report) -> Result<()> {
    let path = out.out.as_deref();
    if report.header.is_empty() || out.format == Format::Json {
        return write_to(path, &json_bytes(&report.json)?);
    }
    write_to(path, &csv_bytes(report)?)?;
    if let Some(p) = path {
        let side = p.with_extension("json");
        if side != p {
            write_to(Some(&side), &json_bytes(&report.json)?)?;
        }
    }
    Ok(())
}
