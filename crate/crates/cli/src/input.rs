use std::fs;
use std::path::Path;

use jetforge_core::connection::ConnectionChart;
use jetforge_core::jet_algebra::{JetPoint, TruncatedSeries};
use jetforge_core::linalg::Matrix;
use jetforge_core::{json, rational, JetError, Rational, Result};

/// Inline text when it looks like JSON, otherwise the contents of the named file.
pub fn text_or_file(arg: &str) -> Result<String> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_string());
    }
    fs::read_to_string(arg).map_err(|e| JetError::Parse(format!("{arg}: {e}")))
}

pub fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| JetError::Parse(format!("{}: {e}", path.display())))
}

pub fn connection(path: &Path) -> Result<ConnectionChart> {
    json::chart_from_json(&read_file(path)?)
}

/// A jet given as JSON (inline or file) or as `;`-separated series in `t1, t2, …`. The
/// series form needs `order`; `dims` is the largest variable index used (at least 1) unless
/// given.
pub fn jet(arg: &str, order: Option<u32>, dims: Option<usize>) -> Result<JetPoint> {
    let trimmed = arg.trim_start();
    let looks_like_file = !trimmed.starts_with('{') && Path::new(arg).is_file();
    let jet = if trimmed.starts_with('{') || looks_like_file {
        json::jet_from_json(&text_or_file(arg)?)?
    } else {
        let order = order.ok_or_else(|| {
            JetError::Parse("an order (-r) is required for jets given as series".into())
        })?;
        let dims = dims.unwrap_or_else(|| max_variable(arg).max(1));
        JetPoint::new(
            arg.split(';')
                .map(|s| TruncatedSeries::parse(s.trim(), dims, order))
                .collect::<Result<Vec<_>>>()?,
        )?
    };
    match order {
        Some(r) if r != jet.order() => jet.restrict(r),
        _ => Ok(jet),
    }
}

fn max_variable(text: &str) -> usize {
    let bytes = text.as_bytes();
    let mut best = 0;
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b't' {
            let start = i + 1;
            let mut j = start;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            if j > start {
                best = best.max(text[start..j].parse().unwrap_or(0));
            }
            i = j.max(i + 1);
        } else {
            i += 1;
        }
    }
    best
}

/// A named base point of the chart or comma-separated rationals.
pub fn point(chart: &ConnectionChart, arg: &str) -> Result<Vec<Rational>> {
    if let Some(p) = chart.basepoints().get(arg) {
        return Ok(p.clone());
    }
    arg.split(',').map(|s| rational::parse(s.trim())).collect()
}

pub enum Init {
    Identity,
    Fv,
    Matrix(Matrix),
}

pub fn init(arg: &str) -> Result<Init> {
    match arg {
        "identity" => Ok(Init::Identity),
        "fv" => Ok(Init::Fv),
        other => Ok(Init::Matrix(json::matrix_from_json(&text_or_file(other)?)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_jets() {
        let j = jet("1/2 + t1; t2", Some(2), None).unwrap();
        assert_eq!((j.dims(), j.order(), j.arity()), (2, 2, 2));
        assert!(jet("t1", None, None).is_err());
    }
}
