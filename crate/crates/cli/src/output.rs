//! Output serialization and re-parsing. CSV numbers are printed with 17
//! significant digits so every emitted file is a bit-faithful regression
//! fixture; file writes go through a temp file and an atomic rename.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde_json::json;

use coinwalk_core::qw::{CovarianceSeries, Method};
use coinwalk_core::{Distribution1D, Distribution2D};

use crate::error::{io_error, CliError};

/// Round-trip-safe decimal with 17 significant digits.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_output(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(p) if !p.as_os_str().is_empty() => p,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| io_error(path, e))?;
            tmp.write_all(content.as_bytes())
                .map_err(|e| io_error(path, e))?;
            tmp.persist(path).map_err(|e| io_error(path, e.error))?;
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// writers
// ---------------------------------------------------------------------------

/// `x,p` over every parity-allowed site from -n to n.
pub fn csv_1d(d: &Distribution1D) -> String {
    let mut out = String::from("x,p\n");
    for (x, p) in d.support() {
        out.push_str(&format!("{x},{}\n", fmt_float(p)));
    }
    out
}

/// `x,y,p` over nonzero-mass sites.
pub fn csv_2d(d: &Distribution2D) -> String {
    let mut out = String::from("x,y,p\n");
    for ((x, y), p) in d.sites() {
        out.push_str(&format!("{x},{y},{}\n", fmt_float(p)));
    }
    out
}

/// `n,cov_direct,cov_integral`; a method that was not evaluated leaves its
/// column empty.
pub fn csv_covariance(series: &CovarianceSeries, n_max: usize) -> String {
    let mut out = String::from("n,cov_direct,cov_integral\n");
    for n in 1..=n_max {
        let direct = series
            .value(n, Method::Direct)
            .map(fmt_float)
            .unwrap_or_default();
        let integral = series
            .value(n, Method::Integral)
            .map(fmt_float)
            .unwrap_or_default();
        out.push_str(&format!("{n},{direct},{integral}\n"));
    }
    out
}

pub fn json_1d(d: &Distribution1D) -> serde_json::Value {
    json!({
        "kind": "distribution1d",
        "n": d.n(),
        "mass": d.support().map(|(x, p)| json!([x, p])).collect::<Vec<_>>(),
    })
}

pub fn json_2d(d: &Distribution2D) -> serde_json::Value {
    json!({
        "kind": "distribution2d",
        "n": d.n(),
        "mass": d.sites().map(|((x, y), p)| json!([x, y, p])).collect::<Vec<_>>(),
    })
}

pub fn json_covariance(series: &CovarianceSeries, n_max: usize) -> serde_json::Value {
    json!({
        "kind": "covariance_series",
        "n_max": n_max,
        "entries": series.entries().iter().map(|e| json!({
            "n": e.n,
            "method": e.method.label(),
            "value": e.value,
        })).collect::<Vec<_>>(),
    })
}

pub fn render_json(value: &serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("json values serialize");
    text.push('\n');
    text
}

// ---------------------------------------------------------------------------
// readers (for `compare` and round-trip checks)
// ---------------------------------------------------------------------------

/// A distribution parsed back from an emitted file. CSV files carry no
/// explicit step count, so it may need to be inferred.
#[derive(Debug, Clone)]
pub enum RawDistribution {
    OneD {
        sites: BTreeMap<i64, f64>,
        n_hint: Option<usize>,
    },
    TwoD {
        sites: BTreeMap<(i64, i64), f64>,
        n_hint: Option<usize>,
    },
}

pub fn read_distribution(path: &Path) -> Result<RawDistribution, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        parse_distribution_json(trimmed)
            .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
    } else {
        parse_distribution_csv(&text)
            .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
    }
}

fn parse_distribution_json(text: &str) -> Result<RawDistribution, String> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
    let kind = value["kind"].as_str().unwrap_or_default().to_string();
    let n_hint = value["n"].as_u64().map(|n| n as usize);
    let rows = value["mass"]
        .as_array()
        .ok_or_else(|| "missing \"mass\" array".to_string())?;
    match kind.as_str() {
        "distribution1d" => {
            let mut sites = BTreeMap::new();
            for row in rows {
                let x = row[0].as_i64().ok_or("non-integer site")?;
                let p = row[1].as_f64().ok_or("non-numeric mass")?;
                sites.insert(x, p);
            }
            Ok(RawDistribution::OneD { sites, n_hint })
        }
        "distribution2d" => {
            let mut sites = BTreeMap::new();
            for row in rows {
                let x = row[0].as_i64().ok_or("non-integer site")?;
                let y = row[1].as_i64().ok_or("non-integer site")?;
                let p = row[2].as_f64().ok_or("non-numeric mass")?;
                sites.insert((x, y), p);
            }
            Ok(RawDistribution::TwoD { sites, n_hint })
        }
        other => Err(format!("unsupported kind \"{other}\"")),
    }
}

fn parse_distribution_csv(text: &str) -> Result<RawDistribution, String> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or("empty file")?.trim();
    match header {
        "x,p" => {
            let mut sites = BTreeMap::new();
            for line in lines {
                let mut cols = line.split(',');
                let x: i64 = next_field(&mut cols)?;
                let p: f64 = next_field(&mut cols)?;
                sites.insert(x, p);
            }
            Ok(RawDistribution::OneD {
                sites,
                n_hint: None,
            })
        }
        "x,y,p" => {
            let mut sites = BTreeMap::new();
            for line in lines {
                let mut cols = line.split(',');
                let x: i64 = next_field(&mut cols)?;
                let y: i64 = next_field(&mut cols)?;
                let p: f64 = next_field(&mut cols)?;
                sites.insert((x, y), p);
            }
            Ok(RawDistribution::TwoD {
                sites,
                n_hint: None,
            })
        }
        other => Err(format!(
            "unrecognized header \"{other}\" (expected \"x,p\" or \"x,y,p\")"
        )),
    }
}

fn next_field<T: std::str::FromStr>(cols: &mut std::str::Split<'_, char>) -> Result<T, String>
where
    T::Err: std::fmt::Display,
{
    let field = cols.next().ok_or("missing column")?.trim();
    field
        .parse::<T>()
        .map_err(|e| format!("bad field \"{field}\": {e}"))
}

// ---------------------------------------------------------------------------
// alignment for comparison
// ---------------------------------------------------------------------------

fn infer_n_1d(sites: &BTreeMap<i64, f64>, n_hint: Option<usize>) -> Result<usize, CliError> {
    let reach = sites.keys().map(|x| x.unsigned_abs()).max().unwrap_or(0) as usize;
    let parity = sites.keys().map(|x| (x.rem_euclid(2)) as usize).max();
    let n = match n_hint {
        Some(n) if n >= reach => n,
        Some(n) => {
            return Err(CliError::Validation(format!(
                "declared step count {n} smaller than observed support {reach}"
            )))
        }
        None => reach,
    };
    if let Some(parity) = parity {
        if sites.keys().any(|x| x.rem_euclid(2) as usize != parity) {
            return Err(CliError::Validation(
                "support mixes even and odd sites".into(),
            ));
        }
        if n % 2 != parity {
            return Err(CliError::Validation(format!(
                "step count {n} does not match the support parity"
            )));
        }
    }
    Ok(n)
}

/// Builds a `Distribution1D` from raw sites, embedding them into the
/// support of the given step count.
pub fn lift_1d(sites: &BTreeMap<i64, f64>, n: usize) -> Result<Distribution1D, CliError> {
    let mut masses = vec![0.0; n + 1];
    for (&x, &p) in sites {
        if x.unsigned_abs() as usize > n || (x + n as i64) % 2 != 0 {
            return Err(CliError::Validation(format!(
                "site {x} is unreachable in {n} steps"
            )));
        }
        masses[((x + n as i64) / 2) as usize] = p;
    }
    Ok(Distribution1D::from_support_masses(n, masses)?)
}

/// Aligns two raw 1D distributions onto a common step count (the larger of
/// the two, with matching parity).
pub fn unify_1d(
    a: (&BTreeMap<i64, f64>, Option<usize>),
    b: (&BTreeMap<i64, f64>, Option<usize>),
) -> Result<(Distribution1D, Distribution1D), CliError> {
    let n_a = infer_n_1d(a.0, a.1)?;
    let n_b = infer_n_1d(b.0, b.1)?;
    if let (Some(ha), Some(hb)) = (a.1, b.1) {
        if ha != hb {
            return Err(CliError::Core(coinwalk_core::Error::StepCountMismatch {
                a: ha,
                b: hb,
            }));
        }
    }
    if n_a % 2 != n_b % 2 {
        return Err(CliError::Validation(format!(
            "support parities differ ({n_a} vs {n_b} steps)"
        )));
    }
    let n = n_a.max(n_b);
    Ok((lift_1d(a.0, n)?, lift_1d(b.0, n)?))
}

fn infer_n_2d(
    sites: &BTreeMap<(i64, i64), f64>,
    n_hint: Option<usize>,
) -> Result<usize, CliError> {
    let reach = sites
        .keys()
        .map(|(x, y)| (x.abs() + y.abs()) as usize)
        .max()
        .unwrap_or(0);
    let n = match n_hint {
        Some(n) if n >= reach => n,
        Some(n) => {
            return Err(CliError::Validation(format!(
                "declared step count {n} smaller than observed support {reach}"
            )))
        }
        None => reach,
    };
    for &(x, y) in sites.keys() {
        if (x + y + n as i64) % 2 != 0 {
            return Err(CliError::Validation(format!(
                "site ({x}, {y}) does not match the parity of {n} steps"
            )));
        }
    }
    Ok(n)
}

pub fn lift_2d(
    sites: &BTreeMap<(i64, i64), f64>,
    n: usize,
) -> Result<Distribution2D, CliError> {
    Ok(Distribution2D::from_site_masses(n, sites.clone())?)
}

pub fn unify_2d(
    a: (&BTreeMap<(i64, i64), f64>, Option<usize>),
    b: (&BTreeMap<(i64, i64), f64>, Option<usize>),
) -> Result<(Distribution2D, Distribution2D), CliError> {
    let n_a = infer_n_2d(a.0, a.1)?;
    let n_b = infer_n_2d(b.0, b.1)?;
    if let (Some(ha), Some(hb)) = (a.1, b.1) {
        if ha != hb {
            return Err(CliError::Core(coinwalk_core::Error::StepCountMismatch {
                a: ha,
                b: hb,
            }));
        }
    }
    if n_a % 2 != n_b % 2 {
        return Err(CliError::Validation(format!(
            "support parities differ ({n_a} vs {n_b} steps)"
        )));
    }
    let n = n_a.max(n_b);
    Ok((lift_2d(a.0, n)?, lift_2d(b.0, n)?))
}
