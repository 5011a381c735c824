//! CSV and JSON writers with fixed float formatting (17 significant digits,
//! `\n` line endings), and the matching readers.

use std::sync::Arc;

use fho_core::hermite::HermiteBasis;
use fho_core::nonlinear::SolveTrajectory;
use fho_core::norms::DecayScanResult;
use fho_core::{build_basis, Complex, GridField, SpectralField, UniformGrid};

use crate::error::{CliError, ExitKind};

/// `{:.16e}`, i.e. 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_exponent(p: f64) -> String {
    if p == f64::INFINITY {
        "inf".into()
    } else {
        fmt_f64(p)
    }
}

fn format_err(msg: impl Into<String>) -> CliError {
    CliError::new(ExitKind::Type, msg)
}

/// Hand-built JSON value; floats use [`fmt_f64`], non-finite ones become
/// `null`.
#[derive(Debug, Clone)]
pub enum Json {
    Num(f64),
    Int(i64),
    Str(String),
    Bool(bool),
    Null,
    Array(Vec<Json>),
    Object(Vec<(String, Json)>),
}

impl Json {
    pub fn object<K: Into<String>>(entries: impl IntoIterator<Item = (K, Json)>) -> Self {
        Json::Object(entries.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }

    pub fn opt_num(x: Option<f64>) -> Self {
        x.map_or(Json::Null, Json::Num)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        self.write(&mut s, 0);
        s.push('\n');
        s
    }

    fn write(&self, s: &mut String, indent: usize) {
        let pad = |n: usize| "  ".repeat(n);
        match self {
            Json::Num(x) if x.is_finite() => s.push_str(&fmt_f64(*x)),
            Json::Num(_) | Json::Null => s.push_str("null"),
            Json::Int(i) => s.push_str(&i.to_string()),
            Json::Bool(b) => s.push_str(if *b { "true" } else { "false" }),
            Json::Str(v) => s.push_str(&serde_json::to_string(v).expect("strings serialize")),
            Json::Array(xs) if xs.is_empty() => s.push_str("[]"),
            Json::Array(xs) => {
                s.push_str("[\n");
                for (i, x) in xs.iter().enumerate() {
                    s.push_str(&pad(indent + 1));
                    x.write(s, indent + 1);
                    s.push_str(if i + 1 < xs.len() { ",\n" } else { "\n" });
                }
                s.push_str(&pad(indent));
                s.push(']');
            }
            Json::Object(kv) if kv.is_empty() => s.push_str("{}"),
            Json::Object(kv) => {
                s.push_str("{\n");
                for (i, (k, v)) in kv.iter().enumerate() {
                    s.push_str(&pad(indent + 1));
                    s.push_str(&serde_json::to_string(k).expect("strings serialize"));
                    s.push_str(": ");
                    v.write(s, indent + 1);
                    s.push_str(if i + 1 < kv.len() { ",\n" } else { "\n" });
                }
                s.push_str(&pad(indent));
                s.push('}');
            }
        }
    }
}

pub fn parse_json(text: &str) -> Result<serde_json::Value, CliError> {
    serde_json::from_str(text).map_err(|e| format_err(format!("invalid JSON: {e}")))
}

// ---- fields -------------------------------------------------------------

/// Header `x[,y],re,im`, rows in the grid's row-major order.
pub fn write_grid_csv(f: &GridField) -> String {
    let grid = f.grid();
    let mut s = String::from(if grid.dim() == 1 { "x,re,im\n" } else { "x,y,re,im\n" });
    for (idx, v) in f.values().iter().enumerate() {
        let p = grid.point(idx);
        let coords = &p[..grid.dim()];
        for c in coords {
            s.push_str(&fmt_f64(*c));
            s.push(',');
        }
        s.push_str(&format!("{},{}\n", fmt_f64(v.re), fmt_f64(v.im)));
    }
    s
}

/// Header `alpha1[,alpha2],re,im`, one row per coefficient.
pub fn write_spectral_csv(f: &SpectralField) -> String {
    let basis = f.basis();
    let dim = basis.dim();
    let mut s = String::from(if dim == 1 { "alpha1,re,im\n" } else { "alpha1,alpha2,re,im\n" });
    for (idx, c) in f.coeffs().iter().enumerate() {
        let a = basis.multi_index(idx);
        for k in &a[..dim] {
            s.push_str(&format!("{k},"));
        }
        s.push_str(&format!("{},{}\n", fmt_f64(c.re), fmt_f64(c.im)));
    }
    s
}

/// A field file of either kind.
#[derive(Debug, Clone)]
pub enum FieldFile {
    Grid(GridField),
    Spectral(SpectralField),
}

pub fn read_field_csv(text: &str) -> Result<FieldFile, CliError> {
    let header = text.lines().next().unwrap_or("").trim();
    if header.starts_with("alpha1") {
        read_spectral_csv(text).map(FieldFile::Spectral)
    } else {
        read_grid_csv(text).map(FieldFile::Grid)
    }
}

fn records(text: &str, header: &[&str]) -> Result<Vec<csv::StringRecord>, CliError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let got = rdr.headers().map_err(|e| format_err(e.to_string()))?.clone();
    if got.iter().ne(header.iter().copied()) {
        return Err(format_err(format!(
            "expected CSV header `{}`, found `{}`",
            header.join(","),
            got.iter().collect::<Vec<_>>().join(",")
        )));
    }
    rdr.records()
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| format_err(e.to_string()))
}

fn num(rec: &csv::StringRecord, i: usize) -> Result<f64, CliError> {
    let s = rec.get(i).unwrap_or("");
    parse_number(s).ok_or_else(|| format_err(format!("not a number: `{s}`")))
}

fn parse_number(s: &str) -> Option<f64> {
    match s {
        "inf" => Some(f64::INFINITY),
        "-inf" => Some(f64::NEG_INFINITY),
        _ => s.parse().ok(),
    }
}

/// Reconstructs the uniform grid from the coordinates and checks them.
pub fn read_grid_csv(text: &str) -> Result<GridField, CliError> {
    let header = text.lines().next().unwrap_or("").trim();
    let dim = if header.starts_with("x,y") { 2 } else { 1 };
    let cols: &[&str] = if dim == 1 { &["x", "re", "im"] } else { &["x", "y", "re", "im"] };
    let rows = records(text, cols)?;
    let n = match dim {
        1 => rows.len(),
        _ => (rows.len() as f64).sqrt().round() as usize,
    };
    if n < 2 || n.pow(dim as u32) != rows.len() {
        return Err(format_err(format!("{} rows do not form a {dim}-d tensor grid", rows.len())));
    }
    let half_width = num(&rows[rows.len() - 1], 0)?;
    let grid = UniformGrid::new(dim, half_width, n).map_err(|e| format_err(e.to_string()))?;
    let tol = 1e-9 * half_width;
    let mut values = Vec::with_capacity(rows.len());
    for (idx, rec) in rows.iter().enumerate() {
        let p = grid.point(idx);
        for (axis, expected) in p[..dim].iter().enumerate() {
            if (num(rec, axis)? - expected).abs() > tol {
                return Err(format_err(format!("row {}: coordinates are not a uniform grid", idx + 1)));
            }
        }
        values.push(Complex::new(num(rec, dim)?, num(rec, dim + 1)?));
    }
    GridField::new(grid, values).map_err(|e| format_err(e.to_string()))
}

/// Builds the basis of the file's maximal degree on its default grid.
pub fn read_spectral_csv(text: &str) -> Result<SpectralField, CliError> {
    let header = text.lines().next().unwrap_or("").trim();
    let dim = if header.starts_with("alpha1,alpha2") { 2 } else { 1 };
    let cols: &[&str] = if dim == 1 { &["alpha1", "re", "im"] } else { &["alpha1", "alpha2", "re", "im"] };
    let rows = records(text, cols)?;
    let mut entries = Vec::with_capacity(rows.len());
    for rec in &rows {
        let mut alpha = [0usize; 2];
        for (axis, a) in alpha[..dim].iter_mut().enumerate() {
            let s = rec.get(axis).unwrap_or("");
            *a = s.parse().map_err(|_| format_err(format!("not a multi-index entry: `{s}`")))?;
        }
        entries.push((alpha, Complex::new(num(rec, dim)?, num(rec, dim + 1)?)));
    }
    let max_degree = entries.iter().flat_map(|(a, _)| a[..dim].to_vec()).max().unwrap_or(0);
    let basis = default_basis(dim, max_degree)?;
    let mut f = SpectralField::zeros(basis.clone());
    for (alpha, c) in entries {
        let idx = basis.flat_index(&alpha[..dim]).expect("degree within the basis");
        f.coeffs_mut()[idx] = c;
    }
    Ok(f)
}

pub fn default_basis(dim: usize, max_degree: usize) -> Result<Arc<HermiteBasis>, CliError> {
    Ok(build_basis(dim, max_degree, UniformGrid::default_for_degree(dim, max_degree)?)?)
}

// ---- results --------------------------------------------------------------

pub const SCAN_HEADER: [&str; 4] = ["t", "ratio", "expected_small_t", "expected_large_t"];

pub fn write_scan_csv(r: &DecayScanResult) -> String {
    let mut s = SCAN_HEADER.join(",") + "\n";
    for (&t, &ratio) in r.times.iter().zip(&r.ratios) {
        s.push_str(&format!(
            "{},{},{},{}\n",
            fmt_f64(t),
            fmt_f64(ratio),
            fmt_f64(r.expected_small_t(t)),
            fmt_f64(r.expected_large_t(t))
        ));
    }
    s
}

pub fn scan_summary(r: &DecayScanResult) -> Json {
    Json::object([
        ("sigma_expected", Json::Num(r.sigma_expected)),
        ("fitted_small_t_slope", Json::Num(r.fitted_small_t_slope)),
        ("fitted_large_t_rate", Json::Num(r.fitted_large_t_rate)),
        ("c_star", Json::Num(r.c_star)),
        ("version", Json::Str(crate::config::VERSION_STAMP.into())),
    ])
}

pub const TRAJECTORY_HEADER: [&str; 4] = ["t", "lp_norm", "weighted_norm", "contraction_factor"];

pub fn write_trajectory_csv(tr: &SolveTrajectory) -> String {
    let mut s = TRAJECTORY_HEADER.join(",") + "\n";
    for i in 0..tr.times.len() {
        s.push_str(&format!(
            "{},{},{},{}\n",
            fmt_f64(tr.times[i]),
            fmt_f64(tr.lp_norms[i]),
            fmt_f64(tr.weighted_norms[i]),
            fmt_f64(tr.picard_contraction_factors[i])
        ));
    }
    s
}

pub fn trajectory_summary(tr: &SolveTrajectory, blowup_exponent: Option<f64>) -> Json {
    Json::object([
        ("status", Json::Str(tr.status.name().into())),
        ("t_max_est", Json::opt_num(tr.status.t_est())),
        ("fitted_blowup_exponent", Json::opt_num(blowup_exponent)),
        ("version", Json::Str(crate::config::VERSION_STAMP.into())),
    ])
}

pub const STRICHARTZ_HEADER: [&str; 5] = ["q", "p", "r", "sup_ratio", "stable"];

#[derive(Debug, Clone, PartialEq)]
pub struct StrichartzRow {
    pub q: f64,
    pub p: f64,
    pub r: f64,
    pub sup_ratio: f64,
    pub stable: bool,
}

pub fn write_strichartz_csv(rows: &[StrichartzRow]) -> String {
    let mut s = STRICHARTZ_HEADER.join(",") + "\n";
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt_exponent(r.q),
            fmt_exponent(r.p),
            fmt_exponent(r.r),
            fmt_f64(r.sup_ratio),
            r.stable
        ));
    }
    s
}

pub const SUBCHECK_HEADER: [&str; 5] = ["t", "u", "numeric", "exact", "abs_error"];

#[derive(Debug, Clone, PartialEq)]
pub struct SubcheckRow {
    pub t: f64,
    pub u: f64,
    pub numeric: f64,
    pub exact: f64,
}

pub fn write_subcheck_csv(rows: &[SubcheckRow]) -> String {
    let mut s = SUBCHECK_HEADER.join(",") + "\n";
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt_f64(r.t),
            fmt_f64(r.u),
            fmt_f64(r.numeric),
            fmt_f64(r.exact),
            fmt_f64((r.numeric - r.exact).abs())
        ));
    }
    s
}

/// Reads any of the numeric result tables; `true`/`false` read as 1/0.
pub fn read_table(text: &str, header: &[&str]) -> Result<Vec<Vec<f64>>, CliError> {
    records(text, header)?
        .iter()
        .map(|rec| {
            (0..header.len())
                .map(|i| match rec.get(i) {
                    Some("true") => Ok(1.0),
                    Some("false") => Ok(0.0),
                    _ => num(rec, i),
                })
                .collect()
        })
        .collect()
}

pub fn read_strichartz_csv(text: &str) -> Result<Vec<StrichartzRow>, CliError> {
    Ok(read_table(text, &STRICHARTZ_HEADER)?
        .into_iter()
        .map(|r| StrichartzRow {
            q: r[0],
            p: r[1],
            r: r[2],
            sup_ratio: r[3],
            stable: r[4] != 0.0,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_keep_17_digits() {
        assert_eq!(fmt_f64(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_f64(-2.5), "-2.5000000000000000e0");
        assert_eq!(fmt_f64(0.1).parse::<f64>().unwrap(), 0.1);
    }

    #[test]
    fn json_is_valid_and_nulls_non_finite() {
        let j = Json::object([
            ("a", Json::Num(1.5)),
            ("b", Json::Num(f64::NAN)),
            ("c", Json::Str("x\"y".into())),
            ("d", Json::Array(vec![Json::Int(1), Json::Bool(true)])),
        ]);
        let v = parse_json(&j.render()).unwrap();
        assert_eq!(v["a"], 1.5);
        assert!(v["b"].is_null());
        assert_eq!(v["c"], "x\"y");
        assert_eq!(v["d"][1], true);
    }

    #[test]
    fn grid_roundtrip_2d() {
        let grid = UniformGrid::new(2, 3.0, 7).unwrap();
        let f = GridField::from_fn(grid, |p| Complex::new(p[0] - 0.3 * p[1], p[0] * p[1]));
        let back = read_grid_csv(&write_grid_csv(&f)).unwrap();
        assert_eq!(back.grid(), f.grid());
        assert_eq!(back.values(), f.values());
    }

    #[test]
    fn spectral_roundtrip() {
        let b = default_basis(2, 5).unwrap();
        let f = SpectralField::random_band_limited(b, 1, 5, false);
        let back = read_spectral_csv(&write_spectral_csv(&f)).unwrap();
        assert_eq!(back.coeffs(), f.coeffs());
    }

    #[test]
    fn bad_header_and_ragged_grid_are_rejected() {
        assert!(read_grid_csv("x,re\n0,1\n").is_err());
        assert!(read_grid_csv("x,re,im\n-1,0,0\n0.2,0,0\n1,0,0\n").is_err());
        assert!(read_table("t,ratio\n1,abc\n", &["t", "ratio"]).is_err());
    }
}
