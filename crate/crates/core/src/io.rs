//! CSV and JSON serialization.
//!
//! Reals are written in Rust's shortest round-trip decimal form, so every
//! emitted value re-loads bit-for-bit. Non-finite values are written as
//! `inf`, `-inf` and `NaN` (JSON wraps them in strings).

use crate::bilinear::Profile;
use crate::error::{Error, Result};
use crate::function_lab::{Grid, Interval, SampledFunction};
use crate::young::{GridSamples, Tail, YoungFunction};
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::path::Path;

/// An `f64` whose JSON form survives `±∞` and NaN.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Real(pub f64);

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            s.serialize_f64(self.0)
        } else {
            s.serialize_str(&format_real(self.0))
        }
    }
}

impl<'de> Deserialize<'de> for Real {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(Real(v)),
            Raw::Text(t) => parse_real(&t).map(Real).map_err(serde::de::Error::custom),
        }
    }
}

impl From<f64> for Real {
    fn from(v: f64) -> Self {
        Real(v)
    }
}

/// Shortest decimal that parses back to the same `f64`.
pub fn format_real(v: f64) -> String {
    format!("{v:?}")
}

pub fn parse_real(s: &str) -> Result<f64> {
    let t = s.trim();
    match t {
        "inf" | "+inf" | "∞" => Ok(f64::INFINITY),
        "-inf" | "-∞" => Ok(f64::NEG_INFINITY),
        _ => t.parse::<f64>().map_err(|_| Error::Parse(format!("not a real number: '{s}'"))),
    }
}

fn reader(path: &Path) -> Result<csv::Reader<std::fs::File>> {
    csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn csv_err(path: &Path, e: csv::Error) -> Error {
    Error::Parse(format!("{}: {e}", path.display()))
}

/// Reads rows of reals under an exact header.
pub fn read_real_table(path: &Path, header: &[&str]) -> Result<Vec<Vec<f64>>> {
    let mut rdr = reader(path)?;
    let got: Vec<String> = rdr.headers().map_err(|e| csv_err(path, e))?.iter().map(str::to_string).collect();
    if got.iter().map(String::as_str).ne(header.iter().copied()) {
        return Err(Error::Parse(format!(
            "{}: expected header '{}', found '{}'",
            path.display(),
            header.join(","),
            got.join(",")
        )));
    }
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| csv_err(path, e))?;
        rows.push(rec.iter().map(parse_real).collect::<Result<Vec<f64>>>()?);
    }
    Ok(rows)
}

/// Writes a header and rows of reals.
pub fn write_real_table(path: &Path, header: &[&str], rows: &[Vec<f64>]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    w.write_record(header).map_err(|e| csv_err(path, e))?;
    for r in rows {
        w.write_record(r.iter().map(|v| format_real(*v))).map_err(|e| csv_err(path, e))?;
    }
    w.flush()?;
    Ok(())
}

/// `x,re,im` rows of a sampled function.
pub fn sampled_rows(f: &SampledFunction) -> Vec<Vec<f64>> {
    let g = f.grid();
    f.values().iter().enumerate().map(|(j, v)| vec![g.x(j), v.re, v.im]).collect()
}

pub fn write_sampled_csv(path: &Path, f: &SampledFunction) -> Result<()> {
    write_real_table(path, &["x", "re", "im"], &sampled_rows(f))
}

/// Loads `x,re,im`; the abscissae must be the nodes of a grid `(L, n)`.
pub fn read_sampled_csv(path: &Path) -> Result<SampledFunction> {
    let rows = read_real_table(path, &["x", "re", "im"])?;
    let n = rows.len();
    if n < 4 || !n.is_power_of_two() {
        return Err(Error::Parse(format!("{}: row count {n} is not a power of two ≥ 4", path.display())));
    }
    let dx = rows[1][0] - rows[0][0];
    if !(dx > 0.0) {
        return Err(Error::Parse(format!("{}: x must increase strictly", path.display())));
    }
    let grid = Grid::new(0.5 * n as f64 * dx, n)?;
    for (j, r) in rows.iter().enumerate() {
        if j > 0 && !(r[0] > rows[j - 1][0]) {
            return Err(Error::Parse(format!("{}: x must increase strictly (row {})", path.display(), j + 2)));
        }
        if (r[0] - grid.x(j)).abs() > 1e-9 * dx {
            return Err(Error::Parse(format!(
                "{}: row {} has x = {} but a uniform grid from -L needs {}",
                path.display(),
                j + 2,
                r[0],
                grid.x(j)
            )));
        }
    }
    let values = rows.iter().map(|r| Complex64::new(r[1], r[2])).collect();
    let l = grid.half_width();
    SampledFunction::new(grid, values, Interval::new(-l, l), None)
}

/// Loads `x,phi` samples of a Young function. Rows with `phi = inf` mark the
/// end of the finite domain; otherwise the last slope continues linearly.
pub fn read_young_csv(path: &Path) -> Result<YoungFunction> {
    let rows = read_real_table(path, &["x", "phi"])?;
    let mut x = Vec::new();
    let mut value = Vec::new();
    let mut infinite = false;
    for r in rows {
        if r[1].is_infinite() {
            infinite = true;
            break;
        }
        x.push(r[0]);
        value.push(r[1]);
    }
    if x.first() != Some(&0.0) {
        x.insert(0, 0.0);
        value.insert(0, 0.0);
    }
    if x.len() < 2 {
        return Err(Error::NotYoung(format!("{}: need at least two finite samples", path.display())));
    }
    let n = x.len();
    let tail = if infinite {
        Tail::Infinite
    } else {
        Tail::Linear((value[n - 1] - value[n - 2]) / (x[n - 1] - x[n - 2]))
    };
    YoungFunction::grid(GridSamples { x, value, slope: None, tail })
}

/// Loads a difference-symbol profile from `v,re,im`.
pub fn read_profile_csv(path: &Path) -> Result<Profile> {
    let rows = read_real_table(path, &["v", "re", "im"])?;
    Profile::table(rows.iter().map(|r| r[0]).collect(), rows.iter().map(|r| Complex64::new(r[1], r[2])).collect())
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_json_round_trip() {
        for v in [0.1, -3.5e-300, 1.0 / 3.0, f64::INFINITY, f64::NEG_INFINITY] {
            let s = serde_json::to_string(&Real(v)).unwrap();
            let back: Real = serde_json::from_str(&s).unwrap();
            assert_eq!(back.0.to_bits(), v.to_bits(), "{s}");
        }
        let nan: Real = serde_json::from_str(&serde_json::to_string(&Real(f64::NAN)).unwrap()).unwrap();
        assert!(nan.0.is_nan());
    }

    #[test]
    fn real_text_round_trip() {
        for v in [0.1, 2.0f64.sqrt(), 1e-310, f64::INFINITY] {
            assert_eq!(parse_real(&format_real(v)).unwrap().to_bits(), v.to_bits());
        }
        assert!(parse_real("abc").is_err());
    }

    #[test]
    fn sampled_csv_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("f.csv");
        let g = Grid::new(4.0, 64).unwrap();
        let f = SampledFunction::from_fn(g, |x| Complex64::new((-x * x).exp(), x.sin() / 3.0));
        write_sampled_csv(&p, &f).unwrap();
        let back = read_sampled_csv(&p).unwrap();
        assert_eq!(back.values(), f.values());
        assert_eq!(back.grid(), g);
    }

    #[test]
    fn sampled_csv_rejects_non_uniform() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("f.csv");
        let rows = vec![vec![-2.0, 0.0, 0.0], vec![-1.0, 1.0, 0.0], vec![0.0, 1.0, 0.0], vec![1.5, 0.0, 0.0]];
        write_real_table(&p, &["x", "re", "im"], &rows).unwrap();
        assert!(read_sampled_csv(&p).is_err());
    }

    #[test]
    fn young_csv_builds_grid_kind() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("phi.csv");
        let rows: Vec<Vec<f64>> = (0..=20).map(|i| vec![i as f64 * 0.5, (i as f64 * 0.5).powi(2)]).collect();
        write_real_table(&p, &["x", "phi"], &rows).unwrap();
        let phi = read_young_csv(&p).unwrap();
        assert_eq!(phi.eval(3.0), 9.0);
        assert!((phi.eval(3.25) - 10.625).abs() < 1e-12);
    }
}
