//! Spec strings for Young functions, sampled functions and symbols.
//!
//! The grammar is `kind[:key=value[,key=value]...]`, with `@path` loading a
//! CSV file. Unknown kinds and keys are rejected.
//!
//! ```text
//! young:    power:p=2 | powerp:p=3 | exp | window:c=2 | linear:s=1 | grid:@phi.csv
//! function: indicator:a=4[,x0=0] | gauss:s=1 | sinc:w=1 | bl-gauss | @f.csv
//! symbol:   one | zero | difference:gauss | difference:sign[:w=8] | difference:bump
//!           | difference:@m.csv | measure:delta@t,w;delta@t,w[:alpha=1,beta=-1]
//! ```

use crate::bilinear::{Measure, Profile, Symbol};
use crate::error::{Error, Result};
use crate::function_lab::{make_bandlimited, Grid, Interval, SampledFunction};
use crate::io;
use crate::young::YoungFunction;
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::path::Path;

pub const YOUNG_GRAMMAR: &str = "power:p=<p≥1> | powerp:p=<p>1> | exp | window:c=<c> | linear:s=<s> | grid:@file.csv";
pub const FUNCTION_GRAMMAR: &str = "indicator:a=<len>[,x0=<start>] | gauss:s=<scale> | sinc:w=<width> | bl-gauss | @file.csv";
pub const SYMBOL_GRAMMAR: &str =
    "one | zero | difference:gauss|sign[:w=<half-width>]|bump|@file.csv | measure:delta@<t>,<w>;...[:alpha=<a>,beta=<b>]";

/// Half-width of the window applied to `difference:sign`.
pub const DEFAULT_SIGN_WINDOW: f64 = 8.0;

/// Half-width of the spectral window used by `bl-gauss`.
pub const BL_GAUSS_WINDOW: f64 = 6.0;

struct Params {
    what: &'static str,
    map: BTreeMap<String, f64>,
}

impl Params {
    fn parse(what: &'static str, text: &str, allowed: &[&str]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for kv in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("{what}: expected key=value, found '{kv}'")))?;
            let k = k.trim();
            if !allowed.contains(&k) {
                return Err(Error::Parse(format!("{what}: unknown key '{k}' (accepted: {})", allowed.join(", "))));
            }
            if map.insert(k.to_string(), io::parse_real(v)?).is_some() {
                return Err(Error::Parse(format!("{what}: key '{k}' given twice")));
            }
        }
        Ok(Self { what, map })
    }

    fn get(&self, key: &str) -> Option<f64> {
        self.map.get(key).copied()
    }

    fn need(&self, key: &str) -> Result<f64> {
        self.get(key).ok_or_else(|| Error::Parse(format!("{}: missing '{key}='", self.what)))
    }
}

fn split_kind(spec: &str) -> (&str, &str) {
    match spec.trim().split_once(':') {
        Some((k, rest)) => (k.trim(), rest.trim()),
        None => (spec.trim(), ""),
    }
}

fn file_arg<'a>(what: &str, rest: &'a str) -> Result<&'a Path> {
    rest.strip_prefix('@')
        .map(Path::new)
        .ok_or_else(|| Error::Parse(format!("{what}: expected @file.csv, found '{rest}'")))
}

fn no_params(what: &str, rest: &str) -> Result<()> {
    if rest.is_empty() {
        Ok(())
    } else {
        Err(Error::Parse(format!("{what}: takes no parameters, found '{rest}'")))
    }
}

pub fn parse_young(spec: &str) -> Result<YoungFunction> {
    let (kind, rest) = split_kind(spec);
    let bad = |e: Error| Error::Parse(format!("young '{spec}': {e} (grammar: {YOUNG_GRAMMAR})"));
    let r = || match kind {
        "power" => YoungFunction::power(Params::parse("power", rest, &["p"])?.need("p")?),
        "powerp" => YoungFunction::power_over_p(Params::parse("powerp", rest, &["p"])?.need("p")?),
        "exp" => no_params("exp", rest).map(|_| YoungFunction::exp_minus_one()),
        "window" => YoungFunction::indicator_window(Params::parse("window", rest, &["c"])?.need("c")?),
        "linear" => YoungFunction::linear(Params::parse("linear", rest, &["s"])?.need("s")?),
        "grid" => io::read_young_csv(file_arg("grid", rest)?),
        other => Err(Error::Parse(format!("unknown kind '{other}'"))),
    };
    r().map_err(bad)
}

pub fn parse_function(spec: &str, grid: Grid) -> Result<SampledFunction> {
    let spec = spec.trim();
    if spec.starts_with('@') {
        let f = io::read_sampled_csv(file_arg("function", spec)?)?;
        if !f.grid().same_as(&grid) {
            let (h, n) = (f.grid().half_width(), f.grid().len());
            return Err(Error::GridMismatch(format!(
                "{spec} has grid (L={h}, n={n}), expected (L={}, n={})",
                grid.half_width(),
                grid.len()
            )));
        }
        return Ok(f);
    }
    let (kind, rest) = split_kind(spec);
    let bad = |e: Error| Error::Parse(format!("function '{spec}': {e} (grammar: {FUNCTION_GRAMMAR})"));
    let r = match kind {
        "indicator" => Params::parse("indicator", rest, &["a", "x0"]).and_then(|p| {
            let a = p.need("a")?;
            let x0 = p.get("x0").unwrap_or(0.0);
            SampledFunction::indicator(grid, x0, x0 + a)
        }),
        "gauss" => Params::parse("gauss", rest, &["s"]).and_then(|p| {
            let s = p.get("s").unwrap_or(1.0);
            if !(s > 0.0) {
                return Err(Error::InvalidArgument("s must be > 0".into()));
            }
            Ok(SampledFunction::gaussian(grid, s))
        }),
        "sinc" => Params::parse("sinc", rest, &["w"]).and_then(|p| {
            let w = p.get("w").unwrap_or(1.0);
            if !(w > 0.0) {
                return Err(Error::InvalidArgument("w must be > 0".into()));
            }
            make_bandlimited(grid, Interval::new(-w / 2.0, w / 2.0), |_| Complex64::new(1.0, 0.0))
        }),
        "bl-gauss" => no_params("bl-gauss", rest).and_then(|_| {
            let w = BL_GAUSS_WINDOW;
            make_bandlimited(grid, Interval::new(-w, w), |xi| Complex64::new((-2.0 * xi * xi).exp(), 0.0))
        }),
        other => Err(Error::Parse(format!("unknown kind '{other}'"))),
    };
    r.map_err(bad)
}

fn parse_atom(text: &str) -> Result<(f64, Complex64)> {
    let body = text
        .trim()
        .strip_prefix("delta@")
        .ok_or_else(|| Error::Parse(format!("expected delta@t,w, found '{text}'")))?;
    let (t, w) = match body.split_once(',') {
        Some((t, w)) => (io::parse_real(t)?, io::parse_real(w)?),
        None => (io::parse_real(body)?, 1.0),
    };
    if !t.is_finite() || !w.is_finite() {
        return Err(Error::Parse(format!("atom '{text}' must be finite")));
    }
    Ok((t, Complex64::new(w, 0.0)))
}

/// Difference profile `M`: `gauss` (`e^{-v²}`), `bump`, `sign[:w=]` or `@file.csv`.
pub fn parse_profile(spec: &str) -> Result<Profile> {
    let spec = spec.trim();
    if let Some(path) = spec.strip_prefix('@') {
        return io::read_profile_csv(Path::new(path));
    }
    let (name, params) = split_kind(spec);
    match name {
        "gauss" => no_params("gauss", params).map(|_| Profile::gaussian()),
        "bump" => no_params("bump", params).map(|_| Profile::bump(1.0, 0.0)),
        "sign" => Params::parse("sign", params, &["w"]).map(|p| Profile::sign(p.get("w").unwrap_or(DEFAULT_SIGN_WINDOW))),
        other => Err(Error::Parse(format!("unknown difference profile '{other}'"))),
    }
}

pub fn parse_symbol(spec: &str) -> Result<Symbol> {
    let (kind, rest) = split_kind(spec);
    let bad = |e: Error| Error::Parse(format!("symbol '{spec}': {e} (grammar: {SYMBOL_GRAMMAR})"));
    let r = match kind {
        "one" => no_params("one", rest).map(|_| Symbol::one()),
        "zero" => no_params("zero", rest).map(|_| Symbol::zero()),
        "difference" => parse_profile(rest).map(Symbol::difference),
        "measure" => {
            let (atoms, params) = match rest.split_once(':') {
                Some((a, p)) => (a, p),
                None => (rest, ""),
            };
            (|| {
                let atoms = atoms
                    .split(';')
                    .filter(|s| !s.trim().is_empty())
                    .map(parse_atom)
                    .collect::<Result<Vec<_>>>()?;
                if atoms.is_empty() {
                    return Err(Error::Parse("measure needs at least one atom".into()));
                }
                let p = Params::parse("measure", params, &["alpha", "beta"])?;
                let (alpha, beta) = (p.get("alpha").unwrap_or(1.0), p.get("beta").unwrap_or(-1.0));
                Ok(Symbol::measure_hat(Measure::atoms(atoms), alpha, beta))
            })()
        }
        other => Err(Error::Parse(format!("unknown kind '{other}'"))),
    };
    r.map(|s| s.with_label(spec.trim())).map_err(bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bilinear::SymbolForm;
    use crate::function_lab::{fourier, luxemburg};

    #[test]
    fn young_specs() {
        assert_eq!(parse_young("power:p=2").unwrap().eval(3.0), 9.0);
        assert_eq!(parse_young("powerp:p=3").unwrap().eval(3.0), 9.0);
        assert!((parse_young("exp").unwrap().eval(1.0) - (1f64.exp() - 1.0)).abs() < 1e-15);
        assert!(parse_young("window:c=2").unwrap().eval(2.5).is_infinite());
        assert!(parse_young("power:q=2").is_err());
        assert!(parse_young("power").is_err());
        assert!(parse_young("cosh").is_err());
        assert!(parse_young("exp:p=1").is_err());
    }

    #[test]
    fn function_specs() {
        let g = Grid::new(16.0, 1024).unwrap();
        let f = parse_function("indicator:a=4", g).unwrap();
        assert!((luxemburg(&f, &YoungFunction::power(2.0).unwrap()).unwrap() - 2.0).abs() < 1e-9);
        let f = parse_function("indicator:a=2,x0=-1", g).unwrap();
        assert_eq!(f.support_measure(), 2.0);
        let f = parse_function("gauss:s=1", g).unwrap();
        assert!((f.integral().re - 1.0).abs() < 1e-12);
        let f = parse_function("sinc:w=2", g).unwrap();
        assert!((f.values()[512].re - 2.0).abs() < 1e-9);
        let f = parse_function("bl-gauss", g).unwrap();
        let hat = fourier(&f);
        let k = g.dual().node_index(0.5).unwrap();
        assert!((hat.values()[k].re - (-0.5f64).exp()).abs() < 1e-12);
        assert!(parse_function("indicator:a=40", g).is_err());
        assert!(parse_function("indicator", g).is_err());
    }

    #[test]
    fn symbol_specs() {
        let s = parse_symbol("measure:delta@0,1;delta@1,1:alpha=1,beta=-1").unwrap();
        match &s.form {
            SymbolForm::MeasureHat { measure, alpha, beta } => {
                assert_eq!(measure.total_variation(), 2.0);
                assert_eq!((*alpha, *beta), (1.0, -1.0));
            }
            _ => panic!("wrong form"),
        }
        assert!((s.eval(0.3, 0.3) - Complex64::new(2.0, 0.0)).norm() < 1e-15);
        let d = parse_symbol("difference:sign").unwrap();
        assert_eq!(d.eval(0.0, 9.0), Complex64::new(0.0, 0.0));
        assert_eq!(d.eval(0.0, 7.0), Complex64::new(-1.0, 0.0));
        assert_eq!(parse_symbol("difference:sign:w=2").unwrap().eval(0.0, 3.0), Complex64::new(0.0, 0.0));
        assert_eq!(parse_symbol("difference:gauss").unwrap().eval(1.0, 1.0), Complex64::new(1.0, 0.0));
        assert!(parse_symbol("measure:").is_err());
        assert!(parse_symbol("difference:cosh").is_err());
        assert!(parse_symbol("measure:delta@0,1:gamma=2").is_err());
    }
}
