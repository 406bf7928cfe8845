//! `B_m(f, g)(x) = ∬ f̂(ξ) ĝ(η) m(ξ, η) e^{2πi(ξ+η)x} dξ dη` and `T_m`.
//!
//! Every method computes the same periodic lattice quadrature: spectra live
//! on the dual grid, samples are periodic in the cell index, and kernel or
//! convolution forms use the symbol sampled on the dual grid (differences
//! reduced into its range). All paths therefore agree to rounding whenever
//! `f̂(ξ)ĝ(η)` is negligible for `|ξ - η|` beyond the dual half-width.

use super::symbol::{GeneralSymbol, Profile, SeparableTerm, Symbol, SymbolForm};
use crate::error::{Error, Result};
use crate::fft::{cis_pi, dft_in_place};
use crate::function_lab::{fourier, inverse_fourier, Interval, SampledFunction};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Rows of the frequency lattice handled per parallel task.
const CHUNK: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Direct,
    Kernel,
    Halfsum,
    Convolution,
    SpaceSide,
}

impl Method {
    pub const ALL: [Method; 5] = [Method::Direct, Method::Kernel, Method::Halfsum, Method::Convolution, Method::SpaceSide];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Kernel => "kernel",
            Method::Halfsum => "halfsum",
            Method::Convolution => "convolution",
            Method::SpaceSide => "space_side",
        }
    }

    /// Whether this method can evaluate the symbol's form.
    pub fn accepts(&self, m: &Symbol) -> bool {
        match self {
            Method::Direct => true,
            Method::Kernel | Method::Halfsum | Method::Convolution => matches!(m.form, SymbolForm::Difference(_)),
            Method::SpaceSide => matches!(m.form, SymbolForm::MeasureHat { .. }),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown method '{s}' (direct|kernel|halfsum|convolution|space_side)")))
    }
}

pub fn evaluate_bm(m: &Symbol, f: &SampledFunction, g: &SampledFunction, method: Method) -> Result<SampledFunction> {
    f.check_grid(g)?;
    if !method.accepts(m) {
        return Err(Error::IncompatibleMethod { method: method.name().into(), form: m.form_name().into() });
    }
    let values = match (method, &m.form) {
        (Method::Direct, _) => direct(m, f, g),
        (Method::Kernel, SymbolForm::Difference(p)) => kernel(p, f, g)?,
        (Method::Halfsum, SymbolForm::Difference(p)) => halfsum(p, f, g),
        (Method::Convolution, SymbolForm::Difference(p)) => convolution(p, f, g),
        (Method::SpaceSide, SymbolForm::MeasureHat { measure, alpha, beta }) => {
            let mut acc = vec![ZERO; f.grid().len()];
            for (t, w) in measure.point_masses() {
                let fs = periodic_shift(f, alpha * t);
                let gs = periodic_shift(g, beta * t);
                for ((a, x), y) in acc.iter_mut().zip(fs).zip(gs) {
                    *a += w * x * y;
                }
            }
            acc
        }
        _ => unreachable!("method compatibility checked above"),
    };
    let band = match (f.bandlimit_hint(), g.bandlimit_hint()) {
        (Some(a), Some(b)) => Some(Interval::new(a.lo + b.lo, a.hi + b.hi)),
        _ => None,
    };
    let l = f.grid().half_width();
    SampledFunction::new(f.grid(), values, Interval::new(-l, l), band)
}

/// Samples of the trigonometric interpolant at `x_j - y` for every node.
pub fn periodic_shift(f: &SampledFunction, y: f64) -> Vec<Complex64> {
    let grid = f.grid();
    let n = grid.len();
    let cells = y / grid.dx();
    let r = cells.round();
    if (cells - r).abs() <= 1e-9 {
        let m = (r as i64).rem_euclid(n as i64) as usize;
        return (0..n).map(|j| f.values()[(j + n - m) % n]).collect();
    }
    let hat = fourier(f);
    let shifted = hat.map(|xi, v| v * cis_pi(-2.0 * y, xi));
    inverse_fourier(&shifted).values().to_vec()
}

/// Inverse transform of lattice sums `S[u]` (already multiplied by `Δξ`).
fn from_spectrum(f: &SampledFunction, s: Vec<Complex64>) -> Vec<Complex64> {
    let dual = f.grid().dual();
    let l = dual.half_width();
    let spec = SampledFunction::new(dual, s, Interval::new(-l, l), None).expect("finite lattice sums");
    inverse_fourier(&spec).values().to_vec()
}

fn nonzero(v: &[Complex64]) -> Vec<usize> {
    (0..v.len()).filter(|&i| v[i] != ZERO).collect()
}

/// `S[u] = Σ_{k+l ≡ u + n/2} F_k G_l w(k, l)`, chunked over `k` and reduced in order.
fn lattice_sum(fh: &[Complex64], gh: &[Complex64], w: impl Fn(usize, usize) -> Complex64 + Sync) -> Vec<Complex64> {
    let n = fh.len();
    let half = n / 2;
    let kf = nonzero(fh);
    let lg = nonzero(gh);
    let parts: Vec<Vec<Complex64>> = kf
        .par_chunks(CHUNK)
        .map(|ks| {
            let mut s = vec![ZERO; n];
            for &k in ks {
                let fk = fh[k];
                for &l in &lg {
                    s[(k + l + half) % n] += fk * gh[l] * w(k, l);
                }
            }
            s
        })
        .collect();
    let mut s = vec![ZERO; n];
    for p in parts {
        for (a, b) in s.iter_mut().zip(p) {
            *a += b;
        }
    }
    s
}

/// Profile sampled at lattice differences `d = k - l ∈ (-n, n)`, index `d + n - 1`.
fn difference_table(p: &Profile, n: usize, dxi: f64) -> Vec<Complex64> {
    (0..2 * n - 1).map(|i| p.eval((i as f64 - (n - 1) as f64) * dxi)).collect()
}

fn direct(m: &Symbol, f: &SampledFunction, g: &SampledFunction) -> Vec<Complex64> {
    if let Some(terms) = m.separable_terms() {
        return separable(&terms, f, g);
    }
    let fh = fourier(f);
    let gh = fourier(g);
    let dual = fh.grid();
    let n = dual.len();
    let dxi = dual.dx();
    let s = match &m.form {
        SymbolForm::Difference(p) => {
            let md = difference_table(p, n, dxi);
            lattice_sum(fh.values(), gh.values(), |k, l| md[k + n - 1 - l])
        }
        SymbolForm::General(GeneralSymbol::Closure(c)) => {
            lattice_sum(fh.values(), gh.values(), |k, l| c(dual.x(k), dual.x(l)))
        }
        SymbolForm::General(GeneralSymbol::Table(t)) => {
            lattice_sum(fh.values(), gh.values(), |k, l| t.eval(dual.x(k), dual.x(l)))
        }
        _ => unreachable!("separable forms handled above"),
    };
    from_spectrum(f, s.into_iter().map(|v| v * dxi).collect())
}

/// `Σ w · T_a f · T_b g` for `m = Σ w a(ξ) b(η)`.
fn separable(terms: &[SeparableTerm], f: &SampledFunction, g: &SampledFunction) -> Vec<Complex64> {
    let fh = fourier(f);
    let gh = fourier(g);
    let mut acc = vec![ZERO; f.grid().len()];
    for t in terms {
        let tf = inverse_fourier(&fh.map(|xi, v| v * (t.a)(xi)));
        let tg = inverse_fourier(&gh.map(|eta, v| v * (t.b)(eta)));
        for ((a, x), y) in acc.iter_mut().zip(tf.values()).zip(tg.values()) {
            *a += t.weight * x * y;
        }
    }
    acc
}

/// `B(x_j) = Δx Σ_m K(t_m) f(x_j - t_m) g(x_j + t_m)` with `K = M̌` on the grid.
fn kernel(p: &Profile, f: &SampledFunction, g: &SampledFunction) -> Result<Vec<Complex64>> {
    if !p.is_integrable() {
        return Err(Error::NotIntegrable(format!("profile '{}' has infinite L¹ norm; window it first", p.name())));
    }
    let grid = f.grid();
    let n = grid.len();
    let half = n / 2;
    let dual = grid.dual();
    let l = dual.half_width();
    let mhat = SampledFunction::new(dual, (0..n).map(|d| p.eval(dual.x(d))).collect(), Interval::new(-l, l), None)?;
    let k = inverse_fourier(&mhat);
    let kv = k.values();
    let (fv, gv) = (f.values(), g.values());
    let dx = grid.dx();
    Ok((0..n)
        .into_par_iter()
        .map(|j| {
            let mut acc = ZERO;
            for (m, km) in kv.iter().enumerate() {
                acc += km * fv[(j + n + half - m) % n] * gv[(j + m + half) % n];
            }
            acc * dx
        })
        .collect())
}

/// Sum over `u = ξ + η`, `v = ξ - η`: the `(u, v)` lattice has cells of area
/// `2Δξ²` and the change of variables contributes the Jacobian `1/2`.
fn halfsum(p: &Profile, f: &SampledFunction, g: &SampledFunction) -> Vec<Complex64> {
    const JACOBIAN: f64 = 0.5;
    const CELL: f64 = 2.0;
    let fh = fourier(f);
    let gh = fourier(g);
    let n = fh.grid().len();
    let half = n / 2;
    let dxi = fh.grid().dx();
    let md = difference_table(p, n, dxi);
    let (fv, gv) = (fh.values(), gh.values());
    let sums: Vec<Complex64> = (0..2 * n - 1)
        .into_par_iter()
        .map(|s| {
            let top = 2 * (n - 1);
            let v_lo = -(s as isize).min((top - s) as isize);
            let mut acc = ZERO;
            let mut v = v_lo;
            while v <= -v_lo {
                let k = ((s as isize + v) / 2) as usize;
                let l = ((s as isize - v) / 2) as usize;
                if fv[k] != ZERO && gv[l] != ZERO {
                    acc += fv[k] * gv[l] * md[(v + n as isize - 1) as usize];
                }
                v += 2;
            }
            acc * (JACOBIAN * CELL)
        })
        .collect();
    let mut spec = vec![ZERO; n];
    for (s, v) in sums.into_iter().enumerate() {
        spec[(s + half) % n] += v * dxi;
    }
    from_spectrum(f, spec)
}

/// `B(x) = Σ_β Δξ M(β) e^{-2πiβx} (f ⋆ M_β g)(2x)` over the dual grid.
///
/// `M_β g` is a cyclic shift of the DFT of `g`, so each `β` costs one inverse FFT.
fn convolution(p: &Profile, f: &SampledFunction, g: &SampledFunction) -> Vec<Complex64> {
    let grid = f.grid();
    let n = grid.len();
    let half = n / 2;
    let dual = grid.dual();
    let (dx, dxi) = (grid.dx(), dual.dx());
    let mut fr = f.values().to_vec();
    let mut gr = g.values().to_vec();
    dft_in_place(&mut fr, false);
    dft_in_place(&mut gr, false);
    let twiddle: Vec<Complex64> = (0..n).map(|q| cis_pi(-2.0, q as f64 / n as f64)).collect();
    let betas: Vec<(usize, Complex64)> = (0..n).map(|b| (b, p.eval(dual.x(b)))).filter(|(_, v)| *v != ZERO).collect();
    let scale = dxi * dx / n as f64;
    let parts: Vec<Vec<Complex64>> = betas
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut acc = vec![ZERO; n];
            let mut buf = vec![ZERO; n];
            for &(b, mb) in chunk {
                let s0 = b as i64 - half as i64;
                let sign = if b % 2 == 0 { 1.0 } else { -1.0 };
                for q in 0..n {
                    let src = (q as i64 - s0).rem_euclid(n as i64) as usize;
                    buf[q] = fr[q] * gr[src] * sign;
                }
                dft_in_place(&mut buf, true);
                for (j, a) in acc.iter_mut().enumerate() {
                    let ph = (s0 * (j as i64 - half as i64)).rem_euclid(n as i64) as usize;
                    *a += mb * twiddle[ph] * buf[(2 * j) % n];
                }
            }
            acc
        })
        .collect();
    let mut out = vec![ZERO; n];
    for part in parts {
        for (a, b) in out.iter_mut().zip(part) {
            *a += b;
        }
    }
    out.iter_mut().for_each(|v| *v *= scale);
    out
}

/// `B_M(f, g)(-x) = ∫ (τ̂_x g ⋆ M)(ξ) τ̂_x f(ξ) dξ` at a single point.
pub fn f1_spot_check(p: &Profile, f: &SampledFunction, g: &SampledFunction, x: f64) -> Result<Complex64> {
    f.check_grid(g)?;
    let fh = fourier(f);
    let gh = fourier(g);
    let dual = fh.grid();
    let n = dual.len();
    let dxi = dual.dx();
    let md = difference_table(p, n, dxi);
    let tf: Vec<Complex64> = (0..n).map(|k| fh.values()[k] * cis_pi(-2.0 * x, dual.x(k))).collect();
    let tg: Vec<Complex64> = (0..n).map(|k| gh.values()[k] * cis_pi(-2.0 * x, dual.x(k))).collect();
    let lg = nonzero(&tg);
    let total: Complex64 = (0..n)
        .into_par_iter()
        .map(|k| {
            if tf[k] == ZERO {
                return ZERO;
            }
            let conv: Complex64 = lg.iter().map(|&l| tg[l] * md[k + n - 1 - l]).sum::<Complex64>() * dxi;
            conv * tf[k]
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum();
    Ok(total * dxi)
}

/// `T_m f = (m f̂)ˇ` for a multiplier sampled on the dual grid.
pub fn apply_linear_multiplier(m: &SampledFunction, f: &SampledFunction) -> Result<SampledFunction> {
    if !m.grid().same_as(&f.grid().dual()) {
        return Err(Error::GridMismatch("multiplier must be sampled on the dual grid of f".into()));
    }
    if let Some(b) = f.bandlimit_hint() {
        if !m.support_hint().contains(&b, 1e-9 * m.grid().dx()) {
            return Err(Error::GridMismatch(format!(
                "band [{}, {}] of f is outside the multiplier window [{}, {}]",
                b.lo,
                b.hi,
                m.support_hint().lo,
                m.support_hint().hi
            )));
        }
    }
    let hat = fourier(f);
    let prod = hat.mul(m)?;
    let mut out = inverse_fourier(&prod);
    let l = f.grid().half_width();
    out = out.with_support(Interval::new(-l, l)).with_bandlimit(f.bandlimit_hint());
    Ok(out)
}

/// `T_m f` for a multiplier given as a function of `ξ`.
pub fn apply_multiplier_fn(f: &SampledFunction, m: impl Fn(f64) -> Complex64) -> SampledFunction {
    let dual = f.grid().dual();
    let l = dual.half_width();
    let ms = SampledFunction::from_fn(dual, m).with_support(Interval::new(-l, l));
    apply_linear_multiplier(&ms, f).expect("multiplier sampled on the dual grid")
}

#[cfg(test)]
mod tests {
    use super::super::symbol::Measure;
    use super::*;
    use crate::function_lab::{make_bandlimited, translate, Grid};

    fn grid() -> Grid {
        Grid::new(8.0, 512).unwrap()
    }

    fn gauss_at(g: Grid, c: f64, s: f64) -> SampledFunction {
        SampledFunction::from_real_fn(g, |x| (-std::f64::consts::PI * ((x - c) / s).powi(2)).exp())
    }

    #[test]
    fn constant_symbol_gives_product() {
        let g = grid();
        let f = gauss_at(g, 0.5, 1.0);
        let h = gauss_at(g, -0.5, 1.5);
        let b = evaluate_bm(&Symbol::one(), &f, &h, Method::Direct).unwrap();
        let prod = f.mul(&h).unwrap();
        assert!(b.max_abs_diff(&prod) < 1e-12);
    }

    #[test]
    fn dirac_measure_gives_shifted_product() {
        let g = grid();
        let f = gauss_at(g, 0.0, 1.0);
        let h = gauss_at(g, 0.25, 1.0);
        let t = 1.0;
        let m = Symbol::measure_hat(Measure::dirac(t), 1.0, -1.0);
        let want = translate(&f, t).unwrap().mul(&translate(&h, -t).unwrap()).unwrap();
        for method in [Method::Direct, Method::SpaceSide] {
            let b = evaluate_bm(&m, &f, &h, method).unwrap();
            assert!(b.max_abs_diff(&want) < 1e-12, "{method}");
        }
    }

    #[test]
    fn difference_methods_agree() {
        let g = grid();
        let f = gauss_at(g, 0.3, 1.0);
        let h = gauss_at(g, -0.2, 0.8);
        let m = Symbol::difference(Profile::gaussian());
        let base = evaluate_bm(&m, &f, &h, Method::Direct).unwrap();
        for method in [Method::Kernel, Method::Halfsum, Method::Convolution] {
            let b = evaluate_bm(&m, &f, &h, method).unwrap();
            assert!(b.max_abs_diff(&base) < 1e-12, "{method}: {}", b.max_abs_diff(&base));
        }
    }

    #[test]
    fn gaussian_closed_form() {
        // f = g = e^{-πx²}, M(v) = e^{-v²}:
        // B(x) = e^{-2πx²} / √2 · √(π / (π/2 + 1)).
        let g = Grid::new(16.0, 1024).unwrap();
        let f = SampledFunction::gaussian(g, 1.0);
        let b = evaluate_bm(&Symbol::difference(Profile::gaussian()), &f, &f, Method::Kernel).unwrap();
        let pi = std::f64::consts::PI;
        let c = (pi / (pi / 2.0 + 1.0)).sqrt() / 2f64.sqrt();
        let dev = (0..g.len())
            .map(|j| (b.values()[j] - Complex64::new(c * (-2.0 * pi * g.x(j).powi(2)).exp(), 0.0)).norm())
            .fold(0.0, f64::max);
        assert!(dev < 1e-12, "{dev}");
    }

    #[test]
    fn f1_matches_direct() {
        let g = grid();
        let f = gauss_at(g, 0.3, 1.0);
        let h = gauss_at(g, -0.2, 0.8);
        let p = Profile::sign(3.0);
        let b = evaluate_bm(&Symbol::difference(p.clone()), &f, &h, Method::Direct).unwrap();
        for x in [-1.0, 0.0, 0.5, 2.0] {
            let v = f1_spot_check(&p, &f, &h, x).unwrap();
            let j = g.node_index(-x).unwrap();
            assert!((v - b.values()[j]).norm() < 1e-12);
        }
    }

    #[test]
    fn incompatible_methods() {
        let g = grid();
        let f = gauss_at(g, 0.0, 1.0);
        assert!(matches!(
            evaluate_bm(&Symbol::one(), &f, &f, Method::Kernel),
            Err(Error::IncompatibleMethod { .. })
        ));
        assert!(matches!(
            evaluate_bm(&Symbol::difference(Profile::gaussian()), &f, &f, Method::SpaceSide),
            Err(Error::IncompatibleMethod { .. })
        ));
        let heavy = Symbol::difference(Profile::sign_unwindowed());
        assert!(matches!(evaluate_bm(&heavy, &f, &f, Method::Kernel), Err(Error::NotIntegrable(_))));
    }

    #[test]
    fn linear_multipliers() {
        let g = grid();
        let f = gauss_at(g, 0.0, 1.0);
        let one = apply_multiplier_fn(&f, |_| Complex64::new(1.0, 0.0));
        assert!(one.max_abs_diff(&f) < 1e-14);
        let y = 1.5;
        let shifted = apply_multiplier_fn(&f, |xi| cis_pi(-2.0 * y, xi));
        assert!(shifted.max_abs_diff(&translate(&f, y).unwrap()) < 1e-9);
    }

    #[test]
    fn analytic_projection_of_sinc() {
        // Oracle: direct half-spectrum sum of the inverse transform.
        let g = grid();
        let f = make_bandlimited(g, Interval::new(-1.0, 1.0), |_| Complex64::new(1.0, 0.0)).unwrap();
        let p = apply_multiplier_fn(&f, |xi| Complex64::new(if xi >= 0.0 { 1.0 } else { 0.0 }, 0.0));
        let fh = fourier(&f);
        let dual = fh.grid();
        for j in [0usize, 100, 256, 300] {
            let x = g.x(j);
            let want: Complex64 = (0..dual.len())
                .filter(|&k| dual.x(k) >= 0.0)
                .map(|k| fh.values()[k] * cis_pi(2.0 * x, dual.x(k)) * dual.dx())
                .sum();
            assert!((p.values()[j] - want).norm() < 1e-12);
        }
    }
}
