//! Sampled functions on uniform grids, their Fourier transforms, the
//! translation/modulation/dilation actions, and the Luxemburg norm.

use crate::error::{Error, Result};
use crate::fft::{cis_pi, dft_in_place, fractional_dft};
use crate::roots::bisect_boundary;
use crate::young::YoungFunction;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Magnitudes below this fraction of the maximum count as zero for support detection.
pub const SUPPORT_THRESHOLD: f64 = 1e-13;

/// Relative tolerance of the Luxemburg bisection.
pub const LUXEMBURG_REL_TOL: f64 = 1e-10;

/// Maximum number of bracket doublings in the Luxemburg search.
pub const MAX_DOUBLINGS: usize = 400;

/// Uniform grid `x_j = -L + jΔx`, `j = 0..n`, `Δx = 2L/n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    half_width: f64,
    n: usize,
}

impl Grid {
    pub fn new(half_width: f64, n: usize) -> Result<Self> {
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::InvalidArgument(format!("grid half-width must be > 0, got {half_width}")));
        }
        if n < 4 || !n.is_power_of_two() {
            return Err(Error::InvalidArgument(format!("grid size must be a power of two ≥ 4, got {n}")));
        }
        Ok(Self { half_width, n })
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dx(&self) -> f64 {
        2.0 * self.half_width / self.n as f64
    }

    pub fn x(&self, j: usize) -> f64 {
        (j as f64 - (self.n / 2) as f64) * self.dx()
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.x(j)).collect()
    }

    /// The frequency grid: `ξ_k = (k - n/2)/(2L)`, itself a grid of half-width `n/(4L)`.
    pub fn dual(&self) -> Grid {
        Grid { half_width: self.n as f64 / (4.0 * self.half_width), n: self.n }
    }

    /// Node index of `x` when `x` lies on the grid (within 1e-9 cells).
    pub fn node_index(&self, x: f64) -> Option<usize> {
        let t = (x + self.half_width) / self.dx();
        let r = t.round();
        if (t - r).abs() <= 1e-9 && r >= 0.0 && r < self.n as f64 {
            Some(r as usize)
        } else {
            None
        }
    }

    /// First node index with `x_j >= x` (half-open sampling convention).
    fn ceil_index(&self, x: f64) -> isize {
        let t = (x + self.half_width) / self.dx();
        let r = t.round();
        if (t - r).abs() <= 1e-9 {
            r as isize
        } else {
            t.ceil() as isize
        }
    }

    pub fn same_as(&self, other: &Grid) -> bool {
        self.n == other.n && self.half_width == other.half_width
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, other: &Interval, slack: f64) -> bool {
        other.lo >= self.lo - slack && other.hi <= self.hi + slack
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        Interval { lo: self.lo.max(other.lo), hi: self.hi.min(other.hi) }
    }

    pub fn shift(&self, by: f64) -> Interval {
        Interval { lo: self.lo + by, hi: self.hi + by }
    }

    pub fn scale(&self, by: f64) -> Interval {
        let (a, b) = (self.lo * by, self.hi * by);
        Interval { lo: a.min(b), hi: a.max(b) }
    }
}

/// Complex samples on a grid with support and band-limit metadata.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledFunction {
    grid: Grid,
    values: Vec<Complex64>,
    support_hint: Interval,
    bandlimit_hint: Option<Interval>,
}

impl SampledFunction {
    pub fn new(
        grid: Grid,
        values: Vec<Complex64>,
        support_hint: Interval,
        bandlimit_hint: Option<Interval>,
    ) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch(format!("{} values for {} nodes", values.len(), grid.len())));
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::InvalidArgument("sample values must be finite".into()));
        }
        let full = Interval::new(-grid.half_width, grid.half_width);
        let support_hint = support_hint.intersect(&full);
        Ok(Self { grid, values, support_hint, bandlimit_hint })
    }

    pub fn zeros(grid: Grid) -> Self {
        let full = Interval::new(-grid.half_width, grid.half_width);
        Self { grid, values: vec![ZERO; grid.len()], support_hint: full, bandlimit_hint: None }
    }

    /// Samples `f(x_j)` on every node.
    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> Complex64) -> Self {
        let values = (0..grid.len()).map(|j| f(grid.x(j))).collect();
        let full = Interval::new(-grid.half_width, grid.half_width);
        Self { grid, values, support_hint: full, bandlimit_hint: None }
    }

    pub fn from_real_fn(grid: Grid, f: impl Fn(f64) -> f64) -> Self {
        Self::from_fn(grid, |x| Complex64::new(f(x), 0.0))
    }

    /// `χ_[a,b)` sampled half-open, so norms are exact when `a, b` are nodes.
    pub fn indicator(grid: Grid, a: f64, b: f64) -> Result<Self> {
        let l = grid.half_width;
        if !(a < b) || a < -l - 1e-12 || b > l + 1e-12 {
            return Err(Error::SupportOverflow { lo: a, hi: b, half_width: l });
        }
        let i0 = grid.ceil_index(a).max(0) as usize;
        let i1 = (grid.ceil_index(b).max(0) as usize).min(grid.len());
        let mut values = vec![ZERO; grid.len()];
        for v in &mut values[i0..i1] {
            *v = Complex64::new(1.0, 0.0);
        }
        Ok(Self { grid, values, support_hint: Interval::new(a, b), bandlimit_hint: None })
    }

    /// `e^{-π(x/s)²}`.
    pub fn gaussian(grid: Grid, s: f64) -> Self {
        Self::from_real_fn(grid, |x| (-std::f64::consts::PI * (x / s) * (x / s)).exp())
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn support_hint(&self) -> Interval {
        self.support_hint
    }

    pub fn bandlimit_hint(&self) -> Option<Interval> {
        self.bandlimit_hint
    }

    pub fn with_bandlimit(mut self, window: Option<Interval>) -> Self {
        self.bandlimit_hint = window;
        self
    }

    pub fn with_support(mut self, support: Interval) -> Self {
        let full = Interval::new(-self.grid.half_width, self.grid.half_width);
        self.support_hint = support.intersect(&full);
        self
    }

    /// Node-index hull of the samples above the support threshold, within the hint.
    pub fn support_indices(&self) -> Option<(usize, usize)> {
        let max = self.sup_norm();
        if max == 0.0 {
            return None;
        }
        let cut = SUPPORT_THRESHOLD * max;
        let (h0, h1) = (self.support_hint.lo - 1e-9 * self.grid.dx(), self.support_hint.hi + 1e-9 * self.grid.dx());
        let inside = |j: usize| {
            let x = self.grid.x(j);
            x >= h0 && x <= h1 && self.values[j].norm() > cut
        };
        let first = (0..self.grid.len()).find(|&j| inside(j))?;
        let last = (0..self.grid.len()).rev().find(|&j| inside(j))?;
        Some((first, last))
    }

    /// Closed node hull of the effective support.
    pub fn effective_support(&self) -> Option<Interval> {
        self.support_indices().map(|(a, b)| Interval::new(self.grid.x(a), self.grid.x(b)))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| *v == ZERO)
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `Δx Σ|f_j|`.
    pub fn l1_norm(&self) -> f64 {
        self.grid.dx() * self.values.iter().map(|v| v.norm()).sum::<f64>()
    }

    /// `Δx Σ f_j`.
    pub fn integral(&self) -> Complex64 {
        self.values.iter().sum::<Complex64>() * self.grid.dx()
    }

    /// Lebesgue measure of the nonzero set: `Δx · #{j : f_j ≠ 0}`.
    pub fn support_measure(&self) -> f64 {
        self.grid.dx() * self.values.iter().filter(|v| **v != ZERO).count() as f64
    }

    pub fn max_abs_diff(&self, other: &SampledFunction) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, c: Complex64) -> SampledFunction {
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v *= c);
        out
    }

    pub fn map(&self, f: impl Fn(f64, Complex64) -> Complex64) -> SampledFunction {
        let mut out = self.clone();
        for (j, v) in out.values.iter_mut().enumerate() {
            *v = f(self.grid.x(j), *v);
        }
        out
    }

    pub fn add(&self, other: &SampledFunction) -> Result<SampledFunction> {
        self.check_grid(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        let support = Interval::new(
            self.support_hint.lo.min(other.support_hint.lo),
            self.support_hint.hi.max(other.support_hint.hi),
        );
        let band = match (self.bandlimit_hint, other.bandlimit_hint) {
            (Some(a), Some(b)) => Some(Interval::new(a.lo.min(b.lo), a.hi.max(b.hi))),
            _ => None,
        };
        SampledFunction::new(self.grid, values, support, band)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &SampledFunction) -> Result<SampledFunction> {
        self.check_grid(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        let support = self.support_hint.intersect(&other.support_hint);
        let support = if support.lo <= support.hi { support } else { Interval::new(0.0, 0.0) };
        let band = match (self.bandlimit_hint, other.bandlimit_hint) {
            (Some(a), Some(b)) => Some(Interval::new(a.lo + b.lo, a.hi + b.hi)),
            _ => None,
        };
        SampledFunction::new(self.grid, values, support, band)
    }

    pub fn check_grid(&self, other: &SampledFunction) -> Result<()> {
        if self.grid.same_as(&other.grid) {
            Ok(())
        } else {
            Err(Error::GridMismatch(format!(
                "(L={}, n={}) vs (L={}, n={})",
                self.grid.half_width, self.grid.n, other.grid.half_width, other.grid.n
            )))
        }
    }

    /// Largest transform magnitude outside the band-limit hint, relative to the peak.
    pub fn bandlimit_defect(&self) -> f64 {
        let Some(band) = self.bandlimit_hint else { return 0.0 };
        let hat = fourier(self);
        let peak = hat.sup_norm();
        if peak == 0.0 {
            return 0.0;
        }
        let tol = 1e-9 * hat.grid.dx();
        (0..hat.grid.len())
            .filter(|&k| {
                let xi = hat.grid.x(k);
                xi < band.lo - tol || xi > band.hi + tol
            })
            .map(|k| hat.values[k].norm())
            .fold(0.0, f64::max)
            / peak
    }
}

/// `(-1)^j`.
fn alternate(j: usize) -> f64 {
    if j % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Phase-corrected DFT between a grid and its dual (`sign = -1` forward).
fn centered_transform(values: &[Complex64], step: f64, inverse: bool) -> Vec<Complex64> {
    let mut buf: Vec<Complex64> = values.iter().enumerate().map(|(j, v)| v * alternate(j)).collect();
    dft_in_place(&mut buf, inverse);
    buf.iter_mut().enumerate().for_each(|(k, v)| *v *= step * alternate(k));
    buf
}

/// Trapezoid approximation of `f̂(ξ) = ∫ f(x) e^{-2πixξ} dx` on the dual grid.
///
/// With `x_j = (j - n/2)Δx` and `ξ_k = (k - n/2)/(nΔx)` the kernel
/// `e^{-2πi x_j ξ_k}` factors as `(-1)^{j+k} e^{-2πijk/n}` (n divisible by 4),
/// so the transform is one FFT between two sign flips.
pub fn fourier(f: &SampledFunction) -> SampledFunction {
    let dual = f.grid.dual();
    let values = centered_transform(&f.values, f.grid.dx(), false);
    let full = Interval::new(-dual.half_width, dual.half_width);
    SampledFunction {
        grid: dual,
        values,
        support_hint: f.bandlimit_hint.map_or(full, |b| b.intersect(&full)),
        bandlimit_hint: Some(f.support_hint),
    }
}

/// Inverse of [`fourier`]: `f(x) = ∫ f̂(ξ) e^{2πixξ} dξ` on the primal grid.
pub fn inverse_fourier(hat: &SampledFunction) -> SampledFunction {
    let primal = hat.grid.dual();
    let values = centered_transform(&hat.values, hat.grid.dx(), true);
    let full = Interval::new(-primal.half_width, primal.half_width);
    SampledFunction {
        grid: primal,
        values,
        support_hint: hat.bandlimit_hint.map_or(full, |b| b.intersect(&full)),
        bandlimit_hint: Some(hat.support_hint),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupAction {
    /// `τ_y f(x) = f(x - y)`.
    Translate(f64),
    /// `M_{x₀} f(x) = e^{2πi x₀ x} f(x)`.
    Modulate(f64),
    /// `D_λ f(x) = f(λx)`.
    Dilate(f64),
}

pub fn group_action(f: &SampledFunction, action: GroupAction) -> Result<SampledFunction> {
    match action {
        GroupAction::Translate(y) => translate(f, y),
        GroupAction::Modulate(x0) => modulate(f, x0),
        GroupAction::Dilate(l) => dilate(f, l),
    }
}

/// Translation; integer-cell shifts are exact index moves, other shifts use a
/// frequency-side phase (exact for band-limited samples only).
pub fn translate(f: &SampledFunction, y: f64) -> Result<SampledFunction> {
    let g = f.grid;
    let l = g.half_width;
    let support = f.effective_support();
    if let Some(s) = support {
        let moved = s.shift(y);
        if moved.lo < -l - 1e-9 * g.dx() || moved.hi > l - g.dx() + 1e-9 * g.dx() {
            return Err(Error::SupportOverflow { lo: moved.lo, hi: moved.hi, half_width: l });
        }
    }
    let cells = y / g.dx();
    let m = cells.round();
    let values = if (cells - m).abs() <= 1e-9 {
        let m = m as isize;
        let n = g.len() as isize;
        (0..n)
            .map(|j| {
                let src = j - m;
                if (0..n).contains(&src) {
                    f.values[src as usize]
                } else {
                    ZERO
                }
            })
            .collect()
    } else {
        let mut hat = fourier(f);
        for k in 0..hat.grid.len() {
            let xi = hat.grid.x(k);
            hat.values[k] *= cis_pi(-2.0 * y, xi);
        }
        inverse_fourier(&hat).values
    };
    Ok(SampledFunction {
        grid: g,
        values,
        support_hint: f.support_hint.shift(y),
        bandlimit_hint: f.bandlimit_hint,
    })
}

pub fn modulate(f: &SampledFunction, x0: f64) -> Result<SampledFunction> {
    let g = f.grid;
    let nyq = g.dual().half_width;
    let band = f.bandlimit_hint.map(|b| b.shift(x0));
    if let Some(b) = band {
        if b.lo < -nyq || b.hi > nyq {
            return Err(Error::NyquistOverflow { lo: b.lo, hi: b.hi, nyquist: nyq });
        }
    }
    if x0 == 0.0 {
        return Ok(f.clone());
    }
    let values = (0..g.len()).map(|j| f.values[j] * cis_pi(2.0 * x0, g.x(j))).collect();
    Ok(SampledFunction { grid: g, values, support_hint: f.support_hint, bandlimit_hint: band })
}

/// `D_λ f = f(λ·)` resampled on the same grid.
///
/// Without a band-limit the samples are moved by index mapping (exact for
/// indicators with node-aligned endpoints); with one, the trigonometric
/// interpolant is evaluated at `λx_j` by a fractional DFT.
pub fn dilate(f: &SampledFunction, lambda: f64) -> Result<SampledFunction> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidArgument(format!("dilation needs λ > 0, got {lambda}")));
    }
    let g = f.grid;
    let l = g.half_width;
    let n = g.len();
    if let Some(s) = f.effective_support() {
        let moved = s.scale(1.0 / lambda);
        if moved.lo < -l - 1e-9 * g.dx() || moved.hi > l + 1e-9 * g.dx() {
            return Err(Error::SupportOverflow { lo: moved.lo, hi: moved.hi, half_width: l });
        }
    }
    let support_hint = f.support_hint.scale(1.0 / lambda);
    let Some(band) = f.bandlimit_hint else {
        let values = (0..n)
            .map(|j| {
                let t = (lambda * g.x(j) + l) / g.dx();
                let r = t.round();
                let idx = if (t - r).abs() <= 1e-9 { r } else { t.floor() };
                if idx >= 0.0 && idx < n as f64 {
                    f.values[idx as usize]
                } else {
                    ZERO
                }
            })
            .collect();
        return Ok(SampledFunction { grid: g, values, support_hint, bandlimit_hint: None });
    };
    let nyq = g.dual().half_width;
    let new_band = band.scale(lambda);
    if new_band.lo < -nyq || new_band.hi > nyq {
        return Err(Error::NyquistOverflow { lo: new_band.lo, hi: new_band.hi, nyquist: nyq });
    }
    // f(λx_j) = Δξ Σ_k f̂_k e^{2πi λ (j-n/2)(k-n/2)/n}
    let hat = fourier(f);
    let half = (n / 2) as f64;
    let c: Vec<Complex64> = (0..n)
        .map(|k| hat.values[k] * cis_pi(-lambda, k as f64 - half))
        .collect();
    let s = fractional_dft(&c, lambda);
    let dxi = hat.grid.dx();
    let values = (0..n)
        .map(|j| {
            if (lambda * g.x(j)).abs() > l {
                ZERO
            } else {
                s[j] * cis_pi(-lambda, j as f64) * dxi
            }
        })
        .collect();
    Ok(SampledFunction { grid: g, values, support_hint, bandlimit_hint: Some(new_band) })
}

/// `Δx Σ Φ(|f_j|/k)`, `∞` as soon as one term is.
pub fn modular(abs: &[f64], dx: f64, phi: &YoungFunction, k: f64) -> f64 {
    let mut sum = 0.0;
    for &a in abs {
        let v = phi.eval(a / k);
        if v.is_infinite() {
            return f64::INFINITY;
        }
        sum += v;
    }
    dx * sum
}

/// `N_{Φ,γ}(f) = inf{k > 0 : Δx Σ Φ(|f_j|/k) ≤ γ}`.
pub fn luxemburg_norm(f: &SampledFunction, phi: &YoungFunction, gamma: f64) -> Result<f64> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::InvalidArgument(format!("γ must be > 0, got {gamma}")));
    }
    let abs: Vec<f64> = f.values.iter().map(|v| v.norm()).filter(|a| *a > 0.0).collect();
    if abs.is_empty() {
        return Ok(0.0);
    }
    let dx = f.grid.dx();
    let measure = dx * abs.len() as f64;
    let sup = abs.iter().cloned().fold(0.0, f64::max);
    let l1 = dx * abs.iter().sum::<f64>();
    let feasible = |k: f64| modular(&abs, dx, phi, k) <= gamma;

    let inv = phi.inverse(gamma / measure);
    let (mut lo, mut hi) = if inv > 0.0 && inv.is_finite() {
        (0.5 * l1 / (measure * inv), 2.0 * sup / inv)
    } else {
        (sup, sup)
    };
    let mut doublings = 0;
    while !feasible(hi) {
        hi *= 2.0;
        doublings += 1;
        if doublings > MAX_DOUBLINGS || !hi.is_finite() {
            return Err(Error::NoBracket { doublings });
        }
    }
    while feasible(lo) {
        lo *= 0.5;
        doublings += 1;
        if doublings > MAX_DOUBLINGS || lo == 0.0 {
            return Err(Error::NoBracket { doublings });
        }
    }
    Ok(bisect_boundary(lo, hi, LUXEMBURG_REL_TOL, feasible).1)
}

/// `N_Φ = N_{Φ,1}`.
pub fn luxemburg(f: &SampledFunction, phi: &YoungFunction) -> Result<f64> {
    luxemburg_norm(f, phi, 1.0)
}

/// Inverse transform of `hat` restricted to `window`.
///
/// Frequency nodes on the window boundary carry half weight (trapezoid), so
/// a window indicator integrates to its length exactly.
pub fn make_bandlimited(
    grid: Grid,
    window: Interval,
    hat: impl Fn(f64) -> Complex64,
) -> Result<SampledFunction> {
    let dual = grid.dual();
    let nyq = dual.half_width;
    if !(window.lo <= window.hi) || window.lo < -nyq || window.hi > nyq - dual.dx() + 1e-12 * dual.dx() {
        return Err(Error::NyquistOverflow { lo: window.lo, hi: window.hi, nyquist: nyq });
    }
    let tol = 1e-9 * dual.dx();
    let values = (0..dual.len())
        .map(|k| {
            let xi = dual.x(k);
            if xi < window.lo - tol || xi > window.hi + tol {
                ZERO
            } else if (xi - window.lo).abs() <= tol || (xi - window.hi).abs() <= tol {
                hat(xi) * 0.5
            } else {
                hat(xi)
            }
        })
        .collect();
    let spectrum = SampledFunction {
        grid: dual,
        values,
        support_hint: window,
        bandlimit_hint: None,
    };
    let f = inverse_fourier(&spectrum);
    Ok(SampledFunction {
        grid,
        values: f.values,
        support_hint: Interval::new(-grid.half_width, grid.half_width),
        bandlimit_hint: Some(window),
    })
}

/// `(f⋆g)(x_j) = Δx Σ_m f(x_m) g(x_j - x_m)` via FFT.
pub fn convolve(f: &SampledFunction, g: &SampledFunction) -> Result<SampledFunction> {
    f.check_grid(g)?;
    let grid = f.grid;
    let n = grid.len();
    let (Some((a0, a1)), Some((b0, b1))) = (f.support_indices(), g.support_indices()) else {
        return Ok(SampledFunction::zeros(grid));
    };
    // Output index j = m + i - n/2 must stay inside 0..n for no wrap-around.
    let half = n / 2;
    if a0 + b0 < half || a1 + b1 >= n + half {
        let lo = grid.x(a0) + grid.x(b0);
        let hi = grid.x(a1) + grid.x(b1);
        return Err(Error::SupportOverflow { lo, hi, half_width: grid.half_width });
    }
    let mut fa = f.values.clone();
    let mut ga = g.values.clone();
    dft_in_place(&mut fa, false);
    dft_in_place(&mut ga, false);
    for (x, y) in fa.iter_mut().zip(&ga) {
        *x *= y;
    }
    dft_in_place(&mut fa, true);
    let scale = grid.dx() / n as f64;
    let values = (0..n).map(|j| fa[(j + half) % n] * scale).collect();
    let support = Interval::new(
        f.support_hint.lo + g.support_hint.lo,
        f.support_hint.hi + g.support_hint.hi,
    );
    let band = match (f.bandlimit_hint, g.bandlimit_hint) {
        (Some(a), Some(b)) => Some(a.intersect(&b)),
        (Some(a), None) | (None, Some(a)) => Some(a),
        _ => None,
    };
    SampledFunction::new(grid, values, support, band)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(l: f64, n: usize) -> Grid {
        Grid::new(l, n).unwrap()
    }

    #[test]
    fn grid_layout() {
        let g = grid(16.0, 1024);
        assert_eq!(g.dx(), 1.0 / 32.0);
        assert_eq!(g.x(0), -16.0);
        assert_eq!(g.x(512), 0.0);
        let d = g.dual();
        assert_eq!(d.dx(), 1.0 / 32.0);
        assert_eq!(d.half_width(), 16.0);
        assert!(Grid::new(1.0, 100).is_err());
    }

    #[test]
    fn gaussian_is_self_dual() {
        let g = grid(16.0, 1024);
        let f = SampledFunction::gaussian(g, 1.0);
        let hat = fourier(&f);
        let expect = SampledFunction::gaussian(hat.grid(), 1.0);
        assert!(hat.max_abs_diff(&expect) < 1e-8);
        let back = inverse_fourier(&hat);
        assert!(back.max_abs_diff(&f) < 1e-10);
    }

    #[test]
    fn centered_window_has_unit_mass() {
        let g = grid(16.0, 1024);
        let f = SampledFunction::indicator(g, -0.5, 0.5).unwrap();
        let hat = fourier(&f);
        let k0 = hat.grid().node_index(0.0).unwrap();
        assert!((hat.values()[k0].re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn translation_is_modulation_of_transform() {
        let g = grid(16.0, 1024);
        let f = SampledFunction::gaussian(g, 1.0);
        let y = 1.25;
        let hat_t = fourier(&translate(&f, y).unwrap());
        let hat = fourier(&f);
        let dev = (0..g.len())
            .map(|k| (hat_t.values()[k] - hat.values()[k] * cis_pi(-2.0 * y, hat.grid().x(k))).norm())
            .fold(0.0, f64::max);
        assert!(dev <= 1e-10, "{dev}");
    }

    #[test]
    fn translate_indicator() {
        let g = grid(8.0, 256);
        let f = SampledFunction::indicator(g, 0.0, 1.0).unwrap();
        let t = translate(&f, 2.0).unwrap();
        let expect = SampledFunction::indicator(g, 2.0, 3.0).unwrap();
        assert_eq!(t.values(), expect.values());
        assert!(matches!(translate(&f, 7.5), Err(Error::SupportOverflow { .. })));
    }

    #[test]
    fn dilate_indicator() {
        let g = grid(8.0, 256);
        let f = SampledFunction::indicator(g, 0.0, 4.0).unwrap();
        let d = dilate(&f, 2.0).unwrap();
        let expect = SampledFunction::indicator(g, 0.0, 2.0).unwrap();
        assert_eq!(d.values(), expect.values());
        assert!(matches!(dilate(&f, 0.25), Err(Error::SupportOverflow { .. })));
    }

    #[test]
    fn dilate_bandlimited_gaussian() {
        let g = grid(16.0, 1024);
        let f = make_bandlimited(g, Interval::new(-6.0, 6.0), |xi| {
            Complex64::new((-2.0 * xi * xi).exp(), 0.0)
        })
        .unwrap();
        let d = dilate(&f, 2.0).unwrap();
        let c = (std::f64::consts::PI / 2.0).sqrt();
        let pi2 = std::f64::consts::PI.powi(2);
        let dev = (0..g.len())
            .map(|j| {
                let x = 2.0 * g.x(j);
                let want = if x.abs() > 16.0 { 0.0 } else { c * (-pi2 * x * x / 2.0).exp() };
                (d.values()[j].re - want).abs() + d.values()[j].im.abs()
            })
            .fold(0.0, f64::max);
        assert!(dev < 1e-7, "{dev}");
    }

    #[test]
    fn modulate_zero_is_identity() {
        let g = grid(8.0, 256);
        let f = SampledFunction::gaussian(g, 1.0);
        assert_eq!(modulate(&f, 0.0).unwrap(), f);
    }

    #[test]
    fn modulate_checks_nyquist() {
        let g = grid(8.0, 256);
        let f = make_bandlimited(g, Interval::new(-1.0, 1.0), |_| Complex64::new(1.0, 0.0)).unwrap();
        assert!(modulate(&f, 5.0).is_ok());
        assert!(matches!(modulate(&f, 7.5), Err(Error::NyquistOverflow { .. })));
    }

    #[test]
    fn indicator_norms() {
        let g = grid(32.0, 4096);
        let f = SampledFunction::indicator(g, 0.0, 4.0).unwrap();
        let n = luxemburg(&f, &YoungFunction::power(2.0).unwrap()).unwrap();
        assert!((n - 2.0).abs() < 1e-8 * 2.0, "{n}");
        let f = SampledFunction::indicator(g, 0.0, 1.0).unwrap();
        let n = luxemburg(&f, &YoungFunction::exp_minus_one()).unwrap();
        assert!((n - 1.0 / 2f64.ln()).abs() < 1e-8, "{n}");
    }

    #[test]
    fn gamma_scaling_bounds() {
        let g = grid(8.0, 512);
        let f = SampledFunction::from_real_fn(g, |x| (-x * x).exp() * (1.0 + x.sin()));
        let phi = YoungFunction::power(3.0).unwrap();
        let n1 = luxemburg_norm(&f, &phi, 1.0).unwrap();
        let n3 = luxemburg_norm(&f, &phi, 3.0).unwrap();
        assert!(n1 / 3.0 <= n3 && n3 <= n1);
    }

    #[test]
    fn zero_function_has_zero_norm() {
        let g = grid(8.0, 64);
        let f = SampledFunction::zeros(g);
        assert_eq!(luxemburg(&f, &YoungFunction::power(2.0).unwrap()).unwrap(), 0.0);
    }

    #[test]
    fn window_norm_is_sup_over_c() {
        let g = grid(8.0, 256);
        let f = SampledFunction::from_real_fn(g, |x| if x.abs() < 1.0 { 3.0 } else { 0.0 });
        let n = luxemburg(&f, &YoungFunction::indicator_window(2.0).unwrap()).unwrap();
        assert!((n - 1.5).abs() < 1e-9, "{n}");
    }

    #[test]
    fn bandlimited_window_value_at_zero() {
        let g = grid(16.0, 1024);
        let f = make_bandlimited(g, Interval::new(-1.0, 1.0), |_| Complex64::new(1.0, 0.0)).unwrap();
        let j0 = g.node_index(0.0).unwrap();
        assert!((f.values()[j0].re - 2.0).abs() < 1e-12);
        assert!(f.bandlimit_defect() < 1e-10);
        let z = make_bandlimited(g, Interval::new(-1.0, 1.0), |_| ZERO).unwrap();
        assert!(z.is_zero());
        assert!(make_bandlimited(g, Interval::new(-20.0, 1.0), |_| ZERO).is_err());
    }

    #[test]
    fn bandlimited_gaussian_pair() {
        let g = grid(16.0, 1024);
        let f = make_bandlimited(g, Interval::new(-6.0, 6.0), |xi| {
            Complex64::new((-2.0 * xi * xi).exp(), 0.0)
        })
        .unwrap();
        let c = (std::f64::consts::PI / 2.0).sqrt();
        let pi2 = std::f64::consts::PI.powi(2);
        let dev = (0..g.len())
            .map(|j| (f.values()[j].re - c * (-pi2 * g.x(j).powi(2) / 2.0).exp()).abs())
            .fold(0.0, f64::max);
        assert!(dev <= 1e-7, "{dev}");
    }

    #[test]
    fn tent_from_two_windows() {
        let g = grid(8.0, 256);
        let f = SampledFunction::indicator(g, 0.0, 1.0).unwrap();
        let t = convolve(&f, &f).unwrap();
        let peak = t.values().iter().map(|v| v.re).fold(0.0, f64::max);
        assert!((peak - 1.0).abs() < 1e-12);
        let j = g.node_index(1.0 - g.dx()).unwrap();
        assert!((t.values()[j].re - 1.0).abs() < 1e-12);
        let j = g.node_index(0.5).unwrap();
        assert!((t.values()[j].re - (0.5 + g.dx())).abs() < 1e-12);
    }

    #[test]
    fn convolution_overflow() {
        let g = grid(8.0, 256);
        let f = SampledFunction::indicator(g, 0.0, 5.0).unwrap();
        assert!(matches!(convolve(&f, &f), Err(Error::SupportOverflow { .. })));
    }
}
