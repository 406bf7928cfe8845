//! Young functions on the extended half-line.
//!
//! A Young function is stored on `x >= 0` only and folded by evenness.
//! The value `f64::INFINITY` is a first-class result: `∞ + a = ∞`, and the
//! `0·∞` that appears inside a Legendre sup is only ever formed at `x = 0`,
//! where it is taken as `0`.

use crate::error::{Error, Result};
use crate::roots::{bisect_boundary, golden_max, log_space};
use serde::{Deserialize, Serialize};
use std::fmt;

pub const INF: f64 = f64::INFINITY;

/// Relative tolerance of the scalar bisection used by grid-kind inverses.
pub const INVERSE_REL_TOL: f64 = 1e-12;

/// Default number of scan points of [`YoungFunction::complement`].
pub const DEFAULT_CONJUGATE_POINTS: usize = 4096;

/// Lower end of the conjugation scan, relative to its top.
const SCAN_DECADES: f64 = 1e-12;

/// Tolerance of the structural convexity check on sampled kinds.
const CONVEXITY_TOL: f64 = 1e-9;

/// Behaviour past the last sample of a grid-kind function.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Tail {
    /// Continue linearly with this slope.
    Linear(f64),
    /// `Φ = ∞` strictly beyond the last sample.
    Infinite,
}

/// Samples `(x_i, Φ(x_i))` with `x_0 = 0`, optionally with one-sided
/// derivatives for Hermite evaluation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSamples {
    pub x: Vec<f64>,
    pub value: Vec<f64>,
    pub slope: Option<Vec<f64>>,
    pub tail: Tail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum YoungKind {
    /// `|x|^p`, `p >= 1`.
    Power { p: f64 },
    /// `|x|^p / p`, `p >= 1`.
    PowerOverP { p: f64 },
    /// `e^{|x|} - 1`.
    ExpMinusOne,
    /// `0` on `[0, c]`, `∞` beyond.
    IndicatorWindow { c: f64 },
    /// Linear interpolation of knots, extended with the last slope.
    PiecewiseLinear { knots: Vec<(f64, f64)> },
    /// Sampled function (e.g. a numerical conjugate).
    Grid(GridSamples),
}

#[derive(Clone, Debug, PartialEq)]
pub struct YoungFunction {
    kind: YoungKind,
    finite_domain_bound: f64,
    zero_plateau_edge: f64,
}

impl YoungFunction {
    pub fn power(p: f64) -> Result<Self> {
        if !(p >= 1.0 && p.is_finite()) {
            return Err(Error::NotYoung(format!("power needs 1 <= p < ∞, got {p}")));
        }
        Ok(Self::raw(YoungKind::Power { p }, INF, 0.0))
    }

    pub fn power_over_p(p: f64) -> Result<Self> {
        if !(p >= 1.0 && p.is_finite()) {
            return Err(Error::NotYoung(format!("powerp needs 1 <= p < ∞, got {p}")));
        }
        Ok(Self::raw(YoungKind::PowerOverP { p }, INF, 0.0))
    }

    pub fn exp_minus_one() -> Self {
        Self::raw(YoungKind::ExpMinusOne, INF, 0.0)
    }

    /// The `L^∞`-type function `0` on `[0, c]` and `∞` beyond.
    pub fn indicator_window(c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::NotYoung(format!("window needs 0 < c < ∞, got {c}")));
        }
        Ok(Self::raw(YoungKind::IndicatorWindow { c }, c, c))
    }

    /// `Φ(x) = slope·|x|`.
    pub fn linear(slope: f64) -> Result<Self> {
        Self::piecewise_linear(vec![(0.0, 0.0), (1.0, slope)])
    }

    pub fn piecewise_linear(mut knots: Vec<(f64, f64)>) -> Result<Self> {
        if knots.first().map(|k| k.0) != Some(0.0) {
            knots.insert(0, (0.0, 0.0));
        }
        if knots.len() < 2 {
            return Err(Error::NotYoung("need at least one knot past 0".into()));
        }
        let xs: Vec<f64> = knots.iter().map(|k| k.0).collect();
        let vs: Vec<f64> = knots.iter().map(|k| k.1).collect();
        validate_samples(&xs, &vs)?;
        let plateau = plateau_of(&xs, &vs);
        if plateau.is_infinite() {
            return Err(Error::NotYoung("function is identically 0".into()));
        }
        Ok(Self::raw(YoungKind::PiecewiseLinear { knots }, INF, plateau))
    }

    /// Sampled function; node 0 must be `x = 0`.
    pub fn grid(samples: GridSamples) -> Result<Self> {
        let GridSamples { x, value, slope, tail } = &samples;
        if x.len() != value.len() || slope.as_ref().is_some_and(|s| s.len() != x.len()) {
            return Err(Error::NotYoung("grid column lengths differ".into()));
        }
        if x.len() < 2 || x[0] != 0.0 {
            return Err(Error::NotYoung("grid must start at x = 0 with ≥ 2 nodes".into()));
        }
        validate_samples(x, value)?;
        if let Tail::Linear(s) = tail {
            let n = x.len();
            let last = (value[n - 1] - value[n - 2]) / (x[n - 1] - x[n - 2]);
            if !(s.is_finite() && *s >= last * (1.0 - 1e-9) - CONVEXITY_TOL) {
                return Err(Error::NotYoung(format!(
                    "tail slope {s} is below the last segment slope {last}"
                )));
            }
        }
        let fdb = match tail {
            Tail::Infinite => *x.last().unwrap(),
            Tail::Linear(_) => INF,
        };
        let mut plateau = plateau_of(x, value);
        if plateau.is_infinite() {
            match tail {
                Tail::Linear(s) if *s > 0.0 => plateau = *x.last().unwrap(),
                Tail::Infinite => plateau = *x.last().unwrap(),
                _ => return Err(Error::NotYoung("function is identically 0".into())),
            }
        }
        Ok(Self::raw(YoungKind::Grid(samples), fdb, plateau))
    }

    fn raw(kind: YoungKind, finite_domain_bound: f64, zero_plateau_edge: f64) -> Self {
        Self { kind, finite_domain_bound, zero_plateau_edge }
    }

    pub fn kind(&self) -> &YoungKind {
        &self.kind
    }

    /// Smallest `x` past which `Φ = ∞` (`∞` if none).
    pub fn finite_domain_bound(&self) -> f64 {
        self.finite_domain_bound
    }

    /// Largest `x` with `Φ(x) = 0`.
    pub fn zero_plateau_edge(&self) -> f64 {
        self.zero_plateau_edge
    }

    pub fn is_closed_form(&self) -> bool {
        !matches!(self.kind, YoungKind::PiecewiseLinear { .. } | YoungKind::Grid(_))
    }

    /// `lim Φ(x)/x` as `x → ∞` (`∞` for superlinear or finite-domain functions).
    pub fn asymptotic_slope(&self) -> f64 {
        match &self.kind {
            YoungKind::Power { p } | YoungKind::PowerOverP { p } => {
                if *p == 1.0 {
                    1.0
                } else {
                    INF
                }
            }
            YoungKind::ExpMinusOne | YoungKind::IndicatorWindow { .. } => INF,
            YoungKind::PiecewiseLinear { knots } => {
                let n = knots.len();
                (knots[n - 1].1 - knots[n - 2].1) / (knots[n - 1].0 - knots[n - 2].0)
            }
            YoungKind::Grid(g) => match g.tail {
                Tail::Linear(s) => s,
                Tail::Infinite => INF,
            },
        }
    }

    /// `Φ(|x|)`.
    pub fn eval(&self, x: f64) -> f64 {
        let x = x.abs();
        match &self.kind {
            YoungKind::Power { p } => pow(x, *p),
            YoungKind::PowerOverP { p } => pow(x, *p) / p,
            YoungKind::ExpMinusOne => x.exp_m1(),
            YoungKind::IndicatorWindow { c } => {
                if x <= *c {
                    0.0
                } else {
                    INF
                }
            }
            YoungKind::PiecewiseLinear { knots } => eval_piecewise(knots, x),
            YoungKind::Grid(g) => eval_grid(g, x),
        }
    }

    /// Generalized inverse `inf{x > 0 : Φ(x) > y}` with `inf ∅ = ∞`.
    pub fn inverse(&self, y: f64) -> f64 {
        assert!(y >= 0.0, "inverse needs y >= 0, got {y}");
        if y == INF {
            return INF;
        }
        match &self.kind {
            YoungKind::Power { p } => pow(y, 1.0 / p),
            YoungKind::PowerOverP { p } => pow(p * y, 1.0 / p),
            YoungKind::ExpMinusOne => y.ln_1p(),
            YoungKind::IndicatorWindow { c } => *c,
            _ => self.inverse_by_bisection(y),
        }
    }

    fn inverse_by_bisection(&self, y: f64) -> f64 {
        let plateau = self.zero_plateau_edge;
        if y == 0.0 {
            return plateau;
        }
        let fdb = self.finite_domain_bound;
        if fdb.is_finite() && self.eval(fdb) <= y {
            return fdb;
        }
        let above = |x: f64| self.eval(x) > y;
        let (mut lo, mut hi);
        if fdb.is_finite() {
            hi = fdb;
        } else {
            hi = (2.0 * plateau).max(1.0);
            while !above(hi) {
                hi *= 2.0;
            }
        }
        if plateau > 0.0 {
            lo = plateau;
        } else {
            lo = 0.5 * hi;
            while above(lo) {
                hi = lo;
                lo *= 0.5;
                if lo == 0.0 {
                    return 0.0;
                }
            }
        }
        if lo > hi {
            lo = hi;
        }
        bisect_boundary(lo, hi, INVERSE_REL_TOL, above).0
    }

    /// Complementary function `Ψ(y) = sup{x|y| − Φ(x) : x ≥ 0}` as a grid kind.
    ///
    /// The scan runs over `{0} ∪` a log grid of `n_points` on
    /// `(0, min(x_max, finite_domain_bound)]`; the discrete maximizer is then
    /// refined by golden-section search on its two neighbouring cells, and the
    /// maximizer is kept as the node derivative. If `Φ` has finite asymptotic
    /// slope `s`, `Ψ = ∞` beyond `s`; otherwise `Ψ` continues linearly with
    /// slope equal to the top of the scan, which is exact for the conjugate
    /// of `Φ` restricted to the scanned interval.
    pub fn complement(&self, x_max: f64, n_points: usize) -> Result<YoungFunction> {
        if !(x_max > 0.0 && x_max.is_finite()) {
            return Err(Error::InvalidArgument(format!("x_max must be > 0, got {x_max}")));
        }
        if n_points < 64 {
            return Err(Error::InvalidArgument(format!("n_points must be ≥ 64, got {n_points}")));
        }
        let x_top = x_max.min(self.finite_domain_bound);
        if self.finite_domain_bound > x_top && self.zero_plateau_edge >= x_top {
            return Err(Error::DegenerateConjugate(format!(
                "Φ vanishes on the whole scan range [0, {x_top}]"
            )));
        }
        let mut xs = vec![0.0];
        xs.extend(log_space(x_top * SCAN_DECADES, x_top, n_points));
        let phis: Vec<f64> = xs.iter().map(|&x| self.eval(x)).collect();
        if phis.iter().any(|v| !v.is_finite()) {
            return Err(Error::DegenerateConjugate("Φ is infinite inside the scan range".into()));
        }

        let s = self.asymptotic_slope();
        let (y_top, tail) = if s.is_finite() {
            (s, Tail::Infinite)
        } else {
            let h = x_top * 1e-7;
            let d = (phis[phis.len() - 1] - self.eval(x_top - h)) / h;
            (if d.is_finite() && d > 0.0 { d } else { 1.0 }, Tail::Linear(x_top))
        };
        let mut ys = vec![0.0];
        ys.extend(log_space(y_top * SCAN_DECADES, y_top, n_points));

        let mut values = Vec::with_capacity(ys.len());
        let mut slopes = Vec::with_capacity(ys.len());
        let mut idx = 0usize;
        for &y in &ys {
            let obj = |i: usize| if i == 0 { 0.0 } else { xs[i] * y - phis[i] };
            while idx + 1 < xs.len() && obj(idx + 1) > obj(idx) {
                idx += 1;
            }
            let (mut best_x, mut best_v) = (xs[idx], obj(idx));
            if y > 0.0 {
                let a = xs[idx.saturating_sub(1)];
                let b = xs[(idx + 1).min(xs.len() - 1)];
                if b > a {
                    let (gx, gv) = golden_max(a, b, 200, |x| x * y - self.eval(x));
                    if gv > best_v {
                        best_x = gx;
                        best_v = gv;
                    }
                }
            }
            values.push(best_v.max(0.0));
            slopes.push(best_x);
        }
        // The maximizer is monotone in y; enforce it against refinement jitter.
        for i in 1..slopes.len() {
            if slopes[i] < slopes[i - 1] {
                slopes[i] = slopes[i - 1];
            }
        }
        for i in 1..values.len() {
            if values[i] < values[i - 1] {
                values[i] = values[i - 1];
            }
        }
        YoungFunction::grid(GridSamples { x: ys, value: values, slope: Some(slopes), tail })
    }

    /// Short human-readable description (the DSL form for closed kinds).
    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for YoungFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            YoungKind::Power { p } => write!(f, "power:p={p}"),
            YoungKind::PowerOverP { p } => write!(f, "powerp:p={p}"),
            YoungKind::ExpMinusOne => write!(f, "exp"),
            YoungKind::IndicatorWindow { c } => write!(f, "window:c={c}"),
            YoungKind::PiecewiseLinear { knots } => {
                if knots.len() == 2 && knots[1].0 == 1.0 {
                    write!(f, "linear:s={}", knots[1].1)
                } else {
                    write!(f, "piecewise({} knots)", knots.len())
                }
            }
            YoungKind::Grid(g) => write!(f, "grid({} nodes)", g.x.len()),
        }
    }
}

fn pow(x: f64, p: f64) -> f64 {
    if p == 1.0 {
        x
    } else if p == 2.0 {
        x * x
    } else if p.fract() == 0.0 && p.abs() < 64.0 {
        x.powi(p as i32)
    } else {
        x.powf(p)
    }
}

fn validate_samples(xs: &[f64], vs: &[f64]) -> Result<()> {
    if vs[0] != 0.0 {
        return Err(Error::NotYoung("Φ(0) must be 0".into()));
    }
    for w in xs.windows(2) {
        if !(w[1] > w[0]) {
            return Err(Error::NotYoung("sample abscissae must be strictly increasing".into()));
        }
    }
    if vs.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(Error::NotYoung("sample values must be finite and ≥ 0".into()));
    }
    for i in 1..vs.len() {
        if vs[i] < vs[i - 1] {
            return Err(Error::NotYoung(format!("Φ decreases at x = {}", xs[i])));
        }
    }
    for i in 1..vs.len().saturating_sub(1) {
        let l = (vs[i] - vs[i - 1]) / (xs[i] - xs[i - 1]);
        let r = (vs[i + 1] - vs[i]) / (xs[i + 1] - xs[i]);
        if r < l - CONVEXITY_TOL * (1.0 + l.abs()) {
            return Err(Error::NotYoung(format!("Φ is not convex at x = {}", xs[i])));
        }
    }
    Ok(())
}

/// Largest sample abscissa with value 0 followed by positive growth; `∞` if all zero.
fn plateau_of(xs: &[f64], vs: &[f64]) -> f64 {
    match vs.iter().position(|&v| v > 0.0) {
        Some(0) => 0.0,
        Some(i) => xs[i - 1],
        None => INF,
    }
}

fn eval_piecewise(knots: &[(f64, f64)], x: f64) -> f64 {
    let i = knots.partition_point(|k| k.0 <= x);
    let (a, b) = if i >= knots.len() {
        (knots[knots.len() - 2], knots[knots.len() - 1])
    } else {
        (knots[i - 1], knots[i])
    };
    let s = (b.1 - a.1) / (b.0 - a.0);
    a.1 + s * (x - a.0)
}

fn eval_grid(g: &GridSamples, x: f64) -> f64 {
    let n = g.x.len();
    let last = g.x[n - 1];
    if x >= last {
        if x == last {
            return g.value[n - 1];
        }
        return match g.tail {
            Tail::Infinite => INF,
            Tail::Linear(s) => g.value[n - 1] + s * (x - last),
        };
    }
    let i = g.x.partition_point(|&v| v <= x).max(1);
    let (x0, x1) = (g.x[i - 1], g.x[i]);
    let (v0, v1) = (g.value[i - 1], g.value[i]);
    let h = x1 - x0;
    let t = (x - x0) / h;
    let secant = (v1 - v0) / h;
    if let Some(d) = &g.slope {
        let (d0, d1) = (d[i - 1], d[i]);
        // Cubic Hermite is convex iff its second derivative is ≥ 0 at both ends.
        let lo = (2.0 * d0 + d1) / 3.0;
        let hi = (d0 + 2.0 * d1) / 3.0;
        let slack = 1e-12 * (d0.abs() + d1.abs());
        if secant >= lo - slack && secant <= hi + slack {
            let t2 = t * t;
            let t3 = t2 * t;
            let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
            let h10 = t3 - 2.0 * t2 + t;
            let h01 = -2.0 * t3 + 3.0 * t2;
            let h11 = t3 - t2;
            let v = h00 * v0 + h10 * h * d0 + h01 * v1 + h11 * h * d1;
            return v.max(0.0);
        }
    }
    v0 + secant * (x - x0)
}

/// A triple `(Φ₁, Φ₂, Φ₃)` of Young functions.
#[derive(Clone, Debug, PartialEq)]
pub struct YoungTriple {
    pub phi1: YoungFunction,
    pub phi2: YoungFunction,
    pub phi3: YoungFunction,
}

impl YoungTriple {
    pub fn new(phi1: YoungFunction, phi2: YoungFunction, phi3: YoungFunction) -> Self {
        Self { phi1, phi2, phi3 }
    }

    /// Powers `(|x|^{p₁}, |x|^{p₂}, |x|^{p₃})`.
    pub fn powers(p1: f64, p2: f64, p3: f64) -> Result<Self> {
        Ok(Self::new(
            YoungFunction::power(p1)?,
            YoungFunction::power(p2)?,
            YoungFunction::power(p3)?,
        ))
    }

    pub fn labels(&self) -> [String; 3] {
        [self.phi1.label(), self.phi2.label(), self.phi3.label()]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TripleKind {
    /// `Φ₁⁻¹(x)Φ₂⁻¹(x) ≤ Φ₃⁻¹(x)` (product estimate).
    Hoelder,
    /// `Φ₁⁻¹(x)Φ₂⁻¹(x) ≤ xΦ₃⁻¹(x)` (convolution estimate).
    YoungConv,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TripleCondition {
    pub kind: TripleKind,
    pub triple: [String; 3],
    pub check_grid: Vec<f64>,
    /// Supremum of the defect over the grid; `≤ 0` means the condition holds there.
    pub max_violation: f64,
    pub worst_x: f64,
}

impl TripleCondition {
    pub fn holds(&self, tol: f64) -> bool {
        self.max_violation <= tol
    }
}

/// `a·b` with `0·∞ = 0`.
pub fn ext_mul(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        0.0
    } else {
        a * b
    }
}

/// `lhs − rhs` with `∞ − ∞ = 0`.
pub fn ext_defect(lhs: f64, rhs: f64) -> f64 {
    if lhs.is_infinite() && rhs.is_infinite() && lhs.signum() == rhs.signum() {
        0.0
    } else {
        lhs - rhs
    }
}

pub fn check_triple(kind: TripleKind, triple: &YoungTriple, grid: &[f64]) -> Result<TripleCondition> {
    if grid.iter().any(|&x| !(x > 0.0)) {
        return Err(Error::InvalidArgument("triple check grid must be > 0".into()));
    }
    let mut max_violation = -INF;
    let mut worst_x = f64::NAN;
    for &x in grid {
        let lhs = ext_mul(triple.phi1.inverse(x), triple.phi2.inverse(x));
        let rhs = match kind {
            TripleKind::Hoelder => triple.phi3.inverse(x),
            TripleKind::YoungConv => ext_mul(x, triple.phi3.inverse(x)),
        };
        let d = ext_defect(lhs, rhs);
        if d > max_violation {
            max_violation = d;
            worst_x = x;
        }
    }
    Ok(TripleCondition {
        kind,
        triple: triple.labels(),
        check_grid: grid.to_vec(),
        max_violation,
        worst_x,
    })
}

/// Defect of the pointwise Young inequality: `|xy| − Φ(x) − Ψ(y)` (≤ 0 when it holds).
pub fn young_pointwise_defect(phi: &YoungFunction, psi: &YoungFunction, x: f64, y: f64) -> f64 {
    let rhs = phi.eval(x) + psi.eval(y);
    ext_defect((x * y).abs(), rhs)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Delta2 {
    pub holds: bool,
    /// `sup Φ(2x)/Φ(x)` over the grid.
    pub k: f64,
}

/// Estimates the Δ₂ constant on a log grid over `[x_lo, x_hi]`.
///
/// `holds` is false when `Φ(2x) = ∞` for some finite-valued grid point, or
/// when the ratio keeps growing by more than 1% over the last decade at
/// either end of the range (no finite constant is in sight).
pub fn check_delta2(phi: &YoungFunction, x_lo: f64, x_hi: f64) -> Result<Delta2> {
    if !(x_lo > 0.0 && x_lo < x_hi && x_hi < phi.finite_domain_bound()) {
        return Err(Error::InvalidArgument(format!(
            "need 0 < x_lo < x_hi < {}, got [{x_lo}, {x_hi}]",
            phi.finite_domain_bound()
        )));
    }
    let grid = log_space(x_lo, x_hi, 512);
    let mut ratios = Vec::with_capacity(grid.len());
    for &x in &grid {
        let v = phi.eval(x);
        let w = phi.eval(2.0 * x);
        if v.is_finite() && w.is_infinite() {
            return Ok(Delta2 { holds: false, k: INF });
        }
        if v > 0.0 && v.is_finite() {
            ratios.push((x, w / v));
        }
    }
    if ratios.is_empty() {
        return Err(Error::EmptyDelta2Grid { lo: x_lo, hi: x_hi });
    }
    let k = ratios.iter().map(|r| r.1).fold(0.0, f64::max);
    let at = |target: f64| -> f64 {
        let i = ratios.partition_point(|r| r.0 < target).min(ratios.len() - 1);
        ratios[i].1
    };
    let (first, last) = (ratios[0], ratios[ratios.len() - 1]);
    let growing_top = last.1 > 1.01 * at(last.0 / 10.0);
    let growing_bottom = first.1 > 1.01 * at(first.0 * 10.0);
    Ok(Delta2 { holds: k.is_finite() && !growing_top && !growing_bottom, k })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_examples() {
        assert_eq!(YoungFunction::power(2.0).unwrap().eval(3.0), 9.0);
        let w = YoungFunction::indicator_window(2.0).unwrap();
        assert_eq!(w.eval(1.5), 0.0);
        assert_eq!(w.eval(2.5), INF);
        assert_eq!(w.eval(-2.5), INF);
        assert_eq!(YoungFunction::exp_minus_one().eval(0.0), 0.0);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(YoungFunction::power(2.0).unwrap().inverse(4.0), 2.0);
        assert_eq!(YoungFunction::indicator_window(2.0).unwrap().inverse(7.0), 2.0);
        let c = YoungFunction::power(3.0).unwrap().inverse(0.001);
        assert!((c - 0.1).abs() < 1e-15);
        assert_eq!(YoungFunction::power(2.0).unwrap().inverse(INF), INF);
    }

    #[test]
    fn structural_flags() {
        let w = YoungFunction::indicator_window(2.0).unwrap();
        assert_eq!(w.finite_domain_bound(), 2.0);
        assert_eq!(w.zero_plateau_edge(), 2.0);
        let pl = YoungFunction::piecewise_linear(vec![(1.0, 0.0), (2.0, 1.0)]).unwrap();
        assert_eq!(pl.zero_plateau_edge(), 1.0);
        assert_eq!(pl.inverse(0.0), 1.0);
        assert!((pl.inverse(0.5) - 1.5).abs() < 1e-11);
    }

    #[test]
    fn rejects_non_young() {
        assert!(YoungFunction::power(0.5).is_err());
        assert!(YoungFunction::piecewise_linear(vec![(1.0, 0.0)]).is_err());
        assert!(YoungFunction::piecewise_linear(vec![(1.0, 2.0), (2.0, 3.0)]).is_err());
        assert!(YoungFunction::indicator_window(0.0).is_err());
    }

    #[test]
    fn linear_inverse_by_bisection() {
        let half = YoungFunction::linear(0.5).unwrap();
        assert_eq!(half.eval(4.0), 2.0);
        let v = half.inverse(3.0);
        assert!((v - 6.0).abs() < 1e-10, "{v}");
    }

    #[test]
    fn complement_of_half_square_is_itself() {
        let phi = YoungFunction::power_over_p(2.0).unwrap();
        let psi = phi.complement(100.0, DEFAULT_CONJUGATE_POINTS).unwrap();
        for i in 0..=1000 {
            let y = 10.0 * i as f64 / 1000.0;
            let err = (psi.eval(y) - y * y / 2.0).abs();
            assert!(err <= 1e-6, "y = {y}: {err}");
        }
    }

    #[test]
    fn complement_of_abs_is_window_one() {
        let phi = YoungFunction::power(1.0).unwrap();
        let psi = phi.complement(100.0, 256).unwrap();
        assert_eq!(psi.finite_domain_bound(), 1.0);
        assert_eq!(psi.zero_plateau_edge(), 1.0);
        assert_eq!(psi.eval(0.5), 0.0);
        assert_eq!(psi.eval(1.0), 0.0);
        assert_eq!(psi.eval(1.5), INF);
    }

    #[test]
    fn complement_of_window_is_linear() {
        let phi = YoungFunction::indicator_window(2.0).unwrap();
        let psi = phi.complement(10.0, 256).unwrap();
        for y in [0.1, 1.0, 7.5, 100.0] {
            assert!((psi.eval(y) - 2.0 * y).abs() < 1e-9 * y.max(1.0));
        }
    }

    #[test]
    fn complement_rejects_plateau_only_scan() {
        let phi = YoungFunction::indicator_window(200.0).unwrap();
        assert!(matches!(phi.complement(100.0, 128), Err(Error::DegenerateConjugate(_))));
    }

    #[test]
    fn complement_argument_checks() {
        let phi = YoungFunction::power(2.0).unwrap();
        assert!(phi.complement(0.0, 128).is_err());
        assert!(phi.complement(1.0, 32).is_err());
    }

    #[test]
    fn delta2_examples() {
        let d = check_delta2(&YoungFunction::power(2.0).unwrap(), 1e-3, 1e3).unwrap();
        assert!(d.holds);
        assert!((d.k - 4.0).abs() < 1e-12);

        let d = check_delta2(&YoungFunction::exp_minus_one(), 1e-3, 1e2).unwrap();
        assert!(!d.holds);

        let d = check_delta2(&YoungFunction::indicator_window(2.0).unwrap(), 0.5, 1.5).unwrap();
        assert!(!d.holds);
        assert_eq!(d.k, INF);
    }

    #[test]
    fn delta2_exp_ratio_grows_without_bound() {
        // Oracle: the ratio at integer points is increasing and passes any fixed k.
        let phi = YoungFunction::exp_minus_one();
        let ratios: Vec<f64> = (1..=100).map(|x| phi.eval(2.0 * x as f64) / phi.eval(x as f64)).collect();
        assert!(ratios.windows(2).all(|w| w[1] > w[0]));
        assert!(ratios[99] > 1e40);
    }

    #[test]
    fn delta2_empty_grid_is_error() {
        let pl = YoungFunction::piecewise_linear(vec![(10.0, 0.0), (11.0, 1.0)]).unwrap();
        assert!(matches!(check_delta2(&pl, 1.0, 2.0), Err(Error::EmptyDelta2Grid { .. })));
    }

    #[test]
    fn triple_examples() {
        let grid = log_space(1e-3, 1e3, 61);
        let t = YoungTriple::powers(2.0, 2.0, 1.0).unwrap();
        let c = check_triple(TripleKind::Hoelder, &t, &grid).unwrap();
        assert!(c.max_violation.abs() < 1e-12);

        let t = YoungTriple::powers(1.0, 1.0, 1.0).unwrap();
        let c = check_triple(TripleKind::YoungConv, &t, &grid).unwrap();
        assert_eq!(c.max_violation, 0.0);

        let phi = YoungFunction::power(2.0).unwrap();
        let psi = phi.complement(1e4, DEFAULT_CONJUGATE_POINTS).unwrap();
        let t = YoungTriple::new(phi, psi, YoungFunction::linear(0.5).unwrap());
        let c = check_triple(TripleKind::Hoelder, &t, &grid).unwrap();
        // Equality case: both sides are 2x, so allow rounding relative to x = 1e3.
        assert!(c.holds(1e-8), "{}", c.max_violation);
    }

    #[test]
    fn ext_arithmetic() {
        assert_eq!(ext_mul(0.0, INF), 0.0);
        assert_eq!(ext_defect(INF, INF), 0.0);
        assert_eq!(ext_defect(1.0, INF), -INF);
    }
}
