//! Bilinear symbols `m(ξ, η)` and the measures behind measure-hat symbols.

use crate::error::{Error, Result};
use crate::fft::cis_pi;
use crate::function_lab::{Interval, SampledFunction};
use num_complex::Complex64;
use std::fmt;
use std::sync::Arc;

pub type Factor = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;
pub type Kernel2 = Arc<dyn Fn(f64, f64) -> Complex64 + Send + Sync>;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// One-variable profile `M(v)` of a difference symbol `m(ξ, η) = M(ξ - η)`.
#[derive(Clone)]
pub struct Profile {
    name: String,
    f: Factor,
    /// `M = 0` outside this interval.
    support: Option<Interval>,
    l1: f64,
}

impl fmt::Debug for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Profile")
            .field("name", &self.name)
            .field("support", &self.support)
            .field("l1", &self.l1)
            .finish()
    }
}

impl Profile {
    /// Profile from a closure; `l1` is `‖M‖₁` (`∞` marks a non-integrable profile).
    pub fn from_fn(name: impl Into<String>, support: Option<Interval>, l1: f64, f: Factor) -> Self {
        Self { name: name.into(), f, support, l1 }
    }

    /// `e^{-v²}`.
    pub fn gaussian() -> Self {
        Self::gaussian_scaled(1.0, 0.0)
    }

    /// `e^{-((v - c)/s)²}`.
    pub fn gaussian_scaled(s: f64, c: f64) -> Self {
        let name = if s == 1.0 && c == 0.0 { "gauss".to_string() } else { format!("gauss(s={s},c={c})") };
        Self::from_fn(
            name,
            None,
            s.abs() * std::f64::consts::PI.sqrt(),
            Arc::new(move |v| {
                let z = (v - c) / s;
                Complex64::new((-z * z).exp(), 0.0)
            }),
        )
    }

    /// `sign(v)` cut to `|v| ≤ w`.
    pub fn sign(w: f64) -> Self {
        Self::from_fn(
            format!("sign(w={w})"),
            Some(Interval::new(-w, w)),
            2.0 * w,
            Arc::new(move |v| {
                if v.abs() > w || v == 0.0 {
                    ZERO
                } else {
                    Complex64::new(v.signum(), 0.0)
                }
            }),
        )
    }

    /// `sign(v)` on the whole line; not integrable.
    pub fn sign_unwindowed() -> Self {
        Self::from_fn(
            "sign",
            None,
            f64::INFINITY,
            Arc::new(|v| if v == 0.0 { ZERO } else { Complex64::new(v.signum(), 0.0) }),
        )
    }

    /// Smooth bump `e^{1 - 1/(1 - ((v - c)/r)²)}` on `|v - c| < r`.
    pub fn bump(r: f64, c: f64) -> Self {
        let f: Factor = Arc::new(move |v| {
            let z = (v - c) / r;
            if z.abs() >= 1.0 {
                ZERO
            } else {
                Complex64::new((1.0 - 1.0 / (1.0 - z * z)).exp(), 0.0)
            }
        });
        let support = Interval::new(c - r, c + r);
        let l1 = quadrature_l1(&f, support);
        let name = if r == 1.0 && c == 0.0 { "bump".to_string() } else { format!("bump(r={r},c={c})") };
        Self::from_fn(name, Some(support), l1, f)
    }

    /// Linear interpolation of `(v_i, M_i)` with strictly increasing `v`; zero outside.
    pub fn table(v: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if v.len() < 2 || v.len() != values.len() {
            return Err(Error::InvalidArgument("profile table needs ≥ 2 matching rows".into()));
        }
        if v.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidArgument("profile abscissae must increase strictly".into()));
        }
        let support = Interval::new(v[0], v[v.len() - 1]);
        let l1 = v
            .windows(2)
            .zip(values.windows(2))
            .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0].norm() + y[1].norm()))
            .sum();
        let (vv, mv) = (Arc::new(v), Arc::new(values));
        let f: Factor = Arc::new(move |x| {
            if x < vv[0] || x > vv[vv.len() - 1] {
                return ZERO;
            }
            let i = vv.partition_point(|&a| a <= x).clamp(1, vv.len() - 1);
            let t = (x - vv[i - 1]) / (vv[i] - vv[i - 1]);
            mv[i - 1] * (1.0 - t) + mv[i] * t
        });
        Ok(Self::from_fn("table", Some(support), l1, f))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn support(&self) -> Option<Interval> {
        self.support
    }

    /// `‖M‖₁`.
    pub fn l1(&self) -> f64 {
        self.l1
    }

    pub fn is_integrable(&self) -> bool {
        self.l1.is_finite()
    }

    pub fn eval(&self, v: f64) -> Complex64 {
        (self.f)(v)
    }

    pub fn closure(&self) -> Factor {
        self.f.clone()
    }
}

/// Composite Simpson estimate of `∫|f|` over an interval.
pub(crate) fn quadrature_l1(f: &Factor, on: Interval) -> f64 {
    let n = 20_000;
    let h = on.width() / n as f64;
    let mut s = 0.0;
    for i in 0..=n {
        let w = if i == 0 || i == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        s += w * f(on.lo + i as f64 * h).norm();
    }
    s * h / 3.0
}

/// Finite measure: atoms plus an optional sampled density (integrated by the
/// grid's rectangle rule).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Measure {
    pub atoms: Vec<(f64, Complex64)>,
    pub density: Option<SampledFunction>,
}

impl Measure {
    pub fn dirac(t: f64) -> Self {
        Self { atoms: vec![(t, ONE)], density: None }
    }

    pub fn atoms(atoms: Vec<(f64, Complex64)>) -> Self {
        Self { atoms, density: None }
    }

    pub fn with_density(mut self, density: SampledFunction) -> Self {
        self.density = Some(density);
        self
    }

    /// `‖μ‖₁ = Σ|w| + ‖density‖₁`.
    pub fn total_variation(&self) -> f64 {
        self.atoms.iter().map(|a| a.1.norm()).sum::<f64>() + self.density.as_ref().map_or(0.0, |d| d.l1_norm())
    }

    /// All point masses, with density samples turned into weighted atoms.
    pub fn point_masses(&self) -> Vec<(f64, Complex64)> {
        let mut out = self.atoms.clone();
        if let Some(d) = &self.density {
            let g = d.grid();
            for (j, v) in d.values().iter().enumerate() {
                if *v != ZERO {
                    out.push((g.x(j), v * g.dx()));
                }
            }
        }
        out
    }

    /// `μ̂(ω) = ∫ e^{-2πiωt} dμ(t)`.
    pub fn hat(&self, omega: f64) -> Complex64 {
        self.point_masses().iter().map(|(t, w)| w * cis_pi(-2.0 * omega, *t)).sum()
    }
}

/// Sampled general symbol on a rectangle, bilinearly interpolated, zero outside.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolTable {
    pub xi: Interval,
    pub eta: Interval,
    pub n_xi: usize,
    pub n_eta: usize,
    /// Row-major: `values[i * n_eta + j] = m(ξ_i, η_j)`.
    pub values: Vec<Complex64>,
}

impl SymbolTable {
    pub fn eval(&self, xi: f64, eta: f64) -> Complex64 {
        if xi < self.xi.lo || xi > self.xi.hi || eta < self.eta.lo || eta > self.eta.hi {
            return ZERO;
        }
        let locate = |x: f64, iv: Interval, n: usize| -> (usize, f64) {
            let t = (x - iv.lo) / iv.width() * (n - 1) as f64;
            let i = (t.floor() as usize).min(n - 2);
            (i, t - i as f64)
        };
        let (i, s) = locate(xi, self.xi, self.n_xi);
        let (j, t) = locate(eta, self.eta, self.n_eta);
        let at = |a: usize, b: usize| self.values[a * self.n_eta + b];
        at(i, j) * (1.0 - s) * (1.0 - t) + at(i + 1, j) * s * (1.0 - t) + at(i, j + 1) * (1.0 - s) * t + at(i + 1, j + 1) * s * t
    }
}

/// `weight · a(ξ) · b(η)`.
#[derive(Clone)]
pub struct SeparableTerm {
    pub weight: Complex64,
    pub a: Factor,
    pub b: Factor,
}

#[derive(Clone)]
pub enum GeneralSymbol {
    Closure(Kernel2),
    Table(SymbolTable),
    Separable(Vec<SeparableTerm>),
}

#[derive(Clone)]
pub enum SymbolForm {
    General(GeneralSymbol),
    /// `m(ξ, η) = M(ξ - η)`.
    Difference(Profile),
    /// `m(ξ, η) = μ̂(αξ + βη)`.
    MeasureHat { measure: Measure, alpha: f64, beta: f64 },
}

#[derive(Clone)]
pub struct Symbol {
    pub form: SymbolForm,
    pub label: String,
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Symbol({})", self.label)
    }
}

impl Symbol {
    pub fn constant(c: Complex64) -> Self {
        let one: Factor = Arc::new(|_| ONE);
        Self {
            form: SymbolForm::General(GeneralSymbol::Separable(vec![SeparableTerm { weight: c, a: one.clone(), b: one }])),
            label: format!("constant({})", c.re),
        }
    }

    pub fn one() -> Self {
        Self::constant(ONE)
    }

    pub fn zero() -> Self {
        Self::constant(ZERO)
    }

    pub fn general(label: impl Into<String>, m: Kernel2) -> Self {
        Self { form: SymbolForm::General(GeneralSymbol::Closure(m)), label: label.into() }
    }

    pub fn table(table: SymbolTable) -> Self {
        Self { form: SymbolForm::General(GeneralSymbol::Table(table)), label: "table".into() }
    }

    pub fn separable(label: impl Into<String>, terms: Vec<SeparableTerm>) -> Self {
        Self { form: SymbolForm::General(GeneralSymbol::Separable(terms)), label: label.into() }
    }

    pub fn difference(profile: Profile) -> Self {
        let label = format!("difference:{}", profile.name());
        Self { form: SymbolForm::Difference(profile), label }
    }

    pub fn measure_hat(measure: Measure, alpha: f64, beta: f64) -> Self {
        let label = format!("measure({} atoms):alpha={alpha},beta={beta}", measure.atoms.len());
        Self { form: SymbolForm::MeasureHat { measure, alpha, beta }, label }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn form_name(&self) -> &'static str {
        match &self.form {
            SymbolForm::General(_) => "general",
            SymbolForm::Difference(_) => "difference",
            SymbolForm::MeasureHat { .. } => "measure_hat",
        }
    }

    pub fn eval(&self, xi: f64, eta: f64) -> Complex64 {
        match &self.form {
            SymbolForm::General(GeneralSymbol::Closure(m)) => m(xi, eta),
            SymbolForm::General(GeneralSymbol::Table(t)) => t.eval(xi, eta),
            SymbolForm::General(GeneralSymbol::Separable(terms)) => {
                terms.iter().map(|t| t.weight * (t.a)(xi) * (t.b)(eta)).sum()
            }
            SymbolForm::Difference(p) => p.eval(xi - eta),
            SymbolForm::MeasureHat { measure, alpha, beta } => measure.hat(alpha * xi + beta * eta),
        }
    }

    /// Separable decomposition when one is available without approximation.
    pub fn separable_terms(&self) -> Option<Vec<SeparableTerm>> {
        match &self.form {
            SymbolForm::General(GeneralSymbol::Separable(terms)) => Some(terms.clone()),
            SymbolForm::MeasureHat { measure, alpha, beta } => Some(
                measure
                    .point_masses()
                    .into_iter()
                    .map(|(t, w)| {
                        let (a, b) = (*alpha, *beta);
                        SeparableTerm {
                            weight: w,
                            a: Arc::new(move |xi| cis_pi(-2.0 * a * t, xi)),
                            b: Arc::new(move |eta| cis_pi(-2.0 * b * t, eta)),
                        }
                    })
                    .collect(),
            ),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_norms() {
        assert!((Profile::gaussian().l1() - std::f64::consts::PI.sqrt()).abs() < 1e-15);
        assert_eq!(Profile::sign(2.0).l1(), 4.0);
        assert!(!Profile::sign_unwindowed().is_integrable());
        // ∫ e^{1 - 1/(1 - v²)} dv over (-1, 1).
        assert!((Profile::bump(1.0, 0.0).l1() - 1.206_900_322_437_876).abs() < 1e-9);
    }

    #[test]
    fn table_profile_interpolates() {
        let p = Profile::table(vec![-1.0, 0.0, 1.0], vec![ZERO, ONE, ZERO]).unwrap();
        assert_eq!(p.eval(0.5), Complex64::new(0.5, 0.0));
        assert_eq!(p.eval(2.0), ZERO);
        assert_eq!(p.l1(), 1.0);
    }

    #[test]
    fn measure_hat_of_dirac() {
        let m = Measure::dirac(0.0);
        assert_eq!(m.hat(3.7), ONE);
        let m = Measure::atoms(vec![(0.0, ONE), (1.0, ONE)]);
        assert_eq!(m.total_variation(), 2.0);
        assert!((m.hat(0.5) - ZERO).norm() < 1e-15);
    }

    #[test]
    fn symbol_eval_forms() {
        assert_eq!(Symbol::one().eval(1.0, 2.0), ONE);
        let d = Symbol::difference(Profile::gaussian());
        assert!((d.eval(1.5, 0.5).re - (-1.0f64).exp()).abs() < 1e-15);
        let t = SymbolTable {
            xi: Interval::new(0.0, 1.0),
            eta: Interval::new(0.0, 1.0),
            n_xi: 2,
            n_eta: 2,
            values: vec![ZERO, ONE, ONE, Complex64::new(2.0, 0.0)],
        };
        assert_eq!(Symbol::table(t).eval(0.5, 0.5), ONE);
    }
}
