//! Symbol algebra: translation, modulation, dilation, convolution and
//! multiplication by measures, ψ-averages, and tensor products of linear
//! multipliers. Each transform reports the factor by which it can enlarge the
//! operator norm.

use super::symbol::{Factor, GeneralSymbol, Measure, Profile, SeparableTerm, Symbol, SymbolForm};
use crate::dilation_gauge::weight_w;
use crate::error::{Error, Result};
use crate::fft::cis_pi;
use crate::young::YoungTriple;
use num_complex::Complex64;
use std::sync::Arc;

/// Finite sum of planar point masses `Σ c_i δ_{(a_i, b_i)}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanarMasses(pub Vec<(f64, f64, Complex64)>);

impl PlanarMasses {
    pub fn total_variation(&self) -> f64 {
        self.0.iter().map(|m| m.2.norm()).sum()
    }
}

#[derive(Clone)]
pub enum SymbolOp {
    /// `m(ξ - ξ₀, η - η₀)`.
    Translate { xi0: f64, eta0: f64 },
    /// `e^{2πi(x₀ξ + y₀η)} m(ξ, η)`.
    Modulate { x0: f64, y0: f64 },
    /// `m(tξ, tη)`.
    Dilate { t: f64 },
    /// `φ ⋆ m` for a planar measure `φ`.
    ConvolveWith(PlanarMasses),
    /// `φ̂ · m` for a planar measure `φ`.
    MultiplyHat(PlanarMasses),
    /// `Σ_i ψ_i m(t_i ξ, t_i η)`; weights already include the quadrature step.
    PsiAverage(Vec<(f64, f64)>),
    /// `m₁(ξ) m₂(η)` with the supplied multiplier norms.
    ComposeLinear { m1: Factor, m2: Factor, norm1: f64, norm2: f64 },
}

impl SymbolOp {
    pub fn name(&self) -> &'static str {
        match self {
            SymbolOp::Translate { .. } => "translate",
            SymbolOp::Modulate { .. } => "modulate",
            SymbolOp::Dilate { .. } => "dilate",
            SymbolOp::ConvolveWith(_) => "convolve_with",
            SymbolOp::MultiplyHat(_) => "multiply_hat",
            SymbolOp::PsiAverage(_) => "psi_average",
            SymbolOp::ComposeLinear { .. } => "compose_linear",
        }
    }
}

#[derive(Clone, Debug)]
pub struct TransformedSymbol {
    pub symbol: Symbol,
    /// Norm-propagation factor: `‖m'‖ ≤ factor · ‖m‖`.
    pub factor: f64,
}

fn need_triple<'a>(op: &SymbolOp, triple: Option<&'a YoungTriple>) -> Result<&'a YoungTriple> {
    triple.ok_or_else(|| Error::InvalidArgument(format!("{} needs a Young triple for W(t)", op.name())))
}

pub fn symbol_transform(m: &Symbol, op: &SymbolOp, triple: Option<&YoungTriple>) -> Result<TransformedSymbol> {
    let label = format!("{}({})", op.name(), m.label);
    let (symbol, factor) = match op {
        SymbolOp::Translate { xi0, eta0 } => (translate(m, *xi0, *eta0), 1.0),
        SymbolOp::Modulate { x0, y0 } => (modulate(m, *x0, *y0), 1.0),
        SymbolOp::Dilate { t } => {
            if !(*t > 0.0 && t.is_finite()) {
                return Err(Error::InvalidArgument(format!("dilation needs t > 0, got {t}")));
            }
            let tr = need_triple(op, triple)?;
            (psi_sum(m, &[(*t, 1.0)]), weight_w(&tr.phi1, &tr.phi2, &tr.phi3, *t)?)
        }
        SymbolOp::ConvolveWith(phi) => (convolve_with(m, phi), phi.total_variation()),
        SymbolOp::MultiplyHat(phi) => (multiply_hat(m, phi), phi.total_variation()),
        SymbolOp::PsiAverage(psi) => {
            let tr = need_triple(op, triple)?;
            let mut norm = 0.0;
            for &(t, w) in psi {
                if !(t > 0.0) {
                    return Err(Error::InvalidArgument(format!("ψ nodes must be > 0, got {t}")));
                }
                if w != 0.0 {
                    norm += w.abs() * weight_w(&tr.phi1, &tr.phi2, &tr.phi3, t)?;
                }
            }
            if !norm.is_finite() {
                return Err(Error::NotIntegrable("ψ is not integrable against W".into()));
            }
            (psi_sum(m, psi), norm)
        }
        SymbolOp::ComposeLinear { m1, m2, norm1, norm2 } => (
            Symbol::separable("", vec![SeparableTerm { weight: Complex64::new(1.0, 0.0), a: m1.clone(), b: m2.clone() }]),
            norm1 * norm2,
        ),
    };
    Ok(TransformedSymbol { symbol: symbol.with_label(label), factor })
}

fn closure_of(m: &Symbol) -> Arc<dyn Fn(f64, f64) -> Complex64 + Send + Sync> {
    let m = m.clone();
    Arc::new(move |xi, eta| m.eval(xi, eta))
}

fn map_terms(terms: &[SeparableTerm], f: impl Fn(&SeparableTerm) -> SeparableTerm) -> Symbol {
    Symbol::separable("", terms.iter().map(f).collect())
}

fn translate(m: &Symbol, xi0: f64, eta0: f64) -> Symbol {
    match &m.form {
        SymbolForm::Difference(p) => {
            let c = xi0 - eta0;
            let f = p.closure();
            Symbol::difference(Profile::from_fn(
                format!("{}-shift({c})", p.name()),
                p.support().map(|s| s.shift(c)),
                p.l1(),
                Arc::new(move |v| f(v - c)),
            ))
        }
        SymbolForm::MeasureHat { measure, alpha, beta } => {
            let c = alpha * xi0 + beta * eta0;
            let atoms = measure.point_masses().into_iter().map(|(t, w)| (t, w * cis_pi(2.0 * c, t))).collect();
            Symbol::measure_hat(Measure::atoms(atoms), *alpha, *beta)
        }
        SymbolForm::General(GeneralSymbol::Separable(terms)) => map_terms(terms, |t| {
            let (a, b) = (t.a.clone(), t.b.clone());
            SeparableTerm { weight: t.weight, a: Arc::new(move |x| a(x - xi0)), b: Arc::new(move |y| b(y - eta0)) }
        }),
        SymbolForm::General(_) => {
            let c = closure_of(m);
            Symbol::general("", Arc::new(move |x, y| c(x - xi0, y - eta0)))
        }
    }
}

fn modulate(m: &Symbol, x0: f64, y0: f64) -> Symbol {
    match &m.form {
        SymbolForm::Difference(p) if y0 == -x0 => {
            let f = p.closure();
            Symbol::difference(Profile::from_fn(
                format!("{}-mod({x0})", p.name()),
                p.support(),
                p.l1(),
                Arc::new(move |v| f(v) * cis_pi(2.0 * x0, v)),
            ))
        }
        SymbolForm::General(GeneralSymbol::Separable(terms)) => map_terms(terms, |t| {
            let (a, b) = (t.a.clone(), t.b.clone());
            SeparableTerm {
                weight: t.weight,
                a: Arc::new(move |x| a(x) * cis_pi(2.0 * x0, x)),
                b: Arc::new(move |y| b(y) * cis_pi(2.0 * y0, y)),
            }
        }),
        _ => {
            let c = closure_of(m);
            Symbol::general("", Arc::new(move |x, y| c(x, y) * cis_pi(2.0 * x0, x) * cis_pi(2.0 * y0, y)))
        }
    }
}

/// `Σ_i w_i m(t_i ξ, t_i η)`.
fn psi_sum(m: &Symbol, psi: &[(f64, f64)]) -> Symbol {
    let psi: Vec<(f64, f64)> = psi.to_vec();
    match &m.form {
        SymbolForm::Difference(p) => {
            let f = p.closure();
            let l1 = psi.iter().map(|(t, w)| w.abs() * p.l1() / t).sum();
            let support = p.support().map(|s| {
                let tmin = psi.iter().map(|x| x.0).fold(f64::INFINITY, f64::min);
                s.scale(1.0 / tmin)
            });
            let name = if psi.len() == 1 { format!("{}-dil({})", p.name(), psi[0].0) } else { format!("{}-avg", p.name()) };
            Symbol::difference(Profile::from_fn(
                name,
                support,
                l1,
                Arc::new(move |v| psi.iter().map(|(t, w)| f(t * v) * *w).sum()),
            ))
        }
        SymbolForm::MeasureHat { measure, alpha, beta } => {
            let mut atoms = Vec::new();
            for &(s, w) in &psi {
                for (t, a) in measure.point_masses() {
                    atoms.push((s * t, a * w));
                }
            }
            Symbol::measure_hat(Measure::atoms(atoms), *alpha, *beta)
        }
        SymbolForm::General(GeneralSymbol::Separable(terms)) => {
            let mut out = Vec::new();
            for &(s, w) in &psi {
                for t in terms {
                    let (a, b) = (t.a.clone(), t.b.clone());
                    out.push(SeparableTerm {
                        weight: t.weight * w,
                        a: Arc::new(move |x| a(s * x)),
                        b: Arc::new(move |y| b(s * y)),
                    });
                }
            }
            Symbol::separable("", out)
        }
        SymbolForm::General(_) => {
            let c = closure_of(m);
            Symbol::general("", Arc::new(move |x, y| psi.iter().map(|(t, w)| c(t * x, t * y) * *w).sum()))
        }
    }
}

fn convolve_with(m: &Symbol, phi: &PlanarMasses) -> Symbol {
    let masses = phi.0.clone();
    match &m.form {
        SymbolForm::Difference(p) => {
            let f = p.closure();
            let shifts: Vec<(f64, Complex64)> = masses.iter().map(|(a, b, c)| (a - b, *c)).collect();
            let support = p.support().map(|s| {
                let lo = shifts.iter().map(|x| x.0).fold(f64::INFINITY, f64::min);
                let hi = shifts.iter().map(|x| x.0).fold(f64::NEG_INFINITY, f64::max);
                crate::function_lab::Interval::new(s.lo + lo, s.hi + hi)
            });
            Symbol::difference(Profile::from_fn(
                format!("{}-conv", p.name()),
                support,
                phi.total_variation() * p.l1(),
                Arc::new(move |v| shifts.iter().map(|(d, c)| c * f(v - d)).sum()),
            ))
        }
        SymbolForm::MeasureHat { measure, alpha, beta } => {
            let atoms = measure
                .point_masses()
                .into_iter()
                .map(|(t, w)| {
                    let phase: Complex64 = masses.iter().map(|(a, b, c)| c * cis_pi(2.0 * (alpha * a + beta * b), t)).sum();
                    (t, w * phase)
                })
                .collect();
            Symbol::measure_hat(Measure::atoms(atoms), *alpha, *beta)
        }
        SymbolForm::General(GeneralSymbol::Separable(terms)) => {
            let mut out = Vec::new();
            for &(a0, b0, c) in &masses {
                for t in terms {
                    let (a, b) = (t.a.clone(), t.b.clone());
                    out.push(SeparableTerm {
                        weight: t.weight * c,
                        a: Arc::new(move |x| a(x - a0)),
                        b: Arc::new(move |y| b(y - b0)),
                    });
                }
            }
            Symbol::separable("", out)
        }
        SymbolForm::General(_) => {
            let g = closure_of(m);
            Symbol::general("", Arc::new(move |x, y| masses.iter().map(|(a, b, c)| c * g(x - a, y - b)).sum()))
        }
    }
}

fn multiply_hat(m: &Symbol, phi: &PlanarMasses) -> Symbol {
    let masses = phi.0.clone();
    match &m.form {
        SymbolForm::General(GeneralSymbol::Separable(terms)) => {
            let mut out = Vec::new();
            for &(a0, b0, c) in &masses {
                for t in terms {
                    let (a, b) = (t.a.clone(), t.b.clone());
                    out.push(SeparableTerm {
                        weight: t.weight * c,
                        a: Arc::new(move |x| a(x) * cis_pi(-2.0 * a0, x)),
                        b: Arc::new(move |y| b(y) * cis_pi(-2.0 * b0, y)),
                    });
                }
            }
            Symbol::separable("", out)
        }
        _ => {
            let g = closure_of(m);
            Symbol::general(
                "",
                Arc::new(move |x, y| {
                    let hat: Complex64 = masses.iter().map(|(a, b, c)| c * cis_pi(-2.0, a * x + b * y)).sum();
                    hat * g(x, y)
                }),
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bilinear::evaluate::{evaluate_bm, Method};
    use crate::function_lab::{dilate, modulate as mod_f, Grid, SampledFunction};

    fn inputs(g: Grid) -> (SampledFunction, SampledFunction) {
        let f = SampledFunction::from_real_fn(g, |x| (-std::f64::consts::PI * (x - 0.3).powi(2)).exp());
        let h = SampledFunction::from_fn(g, |x| {
            Complex64::new((-2.0 * (x + 0.2).powi(2)).exp(), 0.5 * (-3.0 * x * x).exp())
        });
        (f, h)
    }

    #[test]
    fn translation_identity() {
        let g = Grid::new(16.0, 1024).unwrap();
        let (f, h) = inputs(g);
        let m = Symbol::difference(Profile::gaussian());
        let (xi0, eta0) = (0.75, -0.5);
        let tm = symbol_transform(&m, &SymbolOp::Translate { xi0, eta0 }, None).unwrap();
        assert_eq!(tm.factor, 1.0);
        let lhs = evaluate_bm(&tm.symbol, &f, &h, Method::Direct).unwrap();
        let inner = evaluate_bm(&m, &mod_f(&f, -xi0).unwrap(), &mod_f(&h, -eta0).unwrap(), Method::Direct).unwrap();
        let rhs = mod_f(&inner, xi0 + eta0).unwrap();
        assert!(lhs.max_abs_diff(&rhs) < 1e-8, "{}", lhs.max_abs_diff(&rhs));
    }

    #[test]
    fn dilation_identity() {
        let g = Grid::new(16.0, 1024).unwrap();
        let (f, h) = inputs(g);
        let f = f.with_bandlimit(Some(crate::function_lab::Interval::new(-7.0, 7.0)));
        let h = h.with_bandlimit(Some(crate::function_lab::Interval::new(-7.0, 7.0)));
        let m = Symbol::difference(Profile::gaussian());
        let tr = YoungTriple::powers(2.0, 2.0, 1.0).unwrap();
        let t = 2.0;
        let tm = symbol_transform(&m, &SymbolOp::Dilate { t }, Some(&tr)).unwrap();
        assert!((tm.factor - 1.0).abs() < 1e-12);
        let lhs = evaluate_bm(&tm.symbol, &f, &h, Method::Direct).unwrap();
        let inner = evaluate_bm(&m, &dilate(&f, t).unwrap(), &dilate(&h, t).unwrap(), Method::Direct).unwrap();
        let rhs = dilate(&inner.with_bandlimit(Some(crate::function_lab::Interval::new(-14.0, 14.0))), 1.0 / t);
        // D_{1/2} doubles the support; compare on the central half where it is defined.
        let rhs = rhs.unwrap();
        let dev = (0..g.len())
            .filter(|&j| g.x(j).abs() <= 8.0)
            .map(|j| (lhs.values()[j] - rhs.values()[j]).norm())
            .fold(0.0, f64::max);
        assert!(dev < 1e-8, "{dev}");
    }

    #[test]
    fn psi_average_of_one_is_one() {
        let tr = YoungTriple::powers(2.0, 2.0, 1.0).unwrap();
        let n = 64;
        let psi: Vec<(f64, f64)> = (0..n).map(|i| (1.0 + (i as f64 + 0.5) / n as f64, 1.0 / n as f64)).collect();
        let out = symbol_transform(&Symbol::one(), &SymbolOp::PsiAverage(psi), Some(&tr)).unwrap();
        for (x, y) in [(0.0, 0.0), (1.5, -2.0), (10.0, 3.0)] {
            assert!((out.symbol.eval(x, y) - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        }
        assert!((out.factor - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dilate_needs_triple() {
        assert!(symbol_transform(&Symbol::one(), &SymbolOp::Dilate { t: 2.0 }, None).is_err());
    }

    #[test]
    fn convolve_with_masses_keeps_difference_form() {
        let m = Symbol::difference(Profile::gaussian());
        let phi = PlanarMasses(vec![(1.0, 0.0, Complex64::new(0.5, 0.0)), (0.0, 1.0, Complex64::new(-0.5, 0.0))]);
        let out = symbol_transform(&m, &SymbolOp::ConvolveWith(phi), None).unwrap();
        assert_eq!(out.factor, 1.0);
        assert_eq!(out.symbol.form_name(), "difference");
        let want = 0.5 * (-(0.5f64 - 1.0).powi(2)).exp() - 0.5 * (-(0.5f64 + 1.0).powi(2)).exp();
        assert!((out.symbol.eval(0.5, 0.0).re - want).abs() < 1e-15);
    }

    #[test]
    fn measure_forms_are_preserved() {
        let m = Symbol::measure_hat(Measure::dirac(1.0), 1.0, -1.0);
        let out = symbol_transform(&m, &SymbolOp::Translate { xi0: 0.3, eta0: 0.1 }, None).unwrap();
        assert_eq!(out.symbol.form_name(), "measure_hat");
        let want = m.eval(0.7 - 0.3, -0.2 - 0.1);
        assert!((out.symbol.eval(0.7, -0.2) - want).norm() < 1e-14);
    }
}
