//! Bounds on the dilation operator norm `C_Φ(λ) = ‖f ↦ f(λ·)‖` on `L^Φ`,
//! the weight `W(t)`, and Boyd-index estimates.

use crate::error::{Error, Result};
use crate::roots::{linear_fit, log_space};
use crate::young::{ext_mul, YoungFunction, YoungKind};
use serde::{Deserialize, Serialize};

/// Relative slack when verifying factorization certificates.
const CERT_REL_TOL: f64 = 1e-12;

/// Residual above which a Boyd fit is rejected.
pub const MAX_FIT_RESIDUAL: f64 = 0.05;

/// Default μ-scan: 2048 log-spaced points on `[1e-8, 1e8]`.
pub fn default_mu_grid() -> Vec<f64> {
    log_space(1e-8, 1e8, 2048)
}

fn certificate_grid() -> Vec<f64> {
    log_space(1e-3, 1e3, 61)
}

/// `max_μ Φ⁻¹(μ)/Φ⁻¹(λμ)` over the grid, skipping points where either inverse
/// is zero or infinite.
pub fn gauge_lower(phi: &YoungFunction, lambda: f64, mu_grid: &[f64]) -> Result<f64> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidArgument(format!("λ must be > 0, got {lambda}")));
    }
    let mut best: Option<f64> = None;
    for &mu in mu_grid {
        let a = phi.inverse(mu);
        let b = phi.inverse(lambda * mu);
        if !(a > 0.0 && a.is_finite() && b > 0.0 && b.is_finite()) {
            continue;
        }
        let r = a / b;
        best = Some(best.map_or(r, |v| v.max(r)));
    }
    best.ok_or(Error::NoFiniteRatio)
}

/// Factorization certificates for the upper gauge: `Φ(st) ≥ Φ₁(s)Φ(t)`
/// (minorant) and `Φ(st) ≤ Φ₂(s)Φ(t)` (majorant).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Certificates {
    pub minorant: Option<YoungFunction>,
    pub majorant: Option<YoungFunction>,
}

/// Certificates that hold exactly for the closed-form kinds.
pub fn auto_certificates(phi: &YoungFunction) -> Certificates {
    let power = match phi.kind() {
        YoungKind::Power { p } | YoungKind::PowerOverP { p } => YoungFunction::power(*p).ok(),
        _ => None,
    };
    Certificates { minorant: power.clone(), majorant: power }
}

fn verify_certificates(phi: &YoungFunction, certs: &Certificates) -> Result<()> {
    let grid = certificate_grid();
    for &s in &grid {
        for &t in &grid {
            let lhs = phi.eval(s * t);
            let pt = phi.eval(t);
            if let Some(m) = &certs.minorant {
                let rhs = ext_mul(m.eval(s), pt);
                if lhs < rhs * (1.0 - CERT_REL_TOL) && !(lhs.is_infinite() && rhs.is_infinite()) {
                    return Err(Error::CertificateViolated {
                        s,
                        t,
                        detail: format!("Φ(st) = {lhs} < Φ₁(s)Φ(t) = {rhs}"),
                    });
                }
            }
            if let Some(m) = &certs.majorant {
                let rhs = ext_mul(m.eval(s), pt);
                if lhs > rhs * (1.0 + CERT_REL_TOL) {
                    return Err(Error::CertificateViolated {
                        s,
                        t,
                        detail: format!("Φ(st) = {lhs} > Φ₂(s)Φ(t) = {rhs}"),
                    });
                }
            }
        }
    }
    Ok(())
}

/// `1/min{1, λ}`.
pub fn crude_upper(lambda: f64) -> f64 {
    1.0 / lambda.min(1.0)
}

/// `1/max{1, λ}`.
pub fn crude_lower(lambda: f64) -> f64 {
    1.0 / lambda.max(1.0)
}

/// Minimum of `Φ₁⁻¹(1/λ)`, `1/Φ₂⁻¹(λ)` (for verified certificates) and `1/min{1,λ}`.
pub fn gauge_upper(phi: &YoungFunction, lambda: f64, certs: &Certificates) -> Result<f64> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidArgument(format!("λ must be > 0, got {lambda}")));
    }
    verify_certificates(phi, certs)?;
    let mut best = crude_upper(lambda);
    if let Some(m) = &certs.minorant {
        best = best.min(m.inverse(1.0 / lambda));
    }
    if let Some(m) = &certs.majorant {
        let v = m.inverse(lambda);
        if v > 0.0 {
            best = best.min(1.0 / v);
        }
    }
    Ok(best)
}

/// Upper gauge with [`auto_certificates`].
pub fn gauge_upper_auto(phi: &YoungFunction, lambda: f64) -> Result<f64> {
    gauge_upper(phi, lambda, &auto_certificates(phi))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaugeEstimate {
    pub lambda: f64,
    pub lower: f64,
    pub upper: f64,
    pub crude: (f64, f64),
}

pub fn estimate(phi: &YoungFunction, lambda: f64) -> Result<GaugeEstimate> {
    Ok(GaugeEstimate {
        lambda,
        lower: gauge_lower(phi, lambda, &default_mu_grid())?,
        upper: gauge_upper_auto(phi, lambda)?,
        crude: (crude_lower(lambda), crude_upper(lambda)),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GaugeQuality {
    /// The working gauge equals `C_Φ` (submultiplicative `Φ` with `Φ(1) = 1`).
    Exact,
    /// The working gauge is a lower bound of `C_Φ`.
    LowerBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoydEstimate {
    pub lower_index: f64,
    pub upper_index: f64,
    /// Decades of `t` covered on each side of 1.
    pub fit_range: (f64, f64),
    pub residual: f64,
    pub gauge: GaugeQuality,
}

/// Working gauge `h(t) = gauge_lower(Φ, 1/t)`.
pub fn working_gauge(phi: &YoungFunction, t: f64) -> Result<f64> {
    gauge_lower(phi, 1.0 / t, &default_mu_grid())
}

/// Log-log slopes of `h` over the outer two decades of `[10^-d, 10^d]`.
pub fn boyd_indices(phi: &YoungFunction, decades: f64) -> Result<BoydEstimate> {
    if !(decades >= 3.0 && decades.is_finite()) {
        return Err(Error::InvalidArgument(format!("need at least 3 decades each side, got {decades}")));
    }
    let fit = |lo_exp: f64, hi_exp: f64| -> Result<(f64, f64)> {
        let ts = log_space(10f64.powf(lo_exp), 10f64.powf(hi_exp), 21);
        let mut lx = Vec::with_capacity(ts.len());
        let mut ly = Vec::with_capacity(ts.len());
        for t in ts {
            lx.push(t.ln());
            ly.push(working_gauge(phi, t)?.ln());
        }
        let (slope, _, rms) = linear_fit(&lx, &ly);
        Ok((slope, rms))
    };
    let (lower_index, r0) = fit(-decades, -decades + 2.0)?;
    let (upper_index, r1) = fit(decades - 2.0, decades)?;
    let residual = r0.max(r1);
    if residual > MAX_FIT_RESIDUAL {
        return Err(Error::PoorFit { residual, limit: MAX_FIT_RESIDUAL });
    }
    let gauge = match phi.kind() {
        YoungKind::Power { .. } => GaugeQuality::Exact,
        _ => GaugeQuality::LowerBound,
    };
    Ok(BoydEstimate { lower_index, upper_index, fit_range: (decades, decades), residual, gauge })
}

/// `W(t) = C_{Φ₃}(1/t) C_{Φ₁}(t) C_{Φ₂}(t)` with upper gauges.
pub fn weight_w(phi1: &YoungFunction, phi2: &YoungFunction, phi3: &YoungFunction, t: f64) -> Result<f64> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidArgument(format!("t must be > 0, got {t}")));
    }
    Ok(gauge_upper_auto(phi3, 1.0 / t)? * gauge_upper_auto(phi1, t)? * gauge_upper_auto(phi2, t)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn power(p: f64) -> YoungFunction {
        YoungFunction::power(p).unwrap()
    }

    #[test]
    fn lower_examples() {
        let mu = default_mu_grid();
        assert!((gauge_lower(&power(2.0), 4.0, &mu).unwrap() - 0.5).abs() < 1e-12);
        for phi in [power(3.0), YoungFunction::exp_minus_one()] {
            assert_eq!(gauge_lower(&phi, 1.0, &mu).unwrap(), 1.0);
        }
    }

    #[test]
    fn lower_exp_matches_direct_scan() {
        let mu = log_space(1e-6, 1e6, 4096);
        let got = gauge_lower(&YoungFunction::exp_minus_one(), 2.0, &mu).unwrap();
        let want = mu.iter().map(|m| m.ln_1p() / (2.0 * m).ln_1p()).fold(0.0, f64::max);
        assert_eq!(got, want);
    }

    #[test]
    fn lower_needs_finite_ratio() {
        let phi = YoungFunction::indicator_window(1.0).unwrap();
        assert!(gauge_lower(&phi, 2.0, &[1.0]).is_ok());
        assert!(matches!(gauge_lower(&power(2.0), 2.0, &[]), Err(Error::NoFiniteRatio)));
    }

    #[test]
    fn upper_examples() {
        assert!((gauge_upper_auto(&power(2.0), 4.0).unwrap() - 0.5).abs() < 1e-15);
        let none = Certificates::default();
        assert_eq!(gauge_upper(&YoungFunction::exp_minus_one(), 0.5, &none).unwrap(), 2.0);
        assert_eq!(gauge_upper_auto(&power(1.0), 8.0).unwrap(), 0.125);
    }

    #[test]
    fn bad_certificate_reports_witness() {
        let certs = Certificates { minorant: Some(power(3.0)), majorant: None };
        match gauge_upper(&power(2.0), 2.0, &certs) {
            Err(Error::CertificateViolated { s, .. }) => assert!(s > 1.0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn boyd_for_powers() {
        for (p, want) in [(2.0, 0.5), (1.0, 1.0)] {
            let b = boyd_indices(&power(p), 4.0).unwrap();
            assert!((b.lower_index - want).abs() < 1e-6, "{b:?}");
            assert!((b.upper_index - want).abs() < 1e-6, "{b:?}");
            assert_eq!(b.gauge, GaugeQuality::Exact);
        }
        assert!(boyd_indices(&power(2.0), 2.0).is_err());
    }

    #[test]
    fn weight_examples() {
        let (p2, p1) = (power(2.0), power(1.0));
        assert!((weight_w(&p2, &p2, &p1, 4.0).unwrap() - 1.0).abs() < 1e-14);
        let p4 = power(4.0);
        for t in [0.25, 3.0, 10.0] {
            let w = weight_w(&p4, &p4, &p1, t).unwrap();
            assert!((w - t.sqrt()).abs() < 1e-12 * t.sqrt(), "{t}: {w}");
        }
        let e = YoungFunction::exp_minus_one();
        assert_eq!(weight_w(&e, &p2, &p1, 1.0).unwrap(), 1.0);
    }
}
