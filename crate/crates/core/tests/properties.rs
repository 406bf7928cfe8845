use num_complex::Complex64;
use orlicz_lab::dilation_gauge::{crude_lower, crude_upper, default_mu_grid, gauge_upper_auto};
use orlicz_lab::young::young_pointwise_defect;
use orlicz_lab::{
    dilate, evaluate_bm, gauge_lower, luxemburg, make_bandlimited, Grid, Interval, Method, Profile, SampledFunction,
    Symbol, YoungFunction,
};
use proptest::prelude::*;
use std::f64::consts::PI;
use std::sync::OnceLock;

fn grid() -> Grid {
    Grid::new(16.0, 1024).unwrap()
}

fn gauss(g: Grid, c: f64, x0: f64, s: f64) -> SampledFunction {
    SampledFunction::from_real_fn(g, |x| c * (-PI * ((x - x0) / s).powi(2)).exp())
}

fn young_family() -> impl Strategy<Value = YoungFunction> {
    prop_oneof![
        (1.0f64..5.0).prop_map(|p| YoungFunction::power(p).unwrap()),
        (1.2f64..5.0).prop_map(|p| YoungFunction::power_over_p(p).unwrap()),
        Just(YoungFunction::exp_minus_one()),
    ]
}

fn cube_and_complement() -> &'static (YoungFunction, YoungFunction) {
    static PAIR: OnceLock<(YoungFunction, YoungFunction)> = OnceLock::new();
    PAIR.get_or_init(|| {
        let phi = YoungFunction::power(3.0).unwrap();
        let psi = phi.complement(100.0, 4096).unwrap();
        (phi, psi)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_is_right_inverse(phi in young_family(), y in 1e-6f64..1e6) {
        let x = phi.inverse(y);
        prop_assert!((phi.eval(x) - y).abs() <= 1e-9 * y);
    }

    #[test]
    fn complementary_sandwich(x in 1e-3f64..1e3) {
        // x ≤ Φ⁻¹(x)Ψ⁻¹(x) ≤ 2x
        let (phi, psi) = cube_and_complement();
        let prod = phi.inverse(x) * psi.inverse(x);
        prop_assert!(prod >= x * (1.0 - 1e-9), "{prod} < {x}");
        prop_assert!(prod <= 2.0 * x * (1.0 + 1e-9), "{prod} > 2·{x}");
    }

    #[test]
    fn young_inequality_closed_form(p in 1.2f64..5.0, x in 0.0f64..20.0, y in 0.0f64..20.0) {
        // (x^p/p)* = y^q/q
        let q = p / (p - 1.0);
        let phi = YoungFunction::power_over_p(p).unwrap();
        let psi = YoungFunction::power_over_p(q).unwrap();
        let scale = 1.0 + phi.eval(x) + psi.eval(y);
        prop_assert!(young_pointwise_defect(&phi, &psi, x, y) <= 1e-12 * scale);
    }

    #[test]
    fn numeric_complement_matches_closed_form(p in 1.3f64..4.0, y in 0.01f64..5.0) {
        let q = p / (p - 1.0);
        let psi = YoungFunction::power_over_p(p).unwrap().complement(100.0, 4096).unwrap();
        let want = y.powf(q) / q;
        prop_assert!((psi.eval(y) - want).abs() <= 1e-6 * (1.0 + want));
    }

    #[test]
    fn norm_is_homogeneous(phi in young_family(), c in 0.05f64..20.0, s in 0.5f64..3.0) {
        let g = grid();
        let f = gauss(g, 1.0, 0.0, s);
        let a = luxemburg(&f.scale(Complex64::new(c, 0.0)), &phi).unwrap();
        let b = luxemburg(&f, &phi).unwrap();
        prop_assert!((a - c * b).abs() <= 1e-9 * c * b);
    }

    #[test]
    fn norm_triangle_inequality(phi in young_family(), x0 in -4.0f64..4.0, s in 0.5f64..2.0, t in 0.5f64..2.0) {
        let g = grid();
        let f = gauss(g, 1.0, 0.0, s);
        let h = gauss(g, -1.5, x0, t);
        let lhs = luxemburg(&f.add(&h).unwrap(), &phi).unwrap();
        let rhs = luxemburg(&f, &phi).unwrap() + luxemburg(&h, &phi).unwrap();
        prop_assert!(lhs <= rhs * (1.0 + 1e-9));
    }

    #[test]
    fn norm_is_translation_invariant(phi in young_family(), k in -200i64..200) {
        let g = grid();
        let f = gauss(g, 1.0, 0.0, 1.0);
        let shifted = gauss(g, 1.0, k as f64 * g.dx(), 1.0);
        let a = luxemburg(&f, &phi).unwrap();
        let b = luxemburg(&shifted, &phi).unwrap();
        prop_assert!((a - b).abs() <= 1e-9 * a);
    }

    #[test]
    fn power_norm_dilation(p in 1.0f64..5.0, lambda in 0.5f64..2.0) {
        // N_p(f(λ·)) = λ^{-1/p} N_p(f)
        let g = grid();
        let phi = YoungFunction::power(p).unwrap();
        let f = gauss(g, 1.0, 0.0, 1.0);
        let d = gauss(g, 1.0, 0.0, 1.0 / lambda);
        let a = luxemburg(&d, &phi).unwrap();
        let b = luxemburg(&f, &phi).unwrap();
        prop_assert!((a - lambda.powf(-1.0 / p) * b).abs() <= 1e-8 * a);
    }

    #[test]
    fn hoelder_for_powers(p1 in 1.0f64..4.0, p2 in 1.0f64..4.0, s in 0.5f64..2.0, x0 in -2.0f64..2.0) {
        let p3 = 1.0 / (1.0 / p1 + 1.0 / p2);
        prop_assume!(p3 >= 1.0);
        let g = grid();
        let f = gauss(g, 1.0, 0.0, s);
        let h = SampledFunction::indicator(g, x0, x0 + 2.0).unwrap();
        let lhs = luxemburg(&f.mul(&h).unwrap(), &YoungFunction::power(p3).unwrap()).unwrap();
        let rhs = luxemburg(&f, &YoungFunction::power(p1).unwrap()).unwrap()
            * luxemburg(&h, &YoungFunction::power(p2).unwrap()).unwrap();
        prop_assert!(lhs <= rhs * (1.0 + 1e-9));
    }

    #[test]
    fn gauge_bounds_are_ordered(phi in young_family(), lambda in 0.05f64..20.0) {
        let lo = gauge_lower(&phi, lambda, &default_mu_grid()).unwrap();
        let hi = gauge_upper_auto(&phi, lambda).unwrap();
        prop_assert!(crude_lower(lambda) <= lo * (1.0 + 1e-9));
        prop_assert!(lo <= hi * (1.0 + 1e-9), "lower {lo} > upper {hi}");
        prop_assert!(hi <= crude_upper(lambda) * (1.0 + 1e-9));
    }

    #[test]
    fn gauge_is_submultiplicative(phi in young_family(), a in 0.1f64..10.0, b in 0.1f64..10.0) {
        // ratio(ab, μ) = ratio(b, μ)·ratio(a, bμ), so h_G(ab) ≤ h_G(b)·h_{G ∪ bG}(a)
        let mu = default_mu_grid();
        let mut wide: Vec<f64> = mu.iter().flat_map(|&m| [m, b * m]).collect();
        wide.sort_by(f64::total_cmp);
        let ab = gauge_lower(&phi, a * b, &mu).unwrap();
        let prod = gauge_lower(&phi, a, &wide).unwrap() * gauge_lower(&phi, b, &mu).unwrap();
        prop_assert!(ab <= prod * (1.0 + 1e-9));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn gauges_are_nonincreasing(phi in young_family(), lambda in 0.05f64..10.0, step in 1.01f64..2.0) {
        let mu = default_mu_grid();
        prop_assert!(gauge_lower(&phi, lambda * step, &mu).unwrap() <= gauge_lower(&phi, lambda, &mu).unwrap() * (1.0 + 1e-9));
        prop_assert!(gauge_upper_auto(&phi, lambda * step).unwrap() <= gauge_upper_auto(&phi, lambda).unwrap() * (1.0 + 1e-9));
    }

    #[test]
    fn dilation_respects_upper_gauge_bandlimited(
        phi in young_family(),
        lambda in 1.0f64..2.0,
        w in 1.0f64..3.0,
        shift in -0.5f64..0.5,
    ) {
        // Smooth bump spectrum so f decays fast. The odd part keeps |f| away from zero,
        // where |f| has kinks the trapezoid rule resolves only to O(Δx²).
        // λ < 1 would stretch the tails off the grid; the indicator case covers it.
        let g = Grid::new(32.0, 4096).unwrap();
        let bump = move |xi: f64| {
            let z = (xi - shift) / w;
            let v = if z.abs() < 1.0 { (1.0 - 1.0 / (1.0 - z * z)).exp() * (1.0 + 0.8 * z) } else { 0.0 };
            Complex64::new(v, 0.0)
        };
        let f = make_bandlimited(g, Interval::new(shift - w, shift + w), bump).unwrap();
        let d = dilate(&f, lambda).unwrap();
        let ratio = luxemburg(&d, &phi).unwrap() / luxemburg(&f, &phi).unwrap();
        prop_assert!(ratio <= gauge_upper_auto(&phi, lambda).unwrap() * (1.0 + 1e-6), "ratio {ratio}");
    }

    #[test]
    fn dilation_respects_upper_gauge_indicator(phi in young_family(), k in -2i32..=2, lo in -16i64..0, len in 1i64..16) {
        // endpoints on multiples of 4Δx keep the dilated indicator node-aligned for λ = 2^k
        let g = grid();
        let lambda = 2f64.powi(k);
        let a = (lo * 4) as f64 * g.dx();
        let f = SampledFunction::indicator(g, a, a + (len * 4) as f64 * g.dx()).unwrap();
        let d = dilate(&f, lambda).unwrap();
        let ratio = luxemburg(&d, &phi).unwrap() / luxemburg(&f, &phi).unwrap();
        prop_assert!(ratio <= gauge_upper_auto(&phi, lambda).unwrap() * (1.0 + 1e-6), "ratio {ratio}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn bm_is_bilinear(
        re in -2.0f64..2.0,
        im in -2.0f64..2.0,
        x0 in -2.0f64..2.0,
        width in 0.3f64..2.0,
        shift in -1.0f64..1.0,
    ) {
        let g = Grid::new(8.0, 256).unwrap();
        let m = Symbol::difference(Profile::gaussian_scaled(width, shift));
        let a = Complex64::new(re, im);
        let f1 = gauss(g, 1.0, x0, 1.0);
        let f2 = gauss(g, 1.0, -x0, 0.7);
        let h = gauss(g, 1.0, 0.5, 1.2);
        for method in [Method::Direct, Method::Kernel, Method::Halfsum, Method::Convolution] {
            let lhs = evaluate_bm(&m, &f1.scale(a).add(&f2).unwrap(), &h, method).unwrap();
            let rhs = evaluate_bm(&m, &f1, &h, method).unwrap().scale(a).add(&evaluate_bm(&m, &f2, &h, method).unwrap()).unwrap();
            prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12 * (1.0 + rhs.sup_norm()));
            let lhs = evaluate_bm(&m, &h, &f1.scale(a).add(&f2).unwrap(), method).unwrap();
            let rhs = evaluate_bm(&m, &h, &f1, method).unwrap().scale(a).add(&evaluate_bm(&m, &h, &f2, method).unwrap()).unwrap();
            prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12 * (1.0 + rhs.sup_norm()));
        }
    }
}

#[test]
fn biconjugate_of_cube() {
    let (phi, psi) = cube_and_complement();
    let bi = psi.complement(300.0, 4096).unwrap();
    for i in 1..=90 {
        let x = i as f64 * 0.1;
        assert!((bi.eval(x) - phi.eval(x)).abs() <= 1e-4 * phi.eval(x), "x={x}");
    }
}

#[test]
fn norm_is_stable_under_grid_refinement() {
    let phis = [YoungFunction::power(1.0).unwrap(), YoungFunction::power(3.0).unwrap(), YoungFunction::exp_minus_one()];
    for phi in &phis {
        let coarse = luxemburg(&gauss(Grid::new(16.0, 512).unwrap(), 1.0, 0.3, 1.0), phi).unwrap();
        let fine = luxemburg(&gauss(Grid::new(32.0, 4096).unwrap(), 1.0, 0.3, 1.0), phi).unwrap();
        assert!((coarse - fine).abs() <= 1e-9 * fine, "{}: {coarse} vs {fine}", phi.label());
    }
}

#[test]
fn bm_is_stable_under_grid_refinement() {
    let m = Symbol::difference(Profile::gaussian());
    let coarse_grid = Grid::new(16.0, 512).unwrap();
    let fine_grid = Grid::new(32.0, 2048).unwrap();
    let run = |g: Grid| {
        evaluate_bm(&m, &gauss(g, 1.0, 0.4, 1.0), &gauss(g, 1.0, -0.2, 1.3), Method::Kernel).unwrap()
    };
    let coarse = run(coarse_grid);
    let fine = run(fine_grid);
    // fine dx is half the coarse dx over twice the width
    let mut worst: f64 = 0.0;
    for j in 0..coarse_grid.len() {
        let x = coarse_grid.x(j);
        let k = fine_grid.node_index(x).unwrap();
        worst = worst.max((coarse.values()[j] - fine.values()[k]).norm());
    }
    assert!(worst < 1e-12, "{worst}");
}

#[test]
fn endpoint_norms() {
    // N for |x|/2 is ½‖f‖₁; N for the height-2 window is ½‖f‖_∞
    let f = gauss(grid(), 1.7, 0.4, 0.9);
    let half = luxemburg(&f, &YoungFunction::linear(0.5).unwrap()).unwrap();
    assert!((half - 0.5 * f.l1_norm()).abs() <= 1e-9 * half);
    let w = luxemburg(&f, &YoungFunction::indicator_window(2.0).unwrap()).unwrap();
    assert!((w - 0.5 * f.sup_norm()).abs() <= 1e-9 * w, "{w} vs {}", 0.5 * f.sup_norm());
}
