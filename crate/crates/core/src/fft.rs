//! Shared FFT plans and the exactly-reduced phase helper.

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

type PlanKey = (usize, bool);

fn cache() -> &'static Mutex<HashMap<PlanKey, Arc<dyn Fft<f64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<PlanKey, Arc<dyn Fft<f64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Returns a cached plan; safe to call from many threads.
pub fn plan(len: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    let mut map = cache().lock().expect("fft plan cache poisoned");
    map.entry((len, inverse))
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            if inverse {
                planner.plan_fft_inverse(len)
            } else {
                planner.plan_fft_forward(len)
            }
        })
        .clone()
}

/// Unnormalized in-place DFT: forward uses e^{-2πijk/n}, inverse e^{+2πijk/n}.
pub fn dft_in_place(buf: &mut [Complex64], inverse: bool) {
    plan(buf.len(), inverse).process(buf);
}

/// e^{iπ·a·b}, with the product reduced modulo 2 before the trig call.
///
/// The product is split exactly (`a*b = p + e`) so large phases such as
/// π·λ·k² keep full relative accuracy.
pub fn cis_pi(a: f64, b: f64) -> Complex64 {
    let p = a * b;
    let e = a.mul_add(b, -p);
    let r = p.rem_euclid(2.0) + e;
    let (s, c) = (std::f64::consts::PI * r).sin_cos();
    Complex64::new(c, s)
}

/// Fractional DFT `S_j = Σ_k c_k e^{2πi α k j / n}` for `j = 0..n` (Bluestein).
pub fn fractional_dft(c: &[Complex64], alpha: f64) -> Vec<Complex64> {
    let n = c.len();
    if n == 0 {
        return Vec::new();
    }
    let nf = n as f64;
    let m = (3 * n).next_power_of_two();
    // chirp(k) = e^{iπ α k² / n}
    let chirp = |k: usize| -> Complex64 {
        let k2 = (k * k) as f64;
        cis_pi(alpha / nf, k2)
    };
    let mut a = vec![Complex64::new(0.0, 0.0); m];
    for (k, ck) in c.iter().enumerate() {
        a[k] = ck * chirp(k);
    }
    // b_j = conj(chirp(|j|)) for j in -(n-1)..(n-1), stored circularly.
    let mut b = vec![Complex64::new(0.0, 0.0); m];
    for j in 0..n {
        let v = chirp(j).conj();
        b[j] = v;
        if j > 0 {
            b[m - j] = v;
        }
    }
    dft_in_place(&mut a, false);
    dft_in_place(&mut b, false);
    for (x, y) in a.iter_mut().zip(&b) {
        *x *= y;
    }
    dft_in_place(&mut a, true);
    let scale = 1.0 / m as f64;
    (0..n).map(|j| a[j] * scale * chirp(j)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(c: &[Complex64], alpha: f64) -> Vec<Complex64> {
        let n = c.len();
        (0..n)
            .map(|j| {
                c.iter()
                    .enumerate()
                    .map(|(k, ck)| {
                        let th = 2.0 * std::f64::consts::PI * alpha * (k * j) as f64 / n as f64;
                        ck * Complex64::new(th.cos(), th.sin())
                    })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn fractional_matches_naive() {
        let c: Vec<Complex64> = (0..64)
            .map(|k| Complex64::new((k as f64 * 0.37).sin(), (k as f64 * 0.11).cos()))
            .collect();
        for alpha in [1.0, 0.5, 0.731, 2.0] {
            let fast = fractional_dft(&c, alpha);
            let slow = naive(&c, alpha);
            let err = fast
                .iter()
                .zip(&slow)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(err < 1e-11, "alpha {alpha}: {err}");
        }
    }

    #[test]
    fn cis_pi_reduces_large_products() {
        let z = cis_pi(1.0, 4096.0 * 4096.0 + 0.5);
        assert!((z - Complex64::new(0.0, 1.0)).norm() < 1e-15);
    }
}
