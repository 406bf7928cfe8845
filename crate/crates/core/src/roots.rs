//! Scalar root finding and maximization used across the crate.

/// Locates the boundary of a monotone predicate on `[lo, hi]`.
///
/// `pred(lo)` must be false and `pred(hi)` true. Returns the final
/// `(lo, hi)` pair once `hi - lo <= rel_tol * hi` (or the interval stops
/// shrinking in floating point). Midpoints are geometric while the bracket
/// spans more than a factor of four, so very wide brackets converge fast.
pub fn bisect_boundary<P>(mut lo: f64, mut hi: f64, rel_tol: f64, mut pred: P) -> (f64, f64)
where
    P: FnMut(f64) -> bool,
{
    for _ in 0..2000 {
        if hi - lo <= rel_tol * hi.abs() {
            break;
        }
        let mid = if lo > 0.0 && hi > 4.0 * lo {
            (lo * hi).sqrt()
        } else {
            lo + 0.5 * (hi - lo)
        };
        if mid <= lo || mid >= hi {
            break;
        }
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}

/// Golden-section maximization of a unimodal function on `[a, b]`.
///
/// Returns `(argmax, max)`. Ties resolve toward the lower end.
pub fn golden_max<F>(mut a: f64, mut b: f64, iters: usize, f: F) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..iters {
        if (b - a) <= 1e-15 * b.abs().max(1e-300) {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let (fa, fb) = (f(a), f(b));
    let mut best = (a, fa);
    for cand in [(c, fc), (d, fd), (b, fb)] {
        if cand.1 > best.1 {
            best = cand;
        }
    }
    best
}

/// Log-spaced points on `[lo, hi]`, both ends included.
pub fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi >= lo && n >= 2);
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| {
            if i == 0 {
                lo
            } else if i == n - 1 {
                hi
            } else {
                (a + (b - a) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

/// Least-squares line through `(x, y)`: returns `(slope, intercept, rms_residual)`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    assert_eq!(x.len(), y.len());
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (a, b) in x.iter().zip(y) {
        sxx += (a - mx) * (a - mx);
        sxy += (a - mx) * (b - my);
    }
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = my - slope * mx;
    let rss: f64 = x
        .iter()
        .zip(y)
        .map(|(a, b)| {
            let r = b - (slope * a + intercept);
            r * r
        })
        .sum();
    (slope, intercept, (rss / n).sqrt())
}
