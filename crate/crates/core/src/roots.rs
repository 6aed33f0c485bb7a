//! Bracketing root search on sampled scalar functions.
//!
//! Sign changes between consecutive samples are refined by bisection. A sample
//! that is a local minimum of `|f|` without a sign change is refined by a
//! golden-section search; if the refined minimum crosses zero both roots are
//! bracketed, and if it only touches zero within `touch_tol` it is reported as
//! a (double) root.

const GOLDEN: f64 = 0.618_033_988_749_894_8;

pub(crate) fn bisect<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, mut flo: f64, xtol: f64) -> f64 {
    for _ in 0..200 {
        if (hi - lo).abs() <= xtol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Minimizes `s * f` on `[lo, hi]`, returning `(x, f(x))`.
fn golden_min<F: Fn(f64) -> f64>(f: &F, s: f64, mut lo: f64, mut hi: f64, xtol: f64) -> (f64, f64) {
    let mut x1 = hi - GOLDEN * (hi - lo);
    let mut x2 = lo + GOLDEN * (hi - lo);
    let mut f1 = s * f(x1);
    let mut f2 = s * f(x2);
    for _ in 0..200 {
        if hi - lo <= xtol {
            break;
        }
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - GOLDEN * (hi - lo);
            f1 = s * f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + GOLDEN * (hi - lo);
            f2 = s * f(x2);
        }
        if f1 <= 0.0 {
            return (x1, f(x1));
        }
        if f2 <= 0.0 {
            return (x2, f(x2));
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct ScanOptions {
    pub xtol: f64,
    pub touch_tol: f64,
    pub first_only: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            xtol: 1e-14,
            touch_tol: 1e-11,
            first_only: false,
        }
    }
}

/// Roots of `f` given samples `fs` at ascending abscissae `xs`.
pub(crate) fn roots_from_samples<F: Fn(f64) -> f64>(
    f: &F,
    xs: &[f64],
    fs: &[f64],
    opts: ScanOptions,
) -> Vec<f64> {
    debug_assert_eq!(xs.len(), fs.len());
    let n = xs.len();
    let mut roots = Vec::new();
    let xtol = |x: f64| opts.xtol * (1.0 + x.abs());
    for i in 0..n {
        if fs[i] == 0.0 {
            roots.push(xs[i]);
        } else if i + 1 < n && fs[i + 1] != 0.0 && (fs[i] < 0.0) != (fs[i + 1] < 0.0) {
            roots.push(bisect(f, xs[i], xs[i + 1], fs[i], xtol(xs[i])));
        } else if i > 0
            && i + 1 < n
            && fs[i].abs() < fs[i - 1].abs()
            && fs[i].abs() <= fs[i + 1].abs()
            && (fs[i - 1] < 0.0) == (fs[i] < 0.0)
            && (fs[i + 1] < 0.0) == (fs[i] < 0.0)
        {
            let s = fs[i].signum();
            let (xm, fm) = golden_min(f, s, xs[i - 1], xs[i + 1], xtol(xs[i]));
            if s * fm < 0.0 {
                roots.push(bisect(f, xs[i - 1], xm, fs[i - 1], xtol(xs[i])));
                roots.push(bisect(f, xm, xs[i + 1], fm, xtol(xs[i])));
            } else if fm.abs() <= opts.touch_tol {
                roots.push(xm);
            }
        }
        if opts.first_only && !roots.is_empty() {
            break;
        }
    }
    roots.sort_by(|a, b| a.total_cmp(b));
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * (1.0 + a.abs()));
    if opts.first_only {
        roots.truncate(1);
    }
    roots
}

/// Samples `f` on a uniform grid of `n + 1` points over `[lo, hi]` and returns
/// its roots.
pub(crate) fn scan_roots<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, n: usize, opts: ScanOptions) -> Vec<f64> {
    let n = n.max(2);
    let h = (hi - lo) / n as f64;
    let xs: Vec<f64> = (0..=n).map(|i| if i == n { hi } else { lo + h * i as f64 }).collect();
    if opts.first_only {
        // Evaluate lazily in blocks so an early root does not pay for the whole grid.
        let block = 64;
        let mut start = 0;
        while start <= n {
            let end = (start + block).min(n);
            let lo_i = start.saturating_sub(1);
            let sub_x = &xs[lo_i..=end];
            let sub_f: Vec<f64> = sub_x.iter().map(|&x| f(x)).collect();
            let r = roots_from_samples(f, sub_x, &sub_f, opts);
            if !r.is_empty() {
                return r;
            }
            if end == n {
                break;
            }
            start = end;
        }
        return Vec::new();
    }
    let fs: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    roots_from_samples(f, &xs, &fs, opts)
}
