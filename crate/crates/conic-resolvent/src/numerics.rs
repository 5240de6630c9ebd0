//! Shared numerical helpers: quadrature on uniform grids, adaptive Simpson
//! integration, cutoff functions, finite differences, and least-squares fits.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Cubic smoothstep: 0 for `x <= edge0`, 1 for `x >= edge1`, C^1 in between.
pub fn smoothstep(edge0: f64, edge1: f64, x: f64) -> f64 {
    debug_assert!(edge1 > edge0);
    let t = ((x - edge0) / (edge1 - edge0)).clamp(0.0, 1.0);
    t * t * (3.0 - 2.0 * t)
}

/// `n` logarithmically spaced points from `a` to `b` inclusive (`a, b > 0`).
pub fn logspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(a > 0.0 && b > 0.0 && n >= 2, "logspace needs a,b > 0 and n >= 2");
    let (la, lb) = (a.ln(), b.ln());
    let step = (lb - la) / (n - 1) as f64;
    (0..n).map(|k| (la + step * k as f64).exp()).collect()
}

/// Trapezoid rule on a uniform grid with spacing `h`.
pub fn trapezoid(values: &[f64], h: f64) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let inner: f64 = values[1..values.len() - 1].iter().sum();
    h * (0.5 * values[0] + inner + 0.5 * values[values.len() - 1])
}

/// Centered first derivative on a uniform grid (second order; one-sided
/// second-order stencils at the ends).
pub fn grad_uniform(f: &[Complex64], h: f64) -> Vec<Complex64> {
    let n = f.len();
    assert!(n >= 3, "grad_uniform needs at least 3 points");
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    out[0] = (-1.5 * f[0] + 2.0 * f[1] - 0.5 * f[2]) / h;
    for k in 1..n - 1 {
        out[k] = (f[k + 1] - f[k - 1]) / (2.0 * h);
    }
    out[n - 1] = (1.5 * f[n - 1] - 2.0 * f[n - 2] + 0.5 * f[n - 3]) / h;
    out
}

/// Cumulative integral `A_k = int_{t_0}^{t_k} f` on a uniform grid:
/// trapezoid sums with an endpoint-gradient correction (Euler–Maclaurin),
/// globally fourth-order on smooth integrands.
pub fn cumtrapz_corrected(f: &[Complex64], h: f64) -> Vec<Complex64> {
    let n = f.len();
    assert!(n >= 3, "cumtrapz_corrected needs at least 3 points");
    let df = grad_uniform(f, h);
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 1..n {
        acc += 0.5 * h * (f[k - 1] + f[k]);
        out[k] = acc - h * h / 12.0 * (df[k] - df[0]);
    }
    out
}

/// Adaptive Simpson quadrature for complex-valued integrands on `[a, b]`.
///
/// Splits until the Richardson error estimate of each panel is below the
/// proportionally allocated tolerance or the depth cap is reached.
pub fn adaptive_simpson<F>(f: &F, a: f64, b: f64, tol: f64, max_depth: u32) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    fn simpson(fa: Complex64, fm: Complex64, fb: Complex64, h: f64) -> Complex64 {
        (fa + 4.0 * fm + fb) * (h / 6.0)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> Complex64>(
        f: &F,
        a: f64,
        b: f64,
        fa: Complex64,
        fm: Complex64,
        fb: Complex64,
        whole: Complex64,
        tol: f64,
        depth: u32,
    ) -> Result<Complex64> {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, m - a);
        let right = simpson(fm, frm, fb, b - m);
        let delta = left + right - whole;
        if delta.norm() <= 15.0 * tol || (b - a) < 1e-300 {
            return Ok(left + right + delta / 15.0);
        }
        if depth == 0 {
            return Err(Error::Numerics(format!(
                "adaptive Simpson depth exhausted on [{a:e}, {b:e}]"
            )));
        }
        let l = recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?;
        let r = recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?;
        Ok(l + r)
    }

    if !(b > a) {
        return Err(Error::Domain(format!("bad interval [{a}, {b}]")));
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(fa, fm, fb, b - a);
    recurse(f, a, b, fa, fm, fb, whole, tol, max_depth)
}

/// Ordinary least squares for `y = slope * x + intercept`.
/// Returns `(slope, intercept, max |residual|)`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Result<(f64, f64, f64)> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::Domain("linear_fit needs >= 2 matched points".into()));
    }
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| x * y).sum();
    let det = n * sxx - sx * sx;
    if det.abs() < 1e-300 {
        return Err(Error::Numerics("degenerate abscissae in linear_fit".into()));
    }
    let slope = (n * sxy - sx * sy) / det;
    let intercept = (sy - slope * sx) / n;
    let resid = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - slope * x - intercept).abs())
        .fold(0.0f64, f64::max);
    Ok((slope, intercept, resid))
}

/// Least-squares slope of `ln y` against `ln x` (power-law exponent fit).
/// Returns `(exponent, ln-intercept, max |ln-residual|)`.
pub fn fit_log_slope(xs: &[f64], ys: &[f64]) -> Result<(f64, f64, f64)> {
    if xs.iter().any(|&x| x <= 0.0) || ys.iter().any(|&y| y <= 0.0) {
        return Err(Error::Domain("fit_log_slope needs positive data".into()));
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    linear_fit(&lx, &ly)
}

/// Bisection root finder for a continuous scalar function with a sign
/// change on `[a, b]`; refines with secant steps once the bracket is tight.
pub fn find_root<F>(f: &F, a: f64, b: f64, tol: f64, max_iter: u32) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut fa = f(a)?;
    let fb = f(b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Config(format!(
            "no sign change on bracket [{a}, {b}]: f(a)={fa:.3e}, f(b)={fb:.3e}"
        )));
    }
    let (mut lo, mut hi) = (a, b);
    for _ in 0..max_iter {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid)?;
        if fm == 0.0 || (hi - lo) < tol {
            return Ok(mid);
        }
        if fm.signum() == fa.signum() {
            lo = mid;
            fa = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
