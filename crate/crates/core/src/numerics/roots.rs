//! Bracketed scalar root finding: Brent's method plus a sign-change scanner
//! used to build brackets from known geometry.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum RootError {
    #[error("root not bracketed on [{a}, {b}]: f(a) = {fa:.6e}, f(b) = {fb:.6e}")]
    NotBracketed { a: f64, b: f64, fa: f64, fb: f64 },
    #[error("root finder exceeded {max_iter} iterations (best x = {x:.12e}, f = {f:.3e})")]
    MaxIterations { max_iter: usize, x: f64, f: f64 },
    #[error("function returned a non-finite value at x = {x}")]
    NonFinite { x: f64 },
}

/// Brent's method on a bracketing interval `[a, b]`.
///
/// `tol_x` is an absolute tolerance on the abscissa; convergence also stops
/// at floating-point resolution of the bracket.
pub fn brent<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    tol_x: f64,
    max_iter: usize,
) -> Result<f64, RootError> {
    let mut a = a;
    let mut b = b;
    let mut fa = f(a);
    let mut fb = f(b);
    if !fa.is_finite() {
        return Err(RootError::NonFinite { x: a });
    }
    if !fb.is_finite() {
        return Err(RootError::NonFinite { x: b });
    }
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(RootError::NotBracketed { a, b, fa, fb });
    }

    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;

    for _ in 0..max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol_x;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // inverse quadratic interpolation / secant
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if d.abs() > tol1 {
            b += d;
        } else {
            b += tol1.copysign(xm);
        }
        fb = f(b);
        if !fb.is_finite() {
            return Err(RootError::NonFinite { x: b });
        }
    }
    Err(RootError::MaxIterations {
        max_iter,
        x: b,
        f: fb,
    })
}

/// Scan `[a, b]` with `n` uniform samples and return the first subinterval
/// with a sign change (or an exact zero collapsed to a point bracket).
pub fn scan_bracket<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> Option<(f64, f64)> {
    let n = n.max(2);
    let h = (b - a) / n as f64;
    let mut x0 = a;
    let mut f0 = f(x0);
    for i in 1..=n {
        let x1 = if i == n { b } else { a + i as f64 * h };
        let f1 = f(x1);
        if f0 == 0.0 {
            return Some((x0, x0));
        }
        if f0.is_finite() && f1.is_finite() && f0.signum() != f1.signum() {
            return Some((x0, x1));
        }
        x0 = x1;
        f0 = f1;
    }
    if f0 == 0.0 {
        return Some((x0, x0));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn cubic_root() {
        let x = brent(|x| x * x * x - 2.0, 0.0, 2.0, 1e-14, 200).unwrap();
        assert_relative_eq!(x, 2.0f64.powf(1.0 / 3.0), max_relative = 1e-12);
    }

    #[test]
    fn transcendental_root() {
        let x = brent(|x: f64| x.sin() - 0.5 * x, 1.0, 2.0, 1e-14, 200).unwrap();
        assert!((x.sin() - 0.5 * x).abs() < 1e-12);
    }

    #[test]
    fn unbracketed_reported() {
        let e = brent(|x| x * x + 1.0, -1.0, 1.0, 1e-12, 100).unwrap_err();
        assert!(matches!(e, RootError::NotBracketed { .. }));
    }

    #[test]
    fn scanner_finds_bracket() {
        let (lo, hi) = scan_bracket(|x: f64| x.cos(), 0.0, 3.0, 30).unwrap();
        assert!(lo < std::f64::consts::FRAC_PI_2 && std::f64::consts::FRAC_PI_2 < hi);
    }
}
