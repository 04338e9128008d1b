//! Brent's method on a sign-change bracket.

use crate::error::{Error, Result};

/// A converged root together with the final bracket that encloses it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    /// Width of the final enclosing bracket; zero when `f(x) == 0` exactly.
    pub bracket_width: f64,
    pub residual: f64,
}

const MAX_ITER: usize = 200;

/// Finds a zero of `f` in `[lo, hi]`, which must carry a sign change.
///
/// Iterates until the enclosing bracket is no wider than
/// `4 eps |x| + xtol`, or `f` vanishes exactly.
pub fn brent<F>(f: F, lo: f64, hi: f64, xtol: f64) -> Result<Root>
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(Root { x: a, bracket_width: 0.0, residual: 0.0 });
    }
    if fb == 0.0 {
        return Ok(Root { x: b, bracket_width: 0.0, residual: 0.0 });
    }
    if !(fa.is_finite() && fb.is_finite()) || fa.signum() == fb.signum() {
        return Err(Error::Bracket { lo, hi, f_lo: fa, f_hi: fb });
    }

    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..MAX_ITER {
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
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let half = 0.5 * (c - b);
        if half.abs() <= tol || fb == 0.0 {
            let width = if fb == 0.0 { 0.0 } else { (c - b).abs() };
            return Ok(Root { x: b, bracket_width: width, residual: fb.abs() });
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            // inverse quadratic interpolation, or secant when only two points differ
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * half * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * half * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let bound = (3.0 * half * q - (tol * q).abs()).min((e * q).abs());
            if 2.0 * p < bound {
                e = d;
                d = p / q;
            } else {
                d = half;
                e = d;
            }
        } else {
            d = half;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(half) };
        fb = f(b);
    }
    Ok(Root { x: b, bracket_width: (c - b).abs(), residual: fb.abs() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_square_root_of_two() {
        let r = brent(|x| x * x - 2.0, 0.0, 2.0, 1e-16).unwrap();
        assert!((r.x - 2f64.sqrt()).abs() < 1e-15);
        assert!(r.bracket_width <= 1e-15);
    }

    #[test]
    fn exact_endpoint_root() {
        let r = brent(|x| x - 1.0, 1.0, 2.0, 0.0).unwrap();
        assert_eq!(r.x, 1.0);
        assert_eq!(r.bracket_width, 0.0);
    }

    #[test]
    fn rejects_bracket_without_sign_change() {
        let err = brent(|x| x * x + 1.0, -1.0, 1.0, 0.0).unwrap_err();
        assert!(matches!(err, Error::Bracket { .. }));
    }

    #[test]
    fn handles_flat_and_steep_functions() {
        let r = brent(|x: f64| (x - 0.3).powi(3), 0.0, 1.0, 1e-16).unwrap();
        assert!((r.x - 0.3).abs() < 1e-5);
        let r = brent(|x: f64| (50.0 * (x - 0.7)).tanh(), -1.0, 1.0, 1e-16).unwrap();
        assert!((r.x - 0.7).abs() < 1e-15);
    }
}
