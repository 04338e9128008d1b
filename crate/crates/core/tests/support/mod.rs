//! Oracles shared by the integration tests. Nothing here goes through the
//! barycentric or Gauss–Legendre code paths of the library.

#![allow(dead_code)]

/// Lagrange basis function `l_j(x)` from the raw product definition.
pub fn direct_basis(points: &[f64], j: usize, x: f64) -> f64 {
    points.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &ck)| (x - ck) / (points[j] - ck)).product()
}

/// Adaptive Simpson quadrature with Richardson correction.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, 60)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// Direct Lagrange interpolant `sum_j f_j l_j(x)`.
pub fn direct_interpolant(points: &[f64], values: &[f64], x: f64) -> f64 {
    (0..points.len()).map(|j| values[j] * direct_basis(points, j, x)).sum()
}

/// `l_j'(c_i)` for `i != j` by the product rule, without barycentric weights.
pub fn direct_basis_derivative_at_node(points: &[f64], j: usize, i: usize) -> f64 {
    assert_ne!(i, j);
    let num: f64 = (0..points.len()).filter(|&k| k != i && k != j).map(|k| points[i] - points[k]).product();
    let den: f64 = (0..points.len()).filter(|&k| k != j).map(|k| points[j] - points[k]).product();
    num / den
}
