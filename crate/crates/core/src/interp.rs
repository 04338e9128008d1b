//! Barycentric Lagrange interpolation, the Lebesgue function and interpolation
//! error curves.
//!
//! The interpolant is evaluated with the second (true) barycentric formula
//!
//! ```text
//! L(x) = sum_i w_i f_i / (x - c_i)  /  sum_i w_i / (x - c_i)
//! ```
//!
//! which is algebraically the Lagrange form `sum_i f_i l_i(x)` but stays stable
//! for clustered nodes.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functions::TestFunction;
use crate::nodes::{golden_section_max, NodeFamily, NodeSet};

/// Node count above which weights are normalized by their largest magnitude.
const WEIGHT_RESCALE_ABOVE: usize = 41;

/// Samples per gap between consecutive breakpoints in the Lebesgue scan.
const LEBESGUE_SCAN_PER_GAP: usize = 1024;
const LEBESGUE_XTOL: f64 = 1e-9;

/// Barycentric weights `w_i = 1 / prod_{j != i} (c_i - c_j)`.
///
/// For more than 41 points the weights are divided by their largest
/// magnitude; the common factor cancels in every barycentric quotient.
///
/// ```
/// use spectral_nodes::interp::barycentric_weights;
///
/// assert_eq!(barycentric_weights(&[-1.0, 0.0, 1.0]), vec![0.5, -1.0, 0.5]);
/// ```
pub fn barycentric_weights(points: &[f64]) -> Vec<f64> {
    let mut weights: Vec<f64> = points
        .iter()
        .enumerate()
        .map(|(i, &ci)| {
            let denom: f64 = points.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &cj)| ci - cj).product();
            1.0 / denom
        })
        .collect();
    if points.len() > WEIGHT_RESCALE_ABOVE {
        let scale = weights.iter().fold(0.0f64, |m, w| m.max(w.abs()));
        weights.iter_mut().for_each(|w| *w /= scale);
    }
    weights
}

/// Index of the node `x` coincides with, if any.
fn coincident_node(points: &[f64], x: f64) -> Option<usize> {
    points.iter().position(|&c| (x - c).abs() <= 1e-15 * c.abs().max(1.0))
}

/// Fills `out[j]` with the Lagrange basis value `l_j(x)`.
pub fn lagrange_basis(points: &[f64], weights: &[f64], x: f64, out: &mut [f64]) {
    debug_assert_eq!(points.len(), weights.len());
    debug_assert_eq!(points.len(), out.len());
    if let Some(k) = coincident_node(points, x) {
        out.iter_mut().for_each(|v| *v = 0.0);
        out[k] = 1.0;
        return;
    }
    let mut denom = 0.0;
    for ((o, &c), &w) in out.iter_mut().zip(points).zip(weights) {
        *o = w / (x - c);
        denom += *o;
    }
    out.iter_mut().for_each(|v| *v /= denom);
}

/// Lagrange interpolation polynomial of sampled data on a node set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Interpolant {
    nodes: NodeSet,
    values: Vec<f64>,
    weights: Vec<f64>,
}

impl Interpolant {
    pub fn new(nodes: &NodeSet, values: Vec<f64>) -> Result<Self> {
        if values.len() != nodes.len() {
            return Err(Error::LengthMismatch { expected: nodes.len(), actual: values.len() });
        }
        Ok(Self { weights: barycentric_weights(nodes.nodes()), nodes: nodes.clone(), values })
    }

    /// Interpolates `f` sampled at the nodes.
    pub fn from_fn(nodes: &NodeSet, f: impl Fn(f64) -> f64) -> Self {
        let values = nodes.nodes().iter().map(|&c| f(c)).collect();
        Self::new(nodes, values).expect("one sample per node")
    }

    pub fn nodes(&self) -> &NodeSet {
        &self.nodes
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn eval(&self, x: f64) -> f64 {
        let points = self.nodes.nodes();
        if let Some(k) = coincident_node(points, x) {
            return self.values[k];
        }
        let (mut num, mut den) = (0.0, 0.0);
        for ((&c, &w), &f) in points.iter().zip(&self.weights).zip(&self.values) {
            let t = w / (x - c);
            num += t * f;
            den += t;
        }
        num / den
    }
}

/// The Lebesgue function `F(x) = sum_k |l_k(x)|` of a node set, with the
/// barycentric weights computed once.
#[derive(Debug, Clone)]
pub struct LebesgueFunction<'a> {
    points: &'a [f64],
    weights: Vec<f64>,
}

impl<'a> LebesgueFunction<'a> {
    pub fn new(nodes: &'a NodeSet) -> Self {
        Self { points: nodes.nodes(), weights: barycentric_weights(nodes.nodes()) }
    }

    pub fn eval(&self, x: f64) -> f64 {
        if coincident_node(self.points, x).is_some() {
            return 1.0;
        }
        let (mut abs_sum, mut sum) = (0.0, 0.0);
        for (&c, &w) in self.points.iter().zip(&self.weights) {
            let t = w / (x - c);
            abs_sum += t.abs();
            sum += t;
        }
        abs_sum / sum.abs()
    }
}

/// `F(x) = sum_k |l_k(x)|`. Equals 1 at every node.
pub fn lebesgue_function(nodes: &NodeSet, x: f64) -> f64 {
    LebesgueFunction::new(nodes).eval(x)
}

/// Maximum of the Lebesgue function and both common conventions for the
/// Lebesgue constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LebesgueReport {
    pub family: NodeFamily,
    pub s: usize,
    pub max_f: f64,
    pub argmax: f64,
    /// `max F - 1`, a convention some published tables use.
    pub lambda_minus_one: f64,
    /// `max F`, the usual Lebesgue constant.
    pub lambda_conventional: f64,
}

/// Maximizes the Lebesgue function over the node interval.
///
/// Each gap between consecutive breakpoints (the nodes plus the interval
/// ends) is scanned with 1024 samples and the best sample refined by
/// golden-section search to `1e-9` in `x`.
pub fn lebesgue_constant(nodes: &NodeSet) -> LebesgueReport {
    let lf = LebesgueFunction::new(nodes);
    let (a, b) = nodes.interval();
    let mut breaks = Vec::with_capacity(nodes.len() + 2);
    breaks.push(a);
    breaks.extend_from_slice(nodes.nodes());
    breaks.push(b);
    breaks.dedup();

    let per_gap: Vec<(f64, f64)> = breaks.par_windows(2).map(|gap| gap_maximum(&lf, gap[0], gap[1])).collect();
    let (argmax, max_f) = per_gap.into_iter().fold((a, 1.0), |best, cand| if cand.1 > best.1 { cand } else { best });

    LebesgueReport {
        family: nodes.family(),
        s: nodes.s(),
        max_f,
        argmax,
        lambda_minus_one: max_f - 1.0,
        lambda_conventional: max_f,
    }
}

fn gap_maximum(lf: &LebesgueFunction<'_>, lo: f64, hi: f64) -> (f64, f64) {
    let n = LEBESGUE_SCAN_PER_GAP;
    let h = (hi - lo) / n as f64;
    let x_at = |k: usize| if k == n { hi } else { lo + h * k as f64 };
    let mut best = (0, lf.eval(lo));
    for k in 1..=n {
        let v = lf.eval(x_at(k));
        if v > best.1 {
            best = (k, v);
        }
    }
    let (x, v) =
        golden_section_max(|x| lf.eval(x), x_at(best.0.saturating_sub(1)), x_at((best.0 + 1).min(n)), LEBESGUE_XTOL);
    if v >= best.1 {
        (x, v)
    } else {
        (x_at(best.0), best.1)
    }
}

/// Uniform grid of `size` points on `[a, b]`, with both ends exact.
pub fn uniform_grid(a: f64, b: f64, size: usize) -> Result<Vec<f64>> {
    if size < 2 {
        return Err(Error::Grid(size));
    }
    let h = (b - a) / (size - 1) as f64;
    Ok((0..size).map(|k| if k == size - 1 { b } else { a + h * k as f64 }).collect())
}

/// `|f(x) - L(x)|` on a uniform grid over the node interval.
pub fn interp_error_curve(nodes: &NodeSet, f: TestFunction, grid_size: usize) -> Result<Vec<(f64, f64)>> {
    let (a, b) = nodes.interval();
    let grid = uniform_grid(a, b, grid_size)?;
    let ip = Interpolant::from_fn(nodes, |x| f.value(x));
    Ok(grid.into_iter().map(|x| (x, (f.value(x) - ip.eval(x)).abs())).collect())
}

/// `max |f(x) - L(x)|` on a uniform grid.
pub fn max_interp_error(nodes: &NodeSet, f: TestFunction, grid_size: usize) -> Result<f64> {
    Ok(interp_error_curve(nodes, f, grid_size)?.into_iter().fold(0.0, |m, (_, e)| m.max(e)))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Lagrange basis evaluated straight from the product definition.
    fn direct_lagrange(points: &[f64], values: &[f64], x: f64) -> f64 {
        (0..points.len())
            .map(|i| {
                let li: f64 =
                    (0..points.len()).filter(|&j| j != i).map(|j| (x - points[j]) / (points[i] - points[j])).product();
                values[i] * li
            })
            .sum()
    }

    #[test]
    fn linear_interpolation() {
        let ns = NodeSet::generate(NodeFamily::EquiSpaced, 1).unwrap();
        let ip = Interpolant::new(&ns, vec![0.0, 2.0]).unwrap();
        assert_eq!(ip.eval(0.0), 1.0);
    }

    #[test]
    fn length_mismatch() {
        let ns = NodeSet::generate(NodeFamily::Cgl, 4).unwrap();
        let err = Interpolant::new(&ns, vec![1.0; 3]).unwrap_err();
        assert_eq!(err, Error::LengthMismatch { expected: 5, actual: 3 });
    }

    #[test]
    fn reproduces_quintic_on_cgl() {
        let ns = NodeSet::generate(NodeFamily::Cgl, 5).unwrap();
        let ip = Interpolant::from_fn(&ns, |x| x.powi(5));
        for x in uniform_grid(-1.0, 1.0, 100).unwrap() {
            assert!((ip.eval(x) - x.powi(5)).abs() < 1e-13);
        }
    }

    #[test]
    fn node_samples_returned_exactly() {
        let ns = NodeSet::generate(NodeFamily::Nd1, 7).unwrap();
        let ip = Interpolant::from_fn(&ns, |x| (3.0 * x).sin());
        for (&c, &v) in ns.nodes().iter().zip(ip.values()) {
            assert_eq!(ip.eval(c), v);
        }
        let constant = Interpolant::new(&NodeSet::generate(NodeFamily::Cgl, 2).unwrap(), vec![3.0; 3]).unwrap();
        for &x in &[-0.7, 0.1, 0.99] {
            assert!((constant.eval(x) - 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn runge_agrees_with_direct_formula() {
        let ns = NodeSet::generate(NodeFamily::EquiSpaced, 10).unwrap();
        let f = TestFunction::Runge;
        let ip = Interpolant::from_fn(&ns, |x| f.value(x));
        let direct = direct_lagrange(ns.nodes(), ip.values(), 0.95);
        assert!((ip.eval(0.95) - direct).abs() < 1e-10);
    }

    #[test]
    fn barycentric_matches_direct_formula_small_s() {
        for family in NodeFamily::ALL {
            for s in 1..=12 {
                let Ok(ns) = NodeSet::generate(family, s) else { continue };
                let ip = Interpolant::from_fn(&ns, |x| (x + 0.3).exp());
                for x in uniform_grid(-1.0, 1.0, 37).unwrap() {
                    let direct = direct_lagrange(ns.nodes(), ip.values(), x);
                    assert!((ip.eval(x) - direct).abs() < 1e-12, "{family} s={s} x={x}");
                }
            }
        }
    }

    #[test]
    fn weights_alternate_in_sign() {
        for family in NodeFamily::ALL {
            for s in 1..60 {
                let Ok(ns) = NodeSet::generate(family, s) else { continue };
                let w = barycentric_weights(ns.nodes());
                for pair in w.windows(2) {
                    assert!(pair[0] * pair[1] < 0.0);
                }
            }
        }
    }

    #[test]
    fn rescaled_weights_for_large_sets() {
        let ns = NodeSet::generate(NodeFamily::Cgl, 60).unwrap();
        let w = barycentric_weights(ns.nodes());
        let max = w.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        assert_eq!(max, 1.0);
        let ip = Interpolant::from_fn(&ns, |x| x.cos());
        assert!((ip.eval(0.123) - 0.123f64.cos()).abs() < 1e-14);
    }

    #[test]
    fn lebesgue_function_examples() {
        let ns = NodeSet::generate(NodeFamily::EquiSpaced, 2).unwrap();
        assert!((lebesgue_function(&ns, 0.5) - 1.25).abs() < 1e-15);
        for &c in ns.nodes() {
            assert_eq!(lebesgue_function(&ns, c), 1.0);
        }
        for family in [NodeFamily::Cgl, NodeFamily::ScaledCheb, NodeFamily::EquiSpaced] {
            let ns = NodeSet::generate(family, 8).unwrap();
            let diff = lebesgue_function(&ns, 0.3) - lebesgue_function(&ns, -0.3);
            assert!(diff.abs() < 1e-14);
        }
    }

    #[test]
    fn lebesgue_constant_table_spot_checks() {
        let cases = [(NodeFamily::Cgl, 10, 1.4), (NodeFamily::ScaledCheb, 18, 1.4)];
        for (family, s, expected) in cases {
            let report = lebesgue_constant(&NodeSet::generate(family, s).unwrap());
            assert!((report.lambda_minus_one - expected).abs() <= 0.05, "{family} {s}: {report:?}");
            assert_eq!(report.lambda_minus_one, report.max_f - 1.0);
            assert_eq!(report.lambda_conventional, report.max_f);
        }
        // 40-digit scan + golden-section maximization of the product-form F
        let equi6 = lebesgue_constant(&NodeSet::generate(NodeFamily::EquiSpaced, 6).unwrap());
        assert!((equi6.lambda_minus_one - 3.54934178618).abs() < 1e-9);
        assert!((equi6.argmax + 0.8780639913).abs() < 1e-8);
    }

    #[test]
    fn cheb_zeros_scan_covers_outer_segments() {
        let ns = NodeSet::generate(NodeFamily::ChebZeros, 6).unwrap();
        let report = lebesgue_constant(&ns);
        // the maximum of F for Chebyshev zeros sits at the interval ends
        assert!((report.argmax.abs() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn error_curve_vanishes_at_nodes() {
        // a 7-point grid on [-1, 1] lands on the equi-spaced s = 6 nodes
        let eq = NodeSet::generate(NodeFamily::EquiSpaced, 6).unwrap();
        for (_, e) in interp_error_curve(&eq, TestFunction::Exp, 7).unwrap() {
            assert!(e <= 1e-14 * std::f64::consts::E);
        }
        assert!(matches!(interp_error_curve(&eq, TestFunction::Exp, 1), Err(Error::Grid(1))));
    }

    #[test]
    fn scaled_cheb_beats_equi_near_boundary() {
        let sc = NodeSet::generate(NodeFamily::ScaledCheb, 10).unwrap();
        let eq = NodeSet::generate(NodeFamily::EquiSpaced, 10).unwrap();
        let near_edge = |ns: &NodeSet| {
            interp_error_curve(ns, TestFunction::Exp, 2001)
                .unwrap()
                .into_iter()
                .filter(|(x, _)| x.abs() >= 0.9)
                .fold(0.0f64, |m, (_, e)| m.max(e))
        };
        assert!(near_edge(&sc) < near_edge(&eq));
    }

    #[test]
    fn runge_phenomenon_for_equispaced() {
        let e10 = max_interp_error(&NodeSet::generate(NodeFamily::EquiSpaced, 10).unwrap(), TestFunction::Runge, 2001)
            .unwrap();
        let e20 = max_interp_error(&NodeSet::generate(NodeFamily::EquiSpaced, 20).unwrap(), TestFunction::Runge, 2001)
            .unwrap();
        assert!(e20 > e10);
    }
}
