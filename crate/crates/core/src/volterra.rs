//! Collocation solver for first-kind Volterra equations
//!
//! ```text
//! int_0^t K(t, xi) u(xi) dxi = f(t),   0 <= t <= T.
//! ```
//!
//! `u` is replaced by its Lagrange interpolant on nodes `0 = c_0 < ... < c_s = T`
//! and the equation is enforced at every node, giving `A u = f` with
//! `a_ij = int_0^{c_i} l_j(xi) K(c_i, xi) dxi`.
//!
//! At `c_0 = 0` that row reads `0 = 0`. It is replaced by the equation obtained
//! from differentiating at `t = 0`, `K(0, 0) u(0) = f'(0)`, so the caller must
//! supply `f'`.

use std::f64::consts::PI;
use std::fmt;
use std::num::NonZeroUsize;
use std::str::FromStr;

use gauss_quad::legendre::GaussLegendre;
use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::interp::{barycentric_weights, lagrange_basis};
use crate::nodes::NodeSet;

/// Gauss–Legendre points used on each `[0, c_i]`.
pub const QUADRATURE_ORDER: usize = 24;

/// Relative pivot size below which the collocation matrix counts as singular.
const PIVOT_TOL: f64 = 1e-14;

pub type Kernel = Box<dyn Fn(f64, f64) -> f64 + Send + Sync>;
pub type ScalarFn = Box<dyn Fn(f64) -> f64 + Send + Sync>;

pub struct VolterraProblem {
    kernel: Kernel,
    rhs: ScalarFn,
    rhs_derivative: ScalarFn,
    nodes: NodeSet,
}

impl fmt::Debug for VolterraProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VolterraProblem").field("nodes", &self.nodes).finish_non_exhaustive()
    }
}

impl VolterraProblem {
    /// `nodes` must run from `0` to some `T > 0`.
    pub fn new(
        kernel: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        rhs: impl Fn(f64) -> f64 + Send + Sync + 'static,
        rhs_derivative: impl Fn(f64) -> f64 + Send + Sync + 'static,
        nodes: NodeSet,
    ) -> Result<Self> {
        let (a, b) = nodes.interval();
        if a != 0.0 || b.is_nan() || b <= 0.0 {
            return Err(Error::CollocationNodes(format!("interval is [{a}, {b}]")));
        }
        let pts = nodes.nodes();
        if pts[0] != 0.0 || pts[pts.len() - 1] != b {
            return Err(Error::CollocationNodes(format!("{} nodes do not include both interval ends", nodes.family())));
        }
        Ok(Self { kernel: Box::new(kernel), rhs: Box::new(rhs), rhs_derivative: Box::new(rhs_derivative), nodes })
    }

    pub fn nodes(&self) -> &NodeSet {
        &self.nodes
    }

    pub fn kernel(&self, t: f64, xi: f64) -> f64 {
        (self.kernel)(t, xi)
    }

    pub fn rhs(&self, t: f64) -> f64 {
        (self.rhs)(t)
    }

    pub fn rhs_derivative(&self, t: f64) -> f64 {
        (self.rhs_derivative)(t)
    }
}

/// Builtin kernel/right-hand-side pairs with known solutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BuiltinProblem {
    /// `K = e^{t - xi}`, `u = cos(pi xi)`,
    /// `f = (pi sin(pi t) - cos(pi t) + e^t) / (1 + pi^2)`.
    ExpKernelCosPi,
    /// `K = 1`, `u = 1`, `f = t`.
    UnitKernelConstant,
}

impl BuiltinProblem {
    pub const ALL: [BuiltinProblem; 2] = [BuiltinProblem::ExpKernelCosPi, BuiltinProblem::UnitKernelConstant];

    pub fn id(self) -> &'static str {
        match self {
            BuiltinProblem::ExpKernelCosPi => "expker-cospi",
            BuiltinProblem::UnitKernelConstant => "unit-const",
        }
    }

    /// The problem on `nodes`, which must already live on `[0, T]`.
    pub fn problem(self, nodes: NodeSet) -> Result<VolterraProblem> {
        match self {
            BuiltinProblem::ExpKernelCosPi => VolterraProblem::new(
                |t, xi| (t - xi).exp(),
                expker_cospi_rhs,
                |t| expker_cospi_rhs(t) + (PI * t).cos(),
                nodes,
            ),
            BuiltinProblem::UnitKernelConstant => VolterraProblem::new(|_, _| 1.0, |t| t, |_| 1.0, nodes),
        }
    }

    /// Exact solution `u`.
    pub fn solution(self, t: f64) -> f64 {
        match self {
            BuiltinProblem::ExpKernelCosPi => (PI * t).cos(),
            BuiltinProblem::UnitKernelConstant => 1.0,
        }
    }
}

fn expker_cospi_rhs(t: f64) -> f64 {
    (PI * (PI * t).sin() - (PI * t).cos() + t.exp()) / (1.0 + PI * PI)
}

impl fmt::Display for BuiltinProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for BuiltinProblem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BuiltinProblem::ALL.into_iter().find(|p| p.id() == s).ok_or_else(|| Error::UnknownProblem(s.to_string()))
    }
}

/// The collocation system `A u = f`.
#[derive(Debug, Clone, PartialEq)]
pub struct CollocationSystem {
    pub matrix: DMatrix<f64>,
    pub rhs: DVector<f64>,
}

/// Assembles `A` by Gauss–Legendre quadrature of order [`QUADRATURE_ORDER`]
/// on each `[0, c_i]`, with row 0 replaced by `u(0) = f'(0) / K(0, 0)`.
pub fn assemble(problem: &VolterraProblem) -> Result<CollocationSystem> {
    let k00 = problem.kernel(0.0, 0.0);
    if k00 == 0.0 || !k00.is_finite() {
        return Err(Error::KernelSingular);
    }
    let points = problem.nodes.nodes();
    let n = points.len();
    let weights = barycentric_weights(points);
    let rule = GaussLegendre::new(NonZeroUsize::new(QUADRATURE_ORDER).expect("nonzero order"));
    let rule = rule.as_node_weight_pairs();

    let rows: Vec<Vec<f64>> = (1..n)
        .into_par_iter()
        .map(|i| {
            let ci = points[i];
            let half = 0.5 * ci;
            let mut row = vec![0.0; n];
            let mut basis = vec![0.0; n];
            for &(x, w) in rule {
                let xi = half * (x + 1.0);
                lagrange_basis(points, &weights, xi, &mut basis);
                let k = problem.kernel(ci, xi);
                for (j, (acc, &l)) in row.iter_mut().zip(&basis).enumerate() {
                    let v = l * k;
                    if !v.is_finite() {
                        return Err(Error::QuadratureFailure { row: i, col: j, xi });
                    }
                    *acc += half * w * v;
                }
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;

    let mut matrix = DMatrix::zeros(n, n);
    matrix[(0, 0)] = 1.0;
    for (i, row) in rows.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            matrix[(i + 1, j)] = v;
        }
    }
    let mut rhs = DVector::from_iterator(n, points.iter().map(|&c| problem.rhs(c)));
    rhs[0] = problem.rhs_derivative(0.0) / k00;
    Ok(CollocationSystem { matrix, rhs })
}

#[derive(Debug, Clone, PartialEq)]
pub struct VolterraSolution {
    pub nodes: Vec<f64>,
    /// Approximations of `u(c_i)`.
    pub nodal_values: Vec<f64>,
    pub matrix: DMatrix<f64>,
    pub rhs: DVector<f64>,
    /// `||A||_1 ||A^{-1}||_1`.
    pub condition_estimate: f64,
    /// `max_i |(A u)_i - f_i|`.
    pub residual: f64,
}

impl VolterraSolution {
    /// `(c_i, |u(c_i) - u_i|)` per node.
    pub fn errors_against(&self, truth: impl Fn(f64) -> f64) -> Vec<(f64, f64)> {
        self.nodes.iter().zip(&self.nodal_values).map(|(&c, &v)| (c, (truth(c) - v).abs())).collect()
    }

    pub fn max_error_against(&self, truth: impl Fn(f64) -> f64) -> f64 {
        self.errors_against(truth).into_iter().fold(0.0, |m, (_, e)| m.max(e))
    }
}

fn one_norm(m: &DMatrix<f64>) -> f64 {
    m.column_iter().map(|c| c.abs().sum()).fold(0.0, f64::max)
}

/// Assembles and solves the collocation system with partially pivoted LU.
pub fn solve(problem: &VolterraProblem) -> Result<VolterraSolution> {
    let CollocationSystem { matrix, rhs } = assemble(problem)?;
    let scale = matrix.amax();
    let lu = matrix.clone().lu();
    let pivot = lu.u().diagonal().iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
    if pivot.is_nan() || pivot <= PIVOT_TOL * scale {
        return Err(Error::SingularMatrix { pivot, scale });
    }
    let u = lu.solve(&rhs).ok_or(Error::SingularMatrix { pivot, scale })?;
    let inverse = lu.try_inverse().ok_or(Error::SingularMatrix { pivot, scale })?;
    let condition_estimate = one_norm(&matrix) * one_norm(&inverse);
    let residual = (&matrix * &u - &rhs).amax();
    Ok(VolterraSolution {
        nodes: problem.nodes.nodes().to_vec(),
        nodal_values: u.as_slice().to_vec(),
        matrix,
        rhs,
        condition_estimate,
        residual,
    })
}

/// Solves `problem` and reports `(c_i, |u(c_i) - u_i|)` against `truth`.
pub fn error_report(problem: &VolterraProblem, truth: impl Fn(f64) -> f64) -> Result<Vec<(f64, f64)>> {
    Ok(solve(problem)?.errors_against(truth))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nodes::NodeFamily;

    fn unit_nodes(family: NodeFamily, s: usize) -> NodeSet {
        NodeSet::generate(family, s).unwrap().map_to_interval(0.0, 1.0).unwrap()
    }

    #[test]
    fn first_row_is_regularized() {
        let p = BuiltinProblem::ExpKernelCosPi.problem(unit_nodes(NodeFamily::Cgl, 6)).unwrap();
        let sys = assemble(&p).unwrap();
        assert_eq!(sys.matrix[(0, 0)], 1.0);
        for j in 1..7 {
            assert_eq!(sys.matrix[(0, j)], 0.0);
        }
        assert!((sys.rhs[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn unit_kernel_rows_sum_to_node() {
        let p = BuiltinProblem::UnitKernelConstant.problem(unit_nodes(NodeFamily::Nd1, 9)).unwrap();
        let sys = assemble(&p).unwrap();
        for i in 1..10 {
            let sum: f64 = sys.matrix.row(i).sum();
            assert!((sum - p.nodes().nodes()[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn constant_solution_recovered() {
        let p = BuiltinProblem::UnitKernelConstant.problem(unit_nodes(NodeFamily::Cgl, 8)).unwrap();
        let sol = solve(&p).unwrap();
        for v in &sol.nodal_values {
            assert!((v - 1.0).abs() < 1e-10);
        }
        assert!(sol.residual <= 1e-8);
    }

    #[test]
    fn zero_problem_has_zero_error() {
        let p = VolterraProblem::new(|t, xi| (t - xi).exp(), |_| 0.0, |_| 0.0, unit_nodes(NodeFamily::Cgl, 5)).unwrap();
        for (_, e) in error_report(&p, |_| 0.0).unwrap() {
            assert_eq!(e, 0.0);
        }
    }

    #[test]
    fn benchmark_with_nd1() {
        let p = BuiltinProblem::ExpKernelCosPi.problem(unit_nodes(NodeFamily::Nd1, 9)).unwrap();
        let sol = solve(&p).unwrap();
        let err = sol.max_error_against(|t| BuiltinProblem::ExpKernelCosPi.solution(t));
        assert!(err < 1e-3, "{err}");
        let report = sol.errors_against(|t| BuiltinProblem::ExpKernelCosPi.solution(t));
        assert_eq!(report[0].1, 0.0);
        assert!(report.iter().all(|(_, e)| e.is_finite() && *e >= 0.0));
    }

    #[test]
    fn rhs_derivative_is_consistent() {
        let p = BuiltinProblem::ExpKernelCosPi.problem(unit_nodes(NodeFamily::Cgl, 4)).unwrap();
        let h = 1e-6;
        for &t in &[0.1, 0.5, 0.9] {
            let fd = (p.rhs(t + h) - p.rhs(t - h)) / (2.0 * h);
            assert!((fd - p.rhs_derivative(t)).abs() < 1e-8);
        }
        assert_eq!(p.rhs(0.0), 0.0);
    }

    #[test]
    fn rejects_bad_inputs() {
        let on_canonical = NodeSet::generate(NodeFamily::Cgl, 4).unwrap();
        assert!(matches!(BuiltinProblem::UnitKernelConstant.problem(on_canonical), Err(Error::CollocationNodes(_))));
        let zeros = NodeSet::generate(NodeFamily::ChebZeros, 4).unwrap().map_to_interval(0.0, 1.0).unwrap();
        assert!(matches!(BuiltinProblem::UnitKernelConstant.problem(zeros), Err(Error::CollocationNodes(_))));
        let p = VolterraProblem::new(|t, xi| t - xi, |t| t, |_| 1.0, unit_nodes(NodeFamily::Cgl, 4)).unwrap();
        assert!(matches!(assemble(&p), Err(Error::KernelSingular)));
        let p = VolterraProblem::new(
            |_, xi| if xi > 0.5 { f64::NAN } else { 1.0 },
            |t| t,
            |_| 1.0,
            unit_nodes(NodeFamily::Cgl, 4),
        )
        .unwrap();
        assert!(matches!(assemble(&p), Err(Error::QuadratureFailure { .. })));
        assert!(matches!("nope".parse::<BuiltinProblem>(), Err(Error::UnknownProblem(_))));
    }

    #[test]
    fn singular_system_detected() {
        // K(t, xi) = 1 for t = 0 only: every row below the first vanishes
        let p = VolterraProblem::new(
            |t, _| if t == 0.0 { 1.0 } else { 0.0 },
            |_| 0.0,
            |_| 0.0,
            unit_nodes(NodeFamily::Cgl, 4),
        )
        .unwrap();
        assert!(matches!(solve(&p), Err(Error::SingularMatrix { .. })));
    }
}
