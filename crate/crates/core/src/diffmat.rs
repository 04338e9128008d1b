//! Spectral differentiation matrices `D_ij = l_j'(c_i)`.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functions::TestFunction;
use crate::interp::barycentric_weights;
use crate::nodes::{NodeFamily, NodeSet};

/// Order of the points the rows and columns of a [`DiffMatrix`] refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeOrdering {
    /// Same order as the node set (increasing).
    Ascending,
    /// Reversed, e.g. Chebyshev–Gauss–Lobatto points `cos(i pi / s)`.
    Descending,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiffMatrix {
    nodes: NodeSet,
    ordering: NodeOrdering,
    entries: DMatrix<f64>,
}

/// General differentiation matrix for points in the given order.
///
/// Off-diagonal entries are `(w_j / w_i) / (c_i - c_j)` with barycentric
/// weights `w`; the diagonal is `sum_{k != i} 1 / (c_i - c_k)`, the
/// logarithmic derivative of `prod_{k != i} (x - c_k)` at `c_i`.
pub fn general_entries(points: &[f64]) -> DMatrix<f64> {
    let n = points.len();
    let w = barycentric_weights(points);
    DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            points.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &ck)| 1.0 / (points[i] - ck)).sum()
        } else {
            (w[j] / w[i]) / (points[i] - points[j])
        }
    })
}

/// Diagonal recovered as the negated off-diagonal row sums.
pub fn diagonal_by_row_sum(entries: &DMatrix<f64>) -> Vec<f64> {
    (0..entries.nrows())
        .map(|i| -(0..entries.ncols()).filter(|&j| j != i).map(|j| entries[(i, j)]).sum::<f64>())
        .collect()
}

impl DiffMatrix {
    /// Differentiation matrix on the node set in its own (ascending) order.
    ///
    /// ```
    /// use spectral_nodes::{DiffMatrix, NodeFamily, NodeSet};
    ///
    /// let ns = NodeSet::generate(NodeFamily::EquiSpaced, 1).unwrap();
    /// let d = DiffMatrix::general(&ns);
    /// assert_eq!(d.entries()[(0, 0)], -0.5);
    /// assert_eq!(d.entries()[(1, 1)], 0.5);
    /// ```
    pub fn general(nodes: &NodeSet) -> Self {
        Self { entries: general_entries(nodes.nodes()), nodes: nodes.clone(), ordering: NodeOrdering::Ascending }
    }

    /// Closed-form Chebyshev–Gauss–Lobatto matrix, rows and columns ordered
    /// as `c_i = cos(i pi / s)` (descending).
    ///
    /// Corners are `+(2s^2+1)/6` at `(0, 0)` and `-(2s^2+1)/6` at `(s, s)`;
    /// interior diagonal entries are `-c_j / (2 (1 - c_j^2))` and the
    /// off-diagonal entries `(a_i / a_j) (-1)^{i+j} / (c_i - c_j)` with
    /// `a_0 = a_s = 2`, otherwise 1.
    pub fn cgl_explicit(s: usize) -> Result<Self> {
        let nodes = NodeSet::generate(NodeFamily::Cgl, s)?;
        let c: Vec<f64> = nodes.nodes().iter().rev().copied().collect();
        let a = |i: usize| if i == 0 || i == s { 2.0 } else { 1.0 };
        let corner = (2.0 * (s * s) as f64 + 1.0) / 6.0;
        let entries = DMatrix::from_fn(s + 1, s + 1, |i, j| {
            if i == j {
                match i {
                    0 => corner,
                    _ if i == s => -corner,
                    _ => -c[j] / (2.0 * (1.0 - c[j] * c[j])),
                }
            } else {
                let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
                a(i) / a(j) * sign / (c[i] - c[j])
            }
        });
        Ok(Self { nodes, ordering: NodeOrdering::Descending, entries })
    }

    pub fn nodes(&self) -> &NodeSet {
        &self.nodes
    }

    pub fn ordering(&self) -> NodeOrdering {
        self.ordering
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// The nodes in the order used by the rows and columns.
    pub fn points(&self) -> Vec<f64> {
        match self.ordering {
            NodeOrdering::Ascending => self.nodes.nodes().to_vec(),
            NodeOrdering::Descending => self.nodes.nodes().iter().rev().copied().collect(),
        }
    }

    /// Same matrix with rows and columns in ascending node order.
    pub fn to_ascending(&self) -> Self {
        match self.ordering {
            NodeOrdering::Ascending => self.clone(),
            NodeOrdering::Descending => {
                let n = self.dim();
                let entries = DMatrix::from_fn(n, n, |i, j| self.entries[(n - 1 - i, n - 1 - j)]);
                Self { nodes: self.nodes.clone(), ordering: NodeOrdering::Ascending, entries }
            }
        }
    }

    /// `D f` for samples `f` given in matrix order.
    pub fn apply(&self, values: &[f64]) -> Result<Vec<f64>> {
        if values.len() != self.dim() {
            return Err(Error::LengthMismatch { expected: self.dim(), actual: values.len() });
        }
        let v = DVector::from_column_slice(values);
        Ok((&self.entries * v).as_slice().to_vec())
    }

    /// Largest `|row sum|`, zero in exact arithmetic.
    pub fn max_row_sum(&self) -> f64 {
        self.entries.row_iter().map(|r| r.sum().abs()).fold(0.0, f64::max)
    }
}

/// `|f'(c_i) - (D f)_i|` at each node of `family` with `s + 1` nodes on
/// `[-1, 1]`, in ascending node order.
pub fn derivative_error_at_nodes(family: NodeFamily, s: usize, f: TestFunction) -> Result<Vec<(f64, f64)>> {
    let nodes = NodeSet::generate(family, s)?;
    let d = DiffMatrix::general(&nodes);
    let samples: Vec<f64> = nodes.nodes().iter().map(|&c| f.value(c)).collect();
    let approx = d.apply(&samples)?;
    Ok(nodes.nodes().iter().zip(approx).map(|(&c, da)| (c, (f.derivative(c) - da).abs())).collect())
}

/// Largest nodal derivative error for `family`, `s` and `f`.
pub fn max_derivative_error(family: NodeFamily, s: usize, f: TestFunction) -> Result<f64> {
    Ok(derivative_error_at_nodes(family, s, f)?.into_iter().fold(0.0, |m, (_, e)| m.max(e)))
}
