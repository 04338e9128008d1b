//! Node distributions on `[-1, 1]` and their affine images.
//!
//! The closed-form families (equi-spaced, Chebyshev zeros, Chebyshev–Gauss–Lobatto,
//! scaled Chebyshev) are computed directly. ND1, ND2 and the scaled-Q family are
//! the zeros of the node polynomials in [`crate::chebyshev`], located with Brent's
//! method on brackets between consecutive zeros of `T_s`, where those polynomials
//! alternate in sign.
//!
//! Every family is symmetric about the origin. Only the non-negative half is
//! computed; the negative half is its exact mirror image, so
//! `nodes[i] == -nodes[s - i]` holds bit for bit on `[-1, 1]`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::chebyshev::{NodePolyKind, NodePolynomial};
use crate::error::{Error, Result};
use crate::roots::{brent, Root};

const ROOT_XTOL: f64 = 1e-16;

/// Scan density per node for [`NodeSet::product_max`].
const PRODUCT_SCAN_PER_NODE: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NodeFamily {
    /// `-1 + 2i/s`.
    #[serde(rename = "equi")]
    EquiSpaced,
    /// Zeros of `T_{s+1}`; the only family without the endpoints.
    #[serde(rename = "cheb-zeros")]
    ChebZeros,
    /// Chebyshev–Gauss–Lobatto points `cos(i pi / s)`.
    #[serde(rename = "cgl")]
    Cgl,
    /// Zeros of `T_{s+1}` stretched so the outermost land on `±1`.
    #[serde(rename = "scaled-cheb")]
    ScaledCheb,
    /// Zeros of the `P` node polynomial (odd `s`).
    #[serde(rename = "nd1")]
    Nd1,
    /// Zeros of the `QTilde` node polynomial (even `s`).
    #[serde(rename = "nd2")]
    Nd2,
    /// Zeros of the `QScaled` node polynomial divided by the largest one (even `s`).
    #[serde(rename = "qscaled")]
    QScaled,
}

impl NodeFamily {
    pub const ALL: [NodeFamily; 7] = [
        NodeFamily::EquiSpaced,
        NodeFamily::ChebZeros,
        NodeFamily::Cgl,
        NodeFamily::ScaledCheb,
        NodeFamily::Nd1,
        NodeFamily::Nd2,
        NodeFamily::QScaled,
    ];

    /// Short identifier used on the command line and in serialized output.
    pub fn id(self) -> &'static str {
        match self {
            NodeFamily::EquiSpaced => "equi",
            NodeFamily::ChebZeros => "cheb-zeros",
            NodeFamily::Cgl => "cgl",
            NodeFamily::ScaledCheb => "scaled-cheb",
            NodeFamily::Nd1 => "nd1",
            NodeFamily::Nd2 => "nd2",
            NodeFamily::QScaled => "qscaled",
        }
    }

    /// Checks the degree/parity restriction of the family.
    pub fn check(self, s: usize) -> Result<()> {
        let (ok, requirement) = match self {
            NodeFamily::Nd1 => (s >= 3 && s % 2 == 1, "needs odd s >= 3"),
            NodeFamily::Nd2 | NodeFamily::QScaled => (s >= 2 && s.is_multiple_of(2), "needs even s >= 2"),
            _ => (s >= 1, "needs s >= 1"),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Parity { family: self, s, requirement })
        }
    }

    /// Whether `s` is admissible for this family.
    pub fn supports(self, s: usize) -> bool {
        self.check(s).is_ok()
    }

    /// The node polynomial whose zeros define the family, for the root-found
    /// families.
    pub fn node_polynomial(self, s: usize) -> Option<Result<NodePolynomial>> {
        let kind = match self {
            NodeFamily::Nd1 => NodePolyKind::P,
            NodeFamily::Nd2 => NodePolyKind::QTilde,
            NodeFamily::QScaled => NodePolyKind::QScaled,
            _ => return None,
        };
        Some(NodePolynomial::new(kind, s))
    }
}

impl fmt::Display for NodeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for NodeFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let family = match s.to_ascii_lowercase().as_str() {
            "equi" | "equispaced" | "equi-spaced" => NodeFamily::EquiSpaced,
            "cheb-zeros" | "chebzeros" | "chebyshev" => NodeFamily::ChebZeros,
            "cgl" => NodeFamily::Cgl,
            "scaled-cheb" | "scaledcheb" | "scaled" => NodeFamily::ScaledCheb,
            "nd1" => NodeFamily::Nd1,
            "nd2" => NodeFamily::Nd2,
            "qscaled" | "scaled-q" => NodeFamily::QScaled,
            _ => return Err(Error::UnknownFamily(s.to_string())),
        };
        Ok(family)
    }
}

/// An ordered, strictly increasing set of `s + 1` interpolation nodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeSet {
    family: NodeFamily,
    s: usize,
    nodes: Vec<f64>,
    interval: (f64, f64),
}

/// Location and value of `max |prod (x - c_i)|` over the node interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProductMax {
    pub value: f64,
    pub argmax: f64,
}

impl NodeSet {
    /// Generates `family` with `s + 1` nodes on `[-1, 1]`.
    ///
    /// ```
    /// use spectral_nodes::{NodeFamily, NodeSet};
    ///
    /// let nd1 = NodeSet::generate(NodeFamily::Nd1, 3).unwrap();
    /// let h = 0.5f64.sqrt();
    /// assert_eq!(nd1.nodes()[0], -1.0);
    /// assert!((nd1.nodes()[2] - h).abs() < 1e-15);
    /// ```
    pub fn generate(family: NodeFamily, s: usize) -> Result<Self> {
        family.check(s)?;
        let mut nodes = vec![0.0; s + 1];
        match family {
            NodeFamily::EquiSpaced => {
                fill_upper_half(&mut nodes, |k| (2.0 * k as f64 - s as f64) / s as f64);
            }
            NodeFamily::ChebZeros => {
                fill_upper_half(&mut nodes, |k| cheb_zero_ascending(s, k));
            }
            NodeFamily::Cgl => {
                fill_upper_half(&mut nodes, |k| (PI * (2.0 * k as f64 - s as f64) / (2.0 * s as f64)).sin());
            }
            NodeFamily::ScaledCheb => {
                let stretch = (PI / (2.0 * (s as f64 + 1.0))).cos();
                fill_upper_half(&mut nodes, |k| cheb_zero_ascending(s, k) / stretch);
            }
            NodeFamily::Nd1 | NodeFamily::Nd2 => {
                let poly = family.node_polynomial(s).expect("root-found family")?;
                let roots = positive_interior_roots(&poly)?;
                let first = s / 2 + 1;
                for (offset, root) in roots.iter().enumerate() {
                    nodes[first + offset] = root.x;
                }
            }
            NodeFamily::QScaled => {
                let zeros = qscaled_zeros(s)?;
                let largest = zeros[s];
                for k in s / 2 + 1..s {
                    nodes[k] = zeros[k] / largest;
                }
            }
        }
        if family != NodeFamily::ChebZeros {
            nodes[s] = 1.0;
        }
        mirror_lower_half(&mut nodes);
        Ok(Self { family, s, nodes, interval: (-1.0, 1.0) })
    }

    pub fn family(&self) -> NodeFamily {
        self.family
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    /// Affine image of the node set on `[a, b]`.
    ///
    /// Endpoint nodes of families that contain the endpoints are assigned `a`
    /// and `b` exactly. Mapping onto the current interval returns a bitwise copy.
    pub fn map_to_interval(&self, a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() || a >= b {
            return Err(Error::Interval { a, b });
        }
        if (a, b) == self.interval {
            return Ok(self.clone());
        }
        let (a0, b0) = self.interval;
        let (mid0, half0) = (0.5 * (a0 + b0), 0.5 * (b0 - a0));
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        let mut nodes: Vec<f64> = self.nodes.iter().map(|&t| mid + half * ((t - mid0) / half0)).collect();
        if self.family != NodeFamily::ChebZeros {
            nodes[0] = a;
            nodes[self.s] = b;
        }
        Ok(Self { family: self.family, s: self.s, nodes, interval: (a, b) })
    }

    /// `prod_i (x - c_i)`.
    pub fn product(&self, x: f64) -> f64 {
        self.nodes.iter().map(|&c| x - c).product()
    }

    /// Derivative of `prod_i (x - c_i)` by the product rule.
    pub fn product_derivative(&self, x: f64) -> f64 {
        (0..self.nodes.len())
            .map(|i| self.nodes.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &c)| x - c).product::<f64>())
            .sum()
    }

    /// Maximum of `|prod (x - c_i)|` over the node interval; see
    /// [`product_max_of`].
    pub fn product_max(&self) -> ProductMax {
        product_max_of(&self.nodes, self.interval.0, self.interval.1)
    }
}

/// Maximum of `|prod (x - c_i)|` over `[a, b]` for arbitrary points.
///
/// Dense scan with `4096 n` samples (`n` points) followed by golden-section
/// refinement around the best sample.
pub fn product_max_of(points: &[f64], a: f64, b: f64) -> ProductMax {
    let n = PRODUCT_SCAN_PER_NODE * points.len().max(1);
    let h = (b - a) / n as f64;
    let sample = |k: usize| if k == n { b } else { a + h * k as f64 };
    let f = |x: f64| points.iter().map(|&c| x - c).product::<f64>().abs();

    let mut best = (0usize, f(a));
    for k in 1..=n {
        let v = f(sample(k));
        if v > best.1 {
            best = (k, v);
        }
    }
    let lo = sample(best.0.saturating_sub(1));
    let hi = sample((best.0 + 1).min(n));
    let (x, v) = golden_section_max(f, lo, hi, 1e-12);
    if v >= best.1 {
        ProductMax { value: v, argmax: x }
    } else {
        ProductMax { value: best.1, argmax: sample(best.0) }
    }
}

/// Closed-form minimum over endpoint-including node sets of
/// `max |prod (x - c_i)|`, attained by the scaled Chebyshev nodes:
/// `2^{-s} cos(pi / (2(s+1)))^{-(s+1)}`.
pub fn scaled_cheb_minimax(s: usize) -> f64 {
    let c = (PI / (2.0 * (s as f64 + 1.0))).cos();
    0.5f64.powi(s as i32) / c.powi(s as i32 + 1)
}

/// All `s + 1` zeros `d_0 < ... < d_s` of the `QScaled` node polynomial. The
/// outer two lie outside `[-1, 1]`.
pub fn qscaled_zeros(s: usize) -> Result<Vec<f64>> {
    NodeFamily::QScaled.check(s)?;
    let poly = NodePolynomial::new(NodePolyKind::QScaled, s)?;
    let interior = positive_interior_roots(&poly)?;
    let outer = brent(|x| poly.eval(x), 1.0, 1.5, ROOT_XTOL)?;
    let mut zeros = vec![0.0; s + 1];
    let first = s / 2 + 1;
    for (offset, root) in interior.iter().enumerate() {
        zeros[first + offset] = root.x;
    }
    zeros[s] = outer.x;
    mirror_lower_half(&mut zeros);
    Ok(zeros)
}

/// Zeros of `T_s` in ascending order; consecutive pairs bracket the interior
/// zeros of the node polynomials.
pub fn chebyshev_alternation_points(s: usize) -> Vec<f64> {
    (0..s).map(|k| (PI * (2.0 * k as f64 + 1.0 - s as f64) / (2.0 * s as f64)).sin()).collect()
}

/// Positive interior zeros of a node polynomial, ascending. For node index
/// `j` in `s/2 + 1 .. s` the zero lies between alternation points `j - 1`
/// and `j`.
fn positive_interior_roots(poly: &NodePolynomial) -> Result<Vec<Root>> {
    let s = poly.s();
    let z = chebyshev_alternation_points(s);
    (s / 2 + 1..s).map(|j| brent(|x| poly.eval(x), z[j - 1], z[j], ROOT_XTOL)).collect()
}

/// `k`-th zero of `T_{s+1}` in ascending order, `sin(pi (2k - s) / (2(s+1)))`.
fn cheb_zero_ascending(s: usize, k: usize) -> f64 {
    (PI * (2.0 * k as f64 - s as f64) / (2.0 * (s as f64 + 1.0))).sin()
}

fn fill_upper_half(nodes: &mut [f64], f: impl Fn(usize) -> f64) {
    let s = nodes.len() - 1;
    for (k, x) in nodes.iter_mut().enumerate().skip(s / 2 + 1) {
        *x = f(k);
    }
}

/// Sets the lower half to the negated upper half and the middle node (odd
/// node count) to zero.
fn mirror_lower_half(nodes: &mut [f64]) {
    let s = nodes.len() - 1;
    for k in 0..nodes.len() {
        let m = s - k;
        if k < m {
            nodes[k] = -nodes[m];
        } else if k == m {
            nodes[k] = 0.0;
        }
    }
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
pub(crate) fn golden_section_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, xtol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > xtol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
        if x1 >= x2 {
            break;
        }
    }
    let candidates = [(lo, f(lo)), (x1, f1), (x2, f2), (hi, f(hi))];
    candidates.into_iter().fold((lo, f64::NEG_INFINITY), |acc, c| if c.1 > acc.1 { c } else { acc })
}
