//! Chebyshev polynomials of the first kind and the node polynomials built
//! from their antiderivatives.
//!
//! Everything here is evaluated with the three-term recurrence
//! `T_{k+1} = 2x T_k - T_{k-1}`, so the functions are valid on the whole real
//! line and never touch `acos`. Polynomials are kept as combinations of
//! Chebyshev terms; no monomial coefficients are ever formed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Evaluates `T_n(x)`.
///
/// ```
/// use spectral_nodes::chebyshev::eval;
///
/// assert_eq!(eval(0, 0.37), 1.0);
/// assert_eq!(eval(2, 0.5), -0.5);
/// assert_eq!(eval(3, 2.0), 26.0);
/// ```
pub fn eval(n: usize, x: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => x,
        _ => {
            let (mut prev, mut cur) = (1.0, x);
            for _ in 1..n {
                let next = 2.0 * x * cur - prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// Returns `(T_{n-1}(x), T_n(x), T_{n+1}(x))` from a single recurrence pass.
/// Requires `n >= 1`.
pub(crate) fn eval_triple(n: usize, x: f64) -> (f64, f64, f64) {
    debug_assert!(n >= 1);
    let (mut prev, mut cur) = (1.0, x);
    for _ in 1..n {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    (prev, cur, 2.0 * x * cur - prev)
}

/// Derivative of `T_n` at `x`, using `T_n' = n U_{n-1}` with the recurrence
/// for the second-kind polynomials.
pub fn derivative(n: usize, x: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    // U_0 = 1, U_1 = 2x
    let (mut prev, mut cur) = (1.0, 2.0 * x);
    if n == 1 {
        return 1.0;
    }
    for _ in 2..n {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    n as f64 * cur
}

/// The antiderivative `(T_{s+1}/(s+1) - T_{s-1}/(s-1)) / 2` of `T_s`.
///
/// Defined for `s >= 2` only; the `s - 1` denominator rules out `s = 1`.
pub fn antiderivative(s: usize, x: f64) -> Result<f64> {
    if s < 2 {
        return Err(Error::Degree { degree: s, requirement: "the antiderivative formula needs s >= 2" });
    }
    Ok(antiderivative_unchecked(s, x))
}

fn antiderivative_unchecked(s: usize, x: f64) -> f64 {
    let (lower, _, upper) = eval_triple(s, x);
    0.5 * (upper / (s as f64 + 1.0) - lower / (s as f64 - 1.0))
}

/// Which node polynomial a [`NodePolynomial`] represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NodePolyKind {
    /// `(s+1)/2^{s-1} [antiderivative(T_s) + 1/(s^2-1)]`, odd `s >= 3`.
    /// Its derivative is exactly `(s+1) T_s / 2^{s-1}`.
    P,
    /// `(s+1)/2^s [T_{s+1}/(s+1) - T_{s-1}/(s-1) + 2x/(s^2-1)]`, even `s >= 2`.
    QTilde,
    /// `(s+1)/2^s [T_{s+1}/(s+1) - T_{s-1}/(s-1)]`, even `s >= 2`. Its two
    /// outermost zeros lie outside `[-1, 1]`.
    QScaled,
}

/// A monic polynomial of degree `s + 1` whose zeros form a node set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NodePolynomial {
    kind: NodePolyKind,
    s: usize,
}

impl NodePolynomial {
    pub fn new(kind: NodePolyKind, s: usize) -> Result<Self> {
        let ok = match kind {
            NodePolyKind::P => s >= 3 && s % 2 == 1,
            NodePolyKind::QTilde | NodePolyKind::QScaled => s >= 2 && s.is_multiple_of(2),
        };
        if !ok {
            let requirement = match kind {
                NodePolyKind::P => "needs odd s >= 3",
                _ => "needs even s >= 2",
            };
            return Err(Error::Degree { degree: s, requirement });
        }
        Ok(Self { kind, s })
    }

    pub fn kind(&self) -> NodePolyKind {
        self.kind
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// Degree of the polynomial, `s + 1`.
    pub fn degree(&self) -> usize {
        self.s + 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        let s = self.s as f64;
        let (lower, _, upper) = eval_triple(self.s, x);
        let span = upper / (s + 1.0) - lower / (s - 1.0);
        match self.kind {
            NodePolyKind::P => (s + 1.0) / 2f64.powi(self.s as i32 - 1) * (0.5 * span + 1.0 / (s * s - 1.0)),
            NodePolyKind::QTilde => (s + 1.0) / 2f64.powi(self.s as i32) * (span + 2.0 * x / (s * s - 1.0)),
            NodePolyKind::QScaled => (s + 1.0) / 2f64.powi(self.s as i32) * span,
        }
    }

    pub fn derivative(&self, x: f64) -> f64 {
        let s = self.s as f64;
        let scale = (s + 1.0) / 2f64.powi(self.s as i32 - 1);
        let t = eval(self.s, x);
        match self.kind {
            NodePolyKind::P | NodePolyKind::QScaled => scale * t,
            NodePolyKind::QTilde => scale * (t + 1.0 / (s * s - 1.0)),
        }
    }
}
