//! Builtin test functions with analytic first derivatives.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TestFunction {
    /// `e^x`
    Exp,
    /// `cos x`
    Cos,
    /// `1 / (1 + 25 x^2)`
    Runge,
    /// `e^{x^2}`
    ExpSq,
}

impl TestFunction {
    pub const ALL: [TestFunction; 4] = [TestFunction::Exp, TestFunction::Cos, TestFunction::Runge, TestFunction::ExpSq];

    pub fn id(self) -> &'static str {
        match self {
            TestFunction::Exp => "exp",
            TestFunction::Cos => "cos",
            TestFunction::Runge => "runge",
            TestFunction::ExpSq => "exp_sq",
        }
    }

    pub fn value(self, x: f64) -> f64 {
        match self {
            TestFunction::Exp => x.exp(),
            TestFunction::Cos => x.cos(),
            TestFunction::Runge => 1.0 / (1.0 + 25.0 * x * x),
            TestFunction::ExpSq => (x * x).exp(),
        }
    }

    pub fn derivative(self, x: f64) -> f64 {
        match self {
            TestFunction::Exp => x.exp(),
            TestFunction::Cos => -x.sin(),
            TestFunction::Runge => {
                let d = 1.0 + 25.0 * x * x;
                -50.0 * x / (d * d)
            }
            TestFunction::ExpSq => 2.0 * x * (x * x).exp(),
        }
    }
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for TestFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        TestFunction::ALL.into_iter().find(|f| f.id() == s).ok_or_else(|| Error::UnknownFunction(s.to_string()))
    }
}
