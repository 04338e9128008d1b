//! Interpolation node distributions on `[-1, 1]` and the numerical
//! experiments built on them.
//!
//! * [`chebyshev`]: Chebyshev polynomials, their antiderivatives and the node
//!   polynomials whose zeros define the ND1, ND2 and scaled-Q families.
//! * [`nodes`]: every node family, affine maps to other intervals, and the
//!   sup-norm of the node polynomial `prod (x - c_i)`.
//! * [`interp`]: barycentric Lagrange interpolation, Lebesgue functions and
//!   constants, interpolation error curves.
//! * [`diffmat`]: spectral differentiation matrices.
//! * [`volterra`]: collocation for first-kind Volterra integral equations.
//!
//! ```
//! use spectral_nodes::{interp, NodeFamily, NodeSet};
//!
//! let nodes = NodeSet::generate(NodeFamily::ScaledCheb, 10).unwrap();
//! let report = interp::lebesgue_constant(&nodes);
//! assert!(report.lambda_conventional < 2.2);
//! ```

pub mod chebyshev;
pub mod diffmat;
mod error;
pub mod functions;
pub mod interp;
pub mod nodes;
pub mod roots;
pub mod volterra;

pub use diffmat::{DiffMatrix, NodeOrdering};
pub use error::{Error, Result};
pub use functions::TestFunction;
pub use interp::{Interpolant, LebesgueReport};
pub use nodes::{NodeFamily, NodeSet, ProductMax};
pub use volterra::{BuiltinProblem, VolterraProblem, VolterraSolution};
