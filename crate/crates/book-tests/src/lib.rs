//! mdbook cannot resolve crate dependencies when testing, so each chapter is
//! pulled in here as module docs and `cargo test --doc` runs its code blocks.
//! One module per chapter keeps failures traceable to a file.

#[doc = include_str!("../../../book/src/intro.md")]
pub mod intro {}
#[doc = include_str!("../../../book/src/chebyshev.md")]
pub mod chebyshev {}
#[doc = include_str!("../../../book/src/nodes.md")]
pub mod nodes {}
#[doc = include_str!("../../../book/src/interpolation.md")]
pub mod interpolation {}
#[doc = include_str!("../../../book/src/differentiation.md")]
pub mod differentiation {}
#[doc = include_str!("../../../book/src/volterra.md")]
pub mod volterra {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
