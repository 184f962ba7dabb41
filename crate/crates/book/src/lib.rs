//! Guide chapters, compiled as documentation so their examples are tested.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/presentations.md")]
pub mod presentations {}

#[doc = include_str!("../../../book/src/covers.md")]
pub mod covers {}

#[doc = include_str!("../../../book/src/invariants.md")]
pub mod invariants {}

#[doc = include_str!("../../../book/src/classification.md")]
pub mod classification {}

#[doc = include_str!("../../../book/src/semigroups.md")]
pub mod semigroups {}

#[doc = include_str!("../../../book/src/transformations.md")]
pub mod transformations {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../README.md")]
pub mod readme {}
