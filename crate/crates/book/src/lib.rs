//! Compiles the guide's code samples as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/formalisms.md")]
pub mod formalisms {}

#[doc = include_str!("../../../book/src/refinement.md")]
pub mod refinement {}

#[doc = include_str!("../../../book/src/translations.md")]
pub mod translations {}

#[doc = include_str!("../../../book/src/algebra.md")]
pub mod algebra {}

#[doc = include_str!("../../../book/src/quotient.md")]
pub mod quotient {}

#[doc = include_str!("../../../book/src/pruning.md")]
pub mod pruning {}

#[doc = include_str!("../../../book/src/oracle.md")]
pub mod oracle {}

#[doc = include_str!("../../../book/src/format.md")]
pub mod format {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../README.md")]
pub mod readme {}
