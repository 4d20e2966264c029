//! The chapters of the guide in `book/src`, one module each, so that
//! `cargo test` runs every listing as a doc-test.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/algebras.md")]
pub mod algebras {}
#[doc = include_str!("../../../book/src/cohomology.md")]
pub mod cohomology {}
#[doc = include_str!("../../../book/src/gerstenhaber.md")]
pub mod gerstenhaber {}
#[doc = include_str!("../../../book/src/deformations.md")]
pub mod deformations {}
#[doc = include_str!("../../../book/src/equivariant.md")]
pub mod equivariant {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
