//! The book under `book/` cannot run its own code fences as tests, so this
//! crate includes every chapter as module documentation and lets
//! `cargo test --doc` do the work. One module per chapter keeps a failing
//! snippet traceable to its source file.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/finite-fields.md")]
pub mod finite_fields {}

#[doc = include_str!("../../../book/src/latin-squares.md")]
pub mod latin_squares {}

#[doc = include_str!("../../../book/src/transversals.md")]
pub mod transversals {}

#[doc = include_str!("../../../book/src/bases.md")]
pub mod bases {}

#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}

#[doc = include_str!("../../../book/src/catalog.md")]
pub mod catalog {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
