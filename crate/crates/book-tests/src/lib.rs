//! The guide in `book/src` is compiled here so its snippets run as doctests
//! and cannot drift from the library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/conventions.md")]
pub mod conventions {}

#[doc = include_str!("../../../book/src/criterion.md")]
pub mod criterion {}

#[doc = include_str!("../../../book/src/kraus.md")]
pub mod kraus {}

#[doc = include_str!("../../../book/src/lemmas.md")]
pub mod lemmas {}

#[doc = include_str!("../../../book/src/zoo.md")]
pub mod zoo {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
