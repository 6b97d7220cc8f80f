//! mdbook cannot run snippets that depend on a local crate, so each chapter
//! is pulled in as the docs of an empty module and `cargo test` runs its code
//! blocks as doc-tests. One module per chapter keeps failures attributable.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/detectors.md")]
pub mod detectors {}
#[doc = include_str!("../../../book/src/causality.md")]
pub mod causality {}
#[doc = include_str!("../../../book/src/numerics.md")]
pub mod numerics {}
#[doc = include_str!("../../../book/src/precursors.md")]
pub mod precursors {}
#[doc = include_str!("../../../book/src/localization.md")]
pub mod localization {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
