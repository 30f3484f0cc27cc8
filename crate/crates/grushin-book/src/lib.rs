//! Doc-test shim for the mdbook guide in `book/`.
//!
//! mdbook cannot run example code against external crates, so each chapter
//! hooks in here as a module's documentation: `cargo test --doc` compiles
//! and executes every ```rust fence in the book, keeping the guide honest.
//!
//! One module per chapter, so a failing snippet points at its chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/quasidistance.md")]
pub mod quasidistance {}

#[doc = include_str!("../../../book/src/cc-distance.md")]
pub mod cc_distance {}

#[doc = include_str!("../../../book/src/flattening-maps.md")]
pub mod flattening_maps {}

#[doc = include_str!("../../../book/src/jacobian-weights.md")]
pub mod jacobian_weights {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
