//! The user guide, shared verbatim with the rendered book under `book/`.
//!
//! Each chapter below includes the corresponding markdown file, so the code
//! blocks in the book run as documentation tests and cannot drift from the
//! library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/exact-arithmetic.md")]
pub mod exact_arithmetic {}

#[doc = include_str!("../../../book/src/projective-convexity.md")]
pub mod projective_convexity {}

#[doc = include_str!("../../../book/src/point-families.md")]
pub mod point_families {}

#[doc = include_str!("../../../book/src/counting.md")]
pub mod counting {}

#[doc = include_str!("../../../book/src/closed-forms.md")]
pub mod closed_forms {}

#[doc = include_str!("../../../book/src/command-line.md")]
pub mod command_line {}
