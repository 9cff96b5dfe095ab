//! The guide under `book/`, compiled so that every Rust listing runs as a
//! doctest. Each chapter gets its own module to make failures easy to
//! trace back.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/exact.md")]
pub mod exact {}
#[doc = include_str!("../../../book/src/triangles.md")]
pub mod triangles {}
#[doc = include_str!("../../../book/src/derivative.md")]
pub mod derivative {}
#[doc = include_str!("../../../book/src/signed.md")]
pub mod signed {}
#[doc = include_str!("../../../book/src/series.md")]
pub mod series {}
#[doc = include_str!("../../../book/src/bell.md")]
pub mod bell {}
#[doc = include_str!("../../../book/src/roots.md")]
pub mod roots {}
#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}
