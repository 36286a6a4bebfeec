//! The user guide, shared with the `book/` directory. Each chapter is a
//! module whose documentation is the chapter source, so every code block in
//! the book is compiled and run as a doc-test.

#[doc = include_str!("../../../book/src/spaces.md")]
pub mod spaces {}

#[doc = include_str!("../../../book/src/hexachord.md")]
pub mod hexachord {}

#[doc = include_str!("../../../book/src/constructions.md")]
pub mod constructions {}

#[doc = include_str!("../../../book/src/intervals.md")]
pub mod intervals {}

#[doc = include_str!("../../../book/src/tiling.md")]
pub mod tiling {}

#[doc = include_str!("../../../book/src/zrelation.md")]
pub mod zrelation {}

#[doc = include_str!("../../../book/src/montecarlo.md")]
pub mod montecarlo {}
