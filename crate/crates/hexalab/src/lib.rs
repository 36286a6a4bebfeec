//! # hexalab
//!
//! Exact-arithmetic toolkit for homometry and hexachordal phenomena:
//! finite metric measure spaces with rational distances and weights,
//! deciders for the constant volume condition and the hexachordal property,
//! abstract interval tables with their independence characterizations,
//! rhythmic tiling canons through DFT zero sets, Z-relation enumeration on
//! cyclic groups, and seeded Monte Carlo verification for spheres, tori and
//! Klein bottles.
//!
//! Everything discrete is decided in exact rational arithmetic; floats are
//! confined to power-mean output, the diagnostic DFT evaluator and the
//! Monte Carlo samplers.
//!
//! ```
//! use hexalab::constructions::zmod_graph;
//! use hexalab::hex::{check_cvc, check_hex};
//!
//! // Z/7 with neighbors at +-1 and +-3 satisfies the constant volume
//! // condition even though it is a lopsided-looking circulant.
//! let space = zmod_graph(7, &[1, 3]).unwrap();
//! assert!(check_cvc(&space).holds);
//!
//! // every half-measure subset of a 12-cycle is homometric to its
//! // complement
//! let scale = zmod_graph(12, &[1]).unwrap();
//! let hexachord = scale.mask_from_indices(&[0, 2, 4, 5, 7, 9]).unwrap();
//! assert!(check_hex(&scale, &hexachord).unwrap().holds);
//! ```
//!
//! The `book/` directory of the repository holds a guide built from the
//! same sources as the [`guide`] module, so its examples are compiled and
//! run with `cargo test`.

pub mod constructions;
pub mod group;
pub mod guide;
pub mod hex;
pub mod intervals;
pub mod io;
pub mod mc;
pub mod patterson;
pub mod rational;
pub mod space;
pub mod tiling;
pub mod transitive;
pub mod zrel;

pub use rational::Q;
pub use space::{Space, SubsetMask, ValueKind};
