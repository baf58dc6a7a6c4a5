//! Weyl groupoids, arithmetic root systems and semisimple types of diagonal
//! braidings.
//!
//! The pipeline starts from a square matrix of roots of unity, explores the
//! groupoid of matrices reachable by reflection transforms, enumerates the
//! positive roots from a longest word, singles out the Cartan roots, scales
//! them into an ordinary root system and classifies its semisimple type.

pub mod braiding;
pub mod cyclo;
pub mod error;
pub mod groupoid;
pub mod matrix;

pub use braiding::{parse, BraidingMatrix, DynkinDiagram, Input};
pub use cyclo::UnityRoot;
pub use error::{Error, Result};
pub use groupoid::{explore, longest_word, positive_roots, GroupoidAtlas, PositiveRoots, ReducedWord};
pub use matrix::{format_root, parse_root, RootVec, SquareMat};
