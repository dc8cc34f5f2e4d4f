//! Distortion edge colouring of bipartite multigraphs.
//!
//! Every bipartite multigraph of maximum degree 3 whose edges carry
//! arbitrary colour permutations admits a proper distortion-colouring
//! with 4 colours: A-side colours pairwise distinct around each A-vertex,
//! distorted (B-side) colours pairwise distinct around each B-vertex.
//! This crate makes that statement executable:
//!
//! - [`engine::solve`] colours any valid instance constructively, by
//!   padding it to a cubic multigraph, splitting off a perfect matching,
//!   decomposing the remaining 2-factor into cycles, and extending an
//!   anchored matching colouring around each cycle.
//! - [`oracle`] is an independent exhaustive solver for any d, used for
//!   cross-validation and counting.
//! - [`generate`] builds seeded random instances and adapts integer
//!   edge delays (colour shifts mod d+1) to distortions.
//! - [`latin`] reduces 4×4 Latin squares to single-vertex-pair instances
//!   and extracts size-3 partial transversals.
//! - [`selftest`] certifies the engine's two existence lemmas
//!   exhaustively and cross-checks the whole pipeline.

pub mod decompose;
pub mod distortion;
pub mod engine;
pub mod error;
pub mod generate;
pub mod instance;
pub mod latin;
pub mod oracle;
pub mod regularize;
pub mod selftest;

pub use decompose::{cycle_decomposition, decompose, perfect_matching, Cycle, Decomposition};
pub use distortion::{Colour, Distortion};
pub use engine::solve;
pub use error::{Error, Side};
pub use instance::{verify_colouring, DistortionInstance, Edge, EdgeColouring, EdgeId, Violation};
pub use regularize::{regularize, RegularizedInstance};
