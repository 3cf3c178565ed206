//! Crossing-parity realisability for plane drawings of small graphs.
//!
//! A drawing of a graph determines, for every pair of independent edges, the
//! parity of the number of times they cross. This crate decides which sets
//! of pairs arise that way, using the cochain complex of the deleted product
//! over GF(2), and provides the supporting machinery: bit-packed linear
//! algebra with a Gray-code coset weight enumerator, automorphism groups and
//! orbit counting on crossing sets, and an exact verifier for integer
//! polyline drawings.

pub mod complex;
pub mod drawing;
pub mod gf2;
pub mod graph;
pub mod realise;
pub mod symmetry;

pub use complex::{OrderedComplex, SymmetricComplex};
pub use drawing::{CrossingReport, Drawing, DrawingError, DrawingErrorCode, Point};
pub use gf2::{AffineSubspace, BitMatrix, BitVector, WeightHistogram};
pub use graph::{CrossingSet, Graph, PairIndex};
pub use realise::{ObstructionModel, Realisability};
pub use symmetry::{Orbit, PermGroup, Permutation};
