//! Exact combinatorics of external angles under doubling: itinerary codings,
//! kneading sequences, hyperbolic components and their conspicuous families,
//! the leaf and arc-set recursion of a component, and decision procedures for
//! the pseudo-monodromy locus Disc(H).

pub mod cache;
pub mod circle;
pub mod coding;
pub mod components;
pub mod error;
pub mod lamination;
pub mod render;
pub mod report;
pub mod verify;

pub use circle::{Angle, Arc, ArcSet, Fraction, Orbit};
pub use coding::{PartitionSpec, Symbol, Word};
pub use components::{ComponentPool, HyperbolicComponent};
pub use error::{Error, Result};
