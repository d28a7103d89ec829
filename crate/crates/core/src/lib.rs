//! Exact K-stability invariants of toric Q-Fano varieties.
//!
//! A toric variety is given by a complete simplicial [`Fan`]. From it the
//! workbench builds the anticanonical polytope, evaluates per-valuation
//! invariants (log discrepancy, pseudo-effective and nef thresholds,
//! volume function, beta) for torus-invariant divisorial valuations, the
//! alpha invariant, and the projective-space screen. All arithmetic is
//! exact over `Q`.

pub mod alpha;
pub mod concavity;
pub mod error;
pub mod fan;
pub mod lattice;
pub mod piecewise;
pub mod polytope;
pub mod valuation;
pub mod variety;
pub mod workbench;

pub use error::{Error, InvariantKind, Result};
pub use fan::{Cone, Fan};
pub use lattice::{DualVec, LatticeVec, Rat};
pub use piecewise::{PiecewisePolynomial, Polynomial};
pub use polytope::{anticanonical_polytope, HalfSpace, RationalPolytope};
pub use valuation::{ToricValuation, ValuationProfile};
pub use variety::ToricFano;
