//! Combinatorics and geometry of the quiver Grassmannians
//! `X_S(k, n, ω) = Gr_{(kω,…,kω)}(U_{ωn,S})` over the cyclic quiver `Δ_r`.
//!
//! The crate is organised bottom-up:
//!
//! * [`ambient`] validates an instance and builds the shift representation
//!   `U_{ωn,S}` together with its decomposition into chains.
//! * [`fixedpoints`] enumerates torus fixed points (juggling patterns and
//!   tail-length vectors), energies, cell coordinates and strata.
//! * [`momentgraph`] builds the labelled GKM moment graph and the closure order.
//! * [`geometry`] computes Poincaré polynomials, irreducible components and
//!   automorphism dimensions.
//! * [`projections`] implements the parahoric projections and their lifts.
//! * [`desing`] realises the extended-quiver desingularization.
//! * [`oracle`] holds the brute-force ground truth used to cross-check all of
//!   the above.
//!
//! Conventions: quiver vertices are `0..r` internally and printed 1-based;
//! basis indices and chain labels are 1-based throughout.

pub mod ambient;
pub mod desing;
mod error;
pub mod fixedpoints;
pub mod geometry;
mod linalg;
pub mod momentgraph;
pub mod oracle;
pub mod poly;
pub mod projections;
pub mod rep;

pub use ambient::{BasisVector, Chain, DimVector, ParahoricData, ShiftRepresentation};
pub use error::{Error, Result};
pub use fixedpoints::{FixedPoint, Grassmannian, JugglingPattern, LVector, StratumKey};
pub use geometry::{Component, ComponentIndex};
pub use momentgraph::{Character, MomentGraph, Move, PartialOrder};
pub use oracle::{Budget, CoordinateSubrep};
pub use poly::IntPolynomial;
pub use rep::CoordRep;
