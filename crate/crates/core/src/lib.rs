//! Exact-arithmetic tooling for the hamiltonian circuit polytope `H_n(v)`:
//! the convex hull of all successor vectors `x` for which `x_i` names the
//! vertex that follows `v_i` on a single hamiltonian cycle.
//!
//! The crate is organized bottom-up:
//!
//! * [`circuit`]: domains, circuits, partial circuits (`J`-circuits) and the
//!   conversions between tour order and successor form.
//! * [`enumeration`]: brute-force enumeration, completion of partial circuits,
//!   dimension witnesses.
//! * [`greedy`]: the greedy generator of undominated `J`-circuits and the
//!   implied-ordering construction.
//! * [`facets`]: inequalities, facet families, validity and facet
//!   certification, arc-model mapping.
//! * [`separation`]: separation routines for every implemented family.
//!
//! All arithmetic is over [`Rational`] (arbitrary precision), so every
//! equality and rank test is exact.

pub mod caps;
pub mod circuit;
pub mod enumeration;
pub mod error;
pub mod facets;
pub mod greedy;
pub mod linalg;
mod par;
pub mod rational;
pub mod separation;

#[doc(hidden)]
pub mod cli;

pub use caps::Caps;
pub use circuit::{Circuit, Domain, JCircuit, SignPartition};
pub use error::{Error, Result};
pub use facets::{FacetCertificate, FacetStatus, FamilyId, FamilyTag, LinearInequality};
pub use rational::Rational;
pub use separation::{Cut, QueryPoint, SeparationResult};
