//! Certified enumeration of the vertex-edge graph of a rational polytope
//! `{x : A·x ≥ b}` through lexicographically perturbed bases, together with
//! an independent checker for the emitted certificates and a Hirsch-bound
//! audit.

pub mod bundle;
pub mod certificate;
pub mod error;
pub mod exactnum;
pub mod graphcore;
pub mod instances;
pub mod mutation;
pub mod polytope;
pub mod prover;
pub mod verifier;

pub use error::{Error, Result};
