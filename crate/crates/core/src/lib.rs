//! Nowhere-zero integer flows on signed circular and Moebius ladders.
//!
//! Three engines check each other: an exhaustive search over small signed
//! graphs ([`solver`]), a constructive prover that contracts positive
//! squares down to tabulated base cases ([`ladder::constructive_5flow`]),
//! and a linear-time transfer-matrix decision procedure
//! ([`ladder::dp_has_nzflow`]).

pub mod enumerate;
pub mod error;
pub mod ladder;
pub mod signed;
pub mod solver;

pub use error::{Error, Result};
pub use signed::{Sign, SignedGraph, SwitchingSet};
pub use solver::Flow;
