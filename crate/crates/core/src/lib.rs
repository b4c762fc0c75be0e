//! Exact arithmetic for the perfect-matching association scheme of `K_2k`.
//!
//! The crate enumerates perfect matchings, builds the scheme's class
//! matrices, extracts eigenvalues from Young-subgroup quotient graphs,
//! constructs Singer-difference-set cliques and checks the ratio and
//! clique-coclique bounds for 2-intersecting families.
//!
//! Everything reported is exact (`BigInt`/`BigRational`). Floating point is
//! only used to propose candidates that are verified exactly afterwards.

pub mod combinat;
pub mod ekr;
pub mod error;
pub mod exec;
pub mod geometry;
pub mod linalg;
pub mod matchings;
pub mod quotient;
pub mod rational;
pub mod scheme;

pub use combinat::IntegerPartition;
pub use error::{Error, Result};
pub use exec::Execution;
pub use matchings::PerfectMatching;
pub use rational::Rational;
