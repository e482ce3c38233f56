//! Simulation and analysis toolkit for the quantum-classical exclusion game.
//!
//! Alice holds an `n`-bit string `x`, Bob is handed a uniformly random
//! size-`m` subset `y` of positions and must name an `m`-bit string that
//! differs from `x` restricted to `y`. This crate provides:
//!
//! - [`qcore`]: dense state vectors, rank-one projective measurements,
//!   seeded random streams and Shannon/von Neumann entropy primitives.
//! - [`pbr`]: the conjugate-basis product states, the critical angle and
//!   the exclusion measurement Bob uses to answer with certainty.
//! - [`bounds`]: closed-form information-cost bounds for the quantum and
//!   classical one-way protocols.
//! - [`classical`]: the exhaustive minimal-exclusion oracle, consistent
//!   answer sets and a greedy covering protocol with exact information cost.
//! - [`steering`]: the entanglement-assisted protocol with abort.
//! - [`game`]: an end-to-end referee harness with Monte-Carlo statistics.

pub mod bounds;
pub mod classical;
mod error;
pub mod game;
pub mod pbr;
pub mod qcore;
pub mod steering;

pub use error::{Error, Result};
