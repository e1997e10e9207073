//! Concave majorants and extremal times of càdlàg paths.
//!
//! The crate simulates bounded-variation Lévy, Brownian and Itô paths, builds
//! their exact piecewise-linear concave majorants, extracts extremal times and
//! uses them to solve the inviscid Burgers equation and to predict the final
//! clumps of a sticky-particle system. The [`harness`] module turns each
//! almost-sure statement about these objects into a seeded Monte Carlo
//! experiment.

pub mod burgers;
pub mod drift;
pub mod error;
pub mod harness;
pub mod hull;
pub mod path;
pub mod rng;
pub mod stats;
pub mod sticky;

pub use error::{Error, Result};
pub use rng::RngStream;
