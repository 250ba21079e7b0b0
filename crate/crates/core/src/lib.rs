//! Exact-arithmetic tooling for partition inequalities.
//!
//! The crate is organised bottom-up:
//!
//! - [`qseries`]: truncated one- and two-variable power series with
//!   arbitrary-precision integer coefficients, and expansion of
//!   (possibly signed, possibly infinite) q-Pochhammer products.
//! - [`partitions`]: partitions, M-modular diagrams and the brute-force
//!   enumeration oracle every series is validated against.
//! - [`injections`]: executable partition injections together with their
//!   case classifiers and an exhaustive audit harness.
//! - [`antitelescope`]: anti-telescoping decompositions of product
//!   differences and the Andrews-Baxter `G_i` recurrence.
//! - [`inequalities`]: the high-level checkers and parameter searches.

pub mod antitelescope;
pub mod error;
pub mod inequalities;
pub mod injections;
pub mod partitions;
pub mod qseries;

pub use error::{Error, Result};
pub use partitions::{ColoredPartition, Constraints, MModularDiagram, Partition};
pub use qseries::{Expansion, ProductSpec, QPoly, ZQPoly};
