//! Fourier analysis on the Boolean cube together with exact evaluators for
//! the variance-of-absolute-value inequalities behind partition FKN
//! theorems, and a sweep harness that checks them on exhaustive and random
//! instance families.
//!
//! Module map:
//! - [`fourier`]: truth tables, the Walsh–Hadamard transform, distances,
//!   restrictions to blocks of a partition and the balancing extension.
//! - [`rv`]: exact finite-support random variables.
//! - [`bounds`]: evaluators that return both sides of each inequality.
//! - [`constructions`]: the tribes and two-variable tightness examples.
//! - [`harness`]: enumeration, random generation and sweeps.
//! - [`format`]: the plain-text file formats.

pub mod bounds;
pub mod constructions;
pub mod exact;
pub mod format;
pub mod fourier;
pub mod harness;
pub mod rv;

pub use bounds::{BoundReport, Corollary2Report, PaperConstants};
pub use fourier::{BooleanFunction, FourierExpansion, Partition, RealFunction};
pub use num_rational::BigRational;
pub use rv::{ConstAbsRV, DiscreteRV, TwoPointBalancedRV};
