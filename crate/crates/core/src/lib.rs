//! Persistent entropy of persistence barcodes.
//!
//! The crate is organised around [`Barcode`], a finite multiset of
//! birth/death [`Interval`]s:
//!
//! * [`barcode`] holds the data model, the subspace predicates and the
//!   projections that move barcodes between them (translation to the
//!   origin, normalization, and the two ways of truncating infinite
//!   intervals).
//! * [`metric`] computes exact p-Wasserstein and bottleneck distances by
//!   solving the underlying assignment problems.
//! * [`entropy`] evaluates persistent entropy and the stability bounds that
//!   relate entropy differences to barcode distances.
//! * [`summary`] builds the entropy summary functions (ES, NES, TES) as exact
//!   step functions and ranks topological features with TES.
//! * [`rips`] builds Vietoris-Rips filtrations and computes Z/2 persistence
//!   by boundary-matrix reduction.
//! * [`fixtures`] generates the seeded point clouds and random barcodes used
//!   by the experiments and test suites.

pub mod barcode;
pub mod entropy;
mod error;
pub mod fixtures;
pub mod io;
pub mod metric;
pub mod rips;
pub mod summary;

pub use barcode::{truncate_absolute, Barcode, Interval, TOLERANCE};
pub use entropy::{persistent_entropy, EntropyReport, LogBase};
pub use error::{Error, Result};
pub use metric::{bottleneck, relative_error, wasserstein, Matching};
pub use rips::{DistanceMatrix, FilteredComplex, PointCloud};
pub use summary::{AliveProfile, InfPolicy, StepFunction};
