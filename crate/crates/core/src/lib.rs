//! Matroids with cyclic arrangements of circuits and cocircuits.
//!
//! The crate is organised bottom-up:
//!
//! - [`bitset`] and [`matroid`]: subsets as machine words, and the matroid
//!   kernel (rank, closure, duality, minors, circuits, axiom checks);
//! - [`construct`]: bases / circuits / GF(p) / graph routes and the JSON file format;
//! - [`families`]: wheels, whirls, spikes and swirls with their cyclic orderings;
//! - [`connectivity`]: the connectivity function, local connectivity and flowers;
//! - [`cyclic`]: cyclic orderings, the cyclic (t-1, t)-property, t-cyclic orderings,
//!   ordering search and the window-structure certificate;
//! - [`constructions`]: free extension, truncation, Higgs lift and inflation;
//! - [`report`] and [`harness`]: verification reports and the named suites.

pub mod bitset;
pub mod connectivity;
pub mod construct;
pub mod constructions;
pub mod cyclic;
pub mod error;
pub mod families;
pub mod harness;
pub mod matroid;
pub mod report;

pub use bitset::ElementSet;
pub use connectivity::{FlowerClass, FlowerVerdict};
pub use construct::{construct, LinearRep, MatroidFile, MatroidRepr, DEFAULT_PRIME};
pub use cyclic::{CyclicOrdering, OrderingFile, Parity, SearchMode};
pub use error::{Error, Result};
pub use families::{FamilyBundle, FamilyKind, FamilySpec};
pub use harness::{run_suite, Suite, SuiteSpec};
pub use matroid::{Matroid, Minor};
pub use report::{ReportFormat, VerificationReport};
