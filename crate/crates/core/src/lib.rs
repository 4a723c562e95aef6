//! Exact matroid computations over circuit families, with tools for echidnas, t-spikes
//! and the extremal arguments around them.
//!
//! Ground sets are `{0, .., n-1}` with `n <= 31`; subsets are [`ElementSet`] bitmasks.

pub mod error;
pub mod extremal;
pub mod io;
pub mod matroid;
pub mod report;
pub mod set;
pub mod spike;

pub use error::{Error, Result};
pub use matroid::{Matroid, Minor, NamedMatroid};
pub use report::{AuditReport, Finding, Status};
pub use set::ElementSet;
pub use spike::{ArmPartition, SpikeCertificate};
