//! Exhaustive verification of the orbit theorems and conjectures, with
//! JSON reports.

pub mod conjectures;
pub mod report;
pub mod theorems;

pub use report::{Checker, Instance, Verdict, VerificationReport, SCHEMA_VERSION};

use crate::fence::DEFAULT_MAX_FAMILY;
use crate::toggles::DEFAULT_SEED;

/// Limits shared by every check.
#[derive(Clone, Debug)]
pub struct Config {
    /// Largest orbit family that may be enumerated.
    pub max_family: usize,
    pub seed: u64,
    /// Random words per fence for sampled checks.
    pub samples: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_family: DEFAULT_MAX_FAMILY,
            seed: DEFAULT_SEED,
            samples: 200,
        }
    }
}
