//! Rowmotion, toggles and tilings on fence posets, with exact checkers for
//! homomesy and orbit-structure claims.
//!
//! ```
//! use fence_rowmotion::{fence::Fence, rowmotion::antichain_orbits};
//!
//! let f = Fence::parse("4,3,4").unwrap();
//! let mut sizes: Vec<usize> = antichain_orbits(&f).unwrap().iter().map(|o| o.size()).collect();
//! sizes.sort();
//! assert_eq!(sizes, vec![5, 17, 17, 17]);
//! ```

pub mod enumeration;
pub mod error;
pub mod fence;
pub mod harness;
pub mod rowmotion;
pub mod stats;
pub mod tiling;
pub mod toggles;

pub use error::{FenceError, Result};
pub use fence::{Composition, ElementSet, Fence, SetKind};
pub use rowmotion::{Family, Orbit};
