pub mod error;
pub mod exact;
pub mod interface;
pub mod invariants;
pub mod lattice;
pub mod patchwork;
pub mod regularity;
pub mod restrictions;
pub mod search;
pub mod topology;

pub use error::{Error, Result};
