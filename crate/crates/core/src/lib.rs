pub mod fan;
pub mod lattice;
pub mod lp;
pub mod plfun;
pub mod ehrhart;
pub mod polytope;
pub mod matroid;
pub mod pering;
pub mod error;
pub mod json;

pub use error::{Error, Result};
