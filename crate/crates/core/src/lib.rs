pub mod cli;
mod error;
pub mod exactnum;
pub mod heights;
pub mod hull;
pub mod lattice;
pub mod linalg;
pub mod polytope;
pub mod roof;
pub mod toric;

pub use error::{Error, Result};
