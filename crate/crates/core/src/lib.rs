//! Exact and certified computation with the BCZ map on the Farey triangle.

pub mod analysis;
pub mod bcz;
pub mod cli;
pub mod contfrac;
pub mod excursion;
pub mod lattice;
mod error;
pub mod numerics;
pub mod sample;

pub use error::{Error, Precondition, Result};
