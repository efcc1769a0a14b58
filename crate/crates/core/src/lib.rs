//! Exact cyclotomic arithmetic, Gaussian periods and Gauss sums, and a
//! search engine for balanced decompositions of pairwise products.
//!
//! The running example is the tuple `(6, 16, 26, 41)`, whose six pairwise
//! products split into two triples summing to 1318, and whose origin is
//! the fifth power of a Gauss sum for `p = 11`.

pub mod catalog;
pub mod cyclo;
pub mod error;
pub mod periods;
pub mod search;
pub mod squares;
pub mod verify;

pub use error::{Error, Result};
