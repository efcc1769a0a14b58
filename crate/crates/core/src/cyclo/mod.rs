//! Exact arithmetic in cyclotomic rings.

mod elem;
mod poly;

pub use elem::{CycElem, RingOp, EMBED_TOLERANCE};
pub use poly::{cyclotomic_polynomial, euler_phi, IntPoly};
