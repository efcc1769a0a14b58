//! Distance classes of an ordered tuple, read as the coefficients of an
//! element of `Z[ζ_e]` with one extra zero slot.

use super::instance::{Pair, Partition};
use crate::error::{Error, Result};
use crate::squares::is_prime;

/// Class sums `γ_1..γ_{(e-1)/2}` and whether they all agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceClasses {
    pub sums: Vec<i128>,
    pub balanced: bool,
}

fn modulus_for(k: usize) -> Result<usize> {
    let e = k + 1;
    if e < 3 || !is_prime(e as u64) {
        return Err(Error::InvalidArgument(format!(
            "tuple length {k} + 1 is not an odd prime"
        )));
    }
    Ok(e)
}

/// Cyclic autocorrelations of `(tuple, 0)` at shifts `1..=(e-1)/2`.
pub fn distance_class_check(tuple: &[i128]) -> Result<DistanceClasses> {
    let e = modulus_for(tuple.len())?;
    let slot = |i: usize| tuple.get(i % e).copied().unwrap_or(0);
    let sums: Vec<i128> = (1..=(e - 1) / 2)
        .map(|d| (0..e).map(|i| slot(i) * slot(i + d)).sum())
        .collect();
    let balanced = sums.iter().all(|&s| s == sums[0]);
    Ok(DistanceClasses { sums, balanced })
}

/// The pairs of each distance class: `(i, j)` belongs to class
/// `min(j - i, e - (j - i))`.
pub fn distance_class_blocks(k: usize) -> Result<Partition> {
    let e = modulus_for(k)?;
    let mut blocks: Vec<Vec<Pair>> = vec![Vec::new(); (e - 1) / 2];
    for i in 0..k {
        for j in i + 1..k {
            let d = (j - i).min(e - (j - i));
            blocks[d - 1].push((i, j));
        }
    }
    Ok(blocks)
}
