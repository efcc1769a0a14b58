//! Arithmetic side conditions on an instance.

use serde::{Deserialize, Serialize};

use super::instance::DecompInstance;
use crate::squares::{is_prime, perfect_cube_test};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Filter {
    /// `sum_squares - block_sum` is a perfect cube.
    CubeGap,
    /// `sum_squares - 2·block_sum` is prime (two blocks only).
    PrimeGap,
    /// Search mode: only test distance-class partitions.
    DistanceClassOnly,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FilterReport {
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cube_root: Option<i128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime_gap: Option<PrimeGapWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeGapWitness {
    pub value: i128,
    pub prime: bool,
}

pub fn apply_filters(inst: &DecompInstance, filters: &[Filter]) -> FilterReport {
    let mut report = FilterReport {
        passed: true,
        ..Default::default()
    };
    for f in filters {
        match f {
            Filter::CubeGap => {
                report.cube_root = perfect_cube_test(inst.gap);
                report.passed &= report.cube_root.is_some();
            }
            Filter::PrimeGap => {
                let value = inst.sum_squares - 2 * inst.block_sum;
                let prime = inst.m == 2 && u64::try_from(value).is_ok_and(is_prime);
                report.prime_gap = Some(PrimeGapWitness { value, prime });
                report.passed &= prime;
            }
            Filter::DistanceClassOnly => {}
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::instance::Provenance;

    fn base() -> DecompInstance {
        DecompInstance::new(
            vec![6, 16, 26, 41],
            vec![vec![(0, 3), (1, 2), (1, 3)], vec![(0, 1), (0, 2), (2, 3)]],
            Provenance::Search,
        )
        .unwrap()
    }

    #[test]
    fn base_passes_both() {
        let r = apply_filters(&base(), &[Filter::CubeGap]);
        assert!(r.passed);
        assert_eq!(r.cube_root, Some(11));
        let r = apply_filters(&base(), &[Filter::PrimeGap]);
        assert!(r.passed);
        assert_eq!(
            r.prime_gap,
            Some(PrimeGapWitness {
                value: 13,
                prime: true
            })
        );
    }

    #[test]
    fn ones_cube_gap() {
        let inst = DecompInstance::new(
            vec![1, 1, 1, 1],
            vec![vec![(0, 1), (0, 2), (0, 3)], vec![(1, 2), (1, 3), (2, 3)]],
            Provenance::Search,
        )
        .unwrap();
        assert_eq!(inst.gap, 1);
        let r = apply_filters(&inst, &[Filter::CubeGap, Filter::PrimeGap]);
        assert_eq!(r.cube_root, Some(1));
        // 4 - 6 = -2 is not prime
        assert!(!r.passed);
    }

    #[test]
    fn no_filters_pass() {
        assert!(apply_filters(&base(), &[]).passed);
    }
}
