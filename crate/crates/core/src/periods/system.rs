use serde::Serialize;

use crate::error::{Error, Result};
use crate::squares::{factor_powers, is_prime, pow_mod};

/// Data defining the Gaussian periods of a prime: `e` periods of `f`
/// terms each, labelled by powers of the primitive root `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PeriodSystem {
    pub p: u64,
    pub e: u64,
    pub f: u64,
    pub g: u64,
}

impl PeriodSystem {
    pub fn new(p: u64, e: u64) -> Result<Self> {
        let invalid = |reason: &str| Error::InvalidPeriodSystem {
            p,
            e,
            reason: reason.to_string(),
        };
        if p < 3 || !is_prime(p) {
            return Err(invalid("p must be an odd prime"));
        }
        if e < 2 || !(p - 1).is_multiple_of(e) {
            return Err(invalid("e must be at least 2 and divide p - 1"));
        }
        Ok(PeriodSystem {
            p,
            e,
            f: (p - 1) / e,
            g: primitive_root(p)?,
        })
    }

    /// Order of the ring holding Gauss sums, `e·p`.
    pub fn gauss_order(&self) -> usize {
        (self.e * self.p) as usize
    }

    /// `dlog[x] = n` with `g^n ≡ x (mod p)`, for `x` in `1..p`.
    pub fn discrete_logs(&self) -> Vec<u64> {
        let mut table = vec![0; self.p as usize];
        let mut x = 1u64;
        for n in 0..self.p - 1 {
            table[x as usize] = n;
            x = x * self.g % self.p;
        }
        table
    }

    /// The powers `g^0, g^1, ..., g^{p-2}` modulo `p`.
    pub fn root_powers(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.p as usize - 1);
        let mut x = 1u64;
        for _ in 0..self.p - 1 {
            out.push(x);
            x = x * self.g % self.p;
        }
        out
    }
}

/// Smallest generator of `(Z/p)^*`.
pub fn primitive_root(p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Ok(1);
    }
    let primes: Vec<u64> = factor_powers(p - 1)?.into_iter().map(|(q, _)| q).collect();
    (2..p)
        .find(|&g| primes.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .ok_or_else(|| Error::Inconsistent(format!("no primitive root mod {p}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    // Oracle: order of g by repeated multiplication.
    fn order(g: u64, p: u64) -> u64 {
        let mut x = g % p;
        let mut n = 1;
        while x != 1 {
            x = x * g % p;
            n += 1;
        }
        n
    }

    #[test]
    fn primitive_root_examples() {
        assert_eq!(primitive_root(5).unwrap(), 2);
        assert_eq!(primitive_root(7).unwrap(), 3);
        assert_eq!(primitive_root(11).unwrap(), 2);
        assert_eq!(primitive_root(9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn primitive_root_is_smallest_generator() {
        for p in (3..500).filter(|&p| is_prime(p)) {
            let g = primitive_root(p).unwrap();
            assert_eq!(order(g, p), p - 1, "p = {p}");
            assert!((2..g).all(|h| order(h, p) < p - 1), "p = {p}");
        }
    }

    #[test]
    fn system_validation() {
        let s = PeriodSystem::new(11, 5).unwrap();
        assert_eq!((s.f, s.g), (2, 2));
        assert!(PeriodSystem::new(11, 3).is_err());
        assert!(PeriodSystem::new(15, 2).is_err());
        assert!(PeriodSystem::new(2, 1).is_err());
        assert!(PeriodSystem::new(11, 1).is_err());
        let logs = s.discrete_logs();
        for (n, x) in s.root_powers().into_iter().enumerate() {
            assert_eq!(logs[x as usize], n as u64);
        }
    }
}
