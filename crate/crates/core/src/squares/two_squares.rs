//! Sums of two squares.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::primes::{factor_powers, is_prime, isqrt, mul_mod, pow_mod};
use crate::error::{Error, Result};

/// `n = x² + y²` with `0 ≤ x ≤ y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TwoSquares {
    pub n: u128,
    pub x: u128,
    pub y: u128,
}

impl TwoSquares {
    /// Normalizes signs and order. Panics if `x² + y²` overflows.
    pub fn new(x: i128, y: i128) -> Self {
        let (mut x, mut y) = (x.unsigned_abs(), y.unsigned_abs());
        if x > y {
            std::mem::swap(&mut x, &mut y);
        }
        let n = x * x + y * y;
        TwoSquares { n, x, y }
    }

    pub fn holds(&self) -> bool {
        self.x <= self.y && self.x * self.x + self.y * self.y == self.n
    }
}

/// Both representations of `(a²+b²)(c²+d²)` given by the
/// Brahmagupta–Fibonacci identity: `(ac+bd)² + (ad−bc)²` and
/// `(ac−bd)² + (ad+bc)²`.
pub fn brahmagupta_compose(a: i64, b: i64, c: i64, d: i64) -> [TwoSquares; 2] {
    let (a, b, c, d) = (a as i128, b as i128, c as i128, d as i128);
    let n = ((a * a + b * b) * (c * c + d * d)) as u128;
    let first = TwoSquares::new(a * c + b * d, a * d - b * c);
    let second = TwoSquares::new(a * c - b * d, a * d + b * c);
    assert_eq!(first.n, n);
    assert_eq!(second.n, n);
    [first, second]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Representability {
    Representable {
        witness: TwoSquares,
    },
    /// A prime `≡ 3 (mod 4)` dividing `n` to an odd power.
    NotRepresentable {
        offending_prime: u64,
    },
}

impl Representability {
    pub fn is_representable(&self) -> bool {
        matches!(self, Representability::Representable { .. })
    }
}

/// Decides whether `n` is a sum of two squares and returns a witness or
/// the obstructing prime. Witnesses are built by multiplying the Gaussian
/// primes above each `p ≡ 1 (mod 4)` in ascending order.
pub fn two_squares_representable(n: u64, seed: u64) -> Representability {
    if n == 0 {
        return Representability::Representable {
            witness: TwoSquares::new(0, 0),
        };
    }
    if n == 1 {
        return Representability::Representable {
            witness: TwoSquares::new(0, 1),
        };
    }
    let powers = factor_powers(n).expect("n >= 2");
    if let Some(&(p, _)) = powers.iter().find(|(p, e)| p % 4 == 3 && e % 2 == 1) {
        return Representability::NotRepresentable { offending_prime: p };
    }
    // Gaussian integer accumulator re + im·i
    let (mut re, mut im) = (1i128, 0i128);
    for (p, e) in powers {
        let (gr, gi, times) = match p % 4 {
            2 => (1, 1, e),
            1 => {
                let ts = prime_two_square_decomposition(p, seed).expect("p ≡ 1 (mod 4)");
                (ts.x as i128, ts.y as i128, e)
            }
            _ => (p as i128, 0, e / 2),
        };
        for _ in 0..times {
            (re, im) = (re * gr - im * gi, re * gi + im * gr);
        }
    }
    let witness = TwoSquares::new(re, im);
    debug_assert_eq!(witness.n, n as u128);
    Representability::Representable { witness }
}

/// Fermat decomposition of a prime `p ≡ 1 (mod 4)`.
///
/// A square root `r` of −1 is found as `b^((p−1)/4)` for seeded random
/// bases `b`; the Euclidean algorithm on `(p, r)` then yields `x, y` as
/// the first two remainders below `√p`.
pub fn prime_two_square_decomposition(p: u64, seed: u64) -> Result<TwoSquares> {
    if p % 4 != 1 {
        return Err(Error::InvalidArgument(format!("{p} is not 1 mod 4")));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = loop {
        let b = rng.gen_range(2..p);
        let r = pow_mod(b, (p - 1) / 4, p);
        if mul_mod(r, r, p) == p - 1 {
            break r;
        }
    };
    let root = isqrt(p as u128) as u64;
    let (mut a, mut b) = (p, r);
    let mut below = Vec::with_capacity(2);
    for v in [a, b] {
        if v <= root {
            below.push(v);
        }
    }
    while below.len() < 2 && b > 0 {
        (a, b) = (b, a % b);
        if b <= root {
            below.push(b);
        }
    }
    let ts = match below[..] {
        [x, y] => TwoSquares::new(x as i128, y as i128),
        _ => return Err(Error::Inconsistent(format!("descent failed for {p}"))),
    };
    if ts.n != p as u128 {
        return Err(Error::Inconsistent(format!("descent failed for {p}")));
    }
    Ok(ts)
}
