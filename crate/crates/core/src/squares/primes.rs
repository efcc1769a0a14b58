//! 64-bit primality, factorization and small integer helpers.

use num_integer::Integer;

use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 1_000_000;

// Strong-probable-prime bases that are deterministic below 2^64.
const SPRP_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SPRP_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &SPRP_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}

// Brent's variant of Pollard rho. Returns a nontrivial factor of the odd
// composite `n`.
fn rho(n: u64) -> u64 {
    for c in 1..n {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
        let mut x = y;
        let mut ys = y;
        let m = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("rho failed on {n}")
}

fn split_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = rho(n);
    split_into(d, out);
    split_into(n / d, out);
}

/// Prime factors of `n` with multiplicity, ascending.
pub fn factorize(mut n: u64) -> Result<Vec<u64>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("cannot factor {n}")));
    }
    let mut out = Vec::new();
    while n.is_multiple_of(2) {
        out.push(2);
        n /= 2;
    }
    let mut d = 3;
    while d <= TRIAL_LIMIT && d * d <= n {
        while n.is_multiple_of(d) {
            out.push(d);
            n /= d;
        }
        d += 2;
    }
    if n > 1 {
        split_into(n, &mut out);
    }
    out.sort_unstable();
    Ok(out)
}

/// `(prime, exponent)` pairs.
pub fn factor_powers(n: u64) -> Result<Vec<(u64, u32)>> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in factorize(n)? {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    Ok(out)
}

/// Integer cube root of `n` if `n` is a perfect cube.
pub fn perfect_cube_test(n: i128) -> Option<i128> {
    let neg = n < 0;
    let a = n.unsigned_abs();
    let (mut lo, mut hi) = (0u128, 1u128 << 43);
    // hi^3 > 2^128 > |n|
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        match mid.checked_pow(3) {
            Some(c) if c <= a => lo = mid,
            _ => hi = mid - 1,
        }
    }
    (lo * lo * lo == a).then(|| if neg { -(lo as i128) } else { lo as i128 })
}

/// Largest `r` with `r^2 <= n`.
pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut r = (n as f64).sqrt() as u128;
    while r.checked_mul(r).is_none_or(|s| s > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|s| s <= n) {
        r += 1;
    }
    r
}
