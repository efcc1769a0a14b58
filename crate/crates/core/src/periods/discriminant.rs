//! Resultants and discriminants via fraction-free Sylvester determinants.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cyclo::IntPoly;
use crate::error::{Error, Result};

/// Sylvester matrix of `f` (degree n) and `g` (degree m), size n + m.
pub fn sylvester_matrix(f: &IntPoly, g: &IntPoly) -> Vec<Vec<BigInt>> {
    let n = f.degree().unwrap_or(0);
    let m = g.degree().unwrap_or(0);
    let size = n + m;
    let mut rows = Vec::with_capacity(size);
    // Coefficients highest degree first.
    let fc: Vec<BigInt> = f.coeffs().iter().rev().cloned().collect();
    let gc: Vec<BigInt> = g.coeffs().iter().rev().cloned().collect();
    for shift in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in fc.iter().enumerate() {
            row[shift + j] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in gc.iter().enumerate() {
            row[shift + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Bareiss fraction-free elimination; every division is exact.
pub fn determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

pub fn resultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(determinant(sylvester_matrix(f, g)))
}

/// `(-1)^{n(n-1)/2} · Res(f, f') / lc(f)`.
pub fn polynomial_discriminant(f: &IntPoly) -> Result<BigInt> {
    let n = match f.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => {
            return Err(Error::InvalidArgument(
                "discriminant needs degree at least 1".into(),
            ))
        }
        Some(n) => n,
    };
    let res = resultant(f, &f.derivative())?;
    let lc = f.leading().unwrap();
    let q = &res / lc;
    debug_assert_eq!(&q * lc, res);
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -q } else { q })
}
