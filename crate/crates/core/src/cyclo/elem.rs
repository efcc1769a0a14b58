//! Elements of the cyclotomic ring `Z[ζ_m]`.
//!
//! An element is stored as a length-`m` coefficient vector modulo
//! `x^m - 1`, so multiplication is a plain cyclic convolution. The
//! `Φ_m` power basis is only materialized for equality, printing,
//! rationality checks and subfield extraction.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::poly::{cyclotomic_polynomial, IntPoly};
use crate::error::{Error, Result};

/// Relative tolerance used for floating cross-checks of exact values.
pub const EMBED_TOLERANCE: f64 = 1e-9;

fn phi_cached(m: usize) -> Arc<IntPoly> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<IntPoly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    let p = Arc::new(cyclotomic_polynomial(m).expect("order is positive"));
    cache.lock().unwrap().insert(m, p.clone());
    p
}

/// Reduce a coefficient vector modulo the monic polynomial `modulus`,
/// in place. Entries at or above `deg(modulus)` end up zero.
fn reduce_in_place(coeffs: &mut [BigInt], modulus: &IntPoly) {
    let d = modulus.degree().unwrap();
    let low = &modulus.coeffs()[..d];
    for deg in (d..coeffs.len()).rev() {
        let lead = std::mem::take(&mut coeffs[deg]);
        if lead.is_zero() {
            continue;
        }
        for (j, c) in low.iter().enumerate() {
            if !c.is_zero() {
                coeffs[deg - d + j] -= c * &lead;
            }
        }
    }
}

fn mod_index(k: i64, m: usize) -> usize {
    k.rem_euclid(m as i64) as usize
}

/// Binary operations supported by [`CycElem::ring_arithmetic`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
}

/// An exact element of `Z[ζ_m]`.
#[derive(Clone, Debug)]
pub struct CycElem {
    order: usize,
    coeffs: Vec<BigInt>,
}

impl CycElem {
    /// Builds an element from coefficients of `ζ^0, ζ^1, ...`; missing
    /// entries are zero. More than `order` coefficients are folded
    /// cyclically.
    pub fn from_coeffs(order: usize, coeffs: Vec<BigInt>) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        let mut out = vec![BigInt::zero(); order];
        for (i, c) in coeffs.into_iter().enumerate() {
            out[i % order] += c;
        }
        Ok(CycElem { order, coeffs: out })
    }

    pub fn from_i64(order: usize, coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(order, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(order: usize) -> Self {
        assert!(order > 0, "cyclotomic order must be positive");
        CycElem {
            order,
            coeffs: vec![BigInt::zero(); order],
        }
    }

    pub fn constant(order: usize, c: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = c.into();
        z
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, 1)
    }

    /// `ζ_m^k`, with `k` taken modulo `m`.
    pub fn zeta_pow(order: usize, k: i64) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[mod_index(k, order)] = BigInt::one();
        z
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Raw group-ring coefficients (not reduced).
    pub fn raw_coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Adds `c·ζ^k` in place.
    pub fn add_term(&mut self, k: i64, c: impl Into<BigInt>) {
        let i = mod_index(k, self.order);
        self.coeffs[i] += c.into();
    }

    /// Representative supported on degrees `< φ(m)`. Idempotent.
    pub fn canonical_reduce(&self) -> CycElem {
        let mut coeffs = self.coeffs.clone();
        reduce_in_place(&mut coeffs, &phi_cached(self.order));
        CycElem {
            order: self.order,
            coeffs,
        }
    }

    /// Power-basis coordinates: exactly `φ(m)` integers.
    pub fn reduced_coeffs(&self) -> Vec<BigInt> {
        let phi = phi_cached(self.order);
        let d = phi.degree().unwrap();
        let mut coeffs = self.coeffs.clone();
        reduce_in_place(&mut coeffs, &phi);
        coeffs.truncate(d);
        coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.reduced_coeffs().iter().all(Zero::is_zero)
    }

    /// The rational integer this element equals, if it is one.
    pub fn as_rational(&self) -> Option<BigInt> {
        let mut c = self.reduced_coeffs().into_iter();
        let head = c.next().unwrap_or_default();
        c.all(|x| x.is_zero()).then_some(head)
    }

    fn check_order(&self, other: &CycElem) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    pub fn ring_arithmetic(&self, other: &CycElem, op: RingOp) -> Result<CycElem> {
        self.check_order(other)?;
        Ok(match op {
            RingOp::Add => self.add_unchecked(other),
            RingOp::Sub => self.sub_unchecked(other),
            RingOp::Mul => self.mul_unchecked(other),
        })
    }

    pub fn checked_add(&self, other: &CycElem) -> Result<CycElem> {
        self.ring_arithmetic(other, RingOp::Add)
    }

    pub fn checked_sub(&self, other: &CycElem) -> Result<CycElem> {
        self.ring_arithmetic(other, RingOp::Sub)
    }

    pub fn checked_mul(&self, other: &CycElem) -> Result<CycElem> {
        self.ring_arithmetic(other, RingOp::Mul)
    }

    fn add_unchecked(&self, other: &CycElem) -> CycElem {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycElem {
            order: self.order,
            coeffs,
        }
    }

    fn sub_unchecked(&self, other: &CycElem) -> CycElem {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CycElem {
            order: self.order,
            coeffs,
        }
    }

    fn mul_unchecked(&self, other: &CycElem) -> CycElem {
        let m = self.order;
        let mut out = vec![BigInt::zero(); m];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = if i + j >= m { i + j - m } else { i + j };
                out[k] += a * b;
            }
        }
        CycElem {
            order: m,
            coeffs: out,
        }
    }

    pub fn scale(&self, c: &BigInt) -> CycElem {
        CycElem {
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> CycElem {
        let mut base = self.clone();
        let mut acc = CycElem::one(self.order);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// The automorphism `σ_k : ζ ↦ ζ^k`.
    pub fn galois_apply(&self, k: i64) -> Result<CycElem> {
        let m = self.order;
        let k = mod_index(k, m);
        if k.gcd(&m) != 1 && m > 1 {
            return Err(Error::NotCoprime { k: k as i64, m });
        }
        let mut out = vec![BigInt::zero(); m];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[(i * k) % m] += c;
        }
        Ok(CycElem {
            order: m,
            coeffs: out,
        })
    }

    /// Complex conjugation, i.e. `σ_{-1}`.
    pub fn conj(&self) -> CycElem {
        self.galois_apply(-1).expect("-1 is a unit")
    }

    /// Units of `Z/m`, as exponents in `1..=m` reduced modulo `m`.
    pub fn galois_exponents(m: usize) -> Vec<usize> {
        (1..=m).filter(|k| k.gcd(&m) == 1).map(|k| k % m).collect()
    }

    /// `Π_k σ_k(a)` over all units `k` of `Z/m`.
    pub fn field_norm(&self) -> Result<BigInt> {
        let prod = Self::galois_exponents(self.order)
            .into_iter()
            .map(|k| self.galois_apply(k as i64).unwrap())
            .fold(CycElem::one(self.order), |acc, c| acc.mul_unchecked(&c));
        prod.as_rational().ok_or(Error::NotRational)
    }

    /// Re-express an element of `Z[ζ_m]`, `m = d·n` with `gcd(d, n) = 1`,
    /// as an element of `Z[ζ_d]`.
    ///
    /// The exponent `i` of `ζ_m` is split as `i ≡ n·u + d·v (mod m)` so
    /// that `ζ_m^i = ζ_d^u · ζ_n^v`. The `ζ_n` direction is then reduced
    /// modulo `Φ_n` with `Z[ζ_d]` coefficients; every component except
    /// the constant one has to vanish.
    pub fn subfield_project(&self, d: usize) -> Result<CycElem> {
        let m = self.order;
        if d == 0 || !m.is_multiple_of(d) || d.gcd(&(m / d)) != 1 {
            return Err(Error::BadSplit(d, m));
        }
        let n = m / d;
        // Invariance under Gal(Q(ζ_m)/Q(ζ_d)).
        for k in Self::galois_exponents(m) {
            if k % d == 1 % d && &self.galois_apply(k as i64)? != self {
                return Err(Error::NotInSubfield(d));
            }
        }
        if n == 1 {
            return Ok(self.clone());
        }
        let n_inv = mod_inverse(n, d);
        let d_inv = mod_inverse(d, n);
        let mut grid = vec![vec![BigInt::zero(); d]; n];
        for (i, c) in self.coeffs.iter().enumerate() {
            let u = (i * n_inv) % d;
            let v = (i * d_inv) % n;
            grid[v][u] += c;
        }
        let phi_n = phi_cached(n);
        let dn = phi_n.degree().unwrap();
        for deg in (dn..n).rev() {
            let lead = std::mem::take(&mut grid[deg]);
            for (j, c) in phi_n.coeffs()[..dn].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (slot, l) in grid[deg - dn + j].iter_mut().zip(&lead) {
                    *slot -= c * l;
                }
            }
        }
        for row in grid.iter().take(dn).skip(1) {
            let comp = CycElem {
                order: d,
                coeffs: row.clone(),
            };
            if !comp.is_zero() {
                return Err(Error::NotInSubfield(d));
            }
        }
        Ok(CycElem {
            order: d,
            coeffs: std::mem::take(&mut grid[0]),
        }
        .canonical_reduce())
    }

    /// Image under `Z[ζ_d] → Z[ζ_m]`, `ζ_d ↦ ζ_m^{m/d}`.
    pub fn embed_into(&self, m: usize) -> Result<CycElem> {
        let d = self.order;
        if m == 0 || !m.is_multiple_of(d) {
            return Err(Error::BadSplit(d, m));
        }
        let step = m / d;
        let mut out = vec![BigInt::zero(); m];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * step] += c;
        }
        Ok(CycElem {
            order: m,
            coeffs: out,
        })
    }

    /// Value at `ζ_m = exp(2πi/m)` in double precision.
    pub fn numeric_embed(&self) -> Complex64 {
        let m = self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let theta = std::f64::consts::TAU * i as f64 / m;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), theta)
            })
            .sum()
    }
}

fn mod_inverse(a: usize, m: usize) -> usize {
    if m == 1 {
        return 0;
    }
    let e = (a as i64).extended_gcd(&(m as i64));
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m as i64) as usize
}

impl PartialEq for CycElem {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.sub_unchecked(other).is_zero()
    }
}

impl Eq for CycElem {}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        /// Panics on an order mismatch; use the `checked_*` methods to get an error instead.
        impl $tr for &CycElem {
            type Output = CycElem;
            fn $method(self, rhs: &CycElem) -> CycElem {
                self.check_order(rhs).expect("cyclotomic order mismatch");
                self.$inner(rhs)
            }
        }

        impl $tr for CycElem {
            type Output = CycElem;
            fn $method(self, rhs: CycElem) -> CycElem {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_unchecked);
forward_binop!(Sub, sub, sub_unchecked);
forward_binop!(Mul, mul, mul_unchecked);

impl Neg for &CycElem {
    type Output = CycElem;
    fn neg(self) -> CycElem {
        CycElem {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycElem {
    type Output = CycElem;
    fn neg(self) -> CycElem {
        -&self
    }
}

/// Canonical text form `m:[c0,c1,...]` in the power basis.
impl fmt::Display for CycElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:[", self.order)?;
        for (i, c) in self.reduced_coeffs().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for CycElem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("malformed cyclotomic element {s:?}"));
        let (order, rest) = s.trim().split_once(':').ok_or_else(bad)?;
        let order: usize = order.trim().parse().map_err(|_| bad())?;
        let body = rest
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        let coeffs = if body.trim().is_empty() {
            Vec::new()
        } else {
            body.split(',')
                .map(|t| t.trim().parse::<BigInt>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?
        };
        if coeffs.len() > order {
            return Err(bad());
        }
        CycElem::from_coeffs(order, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z5(c: &[i64]) -> CycElem {
        CycElem::from_i64(5, c).unwrap()
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() <= EMBED_TOLERANCE * b.norm().max(1.0)
    }

    #[test]
    fn reduce_examples() {
        assert!(z5(&[1, 1, 1, 1, 1]).is_zero());
        let r = z5(&[0, 0, 0, 0, 1]).canonical_reduce();
        assert_eq!(r.raw_coeffs(), z5(&[-1, -1, -1, -1]).raw_coeffs());
        let already = z5(&[3, -2, 0, 7]);
        assert_eq!(
            already.canonical_reduce().raw_coeffs(),
            already.raw_coeffs()
        );
        assert_eq!(
            r.canonical_reduce().raw_coeffs(),
            r.raw_coeffs(),
            "idempotent"
        );
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(
            &CycElem::zeta_pow(5, 1) * &CycElem::zeta_pow(5, 4),
            CycElem::one(5)
        );
        assert_eq!(&z5(&[1, -1]) + &z5(&[0, 1, -1]), z5(&[1, 0, -1]));
        let a = z5(&[16, 6, 26, 41]);
        assert_eq!((&a * &a.conj()).as_rational(), Some(BigInt::from(1331)));
        assert_eq!(
            z5(&[1]).checked_add(&CycElem::one(7)),
            Err(Error::OrderMismatch(5, 7))
        );
    }

    #[test]
    fn galois_examples() {
        let z = CycElem::zeta_pow(5, 1);
        assert_eq!(z.galois_apply(2).unwrap(), CycElem::zeta_pow(5, 2));
        let a = z5(&[3, 1, -4, 1]);
        assert_eq!(a.galois_apply(2).unwrap().galois_apply(3).unwrap(), a);
        assert_eq!(z.galois_apply(4).unwrap(), z.conj());
        assert!(matches!(
            CycElem::one(6).galois_apply(2),
            Err(Error::NotCoprime { .. })
        ));
    }

    #[test]
    fn norm_examples() {
        assert_eq!(
            CycElem::zeta_pow(5, 1).field_norm().unwrap(),
            BigInt::from(1)
        );
        assert_eq!(z5(&[1, -1]).field_norm().unwrap(), BigInt::from(5));
        assert_eq!(
            z5(&[16, 6, 26, 41]).field_norm().unwrap(),
            BigInt::from(1_771_561)
        );
        assert_eq!(
            CycElem::constant(1, 9).field_norm().unwrap(),
            BigInt::from(9)
        );
    }

    #[test]
    fn norm_matches_product_of_conjugates() {
        // Oracle: multiply the four conjugates numerically.
        let a = z5(&[16, 6, 26, 41]);
        let numeric: Complex64 = (1..5)
            .map(|k| a.galois_apply(k).unwrap().numeric_embed())
            .product();
        assert!((numeric.re - 1_771_561.0).abs() < 1e-9 * 1_771_561.0);
        assert!(numeric.im.abs() < 1e-3);
    }

    #[test]
    fn subfield_examples() {
        let z = CycElem::zeta_pow(55, 11);
        assert_eq!(z.subfield_project(5).unwrap(), CycElem::zeta_pow(5, 1));
        assert_eq!(
            CycElem::constant(55, 7).subfield_project(5).unwrap(),
            CycElem::constant(5, 7)
        );
        assert_eq!(
            CycElem::zeta_pow(55, 5).subfield_project(5),
            Err(Error::NotInSubfield(5))
        );
        assert_eq!(
            CycElem::one(12).subfield_project(2),
            Err(Error::BadSplit(2, 12))
        );
        assert_eq!(
            CycElem::one(12).subfield_project(4).unwrap(),
            CycElem::one(4)
        );
    }

    #[test]
    fn subfield_roundtrip() {
        let b = z5(&[2, -7, 0, 11]);
        let up = b.embed_into(55).unwrap();
        assert_eq!(up.subfield_project(5).unwrap(), b);
        assert_eq!(up.subfield_project(5).unwrap().embed_into(55).unwrap(), up);
    }

    #[test]
    fn numeric_examples() {
        let z6 = CycElem::zeta_pow(6, 1).numeric_embed();
        assert!(close(z6, Complex64::new(0.5, 0.866_025_403_784_438_6)));
        assert!(z5(&[1, 1, 1, 1, 1]).numeric_embed().norm() < 1e-12);
        let a = z5(&[16, 6, 26, 41]).numeric_embed();
        assert!((a.norm_sqr() - 1331.0).abs() <= EMBED_TOLERANCE * 1331.0);
    }

    #[test]
    fn text_form() {
        let a = z5(&[0, 0, 0, 0, 1]);
        assert_eq!(a.to_string(), "5:[-1,-1,-1,-1]");
        assert_eq!(a.to_string().parse::<CycElem>().unwrap(), a);
        assert!("5:[1,2".parse::<CycElem>().is_err());
        assert!("2:[1,2,3]".parse::<CycElem>().is_err());
    }
}
