use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::system::PeriodSystem;
use crate::cyclo::{CycElem, IntPoly};
use crate::error::{Error, Result};
use crate::search::{distance_class_blocks, distance_class_check, DecompInstance, Provenance};
use crate::squares::is_prime;

/// `η_j = Σ_{i<f} ζ_p^{g^{j + e·i}}` for `j = 0..e`.
pub fn gaussian_periods(sys: &PeriodSystem) -> Vec<CycElem> {
    let p = sys.p as usize;
    let powers = sys.root_powers();
    (0..sys.e as usize)
        .map(|j| {
            let mut eta = CycElem::zero(p);
            for i in 0..sys.f as usize {
                eta.add_term(powers[j + sys.e as usize * i] as i64, 1);
            }
            eta
        })
        .collect()
}

/// `Π_j (x - η_j)`, expanded over `Z[ζ_p]`; every coefficient must come
/// out rational.
pub fn period_polynomial(sys: &PeriodSystem) -> Result<IntPoly> {
    let p = sys.p as usize;
    // Coefficients lowest degree first, as cyclotomic elements.
    let mut acc: Vec<CycElem> = vec![CycElem::one(p)];
    for eta in gaussian_periods(sys) {
        let mut next = vec![CycElem::zero(p); acc.len() + 1];
        for (i, c) in acc.iter().enumerate() {
            next[i + 1] = &next[i + 1] + c;
            next[i] = &next[i] - &(c * &eta);
        }
        acc = next;
    }
    let coeffs = acc
        .iter()
        .map(|c| c.as_rational().ok_or(Error::NotRational))
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPoly::new(coeffs))
}

/// Lagrange resolvent `R_t = Σ_j ζ_e^{tj} η_j = Σ_i ζ_e^{ti} ζ_p^{g^i}`,
/// an element of `Z[ζ_{ep}]` with `ζ_e = ζ_{ep}^p`, `ζ_p = ζ_{ep}^e`.
pub fn gauss_sum(sys: &PeriodSystem, t: u64) -> CycElem {
    let (p, e) = (sys.p, sys.e);
    let mut r = CycElem::zero(sys.gauss_order());
    for (i, x) in sys.root_powers().into_iter().enumerate() {
        let u = (t * i as u64) % e;
        r.add_term((p * u + e * x) as i64, 1);
    }
    r
}

/// Which associate `sign · ζ_e^shift · a` was chosen as canonical.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Associate {
    pub sign: i8,
    pub shift: u64,
}

/// Everything derived from `R_t^e = p·a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolventReport {
    pub system: PeriodSystem,
    pub t: u64,
    /// `R_t · conj(R_t)`; equals `p`.
    pub gauss_conj_product: BigInt,
    /// `a = R_t^e / p` exactly as computed.
    pub element: CycElem,
    /// The chosen associate of `a`.
    pub canonical: CycElem,
    /// Power-basis coordinates of `canonical` (`e - 1` integers).
    pub coeff_tuple: Vec<BigInt>,
    /// `a · conj(a)`, the same for every associate.
    pub conj_product: BigInt,
    pub norm: BigInt,
    pub associate: Associate,
}

fn check_resolvent_args(sys: &PeriodSystem, t: u64) -> Result<()> {
    if sys.e < 3 || !is_prime(sys.e) {
        return Err(Error::InvalidArgument(format!(
            "resolvent powers need e an odd prime, got {}",
            sys.e
        )));
    }
    if t.gcd(&sys.e) != 1 {
        return Err(Error::InvalidArgument(format!(
            "t = {t} is not coprime to e = {}",
            sys.e
        )));
    }
    Ok(())
}

/// Raw `a` with `R_t^e = p·a`, as an element of `Z[ζ_e]` in power basis.
pub fn resolvent_quotient(sys: &PeriodSystem, t: u64) -> Result<CycElem> {
    check_resolvent_args(sys, t)?;
    let e = sys.e as usize;
    let power = gauss_sum(sys, t).pow(sys.e as u32);
    let in_subfield = power.subfield_project(e)?;
    let p = BigInt::from(sys.p);
    let coeffs = in_subfield.reduced_coeffs();
    let mut quotient = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        let (q, r) = c.div_rem(&p);
        if !r.is_zero() {
            return Err(Error::Inconsistent(format!(
                "R^{e} is not divisible by p = {}",
                sys.p
            )));
        }
        quotient.push(q);
    }
    CycElem::from_coeffs(e, quotient)
}

/// Picks the canonical associate among `±ζ_e^k · a`.
///
/// Candidates with every coefficient nonnegative are preferred (there is
/// always one: rotate the smallest group-ring entry into the zero slot);
/// among them the smallest sum of squares wins, then the
/// lexicographically largest tuple.
pub fn canonical_associate(a: &CycElem) -> (CycElem, Vec<BigInt>, Associate) {
    let e = a.order();
    let mut best: Option<(bool, BigInt, Vec<BigInt>, Associate)> = None;
    for sign in [1i8, -1] {
        for shift in 0..e as u64 {
            let unit = CycElem::zeta_pow(e, shift as i64).scale(&BigInt::from(sign));
            let coeffs = (&unit * a).reduced_coeffs();
            let nonneg = coeffs.iter().all(|c| !c.is_negative());
            let sq: BigInt = coeffs.iter().map(|c| c * c).sum();
            let better = match &best {
                None => true,
                Some((bn, bsq, bc, _)) => (nonneg, -&sq, &coeffs) > (*bn, -bsq.clone(), bc),
            };
            if better {
                best = Some((nonneg, sq, coeffs, Associate { sign, shift }));
            }
        }
    }
    let (_, _, coeffs, assoc) = best.expect("at least one associate");
    let elem = CycElem::from_coeffs(e, coeffs.clone()).expect("order is positive");
    (elem, coeffs, assoc)
}

/// `R_t^e` projected to `Z[ζ_e]`, divided by `p`, canonicalized, with
/// its conjugate product and norm.
pub fn resolvent_power(sys: &PeriodSystem, t: u64) -> Result<ResolventReport> {
    let element = resolvent_quotient(sys, t)?;
    let r = gauss_sum(sys, t);
    let gauss_conj_product = (&r * &r.conj()).as_rational().ok_or(Error::NotRational)?;
    let conj_product = (&element * &element.conj())
        .as_rational()
        .ok_or(Error::NotRational)?;
    let norm = element.field_norm()?;
    let (canonical, coeff_tuple, associate) = canonical_associate(&element);
    Ok(ResolventReport {
        system: *sys,
        t,
        gauss_conj_product,
        element,
        canonical,
        coeff_tuple,
        conj_product,
        norm,
        associate,
    })
}

/// `J(χ^i, χ^j) = Σ_{x ≠ 0,1} χ^i(x) χ^j(1 - x)` with `χ(g^n) = ζ_e^n`.
pub fn jacobi_sum(sys: &PeriodSystem, i: u64, j: u64) -> CycElem {
    let e = sys.e as usize;
    let logs = sys.discrete_logs();
    let mut out = CycElem::zero(e);
    for x in 2..sys.p {
        let lx = logs[x as usize];
        let ly = logs[(sys.p + 1 - x) as usize];
        out.add_term(((i * lx + j * ly) % sys.e) as i64, 1);
    }
    out
}

/// `χ(-1) · Π_{s=1}^{e-2} J(χ^s, χ)`, which equals `R_1^e / p`.
pub fn jacobi_product(sys: &PeriodSystem) -> CycElem {
    let e = sys.e as usize;
    let chi_minus_one = CycElem::zeta_pow(e, (((sys.p - 1) / 2) % sys.e) as i64);
    (1..sys.e.saturating_sub(1))
        .map(|s| jacobi_sum(sys, s, 1))
        .fold(chi_minus_one, |acc, j| &acc * &j)
}

/// Packages the canonical coefficient tuple of `R_t^e / p` as a balanced
/// decomposition whose blocks are the distance classes.
pub fn decomposition_tuple(sys: &PeriodSystem, t: u64) -> Result<DecompInstance> {
    let report = resolvent_power(sys, t)?;
    decomposition_from_report(&report)
}

pub fn decomposition_from_report(report: &ResolventReport) -> Result<DecompInstance> {
    let tuple = report
        .coeff_tuple
        .iter()
        .map(|c| c.to_i128().ok_or_else(|| Error::Overflow(c.to_string())))
        .collect::<Result<Vec<_>>>()?;
    let classes = distance_class_check(&tuple)?;
    if !classes.balanced {
        return Err(Error::Inconsistent(format!(
            "distance classes {:?} are not balanced",
            classes.sums
        )));
    }
    let blocks = distance_class_blocks(tuple.len())?;
    let sys = report.system;
    DecompInstance::new(
        tuple,
        blocks,
        Provenance::Cyclotomic {
            p: sys.p,
            e: sys.e,
            t: report.t,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn sys(p: u64, e: u64) -> PeriodSystem {
        PeriodSystem::new(p, e).unwrap()
    }

    #[test]
    fn periods_sum_to_minus_one() {
        for (p, e) in [(11, 5), (5, 2), (7, 3), (13, 4), (31, 5)] {
            let s = gaussian_periods(&sys(p, e))
                .into_iter()
                .fold(CycElem::zero(p as usize), |a, b| a + b);
            assert_eq!(s, CycElem::constant(p as usize, -1));
        }
    }

    #[test]
    fn period_values() {
        let eta = &gaussian_periods(&sys(11, 5))[0];
        assert_eq!(
            eta,
            &CycElem::from_i64(11, &[0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]).unwrap()
        );
        let want = 2.0 * (std::f64::consts::TAU / 11.0).cos();
        assert!((eta.numeric_embed() - Complex64::new(want, 0.0)).norm() < 1e-12);
        let eta = &gaussian_periods(&sys(5, 2))[0];
        assert!((eta.numeric_embed().re - 0.618_033_988_749_895).abs() < 1e-12);
    }

    #[test]
    fn period_polynomials() {
        let v = period_polynomial(&sys(11, 5)).unwrap();
        assert_eq!(v, IntPoly::from_i64(&[1, 3, -3, -4, 1, 1]));
        assert_eq!(-&v.reflect(), IntPoly::from_i64(&[-1, 3, 3, -4, -1, 1]));
        assert_eq!(
            period_polynomial(&sys(5, 2)).unwrap(),
            IntPoly::from_i64(&[-1, 1, 1])
        );
        assert_eq!(
            period_polynomial(&sys(7, 3)).unwrap(),
            IntPoly::from_i64(&[-1, -2, 1, 1])
        );
    }

    #[test]
    fn gauss_sums() {
        let s = sys(5, 2);
        assert_eq!(gauss_sum(&s, 0), CycElem::constant(10, -1));
        let r = gauss_sum(&s, 1);
        assert_eq!(r.pow(2), CycElem::constant(10, 5));
        let s = sys(11, 5);
        let r = gauss_sum(&s, 1);
        assert_eq!(&r * &r.conj(), CycElem::constant(55, 11));
    }

    #[test]
    fn resolvent_11_5() {
        let rep = resolvent_power(&sys(11, 5), 1).unwrap();
        assert_eq!(rep.conj_product, BigInt::from(1331));
        assert_eq!(rep.norm, BigInt::from(1331 * 1331));
        assert_eq!(rep.gauss_conj_product, BigInt::from(11));
        let tuple: Vec<i64> = rep
            .coeff_tuple
            .iter()
            .map(|c| c.to_i64().unwrap())
            .collect();
        assert_eq!(tuple, vec![6, 41, 16, 26]);
        assert_eq!(rep.associate, Associate { sign: 1, shift: 4 });
        // raw quotient before canonicalization
        assert_eq!(
            rep.element,
            CycElem::from_i64(5, &[-26, -20, 15, -10]).unwrap()
        );
    }

    #[test]
    fn resolvent_rejects_bad_args() {
        assert!(resolvent_power(&sys(13, 4), 1).is_err());
        assert!(resolvent_power(&sys(11, 5), 5).is_err());
        assert!(resolvent_power(&sys(5, 2), 1).is_err());
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi_sum(&sys(5, 2), 1, 1), CycElem::constant(2, -1));
        let j = jacobi_sum(&sys(11, 5), 1, 1);
        assert_eq!(&j * &j.conj(), CycElem::constant(5, 11));
        assert_eq!(jacobi_sum(&sys(31, 5), 0, 0), CycElem::constant(5, 29));
    }

    #[test]
    fn jacobi_chain_matches_resolvent() {
        for (p, e) in [(11, 5), (31, 5), (29, 7)] {
            let s = sys(p, e);
            assert_eq!(
                jacobi_product(&s),
                resolvent_quotient(&s, 1).unwrap(),
                "p={p}"
            );
        }
    }

    #[test]
    fn base_decomposition() {
        let inst = decomposition_tuple(&sys(11, 5), 1).unwrap();
        assert_eq!(inst.tuple, vec![6, 41, 16, 26]);
        assert_eq!(inst.block_sum, 1318);
        assert_eq!(inst.sum_squares, 2649);
        assert_eq!(inst.gap, 1331);
        assert_eq!(inst.key, "6,16,26,41|2|0-1,0-2,2-3/0-3,1-2,1-3");
        // other Galois conjugates give the same decomposition
        for t in 2..5 {
            assert_eq!(decomposition_tuple(&sys(11, 5), t).unwrap().key, inst.key);
        }
        assert_eq!(
            decomposition_tuple(&sys(11, 5), 2).unwrap().tuple,
            vec![16, 6, 26, 41]
        );
    }

    #[test]
    fn septic_decomposition() {
        let inst = decomposition_tuple(&sys(29, 7), 1).unwrap();
        assert_eq!(inst.m, 3);
        assert_eq!(inst.gap, 29i128.pow(5));
    }
}
