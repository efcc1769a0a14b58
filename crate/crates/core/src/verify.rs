//! Exact re-derivation of every identity about 1318, the tuple
//! (6, 16, 26, 41) and the quintic `x^5 - x^4 - 4x^3 + 3x^2 + 3x - 1`.

use num_bigint::BigInt;
use serde::Serialize;

use crate::cyclo::IntPoly;
use crate::periods::{
    decomposition_from_report, period_polynomial, polynomial_discriminant, resolvent_power,
    PeriodSystem,
};
use crate::search::{
    classify_structure, enumerate_balanced_partitions, DecompInstance, Provenance,
};
use crate::squares::{next_prime, perfect_cube_test, two_squares_representable, Representability};

pub const CHECK_NAMES: [&str; 8] = [
    "decompositions",
    "cyclicity",
    "sum-of-squares",
    "cube-gap",
    "prime-gap",
    "vandermonde",
    "two-squares",
    "resolvent",
];

const TUPLE: [i128; 4] = [6, 16, 26, 41];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub expected: String,
    pub actual: String,
}

fn check(name: &str, expected: String, actual: String, corrupt: Option<&str>) -> Check {
    let expected = if corrupt == Some(name) {
        format!("{expected}+corrupted")
    } else {
        expected
    };
    Check {
        name: name.to_string(),
        pass: expected == actual,
        expected,
        actual,
    }
}

/// Runs all checks. `corrupt` names a check whose expected value is
/// deliberately altered, to exercise the failure path.
pub fn verify_paper(corrupt: Option<&str>) -> Vec<Check> {
    let mut out = Vec::with_capacity(CHECK_NAMES.len());

    // 1. the two decompositions, and that they are the only split
    let blocks_a = vec![(0, 3), (1, 2), (1, 3)];
    let blocks_b = vec![(0, 1), (0, 2), (2, 3)];
    let sum = |b: &[(usize, usize)]| -> i128 { b.iter().map(|&(i, j)| TUPLE[i] * TUPLE[j]).sum() };
    let parts = enumerate_balanced_partitions(&TUPLE, 2);
    let unique = parts.len() == 1 && parts[0] == vec![blocks_b.clone(), blocks_a.clone()];
    out.push(check(
        "decompositions",
        "246+416+656=1318; 96+156+1066=1318; unique".into(),
        format!(
            "246+416+656={}; 96+156+1066={}; {}",
            sum(&blocks_a),
            sum(&blocks_b),
            if unique { "unique" } else { "not unique" }
        ),
        corrupt,
    ));

    // 2. the four "edge + factor·(sum)" lines
    let inst = DecompInstance::new(TUPLE.to_vec(), vec![blocks_a, blocks_b], Provenance::Search)
        .expect("balanced");
    let mut lines: Vec<(i128, i128)> = classify_structure(&inst)
        .iter()
        .flat_map(|c| {
            c.rewrites
                .iter()
                .map(|r| (r.edge_product, r.grouped_product))
        })
        .collect();
    lines.sort();
    let rendered: Vec<String> = lines
        .iter()
        .map(|(a, b)| format!("{a}+{b}={}", a + b))
        .collect();
    out.push(check(
        "cyclicity",
        "96+1222=1318, 246+1072=1318, 416+902=1318, 1066+252=1318".into(),
        rendered.join(", "),
        corrupt,
    ));

    // 3.
    out.push(check(
        "sum-of-squares",
        "2649".into(),
        inst.sum_squares.to_string(),
        corrupt,
    ));

    // 4.
    let root = perfect_cube_test(inst.gap);
    out.push(check(
        "cube-gap",
        "2649-1318=1331=11^3".into(),
        format!(
            "{}-{}={}={}",
            inst.sum_squares,
            inst.block_sum,
            inst.gap,
            root.map_or("not a cube".into(), |r| format!("{r}^3"))
        ),
        corrupt,
    ));

    // 5.
    let diff = inst.sum_squares - 2 * inst.block_sum;
    out.push(check(
        "prime-gap",
        "2649-2*1318=13; next_prime(11)=13".into(),
        format!("2649-2*1318={diff}; next_prime(11)={}", next_prime(11)),
        corrupt,
    ));

    // 6.
    let (poly, disc) = match PeriodSystem::new(11, 5).and_then(|s| period_polynomial(&s)) {
        Ok(p) => {
            let v = -&p.reflect();
            let d = polynomial_discriminant(&v).map_or("error".into(), |d| d.to_string());
            (v.to_string(), d)
        }
        Err(e) => (format!("error: {e}"), "error".into()),
    };
    let vandermonde = IntPoly::from_i64(&[-1, 3, 3, -4, -1, 1]);
    out.push(check(
        "vandermonde",
        format!("V(x) = {vandermonde}; disc = 14641 = 11^4"),
        format!(
            "V(x) = {poly}; disc = {disc} = 11^{}",
            if disc == BigInt::from(11).pow(4).to_string() {
                "4"
            } else {
                "?"
            }
        ),
        corrupt,
    ));

    // 7.
    let verdict = |n: u64| match two_squares_representable(n, 0) {
        Representability::Representable { witness } => {
            format!("{n} = {}^2 + {}^2", witness.x, witness.y)
        }
        Representability::NotRepresentable { offending_prime } => {
            format!("{n} not representable (prime {offending_prime})")
        }
    };
    out.push(check(
        "two-squares",
        "659 mod 4 = 3; 659 not representable (prime 659); 1318 not representable (prime 659)"
            .into(),
        format!(
            "659 mod 4 = {}; {}; {}",
            659 % 4,
            verdict(659),
            verdict(1318)
        ),
        corrupt,
    ));

    // 8.
    let actual = match PeriodSystem::new(11, 5).and_then(|s| resolvent_power(&s, 1)) {
        Ok(rep) => {
            let inst = decomposition_from_report(&rep);
            let mut abs: Vec<String> = rep
                .coeff_tuple
                .iter()
                .map(|c| c.magnitude().to_string())
                .collect();
            abs.sort_by_key(|s| s.parse::<u64>().unwrap_or(u64::MAX));
            format!(
                "R.conj(R)={}; a.conj(a)={}; N(a)={}; |a|={{{}}}; class sum={}",
                rep.gauss_conj_product,
                rep.conj_product,
                rep.norm,
                abs.join(","),
                inst.map_or("error".into(), |i| i.block_sum.to_string())
            )
        }
        Err(e) => format!("error: {e}"),
    };
    out.push(check(
        "resolvent",
        "R.conj(R)=11; a.conj(a)=1331; N(a)=1771561; |a|={6,16,26,41}; class sum=1318".into(),
        actual,
        corrupt,
    ));

    out
}
