use multidecomp::squares::{
    brahmagupta_compose, factor_powers, factorize, is_prime, prime_two_square_decomposition,
    two_squares_representable, Representability,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small_primes(n: u64) -> Vec<u64> {
    (2..n)
        .filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0))
        .collect()
}

#[test]
fn primes_below_ten_thousand() {
    for p in small_primes(10_000) {
        let r = two_squares_representable(p, 3);
        assert_eq!(r.is_representable(), p % 4 != 3, "{p}");
        match r {
            Representability::Representable { witness } => {
                assert!(witness.holds() && witness.n == p as u128)
            }
            Representability::NotRepresentable { offending_prime } => {
                assert_eq!(offending_prime, p)
            }
        }
        if p % 4 == 1 {
            for seed in [0, 1, 99] {
                let w = prime_two_square_decomposition(p, seed).unwrap();
                assert!(w.holds() && w.n == p as u128 && w.x < w.y, "{p}");
            }
        } else {
            assert!(prime_two_square_decomposition(p, 0).is_err() || p == 2);
        }
    }
}

#[test]
fn decomposition_of_large_primes() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut seen = 0;
    while seen < 200 {
        let p = rng.gen_range(1u64 << 40..1u64 << 62) | 1;
        if p % 4 != 1 || !is_prime(p) {
            continue;
        }
        let w = prime_two_square_decomposition(p, seen).unwrap();
        assert_eq!(w.x * w.x + w.y * w.y, p as u128);
        seen += 1;
    }
}

#[test]
fn brahmagupta_on_random_quadruples() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..10_000 {
        let [a, b, c, d]: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-1_000_000..=1_000_000));
        let lhs = (a as i128 * a as i128 + b as i128 * b as i128) as u128
            * (c as i128 * c as i128 + d as i128 * d as i128) as u128;
        let [u, v] = brahmagupta_compose(a, b, c, d);
        for w in [u, v] {
            assert!(w.holds(), "{w:?}");
            assert_eq!(w.n, lhs);
            assert!(w.x <= w.y);
        }
    }
}

#[test]
fn factorization_of_random_integers() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..10_000 {
        let n = rng.gen_range(2u64..1_000_000_000_000);
        let f = factorize(n).unwrap();
        assert_eq!(f.iter().product::<u64>(), n);
        assert!(f.windows(2).all(|w| w[0] <= w[1]));
        assert!(f.iter().all(|&p| is_prime(p)), "{n}: {f:?}");
    }
}

// Representability against the factorization criterion, and witnesses
// checked directly, for random n up to 10^12.
#[test]
fn representability_of_random_integers() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for _ in 0..2_000 {
        let n = rng.gen_range(1u64..1_000_000_000_000);
        let bad = if n == 1 {
            None
        } else {
            factor_powers(n)
                .unwrap()
                .into_iter()
                .find(|&(p, e)| p % 4 == 3 && e % 2 == 1)
                .map(|(p, _)| p)
        };
        match two_squares_representable(n, 1) {
            Representability::Representable { witness } => {
                assert!(
                    bad.is_none() && witness.holds() && witness.n == n as u128,
                    "{n}"
                )
            }
            Representability::NotRepresentable { offending_prime } => {
                assert_eq!(Some(offending_prime), bad, "{n}")
            }
        }
    }
}
