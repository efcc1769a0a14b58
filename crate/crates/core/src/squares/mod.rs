//! Two-squares machinery and the integer utilities the search filters use.

mod primes;
mod two_squares;

pub use primes::{
    factor_powers, factorize, is_prime, isqrt, mul_mod, next_prime, perfect_cube_test, pow_mod,
};
pub use two_squares::{
    brahmagupta_compose, prime_two_square_decomposition, two_squares_representable,
    Representability, TwoSquares,
};
