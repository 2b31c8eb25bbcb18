//! Exact integer arithmetic shared by every engine: factorization, the
//! character modulo 3, the multiplicative functions `div`, `r~`, `u~`, `c~`
//! and friends, and Kloosterman sums.

mod characters;
pub mod exact_sum;
mod factor;
mod kloosterman;
mod multiplicative;
mod sieve;

pub(crate) use characters::jacobi_i128;
pub use characters::{chi3, jacobi, one_star_chi3, one_star_chi3_from_factors};
pub use factor::{
    factor_u64, factorize, factorize_i128, is_prime, pow_mod, primes_up_to, small_primes,
    valuation, FactoredInteger, TRIAL_DIVISION_LIMIT,
};
pub use kloosterman::{kloosterman, mod_inverse, weil_bound, KloostermanValue};
pub use multiplicative::{
    format_rational, mult_eval, prime_power_f64, MultFn, MultiplicativeValue,
};
pub use sieve::SpfSieve;

/// Greatest common divisor of a slice of integers (0 for an empty or all-zero slice).
pub fn gcd_all(values: &[i64]) -> u64 {
    use num_integer::Integer;
    values.iter().fold(0u64, |g, &v| g.gcd(&v.unsigned_abs()))
}
