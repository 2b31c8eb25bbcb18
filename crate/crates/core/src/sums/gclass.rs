use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arithmetic::{chi3, MultFn};
use crate::error::{Error, Result};

type PrimeValue = Arc<dyn Fn(u64) -> (i128, i128) + Send + Sync>;

/// A nonnegative multiplicative function evaluated on squarefree arguments,
/// so determined by its values at primes.
///
/// `delta = 1` marks functions with `f(p) = 1 + chi_3(p) + O(1/p)`, and
/// `delta = 0` those with `f(p) = 1 + O(1/p)`.
#[derive(Clone)]
pub struct GClassFunction {
    name: String,
    delta: u8,
    prime_value: PrimeValue,
}

impl fmt::Debug for GClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GClassFunction")
            .field("name", &self.name)
            .field("delta", &self.delta)
            .finish()
    }
}

impl GClassFunction {
    /// `prime_value(p)` returns `f(p)` as a fraction `(numerator, denominator)`
    /// with positive denominator.
    pub fn new(
        name: impl Into<String>,
        delta: u8,
        prime_value: impl Fn(u64) -> (i128, i128) + Send + Sync + 'static,
    ) -> Result<Self> {
        if delta > 1 {
            return Err(Error::InvalidArgument("delta must be 0 or 1".into()));
        }
        Ok(GClassFunction {
            name: name.into(),
            delta,
            prime_value: Arc::new(prime_value),
        })
    }

    /// The built-in functions of [`MultFn`] that qualify: `phi_over_n`,
    /// `u_tilde` and `c_tilde` with `delta = 0`, `r_tilde` with `delta = 1`.
    pub fn from_mult_fn(f: MultFn) -> Result<Self> {
        let (delta, value): (u8, fn(u64) -> (i128, i128)) = match f {
            MultFn::PhiOverN => (0, |p| (p as i128 - 1, p as i128)),
            MultFn::RTilde => (1, |p| {
                ((p as i128 - 1) * (1 + chi3(p as i64) as i128), p as i128)
            }),
            MultFn::UTilde => (0, |p| (p as i128 - 2, p as i128)),
            MultFn::CTilde => (0, |p| (p as i128 - chi3(p as i64) as i128, p as i128)),
            other => {
                return Err(Error::NotInClassG(other.name().to_string()));
            }
        };
        GClassFunction::new(f.name(), delta, value)
    }

    pub fn r_tilde() -> Self {
        Self::from_mult_fn(MultFn::RTilde).expect("built in")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn delta(&self) -> u8 {
        self.delta
    }

    pub fn at_prime(&self, p: u64) -> BigRational {
        let (n, d) = (self.prime_value)(p);
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    pub fn at_prime_f64(&self, p: u64) -> f64 {
        let (n, d) = (self.prime_value)(p);
        n as f64 / d as f64
    }

    /// `f(n)` for squarefree `n` given by its primes.
    pub fn at_squarefree_f64(&self, primes: impl IntoIterator<Item = u64>) -> f64 {
        primes.into_iter().map(|p| self.at_prime_f64(p)).product()
    }

    /// `sup_p |p (f(p) - 1 - delta chi_3(p))|` over `p <= limit`, the constant
    /// that certifies membership.
    pub fn deviation(&self, primes: &[u32]) -> f64 {
        primes
            .iter()
            .map(|&p| {
                let p = p as u64;
                let target = 1.0 + self.delta as f64 * chi3(p as i64) as f64;
                (p as f64 * (self.at_prime_f64(p) - target)).abs()
            })
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r_tilde_at_primes() {
        let r = GClassFunction::r_tilde();
        assert_eq!(r.at_prime(7), BigRational::new(12.into(), 7.into()));
        assert_eq!(r.at_prime_f64(5), 0.0);
        assert_eq!(r.delta(), 1);
        assert!(GClassFunction::from_mult_fn(MultFn::Tau).is_err());
    }
}
