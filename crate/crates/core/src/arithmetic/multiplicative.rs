use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::characters::chi3;
use super::factor::FactoredInteger;

/// The arithmetic functions evaluated exactly by [`mult_eval`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MultFn {
    /// `phi(n) / n`
    PhiOverN,
    /// `phi(n)/n * 2^omega(n)`
    Div,
    /// `phi(n)/n * prod_{p | n} (1 + chi_3(p))`
    RTilde,
    /// `mu^2(n) prod_{p | n} (1 - 2/p)`
    UTilde,
    /// `sum_{d | n} chi_3(d) mu(d) / d`
    CTilde,
    Tau,
    Mu,
    Omega,
}

impl MultFn {
    pub const ALL: [MultFn; 8] = [
        MultFn::PhiOverN,
        MultFn::Div,
        MultFn::RTilde,
        MultFn::UTilde,
        MultFn::CTilde,
        MultFn::Tau,
        MultFn::Mu,
        MultFn::Omega,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MultFn::PhiOverN => "phi_over_n",
            MultFn::Div => "div",
            MultFn::RTilde => "r_tilde",
            MultFn::UTilde => "u_tilde",
            MultFn::CTilde => "c_tilde",
            MultFn::Tau => "tau",
            MultFn::Mu => "mu",
            MultFn::Omega => "omega",
        }
    }

    /// Value at a prime power `p^e`, `e >= 1`. Not meaningful for `Omega`,
    /// which is additive.
    pub fn prime_power(self, p: u64, e: u32) -> BigRational {
        let p_big = BigInt::from(p);
        let one_minus = |k: i64| BigRational::new(&p_big - BigInt::from(k), p_big.clone());
        match self {
            MultFn::PhiOverN => one_minus(1),
            MultFn::Div => one_minus(1) * BigInt::from(2),
            MultFn::RTilde => one_minus(1) * BigInt::from(1 + chi3(p as i64) as i64),
            MultFn::UTilde => {
                if e >= 2 {
                    BigRational::zero()
                } else {
                    one_minus(2)
                }
            }
            MultFn::CTilde => one_minus(chi3(p as i64) as i64),
            MultFn::Tau => BigRational::from_integer(BigInt::from(e + 1)),
            MultFn::Mu => {
                if e >= 2 {
                    BigRational::zero()
                } else {
                    -BigRational::one()
                }
            }
            MultFn::Omega => BigRational::one(),
        }
    }
}

impl fmt::Display for MultFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An exact rational function value, always in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiplicativeValue(pub BigRational);

impl MultiplicativeValue {
    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn into_rational(self) -> BigRational {
        self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for MultiplicativeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.0))
    }
}

/// Renders a rational as `n` or `n/d`.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact value of `f` at `|n|`.
///
/// # Panics
/// If `n` is zero.
pub fn mult_eval(f: MultFn, n: &FactoredInteger) -> MultiplicativeValue {
    assert!(
        !n.is_zero(),
        "multiplicative functions are evaluated on n >= 1"
    );
    if f == MultFn::Omega {
        return MultiplicativeValue(BigRational::from_integer(BigInt::from(n.omega())));
    }
    let mut acc = BigRational::one();
    for &(p, e) in n.factors() {
        acc *= f.prime_power(p, e);
        if acc.is_zero() {
            break;
        }
    }
    MultiplicativeValue(acc)
}

/// `f64` value at a prime power; used by the sieved sums.
pub fn prime_power_f64(f: MultFn, p: u64, e: u32) -> f64 {
    let pf = p as f64;
    match f {
        MultFn::PhiOverN => 1.0 - 1.0 / pf,
        MultFn::Div => 2.0 * (1.0 - 1.0 / pf),
        MultFn::RTilde => (1.0 - 1.0 / pf) * (1 + chi3(p as i64)) as f64,
        MultFn::UTilde => {
            if e >= 2 {
                0.0
            } else {
                1.0 - 2.0 / pf
            }
        }
        MultFn::CTilde => 1.0 - chi3(p as i64) as f64 / pf,
        MultFn::Tau => (e + 1) as f64,
        MultFn::Mu => {
            if e >= 2 {
                0.0
            } else {
                -1.0
            }
        }
        MultFn::Omega => 1.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::factor::factorize;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn eval(f: MultFn, n: i64) -> BigRational {
        mult_eval(f, &factorize(n).unwrap()).into_rational()
    }

    #[test]
    fn documented_values() {
        assert_eq!(eval(MultFn::Div, 6), q(4, 3));
        assert_eq!(eval(MultFn::RTilde, 35), q(0, 1));
        assert_eq!(eval(MultFn::UTilde, 15), q(1, 5));
        assert_eq!(eval(MultFn::CTilde, 7), q(6, 7));
        assert_eq!(eval(MultFn::Tau, 12), q(6, 1));
        assert_eq!(eval(MultFn::Mu, 30), q(-1, 1));
        assert_eq!(eval(MultFn::Mu, 12), q(0, 1));
        assert_eq!(eval(MultFn::Omega, 60), q(3, 1));
        assert_eq!(eval(MultFn::PhiOverN, 1), q(1, 1));
    }

    #[test]
    fn c_tilde_is_the_divisor_sum() {
        for n in 1..500i64 {
            let direct: BigRational = (1..=n)
                .filter(|d| n % d == 0)
                .map(|d| {
                    let mu = eval(MultFn::Mu, d);
                    mu * q(chi3(d) as i64, d)
                })
                .sum();
            assert_eq!(eval(MultFn::CTilde, n), direct, "n = {n}");
        }
    }

    #[test]
    fn phi_matches_totient_count() {
        for n in 1..300i64 {
            let phi = (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count() as i64;
            assert_eq!(eval(MultFn::PhiOverN, n), q(phi, n));
        }
    }
}
