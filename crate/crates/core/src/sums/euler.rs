//! Euler-product constants and the transform `f^` for averages of functions
//! in `G` over squarefree integers in progressions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::gclass::GClassFunction;
use crate::arithmetic::{chi3, primes_up_to, FactoredInteger};
use crate::error::{Error, Result};

/// `pi / 3^(3/2) = L(1, chi_3)`.
pub const L1_CHI3: f64 = 0.604_599_788_078_072_6;

/// Default truncation point of the Euler products.
pub const EULER_CUTOFF: u64 = 1_000_000;

/// A truncated Euler product.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EulerConstant {
    pub value: f64,
    /// Primes up to this bound are included.
    pub cutoff: u64,
    /// `|log|` of the first omitted factor.
    pub first_omitted: f64,
}

/// Rejects `f` whose normalized deviation `p |f(p) - 1 - delta chi_3(p)|`
/// grows: the largest deviation among primes near the cutoff is compared with
/// the largest among primes below 1000.
fn check_membership(f: &GClassFunction, primes: &[u32]) -> Result<()> {
    let small_end = primes.partition_point(|&p| p <= 1000);
    let large_start =
        primes.partition_point(|&p| (p as u64) * 10 <= *primes.last().unwrap_or(&0) as u64);
    let small = f.deviation(&primes[..small_end]);
    let large = f.deviation(&primes[large_start.max(small_end)..]);
    if large > 10.0 * (small + 1.0) || !large.is_finite() {
        return Err(Error::NotInClassG(format!(
            "{}: p|f(p) - 1 - {}chi_3(p)| reaches {large:.3e} near the cutoff against {small:.3e} below 1000",
            f.name(),
            f.delta()
        )));
    }
    Ok(())
}

fn local_factor(f: &GClassFunction, p: u64) -> f64 {
    let pf = p as f64;
    let mut factor = (1.0 + f.at_prime_f64(p) / pf) * (1.0 - 1.0 / pf);
    if f.delta() == 1 {
        factor *= 1.0 - chi3(p as i64) as f64 / pf;
    }
    factor
}

/// The constant `c` with `sum_{n <= x squarefree} f(n) ~ c x`:
/// `prod_p (1 + f(p)/p)(1 - 1/p)` when `delta = 0` and
/// `pi/3^(3/2) prod_p (1 + f(p)/p)(1 - 1/p)(1 - chi_3(p)/p)` when `delta = 1`.
pub fn euler_constant(f: &GClassFunction, cutoff: u64) -> Result<EulerConstant> {
    if cutoff < 1000 {
        return Err(Error::InvalidArgument(
            "Euler product cutoff below 1000".into(),
        ));
    }
    let primes = primes_up_to(cutoff as usize + 1000);
    let (inside, beyond): (Vec<u32>, Vec<u32>) = primes.iter().partition(|&&p| p as u64 <= cutoff);
    check_membership(f, &inside)?;
    let log_sum: f64 = inside.iter().map(|&p| local_factor(f, p as u64).ln()).sum();
    let mut value = log_sum.exp();
    if f.delta() == 1 {
        value *= L1_CHI3;
    }
    let first_omitted = beyond
        .first()
        .map(|&p| local_factor(f, p as u64).ln().abs())
        .unwrap_or(0.0);
    Ok(EulerConstant {
        value,
        cutoff,
        first_omitted,
    })
}

fn f_hat_prime(f: &GClassFunction, p: u64) -> BigRational {
    let pb = BigInt::from(p);
    let one = BigRational::one();
    let chi = BigRational::new(BigInt::from(chi3(p as i64)), pb.clone());
    let c_tilde = &one - &chi;
    let a = &one + f.at_prime(p) / BigRational::from_integer(pb.clone());
    let b = &one - BigRational::new(BigInt::one(), pb);
    let c = &one - &chi;
    c_tilde / (a * b * c)
}

/// `f^(n) = c~(n) prod_{p | n} (1 + f(p)/p)^-1 (1 - 1/p)^-1 (1 - chi_3(p)/p)^-1`
/// for squarefree `n` prime to 3.
pub fn f_hat(f: &GClassFunction, n: &FactoredInteger) -> Result<BigRational> {
    if n.is_zero() || !n.is_squarefree() {
        return Err(Error::InvalidArgument(
            "f^ is evaluated on squarefree n >= 1".into(),
        ));
    }
    if n.exponent_of(3) > 0 {
        return Err(Error::Hypothesis("3 divides the argument of f^".into()));
    }
    Ok(n.primes()
        .fold(BigRational::one(), |acc, p| acc * f_hat_prime(f, p)))
}

/// `f^(p)` as a float, also at `p = 3` where `c~(3) = 1`.
pub(crate) fn f_hat_prime_f64(f: &GClassFunction, p: u64) -> f64 {
    let pf = p as f64;
    let chi = chi3(p as i64) as f64 / pf;
    (1.0 - chi) / ((1.0 + f.at_prime_f64(p) / pf) * (1.0 - 1.0 / pf) * (1.0 - chi))
}

/// Constant and prime factors for the two-variable average of
/// `f1(s) f2(t)` over coprime squarefree pairs: with
/// `E(p) = 1 - f1(p) f2(p) f1^(p) f2^(p) (1 - 1/p)^2 / p^2`, the constant is
/// `c1 c2 prod_p E(p)` and the transform is `f1^ f2^ prod_{p | n} E(p)^-1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairConstant {
    pub c1: EulerConstant,
    pub c2: EulerConstant,
    pub coprimality_product: f64,
    pub value: f64,
}

pub(crate) fn pair_local(f1: &GClassFunction, f2: &GClassFunction, p: u64) -> f64 {
    let pf = p as f64;
    1.0 - f1.at_prime_f64(p)
        * f2.at_prime_f64(p)
        * f_hat_prime_f64(f1, p)
        * f_hat_prime_f64(f2, p)
        * (1.0 - 1.0 / pf).powi(2)
        / (pf * pf)
}

pub fn pair_constant(
    f1: &GClassFunction,
    f2: &GClassFunction,
    cutoff: u64,
) -> Result<PairConstant> {
    let c1 = euler_constant(f1, cutoff)?;
    let c2 = euler_constant(f2, cutoff)?;
    let coprimality_product = primes_up_to(cutoff as usize)
        .iter()
        .map(|&p| pair_local(f1, f2, p as u64).ln())
        .sum::<f64>()
        .exp();
    Ok(PairConstant {
        c1,
        c2,
        coprimality_product,
        value: c1.value * c2.value * coprimality_product,
    })
}

/// `f^_pair(n) = f1^(n) f2^(n) prod_{p | n} E(p)^-1` for squarefree `n`.
pub fn f_hat_pair(f1: &GClassFunction, f2: &GClassFunction, n: &FactoredInteger) -> Result<f64> {
    if n.is_zero() || !n.is_squarefree() {
        return Err(Error::InvalidArgument(
            "f^ is evaluated on squarefree n >= 1".into(),
        ));
    }
    Ok(n.primes()
        .map(|p| f_hat_prime_f64(f1, p) * f_hat_prime_f64(f2, p) / pair_local(f1, f2, p))
        .product())
}
