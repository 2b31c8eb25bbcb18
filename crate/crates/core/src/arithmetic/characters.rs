use crate::error::{Error, Result};

/// The nontrivial Dirichlet character modulo 3.
pub fn chi3(n: i64) -> i8 {
    match n.rem_euclid(3) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// Jacobi symbol `(a / n)` for odd positive `n`.
pub fn jacobi(a: i64, n: i64) -> Result<i8> {
    if n <= 0 || n % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "Jacobi symbol needs an odd positive modulus, got {n}"
        )));
    }
    Ok(jacobi_i128(a as i128, n as u128))
}

/// Jacobi symbol on wide integers; `n` must be odd and positive.
pub(crate) fn jacobi_i128(a: i128, n: u128) -> i8 {
    debug_assert!(n % 2 == 1);
    let mut a = a.rem_euclid(n as i128) as u128;
    let mut n = n;
    let mut result = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// `(1 * chi_3)(n) = sum_{d | n} chi_3(d)` from the factorization of `n >= 1`.
pub fn one_star_chi3_from_factors(factors: &[(u64, u32)]) -> u64 {
    let mut acc = 1u64;
    for &(p, e) in factors {
        acc *= match p % 3 {
            0 => 1,
            1 => e as u64 + 1,
            _ => (e % 2 == 0) as u64,
        };
    }
    acc
}

/// `(1 * chi_3)(n)` for `n >= 1`.
pub fn one_star_chi3(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "(1*chi_3) is defined on n >= 1".into(),
        ));
    }
    Ok(one_star_chi3_from_factors(&super::factor::factor_u64(n)))
}
