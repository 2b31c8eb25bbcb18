//! Deterministic integer factorization.
//!
//! Trial division by the primes below 10^6 handles every cofactor up to
//! 10^12 outright. Larger cofactors are split with Brent's variant of
//! Pollard rho, and every reported prime is certified by a Miller-Rabin test
//! with a base set that is deterministic for all 64-bit inputs.

use std::sync::OnceLock;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const TRIAL_DIVISION_LIMIT: u32 = 1_000_000;

static SMALL_PRIMES: OnceLock<Vec<u32>> = OnceLock::new();

/// Primes below [`TRIAL_DIVISION_LIMIT`], in increasing order.
pub fn small_primes() -> &'static [u32] {
    SMALL_PRIMES.get_or_init(|| primes_up_to(TRIAL_DIVISION_LIMIT as usize))
}

/// Sieve of Eratosthenes; returns all primes `p <= n`.
pub fn primes_up_to(n: usize) -> Vec<u32> {
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut out = Vec::with_capacity(n / 10);
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u32);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// A nonzero integer as sign times a product of prime powers, or zero.
///
/// Primes are strictly increasing and exponents are at least one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FactoredInteger {
    sign: i8,
    factors: Vec<(u64, u32)>,
}

impl FactoredInteger {
    pub fn zero() -> Self {
        FactoredInteger {
            sign: 0,
            factors: Vec::new(),
        }
    }

    pub fn one() -> Self {
        FactoredInteger {
            sign: 1,
            factors: Vec::new(),
        }
    }

    /// Builds from an unsorted list of prime powers; equal primes are merged.
    pub fn from_prime_powers(sign: i8, mut factors: Vec<(u64, u32)>) -> Result<Self> {
        if sign == 0 {
            if !factors.is_empty() {
                return Err(Error::InvalidArgument(
                    "zero carries no prime factors".into(),
                ));
            }
            return Ok(Self::zero());
        }
        if sign != 1 && sign != -1 {
            return Err(Error::InvalidArgument(format!(
                "sign must be -1, 0 or 1, got {sign}"
            )));
        }
        factors.retain(|&(_, e)| e > 0);
        factors.sort_unstable();
        let mut merged: Vec<(u64, u32)> = Vec::with_capacity(factors.len());
        for (p, e) in factors {
            if !is_prime(p) {
                return Err(Error::InvalidArgument(format!("{p} is not prime")));
            }
            match merged.last_mut() {
                Some(last) if last.0 == p => last.1 += e,
                _ => merged.push((p, e)),
            }
        }
        Ok(FactoredInteger {
            sign,
            factors: merged,
        })
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// Number of distinct prime divisors.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .binary_search_by_key(&p, |&(q, _)| q)
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    /// The integer itself. Panics if it does not fit in an `i128`.
    pub fn value(&self) -> i128 {
        let mut acc: i128 = self.sign as i128;
        for &(p, e) in &self.factors {
            for _ in 0..e {
                acc = acc
                    .checked_mul(p as i128)
                    .expect("factored integer overflows i128");
            }
        }
        acc
    }

    /// Absolute value of the integer.
    pub fn abs(&self) -> FactoredInteger {
        FactoredInteger {
            sign: self.sign.abs(),
            factors: self.factors.clone(),
        }
    }

    /// Product of two factored integers.
    pub fn mul(&self, other: &FactoredInteger) -> FactoredInteger {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() || j < other.factors.len() {
            match (self.factors.get(i), other.factors.get(j)) {
                (Some(&(p, e)), Some(&(q, f))) if p == q => {
                    out.push((p, e + f));
                    i += 1;
                    j += 1;
                }
                (Some(&(p, e)), Some(&(q, _))) if p < q => {
                    out.push((p, e));
                    i += 1;
                }
                (Some(_), Some(&(q, f))) => {
                    out.push((q, f));
                    j += 1;
                }
                (Some(&pe), None) => {
                    out.push(pe);
                    i += 1;
                }
                (None, Some(&qf)) => {
                    out.push(qf);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        FactoredInteger {
            sign: self.sign * other.sign,
            factors: out,
        }
    }

    /// All positive divisors, unsorted.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.factors {
            let len = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs
    }

    /// Radical: product of the distinct primes.
    pub fn radical(&self) -> FactoredInteger {
        FactoredInteger {
            sign: self.sign.abs(),
            factors: self.factors.iter().map(|&(p, _)| (p, 1)).collect(),
        }
    }
}

/// Factors a nonzero integer.
pub fn factorize(n: i64) -> Result<FactoredInteger> {
    if n == 0 {
        return Err(Error::ZeroFactorization);
    }
    let sign = if n < 0 { -1 } else { 1 };
    Ok(FactoredInteger {
        sign,
        factors: factor_u64(n.unsigned_abs()),
    })
}

/// Factors a nonzero `i128` whose magnitude fits in 64 bits.
pub fn factorize_i128(n: i128) -> Result<FactoredInteger> {
    if n == 0 {
        return Err(Error::ZeroFactorization);
    }
    let m = n.unsigned_abs();
    let m = u64::try_from(m).map_err(|_| {
        Error::InvalidArgument(format!("{n} exceeds the 64-bit factorization range"))
    })?;
    Ok(FactoredInteger {
        sign: if n < 0 { -1 } else { 1 },
        factors: factor_u64(m),
    })
}

/// Sorted prime factorization of `n >= 1`.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n <= 1 {
        return out;
    }
    for &p in small_primes() {
        let p = p as u64;
        if p * p > n {
            break;
        }
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    if n > 1 {
        let bound = TRIAL_DIVISION_LIMIT as u64;
        if n < bound * bound || is_prime(n) {
            out.push((n, 1));
        } else {
            let mut large = Vec::new();
            split_large(n, &mut large);
            large.sort_unstable();
            for p in large {
                match out.last_mut() {
                    Some(last) if last.0 == p => last.1 += 1,
                    _ => out.push((p, 1)),
                }
            }
        }
    }
    out
}

fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let mut c = 1;
    let d = loop {
        if let Some(d) = brent_rho(n, c) {
            break d;
        }
        c += 1;
    };
    split_large(d, out);
    split_large(n / d, out);
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// Brent's cycle detection with batched gcds. Returns a nontrivial divisor or
// None when this constant c fails.
fn brent_rho(n: u64, c: u64) -> Option<u64> {
    if n % 2 == 0 {
        return Some(2);
    }
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
    let mut g = 1u64;
    let mut x = y;
    let mut ys = y;
    const BATCH: u64 = 128;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..BATCH.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = q.gcd(&n);
            k += BATCH;
        }
        r *= 2;
        if r > 1 << 26 {
            return None;
        }
    }
    if g == n {
        loop {
            ys = f(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    if g == n {
        None
    } else {
        Some(g)
    }
}

/// p-adic valuation of a nonzero integer; `u32::MAX` for zero.
pub fn valuation(n: i128, p: u64) -> u32 {
    if n == 0 {
        return u32::MAX;
    }
    let p = p as i128;
    let mut n = n;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}
