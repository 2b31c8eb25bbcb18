//! Exact p-adic densities of the fibres.
//!
//! A residue class `x0 + p^k Z_p^3` is resolved by the size of the gradient
//! `2 a_i x_i` on it. When some component has valuation `v < k` the class is
//! Hensel-smooth and its zeros have density `p^(v - 2k)` (or none, if `q` is
//! not divisible by `p^(k+v)`); otherwise the class is split into its `p^3`
//! children. Primitivity forces a unit coordinate, so splitting stops once
//! `k` exceeds the valuations of the coefficients.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arithmetic::{jacobi_i128, valuation};
use crate::conics::Fibre;
use crate::error::{Error, Result};

/// Largest `p^n` accepted by [`count_primitive_zeros`].
pub const MODULUS_GUARD: u64 = 100_000_000;
/// Largest `p^2` for which the class recursion is started.
const LEVEL_ONE_GUARD: u64 = 20_000_000;

/// `sigma_p` of a fibre.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicDensity {
    pub p: u64,
    pub value: BigRational,
    /// Least `n` with `N*(p^m) p^(-2m) = value` for every `m >= n`.
    pub stabilized_at: u32,
}

fn pow_u128(p: u64, e: u32) -> Option<u128> {
    (p as u128).checked_pow(e)
}

/// `p^e` as a rational, `e` of either sign.
fn p_power(p: u64, e: i64) -> BigRational {
    let base = BigInt::from(p).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(base)
    } else {
        BigRational::new(BigInt::one(), base)
    }
}

struct ClassWalker {
    p: u64,
    coeffs: [i128; 3],
    /// `v_p(2 a_i)`.
    grad_val: [u32; 3],
    /// `min v_p(a_i)`.
    min_coeff_val: u32,
    depth_cap: u32,
}

/// What the walk found in one residue class.
enum Terminal {
    /// Hensel-smooth with gradient valuation `v`, zeros present.
    Smooth { k: u32, v: u32 },
    /// `q` has constant valuation `w` on the class.
    Empty { k: u32, w: u32 },
    /// Class still unresolved at the truncation level.
    Unresolved,
}

impl ClassWalker {
    fn new(f: &Fibre, p: u64) -> Self {
        let coeffs = f.coefficients();
        let grad_val = coeffs.map(|a| valuation(2 * a, p));
        let min_coeff_val = coeffs.iter().map(|&a| valuation(a, p)).min().unwrap();
        let depth_cap = 2 * valuation(2 * f.discriminant(), p) + 3;
        ClassWalker {
            p,
            coeffs,
            grad_val,
            min_coeff_val,
            depth_cap,
        }
    }

    /// `v_p(q(x))` if it is below `limit`, otherwise `None`.
    fn q_valuation_below(&self, x: &[u128; 3], limit: u32) -> Result<Option<u32>> {
        let m = pow_u128(self.p, limit)
            .filter(|&m| m < 1 << 62)
            .ok_or_else(|| Error::ResourceGuard(format!("modulus {}^{limit}", self.p)))?;
        let mut acc = 0u128;
        for i in 0..3 {
            let a = self.coeffs[i].rem_euclid(m as i128) as u128;
            let xi = x[i] % m;
            acc = (acc + a * (xi * xi % m)) % m;
        }
        if acc == 0 {
            Ok(None)
        } else {
            Ok(Some(valuation(acc as i128, self.p)))
        }
    }

    /// Visits the class `x + p^k Z_p^3`, descending no further than `stop`.
    fn walk(&self, k: u32, x: [u128; 3], stop: u32, out: &mut Vec<Terminal>) -> Result<()> {
        if k > self.depth_cap {
            return Err(Error::NotStabilized {
                p: self.p,
                partial: vec![format!("depth {k}")],
            });
        }
        let pk = pow_u128(self.p, k).unwrap();
        let g_low = (0..3)
            .map(|i| {
                let vx = if x[i] == 0 {
                    k
                } else {
                    valuation(x[i] as i128, self.p).min(k)
                };
                self.grad_val[i] + vx
            })
            .min()
            .unwrap();
        if g_low < k {
            let v = g_low;
            match self.q_valuation_below(&x, k + v)? {
                None => out.push(Terminal::Smooth { k, v }),
                Some(w) => out.push(Terminal::Empty { k, w }),
            }
            return Ok(());
        }
        let threshold = (k + g_low).min(2 * k + self.min_coeff_val);
        if let Some(w) = self.q_valuation_below(&x, threshold)? {
            out.push(Terminal::Empty { k, w });
            return Ok(());
        }
        if k >= stop {
            out.push(Terminal::Unresolved);
            return Ok(());
        }
        let p = self.p as u128;
        for h0 in 0..p {
            for h1 in 0..p {
                for h2 in 0..p {
                    let child = [x[0] + pk * h0, x[1] + pk * h1, x[2] + pk * h2];
                    self.walk(k + 1, child, stop, out)?;
                }
            }
        }
        Ok(())
    }

    /// Terminal classes over all primitive residues mod `p`, one representative
    /// per line through the origin (unit scaling preserves every valuation).
    fn terminals(&self, stop: u32) -> Result<Vec<Terminal>> {
        let p = self.p as u128;
        let mut reps = Vec::new();
        for y in 0..p {
            for z in 0..p {
                reps.push([1, y, z]);
            }
        }
        for z in 0..p {
            reps.push([0, 1, z]);
        }
        reps.push([0, 0, 1]);
        let mut out = Vec::new();
        for x in reps {
            self.walk(1, x, stop, &mut out)?;
        }
        Ok(out)
    }
}

fn check_prime_and_fibre(f: &Fibre, p: u64) -> Result<()> {
    f.require_nonsingular()?;
    if !crate::arithmetic::is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    Ok(())
}

fn divides_2delta(f: &Fibre, p: u64) -> bool {
    (2 * f.discriminant()) % p as i128 == 0
}

/// `N*(p^n)`: primitive residues `x mod p^n` with `q(x) = 0 mod p^n`.
pub fn count_primitive_zeros(f: &Fibre, p: u64, n: u32) -> Result<u128> {
    check_prime_and_fibre(f, p)?;
    if n == 0 {
        return Err(Error::InvalidArgument("level must be positive".into()));
    }
    let modulus = pow_u128(p, n)
        .filter(|&m| m <= MODULUS_GUARD as u128)
        .ok_or_else(|| Error::ResourceGuard(format!("{p}^{n} exceeds {MODULUS_GUARD}")))?;
    let p2 = (p as u128) * (p as u128);
    if !divides_2delta(f, p) {
        return Ok((p2 - 1) * (modulus / p as u128) * (modulus / p as u128));
    }
    if p2 > LEVEL_ONE_GUARD as u128 {
        return Err(Error::ResourceGuard(format!("class recursion at p = {p}")));
    }
    let walker = ClassWalker::new(f, p);
    let mut total = 0u128;
    for term in walker.terminals(n)? {
        total += match term {
            Terminal::Smooth { k, v } => {
                if n >= k + v {
                    pow_u128(p, 2 * n + v - 2 * k).unwrap()
                } else {
                    pow_u128(p, 3 * (n - k)).unwrap()
                }
            }
            Terminal::Empty { k, w } => {
                if n <= w {
                    pow_u128(p, 3 * (n - k)).unwrap()
                } else {
                    0
                }
            }
            Terminal::Unresolved => 1,
        };
    }
    Ok(total * (p as u128 - 1))
}

/// Exact `sigma_p` by the class recursion, valid for every prime.
pub fn sigma_p_by_recursion(f: &Fibre, p: u64) -> Result<PadicDensity> {
    check_prime_and_fibre(f, p)?;
    if (p as u128) * (p as u128) > LEVEL_ONE_GUARD as u128 {
        return Err(Error::ResourceGuard(format!("class recursion at p = {p}")));
    }
    let walker = ClassWalker::new(f, p);
    let mut by_exponent: BTreeMap<i64, u64> = BTreeMap::new();
    let mut stabilized_at = 1;
    for term in walker.terminals(u32::MAX)? {
        match term {
            Terminal::Smooth { k, v } => {
                *by_exponent.entry(v as i64 - 2 * k as i64).or_default() += 1;
                stabilized_at = stabilized_at.max(k + v);
            }
            Terminal::Empty { k, w } => stabilized_at = stabilized_at.max(k.max(w + 1)),
            Terminal::Unresolved => unreachable!("walk without truncation"),
        }
    }
    let mut value = BigRational::zero();
    for (e, count) in by_exponent {
        value += p_power(p, e) * BigRational::from_integer(BigInt::from(count));
    }
    value *= BigRational::from_integer(BigInt::from(p - 1));
    Ok(PadicDensity {
        p,
        value,
        stabilized_at,
    })
}

/// Closed form for a prime `p >= 5` dividing exactly one coefficient.
///
/// With `a_1 = p^e u` and `chi = (-a_2 a_3 / p)`, the classes with `p` not
/// dividing `(x_2, x_3)` give `(1 - 1/p)(1 + chi)`; the remaining ones rescale
/// to the form `p^(e-2) u x_1^2 + a_2 y_2^2 + a_3 y_3^2` with `x_1` a unit,
/// whose density `I(e - 2)` satisfies
/// `I(0) = (p^2 - 1 - (p - 1)(1 + chi)) / p^2`,
/// `I(1) = (p - 1)^2 (1 + chi) / p^2` and `I(e) = I(1) + I(e - 2)` for `e >= 2`.
pub fn sigma_p_closed_form(f: &Fibre, p: u64) -> Result<Option<PadicDensity>> {
    check_prime_and_fibre(f, p)?;
    if p < 5 {
        return Ok(None);
    }
    let coeffs = f.coefficients();
    let divisible: Vec<usize> = (0..3).filter(|&i| coeffs[i] % p as i128 == 0).collect();
    if divisible.len() != 1 {
        return Ok(None);
    }
    let i = divisible[0];
    let e = valuation(coeffs[i], p);
    let others: Vec<i128> = (0..3).filter(|&j| j != i).map(|j| coeffs[j]).collect();
    let chi = jacobi_i128((-others[0] * others[1]).rem_euclid(p as i128), p as u128) as i64;
    let pr = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    let pi = p as i64;
    let p2 = pi * pi;
    let i1 = pr((pi - 1) * (pi - 1) * (1 + chi), p2);
    let i0 = pr(p2 - 1 - (pi - 1) * (1 + chi), p2);
    let mut value = pr((pi - 1) * (1 + chi), pi);
    if e >= 2 {
        let e2 = e - 2;
        let steps = e2 / 2;
        value += i1.clone() * BigRational::from_integer(BigInt::from(steps));
        value += if e2 % 2 == 0 { i0 } else { i1 };
    }
    Ok(Some(PadicDensity {
        p,
        value,
        stabilized_at: e + 1,
    }))
}

/// `sigma_p(s, t) = lim N*(p^n) p^(-2n)`.
pub fn sigma_p(f: &Fibre, p: u64) -> Result<PadicDensity> {
    check_prime_and_fibre(f, p)?;
    if !divides_2delta(f, p) {
        let p2 = BigInt::from(p) * BigInt::from(p);
        let value = BigRational::new(&p2 - BigInt::one(), p2);
        return Ok(PadicDensity {
            p,
            value,
            stabilized_at: 1,
        });
    }
    if let Some(d) = sigma_p_closed_form(f, p)? {
        return Ok(d);
    }
    sigma_p_by_recursion(f, p)
}
