//! The divisor sum `D(x)`, its dyadic aggregate, and the restricted lower
//! bound obtained from `div(n) = sum_{d | n} u~(d)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arithmetic::exact_sum::{tree_sum, PrimeDenominatorFraction};
use crate::arithmetic::{factor_u64, mult_eval, FactoredInteger, MultFn};
use crate::conics::{fibre, is_isotropic};
use crate::densities::density_product;
use crate::error::{Error, Result};

/// Pairs of the box `xB`: `s in (x/4, x/2]`, `t in (x/2, x]`, both `1 mod 8`
/// and coprime, ordered by `(t, s)`.
pub fn box_pairs(x: u64) -> Vec<(u64, u64)> {
    let first = |lo: u64| {
        // Smallest value > lo that is 1 mod 8.
        let n = lo + 1;
        n + (9 - n % 8) % 8
    };
    let mut out = Vec::new();
    let mut t = first(x / 2);
    while t <= x {
        let mut s = first(x / 4);
        while 2 * s <= x {
            if s.gcd(&t) == 1 {
                out.push((s, t));
            }
            s += 8;
        }
        t += 8;
    }
    out
}

fn factored(factors: Vec<(u64, u32)>) -> FactoredInteger {
    FactoredInteger::from_prime_powers(1, factors).expect("factors of a positive integer")
}

/// Writes `r` over the squarefree denominator `prod(primes)`, which must be a
/// multiple of the denominator of `r`.
fn over_primes(r: &BigRational, mut primes: Vec<u64>) -> PrimeDenominatorFraction {
    primes.sort_unstable();
    primes.dedup();
    let den: BigInt = primes.iter().map(|&p| BigInt::from(p)).product();
    debug_assert!((&den % r.denom()).is_zero());
    PrimeDenominatorFraction::new(r.numer() * (den / r.denom()), primes)
}

/// Factors of `t^3 - s^3` through `(t - s)(t^2 + st + s^2)`.
fn cube_difference_factors(s: u64, t: u64) -> Vec<(u64, u32)> {
    let mut f = factor_u64(t - s);
    for (p, e) in factor_u64(t * t + s * t + s * s) {
        match f.iter_mut().find(|(q, _)| *q == p) {
            Some(entry) => entry.1 += e,
            None => f.push((p, e)),
        }
    }
    f.sort_unstable();
    f
}

/// `D(x) = sum div(t^3 - s^3) r~(st)` over [`box_pairs`].
pub fn d_sum(x: u64) -> Result<BigRational> {
    if x < 2 {
        return Err(Error::InvalidArgument("D(x) needs x >= 2".into()));
    }
    let terms: Vec<PrimeDenominatorFraction> = box_pairs(x)
        .par_iter()
        .filter_map(|&(s, t)| {
            let st = factored(factor_u64(s * t));
            let r = mult_eval(MultFn::RTilde, &st);
            if r.is_zero() {
                return None;
            }
            let diff = factored(cube_difference_factors(s, t));
            let value = r.into_rational() * mult_eval(MultFn::Div, &diff).into_rational();
            Some(over_primes(
                &value,
                st.primes().chain(diff.primes()).collect(),
            ))
        })
        .collect();
    Ok(tree_sum(terms).to_rational())
}

/// The dyadic aggregate `sum_{n = 2}^{floor(log2 x)} 4^-n D(2^n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DyadicSum {
    pub x: u64,
    /// `(n, D(2^n))`.
    pub levels: Vec<(u32, BigRational)>,
    pub aggregate: BigRational,
}

pub fn gfrak_lower(x: u64) -> Result<DyadicSum> {
    if x < 4 {
        return Err(Error::InvalidArgument("the dyadic sum needs x >= 4".into()));
    }
    if x.ilog2() >= 32 {
        return Err(Error::ResourceGuard(format!(
            "x = {x} gives levels beyond 2^31"
        )));
    }
    let mut levels = Vec::new();
    let mut aggregate = BigRational::zero();
    for n in 2..=x.ilog2() {
        let d = d_sum(1u64 << n)?;
        aggregate += &d / BigRational::from_integer(BigInt::from(4u8).pow(n));
        levels.push((n, d));
    }
    Ok(DyadicSum {
        x,
        levels,
        aggregate,
    })
}

/// Bound on `x` for [`gfrak_direct`].
pub const GFRAK_DIRECT_LIMIT: u64 = 64;

/// `(1/2) sum sigma_inf prod_p sigma_p` over primitive `(s, t)` with
/// `|s|, |t| <= x` and isotropic nonsingular fibre, using `grid` for the
/// real densities.
pub fn gfrak_direct(x: u64, grid: usize) -> Result<f64> {
    if x > GFRAK_DIRECT_LIMIT {
        return Err(Error::ResourceGuard(format!(
            "direct evaluation needs x <= {GFRAK_DIRECT_LIMIT}"
        )));
    }
    let b = x as i64;
    let pairs: Vec<(i64, i64)> = (-b..=b)
        .flat_map(|t| (-b..=b).map(move |s| (s, t)))
        .filter(|&(s, t)| s.gcd(&t) == 1 && s != 0 && t != 0 && s != t)
        .collect();
    let terms = pairs
        .par_iter()
        .map(|&(s, t)| -> Result<f64> {
            let f = fibre(s, t)?;
            if !is_isotropic(&f)? {
                return Ok(0.0);
            }
            let profile = density_product(&f, 2, grid)?;
            Ok(0.5 * profile.sigma_infinity.value * profile.full_product())
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(terms.iter().sum())
}

/// `sum r~(st) sum u~(d1 d2)` over squarefree pairs of [`box_pairs`] and
/// `d1, d2 <= dmax` with `gcd(d1 d2, 6) = 1`, `d1 | s^2 + st + t^2` and
/// `d2 | s - t`.
///
/// Each admissible `d1 d2` is a distinct divisor of `t^3 - s^3` and `u~ >= 0`,
/// so this is at most `D(x)`.
pub fn fugue_lower_bound(x: u64, dmax: u64) -> Result<BigRational> {
    if x < 2 || dmax == 0 {
        return Err(Error::InvalidArgument("need x >= 2 and dmax >= 1".into()));
    }
    let terms: Vec<PrimeDenominatorFraction> = box_pairs(x)
        .par_iter()
        .filter_map(|&(s, t)| {
            let st = factored(factor_u64(s * t));
            if !st.is_squarefree() {
                return None;
            }
            let r = mult_eval(MultFn::RTilde, &st);
            if r.is_zero() {
                return None;
            }
            let quadratic = s * s + s * t + t * t;
            let mut inner = BigRational::zero();
            for d1 in divisors_up_to(quadratic, dmax) {
                for d2 in divisors_up_to(t - s, dmax) {
                    let d = d1 * d2;
                    if d.gcd(&6) == 1 && d1.gcd(&d2) == 1 {
                        inner +=
                            mult_eval(MultFn::UTilde, &factored(factor_u64(d))).into_rational();
                    }
                }
            }
            if inner.is_zero() {
                return None;
            }
            let value = r.into_rational() * inner;
            let diff = cube_difference_factors(s, t);
            Some(over_primes(
                &value,
                st.primes()
                    .chain(diff.into_iter().map(|(p, _)| p))
                    .collect(),
            ))
        })
        .collect();
    Ok(tree_sum(terms).to_rational())
}

fn divisors_up_to(n: u64, dmax: u64) -> Vec<u64> {
    factored(factor_u64(n))
        .divisors()
        .into_iter()
        .filter(|&d| d <= dmax)
        .collect()
}

/// Roots of `x^2 + x + 1` modulo `p`, by enumeration.
pub fn cyclotomic_root_count(p: u64) -> u64 {
    (0..p).filter(|&x| (x * x + x + 1) % p == 0).count() as u64
}

/// `D(x)` as a float, for fits and tables.
pub fn d_sum_f64(x: u64) -> Result<f64> {
    Ok(d_sum(x)?.to_f64().unwrap_or(f64::NAN))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::{is_prime, jacobi};

    #[test]
    fn box_membership() {
        assert!(box_pairs(8).is_empty());
        assert_eq!(box_pairs(36), vec![(17, 25), (17, 33)]);
        for (s, t) in box_pairs(300) {
            assert!(4 * s > 300 && 2 * s <= 300 && 2 * t > 300 && t <= 300);
            assert_eq!((s % 8, t % 8), (1, 1));
        }
    }

    #[test]
    fn d_of_36_from_its_two_terms() {
        let term = |s: i64, t: i64| {
            let div = mult_eval(
                MultFn::Div,
                &crate::arithmetic::factorize(t * t * t - s * s * s).unwrap(),
            );
            let r = mult_eval(
                MultFn::RTilde,
                &crate::arithmetic::factorize(s * t).unwrap(),
            );
            div.into_rational() * r.into_rational()
        };
        assert_eq!(d_sum(36).unwrap(), term(17, 25) + term(17, 33));
        assert!(d_sum(8).unwrap().is_zero());
    }

    #[test]
    fn dyadic_levels() {
        let g = gfrak_lower(4).unwrap();
        assert_eq!(g.levels.len(), 1);
        assert!(g.aggregate.is_zero());
        let big = gfrak_lower(1 << 10).unwrap();
        assert!(big.aggregate > BigRational::zero());
        let total: BigRational = big.levels.iter().map(|(_, d)| d.clone()).sum();
        assert!(big.aggregate <= total);
        assert!(gfrak_lower(1 << 9).unwrap().aggregate <= big.aggregate);
    }

    #[test]
    fn root_count_matches_symbol() {
        assert_eq!(cyclotomic_root_count(2), 0);
        for p in (3..1000).filter(|&p| is_prime(p)) {
            assert_eq!(
                cyclotomic_root_count(p) as i64,
                1 + jacobi(-3, p as i64).unwrap() as i64,
                "p = {p}"
            );
        }
    }

    /// The bound as a sum over residue classes modulo `8 d1 d2`.
    fn fugue_by_residues(x: u64, dmax: u64) -> BigRational {
        let pairs = box_pairs(x);
        let mut total = BigRational::zero();
        for d1 in 1..=dmax {
            for d2 in 1..=dmax {
                let d = d1 * d2;
                let ud = mult_eval(MultFn::UTilde, &factored(factor_u64(d))).into_rational();
                if d.gcd(&6) != 1 || ud.is_zero() {
                    continue;
                }
                let m = 8 * d;
                for sigma in (1..m).step_by(8) {
                    for tau in (1..m).step_by(8) {
                        let ok = (sigma * sigma + sigma * tau + tau * tau) % d1 == 0
                            && (sigma + m - tau) % d2 == 0
                            && sigma.gcd(&tau).gcd(&m) == 1;
                        if !ok {
                            continue;
                        }
                        for &(s, t) in &pairs {
                            let st = factored(factor_u64(s * t));
                            if s % m == sigma && t % m == tau && st.is_squarefree() {
                                total += &ud * mult_eval(MultFn::RTilde, &st).into_rational();
                            }
                        }
                    }
                }
            }
        }
        total
    }

    #[test]
    fn fugue_matches_residue_enumeration() {
        for (x, dmax) in [(64, 1), (100, 7), (128, 13), (200, 11)] {
            let got = fugue_lower_bound(x, dmax).unwrap();
            assert_eq!(got, fugue_by_residues(x, dmax), "x = {x}, dmax = {dmax}");
            assert!(got <= d_sum(x).unwrap());
        }
    }
}
