//! Exact summation of rationals whose denominators are products of distinct
//! primes.
//!
//! Values such as `div(n)` or `r~(n)` have denominator dividing `rad(n)`. A
//! running `BigRational` sum of thousands of them would spend almost all of
//! its time in big-integer gcds; keeping the denominator as an explicit prime
//! set makes every merge gcd-free, and the final reduction only needs one
//! remainder per prime.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `numerator / prod(primes)` with `primes` strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeDenominatorFraction {
    pub numerator: BigInt,
    pub primes: Vec<u64>,
}

impl PrimeDenominatorFraction {
    pub fn zero() -> Self {
        PrimeDenominatorFraction {
            numerator: BigInt::zero(),
            primes: Vec::new(),
        }
    }

    /// Builds `numerator / prod(primes)`; `primes` must be distinct.
    pub fn new(numerator: BigInt, mut primes: Vec<u64>) -> Self {
        primes.sort_unstable();
        debug_assert!(
            primes.windows(2).all(|w| w[0] < w[1]),
            "primes must be distinct"
        );
        PrimeDenominatorFraction { numerator, primes }
    }

    pub fn add(self, other: Self) -> Self {
        if other.numerator.is_zero() {
            return self;
        }
        if self.numerator.is_zero() {
            return other;
        }
        let (only_self, only_other, union) = split_sets(&self.primes, &other.primes);
        let numerator =
            self.numerator * product(&only_other) + other.numerator * product(&only_self);
        PrimeDenominatorFraction {
            numerator,
            primes: union,
        }
    }

    /// Reduces to lowest terms.
    pub fn to_rational(&self) -> BigRational {
        if self.numerator.is_zero() {
            return BigRational::zero();
        }
        let mut num = self.numerator.clone();
        let mut den_primes = Vec::with_capacity(self.primes.len());
        for &p in &self.primes {
            let pb = BigInt::from(p);
            if (&num % &pb).is_zero() {
                num /= pb;
            } else {
                den_primes.push(p);
            }
        }
        // Already coprime, so this constructor does not need to reduce.
        BigRational::new_raw(num, product(&den_primes))
    }
}

fn split_sets(a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let (mut only_a, mut only_b, mut union) = (
        Vec::new(),
        Vec::new(),
        Vec::with_capacity(a.len() + b.len()),
    );
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) if x == y => {
                union.push(x);
                i += 1;
                j += 1;
            }
            (Some(&x), Some(&y)) if x < y => {
                only_a.push(x);
                union.push(x);
                i += 1;
            }
            (Some(_), Some(&y)) => {
                only_b.push(y);
                union.push(y);
                j += 1;
            }
            (Some(&x), None) => {
                only_a.push(x);
                union.push(x);
                i += 1;
            }
            (None, Some(&y)) => {
                only_b.push(y);
                union.push(y);
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    (only_a, only_b, union)
}

fn product(primes: &[u64]) -> BigInt {
    match primes.len() {
        0 => BigInt::one(),
        1 => BigInt::from(primes[0]),
        n => product(&primes[..n / 2]) * product(&primes[n / 2..]),
    }
}

/// Sums the terms in a balanced binary tree, which keeps the operands of each
/// merge of comparable size.
pub fn tree_sum(mut terms: Vec<PrimeDenominatorFraction>) -> PrimeDenominatorFraction {
    if terms.is_empty() {
        return PrimeDenominatorFraction::zero();
    }
    while terms.len() > 1 {
        let mut next = Vec::with_capacity(terms.len().div_ceil(2));
        let mut it = terms.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(a.add(b)),
                None => next.push(a),
            }
        }
        terms = next;
    }
    terms.pop().unwrap()
}
