//! Sums over arithmetic progressions: `(1 * chi_3)(n)` against its main term,
//! and squarefree sums of functions in `G`, in one and two variables.

use std::sync::OnceLock;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::euler::{euler_constant, f_hat, f_hat_pair, pair_constant, EULER_CUTOFF, L1_CHI3};
use super::gclass::GClassFunction;
use crate::arithmetic::{chi3, factor_u64, FactoredInteger, SpfSieve};
use crate::error::{Error, Result};
use num_traits::ToPrimitive;

/// Size of the shared tables.
const TABLE_LIMIT: usize = 1_000_000;

/// `(1 * chi_3)(n)` for `0 <= n <= limit`, built by adding `chi_3(d)` to
/// every multiple of `d`.
#[derive(Debug, Clone)]
pub struct OneStarChi3Table {
    values: Vec<u32>,
}

impl OneStarChi3Table {
    pub fn new(limit: usize) -> Self {
        let mut acc = vec![0i32; limit + 1];
        for d in 1..=limit {
            let c = chi3(d as i64) as i32;
            if c != 0 {
                for m in (d..=limit).step_by(d) {
                    acc[m] += c;
                }
            }
        }
        OneStarChi3Table {
            values: acc.into_iter().map(|v| v as u32).collect(),
        }
    }

    pub fn limit(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, n: usize) -> u32 {
        self.values[n]
    }
}

fn shared_table(limit: usize) -> std::borrow::Cow<'static, OneStarChi3Table> {
    static TABLE: OnceLock<OneStarChi3Table> = OnceLock::new();
    if limit <= TABLE_LIMIT {
        std::borrow::Cow::Borrowed(TABLE.get_or_init(|| OneStarChi3Table::new(TABLE_LIMIT)))
    } else {
        std::borrow::Cow::Owned(OneStarChi3Table::new(limit))
    }
}

fn shared_sieve(limit: usize) -> std::borrow::Cow<'static, SpfSieve> {
    static SIEVE: OnceLock<SpfSieve> = OnceLock::new();
    if limit <= TABLE_LIMIT {
        std::borrow::Cow::Borrowed(SIEVE.get_or_init(|| SpfSieve::new(TABLE_LIMIT)))
    } else {
        std::borrow::Cow::Owned(SpfSieve::new(limit))
    }
}

/// Compensated (Neumaier) running sum.
#[derive(Debug, Clone, Copy, Default)]
struct Neumaier {
    sum: f64,
    carry: f64,
}

impl Neumaier {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn merge(mut self, other: Neumaier) -> Neumaier {
        self.add(other.sum);
        self.add(other.carry);
        self
    }

    fn value(self) -> f64 {
        self.sum + self.carry
    }
}

/// `n <= x`, `n = a mod q`, optionally `gcd(n, k) = 1` and `n` squarefree.
/// `q = 1` imposes no congruence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProgressionQuery {
    pub x: u64,
    pub a: i64,
    pub q: u64,
    pub k: Option<u64>,
    pub squarefree: bool,
}

impl ProgressionQuery {
    pub fn new(x: u64, a: i64, q: u64) -> Self {
        ProgressionQuery {
            x,
            a,
            q,
            k: None,
            squarefree: false,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.x == 0 || self.q == 0 || self.k == Some(0) {
            return Err(Error::InvalidArgument("x, q and k must be positive".into()));
        }
        Ok(())
    }

    /// The members `n` of the progression in increasing order.
    fn members(&self) -> impl Iterator<Item = u64> + '_ {
        let r = self.a.rem_euclid(self.q as i64) as u64;
        let first = if r == 0 { self.q } else { r };
        (first..=self.x).step_by(self.q as usize)
    }
}

/// The summand of a progression sum.
#[derive(Debug, Clone)]
pub enum Summand {
    OneStarChi3,
    Function(GClassFunction),
}

/// Exact sum with an optional main-term comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProgressionReport {
    pub query: ProgressionQuery,
    /// The sum, exact for integer summands.
    pub value: f64,
    /// Set when the summand is integer valued.
    pub exact_integer: Option<u64>,
    pub main_term: Option<f64>,
    pub error: Option<f64>,
    /// `X^(1/3) q^(1/2) tau(q)^2` for `1 * chi_3`, `X^(1/2) q^(1/2) tau(kq)^2`
    /// for functions in `G`.
    pub envelope: Option<f64>,
    pub normalized_error: Option<f64>,
}

fn tau(n: u64) -> u64 {
    factor_u64(n).iter().map(|&(_, e)| e as u64 + 1).product()
}

fn phi_over_n(n: u64) -> f64 {
    factor_u64(n)
        .iter()
        .map(|&(p, _)| 1.0 - 1.0 / p as f64)
        .product()
}

/// `c~(q) = prod_{p | q} (1 - chi_3(p)/p)`.
pub fn c_tilde(q: u64) -> f64 {
    factor_u64(q)
        .iter()
        .map(|&(p, _)| 1.0 - chi3(p as i64) as f64 / p as f64)
        .product()
}

fn hypothesis(q: u64, others: &[i64]) -> Result<()> {
    if q % 3 == 0 || others.iter().any(|&v| q.gcd(&v.unsigned_abs()) != 1) {
        return Err(Error::Hypothesis(format!(
            "q = {q} is not coprime to 3 * {others:?}"
        )));
    }
    Ok(())
}

/// Sums `summand` over the progression.
///
/// With `with_main_term`, the main term of the one-variable asymptotic is
/// attached: `(pi/3^(3/2)) c~(q) X/q` for `1 * chi_3`, which needs
/// `gcd(q, 3a) = 1` and no coprimality or squarefree condition, and
/// `c (phi(k)/k) f^(kq) X/q` for `f` in `G`, which needs `gcd(q, 3ak) = 1`.
/// Functions in `G` are only summed over squarefree `n`.
pub fn progression_sum(
    query: &ProgressionQuery,
    summand: &Summand,
    with_main_term: bool,
) -> Result<ProgressionReport> {
    query.validate()?;
    let k = query.k.unwrap_or(1);
    let x = query.x as usize;
    let mut report = ProgressionReport {
        query: *query,
        value: 0.0,
        exact_integer: None,
        main_term: None,
        error: None,
        envelope: None,
        normalized_error: None,
    };
    match summand {
        Summand::OneStarChi3 => {
            let table = shared_table(x);
            let sieve = query.squarefree.then(|| shared_sieve(x));
            let total: u64 = query
                .members()
                .filter(|&n| n.gcd(&k) == 1)
                .filter(|&n| sieve.as_ref().is_none_or(|s| s.is_squarefree(n as usize)))
                .map(|n| table.get(n as usize) as u64)
                .sum();
            report.exact_integer = Some(total);
            report.value = total as f64;
            if with_main_term {
                if k != 1 || query.squarefree {
                    return Err(Error::Hypothesis(
                        "the main term for 1 * chi_3 has no coprimality or squarefree condition"
                            .into(),
                    ));
                }
                hypothesis(query.q, &[query.a])?;
                let q = query.q as f64;
                let main = L1_CHI3 * c_tilde(query.q) * query.x as f64 / q;
                let envelope = (query.x as f64).cbrt() * q.sqrt() * (tau(query.q) as f64).powi(2);
                attach(&mut report, main, envelope);
            }
        }
        Summand::Function(f) => {
            if !query.squarefree {
                return Err(Error::InvalidArgument(
                    "functions in G are summed over squarefree n".into(),
                ));
            }
            let sieve = shared_sieve(x);
            let members: Vec<u64> = query.members().filter(|&n| n.gcd(&k) == 1).collect();
            report.value = members
                .par_chunks(4096)
                .map(|chunk| {
                    let mut acc = Neumaier::default();
                    for &n in chunk {
                        let factors = sieve.factor(n as usize);
                        if factors.iter().all(|&(_, e)| e == 1) {
                            acc.add(f.at_squarefree_f64(factors.iter().map(|&(p, _)| p)));
                        }
                    }
                    acc
                })
                .collect::<Vec<_>>()
                .into_iter()
                .fold(Neumaier::default(), Neumaier::merge)
                .value();
            if with_main_term {
                hypothesis(query.q, &[query.a, k as i64])?;
                let c = euler_constant(f, EULER_CUTOFF)?.value;
                let kq = FactoredInteger::from_prime_powers(1, factor_u64(k * query.q))?.radical();
                let fh = f_hat(f, &kq)?.to_f64().unwrap_or(f64::NAN);
                let q = query.q as f64;
                let main = c * phi_over_n(k) * fh * query.x as f64 / q;
                let envelope =
                    (query.x as f64).sqrt() * q.sqrt() * (tau(k * query.q) as f64).powi(2);
                attach(&mut report, main, envelope);
            }
        }
    }
    Ok(report)
}

fn attach(report: &mut ProgressionReport, main: f64, envelope: f64) {
    let error = report.value - main;
    report.main_term = Some(main);
    report.error = Some(error);
    report.envelope = Some(envelope);
    report.normalized_error = Some(error.abs() / envelope);
}

/// Parameters of a two-variable sum over coprime squarefree `s <= y`,
/// `t <= x` with `gcd(st, k) = 1` and `(s, t) = (sigma, tau) mod q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairQuery {
    pub x: u64,
    pub y: u64,
    pub q: u64,
    pub sigma: i64,
    pub tau: i64,
    pub k: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairReport {
    pub query: PairQuery,
    pub value: f64,
    pub main_term: f64,
    pub ratio: f64,
}

/// `sum f1(s) f2(t)` over the pairs of `query`, without a main term.
pub fn coprime_pair_value(
    query: &PairQuery,
    f1: &GClassFunction,
    f2: &GClassFunction,
) -> Result<f64> {
    if query.q == 0 || query.k == 0 {
        return Err(Error::InvalidArgument("q and k must be positive".into()));
    }
    if query.x == 0 || query.y == 0 {
        return Ok(0.0);
    }
    let limit = query.x.max(query.y) as usize;
    let sieve = shared_sieve(limit);
    // f(n) for the admissible n of each coordinate, 0 otherwise.
    let values = |bound: u64, residue: i64, f: &GClassFunction| -> Vec<(u64, f64)> {
        ProgressionQuery::new(bound, residue, query.q)
            .members()
            .filter(|&n| n.gcd(&query.k) == 1 && sieve.is_squarefree(n as usize))
            .map(|n| {
                (
                    n,
                    f.at_squarefree_f64(sieve.factor(n as usize).into_iter().map(|(p, _)| p)),
                )
            })
            .filter(|&(_, v)| v != 0.0)
            .collect()
    };
    let s_values = values(query.y, query.sigma, f1);
    let t_values = values(query.x, query.tau, f2);
    let total = s_values
        .par_iter()
        .map(|&(s, fs)| {
            let mut acc = Neumaier::default();
            for &(t, ft) in &t_values {
                if s.gcd(&t) == 1 {
                    acc.add(fs * ft);
                }
            }
            acc
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Neumaier::default(), Neumaier::merge);
    Ok(total.value())
}

/// The two-variable sum against `c f^(kq) (phi(k)/k)^2 xy/q^2`; requires
/// `gcd(q, 3 k sigma tau) = 1` and `3` not dividing `k`.
pub fn coprime_pair_sum(
    query: &PairQuery,
    f1: &GClassFunction,
    f2: &GClassFunction,
) -> Result<PairReport> {
    let value = coprime_pair_value(query, f1, f2)?;
    hypothesis(query.q, &[query.k as i64, query.sigma, query.tau])?;
    if query.k % 3 == 0 {
        return Err(Error::Hypothesis("3 divides k".into()));
    }
    let c = pair_constant(f1, f2, EULER_CUTOFF)?.value;
    let kq = FactoredInteger::from_prime_powers(1, factor_u64(query.k * query.q))?.radical();
    let q = query.q as f64;
    let main_term = c
        * f_hat_pair(f1, f2, &kq)?
        * phi_over_n(query.k).powi(2)
        * query.x as f64
        * query.y as f64
        / (q * q);
    Ok(PairReport {
        query: *query,
        value,
        main_term,
        ratio: value / main_term,
    })
}
