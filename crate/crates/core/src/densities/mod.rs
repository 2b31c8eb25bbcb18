//! Local densities of the fibres and their product.

mod padic;
mod real;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::arithmetic::primes_up_to;
use crate::conics::{is_isotropic, Fibre};
use crate::error::{Error, Result};

pub use padic::{
    count_primitive_zeros, sigma_p, sigma_p_by_recursion, sigma_p_closed_form, PadicDensity,
    MODULUS_GUARD,
};
pub use real::{sigma_infinity, slab_density, ArchimedeanDensity, DEFAULT_GRID, EPSILONS};

/// `sigma_inf`, the exact `sigma_p` for small and bad primes, and a certified
/// lower bound for the remaining factors.
#[derive(Debug, Clone)]
pub struct DensityProfile {
    pub s: i64,
    pub t: i64,
    pub sigma_infinity: ArchimedeanDensity,
    /// `sigma_p` for every `p <= pmax` and every `p | 2 discriminant`.
    pub finite: BTreeMap<u64, PadicDensity>,
    pub pmax: u64,
    /// `1 - 1/pmax <= prod_{p > pmax} (1 - 1/p^2)`; the omitted primes are
    /// all unramified, so this bounds their contribution from below.
    pub tail_lower_bound: BigRational,
}

impl DensityProfile {
    /// `prod` of the stored `sigma_p`.
    pub fn finite_product(&self) -> BigRational {
        self.finite
            .values()
            .fold(BigRational::one(), |acc, d| acc * &d.value)
    }

    /// `(1/2) sigma_inf * prod_{p <= pmax or bad} sigma_p * tail`, a lower
    /// bound for the summand `(1/2) sigma_inf prod_p sigma_p`.
    pub fn lower_bound(&self) -> f64 {
        let finite = (self.finite_product() * &self.tail_lower_bound)
            .to_f64()
            .unwrap_or(0.0);
        0.5 * self.sigma_infinity.value * finite
    }

    /// The full product `prod_p sigma_p`, using
    /// `prod_p (1 - 1/p^2) = 6 / pi^2` for the unramified primes.
    pub fn full_product(&self) -> f64 {
        let mut acc = 6.0 / (std::f64::consts::PI * std::f64::consts::PI);
        for d in self.finite.values() {
            let p = d.p as f64;
            acc *= d.value.to_f64().unwrap_or(0.0) / (1.0 - 1.0 / (p * p));
        }
        acc
    }
}

/// Builds the density profile of an isotropic fibre.
pub fn density_product(f: &Fibre, pmax: u64, grid: usize) -> Result<DensityProfile> {
    if pmax < 2 {
        return Err(Error::InvalidArgument(
            "prime cutoff must be at least 2".into(),
        ));
    }
    if !is_isotropic(f)? {
        return Err(Error::Anisotropic { s: f.s(), t: f.t() });
    }
    let mut primes: Vec<u64> = primes_up_to(pmax as usize)
        .into_iter()
        .map(u64::from)
        .collect();
    for p in f.bad_primes()? {
        if p > pmax {
            primes.push(p);
        }
    }
    let mut finite = BTreeMap::new();
    for p in primes {
        finite.insert(p, sigma_p(f, p)?);
    }
    let tail_lower_bound = BigRational::new(BigInt::from(pmax - 1), BigInt::from(pmax));
    Ok(DensityProfile {
        s: f.s(),
        t: f.t(),
        sigma_infinity: sigma_infinity(f, grid)?,
        finite,
        pmax,
        tail_lower_bound,
    })
}

/// `prod_{p | 3 discriminant} sigma_p`, the part of the density product that
/// is not identically `1 - 1/p^2`.
pub fn ramified_product(f: &Fibre) -> Result<BigRational> {
    let mut acc = BigRational::one();
    for p in f.discriminant_factors()?.primes() {
        acc *= sigma_p(f, p)?.value;
    }
    Ok(acc)
}
