//! Local solubility of diagonal ternary forms.
//!
//! Odd primes other than 3 go through the Hilbert symbol. At 2 and 3 the
//! decision is made by exhaustive search over primitive residues mod 64 and
//! mod 27, accepting a residue only when Hensel lifting is guaranteed; the
//! Hilbert symbol is then required to agree.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::Fibre;
use crate::arithmetic::{is_prime, jacobi_i128, valuation};
use crate::error::{Error, Result};

/// A place of `Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Place {
    Infinity,
    Prime(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => f.write_str("inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// Hilbert symbol `(a, b)_v`: `+1` iff `z^2 = a x^2 + b y^2` has a nontrivial
/// solution over `Q_v`.
pub fn hilbert_symbol(a: i128, b: i128, place: Place) -> Result<i8> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidArgument("Hilbert symbol of zero".into()));
    }
    match place {
        Place::Infinity => Ok(if a < 0 && b < 0 { -1 } else { 1 }),
        Place::Prime(p) => {
            if !is_prime(p) {
                return Err(Error::InvalidArgument(format!("{p} is not prime")));
            }
            Ok(hilbert_at_prime(a, b, p))
        }
    }
}

fn unit_part(n: i128, p: u64) -> (u32, i128) {
    let v = valuation(n, p);
    let mut u = n;
    for _ in 0..v {
        u /= p as i128;
    }
    (v, u)
}

fn hilbert_at_prime(a: i128, b: i128, p: u64) -> i8 {
    let (alpha, u) = unit_part(a, p);
    let (beta, v) = unit_part(b, p);
    if p == 2 {
        let eps = |w: i128| ((w.rem_euclid(8) - 1) / 2) % 2;
        let omega = |w: i128| {
            let r = w.rem_euclid(8);
            ((r * r - 1) / 8) % 2
        };
        let e = eps(u) * eps(v) + alpha as i128 * omega(v) + beta as i128 * omega(u);
        if e % 2 == 0 {
            1
        } else {
            -1
        }
    } else {
        let mut sign = 1i8;
        if (alpha as u64 * beta as u64) % 2 == 1 && (p - 1) / 2 % 2 == 1 {
            sign = -sign;
        }
        if beta % 2 == 1 {
            sign *= jacobi_i128(u, p as u128);
        }
        if alpha % 2 == 1 {
            sign *= jacobi_i128(v, p as u128);
        }
        sign
    }
}

/// Hilbert symbol deciding solubility of `a x^2 + b y^2 + c z^2 = 0` at `place`.
fn form_symbol(coeffs: [i128; 3], place: Place) -> Result<i8> {
    let [a, b, c] = coeffs;
    hilbert_symbol(-a * c, -b * c, place)
}

/// Brings a diagonal form to one where every coefficient has `p`-valuation at
/// most one and at most one coefficient is divisible by `p`. Solubility over
/// `Q_p` is unchanged.
fn p_reduce(mut coeffs: [i128; 3], p: u64) -> [i128; 3] {
    let p = p as i128;
    loop {
        for c in coeffs.iter_mut() {
            while *c % (p * p) == 0 {
                *c /= p * p;
            }
        }
        let divisible: Vec<usize> = (0..3).filter(|&i| coeffs[i] % p == 0).collect();
        match divisible.len() {
            0 | 1 => return coeffs,
            3 => {
                for c in coeffs.iter_mut() {
                    *c /= p;
                }
            }
            _ => {
                for (i, c) in coeffs.iter_mut().enumerate() {
                    if divisible.contains(&i) {
                        *c /= p;
                    } else {
                        *c *= p;
                    }
                }
            }
        }
    }
}

/// Decides solubility over `Q_p` by searching primitive residues modulo `p^k`
/// for one that Hensel's lemma lifts: `q(x) = 0 mod p^k` with
/// `k >= 2 v + 1`, `v` the least valuation of a partial derivative.
///
/// Requires `k >= 3` for `p = 2` and `k >= 1` otherwise.
pub fn solubility_by_residue_search(coeffs: [i128; 3], p: u64, k: u32) -> Result<bool> {
    if coeffs.contains(&0) {
        return Err(Error::InvalidArgument("degenerate form".into()));
    }
    if (p == 2 && k < 3) || k == 0 {
        return Err(Error::InvalidArgument(format!(
            "level {k} too small at p = {p}"
        )));
    }
    let m = (p as u64)
        .checked_pow(k)
        .filter(|&m| m <= 1 << 12)
        .ok_or_else(|| Error::ResourceGuard(format!("residue search modulo {p}^{k}")))?
        as i128;
    let reduced = p_reduce(coeffs, p);
    let r: Vec<i128> = reduced.iter().map(|c| c.rem_euclid(m)).collect();
    // Residues z mod m grouped by c z^2 mod m.
    let mut by_value: Vec<Vec<i128>> = vec![Vec::new(); m as usize];
    for z in 0..m {
        by_value[(r[2] * z * z).rem_euclid(m) as usize].push(z);
    }
    let vals: Vec<u32> = reduced.iter().map(|&c| valuation(2 * c, p)).collect();
    let p_i = p as i128;
    for x in 0..m {
        for y in 0..m {
            let need = (-(r[0] * x * x + r[1] * y * y)).rem_euclid(m);
            for &z in &by_value[need as usize] {
                if x % p_i == 0 && y % p_i == 0 && z % p_i == 0 {
                    continue;
                }
                let grad_val = [x, y, z]
                    .iter()
                    .zip(&vals)
                    .filter(|(&xi, _)| xi != 0)
                    .map(|(&xi, &vc)| vc + valuation(xi, p))
                    .min()
                    .unwrap_or(u32::MAX);
                if grad_val < u32::MAX && k >= 2 * grad_val + 1 {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Whether `Q_{s,t}` has a nontrivial zero over the completion at `place`.
pub fn is_locally_soluble(f: &Fibre, place: Place) -> Result<bool> {
    f.require_nonsingular()?;
    let coeffs = f.coefficients();
    match place {
        Place::Infinity => {
            let pos = coeffs.iter().filter(|&&c| c > 0).count();
            Ok(pos != 0 && pos != 3)
        }
        Place::Prime(2) => {
            let by_search = solubility_by_residue_search(coeffs, 2, 6)?;
            check_against_symbol(f, coeffs, 2, by_search)
        }
        Place::Prime(3) => {
            let by_search = solubility_by_residue_search(coeffs, 3, 3)?;
            check_against_symbol(f, coeffs, 3, by_search)
        }
        Place::Prime(p) => Ok(form_symbol(coeffs, Place::Prime(p))? == 1),
    }
}

fn check_against_symbol(f: &Fibre, coeffs: [i128; 3], p: u64, by_search: bool) -> Result<bool> {
    let by_symbol = form_symbol(coeffs, Place::Prime(p))? == 1;
    if by_symbol != by_search {
        return Err(Error::Internal(format!(
            "residue search and Hilbert symbol disagree at p = {p} for fibre ({}, {})",
            f.s(),
            f.t()
        )));
    }
    Ok(by_search)
}

/// The places at which solubility has to be checked: infinity and the primes
/// dividing `2 * discriminant`.
pub fn local_places(f: &Fibre) -> Result<Vec<Place>> {
    let mut places = vec![Place::Infinity];
    places.extend(f.bad_primes()?.into_iter().map(Place::Prime));
    Ok(places)
}

/// Isotropy over `Q` by the Hasse-Minkowski principle.
pub fn is_isotropic(f: &Fibre) -> Result<bool> {
    let places = local_places(f)?;
    let mut symbol_product = 1i8;
    let mut isotropic = true;
    for &place in &places {
        let soluble = is_locally_soluble(f, place)?;
        isotropic &= soluble;
        symbol_product *= if soluble { 1 } else { -1 };
    }
    if symbol_product != 1 {
        return Err(Error::Internal(format!(
            "Hilbert product formula fails for fibre ({}, {})",
            f.s(),
            f.t()
        )));
    }
    Ok(isotropic)
}
