//! Rational points on a fibre: a bounded search for one point, the exact
//! count `M_{s,t}(B)`, and an independent count through the parametrization
//! of the conic from a known point.

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{is_isotropic, Fibre};
use crate::error::{Error, Result};

/// A primitive integer zero of a fibre.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ConicPoint {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl ConicPoint {
    pub fn as_i128(&self) -> [i128; 3] {
        [self.x as i128, self.y as i128, self.z as i128]
    }
}

/// `z` with `c z^2 = -(a x^2 + b y^2)`, `z >= 0`, if it is an integer.
#[inline]
fn solve_z(coeffs: &[i128; 3], x: i128, y: i128) -> Option<i128> {
    let rest = -(coeffs[0] * x * x + coeffs[1] * y * y);
    if rest % coeffs[2] != 0 {
        return None;
    }
    let z2 = rest / coeffs[2];
    if z2 < 0 {
        return None;
    }
    let z = z2.isqrt();
    (z * z == z2).then_some(z)
}

fn box_search(coeffs: &[i128; 3], bounds: [i128; 3]) -> Option<[i128; 3]> {
    for x in 0..=bounds[0] {
        for y in 0..=bounds[1] {
            if x == 0 && y == 0 {
                continue;
            }
            if let Some(z) = solve_z(coeffs, x, y) {
                if z <= bounds[2] {
                    return Some([x, y, z]);
                }
            }
        }
    }
    None
}

fn holzer_bounds(c: &[i128; 3]) -> [i128; 3] {
    [
        (c[1] * c[2]).unsigned_abs().isqrt() as i128,
        (c[0] * c[2]).unsigned_abs().isqrt() as i128,
        (c[0] * c[1]).unsigned_abs().isqrt() as i128,
    ]
}

/// Rewrites `a x^2 + b y^2 + c z^2` as a form with squarefree, pairwise
/// coprime coefficients. Returns the new coefficients and the multipliers
/// `m` such that a zero `v` of the new form gives the zero `(m_i v_i)` of the
/// old one.
fn normalize(mut c: [i128; 3]) -> ([i128; 3], [i128; 3]) {
    let mut mult = [1i128; 3];
    loop {
        let g = c[0].gcd(&c[1]).gcd(&c[2]);
        if g > 1 {
            for ci in c.iter_mut() {
                *ci /= g;
            }
        }
        let mut changed = false;
        // Square factors: a = a' k^2.
        for i in 0..3 {
            let k = square_part(c[i]);
            if k > 1 {
                c[i] /= k * k;
                for (j, m) in mult.iter_mut().enumerate() {
                    if j != i {
                        *m *= k;
                    }
                }
                changed = true;
            }
        }
        // Common factors of two coefficients: a = g a1, b = g b1.
        for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
            let g = c[i].gcd(&c[j]);
            if g > 1 {
                c[i] /= g;
                c[j] /= g;
                c[k] *= g;
                mult[k] *= g;
                changed = true;
            }
        }
        if !changed {
            return (c, mult);
        }
    }
}

/// Largest `k` with `k^2 | n`, by trial division (coefficients here are small).
fn square_part(n: i128) -> i128 {
    let mut n = n.unsigned_abs();
    let mut k = 1u128;
    let mut p = 2u128;
    while p * p <= n {
        while n % (p * p) == 0 {
            n /= p * p;
            k *= p;
        }
        while n % p == 0 {
            n /= p;
        }
        p += 1;
    }
    k as i128
}

fn primitive(v: [i128; 3]) -> [i128; 3] {
    let g = v[0].gcd(&v[1]).gcd(&v[2]);
    [v[0] / g, v[1] / g, v[2] / g]
}

/// A primitive zero of an isotropic fibre.
///
/// Searches `|x| <= sqrt|bc|`, `|y| <= sqrt|ac|`, `|z| <= sqrt|ab|` with
/// nonnegative coordinates in order of increasing `x`, then `y`; the first
/// hit is the lexicographically least zero in the box. Should the box of the
/// raw coefficients be empty, the search is repeated on the normalized form
/// (squarefree, pairwise coprime), where Holzer's theorem guarantees a zero,
/// and the result is mapped back.
pub fn find_point(f: &Fibre) -> Result<ConicPoint> {
    if !is_isotropic(f)? {
        return Err(Error::Anisotropic { s: f.s(), t: f.t() });
    }
    let coeffs = f.coefficients();
    let found = box_search(&coeffs, holzer_bounds(&coeffs)).or_else(|| {
        let (reduced, mult) = normalize(coeffs);
        box_search(&reduced, holzer_bounds(&reduced))
            .map(|v| primitive([v[0] * mult[0], v[1] * mult[1], v[2] * mult[2]]))
    });
    let v = found.ok_or_else(|| {
        Error::Internal(format!(
            "no point found on isotropic fibre ({}, {})",
            f.s(),
            f.t()
        ))
    })?;
    let v = primitive(v);
    if f.eval(v[0], v[1], v[2]) != 0 {
        return Err(Error::Internal("find_point returned a non-zero".into()));
    }
    let narrow =
        |c: i128| i64::try_from(c).map_err(|_| Error::Internal("point coordinate overflow".into()));
    Ok(ConicPoint {
        x: narrow(v[0])?,
        y: narrow(v[1])?,
        z: narrow(v[2])?,
    })
}

/// `M_{s,t}(B)`: primitive integer zeros `(x, y, z)` with
/// `max(|xs|, |xt|, |y|, |z|) <= B`, counting `v` and `-v` separately.
pub fn count_m(f: &Fibre, bound: u64) -> Result<u64> {
    f.require_nonsingular()?;
    let coeffs = f.coefficients();
    let b = bound as i128;
    let x_max = (bound / f.x_weight()) as i128;
    let count = (0..=x_max)
        .into_par_iter()
        .map(|x| {
            let mut acc = 0u64;
            for y in 0..=b {
                if x == 0 && y == 0 {
                    continue;
                }
                if let Some(z) = solve_z(&coeffs, x, y) {
                    if z <= b && x.gcd(&y).gcd(&z) == 1 {
                        let nonzero = (x != 0) as u32 + (y != 0) as u32 + (z != 0) as u32;
                        acc += 1 << nonzero;
                    }
                }
            }
            acc
        })
        .sum();
    Ok(count)
}

/// `M_{s,t}(B)` computed from the rational parametrization through
/// `P = find_point(f)`.
///
/// Every zero `R != P` lies on the line through `P` with direction
/// `D = P_i R - R_i P`, whose `i`-th coordinate vanishes. Conversely the
/// direction `D` gives the zero `q(D) P - 2 B(P, D) D`. Enumerating all
/// primitive `(u, v)` up to sign in the box forced by the norm bound visits
/// every projective zero exactly once.
pub fn count_m_parametric(f: &Fibre, bound: u64) -> Result<u64> {
    f.require_nonsingular()?;
    if !is_isotropic(f)? {
        return Ok(0);
    }
    let p = find_point(f)?.as_i128();
    let coeffs = f.coefficients();
    let norm = f.norm();
    let bnd = [(bound / f.x_weight()) as i128, bound as i128, bound as i128];
    // Pivot with the smallest direction box.
    let (i, j, k) = [(0, 1, 2), (1, 0, 2), (2, 0, 1)]
        .into_iter()
        .filter(|&(i, _, _)| p[i] != 0)
        .min_by_key(|&(i, j, k)| {
            (p[i].abs() * bnd[j] + p[j].abs() * bnd[i])
                * (p[i].abs() * bnd[k] + p[k].abs() * bnd[i])
        })
        .expect("a zero has a nonzero coordinate");
    let u_max = p[i].abs() * bnd[j] + p[j].abs() * bnd[i];
    let v_max = p[i].abs() * bnd[k] + p[k].abs() * bnd[i];
    let bilinear =
        |d: &[i128; 3]| coeffs[0] * p[0] * d[0] + coeffs[1] * p[1] * d[1] + coeffs[2] * p[2] * d[2];
    let quad =
        |d: &[i128; 3]| coeffs[0] * d[0] * d[0] + coeffs[1] * d[1] * d[1] + coeffs[2] * d[2] * d[2];

    let projective: u64 = (0..=u_max)
        .into_par_iter()
        .map(|u| {
            let mut acc = 0u64;
            let v_lo = if u == 0 { 1 } else { -v_max };
            let v_hi = if u == 0 { 1 } else { v_max };
            for v in v_lo..=v_hi {
                if u.gcd(&v) != 1 {
                    continue;
                }
                let mut d = [0i128; 3];
                d[j] = u;
                d[k] = v;
                let bl = bilinear(&d);
                if bl == 0 {
                    continue;
                }
                let qd = quad(&d);
                let r = primitive([
                    qd * p[0] - 2 * bl * d[0],
                    qd * p[1] - 2 * bl * d[1],
                    qd * p[2] - 2 * bl * d[2],
                ]);
                if norm.eval(r[0], r[1], r[2]) <= bound as u128 {
                    acc += 1;
                }
            }
            acc
        })
        .sum();
    let p_itself = (norm.eval(p[0], p[1], p[2]) <= bound as u128) as u64;
    Ok(2 * (projective + p_itself))
}
