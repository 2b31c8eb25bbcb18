use std::f64::consts::TAU;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::factor::factor_u64;

/// A real Kloosterman sum `S(a, b; c)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KloostermanValue {
    pub value: f64,
    pub a: i64,
    pub b: i64,
    pub c: u64,
}

/// Inverse of `x` modulo `m` when `gcd(x, m) = 1`.
pub fn mod_inverse(x: i64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let m_i = m as i128;
    let e = (x as i128).extended_gcd(&m_i);
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m_i) as u64)
}

/// `S(a, b; c) = sum over units x mod c of e((a x + b xbar) / c)`.
///
/// The modulus-one sum has the single unit `x = 0` and equals 1.
///
/// # Panics
/// If `c == 0`.
pub fn kloosterman(a: i64, b: i64, c: u64) -> KloostermanValue {
    assert!(c >= 1, "Kloosterman modulus must be positive");
    let ci = c as i128;
    let a_r = (a as i128).rem_euclid(ci);
    let b_r = (b as i128).rem_euclid(ci);
    let (mut re, mut im) = (0.0f64, 0.0f64);
    for x in 0..c {
        if x.gcd(&c) != 1 {
            continue;
        }
        let xbar = mod_inverse(x as i64, c).expect("unit has an inverse") as i128;
        let r = (a_r * x as i128 + b_r * xbar).rem_euclid(ci);
        let angle = TAU * (r as f64) / (c as f64);
        re += angle.cos();
        im += angle.sin();
    }
    debug_assert!(
        im.abs() <= 1e-9 * (c as f64).max(1.0),
        "imaginary residue {im}"
    );
    KloostermanValue { value: re, a, b, c }
}

/// Right-hand side of the Weil bound `tau(c) gcd(a, b, c)^{1/2} c^{1/2}`.
pub fn weil_bound(a: i64, b: i64, c: u64) -> f64 {
    let tau: u64 = factor_u64(c).iter().map(|&(_, e)| e as u64 + 1).product();
    let g = (a.unsigned_abs()).gcd(&b.unsigned_abs()).gcd(&c);
    tau as f64 * (g as f64).sqrt() * (c as f64).sqrt()
}
