use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arithmetic::gcd_all;
use crate::error::{Error, Result};

/// A primitive integer 4-vector, i.e. a rational point of `P^3` with a sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimVec4([i64; 4]);

impl PrimVec4 {
    pub fn new(coords: [i64; 4]) -> Result<Self> {
        if gcd_all(&coords) != 1 {
            return Err(Error::InvalidArgument(format!(
                "{coords:?} is not primitive"
            )));
        }
        Ok(PrimVec4(coords))
    }

    /// Divides out the content of a nonzero vector.
    pub fn primitive_part(coords: [i64; 4]) -> Result<Self> {
        let g = gcd_all(&coords) as i64;
        if g == 0 {
            return Err(Error::InvalidArgument("zero vector".into()));
        }
        Ok(PrimVec4(coords.map(|c| c / g)))
    }

    pub fn coords(&self) -> [i64; 4] {
        self.0
    }

    pub fn neg(&self) -> Self {
        PrimVec4(self.0.map(|c| -c))
    }

    /// Supremum norm.
    pub fn height(&self) -> u64 {
        self.0.iter().map(|c| c.unsigned_abs()).max().unwrap()
    }
}

impl fmt::Display for PrimVec4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a},{b},{c},{d})")
    }
}

/// `x0^3 + x1^3 + x2^3 + x3^3`.
pub fn fermat_form(v: &[i64; 4]) -> i128 {
    v.iter().map(|&c| (c as i128).pow(3)).sum()
}

/// `x0 (x0^2 + 3 x1^2) - x2 (x2^2 + 3 x3^2)`.
pub fn x_form(v: &[i64; 4]) -> i128 {
    let g = |a: i64, b: i64| (a as i128) * ((a as i128).pow(2) + 3 * (b as i128).pow(2));
    g(v[0], v[1]) - g(v[2], v[3])
}

/// Whether `v` lies on one of the lines `x_0 + x_i = x_j + x_k = 0` of the
/// Fermat surface.
pub fn on_fermat_line(v: &PrimVec4) -> bool {
    let [a, b, c, d] = v.0;
    (a + b == 0 && c + d == 0) || (a + c == 0 && b + d == 0) || (a + d == 0 && b + c == 0)
}

/// Whether a point of `X` lies on one of its three lines, which together are
/// cut out by `x0 x2 (x2 - x0) = 0`.
pub fn on_x_line(v: &PrimVec4) -> bool {
    let [a, _, c, _] = v.0;
    a == 0 || c == 0 || a == c
}

/// The isomorphism `F -> X` induced by
/// `x^3 + y^3 = (x + y)((x + y)^2 + 3 (x - y)^2) / 4`.
pub fn fermat_to_x(v: &PrimVec4) -> PrimVec4 {
    let [a, b, c, d] = v.0;
    PrimVec4::primitive_part([a + b, a - b, -(c + d), c - d]).expect("image of a nonzero vector")
}

/// The two expressions for the fibration `X -> P^1`, `[x0 : x2]` and
/// `[x2^2 + 3 x3^2 : x0^2 + 3 x1^2]`, where defined.
pub fn fibration_images(v: &PrimVec4) -> (Option<(i64, i64)>, Option<(i128, i128)>) {
    let [a, b, c, d] = v.0;
    let first = (a != 0 || c != 0).then_some((a, c));
    let num = (c as i128).pow(2) + 3 * (d as i128).pow(2);
    let den = (a as i128).pow(2) + 3 * (b as i128).pow(2);
    let second = (num != 0 || den != 0).then_some((num, den));
    (first, second)
}
