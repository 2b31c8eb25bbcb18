//! The cubic bundle `Y: sum x_i y_i^3 = 0` in `P^3 x P^3`, its height
//! `|x|^3 |y|`, and the diagonal twists `Y_t: sum t_i^3 y_i^3 = 0`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arithmetic::gcd_all;
use crate::counting::{fermat_form, on_fermat_line, PrimVec4};
use crate::error::{Error, Result};

/// `sum x_i y_i^3`.
pub fn bundle_form(x: &[i64; 4], y: &[i64; 4]) -> i128 {
    x.iter()
        .zip(y)
        .map(|(&a, &b)| a as i128 * (b as i128).pow(3))
        .sum()
}

/// A point of `Y` given by primitive representatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BiPoint {
    x: PrimVec4,
    y: PrimVec4,
}

impl BiPoint {
    pub fn new(x: PrimVec4, y: PrimVec4) -> Result<Self> {
        if bundle_form(&x.coords(), &y.coords()) != 0 {
            return Err(Error::InvalidArgument(format!(
                "({x}, {y}) is not on the bundle"
            )));
        }
        Ok(BiPoint { x, y })
    }

    pub fn x(&self) -> PrimVec4 {
        self.x
    }

    pub fn y(&self) -> PrimVec4 {
        self.y
    }

    /// `|x|^3 |y|` with supremum norms.
    pub fn height(&self) -> u128 {
        (self.x.height() as u128).pow(3) * self.y.height() as u128
    }
}

/// The height of `([x], [y])`, failing when the pair is not on `Y`.
pub fn height(x: PrimVec4, y: PrimVec4) -> Result<u128> {
    Ok(BiPoint::new(x, y)?.height())
}

/// Nonzero coefficients `t` and `T = |t0 t1 t2 t3|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwistVector {
    t: PrimVec4,
}

impl TwistVector {
    pub fn new(t: [i64; 4]) -> Result<Self> {
        if t.contains(&0) {
            return Err(Error::InvalidArgument(format!(
                "twist {t:?} has a zero coordinate"
            )));
        }
        Ok(TwistVector {
            t: PrimVec4::new(t)?,
        })
    }

    pub fn coords(&self) -> [i64; 4] {
        self.t.coords()
    }

    pub fn product(&self) -> u64 {
        self.t.coords().iter().map(|c| c.unsigned_abs()).product()
    }

    /// `sum t_i^3 y_i^3`.
    pub fn form(&self, y: &[i64; 4]) -> i128 {
        let t = self.t.coords();
        (0..4).map(|i| (t[i] as i128 * y[i] as i128).pow(3)).sum()
    }
}

/// Primitive `y` with `|y| <= bound` and `sum c_i y_i^3 = 0` that pass
/// `keep`, found by matching `c0 y0^3 + c1 y1^3` against
/// `-(c2 y2^3 + c3 y3^3)`. Both signs are counted.
fn count_diagonal_zeros(c: [i128; 4], bound: u64, keep: impl Fn(&[i64; 4]) -> bool + Sync) -> u64 {
    let b = bound as i64;
    let cube = |v: i64| (v as i128).pow(3);
    let mut left: Vec<(i128, i64, i64)> = (-b..=b)
        .flat_map(|u| (-b..=b).map(move |v| (c[0] * cube(u) + c[1] * cube(v), u, v)))
        .collect();
    left.sort_unstable();
    (-b..=b)
        .into_par_iter()
        .map(|w| {
            let mut acc = 0u64;
            for z in -b..=b {
                let key = -(c[2] * cube(w) + c[3] * cube(z));
                let lo = left.partition_point(|e| e.0 < key);
                for &(k, u, v) in &left[lo..] {
                    if k != key {
                        break;
                    }
                    let y = [u, v, w, z];
                    if gcd_all(&y) == 1 && keep(&y) {
                        acc += 1;
                    }
                }
            }
            acc
        })
        .sum()
}

/// Primitive `x` with `|x| <= bound`, both signs.
fn primitive_vectors(bound: u64) -> Vec<[i64; 4]> {
    let b = bound as i64;
    let mut out = Vec::new();
    for a in -b..=b {
        for c in -b..=b {
            for d in -b..=b {
                for e in -b..=b {
                    let v = [a, c, d, e];
                    if gcd_all(&v) == 1 {
                        out.push(v);
                    }
                }
            }
        }
    }
    out
}

/// Points of `Y` of height at most `bound`: a quarter of the number of
/// primitive vector pairs `(x, y)` on `Y` with `|x|^3 |y| <= bound`. With
/// `exclude_zero_y` the fibres over `y` with a zero coordinate are removed.
pub fn count_bt(bound: u64, exclude_zero_y: bool) -> u64 {
    count_bt_by_x(bound, exclude_zero_y)
        .iter()
        .map(|&(_, n)| n)
        .sum::<u64>()
        / 4
}

/// Vector-pair counts grouped by `x` (both signs of `x` listed).
pub fn count_bt_by_x(bound: u64, exclude_zero_y: bool) -> Vec<([i64; 4], u64)> {
    let xmax = (1..)
        .take_while(|&h: &u64| h.pow(3) <= bound)
        .last()
        .unwrap_or(0);
    primitive_vectors(xmax)
        .into_iter()
        .map(|x| {
            let h = x.iter().map(|c| c.unsigned_abs()).max().unwrap();
            let ybound = bound / h.pow(3);
            let n = count_diagonal_zeros(x.map(|c| c as i128), ybound, |y| {
                !exclude_zero_y || !y.contains(&0)
            });
            (x, n)
        })
        .collect()
}

/// The point `[z_i / t_i]` of `Y_t`, as the primitive part of
/// `(z_i prod_{j != i} t_j)`, with its height.
pub fn transfer_point(t: &TwistVector, z: &PrimVec4) -> Result<(PrimVec4, u64)> {
    let zc = z.coords();
    if fermat_form(&zc) != 0 {
        return Err(Error::InvalidArgument(format!(
            "{z} is not on the Fermat surface"
        )));
    }
    let tc = t.coords();
    let mut y = [0i64; 4];
    for i in 0..4 {
        let others: i64 = (0..4).filter(|&j| j != i).map(|j| tc[j]).product();
        y[i] = zc[i] * others;
    }
    let y = PrimVec4::primitive_part(y)?;
    Ok((y, y.height()))
}

/// Projective points of `Y_t` with `|y| <= bound`; with `exclude_lines`,
/// points whose image `(t_i y_i)` on the Fermat surface lies on one of its
/// rational lines are removed.
pub fn count_on_twist(t: &TwistVector, bound: u64, exclude_lines: bool) -> Result<u64> {
    if bound == 0 {
        return Err(Error::InvalidArgument("bound must be positive".into()));
    }
    let tc = t.coords();
    let coefficients = tc.map(|c| (c as i128).pow(3));
    let vectors = count_diagonal_zeros(coefficients, bound, |y| {
        if !exclude_lines {
            return true;
        }
        let z = PrimVec4::primitive_part([0, 1, 2, 3].map(|i| tc[i] * y[i])).expect("nonzero");
        !on_fermat_line(&z)
    });
    Ok(vectors / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::count_n;

    fn pv(c: [i64; 4]) -> PrimVec4 {
        PrimVec4::new(c).unwrap()
    }

    #[test]
    fn heights() {
        assert_eq!(height(pv([1, 1, 1, 1]), pv([3, 4, 5, -6])).unwrap(), 6);
        assert_eq!(height(pv([1, -1, 0, 0]), pv([1, 1, 1, 1])).unwrap(), 1);
        assert_eq!(height(pv([1, 1, -2, 0]), pv([1, 1, 1, 0])).unwrap(), 8);
        assert!(height(pv([1, 1, 1, 1]), pv([1, 1, 1, 1])).is_err());
    }

    #[test]
    fn transfer_examples() {
        let z = pv([3, 4, 5, -6]);
        let (y, h) = transfer_point(&TwistVector::new([1, 1, 1, 1]).unwrap(), &z).unwrap();
        assert_eq!((y, h), (z, 6));
        let t = TwistVector::new([1, 1, 1, 2]).unwrap();
        let (y, h) = transfer_point(&t, &z).unwrap();
        assert_eq!((y.coords(), h), ([3, 4, 5, -3], 5));
        assert_eq!(t.form(&y.coords()), 0);
        assert_eq!(t.product(), 2);
    }

    #[test]
    fn twist_rejects_zero() {
        assert!(TwistVector::new([1, 0, 1, 1]).is_err());
    }

    #[test]
    fn identity_twist_is_the_fermat_count() {
        let t = TwistVector::new([1, 1, 1, 1]).unwrap();
        for b in [6, 12] {
            assert_eq!(count_on_twist(&t, b, true).unwrap(), count_n(b).count / 2);
        }
    }

    fn brute_bt(bound: u64) -> u64 {
        let mut n = 0;
        for x in primitive_vectors(1) {
            let yb = bound as i64;
            for y in primitive_vectors(yb as u64) {
                if bundle_form(&x, &y) == 0 {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn count_bt_small() {
        // Below 8 only |x| = 1 contributes.
        for b in [1, 3, 7] {
            let by_x: u64 = count_bt_by_x(b, false).iter().map(|e| e.1).sum();
            assert_eq!(by_x, brute_bt(b));
            assert_eq!(by_x % 4, 0);
        }
        let mut last = 0;
        for b in [1, 2, 4, 8, 9, 16] {
            let n = count_bt(b, false);
            assert!(n >= last);
            assert!(count_bt(b, true) <= n);
            last = n;
        }
    }
}
