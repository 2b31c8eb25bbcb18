//! Exact point counts on the Fermat surface `F` and on the surface `X`.

mod fermat;
mod fit;
mod vec4;
mod xsurface;

use serde::{Deserialize, Serialize};

pub use fermat::{count_n, fermat_points};
pub use fit::{fit_log_power, LogPowerFit};
pub use vec4::{
    fermat_form, fermat_to_x, fibration_images, on_fermat_line, on_x_line, x_form, PrimVec4,
};
pub use xsurface::{
    count_nx_direct, count_nx_direct_with_passes, count_nx_fibration, count_x_axis_points,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMethod {
    Direct,
    Fibration,
}

/// Contribution of one fibre `Q_{s,t}` to `N_X(B)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibreCount {
    pub s: i64,
    pub t: i64,
    /// `M_{s,t}(B)`.
    pub m: u64,
    /// Zeros with `x = 0`; they map to the line `x0 = x2 = 0`.
    pub on_line: u64,
    /// `m - on_line`.
    pub count: u64,
}

/// A point count with its audit trail.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub bound: u64,
    /// Primitive vectors off the lines with sup norm at most `bound`, both
    /// signs counted.
    pub count: u64,
    /// Primitive vectors on the lines within the same box.
    pub excluded_on_lines: u64,
    pub method: CountMethod,
    /// Nonzero fibre contributions, `t > 0`, ordered by `(t, s)`; empty for
    /// direct counts.
    pub breakdown: Vec<FibreCount>,
}

/// `#{(a, c) in [-B, B]^2 : gcd(a, c) = 1}` by Moebius inversion.
pub(crate) fn primitive_pairs_in_box(bound: u64) -> u64 {
    let n = bound as usize;
    let mut mu = vec![1i64; n + 1];
    let mut is_composite = vec![false; n + 1];
    for p in 2..=n {
        if !is_composite[p] {
            for m in (p..=n).step_by(p) {
                if m > p {
                    is_composite[m] = true;
                }
                mu[m] = -mu[m];
            }
            let p2 = p.saturating_mul(p);
            for m in (p2..=n).step_by(p2.max(1)) {
                mu[m] = 0;
            }
        }
    }
    let mut total = 0i64;
    for d in 1..=n {
        let k = (2 * (n / d) + 1) as i64;
        total += mu[d] * (k * k - 1);
    }
    total as u64
}

/// Primitive vectors in the box on the union of three lines, each a
/// primitive lattice plane image of `(a, c)`, meeting pairwise in one
/// projective point and with empty triple intersection.
pub(crate) fn three_lines_count(bound: u64) -> u64 {
    3 * primitive_pairs_in_box(bound) - 6
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::gcd_all;

    #[test]
    fn primitive_pairs_match_enumeration() {
        for b in 1u64..=30 {
            let b_i = b as i64;
            let mut n = 0;
            for a in -b_i..=b_i {
                for c in -b_i..=b_i {
                    if gcd_all(&[a, c]) == 1 {
                        n += 1;
                    }
                }
            }
            assert_eq!(primitive_pairs_in_box(b), n, "B={b}");
        }
    }

    #[test]
    fn line_counts_match_enumeration() {
        for b in 1i64..=8 {
            let (mut nf, mut nx) = (0, 0);
            for a in -b..=b {
                for c in -b..=b {
                    for d in -b..=b {
                        for e in -b..=b {
                            let Ok(v) = PrimVec4::new([a, c, d, e]) else {
                                continue;
                            };
                            if fermat_form(&v.coords()) == 0 && on_fermat_line(&v) {
                                nf += 1;
                            }
                            if x_form(&v.coords()) == 0 && on_x_line(&v) {
                                nx += 1;
                            }
                        }
                    }
                }
            }
            assert_eq!(three_lines_count(b as u64), nf, "F, B={b}");
            assert_eq!(three_lines_count(b as u64), nx, "X, B={b}");
        }
    }
}
