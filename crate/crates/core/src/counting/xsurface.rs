//! `N_X(B)` directly and through the conic bundle.

use num_integer::Integer;
use rayon::prelude::*;

use super::{three_lines_count, CountMethod, CountReport, FibreCount};
use crate::conics::{count_m, fibre, is_isotropic, Fibre};
use crate::error::{Error, Result};

/// Entries kept per pass of the direct count.
const PASS_CAPACITY: u64 = 4_000_000;

#[inline]
fn bucket_of(value: u64, passes: u64) -> u64 {
    // Fibonacci hashing, then reduce to the pass index.
    (((value.wrapping_mul(0x9E37_79B9_7F4A_7C15) >> 32) * passes) >> 32) as u64
}

/// `N_X(B)` with the number of hash passes chosen from the bound.
pub fn count_nx_direct(bound: u64) -> Result<CountReport> {
    let entries = bound * (bound + 1);
    count_nx_direct_with_passes(bound, entries.div_ceil(PASS_CAPACITY).max(1))
}

/// `N_X(B)`: primitive `x` on `X` off its lines with `max |x_i| <= B`, both
/// signs counted.
///
/// A point off the lines has `x0, x2` nonzero with equal signs, so up to a
/// global sign `x0, x2 > 0`. Values `g(a, b) = a (a^2 + 3 b^2)` with
/// `1 <= a <= B`, `0 <= b <= B` are tabulated (weight 2 for `b > 0`,
/// accounting for `-b`) and equal values with different `a` are paired. The
/// table is split into `passes` hash classes of the value so that only one
/// class is resident at a time; the result does not depend on `passes`.
/// Coordinates are stored in 16 bits, so `B <= 65535`.
pub fn count_nx_direct_with_passes(bound: u64, passes: u64) -> Result<CountReport> {
    if bound > u16::MAX as u64 {
        return Err(Error::ResourceGuard(format!(
            "bound {bound} exceeds {}",
            u16::MAX
        )));
    }
    let passes = passes.max(1);
    let half: u64 = (0..passes)
        .map(|pass| {
            let mut table: Vec<(u64, u16, u16)> = (1..=bound)
                .into_par_iter()
                .flat_map_iter(|a| {
                    (0..=bound).filter_map(move |b| {
                        let v = a * (a * a + 3 * b * b);
                        (bucket_of(v, passes) == pass).then_some((v, a as u16, b as u16))
                    })
                })
                .collect();
            table.par_sort_unstable();
            let mut groups: Vec<&[(u64, u16, u16)]> = Vec::new();
            let mut start = 0;
            for i in 1..=table.len() {
                if i == table.len() || table[i].0 != table[start].0 {
                    if i - start > 1 {
                        groups.push(&table[start..i]);
                    }
                    start = i;
                }
            }
            groups
                .par_iter()
                .map(|g| {
                    let mut acc = 0u64;
                    for &(_, a1, b1) in g.iter() {
                        for &(_, a2, b2) in g.iter() {
                            if a1 == a2 {
                                continue;
                            }
                            let content = (a1 as u64)
                                .gcd(&(b1 as u64))
                                .gcd(&(a2 as u64))
                                .gcd(&(b2 as u64));
                            if content == 1 {
                                let w = |b: u16| if b > 0 { 2 } else { 1 };
                                acc += w(b1) * w(b2);
                            }
                        }
                    }
                    acc
                })
                .sum::<u64>()
        })
        .sum();
    Ok(CountReport {
        bound,
        count: 2 * half,
        excluded_on_lines: three_lines_count(bound),
        method: CountMethod::Direct,
        breakdown: Vec::new(),
    })
}

/// Zeros of `Q_{s,t}` with `x = 0` and `max(|y|, |z|) <= B`, both signs.
pub fn count_x_axis_points(f: &Fibre, bound: u64) -> u64 {
    let [_, b, c] = f.coefficients();
    let mut n = 0;
    for y in 0..=bound as i128 {
        let rest = -b * y * y;
        if rest % c != 0 || rest / c < 0 {
            continue;
        }
        let z2 = rest / c;
        let z = z2.isqrt();
        if z * z == z2 && z <= bound as i128 && y.gcd(&z) == 1 {
            n += if y != 0 && z != 0 { 4 } else { 2 };
        }
    }
    n
}

/// `N_X(B)` as a sum of fibre counts.
///
/// A point off the lines determines `x = gcd(x0, x2)` up to sign and
/// `[s : t] = [x0 : x2]`; taking `t > 0` fixes the sign, so each point lies
/// over exactly one primitive `(s, t)` with `t > 0` and `|s|, |t| <= B`, and
/// corresponds to the zero `(x, x1, x3)` of `Q_{s,t}` with `x != 0`.
pub fn count_nx_fibration(bound: u64) -> Result<CountReport> {
    let b = bound as i64;
    let pairs: Vec<(i64, i64)> = (1..=b)
        .flat_map(|t| (-b..=b).map(move |s| (s, t)))
        .filter(|&(s, t)| s.gcd(&t) == 1 && s != 0 && s != t)
        .collect();
    let per_fibre: Vec<Option<FibreCount>> = pairs
        .par_iter()
        .map(|&(s, t)| -> Result<Option<FibreCount>> {
            let f = fibre(s, t)?;
            if !is_isotropic(&f)? {
                return Ok(None);
            }
            let m = count_m(&f, bound)?;
            let on_line = count_x_axis_points(&f, bound);
            Ok((m > 0).then_some(FibreCount {
                s,
                t,
                m,
                on_line,
                count: m - on_line,
            }))
        })
        .collect::<Result<_>>()?;
    let breakdown: Vec<FibreCount> = per_fibre
        .into_iter()
        .flatten()
        .filter(|c| c.count > 0)
        .collect();
    Ok(CountReport {
        bound,
        count: breakdown.iter().map(|c| c.count).sum(),
        excluded_on_lines: three_lines_count(bound),
        method: CountMethod::Fibration,
        breakdown,
    })
}
