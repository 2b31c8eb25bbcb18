//! `N(B)` on the Fermat cubic surface by meet-in-the-middle on `a^3 + b^3`.

use rayon::prelude::*;

use super::vec4::{on_fermat_line, PrimVec4};
use super::{three_lines_count, CountMethod, CountReport};
use crate::arithmetic::gcd_all;

/// `N(B)`: primitive `x` with `x0^3 + x1^3 + x2^3 + x3^3 = 0`, off the three
/// rational lines, `max |x_i| <= B`, counting `x` and `-x` separately.
pub fn count_n(bound: u64) -> CountReport {
    let half = half_solutions(
        bound,
        |_| (),
        |parts| parts.iter().map(|v| v.len() as u64).sum::<u64>(),
    );
    CountReport {
        bound,
        count: 2 * half,
        excluded_on_lines: three_lines_count(bound),
        method: CountMethod::Direct,
        breakdown: Vec::new(),
    }
}

/// The points counted by [`count_n`], sorted.
pub fn fermat_points(bound: u64) -> Vec<PrimVec4> {
    let mut points = half_solutions(
        bound,
        |v| vec![v, v.neg()],
        |parts| parts.into_iter().flatten().flatten().collect::<Vec<_>>(),
    );
    points.sort_unstable();
    points
}

/// Visits each solution off the lines with `x0^3 + x1^3 > 0`; the others are
/// their negatives.
fn half_solutions<T: Send, R>(
    bound: u64,
    visit: impl Fn(PrimVec4) -> T + Sync,
    merge: impl FnOnce(Vec<Vec<T>>) -> R,
) -> R {
    let b = bound as i64;
    let mut table: Vec<(i64, i32, i32)> = (-b..=b)
        .into_par_iter()
        .flat_map_iter(|x| (-b..=b).map(move |y| (x * x * x + y * y * y, x as i32, y as i32)))
        .collect();
    table.par_sort_unstable();

    // Groups of equal key, as index ranges.
    let mut groups: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    for i in 1..=table.len() {
        if i == table.len() || table[i].0 != table[start].0 {
            groups.push((start, i));
            start = i;
        }
    }
    // A vector with key k < 0 is the negative of one with key -k > 0, and
    // key 0 forces x0 = -x1, x2 = -x3, which is a line.
    let positive: Vec<(usize, usize)> = groups
        .iter()
        .copied()
        .filter(|&(s, _)| table[s].0 > 0)
        .collect();
    let parts: Vec<Vec<T>> = positive
        .par_iter()
        .map(|&(s, e)| {
            let key = table[s].0;
            let lo = table.partition_point(|entry| entry.0 < -key);
            let mut found = Vec::new();
            for &(_, a, b) in &table[s..e] {
                for &(k2, c, d) in &table[lo..] {
                    if k2 != -key {
                        break;
                    }
                    let v = [a as i64, b as i64, c as i64, d as i64];
                    if gcd_all(&v) == 1 {
                        let p = PrimVec4::new(v).unwrap();
                        if !on_fermat_line(&p) {
                            found.push(visit(p));
                        }
                    }
                }
            }
            found
        })
        .collect();
    merge(parts)
}
