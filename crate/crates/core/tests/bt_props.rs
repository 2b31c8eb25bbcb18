use std::collections::HashSet;

use fermat_core::bt_bundle::*;
use fermat_core::counting::{count_n, fermat_form, PrimVec4};
use num_integer::Integer;

/// Every primitive Fermat solution with `|z| <= bound`, lines included, up
/// to sign.
fn fermat_solutions(bound: i64) -> Vec<PrimVec4> {
    let mut out = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                for d in -bound..=bound {
                    let v = [a, b, c, d];
                    if fermat_form(&v) == 0 && v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0) {
                        if let Ok(p) = PrimVec4::new(v) {
                            out.push(p);
                        }
                    }
                }
            }
        }
    }
    out
}

/// `y` up to sign, as a key for projective classes.
fn class(y: PrimVec4) -> [i64; 4] {
    let c = y.coords();
    if c.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        y.neg().coords()
    } else {
        c
    }
}

#[test]
fn transfer_is_sound_and_injective() {
    let solutions = fermat_solutions(12);
    for t in [[1, 1, 1, 2], [1, -1, 2, 3], [2, 3, 1, 1]] {
        let twist = TwistVector::new(t).unwrap();
        let big_t = twist.product();
        let mut images = HashSet::new();
        for z in &solutions {
            let (y, h) = transfer_point(&twist, z).unwrap();
            assert_eq!(twist.form(&y.coords()), 0, "{z}");
            assert!(h <= z.height() * big_t, "{z} -> {y}");
            assert!(images.insert(class(y)), "{z} collides");
        }
    }
}

#[test]
fn twisted_count_dominates_the_fermat_count() {
    let t = TwistVector::new([1, 1, 1, 2]).unwrap();
    for b in [24u64, 48] {
        let twisted = count_on_twist(&t, b, true).unwrap();
        assert!(twisted >= count_n(b / t.product()).count / 2, "B = {b}");
    }
}

fn icbrt(n: i128) -> Option<i64> {
    let r = (n.unsigned_abs() as f64).cbrt().round() as i128;
    (r - 1..=r + 1)
        .find(|&c| c * c * c == n.abs())
        .map(|c| if n < 0 { -c } else { c } as i64)
}

/// Primitive `y` with `|y| <= bound` and `sum x_i y_i^3 = 0`, by solving for
/// a coordinate with nonzero coefficient.
fn fibre_count(x: [i64; 4], bound: i64) -> u64 {
    let j = x.iter().position(|&c| c != 0).unwrap();
    let others: Vec<usize> = (0..4).filter(|&i| i != j).collect();
    let mut n = 0;
    for u in -bound..=bound {
        for v in -bound..=bound {
            for w in -bound..=bound {
                let mut y = [0i64; 4];
                y[others[0]] = u;
                y[others[1]] = v;
                y[others[2]] = w;
                let rest: i128 = others
                    .iter()
                    .map(|&i| x[i] as i128 * (y[i] as i128).pow(3))
                    .sum();
                if rest % x[j] as i128 != 0 {
                    continue;
                }
                if let Some(c) = icbrt(-rest / x[j] as i128) {
                    y[j] = c;
                    let g = y.iter().fold(0i64, |g, &c| g.gcd(&c));
                    if c.abs() <= bound && g == 1 {
                        n += 1;
                    }
                }
            }
        }
    }
    n
}

#[test]
fn bundle_count_is_a_sum_over_fibres() {
    let bound = 64;
    let by_x = count_bt_by_x(bound, false);
    for &(x, n) in &by_x {
        let h = x.iter().map(|c| c.unsigned_abs()).max().unwrap();
        assert_eq!(n, fibre_count(x, (bound / h.pow(3)) as i64), "x = {x:?}");
    }
    let total: u64 = by_x.iter().map(|e| e.1).sum();
    assert_eq!(total % 4, 0);
    assert_eq!(total / 4, count_bt(bound, false));
}

#[test]
fn bundle_count_small_values() {
    // At B = 1, x and y are sign vectors with sum x_i y_i = 0 (or zero
    // coordinates); the exhaustive oracle is the fibre count above.
    let mut pairs = 0;
    for a in -1i64..=1 {
        for b in -1i64..=1 {
            for c in -1i64..=1 {
                for d in -1i64..=1 {
                    let x = [a, b, c, d];
                    if x != [0; 4] {
                        pairs += fibre_count(x, 1);
                    }
                }
            }
        }
    }
    assert_eq!(count_bt(1, false), pairs / 4);
    assert!(count_bt(1, true) <= count_bt(1, false));
}
