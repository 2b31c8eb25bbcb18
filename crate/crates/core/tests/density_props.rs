use fermat_core::arithmetic::{is_prime, jacobi};
use fermat_core::conics::fibre;
use fermat_core::densities::*;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_unramified(rng: &mut ChaCha8Rng) -> (i64, i64, u64) {
    loop {
        let s: i64 = rng.gen_range(-40..=40);
        let t: i64 = rng.gen_range(1..=40);
        let p: u64 = rng.gen_range(5..50);
        if !is_prime(p) || s.gcd(&t) != 1 {
            continue;
        }
        let f = match fibre(s, t) {
            Ok(f) if !f.is_singular() => f,
            _ => continue,
        };
        if f.discriminant() % p as i128 != 0 {
            return (s, t, p);
        }
    }
}

#[test]
fn unramified_counts_are_constant_in_the_level() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let (s, t, p) = random_unramified(&mut rng);
        let f = fibre(s, t).unwrap();
        let scaled = |n: u32| {
            let count = count_primitive_zeros(&f, p, n).unwrap();
            BigRational::new(BigInt::from(count), BigInt::from(p).pow(2 * n))
        };
        let one = scaled(1);
        assert_eq!(
            one,
            BigRational::new(BigInt::from(p * p - 1), BigInt::from(p * p)),
            "({s},{t}) p={p}"
        );
        for n in 2..=3 {
            assert_eq!(scaled(n), one, "({s},{t}) p={p} n={n}");
        }
        let d = sigma_p(&f, p).unwrap();
        assert_eq!(d.value, one);
        assert!(d.stabilized_at <= 2);
    }
}

/// Zeros modulo `p^n` of `a1 x1^2 + a2 x2^2 + a3 x3^2` with `p` not dividing `x3`.
fn zeros_with_unit_x3(a: [i64; 3], p: i64, n: u32) -> u64 {
    let m = p.pow(n);
    let sq: Vec<i64> = (0..m).map(|x| x * x % m).collect();
    let mut count = 0;
    for x1 in 0..m as usize {
        for x2 in 0..m as usize {
            for x3 in 0..m as usize {
                if x3 as i64 % p != 0
                    && (a[0] * sq[x1] + a[1] * sq[x2] + a[2] * sq[x3]).rem_euclid(m) == 0
                {
                    count += 1;
                }
            }
        }
    }
    count
}

/// `(1 + (-a2 a3 / p)) (1 - 1/p) p^(2n)`, an integer.
fn hl0_bound(a2: i64, a3: i64, p: i64, n: u32) -> u128 {
    (1 + jacobi(-a2 * a3, p).unwrap() as i64) as u128 * (p as u128 - 1) * (p as u128).pow(2 * n - 1)
}

#[test]
fn lower_bound_for_one_divisible_coefficient() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let levels = [
        (3, 1),
        (3, 2),
        (3, 3),
        (5, 1),
        (5, 2),
        (5, 3),
        (7, 1),
        (7, 2),
    ];
    for i in 0..50 {
        let (p, n) = levels[i % levels.len()];
        let unit = |rng: &mut ChaCha8Rng| loop {
            let v: i64 = rng.gen_range(-30..=30);
            if v % p != 0 {
                return v;
            }
        };
        let a = [p * unit(&mut rng), unit(&mut rng), unit(&mut rng)];
        let count = zeros_with_unit_x3(a, p, n);
        let bound = hl0_bound(a[1], a[2], p, n);
        assert!(
            count as u128 >= bound,
            "{a:?} p={p} n={n}: {count} < {bound}"
        );
        // Modulo p the count is exactly (p - 1)(1 + (-a2 a3 / p)) p.
        if n == 1 {
            assert_eq!(count as u128, bound, "{a:?} p={p}");
        }
    }
}

#[test]
fn primitive_zero_counts_respect_the_lower_bound() {
    // p | s only: the coefficient -3s is the divisible one.
    for (s, t) in [(5, 2), (5, 7), (7, 3), (7, 4), (35, 2), (11, 6), (13, 5)] {
        let f = fibre(s, t).unwrap();
        let [a, _, c] = f.coefficients();
        for p in [5i64, 7, 11, 13] {
            if s % p != 0 || (a * c) % p as i128 == 0 {
                continue;
            }
            for n in 1..=3 {
                let count = count_primitive_zeros(&f, p as u64, n).unwrap();
                let bound = hl0_bound(a as i64, c as i64, p, n);
                assert!(count >= bound, "({s},{t}) p={p} n={n}");
            }
        }
    }
}

#[test]
fn real_density_bound_on_dyadic_boxes() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut sampled = 0;
    while sampled < 30 {
        let x = 1i64 << rng.gen_range(2..=6);
        let s = rng.gen_range(x / 4 + 1..=x / 2);
        let t = rng.gen_range(x / 2 + 1..=x);
        if s.gcd(&t) != 1 {
            continue;
        }
        let sigma = sigma_infinity(&fibre(s, t).unwrap(), DEFAULT_GRID)
            .unwrap()
            .value;
        assert!(
            sigma >= 1.0 / (8.0 * (t * t) as f64) - 1e-6,
            "({s},{t}): {sigma}"
        );
        sampled += 1;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn real_density_is_reflection_invariant(s in -30i64..=30, t in 1i64..=30) {
        prop_assume!(s.gcd(&t) == 1 && s != t && s != 0);
        let f = fibre(s, t).unwrap();
        let g = fibre(-s, -t).unwrap();
        let (a, b) = (sigma_infinity(&f, 4000).unwrap(), sigma_infinity(&g, 4000).unwrap());
        prop_assert!((a.value - b.value).abs() <= 1e-12 * a.value.max(1.0));
    }

    #[test]
    fn ramified_closed_form_matches_recursion(s in -25i64..=25, t in 1i64..=25) {
        prop_assume!(s.gcd(&t) == 1 && s != t && s != 0);
        let f = fibre(s, t).unwrap();
        for p in f.bad_primes().unwrap() {
            let walked = sigma_p_by_recursion(&f, p).unwrap();
            prop_assert!(walked.value >= BigRational::from_integer(0.into()));
            if let Some(closed) = sigma_p_closed_form(&f, p).unwrap() {
                prop_assert_eq!(closed.value, walked.value, "p = {}", p);
            }
        }
    }
}
