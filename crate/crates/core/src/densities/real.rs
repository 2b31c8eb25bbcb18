//! The archimedean density
//! `sigma_inf = lim (1/2eps) vol{ |Q(x)| <= eps, ||x||_{s,t} <= 1 }`.
//!
//! Write `Q = alpha u^2 + beta w^2 - gamma r^2` with `alpha, beta, gamma > 0`
//! (up to an overall sign, which does not change `|Q|`). For fixed `r` the
//! slab is the elliptic annulus `gamma r^2 - eps <= alpha u^2 + beta w^2 <=
//! gamma r^2 + eps` clipped to the box, whose area is computed in closed form.
//! Only the `r` direction is integrated numerically, by the midpoint rule.

use serde::{Deserialize, Serialize};

use crate::conics::Fibre;
use crate::error::{Error, Result};

/// Slab half-widths used for the extrapolation to `eps -> 0`.
pub const EPSILONS: [f64; 2] = [1e-2, 1e-3];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArchimedeanDensity {
    /// Linear extrapolation of the two slab estimates to `eps = 0`.
    pub value: f64,
    /// Slab estimates at [`EPSILONS`].
    pub at_epsilon: [f64; 2],
    pub epsilon: [f64; 2],
    pub grid: usize,
}

/// Area of `{alpha u^2 + beta w^2 <= big_r, |u| <= u1, |w| <= w1}`.
fn clipped_ellipse_area(alpha: f64, beta: f64, u1: f64, w1: f64, big_r: f64) -> f64 {
    if big_r <= 0.0 {
        return 0.0;
    }
    let u_edge = (big_r / alpha).sqrt().min(u1);
    // Below u_star the ellipse is taller than the box.
    let u_star = if big_r > beta * w1 * w1 {
        ((big_r - beta * w1 * w1) / alpha).sqrt().min(u_edge)
    } else {
        0.0
    };
    let antiderivative = |u: f64| {
        let inner = (big_r - alpha * u * u).max(0.0);
        let arg = (u * (alpha / big_r).sqrt()).clamp(-1.0, 1.0);
        (0.5 * u * inner.sqrt() + big_r / (2.0 * alpha.sqrt()) * arg.asin()) / beta.sqrt()
    };
    // At the tip of the ellipse use asin(1) exactly: asin is not Lipschitz there.
    let upper = if big_r / alpha <= u1 * u1 {
        big_r / (2.0 * alpha.sqrt()) * std::f64::consts::FRAC_PI_2 / beta.sqrt()
    } else {
        antiderivative(u_edge)
    };
    4.0 * (w1 * u_star + upper - antiderivative(u_star))
}

/// `(1/2eps) vol{|Q| <= eps, ||x|| <= 1}` by slicing, with `grid` midpoint
/// cells on `0 <= r <= r1` (the integrand is even in `r`).
pub fn slab_density(f: &Fibre, epsilon: f64, grid: usize) -> Result<f64> {
    f.require_nonsingular()?;
    if !(epsilon > 0.0 && epsilon <= 0.5) || grid == 0 {
        return Err(Error::InvalidArgument(
            "need 0 < epsilon <= 1/2 and grid >= 1".into(),
        ));
    }
    let coeffs = f.coefficients().map(|c| c as f64);
    let half_sides = [1.0 / f.x_weight() as f64, 1.0, 1.0];
    let positive = coeffs.iter().filter(|&&c| c > 0.0).count();
    let odd = match positive {
        1 => coeffs.iter().position(|&c| c > 0.0).unwrap(),
        2 => coeffs.iter().position(|&c| c < 0.0).unwrap(),
        _ => return Ok(0.0),
    };
    let (i, j) = match odd {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let (alpha, beta, gamma) = (coeffs[i].abs(), coeffs[j].abs(), coeffs[odd].abs());
    let (u1, w1, r1) = (half_sides[i], half_sides[j], half_sides[odd]);
    let h = r1 / grid as f64;
    let slices: Vec<f64> = (0..grid)
        .map(|n| {
            let r = (n as f64 + 0.5) * h;
            let centre = gamma * r * r;
            clipped_ellipse_area(alpha, beta, u1, w1, centre + epsilon)
                - clipped_ellipse_area(alpha, beta, u1, w1, centre - epsilon)
        })
        .collect();
    let total: f64 = slices.iter().sum();
    Ok(2.0 * h * total / (2.0 * epsilon))
}

/// `sigma_inf(s, t)` extrapolated from the slab densities at [`EPSILONS`].
pub fn sigma_infinity(f: &Fibre, grid: usize) -> Result<ArchimedeanDensity> {
    let [e1, e2] = EPSILONS;
    let v1 = slab_density(f, e1, grid)?;
    let v2 = slab_density(f, e2, grid)?;
    let value = ((e1 * v2 - e2 * v1) / (e1 - e2)).max(0.0);
    Ok(ArchimedeanDensity {
        value,
        at_epsilon: [v1, v2],
        epsilon: EPSILONS,
        grid,
    })
}

/// Default midpoint grid used by the profile and the CLI.
pub const DEFAULT_GRID: usize = 20_000;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conics::fibre;

    /// Midpoint-rule volume of the slab on an `n^3` grid.
    fn grid_volume(f: &Fibre, eps: f64, n: usize) -> f64 {
        let c = f.coefficients().map(|c| c as f64);
        let sides = [1.0 / f.x_weight() as f64, 1.0, 1.0];
        let h = sides.map(|s| 2.0 * s / n as f64);
        let mut inside = 0u64;
        for a in 0..n {
            let x = -sides[0] + (a as f64 + 0.5) * h[0];
            for b in 0..n {
                let y = -sides[1] + (b as f64 + 0.5) * h[1];
                for d in 0..n {
                    let z = -sides[2] + (d as f64 + 0.5) * h[2];
                    if (c[0] * x * x + c[1] * y * y + c[2] * z * z).abs() <= eps {
                        inside += 1;
                    }
                }
            }
        }
        inside as f64 * h[0] * h[1] * h[2] / (2.0 * eps)
    }

    #[test]
    fn ellipse_area_limits() {
        let full = clipped_ellipse_area(2.0, 3.0, 10.0, 10.0, 6.0);
        assert!((full - std::f64::consts::PI * 6.0 / 6f64.sqrt()).abs() < 1e-12);
        assert!((clipped_ellipse_area(1.0, 1.0, 0.5, 0.25, 100.0) - 0.5).abs() < 1e-12);
        assert_eq!(clipped_ellipse_area(1.0, 1.0, 1.0, 1.0, -1.0), 0.0);
    }

    #[test]
    fn slab_matches_grid_count() {
        for (s, t) in [(1, 3), (3, 5), (2, 1)] {
            let f = fibre(s, t).unwrap();
            let sliced = slab_density(&f, 0.05, 4000).unwrap();
            let counted = grid_volume(&f, 0.05, 300);
            assert!(
                (sliced - counted).abs() < 0.02 * sliced,
                "({s},{t}) {sliced} vs {counted}"
            );
        }
    }

    #[test]
    fn grid_refinement_is_stable() {
        let f = fibre(3, 5).unwrap();
        let a = sigma_infinity(&f, 10_000).unwrap().value;
        let b = sigma_infinity(&f, 20_000).unwrap().value;
        assert!((a - b).abs() < 0.01 * b);
    }

    #[test]
    fn definite_fibre_has_zero_density() {
        // (-1, 1) has coefficients (2, 3, 3).
        let f = fibre(-1, 1).unwrap();
        assert_eq!(sigma_infinity(&f, 100).unwrap().value, 0.0);
    }
}
