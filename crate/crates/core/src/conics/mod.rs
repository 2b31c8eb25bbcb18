//! The conic bundle on `X: x0(x0^2 + 3 x1^2) = x2(x2^2 + 3 x3^2)`.
//!
//! The fibre over `[s:t]` is the diagonal conic
//! `Q_{s,t}: (t^3 - s^3) x^2 - 3s y^2 + 3t z^2 = 0`
//! with discriminant `-9 (t^3 - s^3) s t`.

mod local;
mod points;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arithmetic::{factorize_i128, FactoredInteger};
use crate::error::{Error, Result};

pub use local::{
    hilbert_symbol, is_isotropic, is_locally_soluble, local_places, solubility_by_residue_search,
    Place,
};
pub use points::{count_m, count_m_parametric, find_point, ConicPoint};

/// A fibre `Q_{s,t}` of the conic bundle, `gcd(s, t) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fibre {
    s: i64,
    t: i64,
    coefficients: [i128; 3],
    discriminant: i128,
}

/// Builds the fibre over `[s:t]`.
pub fn fibre(s: i64, t: i64) -> Result<Fibre> {
    if s.gcd(&t) != 1 {
        return Err(Error::NotCoprime { s, t });
    }
    let (s_w, t_w) = (s as i128, t as i128);
    let a = t_w * t_w * t_w - s_w * s_w * s_w;
    let b = -3 * s_w;
    let c = 3 * t_w;
    Ok(Fibre {
        s,
        t,
        coefficients: [a, b, c],
        discriminant: -9 * a * s_w * t_w,
    })
}

impl Fibre {
    pub fn s(&self) -> i64 {
        self.s
    }

    pub fn t(&self) -> i64 {
        self.t
    }

    /// `(t^3 - s^3, -3s, 3t)`.
    pub fn coefficients(&self) -> [i128; 3] {
        self.coefficients
    }

    pub fn discriminant(&self) -> i128 {
        self.discriminant
    }

    pub fn is_singular(&self) -> bool {
        self.discriminant == 0
    }

    pub(crate) fn require_nonsingular(&self) -> Result<()> {
        if self.is_singular() {
            Err(Error::SingularFibre {
                s: self.s,
                t: self.t,
            })
        } else {
            Ok(())
        }
    }

    /// Value of the quadratic form.
    pub fn eval(&self, x: i128, y: i128, z: i128) -> i128 {
        let [a, b, c] = self.coefficients;
        a * x * x + b * y * y + c * z * z
    }

    pub fn norm(&self) -> FibreNorm {
        FibreNorm {
            s: self.s,
            t: self.t,
        }
    }

    /// `max(|s|, |t|)`, the weight of the `x` coordinate in the fibre norm.
    pub fn x_weight(&self) -> u64 {
        self.s.unsigned_abs().max(self.t.unsigned_abs())
    }

    /// Factorization of `|discriminant|`. Errors on singular fibres.
    pub fn discriminant_factors(&self) -> Result<FactoredInteger> {
        self.require_nonsingular()?;
        let [a, _, _] = self.coefficients;
        let parts = [
            factorize_i128(9)?,
            factorize_i128(a)?,
            factorize_i128(self.s as i128)?,
            factorize_i128(self.t as i128)?,
        ];
        Ok(parts
            .iter()
            .skip(1)
            .fold(parts[0].clone(), |acc, f| acc.mul(f))
            .abs())
    }

    /// Distinct primes dividing `2 * discriminant`.
    pub fn bad_primes(&self) -> Result<Vec<u64>> {
        let mut primes: Vec<u64> = self.discriminant_factors()?.primes().collect();
        if !primes.contains(&2) {
            primes.insert(0, 2);
        }
        Ok(primes)
    }
}

/// The norm `max(|x s|, |x t|, |y|, |z|)` attached to a fibre.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibreNorm {
    s: i64,
    t: i64,
}

impl FibreNorm {
    pub fn eval(&self, x: i128, y: i128, z: i128) -> u128 {
        let w = self.s.unsigned_abs().max(self.t.unsigned_abs()) as u128;
        (x.unsigned_abs() * w)
            .max(y.unsigned_abs())
            .max(z.unsigned_abs())
    }

    /// Real-valued version used by the archimedean density.
    pub fn eval_f64(&self, x: f64, y: f64, z: f64) -> f64 {
        let w = self.s.unsigned_abs().max(self.t.unsigned_abs()) as f64;
        (x.abs() * w).max(y.abs()).max(z.abs())
    }
}
