use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Least-squares fit `count / B ~ c0 + c1 L + c2 L^2 + c3 L^3`, `L = log B`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogPowerFit {
    pub coefficients: [f64; 4],
    /// Root mean square of the residuals of `count / B`.
    pub rms_residual: f64,
}

/// Fits at least six samples `(B, count)` with strictly increasing `B > 1`.
pub fn fit_log_power(samples: &[(f64, f64)]) -> Result<LogPowerFit> {
    if samples.len() < 6 {
        return Err(Error::InvalidArgument(format!(
            "need at least 6 samples, got {}",
            samples.len()
        )));
    }
    if samples.windows(2).any(|w| w[1].0 <= w[0].0) || samples[0].0 <= 1.0 {
        return Err(Error::InvalidArgument(
            "bounds must be increasing and exceed 1".into(),
        ));
    }
    let n = samples.len();
    let design = DMatrix::from_fn(n, 4, |i, j| samples[i].0.ln().powi(j as i32));
    let target = DVector::from_fn(n, |i, _| samples[i].1 / samples[i].0);
    // Column scaling keeps the conditioning check meaningful.
    let scales: Vec<f64> = (0..4).map(|j| design.column(j).norm()).collect();
    let mut scaled = design.clone();
    for (j, s) in scales.iter().enumerate() {
        scaled.column_mut(j).scale_mut(1.0 / s);
    }
    let svd = scaled.svd(true, true);
    let sv = &svd.singular_values;
    let (max, min) = (sv.max(), sv.min());
    if !(min > 1e-12 * max) {
        return Err(Error::DegenerateDesign(format!(
            "singular values {max:e} .. {min:e}"
        )));
    }
    let solved = svd
        .solve(&target, 0.0)
        .map_err(|e| Error::DegenerateDesign(e.to_string()))?;
    let mut coefficients = [0.0; 4];
    for j in 0..4 {
        coefficients[j] = solved[j] / scales[j];
    }
    let fitted = &design * DVector::from_row_slice(&coefficients);
    let rms_residual = ((&target - fitted).norm_squared() / n as f64).sqrt();
    Ok(LogPowerFit {
        coefficients,
        rms_residual,
    })
}
