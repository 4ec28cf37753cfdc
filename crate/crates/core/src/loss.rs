//! Smooth convex loss functions: value, gradient in the prediction vector,
//! and per-column curvature bounds shared by the full and univariate solvers.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::data::TaskKind;
use crate::sparse::SparseColumn;

/// Loss kind. Squared loss is f(z, y) = 1/2 * sum (z_m - y_m)^2; logistic
/// loss is f(z, y) = sum ln(1 + exp(-y_m z_m)) over labels y_m in {-1, +1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Loss {
    Squared,
    Logistic,
}

#[derive(Debug, Error)]
pub enum LossError {
    #[error("prediction length {z} does not match response length {y}")]
    LengthMismatch { z: usize, y: usize },
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
}

impl Loss {
    /// Task kind this loss is valid for; enforced at solver entry.
    pub fn required_task(self) -> TaskKind {
        match self {
            Loss::Squared => TaskKind::Regression,
            Loss::Logistic => TaskKind::Classification,
        }
    }

    /// Loss value f(z, y). Stable for |y_m z_m| up to at least 1e4.
    pub fn value(self, z: &[f64], y: &[f64]) -> Result<f64, LossError> {
        check_inputs(z, y)?;
        Ok(self.value_raw(z, y))
    }

    /// Gradient of f with respect to z.
    pub fn gradient(self, z: &[f64], y: &[f64]) -> Result<Vec<f64>, LossError> {
        check_inputs(z, y)?;
        let mut out = vec![0.0; z.len()];
        self.gradient_into(z, y, &mut out);
        Ok(out)
    }

    /// Upper bound on the second derivative of t -> f(z + t*X_j, y), valid
    /// for every z. Exact for squared loss.
    pub fn curvature_bound(self, column: &SparseColumn) -> f64 {
        match self {
            Loss::Squared => column.norm_sq(),
            Loss::Logistic => column.norm_sq() / 4.0,
        }
    }

    pub(crate) fn value_raw(self, z: &[f64], y: &[f64]) -> f64 {
        match self {
            Loss::Squared => {
                let mut acc = 0.0;
                for (&zm, &ym) in z.iter().zip(y) {
                    let r = zm - ym;
                    acc += r * r;
                }
                0.5 * acc
            }
            Loss::Logistic => z
                .iter()
                .zip(y)
                .map(|(&zm, &ym)| softplus(-ym * zm))
                .sum(),
        }
    }

    pub(crate) fn gradient_into(self, z: &[f64], y: &[f64], out: &mut [f64]) {
        for ((&zm, &ym), o) in z.iter().zip(y).zip(out.iter_mut()) {
            *o = self.grad_component(zm, ym);
        }
    }

    /// Component m of the gradient: z_m - y_m (squared) or
    /// -y_m * sigmoid(-y_m z_m) (logistic), both overflow-free.
    pub(crate) fn grad_component(self, z_m: f64, y_m: f64) -> f64 {
        match self {
            Loss::Squared => z_m - y_m,
            Loss::Logistic => -y_m * sigmoid(-y_m * z_m),
        }
    }
}

impl std::fmt::Display for Loss {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Loss::Squared => write!(f, "squared"),
            Loss::Logistic => write!(f, "logistic"),
        }
    }
}

/// ln(1 + exp(u)) without overflow: max(u, 0) + ln(1 + exp(-|u|)).
fn softplus(u: f64) -> f64 {
    u.max(0.0) + (-u.abs()).exp().ln_1p()
}

/// 1 / (1 + exp(-t)) without overflow on either tail.
fn sigmoid(t: f64) -> f64 {
    if t >= 0.0 {
        1.0 / (1.0 + (-t).exp())
    } else {
        let e = t.exp();
        e / (1.0 + e)
    }
}

fn check_inputs(z: &[f64], y: &[f64]) -> Result<(), LossError> {
    if z.len() != y.len() {
        return Err(LossError::LengthMismatch {
            z: z.len(),
            y: y.len(),
        });
    }
    if z.iter().any(|v| !v.is_finite()) {
        return Err(LossError::NonFinite("predictions"));
    }
    if y.iter().any(|v| !v.is_finite()) {
        return Err(LossError::NonFinite("response"));
    }
    Ok(())
}
