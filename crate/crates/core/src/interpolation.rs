//! Weighted operator norms between ℓ² scales and the Stein–Thorin midpoint
//! inequality: when T is bounded ℓ² → ℓ² by M₀ and ℓ²_f → ℓ²_g by M₁, it is
//! bounded ℓ²_√f → ℓ²_√g by √(M₀M₁). Only the three levels that the
//! surrounding estimates use are exposed.

use crate::linalg;
use nalgebra::DMatrix;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InterpolationError {
    #[error("operator is {rows}x{cols} but weights have lengths {tgt} (target) and {src} (source)")]
    DimensionMismatch { rows: usize, cols: usize, tgt: usize, src: usize },
    #[error("weights must be strictly positive")]
    NonPositiveWeight,
}

/// Source weights f, target weights g, shared window length.
#[derive(Debug, Clone)]
pub struct WeightedNormContext {
    pub source: Vec<f64>,
    pub target: Vec<f64>,
}

impl WeightedNormContext {
    pub fn new(source: Vec<f64>, target: Vec<f64>) -> Result<Self, InterpolationError> {
        if source.iter().chain(&target).any(|&w| !(w > 0.0)) {
            return Err(InterpolationError::NonPositiveWeight);
        }
        Ok(WeightedNormContext { source, target })
    }

    /// Both spaces weighted by the same sequence.
    pub fn symmetric(weights: Vec<f64>) -> Result<Self, InterpolationError> {
        Self::new(weights.clone(), weights)
    }

    fn check(&self, t: &DMatrix<f64>) -> Result<(), InterpolationError> {
        if t.nrows() != self.target.len() || t.ncols() != self.source.len() {
            return Err(InterpolationError::DimensionMismatch {
                rows: t.nrows(),
                cols: t.ncols(),
                tgt: self.target.len(),
                src: self.source.len(),
            });
        }
        Ok(())
    }
}

/// The three scale levels the estimates use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Level {
    Zero,
    Half,
    One,
}

impl Level {
    pub fn exponent(self) -> f64 {
        match self {
            Level::Zero => 0.0,
            Level::Half => 0.5,
            Level::One => 1.0,
        }
    }
}

/// Operator norm of T: ℓ²_{f^r} → ℓ²_{g^r}, the largest singular value of
/// D_g^{r/2} T D_f^{-r/2}. Exact for diagonal T.
pub fn weighted_operator_norm(
    t: &DMatrix<f64>,
    ctx: &WeightedNormContext,
    level: Level,
) -> Result<f64, InterpolationError> {
    ctx.check(t)?;
    let r = level.exponent();
    Ok(linalg::weighted_norm(t, &ctx.target, r, &ctx.source, r))
}

#[derive(Debug, Clone, Serialize)]
pub struct SteinReport {
    pub m0: f64,
    pub m1: f64,
    pub m_half: f64,
    /// √(M₀M₁), the interpolation bound for the midpoint norm.
    pub bound: f64,
    /// Relative excess of the measured midpoint norm over the bound
    /// (negative when the inequality holds strictly).
    pub slack: f64,
    pub pass: bool,
}

const STEIN_REL_TOL: f64 = 1e-10;

/// Measure the three norms and check M_{1/2} ≤ √(M₀M₁).
pub fn stein_check(t: &DMatrix<f64>, ctx: &WeightedNormContext) -> Result<SteinReport, InterpolationError> {
    let m0 = weighted_operator_norm(t, ctx, Level::Zero)?;
    let m1 = weighted_operator_norm(t, ctx, Level::One)?;
    let m_half = weighted_operator_norm(t, ctx, Level::Half)?;
    let bound = (m0 * m1).sqrt();
    let slack = if bound > 0.0 { m_half / bound - 1.0 } else { m_half };
    Ok(SteinReport { m0, m1, m_half, bound, slack, pass: slack <= STEIN_REL_TOL })
}
