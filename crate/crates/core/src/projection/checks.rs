//! Quantitative norm-bound checks for the contour projections: the α-part
//! estimate, the per-block π/2 Hadamard bounds, the assembled derivative
//! bound, local continuity of the projections with the explicit constant,
//! and the restricted-projection isomorphism estimates.

use super::contour::{Contour, ContourSign, QuadratureConfig, SegmentFilter};
use super::{
    beta_block_hadamard, contour_projection, pair_kernel_matrix, projection_derivative_eigen,
    require_invertible, require_same_dim, require_symmetric, ProjectionError,
};
use crate::hessian::WeakHessian;
use crate::interpolation::{stein_check, WeightedNormContext};
use crate::linalg;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

/// (2σ+1)/(πσ²), the α-part bound at level 1/2.
pub fn alpha_bound_constant(sigma: f64) -> f64 {
    (2.0 * sigma + 1.0) / (PI * sigma * sigma)
}

/// π + (4σ+2)/(πσ²), the full derivative bound at level 1/2.
pub fn dpi_bound_constant(sigma: f64) -> f64 {
    PI + (4.0 * sigma + 2.0) / (PI * sigma * sigma)
}

/// Stein-style check of the integrand at a single quadrature node.
#[derive(Debug, Clone, Serialize)]
pub struct PointwiseIntegrandCheck {
    pub zeta: (f64, f64),
    pub m0: f64,
    pub m1: f64,
    pub m_half: f64,
    /// (1/σ)·‖Δ‖, the bound all three levels must respect.
    pub bound: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AlphaBoundReport {
    pub sigma: f64,
    pub delta_norm_h1_h0: f64,
    /// Level-1/2 norm of the α-part of the derivative.
    pub measured: f64,
    /// (2σ+1)/(πσ²) · ‖Δ‖.
    pub bound: f64,
    pub slack: f64,
    pub pass: bool,
    /// Worst pointwise integrand check over the sampled α nodes.
    pub worst_pointwise: PointwiseIntegrandCheck,
    pub norm_convention: &'static str,
}

const REL_SLACK: f64 = 1e-6;

/// Check the α±-part estimate: the level-1/2 norm of T_A^{α±}Δ is at most
/// (2σ+1)/(πσ²)·‖Δ‖_{H₁→H₀}, and the integrand obeys the three-level
/// (1/σ)-bound at the quadrature nodes, with the midpoint level checked
/// through the interpolation inequality.
pub fn alpha_bound_check(
    a: &WeakHessian,
    delta: &DMatrix<f64>,
    sign: ContourSign,
    quad: &QuadratureConfig,
) -> Result<AlphaBoundReport, ProjectionError> {
    let sigma = require_invertible(a)?;
    require_symmetric(delta)?;
    require_same_dim(a, delta)?;
    quad.validate()?;
    let contour = Contour::for_hessian(a, sign)?;
    let (q, _) = pair_kernel_matrix(a.eigenvalues(), &contour, SegmentFilter::AlphaOnly, quad)?;
    let d = a.to_eigenbasis(delta);
    let t_alpha =
        DMatrix::from_fn(a.dim(), a.dim(), |i, j| q[(i, j)].re * d[(i, j)]);
    let w: Vec<f64> = a.eigenvalues().iter().map(|e| e * e).collect();
    let measured = linalg::weighted_norm(&t_alpha, &w, 0.5, &w, 0.5);
    let delta_norm = a.anorm_operator_norm(delta, 0.0, 1.0)?;
    let bound = alpha_bound_constant(sigma) * delta_norm;
    let slack = if bound > 0.0 { measured / bound - 1.0 } else { measured };

    // Pointwise integrand checks on a subsample of α nodes.
    let nodes = contour.nodes(SegmentFilter::AlphaOnly, 1, quad);
    let stride = (nodes.len() / 24).max(1);
    let mut worst: Option<PointwiseIntegrandCheck> = None;
    let point_bound = delta_norm / sigma;
    for (z, _) in nodes.iter().step_by(stride) {
        let check = integrand_levels(a.eigenvalues(), &d, *z, point_bound);
        let is_worse = worst.as_ref().is_none_or(|w| {
            check.m_half / check.bound.max(1e-300) > w.m_half / w.bound.max(1e-300)
        });
        if is_worse {
            worst = Some(check);
        }
    }
    let worst_pointwise = worst.expect("alpha segment has at least one node");

    let pass = slack <= REL_SLACK && worst_pointwise.pass;
    Ok(AlphaBoundReport {
        sigma,
        delta_norm_h1_h0: delta_norm,
        measured,
        bound,
        slack,
        pass,
        worst_pointwise,
        norm_convention: "A-norm scale on the eigenbasis; H_r weighted by |a|^{2r}",
    })
}

/// Measure the integrand (Id−ζA)⁻¹Δ(Id−ζA)⁻¹ at levels {0, 1/2, 1} via the
/// real embedding, with the midpoint handled by the Stein check so the two
/// endpoint norms certify it.
fn integrand_levels(
    eigs: &[f64],
    d_eigen: &DMatrix<f64>,
    zeta: Complex64,
    bound: f64,
) -> PointwiseIntegrandCheck {
    let n = eigs.len();
    let one = Complex64::new(1.0, 0.0);
    let u: Vec<Complex64> = eigs.iter().map(|&e| one / (one - zeta * e)).collect();
    let integrand =
        DMatrix::from_fn(n, n, |i, j| u[i] * d_eigen[(i, j)] * u[j]);
    let emb = complex_embed(&integrand);
    let mut w: Vec<f64> = eigs.iter().map(|e| e * e).collect();
    w.extend(w.clone());
    let ctx = WeightedNormContext::symmetric(w).expect("positive weights");
    let stein = stein_check(&emb, &ctx).expect("dimensions match");
    let tol = bound * REL_SLACK;
    let pass = stein.pass
        && stein.m0 <= bound + tol
        && stein.m1 <= bound + tol
        && stein.m_half <= bound + tol;
    PointwiseIntegrandCheck {
        zeta: (zeta.re, zeta.im),
        m0: stein.m0,
        m1: stein.m1,
        m_half: stein.m_half,
        bound,
        pass,
    }
}

/// [[Re, -Im], [Im, Re]] embedding; same singular values as the complex
/// matrix (doubled), and diagonal weights act block-wise.
fn complex_embed(m: &DMatrix<Complex64>) -> DMatrix<f64> {
    let (r, c) = m.shape();
    let mut emb = DMatrix::<f64>::zeros(2 * r, 2 * c);
    for i in 0..r {
        for j in 0..c {
            let z = m[(i, j)];
            emb[(i, j)] = z.re;
            emb[(i, j + c)] = -z.im;
            emb[(i + r, j)] = z.im;
            emb[(i + r, j + c)] = z.re;
        }
    }
    emb
}

#[derive(Debug, Clone, Serialize)]
pub struct DpiBoundReport {
    pub sigma: f64,
    pub delta_norm_h1_h0: f64,
    /// Level-1/2 norm of the full derivative dΠ₊(A)Δ.
    pub total_measured: f64,
    /// (π + (4σ+2)/(πσ²)) · ‖Δ‖.
    pub total_bound: f64,
    /// Level-1/2 norms of the −+ and +− blocks of the β (Hadamard) part.
    pub beta_block_measured: [f64; 2],
    /// (π/2) · ‖Δ‖ per off-diagonal block.
    pub beta_block_bound: f64,
    /// Largest level-1/2 norm of the two diagonal blocks of dΠ₊ (vanishing
    /// up to quadrature).
    pub diagonal_block_residue: f64,
    pub pass: bool,
}

/// Check the assembled derivative bound at level 1/2 together with the
/// per-block π/2 estimates for the β part and the vanishing of the
/// diagonal blocks.
pub fn dpi_half_bound_check(
    a: &WeakHessian,
    delta: &DMatrix<f64>,
    quad: &QuadratureConfig,
) -> Result<DpiBoundReport, ProjectionError> {
    let sigma = require_invertible(a)?;
    require_symmetric(delta)?;
    require_same_dim(a, delta)?;
    let (dpi_eigen, _) = projection_derivative_eigen(a, delta, ContourSign::Plus, quad)?;
    let w: Vec<f64> = a.eigenvalues().iter().map(|e| e * e).collect();
    let total_measured = linalg::weighted_norm(&dpi_eigen, &w, 0.5, &w, 0.5);
    let delta_norm = a.anorm_operator_norm(delta, 0.0, 1.0)?;
    let total_bound = dpi_bound_constant(sigma) * delta_norm;

    let nm = a.eigenvalues().iter().filter(|&&e| e < 0.0).count();
    let np = a.dim() - nm;
    let (wneg, wpos) = w.split_at(nm);

    let beta = beta_block_hadamard(a, delta)?;
    let b_mp = beta.view((nm, 0), (np, nm)).into_owned();
    let b_pm = beta.view((0, nm), (nm, np)).into_owned();
    let beta_block_measured = [
        linalg::weighted_norm(&b_mp, wpos, 0.5, wneg, 0.5),
        linalg::weighted_norm(&b_pm, wneg, 0.5, wpos, 0.5),
    ];
    let beta_block_bound = 0.5 * PI * delta_norm;

    let d_pp = dpi_eigen.view((nm, nm), (np, np)).into_owned();
    let d_mm = dpi_eigen.view((0, 0), (nm, nm)).into_owned();
    let diagonal_block_residue = linalg::weighted_norm(&d_pp, wpos, 0.5, wpos, 0.5)
        .max(linalg::weighted_norm(&d_mm, wneg, 0.5, wneg, 0.5));

    let tol = delta_norm * REL_SLACK;
    let pass = total_measured <= total_bound * (1.0 + REL_SLACK)
        && beta_block_measured.iter().all(|&m| m <= beta_block_bound * (1.0 + REL_SLACK))
        && diagonal_block_residue <= quad.tol.max(1e-8) * (1.0 + delta_norm) + tol;
    Ok(DpiBoundReport {
        sigma,
        delta_norm_h1_h0: delta_norm,
        total_measured,
        total_bound,
        beta_block_measured,
        beta_block_bound,
        diagonal_block_residue,
        pass,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ContinuityReport {
    /// Certified uniform gap along the segment from A to B.
    pub sigma_uniform: f64,
    /// ‖Π₊(B) − Π₊(A)‖ at level 1/2 and the matching bound
    /// C(σ₀)·‖B−A‖_{H₁→H₀}.
    pub half_measured: f64,
    pub half_bound: f64,
    /// Level 3/2 with the scale-shifted right-hand side C(σ₀)·‖B−A‖_{H₂→H₁}
    /// (the level-1/2 statement transported by the shift isometry).
    pub threehalf_measured: f64,
    pub threehalf_bound: f64,
    pub delta_norm_h1_h0: f64,
    pub delta_norm_h2_h1: f64,
    pub pass: bool,
    pub norm_convention: &'static str,
}

/// Continuity of Π₊ with the explicit constant: the projections of A and B
/// differ at level 1/2 by at most (π + (4σ₀+2)/(πσ₀²)) times the H₁→H₀
/// norm of B−A, provided the whole segment keeps a uniform spectral gap.
/// The level-3/2 statement is the same bound transported one level up the
/// scale, where the perturbation is measured H₂→H₁.
pub fn projection_continuity_check(
    a: &WeakHessian,
    b: &WeakHessian,
    quad: &QuadratureConfig,
) -> Result<ContinuityReport, ProjectionError> {
    require_invertible(a)?;
    require_invertible(b)?;
    if a.dim() != b.dim() {
        return Err(ProjectionError::DimensionMismatch(format!(
            "A has dimension {}, B has {}",
            a.dim(),
            b.dim()
        )));
    }
    let ma = a.matrix();
    let mb = b.matrix();
    let delta = &mb - &ma;

    // Eigenvalue sweep along the segment with a Lipschitz certificate:
    // eigenvalues move at most ‖Δ‖₂·dt between grid points.
    let grid = 24;
    let delta_spectral = linalg::spectral_norm(&delta);
    let mut grid_min = f64::INFINITY;
    let mut argmin_t = 0.0;
    let mut crossing_eig = 0.0;
    for k in 0..=grid {
        let t = k as f64 / grid as f64;
        let m = &ma + &delta * t;
        let (vals, _) = linalg::sym_eigen_ascending(&m);
        for &v in &vals {
            if v.abs() < grid_min {
                grid_min = v.abs();
                argmin_t = t;
                crossing_eig = v;
            }
        }
    }
    let sigma_uniform = grid_min - delta_spectral / (2.0 * grid as f64);
    if sigma_uniform <= 0.0 {
        return Err(ProjectionError::GapViolation {
            t: argmin_t,
            gap: grid_min,
            eigenvalue: crossing_eig,
        });
    }

    let (pa, _) = contour_projection(a, ContourSign::Plus, quad)?;
    let (pb, _) = contour_projection(b, ContourSign::Plus, quad)?;
    let diff = &pb - &pa;
    let half_measured = a.anorm_operator_norm(&diff, 0.5, 0.5)?;
    let threehalf_measured = a.anorm_operator_norm(&diff, 1.5, 1.5)?;
    let delta_norm_h1_h0 = a.anorm_operator_norm(&delta, 0.0, 1.0)?;
    let delta_norm_h2_h1 = a.anorm_operator_norm(&delta, 1.0, 2.0)?;
    let constant = dpi_bound_constant(sigma_uniform);
    let half_bound = constant * delta_norm_h1_h0;
    let threehalf_bound = constant * delta_norm_h2_h1;
    let pass = half_measured <= half_bound * (1.0 + REL_SLACK)
        && threehalf_measured <= threehalf_bound * (1.0 + REL_SLACK);
    Ok(ContinuityReport {
        sigma_uniform,
        half_measured,
        half_bound,
        threehalf_measured,
        threehalf_bound,
        delta_norm_h1_h0,
        delta_norm_h2_h1,
        pass,
        norm_convention:
            "A-norm scale of the base point A; level 3/2 bound transported by the shift isometry",
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct RestrictedIsoLevel {
    pub level: f64,
    /// ‖Π₊ᴬ|_B ∘ Π₊ᴮ|_A − Id‖ on the image of Π₊ᴬ (must be ≤ 1/4).
    pub deviation_a: f64,
    /// ‖Π₊ᴮ|_A ∘ Π₊ᴬ|_B − Id‖ on the image of Π₊ᴮ (must be ≤ 1/2).
    pub deviation_b: f64,
    /// Condition number of the restriction Π₊ᴮ|_A between the images
    /// (must be ≤ 2).
    pub condition: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RestrictedIsoReport {
    /// ε₊ = min{1/2, 1/(4‖Π₊ᴬ‖)} with the projection norm over both levels.
    pub epsilon_plus: f64,
    /// ‖Π₊ᴮ − Π₊ᴬ‖ at levels 1/2 and 3/2 (precondition: both ≤ ε₊).
    pub projection_distance: [f64; 2],
    pub levels: Vec<RestrictedIsoLevel>,
    pub rank_a: usize,
    pub rank_b: usize,
    pub pass: bool,
}

/// The two composition estimates behind the restricted-projection
/// isomorphism: when B sits inside the ε₊ ball of A (measured on the
/// projections at levels 1/2 and 3/2), the compositions of restricted
/// projections deviate from the identity by at most 1/4 and 1/2, making
/// Π₊ᴮ|_A an isomorphism of the image pairs with condition number ≤ 2.
pub fn restricted_projection_iso_check(
    a: &WeakHessian,
    b: &WeakHessian,
) -> Result<RestrictedIsoReport, ProjectionError> {
    require_invertible(a)?;
    require_invertible(b)?;
    if a.dim() != b.dim() {
        return Err(ProjectionError::DimensionMismatch(format!(
            "A has dimension {}, B has {}",
            a.dim(),
            b.dim()
        )));
    }
    let n = a.dim();
    let w: Vec<f64> = a.eigenvalues().iter().map(|e| e * e).collect();

    // Everything in A's eigenbasis. The projections are exact here: Π_A is
    // the coordinate indicator and Π_B is conjugated from B's eigenbasis.
    let ind_a = DVector::from_iterator(n, a.eigenvalues().iter().map(|&e| f64::from(e > 0.0)));
    let p_a = DMatrix::from_diagonal(&ind_a);
    let v_ab = a.basis().transpose() * b.basis();
    let ind_b = DVector::from_iterator(n, b.eigenvalues().iter().map(|&e| f64::from(e > 0.0)));
    let p_b = &v_ab * DMatrix::from_diagonal(&ind_b) * v_ab.transpose();

    let rank_a = a.eigenvalues().iter().filter(|&&e| e > 0.0).count();
    let rank_b = b.eigenvalues().iter().filter(|&&e| e > 0.0).count();

    // Norm of Π_A over both levels (diagonal in its own eigenbasis, so 1,
    // measured anyway for the report).
    let proj_norm = [0.5, 1.5]
        .iter()
        .map(|&r| linalg::weighted_norm(&p_a, &w, r, &w, r))
        .fold(0.0_f64, f64::max);
    let epsilon_plus = (0.25 / proj_norm).min(0.5);

    let diff = &p_b - &p_a;
    let projection_distance = [
        linalg::weighted_norm(&diff, &w, 0.5, &w, 0.5),
        linalg::weighted_norm(&diff, &w, 1.5, &w, 1.5),
    ];
    if projection_distance.iter().any(|&d| d > epsilon_plus) {
        return Err(ProjectionError::PreconditionViolation(format!(
            "projection distance {:?} exceeds eps_plus = {epsilon_plus}",
            projection_distance
        )));
    }

    let mut levels = Vec::new();
    let mut pass = rank_a == rank_b;
    for &r in &[0.5, 1.5] {
        let lvl = restricted_level_check(&p_a, &p_b, a.eigenvalues(), &w, r)?;
        pass = pass
            && lvl.deviation_a <= 0.25 + 1e-9
            && lvl.deviation_b <= 0.5 + 1e-9
            && lvl.condition <= 2.0 + 1e-9;
        levels.push(lvl);
    }

    Ok(RestrictedIsoReport {
        epsilon_plus,
        projection_distance,
        levels,
        rank_a,
        rank_b,
        pass,
    })
}

/// Composition deviations and the condition number of the restricted map at
/// one scale level, computed in weighted-orthonormal bases of the two
/// images.
fn restricted_level_check(
    p_a: &DMatrix<f64>,
    p_b: &DMatrix<f64>,
    eigs: &[f64],
    w: &[f64],
    r: f64,
) -> Result<RestrictedIsoLevel, ProjectionError> {
    let n = eigs.len();
    let s = DVector::from_iterator(n, w.iter().map(|wi| wi.powf(r / 2.0)));
    let s_inv = DVector::from_iterator(n, w.iter().map(|wi| wi.powf(-r / 2.0)));
    let weight = DMatrix::from_diagonal(&DVector::from_iterator(n, w.iter().map(|wi| wi.powf(r))));

    // W-orthonormal basis of img Π_A: scaled coordinate vectors.
    let pos_idx: Vec<usize> = (0..n).filter(|&i| eigs[i] > 0.0).collect();
    let mut e_a = DMatrix::zeros(n, pos_idx.len());
    for (col, &i) in pos_idx.iter().enumerate() {
        e_a[(i, col)] = s_inv[i];
    }

    // W-orthonormal basis of img Π_B from a QR of the weighted image.
    let rank_b = (0..n).map(|i| p_b[(i, i)]).sum::<f64>().round() as usize;
    let img_b = weighted_image_basis(p_b, &s, &s_inv, rank_b)?;

    let comp_a = e_a.transpose() * &weight * (p_a * p_b) * &e_a;
    let comp_b = img_b.transpose() * &weight * (p_b * p_a) * &img_b;
    let deviation_a =
        linalg::spectral_norm(&(&comp_a - DMatrix::<f64>::identity(comp_a.nrows(), comp_a.ncols())));
    let deviation_b =
        linalg::spectral_norm(&(&comp_b - DMatrix::<f64>::identity(comp_b.nrows(), comp_b.ncols())));

    // Restriction Π₊ᴮ|_A in the two weighted bases; its singular values
    // give the condition number of the image-pair isomorphism.
    let restricted = img_b.transpose() * &weight * (p_b * &e_a);
    let svals = restricted.svd(false, false).singular_values;
    let smax = svals.max();
    let smin = svals.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(smin > 0.0) {
        return Err(ProjectionError::PreconditionViolation(
            "restricted projection is singular on the window".into(),
        ));
    }
    Ok(RestrictedIsoLevel { level: r, deviation_a, deviation_b, condition: smax / smin })
}

/// W-orthonormal basis of the image of a projection: QR of the weighted
/// column space, unweighted back.
fn weighted_image_basis(
    p: &DMatrix<f64>,
    s: &DVector<f64>,
    s_inv: &DVector<f64>,
    rank: usize,
) -> Result<DMatrix<f64>, ProjectionError> {
    let n = p.nrows();
    let mut weighted = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            weighted[(i, j)] = s[i] * p[(i, j)];
        }
    }
    // Column-pivoted QR keeps the leading `rank` columns independent.
    let qr = weighted.col_piv_qr();
    let q = qr.q();
    let mut basis = DMatrix::zeros(n, rank);
    for col in 0..rank {
        for i in 0..n {
            basis[(i, col)] = s_inv[i] * q[(i, col)];
        }
    }
    Ok(basis)
}
