use super::*;
use crate::hessian::{HessianType, WeakHessian};
use crate::linalg::{random_orthogonal, random_symmetric, spectral_norm};
use approx::assert_relative_eq;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn floer(neg: &[f64], pos: &[f64]) -> WeakHessian {
    WeakHessian::from_spectrum(neg, pos, None, None, HessianType::Floer).unwrap()
}

fn rotated(neg: &[f64], pos: &[f64], seed: u64) -> WeakHessian {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = random_orthogonal(neg.len() + pos.len(), &mut rng);
    WeakHessian::from_spectrum(neg, pos, Some(q), None, HessianType::Floer).unwrap()
}

fn quad() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn offdiag(n: usize, delta: f64) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    m[(0, n - 1)] = delta;
    m[(n - 1, 0)] = delta;
    m
}

#[test]
fn resolvent_factor_at_zero_is_identity() {
    let a = floer(&[-1.0], &[2.0]);
    let r = resolvent_factor(&a, Complex64::new(0.0, 0.0)).unwrap();
    for i in 0..2 {
        for j in 0..2 {
            let expect = if i == j { 1.0 } else { 0.0 };
            assert_relative_eq!(r[(i, j)].re, expect, epsilon = 1e-14);
            assert!(r[(i, j)].im.abs() < 1e-14);
        }
    }
}

#[test]
fn resolvent_factor_diagonal_imaginary_axis() {
    let a = floer(&[-2.0], &[1.0, 3.0]);
    let t = 0.7;
    let zeta = Complex64::new(0.0, t);
    let r = resolvent_factor(&a, zeta).unwrap();
    for (k, &e) in a.eigenvalues().iter().enumerate() {
        let expect = Complex64::new(1.0, 0.0) / Complex64::new(1.0, -t * e);
        assert!((r[(k, k)] - expect).norm() < 1e-14);
        assert!(r[(k, k)].norm() <= 1.0 + 1e-14);
    }
}

#[test]
fn resolvent_factor_detects_poles() {
    let a = floer(&[-1.0], &[2.0]);
    assert!(matches!(
        resolvent_factor(&a, Complex64::new(0.5, 0.0)),
        Err(ProjectionError::ResolventPole { .. })
    ));
}

#[test]
fn resolvent_h0_h1_norm_at_most_one_on_alpha() {
    let a = rotated(&[-3.0, -0.5], &[0.5, 1.0, 4.0], 3);
    let contour = Contour::for_hessian(&a, ContourSign::Plus).unwrap();
    for (z, _) in contour.nodes(contour::SegmentFilter::AlphaOnly, 2, &quad()) {
        let norm = resolvent_h0_to_h1_norm(&a, z).unwrap();
        assert!(norm <= 1.0 + 1e-12, "norm {norm} at zeta {z}");
    }
}

#[test]
fn orientation_calibration_two_by_two() {
    // The pinned orientation must send diag(1, -1) to diag(1, 0).
    let a = floer(&[-1.0], &[1.0]);
    let (p, diag) = contour_projection(&a, ContourSign::Plus, &quad()).unwrap();
    assert_relative_eq!(p[(1, 1)], 1.0, epsilon = 1e-8);
    assert!(p[(0, 0)].abs() < 1e-8);
    assert!(p[(0, 1)].abs() < 1e-10);
    assert!(diag.max_imag < 1e-9);
    // Trace equals the number of positive eigenvalues, not its negative.
    assert_relative_eq!(p.trace(), 1.0, epsilon = 1e-8);
}

#[test]
fn projection_four_eigenvalues() {
    let a = floer(&[-2.0, -0.5], &[1.0, 3.0]);
    let (p, _) = contour_projection(&a, ContourSign::Plus, &quad()).unwrap();
    let oracle = eigenprojection_oracle(&a, ContourSign::Plus).unwrap();
    assert!(spectral_norm(&(p - oracle)) < 1e-8);
}

#[test]
fn projection_in_rotated_basis() {
    let a = rotated(&[-2.0, -0.5], &[1.0, 3.0], 11);
    let (p, _) = contour_projection(&a, ContourSign::Plus, &quad()).unwrap();
    let oracle = eigenprojection_oracle(&a, ContourSign::Plus).unwrap();
    assert!(spectral_norm(&(p.clone() - oracle)) < 1e-8);
    // Idempotent and H0-symmetric.
    assert!(spectral_norm(&(&p * &p - &p)) < 1e-8);
    assert!(crate::linalg::symmetry_defect(&p) < 1e-10);
}

#[test]
fn plus_and_minus_projections_sum_to_identity() {
    let a = rotated(&[-1.5, -0.25], &[0.75, 2.0, 5.0], 7);
    let (pp, _) = contour_projection(&a, ContourSign::Plus, &quad()).unwrap();
    let (pm, _) = contour_projection(&a, ContourSign::Minus, &quad()).unwrap();
    let n = a.dim();
    assert!(spectral_norm(&(pp + pm - DMatrix::<f64>::identity(n, n))) < 1e-8);
}

#[test]
fn oracle_rank_and_partition() {
    let a = floer(&[-1.0, -2.0, -3.0], &[0.5, 4.0]);
    let plus = eigenprojection_oracle(&a, ContourSign::Plus).unwrap();
    let minus = eigenprojection_oracle(&a, ContourSign::Minus).unwrap();
    assert_relative_eq!(plus.trace(), 2.0, epsilon = 1e-12);
    assert_eq!(plus.clone() + minus, DMatrix::identity(5, 5));
    assert!(spectral_norm(&(&plus * &plus - &plus)) < 1e-12);
}

#[test]
fn projection_rejects_non_invertible() {
    let a = WeakHessian::from_eigenvalues(&[-1.0, 0.0, 1.0], None, None, HessianType::Floer)
        .unwrap();
    assert!(matches!(
        contour_projection(&a, ContourSign::Plus, &quad()),
        Err(ProjectionError::NotInvertible)
    ));
}

#[test]
fn derivative_closed_two_by_two() {
    // A = diag(1,-1) with Δ = offdiag(δ): dΠ₊ = offdiag(δ/2).
    let a = floer(&[-1.0], &[1.0]);
    let delta = 0.3;
    let d = offdiag(2, delta);
    let dpi = projection_derivative(&a, &d, ContourSign::Plus, &quad()).unwrap();
    assert_relative_eq!(dpi[(0, 1)], delta / 2.0, epsilon = 1e-7);
    assert_relative_eq!(dpi[(1, 0)], delta / 2.0, epsilon = 1e-7);
    assert!(dpi[(0, 0)].abs() < 1e-9 && dpi[(1, 1)].abs() < 1e-9);
}

#[test]
fn derivative_vanishes_for_commuting_perturbations() {
    let a = rotated(&[-2.0, -1.0], &[1.0, 3.0], 19);
    // Diagonal in the eigenbasis: no eigenvector rotation, dΠ = 0.
    let d_eigen = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![0.4, -0.1, 0.2, 0.9]));
    let d = a.from_eigenbasis(&d_eigen);
    let dpi = projection_derivative(&a, &d, ContourSign::Plus, &quad()).unwrap();
    assert!(spectral_norm(&dpi) < 1e-8);
}

#[test]
fn derivative_is_linear_in_delta() {
    let a = rotated(&[-1.2, -0.6], &[0.8, 2.2], 23);
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let d1 = random_symmetric(4, &mut rng);
    let d2 = random_symmetric(4, &mut rng);
    let lhs =
        projection_derivative(&a, &(&d1 + &d2), ContourSign::Plus, &quad()).unwrap();
    let rhs = projection_derivative(&a, &d1, ContourSign::Plus, &quad()).unwrap()
        + projection_derivative(&a, &d2, ContourSign::Plus, &quad()).unwrap();
    assert!(spectral_norm(&(lhs - rhs)) < 1e-9);
}

#[test]
fn derivative_matches_central_finite_differences() {
    let a = rotated(&[-2.0, -1.0, -0.4], &[0.7, 1.3, 2.8], 31);
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let d = random_symmetric(6, &mut rng);
    let dpi = projection_derivative(&a, &d, ContourSign::Plus, &quad()).unwrap();
    let fd = |eps: f64| -> DMatrix<f64> {
        let proj = |m: &DMatrix<f64>| -> DMatrix<f64> {
            let (vals, vecs) = crate::linalg::sym_eigen_ascending(m);
            let ind = nalgebra::DVector::from_iterator(
                vals.len(),
                vals.iter().map(|&v| f64::from(v > 0.0)),
            );
            &vecs * DMatrix::from_diagonal(&ind) * vecs.transpose()
        };
        let plus = proj(&(a.matrix() + &d * eps));
        let minus = proj(&(a.matrix() - &d * eps));
        (plus - minus) / (2.0 * eps)
    };
    let e1 = spectral_norm(&(fd(1e-3) - &dpi));
    let e2 = spectral_norm(&(fd(5e-4) - &dpi));
    let order = (e1 / e2).log2();
    assert!(order > 1.9, "observed order {order}");
}

#[test]
fn neumann_zero_delta_gives_zero_terms() {
    let a = floer(&[-1.0], &[1.0, 2.0]);
    let r = neumann_difference_check(&a, &DMatrix::zeros(3, 3), Complex64::new(0.0, 0.5), 3)
        .unwrap();
    assert_eq!(r.rho, 0.0);
    assert!(r.residuals.iter().all(|&x| x < 1e-13));
    assert!(r.pass);
}

#[test]
fn neumann_residual_is_quadratic_in_delta() {
    let a = rotated(&[-1.5, -0.7], &[0.9, 2.1], 41);
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let d0 = random_symmetric(4, &mut rng);
    let zeta = Complex64::new(0.0, 0.8);
    let res = |scale: f64| {
        neumann_difference_check(&a, &(&d0 * scale), zeta, 1).unwrap().residuals[0]
    };
    let r1 = res(1e-2);
    let r2 = res(5e-3);
    let order = (r1 / r2).log2();
    assert!(order > 1.9, "observed order {order}");
    let report = neumann_difference_check(&a, &(&d0 * 1e-2), zeta, 4).unwrap();
    assert!(report.pass, "{report:?}");
    // Residuals decrease geometrically in K.
    assert!(report.residuals.windows(2).all(|w| w[1] <= w[0] * 0.9 + 1e-15));
}

#[test]
fn neumann_rejects_contraction_failure() {
    let a = floer(&[-1.0], &[1.0]);
    let big = offdiag(2, 50.0);
    assert!(matches!(
        neumann_difference_check(&a, &big, Complex64::new(0.0, 1.0), 2),
        Err(ProjectionError::PreconditionViolation(_))
    ));
}

#[test]
fn hadamard_kernel_hand_values() {
    assert_relative_eq!(arctan_divided_difference(1.0, 1.0), 0.5);
    assert_relative_eq!(
        arctan_divided_difference(1.0, -1.0),
        std::f64::consts::FRAC_PI_4,
        epsilon = 1e-15
    );
}

#[test]
fn hadamard_beta_block_matches_quadrature() {
    let a = rotated(&[-2.5, -1.0, -0.3], &[0.6, 1.7, 3.2], 47);
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    let d = random_symmetric(6, &mut rng);
    let closed = beta_block_hadamard(&a, &d).unwrap();
    let quadr = beta_block_quadrature(&a, &d, &quad()).unwrap();
    let err = crate::linalg::max_abs(&(closed - quadr));
    assert!(err < 1e-7, "entrywise error {err}");
}

#[test]
fn hadamard_diagonal_branch() {
    // Δ diagonal in the eigenbasis: c is diagonal with d/(π(a²+1)).
    let a = floer(&[-2.0], &[1.0]);
    let d_eigen = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![2.0, 3.0]));
    let d = a.from_eigenbasis(&d_eigen);
    let c = beta_block_hadamard(&a, &d).unwrap();
    assert_relative_eq!(c[(0, 0)], 2.0 / (std::f64::consts::PI * 5.0), epsilon = 1e-14);
    assert_relative_eq!(c[(1, 1)], 3.0 / (std::f64::consts::PI * 2.0), epsilon = 1e-14);
    assert!(c[(0, 1)].abs() < 1e-14);
}

#[test]
fn block_decompose_identity() {
    let a = floer(&[-1.0, -2.0], &[1.0, 3.0]);
    let blocks = block_decompose(&DMatrix::identity(4, 4), &a, 0.5).unwrap();
    assert_eq!(blocks.plus_plus, DMatrix::identity(2, 2));
    assert_eq!(blocks.minus_minus, DMatrix::identity(2, 2));
    assert_eq!(blocks.minus_plus, DMatrix::zeros(2, 2));
    assert_eq!(blocks.plus_minus, DMatrix::zeros(2, 2));
    assert_eq!(blocks.reassemble(), DMatrix::identity(4, 4));
}

#[test]
fn diagonal_blocks_of_derivative_vanish() {
    let a = rotated(&[-1.8, -0.9], &[0.5, 1.4, 2.6], 59);
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    let d = random_symmetric(5, &mut rng);
    let dpi = projection_derivative(&a, &d, ContourSign::Plus, &quad()).unwrap();
    let blocks = block_decompose(&dpi, &a, 0.5).unwrap();
    let norms = blocks.block_norms(a.eigenvalues());
    assert!(norms[0] < 1e-8, "++ block {}", norms[0]);
    assert!(norms[3] < 1e-8, "-- block {}", norms[3]);
}

#[test]
fn operator_norm_below_sum_of_block_norms() {
    let mut rng = ChaCha8Rng::seed_from_u64(67);
    for _ in 0..100 {
        let a = floer(&[-2.0, -1.0], &[1.0, 2.0, 3.0]);
        let op = random_symmetric(5, &mut rng);
        let blocks = block_decompose(&op, &a, 0.5).unwrap();
        let norms = blocks.block_norms(a.eigenvalues());
        let total = a.anorm_operator_norm(&op, 0.5, 0.5).unwrap();
        let sum: f64 = norms.iter().sum();
        assert!(total <= sum * (1.0 + 1e-9), "{total} > {sum}");
        // Reassembly is exact.
        assert_eq!(blocks.reassemble(), a.to_eigenbasis(&op));
    }
}

#[test]
fn half_level_norm_hand_values() {
    let a = floer(&[-1.0], &[2.0, 3.0]);
    let id = DMatrix::identity(3, 3);
    for r in [0.0, 0.5, 1.0, 1.5] {
        assert_relative_eq!(half_level_norm(&id, &a, r).unwrap(), 1.0);
    }
    // Diagonal operators commute with the weights at every level.
    let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![2.0, 3.0, -1.0]));
    assert_relative_eq!(half_level_norm(&d, &a, 1.0).unwrap(), 3.0);

    // Rank-one e1 e2ᵀ with A-weights (1, 4) at level 1 → 1/2.
    let a = floer(&[-1.0], &[2.0]);
    let mut op = DMatrix::zeros(2, 2);
    op[(0, 1)] = 1.0;
    assert_relative_eq!(half_level_norm(&op, &a, 1.0).unwrap(), 0.5);
}

#[test]
fn alpha_bound_zero_delta() {
    let a = floer(&[-1.0], &[1.0, 2.0]);
    let r = alpha_bound_check(&a, &DMatrix::zeros(3, 3), ContourSign::Plus, &quad()).unwrap();
    assert_eq!(r.measured, 0.0);
    assert!(r.pass);
}

#[test]
fn alpha_bound_holds_for_unit_gap_spectrum() {
    // σ = 1, spectrum ±{1,2,3}: the bound is 3/π.
    let a = rotated(&[-3.0, -2.0, -1.0], &[1.0, 2.0, 3.0], 71);
    let mut rng = ChaCha8Rng::seed_from_u64(73);
    for _ in 0..10 {
        let d = random_symmetric(6, &mut rng);
        let r = alpha_bound_check(&a, &d, ContourSign::Plus, &quad()).unwrap();
        assert!(r.pass, "{r:?}");
        assert_relative_eq!(r.bound, 3.0 / std::f64::consts::PI * r.delta_norm_h1_h0);
    }
}

#[test]
fn dpi_bound_two_by_two_closed_case() {
    let a = floer(&[-1.0], &[1.0]);
    let delta = 0.4;
    let d = offdiag(2, delta);
    let r = dpi_half_bound_check(&a, &d, &quad()).unwrap();
    // Level-1/2 norm of offdiag(δ/2) with unit weights is δ/2.
    assert_relative_eq!(r.total_measured, delta / 2.0, epsilon = 1e-8);
    assert!(r.total_bound >= (std::f64::consts::PI + 6.0 / std::f64::consts::PI) * delta - 1e-12);
    assert!(r.pass, "{r:?}");
}

#[test]
fn dpi_bound_seeded_sweep_small() {
    let mut rng = ChaCha8Rng::seed_from_u64(79);
    for trial in 0..5 {
        let a = rotated(&[-2.2, -1.1, -0.5], &[0.5, 1.9, 3.1], 80 + trial);
        let d = random_symmetric(6, &mut rng);
        let r = dpi_half_bound_check(&a, &d, &quad()).unwrap();
        assert!(r.pass, "{r:?}");
    }
}

#[test]
fn continuity_identical_operators() {
    let a = rotated(&[-1.0, -0.5], &[0.5, 2.0], 83);
    let r = projection_continuity_check(&a, &a.clone(), &quad()).unwrap();
    assert!(r.half_measured < 1e-9);
    assert!(r.pass);
}

#[test]
fn continuity_scales_linearly_in_epsilon() {
    let a = rotated(&[-2.0, -1.0], &[1.0, 2.0], 89);
    let mut rng = ChaCha8Rng::seed_from_u64(97);
    let d0 = random_symmetric(4, &mut rng);
    let d0 = &d0 / spectral_norm(&d0);
    let measure = |eps: f64| {
        let b = WeakHessian::from_eigenvalues(
            &crate::linalg::sym_eigen_ascending(&(a.matrix() + &d0 * eps)).0,
            Some(crate::linalg::sym_eigen_ascending(&(a.matrix() + &d0 * eps)).1),
            None,
            HessianType::Floer,
        )
        .unwrap();
        projection_continuity_check(&a, &b, &quad()).unwrap()
    };
    let r1 = measure(0.08);
    let r2 = measure(0.04);
    assert!(r1.pass && r2.pass);
    let ratio = r1.half_measured / r2.half_measured;
    assert!((ratio - 2.0).abs() < 0.2, "ratio {ratio}");
}

#[test]
fn continuity_level_threehalf_requires_the_shifted_perturbation_norm() {
    // A spread spectrum with the perturbation concentrated on the coupling
    // between the largest positive and the smallest negative eigenvalue:
    // at level 3/2 the projection difference genuinely exceeds the level-1/2
    // constant times |delta|_{H1->H0}, so the bound must be transported up
    // the scale, where delta is measured H2 -> H1.
    let a = WeakHessian::from_spectrum(&[-1.0], &[1.0, 100.0], None, None, HessianType::Floer)
        .unwrap();
    let mut d = DMatrix::<f64>::zeros(3, 3);
    d[(0, 2)] = 0.05; // eigen layout ascending: couple -1 with 100
    d[(2, 0)] = 0.05;
    let (vals, vecs) = crate::linalg::sym_eigen_ascending(&(a.matrix() + &d));
    let b = WeakHessian::from_eigenvalues(&vals, Some(vecs), None, HessianType::Floer).unwrap();
    let r = projection_continuity_check(&a, &b, &quad()).unwrap();
    let constant = super::checks::dpi_bound_constant(r.sigma_uniform);
    assert!(
        r.threehalf_measured > constant * r.delta_norm_h1_h0,
        "adversarial coupling should beat the unshifted constant: {} vs {}",
        r.threehalf_measured,
        constant * r.delta_norm_h1_h0
    );
    assert!(r.pass, "the transported bound must still hold: {r:?}");
}

#[test]
fn continuity_rejects_gap_crossing() {
    let a = floer(&[-1.0], &[0.2]);
    let b = floer(&[-1.0, -0.2], &[1.0]).translate(0.0);
    // Segment from diag sorted (-1, 0.2) to (-1, -0.2): an eigenvalue
    // crosses zero.
    let b = WeakHessian::from_eigenvalues(
        &[b.eigenvalues()[0], -0.2],
        None,
        None,
        HessianType::Floer,
    )
    .unwrap();
    assert!(matches!(
        projection_continuity_check(&a, &b, &quad()),
        Err(ProjectionError::GapViolation { .. })
    ));
}

#[test]
fn restricted_iso_equal_operators() {
    let a = rotated(&[-1.5, -0.5], &[0.5, 1.0, 2.0], 101);
    let r = restricted_projection_iso_check(&a, &a.clone()).unwrap();
    for lvl in &r.levels {
        assert!(lvl.deviation_a < 1e-10);
        assert!(lvl.deviation_b < 1e-10);
        assert!((lvl.condition - 1.0).abs() < 1e-10);
    }
    assert!(r.pass);
}

#[test]
fn restricted_iso_small_perturbation() {
    let a = rotated(&[-2.0, -1.0], &[1.0, 2.0], 103);
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    let d = random_symmetric(4, &mut rng);
    let d = &d * (0.05 / spectral_norm(&d));
    let (vals, vecs) = crate::linalg::sym_eigen_ascending(&(a.matrix() + d));
    let b = WeakHessian::from_eigenvalues(&vals, Some(vecs), None, HessianType::Floer).unwrap();
    let r = restricted_projection_iso_check(&a, &b).unwrap();
    assert!(r.pass, "{r:?}");
    assert_eq!(r.rank_a, r.rank_b);
}

#[test]
fn restricted_iso_precondition_violation() {
    // Swapped signs: the projections are far apart.
    let a = floer(&[-1.0], &[1.0]);
    let b = floer(&[-1.0], &[1.0]).translate(0.0);
    let flipped = WeakHessian::from_spectrum(
        &[-1.0],
        &[1.0],
        Some(DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0])),
        None,
        HessianType::Floer,
    )
    .unwrap();
    drop(b);
    assert!(matches!(
        restricted_projection_iso_check(&a, &flipped),
        Err(ProjectionError::PreconditionViolation(_))
    ));
}

#[test]
fn beta_offdiagonal_multiplier_matches_example_iii() {
    // The entrywise factor of the off-diagonal beta block, rescaled by
    // sqrt(a_mu b_nu), is exactly the composite arctan multiplier built
    // from the signed spectrum.
    let pos = [0.7, 1.5, 3.0];
    let negmag = [0.4, 2.0, 5.0];
    let neg: Vec<f64> = negmag.iter().map(|&b| -b).collect();
    let a = floer(&neg, &pos);
    let mut rng = ChaCha8Rng::seed_from_u64(113);
    let d = random_symmetric(6, &mut rng);
    let beta = beta_block_hadamard(&a, &d).unwrap();
    let d_eigen = a.to_eigenbasis(&d);
    let (ex3, _) = crate::schur::example_iii_matrix(
        &crate::schur::Sequence::from_vec(pos.to_vec()),
        &crate::schur::Sequence::from_vec({
            let mut m = negmag.to_vec();
            m.sort_by(|x, y| x.partial_cmp(y).unwrap());
            m
        }),
        3,
    )
    .unwrap();
    // Eigen layout: negatives ascending (indices 0..3, magnitudes 5,2,0.4),
    // then positives. Row = positive mu, column = negative nu.
    let nm = 3;
    for (mu, &am) in pos.iter().enumerate() {
        for nu_sorted in 0..nm {
            let bn = [0.4, 2.0, 5.0][nu_sorted];
            let col = nm - 1 - nu_sorted; // eigen column of magnitude bn
            let entry = beta[(nm + mu, col)];
            let dd = d_eigen[(nm + mu, col)];
            let expect = ex3.entry(mu as u64 + 1, nu_sorted as u64 + 1).unwrap()
                / ((am * bn).sqrt() * std::f64::consts::PI)
                * dd;
            assert_relative_eq!(entry, expect, epsilon = 1e-12);
        }
    }
}

#[test]
fn quadrature_non_convergence_reported() {
    let a = floer(&[-1.0], &[1.0]);
    let cfg = QuadratureConfig { panels_per_segment: 1, nodes_per_panel: 2, tol: 1e-14, max_subdivisions: 1 };
    assert!(matches!(
        contour_projection(&a, ContourSign::Plus, &cfg),
        Err(ProjectionError::QuadratureNonConvergence { .. })
    ));
}

#[test]
fn rejects_asymmetric_perturbation() {
    let a = floer(&[-1.0], &[1.0]);
    let mut d = DMatrix::zeros(2, 2);
    d[(0, 1)] = 1.0;
    assert!(matches!(
        projection_derivative(&a, &d, ContourSign::Plus, &quad()),
        Err(ProjectionError::AsymmetricPerturbation(_))
    ));
}
