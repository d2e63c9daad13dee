//! Shared dense linear algebra helpers: spectral norms, symmetric
//! eigendecompositions sorted ascending, seeded random orthogonal matrices,
//! and weighted (conjugated) operator norms.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Matrices up to this size use a dense SVD for operator norms; larger ones
/// fall back to power iteration on MᵀM.
const DENSE_SVD_LIMIT: usize = 64;

const POWER_TOL: f64 = 1e-12;
const POWER_MAX_ITERS: usize = 20_000;

/// Largest singular value of a real matrix.
pub fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    if m.nrows().max(m.ncols()) <= DENSE_SVD_LIMIT {
        m.clone().svd(false, false).singular_values.max()
    } else {
        power_iteration_norm(m)
    }
}

/// Power iteration on MᵀM with a fixed deterministic start vector.
/// Converges from below, so the returned value is a certified lower bound
/// on the true spectral norm (within `POWER_TOL` of it for generic inputs).
fn power_iteration_norm(m: &DMatrix<f64>) -> f64 {
    let n = m.ncols();
    // Deterministic pseudo-random start to avoid orthogonality accidents.
    let mut v = DVector::from_fn(n, |i, _| {
        let x = (i as f64 + 1.0) * 0.754_877_666_246_693;
        (x - x.floor()) - 0.5 + 1e-3
    });
    v /= v.norm();
    let mut prev = 0.0_f64;
    for _ in 0..POWER_MAX_ITERS {
        let w = m * &v;
        let u = m.transpose() * w;
        let lambda = u.norm();
        if lambda == 0.0 {
            return 0.0;
        }
        v = u / lambda;
        let sigma = lambda.sqrt();
        if (sigma - prev).abs() <= POWER_TOL * sigma.max(1.0) {
            return sigma;
        }
        prev = sigma;
    }
    prev
}

/// Certified lower estimate of the spectral norm by capped power
/// iteration: every Rayleigh quotient ‖Mv‖/‖v‖ is a valid lower bound, so
/// stopping early only weakens the estimate, never invalidates it.
pub fn spectral_norm_lower(m: &DMatrix<f64>, tol: f64, max_iters: usize) -> f64 {
    let n = m.ncols();
    if n == 0 || m.nrows() == 0 {
        return 0.0;
    }
    let mut v = DVector::from_fn(n, |i, _| {
        let x = (i as f64 + 1.0) * 0.754_877_666_246_693;
        (x - x.floor()) - 0.5 + 1e-3
    });
    v /= v.norm();
    let mut best = 0.0_f64;
    for _ in 0..max_iters {
        let w = m * &v;
        let sigma = w.norm();
        // ‖Mv‖ and √‖MᵀMv‖ are both Rayleigh-style lower bounds for unit v.
        let u = m.transpose() * w;
        let lambda = u.norm();
        best = best.max(sigma).max(lambda.sqrt());
        if lambda == 0.0 {
            break;
        }
        v = u / lambda;
        if (lambda.sqrt() - sigma).abs() <= tol * sigma.max(1.0) {
            break;
        }
    }
    best
}

/// Top singular triple (σ, u, v) with M v ≈ σ u: dense SVD for small
/// matrices, a modest power iteration beyond (the triple is used as a
/// search direction, which does not need full precision).
pub fn top_singular_triple(m: &DMatrix<f64>) -> (f64, DVector<f64>, DVector<f64>) {
    let (rows, cols) = m.shape();
    if rows.max(cols) <= DENSE_SVD_LIMIT {
        let svd = m.clone().svd(true, true);
        let sigma = svd.singular_values[0];
        let u = svd.u.as_ref().unwrap().column(0).into_owned();
        let v = svd.v_t.as_ref().unwrap().row(0).transpose();
        return (sigma, u, v);
    }
    let mut v = DVector::from_fn(cols, |i, _| {
        let x = (i as f64 + 1.0) * 0.569_840_290_998_053;
        (x - x.floor()) - 0.5 + 1e-3
    });
    v /= v.norm();
    let mut sigma = 0.0_f64;
    for _ in 0..400 {
        let w = m * &v;
        let u = m.transpose() * &w;
        let lambda = u.norm();
        if lambda == 0.0 {
            break;
        }
        v = u / lambda;
        let next = lambda.sqrt();
        if (next - sigma).abs() <= 1e-9 * next.max(1.0) {
            sigma = next;
            break;
        }
        sigma = next;
    }
    let mut u = m * &v;
    let n = u.norm();
    if n > 0.0 {
        u /= n;
    }
    (sigma, u, v)
}

/// Largest singular value of a complex matrix, computed on the real
/// 2n×2n embedding [[Re, -Im], [Im, Re]], which has the same singular
/// values (each doubled).
pub fn complex_spectral_norm(m: &DMatrix<Complex64>) -> f64 {
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
    spectral_norm(&emb)
}

/// Symmetric eigendecomposition with eigenvalues sorted ascending and the
/// eigenvector columns permuted accordingly.
pub fn sym_eigen_ascending(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = m.nrows();
    let se = m.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| se.eigenvalues[i].partial_cmp(&se.eigenvalues[j]).unwrap());
    let vals: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let mut vecs = DMatrix::zeros(n, n);
    for (k, &i) in order.iter().enumerate() {
        vecs.set_column(k, &se.eigenvectors.column(i));
    }
    (vals, vecs)
}

/// Random orthogonal matrix from a seeded RNG (QR of a Gaussian matrix with
/// the sign convention fixed by the R diagonal, so the result is a
/// deterministic function of the RNG state).
pub fn random_orthogonal(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let g = DMatrix::from_fn(n, n, |_, _| standard_normal(rng));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            for i in 0..n {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    q
}

/// Random symmetric matrix with standard normal entries (up to symmetry).
pub fn random_symmetric(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let x = standard_normal(rng);
            m[(i, j)] = x;
            m[(j, i)] = x;
        }
    }
    m
}

/// Box–Muller standard normal draw.
pub fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Operator norm of `t` as a map ℓ²_{src}^{src_exp} → ℓ²_{tgt}^{tgt_exp},
/// i.e. the largest singular value of
/// diag(tgt^{tgt_exp/2}) · t · diag(src^{-src_exp/2}).
///
/// Exact for diagonal `t`. All weights must be strictly positive.
pub fn weighted_norm(t: &DMatrix<f64>, tgt: &[f64], tgt_exp: f64, src: &[f64], src_exp: f64) -> f64 {
    assert_eq!(t.nrows(), tgt.len(), "target weight length mismatch");
    assert_eq!(t.ncols(), src.len(), "source weight length mismatch");
    let mut scaled = t.clone();
    for i in 0..t.nrows() {
        let wi = tgt[i].powf(tgt_exp / 2.0);
        for j in 0..t.ncols() {
            scaled[(i, j)] *= wi;
        }
    }
    for j in 0..t.ncols() {
        let wj = src[j].powf(-src_exp / 2.0);
        for i in 0..t.nrows() {
            scaled[(i, j)] *= wj;
        }
    }
    spectral_norm(&scaled)
}

/// Relative symmetry defect ‖M − Mᵀ‖_max / max(1, ‖M‖_max).
pub fn symmetry_defect(m: &DMatrix<f64>) -> f64 {
    let mut defect = 0.0_f64;
    let mut scale = 1.0_f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            defect = defect.max((m[(i, j)] - m[(j, i)]).abs());
            scale = scale.max(m[(i, j)].abs());
        }
    }
    defect / scale
}

/// Maximum absolute entry.
pub fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0_f64, |acc, &x| acc.max(x.abs()))
}
