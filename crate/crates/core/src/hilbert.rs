//! Finite-truncation models of Hilbert space pairs (ℓ², ℓ²_h) and their
//! classification: weighted scales and level-shift isometries, Gram-matrix
//! pairs, the Riesz operator relating the two inner products, pair-growth
//! extraction from its eigenvalues, and the constant-c₀⁴ equivalence test
//! for pair isomorphisms.

use crate::growth::GrowthSample;
use crate::interpolation::{weighted_operator_norm, Level, WeightedNormContext};
use crate::linalg;
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HilbertError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not symmetric positive definite: {0}")]
    NotPositiveDefinite(String),
    #[error("map is singular on the window")]
    SingularMap,
    #[error("weights must be positive and non-decreasing")]
    InvalidWeights,
}

/// A level of the scale H_r = ℓ²_{h^r} at finite truncation: the weight
/// window h(1..N) together with the level exponent r.
#[derive(Debug, Clone)]
pub struct HilbertScale {
    weights: Vec<f64>,
    level: f64,
}

impl HilbertScale {
    pub fn new(weights: Vec<f64>, level: f64) -> Result<Self, HilbertError> {
        if weights.is_empty()
            || weights.iter().any(|&w| !(w > 0.0))
            || weights.windows(2).any(|w| w[0] > w[1])
        {
            return Err(HilbertError::InvalidWeights);
        }
        Ok(HilbertScale { weights, level })
    }

    pub fn from_sample(sample: &GrowthSample, level: f64) -> Result<Self, HilbertError> {
        Self::new(sample.values.clone(), level)
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn level(&self) -> f64 {
        self.level
    }

    /// The same weights at a different level exponent.
    pub fn at_level(&self, level: f64) -> HilbertScale {
        HilbertScale { weights: self.weights.clone(), level }
    }

    /// ⟨x, y⟩ = Σ h(ν)^r x_ν y_ν.
    pub fn inner_product(&self, x: &DVector<f64>, y: &DVector<f64>) -> Result<f64, HilbertError> {
        if x.len() != self.dim() || y.len() != self.dim() {
            return Err(HilbertError::DimensionMismatch(format!(
                "vectors of length {} and {} against scale of dimension {}",
                x.len(),
                y.len(),
                self.dim()
            )));
        }
        Ok((0..self.dim()).map(|i| self.weights[i].powf(self.level) * x[i] * y[i]).sum())
    }

    pub fn norm(&self, x: &DVector<f64>) -> Result<f64, HilbertError> {
        Ok(self.inner_product(x, x)?.sqrt())
    }

    /// Operator norm of the inclusion H_r → H_s for s ≤ r (at most 1 when
    /// h ≥ 1): max_ν h(ν)^{(s-r)/2}.
    pub fn inclusion_norm(&self, s: f64) -> f64 {
        let r = self.level;
        self.weights.iter().map(|w| w.powf((s - r) / 2.0)).fold(0.0_f64, f64::max)
    }
}

/// A linear map between (finite models of) Hilbert space pairs.
#[derive(Debug, Clone)]
pub struct PairMap {
    pub matrix: DMatrix<f64>,
    pub description: String,
}

/// The levelwise isometry φ_r: (H₀, H₁) → (H_r, H_{r+1}),
/// x_ν ↦ h(ν)^{-r/2} x_ν.
pub fn level_shift_isometry(scale: &HilbertScale, r: f64) -> PairMap {
    let d = DMatrix::from_diagonal(&DVector::from_iterator(
        scale.dim(),
        scale.weights().iter().map(|w| w.powf(-r / 2.0)),
    ));
    PairMap { matrix: d, description: format!("level shift by r={r}") }
}

/// Two inner products on a common N-dimensional space, given by symmetric
/// positive definite Gram matrices.
#[derive(Debug, Clone)]
pub struct GramPair {
    g0: DMatrix<f64>,
    g1: DMatrix<f64>,
}

const SYMMETRY_TOL: f64 = 1e-12;

impl GramPair {
    pub fn new(g0: DMatrix<f64>, g1: DMatrix<f64>) -> Result<Self, HilbertError> {
        if g0.nrows() != g0.ncols() || g0.shape() != g1.shape() {
            return Err(HilbertError::DimensionMismatch(format!(
                "G0 is {:?}, G1 is {:?}",
                g0.shape(),
                g1.shape()
            )));
        }
        for (name, g) in [("G0", &g0), ("G1", &g1)] {
            if linalg::symmetry_defect(g) > SYMMETRY_TOL {
                return Err(HilbertError::NotPositiveDefinite(format!("{name} is not symmetric")));
            }
            if g.clone().cholesky().is_none() {
                return Err(HilbertError::NotPositiveDefinite(format!(
                    "{name} has a non-positive eigenvalue"
                )));
            }
        }
        Ok(GramPair { g0, g1 })
    }

    /// The pair (ℓ², ℓ²_h) itself: G0 = I, G1 = diag(h).
    pub fn from_weights(h: &[f64]) -> Result<Self, HilbertError> {
        let n = h.len();
        Self::new(
            DMatrix::identity(n, n),
            DMatrix::from_diagonal(&DVector::from_column_slice(h)),
        )
    }

    pub fn dim(&self) -> usize {
        self.g0.nrows()
    }

    pub fn g0(&self) -> &DMatrix<f64> {
        &self.g0
    }

    pub fn g1(&self) -> &DMatrix<f64> {
        &self.g1
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GramPairJson::from(self)).unwrap()
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, HilbertError> {
        let parsed: GramPairJson = serde_json::from_value(value.clone()).map_err(|e| {
            HilbertError::DimensionMismatch(format!("cannot parse GramPair JSON: {e}"))
        })?;
        parsed.try_into()
    }
}

/// Wire format: {"n": N, "g0": [[..]], "g1": [[..]]}.
#[derive(Serialize, Deserialize)]
struct GramPairJson {
    n: usize,
    g0: Vec<Vec<f64>>,
    g1: Vec<Vec<f64>>,
}

impl From<&GramPair> for GramPairJson {
    fn from(p: &GramPair) -> Self {
        let rows = |m: &DMatrix<f64>| {
            (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect()).collect()
        };
        GramPairJson { n: p.dim(), g0: rows(&p.g0), g1: rows(&p.g1) }
    }
}

impl TryFrom<GramPairJson> for GramPair {
    type Error = HilbertError;

    fn try_from(j: GramPairJson) -> Result<Self, HilbertError> {
        let build = |rows: &Vec<Vec<f64>>| -> Result<DMatrix<f64>, HilbertError> {
            if rows.len() != j.n || rows.iter().any(|r| r.len() != j.n) {
                return Err(HilbertError::DimensionMismatch("ragged matrix in JSON".into()));
            }
            Ok(DMatrix::from_fn(j.n, j.n, |i, k| rows[i][k]))
        };
        GramPair::new(build(&j.g0)?, build(&j.g1)?)
    }
}

/// The Riesz operator T with ⟨ξ,η⟩₀ = ⟨ξ,Tη⟩₁, i.e. G1·T = G0, together
/// with its eigendata. T is G1-self-adjoint and positive definite; the
/// eigenvalues are returned descending (κ₁ ≥ κ₂ ≥ … > 0) and the eigenvector
/// columns are G1-orthonormal.
#[derive(Debug, Clone)]
pub struct RieszOperator {
    pub t: DMatrix<f64>,
    pub kappas: Vec<f64>,
    pub eigenvectors: DMatrix<f64>,
}

pub fn riesz_operator(pair: &GramPair) -> Result<RieszOperator, HilbertError> {
    let chol = pair.g1.clone().cholesky().ok_or_else(|| {
        HilbertError::NotPositiveDefinite("G1 is singular; Riesz operator undefined".into())
    })?;
    // Solve G1 T = G0 rather than forming an explicit inverse.
    let t = chol.solve(&pair.g0);
    // Eigendecompose the similar symmetric form L⁻¹ G0 L⁻ᵀ, then map the
    // eigenvectors back by L⁻ᵀ; this keeps the solver symmetric.
    let l = chol.l();
    let linv = l
        .clone()
        .solve_lower_triangular(&DMatrix::identity(pair.dim(), pair.dim()))
        .ok_or(HilbertError::SingularMap)?;
    let s = &linv * &pair.g0 * linv.transpose();
    let s = (&s + s.transpose()) * 0.5;
    let (vals, vecs) = linalg::sym_eigen_ascending(&s);
    if vals.first().is_none_or(|&v| v <= 0.0) {
        return Err(HilbertError::NotPositiveDefinite(
            "Riesz operator has a non-positive eigenvalue".into(),
        ));
    }
    // Descending kappas.
    let n = pair.dim();
    let mut kappas = Vec::with_capacity(n);
    let mut eigenvectors = DMatrix::zeros(n, n);
    let back = linv.transpose();
    for k in 0..n {
        let src = n - 1 - k;
        kappas.push(vals[src]);
        let col = &back * vecs.column(src);
        eigenvectors.set_column(k, &col);
    }
    Ok(RieszOperator { t, kappas, eigenvectors })
}

/// Pair growth extracted from a Gram pair: h(ν) = 1/κ_ν sorted
/// non-decreasing, plus the basis map Φ whose columns e_ν = κ_ν^{-1/2} E_ν
/// are simultaneously G0-orthonormal and G1-orthogonal with ⟨e_ν,e_ν⟩₁ = h(ν).
#[derive(Debug, Clone)]
pub struct PairGrowth {
    pub h: Vec<f64>,
    pub basis: PairMap,
}

pub fn extract_pair_growth(pair: &GramPair) -> Result<PairGrowth, HilbertError> {
    let riesz = riesz_operator(pair)?;
    let n = pair.dim();
    let mut basis = DMatrix::zeros(n, n);
    let mut h = Vec::with_capacity(n);
    for k in 0..n {
        let kappa = riesz.kappas[k];
        h.push(1.0 / kappa);
        let col = riesz.eigenvectors.column(k) / kappa.sqrt();
        basis.set_column(k, &col);
    }
    Ok(PairGrowth { h, basis: PairMap { matrix: basis, description: "pair growth basis".into() } })
}

/// Report of the growth-equivalence test behind the pair-isomorphism
/// criterion: c₀ collects the four operator norms of T and T⁻¹ at the two
/// levels, and the pair growths must agree within c = c₀⁴ on the window.
///
/// A window constant computed for T on the full window always dominates the
/// window ratios it was derived from, so the non-isomorphism evidence is a
/// stability test: the constant from the half window (T restricted to the
/// leading N/2 coordinates) must already cover the full window, and c₀ must
/// not drift between the two windows.
#[derive(Debug, Clone, Serialize)]
pub struct PairIsoReport {
    pub c0: f64,
    /// c₀⁴, the constant in the conclusion.
    pub c: f64,
    /// Whether (1/c) f ≤ g ≤ c f holds at every window index with the
    /// full-window constant.
    pub holds_on_window: bool,
    /// c₀ recomputed from the leading N/2 coordinates.
    pub c0_half_window: f64,
    /// Whether the half-window constant still covers the full window; a
    /// failure here is non-isomorphism evidence.
    pub holds_with_half_window_constant: bool,
    /// c₀ changed by less than 1% between the half and full windows.
    pub stability_flag: bool,
    /// max over the window of max(f/g, g/f).
    pub worst_ratio: f64,
}

pub fn pair_isomorphism_equivalence_check(
    f: &[f64],
    g: &[f64],
    t: &DMatrix<f64>,
) -> Result<PairIsoReport, HilbertError> {
    let n = f.len();
    if g.len() != n || t.nrows() != n || t.ncols() != n {
        return Err(HilbertError::DimensionMismatch(format!(
            "f has {n} entries, g has {}, T is {:?}",
            g.len(),
            t.shape()
        )));
    }
    let c0 = pair_map_constant(f, g, t)?;
    let half = n / 2;
    let c0_half = if half >= 1 {
        pair_map_constant(&f[..half], &g[..half], &t.view((0, 0), (half, half)).into_owned())?
    } else {
        c0
    };
    let c = c0.powi(4);
    let c_half = c0_half.powi(4);
    let mut worst = 0.0_f64;
    for i in 0..n {
        worst = worst.max((f[i] / g[i]).max(g[i] / f[i]));
    }
    Ok(PairIsoReport {
        c0,
        c,
        holds_on_window: worst <= c,
        c0_half_window: c0_half,
        holds_with_half_window_constant: worst <= c_half,
        stability_flag: c0 <= c0_half * 1.01,
        worst_ratio: worst,
    })
}

/// max(‖T‖₀, ‖T⁻¹‖₀, ‖T‖_{f→g}, ‖T⁻¹‖_{g→f}).
fn pair_map_constant(f: &[f64], g: &[f64], t: &DMatrix<f64>) -> Result<f64, HilbertError> {
    let t_inv = t.clone().try_inverse().ok_or(HilbertError::SingularMap)?;
    let fwd = WeightedNormContext::new(f.to_vec(), g.to_vec())
        .map_err(|_| HilbertError::InvalidWeights)?;
    let bwd = WeightedNormContext::new(g.to_vec(), f.to_vec())
        .map_err(|_| HilbertError::InvalidWeights)?;
    let norm0 = linalg::spectral_norm(t);
    let norm0_inv = linalg::spectral_norm(&t_inv);
    let norm1 = weighted_operator_norm(t, &fwd, Level::One).expect("checked dims");
    let norm1_inv = weighted_operator_norm(&t_inv, &bwd, Level::One).expect("checked dims");
    Ok(norm0.max(norm0_inv).max(norm1).max(norm1_inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{random_orthogonal, random_symmetric};
    use approx::assert_relative_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn e(n: usize, i: usize) -> DVector<f64> {
        DVector::from_fn(n, |k, _| if k == i { 1.0 } else { 0.0 })
    }

    #[test]
    fn inner_product_hand_values() {
        let s = HilbertScale::new(vec![1.0, 2.0, 3.0], 1.0).unwrap();
        assert_relative_eq!(s.inner_product(&e(3, 0), &e(3, 0)).unwrap(), 1.0);

        let s = HilbertScale::new(vec![1.0, 4.0], 0.5).unwrap();
        assert_relative_eq!(s.inner_product(&e(2, 1), &e(2, 1)).unwrap(), 2.0);

        // r = 0 reduces to the Euclidean product for any weights.
        let s = HilbertScale::new(vec![5.0, 9.0], 0.0).unwrap();
        let x = DVector::from_vec(vec![1.0, 2.0]);
        let y = DVector::from_vec(vec![-3.0, 4.0]);
        assert_relative_eq!(s.inner_product(&x, &y).unwrap(), 5.0);
    }

    #[test]
    fn inner_product_dimension_mismatch() {
        let s = HilbertScale::new(vec![1.0, 2.0], 1.0).unwrap();
        assert!(s.inner_product(&e(3, 0), &e(3, 0)).is_err());
    }

    #[test]
    fn inclusion_norm_is_at_most_one_for_heavy_weights() {
        // h >= 1 and s < r: the inclusion H_r → H_s has norm
        // max h^{(s-r)/2} <= 1.
        let s = HilbertScale::new(vec![1.0, 4.0, 9.0], 1.0).unwrap();
        let norm = s.inclusion_norm(0.0);
        assert_relative_eq!(norm, 1.0);
        let s2 = s.at_level(2.0);
        assert!(s2.inclusion_norm(1.0) <= 1.0);
    }

    #[test]
    fn level_shift_is_isometry_between_shifted_pairs() {
        let h = vec![1.0, 4.0, 9.0];
        let scale = HilbertScale::new(h.clone(), 0.0).unwrap();
        let phi = level_shift_isometry(&scale, 1.0);
        // e2 ↦ (1/2) e2 and the image has unit H_1-norm.
        assert_relative_eq!(phi.matrix[(1, 1)], 0.5);
        let h1 = scale.at_level(1.0);
        let x = e(3, 1);
        let image = &phi.matrix * &x;
        assert_relative_eq!(h1.norm(&image).unwrap(), scale.norm(&x).unwrap());
        // Isometry on the second level too: H_1 norm of x vs H_2 norm of φx.
        let h2 = scale.at_level(2.0);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let y = DVector::from_fn(3, |_, _| crate::linalg::standard_normal(&mut rng));
        assert_relative_eq!(
            h2.norm(&(&phi.matrix * &y)).unwrap(),
            h1.norm(&y).unwrap(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn level_shift_zero_is_identity() {
        let scale = HilbertScale::new(vec![1.0, 4.0], 0.0).unwrap();
        let phi = level_shift_isometry(&scale, 0.0);
        assert_eq!(phi.matrix, DMatrix::identity(2, 2));
    }

    #[test]
    fn level_shift_composes_additively() {
        let scale = HilbertScale::new((1..=10).map(|nu| (nu * nu) as f64).collect(), 0.0).unwrap();
        let a = level_shift_isometry(&scale, 0.5);
        let b = level_shift_isometry(&scale, 0.5);
        let c = level_shift_isometry(&scale, 1.0);
        assert!((&a.matrix * &b.matrix - &c.matrix).norm() < 1e-14);
    }

    #[test]
    fn riesz_operator_diagonal_case() {
        let h = vec![1.0, 4.0, 9.0];
        let pair = GramPair::from_weights(&h).unwrap();
        let r = riesz_operator(&pair).unwrap();
        for (i, &hv) in h.iter().enumerate() {
            assert_relative_eq!(r.t[(i, i)], 1.0 / hv, max_relative = 1e-12);
        }
        assert_relative_eq!(r.kappas[0], 1.0, max_relative = 1e-12);
        assert_relative_eq!(r.kappas[2], 1.0 / 9.0, max_relative = 1e-12);
    }

    #[test]
    fn riesz_operator_equal_grams_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let q = random_orthogonal(5, &mut rng);
        let g = &q * DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 2.0, 3.0, 4.0, 5.0]))
            * q.transpose();
        let pair = GramPair::new(g.clone(), g).unwrap();
        let r = riesz_operator(&pair).unwrap();
        assert!((r.t - DMatrix::<f64>::identity(5, 5)).norm() < 1e-10);
        for k in &r.kappas {
            assert_relative_eq!(*k, 1.0, max_relative = 1e-10);
        }
    }

    #[test]
    fn riesz_operator_defines_the_zero_inner_product() {
        // ⟨ξ,η⟩₀ = ⟨ξ,Tη⟩₁ on random vectors.
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let n = 8;
        let q = random_orthogonal(n, &mut rng);
        let d0: Vec<f64> = (1..=n).map(|i| 0.5 + i as f64).collect();
        let g0 = &q * DMatrix::from_diagonal(&DVector::from_vec(d0)) * q.transpose();
        let base = random_symmetric(n, &mut rng);
        let g1 = &base * base.transpose() + DMatrix::identity(n, n);
        let pair = GramPair::new(g0.clone(), g1.clone()).unwrap();
        let r = riesz_operator(&pair).unwrap();
        assert!((&g1 * &r.t - &g0).norm() / g0.norm() < 1e-10);
        for _ in 0..100 {
            let xi = DVector::from_fn(n, |_, _| crate::linalg::standard_normal(&mut rng));
            let eta = DVector::from_fn(n, |_, _| crate::linalg::standard_normal(&mut rng));
            let lhs = (xi.transpose() * &g0 * &eta)[(0, 0)];
            let rhs = (xi.transpose() * &g1 * (&r.t * &eta))[(0, 0)];
            assert_relative_eq!(lhs, rhs, max_relative = 1e-9, epsilon = 1e-9);
        }
    }

    #[test]
    fn riesz_rejects_singular_g1() {
        let g0 = DMatrix::identity(2, 2);
        let g1 = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0]);
        assert!(GramPair::new(g0, g1).is_err());
    }

    #[test]
    fn riesz_eigenvalues_match_generalized_eigenvalue_oracle() {
        // The kappas are the generalized eigenvalues of (G0, G1): check
        // det(G0 - κ G1) ≈ 0 through the residual ‖(G0 - κ G1) v‖.
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for n in [5, 10, 20] {
            let q = random_orthogonal(n, &mut rng);
            let g0 = &q
                * DMatrix::from_diagonal(&DVector::from_iterator(
                    n,
                    (1..=n).map(|i| 1.0 + i as f64),
                ))
                * q.transpose();
            let s = random_symmetric(n, &mut rng);
            let g1 = &s * s.transpose() + DMatrix::identity(n, n) * 2.0;
            let pair = GramPair::new(g0.clone(), g1.clone()).unwrap();
            let r = riesz_operator(&pair).unwrap();
            for k in 0..n {
                let v = r.eigenvectors.column(k);
                let resid = (&g0 * v - &g1 * v * r.kappas[k]).norm();
                assert!(resid < 1e-9 * (1.0 + g0.norm()), "resid {resid} at {k}");
            }
        }
    }

    #[test]
    fn extract_pair_growth_diagonal() {
        let pair = GramPair::from_weights(&[1.0, 4.0, 9.0]).unwrap();
        let pg = extract_pair_growth(&pair).unwrap();
        assert_relative_eq!(pg.h[0], 1.0, max_relative = 1e-10);
        assert_relative_eq!(pg.h[1], 4.0, max_relative = 1e-10);
        assert_relative_eq!(pg.h[2], 9.0, max_relative = 1e-10);
        // Basis is the identity up to sign.
        for k in 0..3 {
            assert_relative_eq!(pg.basis.matrix[(k, k)].abs(), 1.0, max_relative = 1e-10);
        }
    }

    #[test]
    fn extract_pair_growth_recovers_conjugated_weights() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let h: Vec<f64> = (1..=12).map(|nu| (nu * nu) as f64).collect();
        let q = random_orthogonal(12, &mut rng);
        let g0 = q.transpose() * &q; // = I, but written as a conjugation
        let g1 = q.transpose() * DMatrix::from_diagonal(&DVector::from_column_slice(&h)) * &q;
        let pair = GramPair::new(g0.clone(), g1.clone()).unwrap();
        let pg = extract_pair_growth(&pair).unwrap();
        for (rec, expect) in pg.h.iter().zip(&h) {
            assert_relative_eq!(rec, expect, max_relative = 1e-9);
        }
        // Isometry certificate: Gram under G0 is the identity, under G1 the
        // diagonal of h.
        let b = &pg.basis.matrix;
        let gram0 = b.transpose() * &g0 * b;
        let gram1 = b.transpose() * &g1 * b;
        assert!((gram0 - DMatrix::<f64>::identity(12, 12)).norm() < 1e-9);
        for i in 0..12 {
            assert_relative_eq!(gram1[(i, i)], pg.h[i], max_relative = 1e-9);
        }
    }

    #[test]
    fn extract_pair_growth_with_repeated_weights() {
        // Ties in the kappas: the growth sample is well defined up to the
        // (stable) ordering of equal values.
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let h = vec![1.0, 4.0, 4.0, 9.0];
        let q = random_orthogonal(4, &mut rng);
        let g0 = q.transpose() * &q;
        let g1 = q.transpose() * DMatrix::from_diagonal(&DVector::from_column_slice(&h)) * &q;
        let pg = extract_pair_growth(&GramPair::new(g0, g1).unwrap()).unwrap();
        for (rec, expect) in pg.h.iter().zip(&h) {
            assert_relative_eq!(rec, expect, max_relative = 1e-9);
        }
    }

    #[test]
    fn degenerate_pair_has_constant_growth() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let s = random_symmetric(6, &mut rng);
        let g = &s * s.transpose() + DMatrix::identity(6, 6);
        let pair = GramPair::new(g.clone(), g).unwrap();
        let pg = extract_pair_growth(&pair).unwrap();
        for h in pg.h {
            assert_relative_eq!(h, 1.0, max_relative = 1e-9);
        }
    }

    #[test]
    fn pair_iso_identity_gives_unit_constant() {
        let f: Vec<f64> = (1..=10).map(|nu| nu as f64).collect();
        let r =
            pair_isomorphism_equivalence_check(&f, &f, &DMatrix::identity(10, 10)).unwrap();
        assert_relative_eq!(r.c0, 1.0, max_relative = 1e-12);
        assert!(r.holds_on_window);
        assert!(r.stability_flag);
        assert!(r.holds_with_half_window_constant);
    }

    #[test]
    fn pair_iso_scaled_weights() {
        // f = ν², g = 2ν², T = Id: c₀ = √2 from the weighted norm, and the
        // conclusion holds with c = c₀⁴ = 4 ≥ 2.
        let f: Vec<f64> = (1..=10).map(|nu| (nu * nu) as f64).collect();
        let g: Vec<f64> = f.iter().map(|v| 2.0 * v).collect();
        let r = pair_isomorphism_equivalence_check(&f, &g, &DMatrix::identity(10, 10)).unwrap();
        assert_relative_eq!(r.c0, 2f64.sqrt(), max_relative = 1e-12);
        assert!(r.c >= 2.0);
        assert!(r.holds_on_window);
        assert!(r.stability_flag);
        // The identity certifies equivalent growths as a pair isomorphism.
        assert!(r.holds_with_half_window_constant);
    }

    #[test]
    fn pair_iso_detects_inequivalent_growths() {
        // f = ν against g = e^ν with T = Id: the full-window constant c₀⁴
        // trivially covers the ratios it was built from, but it keeps
        // drifting with the window, and the half-window constant already
        // fails to cover the full window.
        let n = 20;
        let f: Vec<f64> = (1..=n).map(|nu| nu as f64).collect();
        let g: Vec<f64> = (1..=n).map(|nu| (nu as f64).exp()).collect();
        let r = pair_isomorphism_equivalence_check(&f, &g, &DMatrix::identity(n, n)).unwrap();
        assert!(!r.holds_with_half_window_constant);
        assert!(!r.stability_flag);
        assert!(r.worst_ratio > r.c0_half_window.powi(4));
    }

    #[test]
    fn pair_iso_rejects_singular_map() {
        let f = vec![1.0, 2.0];
        let t = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0]);
        assert!(matches!(
            pair_isomorphism_equivalence_check(&f, &f, &t),
            Err(HilbertError::SingularMap)
        ));
    }

    #[test]
    fn gram_pair_json_round_trip() {
        let pair = GramPair::from_weights(&[1.0, 2.0, 5.0]).unwrap();
        let json = pair.to_json();
        assert_eq!(json["n"], 3);
        let back = GramPair::from_json(&json).unwrap();
        assert_eq!(back.g0(), pair.g0());
        assert_eq!(back.g1(), pair.g1());
    }
}
