//! Schur/Hadamard multipliers with two-sided evidence: factorization
//! certificates give certified upper bounds on the multiplier norm
//! (vectors f_ν, g_μ with b_{μν} = ⟨g_μ, f_ν⟩ bound it by κ₁κ₂), while an
//! adversarial probe search over structured contractions produces witnessed
//! lower bounds. Exact finite Schur norms are a semidefinite problem and
//! out of scope; the two sides are only required to be mutually consistent.
//!
//! The iterated-limit test is the obstruction route: a Schur multiplier
//! whose row and column limits both exist must have equal iterated limits,
//! so a persistent gap certifies non-membership. The classical example
//! μ/(μ+ν) shows a gap of one.

use crate::linalg;
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SchurError {
    #[error("sequences must be strictly positive on the window")]
    NonPositiveSequence,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("L2 norm condition violated: ‖{which}‖² = {norm_sq:.6e} exceeds kappa = {kappa:.6e}")]
    NormConditionViolated { which: String, norm_sq: f64, kappa: f64 },
    #[error("certificate does not reproduce the matrix entries (max error {0:.3e})")]
    CertificateMismatch(f64),
    #[error("certificate violates its own norm bounds: {0}")]
    CertificateNormViolation(String),
    #[error("adaptive quadrature failed to converge (integrand may not be square integrable)")]
    QuadratureFailure,
    #[error("window {requested} exceeds the materialized window {available}")]
    WindowExceeded { requested: u64, available: u64 },
}

/// Positive sequence, evaluable at any 1-based index.
#[derive(Clone)]
pub struct Sequence(Arc<dyn Fn(u64) -> f64 + Send + Sync>);

impl Sequence {
    pub fn from_fn(f: impl Fn(u64) -> f64 + Send + Sync + 'static) -> Self {
        Sequence(Arc::new(f))
    }

    pub fn linear() -> Self {
        Self::from_fn(|nu| nu as f64)
    }

    pub fn constant(c: f64) -> Self {
        Self::from_fn(move |_| c)
    }

    pub fn from_vec(values: Vec<f64>) -> Self {
        Self::from_fn(move |nu| values[(nu - 1) as usize])
    }

    pub fn at(&self, nu: u64) -> f64 {
        (self.0)(nu)
    }

    fn window(&self, n: u64) -> Result<Vec<f64>, SchurError> {
        let vals: Vec<f64> = (1..=n).map(|nu| self.at(nu)).collect();
        if vals.iter().any(|&v| !(v > 0.0)) {
            return Err(SchurError::NonPositiveSequence);
        }
        Ok(vals)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Provenance {
    L2Functions,
    Corollary53,
    ExampleIII,
    Obstruction,
    Custom,
}

enum Entries {
    Generator(Arc<dyn Fn(u64, u64) -> f64 + Send + Sync>),
    Dense(Arc<DMatrix<f64>>),
}

/// A candidate Schur multiplier: entry generator (μ, ν) ↦ b_{μν}, evaluable
/// on any finite window (dense-backed matrices are limited to their
/// materialized window).
pub struct SchurMatrix {
    entries: Entries,
    pub provenance: Provenance,
}

impl SchurMatrix {
    pub fn from_generator(
        f: impl Fn(u64, u64) -> f64 + Send + Sync + 'static,
        provenance: Provenance,
    ) -> Self {
        SchurMatrix { entries: Entries::Generator(Arc::new(f)), provenance }
    }

    pub fn from_dense(m: DMatrix<f64>, provenance: Provenance) -> Self {
        SchurMatrix { entries: Entries::Dense(Arc::new(m)), provenance }
    }

    /// The matrix μ/(μ+ν), the standard non-multiplier.
    pub fn obstruction() -> Self {
        Self::from_generator(
            |mu, nu| mu as f64 / (mu as f64 + nu as f64),
            Provenance::Obstruction,
        )
    }

    /// Entry at 1-based (μ, ν).
    pub fn entry(&self, mu: u64, nu: u64) -> Result<f64, SchurError> {
        match &self.entries {
            Entries::Generator(f) => Ok(f(mu, nu)),
            Entries::Dense(m) => {
                if mu as usize > m.nrows() || nu as usize > m.ncols() {
                    return Err(SchurError::WindowExceeded {
                        requested: mu.max(nu),
                        available: m.nrows().min(m.ncols()) as u64,
                    });
                }
                Ok(m[((mu - 1) as usize, (nu - 1) as usize)])
            }
        }
    }

    /// Square window of the first n rows and columns.
    pub fn window(&self, n: u64) -> Result<DMatrix<f64>, SchurError> {
        match &self.entries {
            Entries::Generator(f) => {
                Ok(DMatrix::from_fn(n as usize, n as usize, |i, j| f(i as u64 + 1, j as u64 + 1)))
            }
            Entries::Dense(m) => {
                if n as usize > m.nrows() || n as usize > m.ncols() {
                    return Err(SchurError::WindowExceeded {
                        requested: n,
                        available: m.nrows().min(m.ncols()) as u64,
                    });
                }
                Ok(m.view((0, 0), (n as usize, n as usize)).into_owned())
            }
        }
    }
}

/// Entry-wise product b ⊙ a on the window of a.
pub fn hadamard(b: &SchurMatrix, a: &DMatrix<f64>) -> Result<DMatrix<f64>, SchurError> {
    let mut out = a.clone();
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            out[(i, j)] = b.entry(i as u64 + 1, j as u64 + 1)? * a[(i, j)];
        }
    }
    Ok(out)
}

/// Entry-wise product of two plain matrices.
pub fn hadamard_dense(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<DMatrix<f64>, SchurError> {
    if a.shape() != b.shape() {
        return Err(SchurError::DimensionMismatch(format!("{:?} vs {:?}", a.shape(), b.shape())));
    }
    Ok(DMatrix::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)] * b[(i, j)]))
}

// ---------------------------------------------------------------------------
// L² functions and the Schur criterion
// ---------------------------------------------------------------------------

/// Functions on an interval used in the integral form of the Schur
/// criterion.
#[derive(Debug, Clone, Copy)]
pub enum L2Function {
    Constant(f64),
    /// s ↦ coeff · e^{−rate s}.
    ScaledExp { coeff: f64, rate: f64 },
}

impl L2Function {
    pub fn eval(&self, s: f64) -> f64 {
        match self {
            L2Function::Constant(c) => *c,
            L2Function::ScaledExp { coeff, rate } => coeff * (-rate * s).exp(),
        }
    }
}

/// Integration interval; the right endpoint may be infinite.
#[derive(Debug, Clone, Copy)]
pub struct Interval {
    pub a: f64,
    pub b: f64,
}

impl Interval {
    pub fn unit() -> Self {
        Interval { a: 0.0, b: 1.0 }
    }

    pub fn half_line() -> Self {
        Interval { a: 0.0, b: f64::INFINITY }
    }
}

const QUAD_TOL: f64 = 1e-11;

/// ∫ f(s) g(s) ds over the interval by adaptive Simpson; improper upper
/// limits are folded to [0,1) by s = a + t/(1−t).
fn integrate_product(f: &L2Function, g: &L2Function, iv: Interval) -> Result<f64, SchurError> {
    if iv.b.is_finite() {
        adaptive_simpson(&|s| f.eval(s) * g.eval(s), iv.a, iv.b, QUAD_TOL, 48)
    } else {
        let h = |t: f64| {
            if t >= 1.0 {
                return 0.0;
            }
            let s = iv.a + t / (1.0 - t);
            let jac = 1.0 / ((1.0 - t) * (1.0 - t));
            f.eval(s) * g.eval(s) * jac
        };
        adaptive_simpson(&h, 0.0, 1.0, QUAD_TOL, 48)
    }
}

fn adaptive_simpson(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
    depth: usize,
) -> Result<f64, SchurError> {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, depth)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: usize,
) -> Result<f64, SchurError> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    if !flm.is_finite() || !frm.is_finite() {
        return Err(SchurError::QuadratureFailure);
    }
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let err = left + right - whole;
    if err.abs() <= 15.0 * tol {
        return Ok(left + right + err / 15.0);
    }
    if depth == 0 {
        return Err(SchurError::QuadratureFailure);
    }
    let l = simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)?;
    let r = simpson_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)?;
    Ok(l + r)
}

/// The Schur criterion in integral form: with ‖f_ν‖² ≤ κ and ‖g_μ‖² ≤ κ in
/// L²(I), the matrix b_{μν} = ∫ g_μ f_ν is a Schur multiplier with norm at
/// most κ. Returns the window matrix (rows μ over gs, columns ν over fs)
/// and the certified κ.
pub fn schur_from_l2(
    fs: &[L2Function],
    gs: &[L2Function],
    interval: Interval,
) -> Result<(SchurMatrix, f64), SchurError> {
    let mut kappa = 0.0_f64;
    for (which, funcs) in [("f", fs), ("g", gs)] {
        for (i, func) in funcs.iter().enumerate() {
            let norm_sq = integrate_product(func, func, interval)?;
            if !norm_sq.is_finite() {
                return Err(SchurError::NormConditionViolated {
                    which: format!("{which}_{}", i + 1),
                    norm_sq,
                    kappa: f64::INFINITY,
                });
            }
            kappa = kappa.max(norm_sq);
        }
    }
    let mut b = DMatrix::zeros(gs.len(), fs.len());
    for (mu, g) in gs.iter().enumerate() {
        for (nu, f) in fs.iter().enumerate() {
            b[(mu, nu)] = integrate_product(g, f, interval)?;
        }
    }
    Ok((SchurMatrix::from_dense(b, Provenance::L2Functions), kappa))
}

// ---------------------------------------------------------------------------
// Factorization certificates
// ---------------------------------------------------------------------------

/// Vectors realizing b_{μν} = ⟨g_μ, f_ν⟩ on a window, with norm caps κ₁ for
/// the f's and κ₂ for the g's; the implied multiplier bound is κ₁κ₂.
#[derive(Debug, Clone)]
pub struct FactorizationCertificate {
    /// d × n matrix, column ν = f_ν.
    pub f_vectors: DMatrix<f64>,
    /// d × m matrix, column μ = g_μ.
    pub g_vectors: DMatrix<f64>,
    pub kappa1: f64,
    pub kappa2: f64,
}

impl FactorizationCertificate {
    pub fn bound(&self) -> f64 {
        self.kappa1 * self.kappa2
    }

    /// The matrix the certificate claims: entries ⟨g_μ, f_ν⟩.
    pub fn reproduce(&self) -> DMatrix<f64> {
        self.g_vectors.transpose() * &self.f_vectors
    }

    fn check_norms(&self) -> Result<(), SchurError> {
        let tol = 1.0 + 1e-12;
        for nu in 0..self.f_vectors.ncols() {
            let n = self.f_vectors.column(nu).norm();
            if n > self.kappa1 * tol {
                return Err(SchurError::CertificateNormViolation(format!(
                    "‖f_{}‖ = {n} > kappa1 = {}",
                    nu + 1,
                    self.kappa1
                )));
            }
        }
        for mu in 0..self.g_vectors.ncols() {
            let n = self.g_vectors.column(mu).norm();
            if n > self.kappa2 * tol {
                return Err(SchurError::CertificateNormViolation(format!(
                    "‖g_{}‖ = {n} > kappa2 = {}",
                    mu + 1,
                    self.kappa2
                )));
            }
        }
        Ok(())
    }
}

/// Upper-bound certificate: a single factorization or a sum of
/// factorizations (the multiplier algebra adds bounds along sums).
#[derive(Debug, Clone)]
pub enum SchurCertificate {
    Single(FactorizationCertificate),
    Sum(Vec<FactorizationCertificate>),
}

impl SchurCertificate {
    pub fn bound(&self) -> f64 {
        match self {
            SchurCertificate::Single(c) => c.bound(),
            SchurCertificate::Sum(cs) => cs.iter().map(|c| c.bound()).sum(),
        }
    }

    pub fn reproduce(&self) -> DMatrix<f64> {
        match self {
            SchurCertificate::Single(c) => c.reproduce(),
            SchurCertificate::Sum(cs) => {
                let mut acc = cs[0].reproduce();
                for c in &cs[1..] {
                    acc += c.reproduce();
                }
                acc
            }
        }
    }

    fn check_norms(&self) -> Result<(), SchurError> {
        match self {
            SchurCertificate::Single(c) => c.check_norms(),
            SchurCertificate::Sum(cs) => cs.iter().try_for_each(|c| c.check_norms()),
        }
    }
}

/// Factor a positive semidefinite Gram matrix as XᵀX with X of full height
/// (small negative eigenvalues from roundoff are clipped).
fn gram_factor(g: &DMatrix<f64>) -> DMatrix<f64> {
    let sym = (g + g.transpose()) * 0.5;
    let (vals, vecs) = linalg::sym_eigen_ascending(&sym);
    let d = DMatrix::from_diagonal(&DVector::from_iterator(
        vals.len(),
        vals.iter().map(|&v| v.max(0.0).sqrt()),
    ));
    d * vecs.transpose()
}

/// The closed-form multiplier √(a_μ b_ν)/(a_μ + b_ν) with its exponential
/// L² factorization: both families have norm² = 1/2, so the bound is 1/2.
pub fn corollary_matrix(
    a: &Sequence,
    b: &Sequence,
    window: u64,
) -> Result<(SchurMatrix, SchurCertificate), SchurError> {
    let av = a.window(window)?;
    let bv = b.window(window)?;
    let matrix = {
        let (a, b) = (a.clone(), b.clone());
        SchurMatrix::from_generator(
            move |mu, nu| {
                let (x, y) = (a.at(mu), b.at(nu));
                (x * y).sqrt() / (x + y)
            },
            Provenance::Corollary53,
        )
    };
    // Joint Gram of {g_μ} ∪ {f_ν} for g_μ = √a_μ e^{-a_μ s}, f_ν likewise:
    // all inner products have the same closed form.
    let m = window as usize;
    let joint: Vec<f64> = av.iter().chain(&bv).copied().collect();
    let dim = joint.len();
    let gram = DMatrix::from_fn(dim, dim, |i, j| {
        (joint[i] * joint[j]).sqrt() / (joint[i] + joint[j])
    });
    let x = gram_factor(&gram);
    let g_vectors = x.columns(0, m).into_owned();
    let f_vectors = x.columns(m, m).into_owned();
    let kappa = 0.5_f64.sqrt();
    Ok((
        matrix,
        SchurCertificate::Single(FactorizationCertificate {
            f_vectors,
            g_vectors,
            kappa1: kappa,
            kappa2: kappa,
        }),
    ))
}

/// The composite multiplier √(a_μ b_ν)/(a_μ+b_ν) · (arctan a_μ + arctan b_ν)
/// with the algebra certificate: the sum of two product factorizations,
/// (1/2)(π/2) each, for a total bound of π/2.
pub fn example_iii_matrix(
    a: &Sequence,
    b: &Sequence,
    window: u64,
) -> Result<(SchurMatrix, SchurCertificate), SchurError> {
    let (_, base_cert) = corollary_matrix(a, b, window)?;
    let SchurCertificate::Single(base) = base_cert else { unreachable!() };
    let av = a.window(window)?;
    let bv = b.window(window)?;
    let matrix = {
        let (a, b) = (a.clone(), b.clone());
        SchurMatrix::from_generator(
            move |mu, nu| {
                let (x, y) = (a.at(mu), b.at(nu));
                (x * y).sqrt() / (x + y) * (x.atan() + y.atan())
            },
            Provenance::ExampleIII,
        )
    };
    let half_pi = std::f64::consts::FRAC_PI_2;
    // Part one: scale each g_μ by arctan a_μ (rank-one factor in the
    // product certificate); part two scales each f_ν by arctan b_ν.
    let mut g1 = base.g_vectors.clone();
    for (mu, a_mu) in av.iter().enumerate() {
        g1.column_mut(mu).scale_mut(a_mu.atan());
    }
    let part1 = FactorizationCertificate {
        f_vectors: base.f_vectors.clone(),
        g_vectors: g1,
        kappa1: base.kappa1,
        kappa2: base.kappa2 * half_pi,
    };
    let mut f2 = base.f_vectors.clone();
    for (nu, b_nu) in bv.iter().enumerate() {
        f2.column_mut(nu).scale_mut(b_nu.atan());
    }
    let part2 = FactorizationCertificate {
        f_vectors: f2,
        g_vectors: base.g_vectors,
        kappa1: base.kappa1 * half_pi,
        kappa2: base.kappa2,
    };
    Ok((matrix, SchurCertificate::Sum(vec![part1, part2])))
}

// ---------------------------------------------------------------------------
// Upper-bound validation and lower-bound probe search
// ---------------------------------------------------------------------------

/// Fixed, seeded probe set for the lower-bound search, documented so growth
/// tables are reproducible: the normalized all-ones matrix, the identity,
/// the Hilbert matrix 1/(μ+ν−1), seeded ±1 rank-one sign patterns, and
/// seeded random orthogonal matrices; every probe is refined by a few
/// rounds of alternating power iteration.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ProbeConfig {
    pub seed: u64,
    pub sign_probes: usize,
    pub orthogonal_probes: usize,
    pub refine_steps: usize,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig { seed: 0x5eed, sign_probes: 32, orthogonal_probes: 32, refine_steps: 5 }
    }
}

/// Probes paired with a certified upper bound on their operator norm, so
/// every ratio ‖b⊙a‖_low / ‖a‖_up is a valid lower bound for the
/// multiplier norm. Rank-one and orthogonal probes have exact norm 1; the
/// Hilbert matrix is covered by its classical bound π.
fn probe_set(n: usize, cfg: &ProbeConfig) -> Vec<(DMatrix<f64>, f64)> {
    let mut probes = Vec::new();
    probes.push((DMatrix::from_element(n, n, 1.0 / n as f64), 1.0));
    probes.push((DMatrix::identity(n, n), 1.0));
    probes.push((DMatrix::from_fn(n, n, |i, j| 1.0 / (i + j + 1) as f64), std::f64::consts::PI));
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.sign_probes {
        let x = DVector::from_fn(n, |_, _| if rng.gen::<bool>() { 1.0 } else { -1.0 });
        let y = DVector::from_fn(n, |_, _| if rng.gen::<bool>() { 1.0 } else { -1.0 });
        probes.push((&x * y.transpose() / n as f64, 1.0));
    }
    for _ in 0..cfg.orthogonal_probes {
        probes.push((linalg::random_orthogonal(n, &mut rng), 1.0));
    }
    probes
}

/// Iteration cap for the certified numerator estimates in the probe
/// search; stopping early only weakens a lower bound.
const PROBE_NORM_TOL: f64 = 1e-9;
const PROBE_NORM_ITERS: usize = 300;

#[derive(Debug, Clone, Serialize)]
pub struct UpperBoundReport {
    pub bound: f64,
    /// Largest ‖b⊙a‖/‖a‖ seen over the probe set (expected ≤ bound).
    pub max_probe_ratio: f64,
    pub pass: bool,
}

const PROBE_SLACK: f64 = 1e-9;

/// Validate a certificate against the matrix window and the probe set,
/// returning the certified upper bound κ₁κ₂.
pub fn grothendieck_upper_bound(
    cert: &SchurCertificate,
    b: &SchurMatrix,
    window: u64,
    probes: &ProbeConfig,
) -> Result<UpperBoundReport, SchurError> {
    cert.check_norms()?;
    let b_win = b.window(window)?;
    let rep = cert.reproduce();
    if rep.nrows() < b_win.nrows() || rep.ncols() < b_win.ncols() {
        return Err(SchurError::DimensionMismatch(format!(
            "certificate covers {:?} but the window is {:?}",
            rep.shape(),
            b_win.shape()
        )));
    }
    let mut mismatch = 0.0_f64;
    for i in 0..b_win.nrows() {
        for j in 0..b_win.ncols() {
            mismatch = mismatch.max((rep[(i, j)] - b_win[(i, j)]).abs());
        }
    }
    if mismatch > 1e-10 {
        return Err(SchurError::CertificateMismatch(mismatch));
    }
    let bound = cert.bound();
    let mut max_ratio = 0.0_f64;
    for (probe, _) in probe_set(window as usize, probes) {
        let denom = linalg::spectral_norm(&probe);
        let num = linalg::spectral_norm(&hadamard_dense(&b_win, &probe)?);
        if denom > 0.0 {
            max_ratio = max_ratio.max(num / denom);
        }
    }
    Ok(UpperBoundReport {
        bound,
        max_probe_ratio: max_ratio,
        pass: max_ratio <= bound * (1.0 + PROBE_SLACK),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct LowerBound {
    pub value: f64,
    pub window: u64,
    pub witness: String,
}

/// Certified lower bound on the multiplier norm over a window: the best
/// ratio ‖b⊙a‖/‖a‖ achieved by the probe set, refined by alternating
/// power iteration (a ← b ⊙ (u vᵀ) for the top singular pair (u, v) of
/// b ⊙ a). Numerators are capped power-iteration estimates (lower bounds),
/// denominators exact or certified upper bounds, so the result is always a
/// valid lower bound. Monotone under window nesting by zero-padding of
/// witnesses.
pub fn schur_norm_lower_bound(
    b: &SchurMatrix,
    window: u64,
    cfg: &ProbeConfig,
) -> Result<LowerBound, SchurError> {
    let b_win = b.window(window)?;
    let small = window <= 64;
    let numerator = |m: &DMatrix<f64>| -> f64 {
        if small {
            linalg::spectral_norm(m)
        } else {
            linalg::spectral_norm_lower(m, PROBE_NORM_TOL, PROBE_NORM_ITERS)
        }
    };
    let mut best = 0.0_f64;
    let mut witness = String::from("none");
    for (idx, (probe, denom0)) in probe_set(window as usize, cfg).into_iter().enumerate() {
        let mut a = probe;
        let mut denom_up = denom0;
        for step in 0..=cfg.refine_steps {
            if denom_up == 0.0 {
                break;
            }
            let image = hadamard_dense(&b_win, &a)?;
            let ratio = numerator(&image) / denom_up;
            let improved = ratio > best * (1.0 + 1e-9);
            if ratio > best {
                best = ratio;
                witness = format!("probe {idx} after {step} refinements");
            }
            if step == cfg.refine_steps || (step > 0 && !improved) {
                break;
            }
            // Steepest-growth refinement: replace a by b ⊙ (u vᵀ). The
            // refined probe's norm is covered by its Frobenius norm.
            let (_, top_u, top_v) = linalg::top_singular_triple(&image);
            a = hadamard_dense(&b_win, &(&top_u * top_v.transpose()))?;
            denom_up = a.norm();
        }
    }
    Ok(LowerBound { value: best, window, witness })
}

// ---------------------------------------------------------------------------
// Iterated limits and the obstruction demo
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LimitVerdict {
    Converged,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct IteratedLimitsReport {
    /// lim_μ lim_ν b_{μν}.
    pub l1: f64,
    /// lim_ν lim_μ b_{μν}.
    pub l2: f64,
    pub gap: f64,
    /// Extrapolation error estimates for (l1, l2).
    pub error_estimates: (f64, f64),
    pub verdict: LimitVerdict,
}

/// Richardson/Neville extrapolation of values sampled at indices k, fitted
/// as a polynomial in h = 1/k and evaluated at h = 0.
fn richardson_limit(samples: &[(u64, f64)]) -> (f64, f64) {
    let n = samples.len();
    let h: Vec<f64> = samples.iter().map(|&(k, _)| 1.0 / k as f64).collect();
    let mut t: Vec<f64> = samples.iter().map(|&(_, v)| v).collect();
    let mut prev_diag = t[n - 1];
    let mut err = f64::INFINITY;
    for j in 1..n {
        for i in (j..n).rev() {
            t[i] = (h[i - j] * t[i] - h[i] * t[i - 1]) / (h[i - j] - h[i]);
        }
        err = (t[n - 1] - prev_diag).abs();
        prev_diag = t[n - 1];
    }
    (t[n - 1], err)
}

/// Ratio between an outer index and the smallest inner window used for its
/// inner limit; inner windows then double.
const INNER_RATIO: u64 = 16;
const EXTRAP_POINTS: usize = 4;

/// Estimate both iterated limits of the entry generator by two-stage window
/// extrapolation; a gap beyond the extrapolation error is an obstruction
/// witness.
pub fn iterated_limits_check(
    b: &SchurMatrix,
    schedule: &[u64],
) -> Result<IteratedLimitsReport, SchurError> {
    if schedule.is_empty() || schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(SchurError::DimensionMismatch(
            "schedule must be nonempty and strictly increasing".into(),
        ));
    }
    let base = *schedule.last().unwrap();
    let outer: Vec<u64> = (0..EXTRAP_POINTS as u32).map(|j| base << j).collect();

    let limit_over = |inner_is_nu: bool| -> Result<(f64, f64), SchurError> {
        let mut outer_samples = Vec::with_capacity(outer.len());
        let mut inner_err = 0.0_f64;
        for &m in &outer {
            let mut inner_samples = Vec::with_capacity(EXTRAP_POINTS);
            for j in 0..EXTRAP_POINTS as u32 {
                let k = (INNER_RATIO * m) << j;
                let v = if inner_is_nu { b.entry(m, k)? } else { b.entry(k, m)? };
                inner_samples.push((k, v));
            }
            let (lim, err) = richardson_limit(&inner_samples);
            inner_err = inner_err.max(err);
            outer_samples.push((m, lim));
        }
        let (lim, outer_err) = richardson_limit(&outer_samples);
        Ok((lim, outer_err.max(inner_err)))
    };

    let (l1, e1) = limit_over(true)?;
    let (l2, e2) = limit_over(false)?;
    let scale = 1.0 + l1.abs().max(l2.abs());
    let verdict = if e1.max(e2) <= 0.02 * scale {
        LimitVerdict::Converged
    } else {
        LimitVerdict::Inconclusive
    };
    Ok(IteratedLimitsReport { l1, l2, gap: (l1 - l2).abs(), error_estimates: (e1, e2), verdict })
}

#[derive(Debug, Clone, Serialize)]
pub struct ObstructionRow {
    pub n: u64,
    pub lower_bound: f64,
    pub gap_witness: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ObstructionTable {
    pub rows: Vec<ObstructionRow>,
}

impl ObstructionTable {
    /// CSV with columns `n,lower_bound,gap_witness`.
    pub fn write_csv<W: std::io::Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "n,lower_bound,gap_witness")?;
        for r in &self.rows {
            writeln!(out, "{},{},{}", r.n, r.lower_bound, r.gap_witness)?;
        }
        Ok(())
    }
}

/// Growth table of lower bounds for the matrix μ/(μ+ν) over a window
/// schedule, paired with the iterated-limit gap. The gap is the actual
/// obstruction; the lower-bound growth is supplementary evidence.
pub fn obstruction_demo(
    schedule: &[u64],
    cfg: &ProbeConfig,
) -> Result<ObstructionTable, SchurError> {
    if schedule.is_empty() || schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(SchurError::DimensionMismatch(
            "schedule must be nonempty and strictly increasing".into(),
        ));
    }
    let b = SchurMatrix::obstruction();
    let mut rows = Vec::with_capacity(schedule.len());
    let mut running = 0.0_f64;
    for &n in schedule {
        let lb = schur_norm_lower_bound(&b, n, cfg)?;
        // A witness for a smaller window zero-pads into any larger one, so
        // the certified bound is monotone along the schedule.
        running = running.max(lb.value);
        let gap = iterated_limits_check(&b, &[n])?;
        rows.push(ObstructionRow { n, lower_bound: running, gap_witness: gap.gap });
    }
    Ok(ObstructionTable { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const PI: f64 = std::f64::consts::PI;

    fn small_probes() -> ProbeConfig {
        ProbeConfig { seed: 7, sign_probes: 8, orthogonal_probes: 8, refine_steps: 3 }
    }

    #[test]
    fn hadamard_with_ones_is_identity_map() {
        let ones = SchurMatrix::from_generator(|_, _| 1.0, Provenance::Custom);
        let a = DMatrix::from_fn(3, 3, |i, j| (i + 2 * j) as f64);
        assert_eq!(hadamard(&ones, &a).unwrap(), a);
        let zeros = SchurMatrix::from_generator(|_, _| 0.0, Provenance::Custom);
        assert_eq!(hadamard(&zeros, &a).unwrap(), DMatrix::zeros(3, 3));
    }

    #[test]
    fn hadamard_is_associative_and_commutative() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 5;
        let b = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0_f64));
        let bt = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0_f64));
        let a = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0_f64));
        let lhs = hadamard_dense(&hadamard_dense(&b, &bt).unwrap(), &a).unwrap();
        let rhs = hadamard_dense(&b, &hadamard_dense(&bt, &a).unwrap()).unwrap();
        // Associativity holds up to one rounding of each entry product.
        let err = crate::linalg::max_abs(&(lhs - rhs));
        assert!(err <= 1e-16, "associativity defect {err}");
        // Commutativity of entry products is exact in IEEE arithmetic.
        assert_eq!(hadamard_dense(&b, &bt).unwrap(), hadamard_dense(&bt, &b).unwrap());
    }

    #[test]
    fn l2_constants_on_unit_interval() {
        let fs = vec![L2Function::Constant(1.0); 3];
        let (b, kappa) = schur_from_l2(&fs, &fs, Interval::unit()).unwrap();
        assert_relative_eq!(kappa, 1.0, max_relative = 1e-10);
        for mu in 1..=3u64 {
            for nu in 1..=3u64 {
                assert_relative_eq!(b.entry(mu, nu).unwrap(), 1.0, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn l2_exponentials_match_closed_form() {
        let rates = [1.0_f64, 2.0, 3.0];
        let fs: Vec<L2Function> = rates
            .iter()
            .map(|&r| L2Function::ScaledExp { coeff: r.sqrt(), rate: r })
            .collect();
        let (b, kappa) = schur_from_l2(&fs, &fs, Interval::half_line()).unwrap();
        assert_relative_eq!(kappa, 0.5, max_relative = 1e-9);
        for (mu, &am) in rates.iter().enumerate() {
            for (nu, &bn) in rates.iter().enumerate() {
                let expect = (am * bn).sqrt() / (am + bn);
                let got = b.entry(mu as u64 + 1, nu as u64 + 1).unwrap();
                assert!((got - expect).abs() < 1e-9, "entry ({mu},{nu}): {got} vs {expect}");
            }
        }
    }

    #[test]
    fn l2_constant_on_half_line_fails() {
        let fs = vec![L2Function::Constant(1.0)];
        assert!(matches!(
            schur_from_l2(&fs, &fs, Interval::half_line()),
            Err(SchurError::QuadratureFailure)
        ));
    }

    #[test]
    fn corollary_matrix_hand_entries() {
        let (b, cert) =
            corollary_matrix(&Sequence::constant(1.0), &Sequence::constant(1.0), 4).unwrap();
        assert_relative_eq!(b.entry(1, 1).unwrap(), 0.5);
        assert_relative_eq!(cert.bound(), 0.5, max_relative = 1e-12);

        let (b, _) =
            corollary_matrix(&Sequence::constant(1.0), &Sequence::constant(4.0), 2).unwrap();
        assert_relative_eq!(b.entry(1, 1).unwrap(), 0.4);
    }

    #[test]
    fn corollary_certificate_reproduces_entries() {
        let (b, cert) = corollary_matrix(&Sequence::linear(), &Sequence::linear(), 12).unwrap();
        let rep = cert.reproduce();
        let win = b.window(12).unwrap();
        let err = crate::linalg::max_abs(&(rep - win));
        assert!(err < 1e-10, "certificate mismatch {err}");
        let report = grothendieck_upper_bound(&cert, &b, 12, &small_probes()).unwrap();
        assert!(report.pass, "{report:?}");
        assert_relative_eq!(report.bound, 0.5, max_relative = 1e-12);
    }

    #[test]
    fn example_iii_hand_entry_and_certificate() {
        let one = Sequence::constant(1.0);
        let (b, cert) = example_iii_matrix(&one, &one, 3).unwrap();
        assert_relative_eq!(b.entry(1, 1).unwrap(), PI / 4.0, max_relative = 1e-12);
        assert_relative_eq!(cert.bound(), PI / 2.0, max_relative = 1e-12);
        let report = grothendieck_upper_bound(&cert, &b, 3, &small_probes()).unwrap();
        assert!(report.pass);
    }

    #[test]
    fn example_iii_large_row_decays() {
        let a = Sequence::constant(1e6);
        let b = Sequence::linear();
        let (m, _) = example_iii_matrix(&a, &b, 4).unwrap();
        // √(a b)/(a+b) ≈ √(b/a) → 0 while the arctan factor stays bounded.
        assert!(m.entry(1, 1).unwrap() < 3.0 * (1.0f64 / 1e6).sqrt());
    }

    #[test]
    fn rank_one_certificate_with_unit_vectors() {
        let d = 1;
        let f = DMatrix::from_element(d, 3, 1.0);
        let g = DMatrix::from_element(d, 3, 1.0);
        let cert = SchurCertificate::Single(FactorizationCertificate {
            f_vectors: f,
            g_vectors: g,
            kappa1: 1.0,
            kappa2: 1.0,
        });
        assert_relative_eq!(cert.bound(), 1.0);
        let ones = SchurMatrix::from_generator(|_, _| 1.0, Provenance::Custom);
        let report = grothendieck_upper_bound(&cert, &ones, 3, &small_probes()).unwrap();
        assert!(report.pass);
        // The all-ones multiplier has norm exactly 1, witnessed below.
        let lb = schur_norm_lower_bound(&ones, 3, &small_probes()).unwrap();
        assert_relative_eq!(lb.value, 1.0, max_relative = 1e-9);
    }

    #[test]
    fn certificate_mismatch_is_detected() {
        let (b, _) = corollary_matrix(&Sequence::linear(), &Sequence::linear(), 4).unwrap();
        let wrong = SchurCertificate::Single(FactorizationCertificate {
            f_vectors: DMatrix::identity(4, 4),
            g_vectors: DMatrix::identity(4, 4),
            kappa1: 1.0,
            kappa2: 1.0,
        });
        assert!(matches!(
            grothendieck_upper_bound(&wrong, &b, 4, &small_probes()),
            Err(SchurError::CertificateMismatch(_))
        ));
    }

    #[test]
    fn lower_bound_for_diagonal_constant() {
        let c = -0.7;
        let diag = SchurMatrix::from_generator(
            move |mu, nu| if mu == nu { c } else { 0.0 },
            Provenance::Custom,
        );
        let lb = schur_norm_lower_bound(&diag, 6, &small_probes()).unwrap();
        assert_relative_eq!(lb.value, c.abs(), max_relative = 1e-9);
    }

    #[test]
    fn lower_bounds_stay_below_corollary_bound() {
        let (b, _) = corollary_matrix(&Sequence::linear(), &Sequence::linear(), 64).unwrap();
        for n in [4u64, 16, 64] {
            let lb = schur_norm_lower_bound(&b, n, &small_probes()).unwrap();
            assert!(lb.value <= 0.5 * (1.0 + 1e-9), "lower bound {} at n={n}", lb.value);
        }
    }

    #[test]
    fn lower_bounds_never_exceed_certificates_on_seeded_sequences() {
        // Consistency of the two evidence routes across seeded windows.
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let probes = ProbeConfig { seed: 3, sign_probes: 4, orthogonal_probes: 4, refine_steps: 2 };
        for _ in 0..100 {
            let n = rng.gen_range(2..=8u64);
            let av: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..10.0)).collect();
            let bv: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..10.0)).collect();
            let a = Sequence::from_vec(av);
            let b = Sequence::from_vec(bv);
            type Ctor = fn(&Sequence, &Sequence, u64) -> Result<(SchurMatrix, SchurCertificate), SchurError>;
            let build: [(&str, Ctor); 2] = [("cor", corollary_matrix), ("ex3", example_iii_matrix)];
            for (name, ctor) in build {
                let (m, cert) = ctor(&a, &b, n).unwrap();
                let lower = schur_norm_lower_bound(&m, n, &probes).unwrap();
                assert!(
                    lower.value <= cert.bound() * (1.0 + 1e-9),
                    "{name} at n={n}: lower {} > upper {}",
                    lower.value,
                    cert.bound()
                );
            }
        }
    }

    #[test]
    fn iterated_limits_of_the_obstruction() {
        let b = SchurMatrix::obstruction();
        let r = iterated_limits_check(&b, &[8, 16, 32]).unwrap();
        assert!(r.l1.abs() < 1e-3, "l1 = {}", r.l1);
        assert!((r.l2 - 1.0).abs() < 1e-3, "l2 = {}", r.l2);
        assert!((r.gap - 1.0).abs() < 1e-3);
        assert_eq!(r.verdict, LimitVerdict::Converged);
    }

    #[test]
    fn iterated_limits_of_constant_matrix() {
        let b = SchurMatrix::from_generator(|_, _| 0.25, Provenance::Custom);
        let r = iterated_limits_check(&b, &[8, 16]).unwrap();
        assert_relative_eq!(r.l1, 0.25, max_relative = 1e-12);
        assert!(r.gap < 1e-12);
    }

    #[test]
    fn iterated_limits_of_corollary_matrix_vanish() {
        // Entries √(μν)/(μ+ν) with a_μ = b_ν = ν decay like √(μ/ν), so both
        // iterated limits are zero; √-type decay extrapolates slowly, so
        // only a loose tolerance is meaningful here.
        let b = SchurMatrix::from_generator(
            |mu, nu| ((mu * nu) as f64).sqrt() / ((mu + nu) as f64),
            Provenance::Corollary53,
        );
        let r = iterated_limits_check(&b, &[16, 32]).unwrap();
        assert!(r.l1.abs() < 0.05, "l1 = {}", r.l1);
        assert!(r.l2.abs() < 0.05, "l2 = {}", r.l2);
        assert!(r.gap < 0.05);
    }

    #[test]
    fn oscillating_entries_are_inconclusive() {
        // Alternates on every doubling of the row index, so the
        // extrapolation grid sees a non-convergent diagonal.
        let b = SchurMatrix::from_generator(
            |mu, _| if mu.ilog2() % 2 == 0 { 1.0 } else { -1.0 },
            Provenance::Custom,
        );
        let r = iterated_limits_check(&b, &[8, 16]).unwrap();
        assert_eq!(r.verdict, LimitVerdict::Inconclusive);
    }

    #[test]
    fn obstruction_table_grows_and_witnesses_gap_one() {
        let table = obstruction_demo(&[1, 4, 16], &small_probes()).unwrap();
        assert_relative_eq!(table.rows[0].lower_bound, 0.5, max_relative = 1e-12);
        for pair in table.rows.windows(2) {
            assert!(pair[1].lower_bound >= pair[0].lower_bound - 1e-12);
        }
        for row in &table.rows {
            assert!((row.gap_witness - 1.0).abs() < 1e-3, "gap {}", row.gap_witness);
        }
        let mut csv = Vec::new();
        table.write_csv(&mut csv).unwrap();
        assert!(String::from_utf8(csv).unwrap().starts_with("n,lower_bound,gap_witness"));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(corollary_matrix(&Sequence::constant(-1.0), &Sequence::linear(), 3).is_err());
        assert!(iterated_limits_check(&SchurMatrix::obstruction(), &[]).is_err());
        let dense = SchurMatrix::from_dense(DMatrix::zeros(2, 2), Provenance::Custom);
        assert!(matches!(dense.window(3), Err(SchurError::WindowExceeded { .. })));
    }
}
