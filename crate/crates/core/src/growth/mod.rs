//! Growth functions: monotone unbounded maps ν ↦ f(ν) on the positive
//! integers, closed under shift, pointwise product and the Kang (merge)
//! product, together with window-scoped growth-type comparison.
//!
//! Values are produced lazily from generators; a Kang node keeps a memoized
//! merge cursor so that deep product trees never materialize quadratic
//! intermediates. Every generator also exposes a log-space evaluator: ratio
//! verdicts (equivalence, partial order, invariance) are computed on
//! logarithms so that exponentially growing families remain comparable far
//! past the point where their raw f64 values saturate to +inf. Raw values
//! are used wherever the contract is bit-exact (sampling, merge identities).
//!
//! Asymptotic notions are undecidable from finite data, so every verdict
//! here is explicitly window-scoped and carries a stability flag comparing
//! the half window against the full window.

mod parser;

pub use parser::{parse_growth_spec, ParseError};

use serde::Serialize;
use std::fmt;
use std::sync::{Arc, Mutex};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GrowthError {
    #[error("power exponent must be > 0, got {0}")]
    InvalidExponent(f64),
    #[error("exponential base must be > 1, got {0}")]
    InvalidBase(f64),
    #[error("offset {lambda} must exceed -f(1) = {min} to keep values positive")]
    OffsetTooNegative { lambda: f64, min: f64 },
    #[error("table prefix must be nonempty, positive and non-decreasing")]
    InvalidTable,
    #[error("table extension step must be >= 0, got {0}")]
    InvalidTableStep(f64),
    #[error("stride must be an integer >= 2, got {0}")]
    InvalidStride(u64),
    #[error("power-lift exponent must be > 0, got {0}")]
    InvalidLift(f64),
    #[error("window must satisfy N >= {min}, got {got}")]
    WindowTooSmall { min: u64, got: u64 },
    #[error("malformed generator: {0}")]
    MalformedGenerator(String),
}

/// Which arithmetic a generator is being evaluated in.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Space {
    /// Plain f64 values. May saturate to +inf for fast families.
    Value,
    /// Natural logarithms of the values. Stays finite far beyond f64 range.
    Log,
}

/// A symbolic generator of a monotone unbounded sequence ℕ → (0, ∞).
///
/// Cloning is cheap (shared `Arc`); nodes are immutable apart from the
/// internal merge memo of Kang products, which is guarded by a mutex so that
/// concurrent evaluation from several threads returns identical values.
#[derive(Clone)]
pub struct GrowthFunction(Arc<Node>);

struct Node {
    kind: Kind,
}

enum Kind {
    Power { exponent: f64 },
    Exponential { base: f64 },
    Offset { base: GrowthFunction, lambda: f64 },
    Table { prefix: Vec<f64>, step: Option<f64> },
    Subsample { base: GrowthFunction, stride: u64 },
    InterleaveRemainder { base: GrowthFunction, stride: u64 },
    Pointwise { left: GrowthFunction, right: GrowthFunction },
    Kang { left: GrowthFunction, right: GrowthFunction, memo: Mutex<KangMemo> },
    Shift { base: GrowthFunction },
    PowerLift { base: GrowthFunction, kappa: f64 },
}

#[derive(Default)]
struct KangMemo {
    values: MergeCursor,
    logs: MergeCursor,
}

/// Memoized two-way merge: `merged[k]` is the (k+1)-th smallest element of
/// the multiset union of the two value streams. Ties take the left factor
/// first; the values are equal either way, the rule only fixes which cursor
/// advances, for reproducibility.
#[derive(Default)]
struct MergeCursor {
    merged: Vec<f64>,
    left_next: u64,
    right_next: u64,
}

impl MergeCursor {
    fn get(&mut self, nu: u64, left: &GrowthFunction, right: &GrowthFunction, space: Space) -> f64 {
        while (self.merged.len() as u64) < nu {
            let lv = left.eval(self.left_next + 1, space);
            let rv = right.eval(self.right_next + 1, space);
            if lv <= rv {
                self.merged.push(lv);
                self.left_next += 1;
            } else {
                self.merged.push(rv);
                self.right_next += 1;
            }
        }
        self.merged[(nu - 1) as usize]
    }
}

impl GrowthFunction {
    fn new(kind: Kind) -> Self {
        GrowthFunction(Arc::new(Node { kind }))
    }

    /// ν ↦ ν^r for r > 0.
    pub fn power(exponent: f64) -> Result<Self, GrowthError> {
        if !(exponent > 0.0) || !exponent.is_finite() {
            return Err(GrowthError::InvalidExponent(exponent));
        }
        Ok(Self::new(Kind::Power { exponent }))
    }

    /// ν ↦ β^ν for β > 1.
    pub fn exponential(base: f64) -> Result<Self, GrowthError> {
        if !(base > 1.0) || !base.is_finite() {
            return Err(GrowthError::InvalidBase(base));
        }
        Ok(Self::new(Kind::Exponential { base }))
    }

    /// ν ↦ f(ν) + λ. Negative λ must satisfy λ > −f(1) to keep values
    /// positive.
    pub fn offset(base: GrowthFunction, lambda: f64) -> Result<Self, GrowthError> {
        let f1 = base.value(1);
        if !(lambda > -f1) {
            return Err(GrowthError::OffsetTooNegative { lambda, min: f1 });
        }
        Ok(Self::new(Kind::Offset { base, lambda }))
    }

    /// Explicit finite prefix, extended past the end either arithmetically
    /// with the given step or by repeating the last value.
    pub fn table(prefix: Vec<f64>, step: Option<f64>) -> Result<Self, GrowthError> {
        if prefix.is_empty()
            || prefix.iter().any(|&v| !(v > 0.0))
            || prefix.windows(2).any(|w| w[0] > w[1])
        {
            return Err(GrowthError::InvalidTable);
        }
        if let Some(s) = step {
            if !(s >= 0.0) || !s.is_finite() {
                return Err(GrowthError::InvalidTableStep(s));
            }
        }
        Ok(Self::new(Kind::Table { prefix, step }))
    }

    /// ν ↦ f(kν), the subsampled factor of the stride decomposition.
    pub fn subsample(base: GrowthFunction, stride: u64) -> Result<Self, GrowthError> {
        if stride < 2 {
            return Err(GrowthError::InvalidStride(stride));
        }
        Ok(Self::new(Kind::Subsample { base, stride }))
    }

    /// The complementary factor of the stride decomposition: enumerates the
    /// values of f at indices that are not multiples of k, i.e.
    /// ν ↦ f(ν + ℓ) with ℓ = ⌊(ν−1)/(k−1)⌋.
    pub fn interleave_remainder(base: GrowthFunction, stride: u64) -> Result<Self, GrowthError> {
        if stride < 2 {
            return Err(GrowthError::InvalidStride(stride));
        }
        Ok(Self::new(Kind::InterleaveRemainder { base, stride }))
    }

    /// Pointwise product (f·g)(ν) = f(ν)g(ν).
    pub fn pointwise_product(left: GrowthFunction, right: GrowthFunction) -> Self {
        Self::new(Kind::Pointwise { left, right })
    }

    /// Kang product: the ν-th value is the ν-th smallest element of the
    /// multiset union of the two value lists.
    pub fn kang_product(left: GrowthFunction, right: GrowthFunction) -> Self {
        Self::new(Kind::Kang { left, right, memo: Mutex::new(KangMemo::default()) })
    }

    /// Shifted function ν ↦ f(ν+1).
    pub fn shift(base: GrowthFunction) -> Self {
        Self::new(Kind::Shift { base })
    }

    /// ν ↦ ν^κ f(ν) for κ > 0, which strictly dominates f.
    pub fn power_lift(base: GrowthFunction, kappa: f64) -> Result<Self, GrowthError> {
        if !(kappa > 0.0) || !kappa.is_finite() {
            return Err(GrowthError::InvalidLift(kappa));
        }
        Ok(Self::new(Kind::PowerLift { base, kappa }))
    }

    /// Value at index ν ≥ 1. Fast families may saturate to +inf within f64;
    /// use [`GrowthFunction::ln_value`] for ratio work.
    pub fn value(&self, nu: u64) -> f64 {
        self.eval(nu, Space::Value)
    }

    /// Natural logarithm of the value at ν, evaluated in log space
    /// throughout so exponential families stay finite.
    pub fn ln_value(&self, nu: u64) -> f64 {
        self.eval(nu, Space::Log)
    }

    fn eval(&self, nu: u64, space: Space) -> f64 {
        debug_assert!(nu >= 1);
        match &self.0.kind {
            Kind::Power { exponent } => {
                let ln = exponent * (nu as f64).ln();
                match space {
                    Space::Value => (nu as f64).powf(*exponent),
                    Space::Log => ln,
                }
            }
            Kind::Exponential { base } => match space {
                Space::Value => base.powf(nu as f64),
                Space::Log => nu as f64 * base.ln(),
            },
            Kind::Offset { base, lambda } => match space {
                Space::Value => base.value(nu) + lambda,
                Space::Log => {
                    let lx = base.ln_value(nu);
                    if *lambda > 0.0 {
                        // log-sum-exp of ln x and ln λ.
                        let ll = lambda.ln();
                        let m = lx.max(ll);
                        m + ((lx - m).exp() + (ll - m).exp()).ln()
                    } else {
                        // λ ∈ (-f(1), 0], so λ e^{-ln x} stays in (-1, 0].
                        lx + (lambda * (-lx).exp()).ln_1p()
                    }
                }
            },
            Kind::Table { prefix, step } => {
                let v = if (nu as usize) <= prefix.len() {
                    prefix[(nu - 1) as usize]
                } else {
                    let last = *prefix.last().unwrap();
                    match step {
                        Some(s) => last + s * (nu - prefix.len() as u64) as f64,
                        None => last,
                    }
                };
                match space {
                    Space::Value => v,
                    Space::Log => v.ln(),
                }
            }
            Kind::Subsample { base, stride } => base.eval(nu * stride, space),
            Kind::InterleaveRemainder { base, stride } => {
                let ell = (nu - 1) / (stride - 1);
                base.eval(nu + ell, space)
            }
            Kind::Pointwise { left, right } => match space {
                Space::Value => left.value(nu) * right.value(nu),
                Space::Log => left.ln_value(nu) + right.ln_value(nu),
            },
            Kind::Kang { left, right, memo } => {
                let mut memo = memo.lock().unwrap();
                let cursor = match space {
                    Space::Value => &mut memo.values,
                    Space::Log => &mut memo.logs,
                };
                cursor.get(nu, left, right, space)
            }
            Kind::Shift { base } => base.eval(nu + 1, space),
            Kind::PowerLift { base, kappa } => match space {
                Space::Value => (nu as f64).powf(*kappa) * base.value(nu),
                Space::Log => kappa * (nu as f64).ln() + base.ln_value(nu),
            },
        }
    }

    /// Evaluate the first `n` values, checking the growth-function
    /// invariants (positivity, weak monotonicity).
    pub fn sample(&self, n: u64) -> Result<GrowthSample, GrowthError> {
        if n < 1 {
            return Err(GrowthError::WindowTooSmall { min: 1, got: n });
        }
        let mut values = Vec::with_capacity(n as usize);
        for nu in 1..=n {
            let v = self.value(nu);
            if !(v > 0.0) {
                return Err(GrowthError::MalformedGenerator(format!(
                    "non-positive value {v} at nu={nu} in {self}"
                )));
            }
            if let Some(&prev) = values.last() {
                if v < prev {
                    return Err(GrowthError::MalformedGenerator(format!(
                        "decreasing value {v} after {prev} at nu={nu} in {self}"
                    )));
                }
            }
            values.push(v);
        }
        Ok(GrowthSample { values, origin: self.to_string() })
    }

    fn ln_window(&self, n: u64) -> Vec<f64> {
        (1..=n).map(|nu| self.ln_value(nu)).collect()
    }
}

impl fmt::Debug for GrowthFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GrowthFunction({self})")
    }
}

impl fmt::Display for GrowthFunction {
    /// Canonical spec string in the mini-language; parses back to an
    /// equivalent generator.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            Kind::Power { exponent } => write!(f, "pow:{exponent}"),
            Kind::Exponential { base } => write!(f, "exp:{base}"),
            Kind::Offset { base, lambda } => write!(f, "offset({base},{lambda})"),
            Kind::Table { prefix, step } => {
                write!(f, "table:[")?;
                for (i, v) in prefix.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, "]")?;
                if let Some(s) = step {
                    write!(f, "+{s}")?;
                }
                Ok(())
            }
            Kind::Subsample { base, stride } => write!(f, "sub({base},{stride})"),
            Kind::InterleaveRemainder { base, stride } => write!(f, "rem({base},{stride})"),
            Kind::Pointwise { left, right } => write!(f, "ptw({left},{right})"),
            Kind::Kang { left, right, .. } => write!(f, "kang({left},{right})"),
            Kind::Shift { base } => write!(f, "shift({base})"),
            Kind::PowerLift { base, kappa } => write!(f, "lift({base},{kappa})"),
        }
    }
}

/// A finite window of values of a growth function.
#[derive(Debug, Clone, Serialize)]
pub struct GrowthSample {
    pub values: Vec<f64>,
    /// Spec string of the generating function.
    pub origin: String,
}

impl GrowthSample {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// CSV with columns `nu,value`.
    pub fn write_csv<W: std::io::Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "nu,value")?;
        for (i, v) in self.values.iter().enumerate() {
            writeln!(out, "{},{}", i + 1, v)?;
        }
        Ok(())
    }

    /// Build a sample from explicit values (positive, non-decreasing).
    pub fn from_values(values: Vec<f64>, origin: impl Into<String>) -> Result<Self, GrowthError> {
        if values.is_empty()
            || values.iter().any(|&v| !(v > 0.0))
            || values.windows(2).any(|w| w[0] > w[1])
        {
            return Err(GrowthError::MalformedGenerator(
                "sample values must be positive and non-decreasing".into(),
            ));
        }
        Ok(GrowthSample { values, origin: origin.into() })
    }
}

/// Window-comparison thresholds.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Thresholds {
    /// Largest equivalence constant accepted as "equivalent on window".
    pub c_cap: f64,
    /// Final-window ratio beyond which a monotone ratio counts as diverging.
    pub divergence_threshold: f64,
    /// Maximum relative change of the constant between windows N/2 and N
    /// for the stability flag.
    pub stability_tol: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        // Separates the analytic test families by many orders of magnitude.
        Thresholds { c_cap: 1e6, divergence_threshold: 1e6, stability_tol: 0.01 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EquivalenceVerdict {
    EquivalentOnWindow,
    RatioDiverging,
    Inconclusive,
}

/// Result of the two-sided ratio comparison of two growth functions on a
/// window.
#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceReport {
    /// Smallest c with (1/c)f ≤ g ≤ c f on the window (may be +inf when the
    /// ratio overflows f64; `ln_c_estimate` stays finite).
    pub c_estimate: f64,
    pub ln_c_estimate: f64,
    pub window: u64,
    /// True when c changed by less than the stability tolerance between
    /// windows N/2 and N.
    pub stability_flag: bool,
    pub verdict: EquivalenceVerdict,
    /// max(f/g, g/f) at ν = N, for divergence diagnostics.
    pub final_ratio: f64,
}

const MIN_WINDOW: u64 = 8;

/// Compare two growth functions on the window 1..=n.
pub fn equivalence_report(
    f: &GrowthFunction,
    g: &GrowthFunction,
    n: u64,
    thresholds: &Thresholds,
) -> Result<EquivalenceReport, GrowthError> {
    if n < MIN_WINDOW {
        return Err(GrowthError::WindowTooSmall { min: MIN_WINDOW, got: n });
    }
    let lf = f.ln_window(n);
    let lg = g.ln_window(n);
    Ok(equivalence_report_from_logs(&lf, &lg, thresholds))
}

/// Same comparison on explicit positive samples.
pub fn equivalence_report_from_samples(
    f: &[f64],
    g: &[f64],
    thresholds: &Thresholds,
) -> Result<EquivalenceReport, GrowthError> {
    let n = f.len().min(g.len()) as u64;
    if n < MIN_WINDOW {
        return Err(GrowthError::WindowTooSmall { min: MIN_WINDOW, got: n });
    }
    for &v in f.iter().take(n as usize).chain(g.iter().take(n as usize)) {
        if !(v > 0.0) || !v.is_finite() {
            return Err(GrowthError::MalformedGenerator(format!(
                "sample comparison needs finite positive values, got {v}"
            )));
        }
    }
    let lf: Vec<f64> = f.iter().take(n as usize).map(|v| v.ln()).collect();
    let lg: Vec<f64> = g.iter().take(n as usize).map(|v| v.ln()).collect();
    Ok(equivalence_report_from_logs(&lf, &lg, thresholds))
}

fn equivalence_report_from_logs(lf: &[f64], lg: &[f64], th: &Thresholds) -> EquivalenceReport {
    let n = lf.len();
    let abs_ln_ratio: Vec<f64> = lf.iter().zip(lg).map(|(a, b)| (a - b).abs()).collect();
    let ln_c_full = abs_ln_ratio.iter().cloned().fold(0.0_f64, f64::max);
    let ln_c_half = abs_ln_ratio[..n / 2].iter().cloned().fold(0.0_f64, f64::max);
    // ln_c_full >= ln_c_half, so the relative change is exp(diff) - 1.
    let stability_flag = (ln_c_full - ln_c_half).exp_m1() < th.stability_tol;
    let c_estimate = ln_c_full.exp();
    let final_ratio = abs_ln_ratio[n - 1].exp();

    let verdict = if c_estimate <= th.c_cap && stability_flag {
        EquivalenceVerdict::EquivalentOnWindow
    } else {
        // Diverging: the ratio is monotone non-decreasing over the last
        // quarter of the window and exceeds the configured threshold.
        let tail = &abs_ln_ratio[n - n / 4..];
        let monotone = tail.windows(2).all(|w| w[1] >= w[0] - 1e-12);
        if monotone && abs_ln_ratio[n - 1] > th.divergence_threshold.ln() {
            EquivalenceVerdict::RatioDiverging
        } else {
            EquivalenceVerdict::Inconclusive
        }
    };

    EquivalenceReport {
        c_estimate,
        ln_c_estimate: ln_c_full,
        window: n as u64,
        stability_flag,
        verdict,
        final_ratio,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OrderVerdict {
    Leq,
    NotLeqOnWindow,
}

/// One-sided comparison: \[f\] ≤ \[g\] on the window when max f/g stays below
/// the cap with a stable constant.
pub fn partial_order_leq(
    f: &GrowthFunction,
    g: &GrowthFunction,
    n: u64,
    thresholds: &Thresholds,
) -> Result<OrderVerdict, GrowthError> {
    if n < MIN_WINDOW {
        return Err(GrowthError::WindowTooSmall { min: MIN_WINDOW, got: n });
    }
    let lf = f.ln_window(n);
    let lg = g.ln_window(n);
    let ratios: Vec<f64> = lf.iter().zip(&lg).map(|(a, b)| a - b).collect();
    let d_full = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let d_half = ratios[..(n / 2) as usize].iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let stable = (d_full - d_half).exp_m1() < thresholds.stability_tol;
    Ok(if d_full <= thresholds.c_cap.ln() && stable {
        OrderVerdict::Leq
    } else {
        OrderVerdict::NotLeqOnWindow
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum InvarianceVerdict {
    YesOnWindow,
    NoOnWindow,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvarianceReport {
    pub verdict: InvarianceVerdict,
    /// Constant witnessing the invariance on the window.
    pub c_estimate: f64,
    pub stability_flag: bool,
    pub window: u64,
}

/// Shift invariance on the window: f ~ f(·+1) with constant at most `c_cap`.
pub fn is_shift_invariant(
    f: &GrowthFunction,
    n: u64,
    c_cap: f64,
) -> Result<InvarianceReport, GrowthError> {
    let th = Thresholds { c_cap, ..Thresholds::default() };
    let report = equivalence_report(f, &GrowthFunction::shift(f.clone()), n, &th)?;
    let yes =
        report.verdict == EquivalenceVerdict::EquivalentOnWindow && report.c_estimate <= c_cap;
    Ok(InvarianceReport {
        verdict: if yes { InvarianceVerdict::YesOnWindow } else { InvarianceVerdict::NoOnWindow },
        c_estimate: report.c_estimate,
        stability_flag: report.stability_flag,
        window: n,
    })
}

/// Scale invariance on the window: max f(2ν)/f(ν) over ν ≤ N/2 bounded by
/// `c_cap` with a stable constant.
pub fn is_scale_invariant(
    f: &GrowthFunction,
    n: u64,
    c_cap: f64,
) -> Result<InvarianceReport, GrowthError> {
    if n < MIN_WINDOW {
        return Err(GrowthError::WindowTooSmall { min: MIN_WINDOW, got: n });
    }
    let th = Thresholds::default();
    let ratio = |nu: u64| f.ln_value(2 * nu) - f.ln_value(nu);
    let m_full = (1..=n / 2).map(ratio).fold(0.0_f64, f64::max);
    let m_half = (1..=n / 4).map(ratio).fold(0.0_f64, f64::max);
    let stable = (m_full - m_half).exp_m1() < th.stability_tol;
    let c_estimate = m_full.exp();
    let yes = c_estimate <= c_cap && stable;
    Ok(InvarianceReport {
        verdict: if yes { InvarianceVerdict::YesOnWindow } else { InvarianceVerdict::NoOnWindow },
        c_estimate,
        stability_flag: stable,
        window: n,
    })
}

/// Constructive stride decomposition: f_k(ν) = f(kν) and g_k enumerating the
/// remaining values, so that the Kang product of the two factors reproduces
/// f exactly (the outputs re-evaluate f at integer indices, so the merge is
/// bit-exact). For shift-invariant f both factors are shift invariant.
pub fn kang_decompose(
    f: &GrowthFunction,
    k: u64,
) -> Result<(GrowthFunction, GrowthFunction), GrowthError> {
    let fk = GrowthFunction::subsample(f.clone(), k)?;
    let gk = GrowthFunction::interleave_remainder(f.clone(), k)?;
    Ok((fk, gk))
}
