//! Integration contours γ± = β#α± and their quadrature nodes.

use super::ProjectionError;
use num_complex::Complex64;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ContourSign {
    Plus,
    Minus,
}

/// Quadrature parameters: base panel counts, Gauss order per panel, and the
/// adaptive doubling loop.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct QuadratureConfig {
    /// Base panels per α edge (and per graded β interval).
    pub panels_per_segment: usize,
    /// Gauss–Legendre points per panel, at least 2.
    pub nodes_per_panel: usize,
    /// Adaptive refinement tolerance on the computed kernels.
    pub tol: f64,
    /// Maximum number of panel-doubling rounds.
    pub max_subdivisions: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { panels_per_segment: 2, nodes_per_panel: 16, tol: 1e-10, max_subdivisions: 6 }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<(), ProjectionError> {
        if self.nodes_per_panel < 2 || self.panels_per_segment == 0 {
            return Err(ProjectionError::InvalidContour(
                "quadrature needs at least 2 nodes per panel and 1 panel per segment".into(),
            ));
        }
        if !(self.tol > 0.0) {
            return Err(ProjectionError::InvalidContour("tolerance must be positive".into()));
        }
        Ok(())
    }
}

/// An oriented straight segment of the contour.
#[derive(Debug, Clone, Copy)]
pub struct Segment {
    pub start: Complex64,
    pub end: Complex64,
    /// Graded segments (β) get panels refined geometrically toward the
    /// origin; plain segments use uniform panels.
    pub graded: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentFilter {
    All,
    BetaOnly,
    AlphaOnly,
}

/// Piecewise-linear integration path enclosing one signed half of the
/// reciprocal spectrum: β on the imaginary axis through the origin, then
/// three rectangle edges α± at distance 1/σ beyond the spectrum.
#[derive(Debug, Clone)]
pub struct Contour {
    pub sigma: f64,
    pub sign: ContourSign,
    pub segments: Vec<Segment>,
    /// max |a_ℓ|; the β grading resolves scale 1/(4·grading_scale).
    grading_scale: f64,
}

impl Contour {
    /// Build γ± for spectral gap σ, grading β toward the origin at the
    /// scale of the largest eigenvalue magnitude.
    pub fn gamma(sign: ContourSign, sigma: f64, grading_scale: f64) -> Result<Self, ProjectionError> {
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(ProjectionError::InvalidContour(format!(
                "spectral gap must be positive, got {sigma}"
            )));
        }
        let i = Complex64::new(0.0, 1.0);
        let x = 1.0 + 1.0 / sigma;
        let segments = match sign {
            // β: i → −i, then around the right rectangle back to i.
            ContourSign::Plus => vec![
                Segment { start: i, end: -i, graded: true },
                Segment { start: -i, end: Complex64::new(x, -1.0), graded: false },
                Segment { start: Complex64::new(x, -1.0), end: Complex64::new(x, 1.0), graded: false },
                Segment { start: Complex64::new(x, 1.0), end: i, graded: false },
            ],
            // β reversed: −i → i, then around the left rectangle back to −i.
            ContourSign::Minus => vec![
                Segment { start: -i, end: i, graded: true },
                Segment { start: i, end: Complex64::new(-x, 1.0), graded: false },
                Segment { start: Complex64::new(-x, 1.0), end: Complex64::new(-x, -1.0), graded: false },
                Segment { start: Complex64::new(-x, -1.0), end: -i, graded: false },
            ],
        };
        Ok(Contour { sigma, sign, segments, grading_scale: grading_scale.max(sigma) })
    }

    /// Contour adapted to a Hessian: gap and grading from its spectrum.
    pub fn for_hessian(
        a: &crate::hessian::WeakHessian,
        sign: ContourSign,
    ) -> Result<Self, ProjectionError> {
        let sigma = a.spectral_gap().ok_or(ProjectionError::NotInvertible)?;
        let max_abs = a.eigenvalues().iter().fold(0.0_f64, |m, e| m.max(e.abs()));
        Self::gamma(sign, sigma, max_abs)
    }

    /// Total length of the α± part: 2 + 2(1 + 1/σ).
    pub fn alpha_length(&self) -> f64 {
        2.0 + 2.0 * (1.0 + 1.0 / self.sigma)
    }

    /// Every selected-sign reciprocal eigenvalue must lie strictly inside
    /// the loop, every other strictly outside, and the path may not touch
    /// the reciprocal spectrum.
    pub fn validate(&self, eigs: &[f64]) -> Result<(), ProjectionError> {
        let x = 1.0 + 1.0 / self.sigma;
        for (idx, &e) in eigs.iter().enumerate() {
            if e == 0.0 {
                return Err(ProjectionError::NotInvertible);
            }
            let pole = 1.0 / e;
            if pole.abs() >= x {
                return Err(ProjectionError::InvalidContour(format!(
                    "reciprocal eigenvalue 1/a = {pole} at index {idx} is not inside the rectangle"
                )));
            }
            // Strictly off the β axis: nonzero real part is automatic for
            // real nonzero poles, but keep the guard against degenerate σ.
            if pole == 0.0 {
                return Err(ProjectionError::ResolventPole {
                    index: idx,
                    zeta: Complex64::new(0.0, 0.0),
                });
            }
        }
        Ok(())
    }

    /// Winding number of the contour around a real point, by pole counting:
    /// +1 for points in the enclosed open rectangle, 0 outside.
    pub fn winding(&self, p: f64) -> i32 {
        let x = 1.0 + 1.0 / self.sigma;
        let inside = match self.sign {
            ContourSign::Plus => p > 0.0 && p < x,
            ContourSign::Minus => p < 0.0 && p > -x,
        };
        i32::from(inside)
    }

    /// Quadrature nodes (ζ_j, w_j) with the direction dζ folded into the
    /// weights, so that ∮ f dζ ≈ Σ w_j f(ζ_j). Panels are deterministic
    /// functions of (contour, refine, config).
    pub fn nodes(
        &self,
        filter: SegmentFilter,
        refine: usize,
        cfg: &QuadratureConfig,
    ) -> Vec<(Complex64, Complex64)> {
        let (gx, gw) = gauss_legendre(cfg.nodes_per_panel);
        let mut out = Vec::new();
        for seg in &self.segments {
            let selected = match filter {
                SegmentFilter::All => true,
                SegmentFilter::BetaOnly => seg.graded,
                SegmentFilter::AlphaOnly => !seg.graded,
            };
            if !selected {
                continue;
            }
            let panels = if seg.graded {
                graded_panels(self.grading_scale, cfg.panels_per_segment * refine)
            } else {
                uniform_panels(cfg.panels_per_segment * refine)
            };
            let dir = seg.end - seg.start;
            for &(p0, p1) in &panels {
                let a = seg.start + dir * p0;
                let b = seg.start + dir * p1;
                let half = (b - a) * 0.5;
                let mid = (a + b) * 0.5;
                for (x, w) in gx.iter().zip(&gw) {
                    out.push((mid + half * *x, half * *w));
                }
            }
        }
        out
    }
}

/// Uniform panel bounds in the segment parameter [0, 1].
fn uniform_panels(count: usize) -> Vec<(f64, f64)> {
    (0..count)
        .map(|k| (k as f64 / count as f64, (k + 1) as f64 / count as f64))
        .collect()
}

/// Geometrically graded panels for β, symmetric around the midpoint where
/// the path crosses the origin. Breakpoints at parameter distance
/// 2^{-j}/2 from the midpoint down to roughly 1/(4·scale), each interval
/// split into `per_interval` subpanels.
fn graded_panels(scale: f64, per_interval: usize) -> Vec<(f64, f64)> {
    let levels = ((4.0 * scale).log2().ceil() as i32).clamp(1, 48);
    // Distances from the midpoint in units of the half-length.
    let mut brk = vec![0.0_f64];
    for j in (0..=levels).rev() {
        brk.push(0.5_f64.powi(j));
    }
    // Map to [0,1]: left half descending then mirrored right half.
    let mut points = Vec::with_capacity(2 * brk.len());
    for d in brk.iter().rev() {
        points.push(0.5 - 0.5 * d);
    }
    for d in brk.iter().skip(1) {
        points.push(0.5 + 0.5 * d);
    }
    let mut panels = Vec::new();
    for w in points.windows(2) {
        let (a, b) = (w[0], w[1]);
        for k in 0..per_interval {
            let t0 = a + (b - a) * k as f64 / per_interval as f64;
            let t1 = a + (b - a) * (k + 1) as f64 / per_interval as f64;
            panels.push((t0, t1));
        }
    }
    panels
}

/// Gauss–Legendre nodes and weights on [-1, 1] by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        weights[i] = w;
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// (P_n(x), P_n'(x)) by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let pk = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = pk;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre(8);
        // Degree up to 15 is exact; check x^14.
        let approx: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(14)).sum();
        assert_relative_eq!(approx, 2.0 / 15.0, max_relative = 1e-12);
        let total: f64 = w.iter().sum();
        assert_relative_eq!(total, 2.0, max_relative = 1e-14);
    }

    #[test]
    fn alpha_length_formula() {
        let c = Contour::gamma(ContourSign::Plus, 0.5, 3.0).unwrap();
        assert_relative_eq!(c.alpha_length(), 2.0 + 2.0 * 3.0);
        // Geometric length of the three non-graded segments agrees.
        let len: f64 = c
            .segments
            .iter()
            .filter(|s| !s.graded)
            .map(|s| (s.end - s.start).norm())
            .sum();
        assert_relative_eq!(len, c.alpha_length(), max_relative = 1e-14);
    }

    #[test]
    fn contour_is_closed() {
        for sign in [ContourSign::Plus, ContourSign::Minus] {
            let c = Contour::gamma(sign, 1.0, 5.0).unwrap();
            for pair in c.segments.windows(2) {
                assert!((pair[0].end - pair[1].start).norm() < 1e-15);
            }
            let first = c.segments.first().unwrap().start;
            let last = c.segments.last().unwrap().end;
            assert!((first - last).norm() < 1e-15);
        }
    }

    #[test]
    fn winding_selects_the_signed_half() {
        let c = Contour::gamma(ContourSign::Plus, 0.5, 4.0).unwrap();
        assert_eq!(c.winding(1.0), 1); // 1/a for a = 1
        assert_eq!(c.winding(2.0), 1); // inside: rectangle reaches 3
        assert_eq!(c.winding(-1.0), 0);
        assert_eq!(c.winding(3.5), 0);
        let c = Contour::gamma(ContourSign::Minus, 0.5, 4.0).unwrap();
        assert_eq!(c.winding(-1.0), 1);
        assert_eq!(c.winding(1.0), 0);
    }

    #[test]
    fn quadrature_winding_number_is_one() {
        // (1/2πi) ∮ dζ/(ζ - p) over γ₊ must be 1 for enclosed p, 0 outside.
        let c = Contour::gamma(ContourSign::Plus, 1.0, 8.0).unwrap();
        let cfg = QuadratureConfig::default();
        let nodes = c.nodes(SegmentFilter::All, 4, &cfg);
        for (p, expect) in [(0.125, 1.0), (1.5, 1.0), (-0.5, 0.0)] {
            let p = Complex64::new(p, 0.0);
            let sum: Complex64 = nodes.iter().map(|(z, w)| w / (z - p)).sum();
            let winding = sum / Complex64::new(0.0, 2.0 * std::f64::consts::PI);
            assert_relative_eq!(winding.re, expect, epsilon = 1e-9);
            assert!(winding.im.abs() < 1e-9);
        }
    }

    #[test]
    fn nodes_avoid_the_real_axis_or_stay_far() {
        let c = Contour::gamma(ContourSign::Plus, 0.25, 100.0).unwrap();
        let cfg = QuadratureConfig::default();
        for (z, _) in c.nodes(SegmentFilter::All, 1, &cfg) {
            // β nodes are purely imaginary and nonzero; α nodes keep
            // |Im| = 1 or |Re| = 1 + 1/σ.
            let on_beta = z.re.abs() < 1e-14;
            if on_beta {
                assert!(z.im.abs() > 0.0);
            } else {
                assert!(z.im.abs() > 1.0 - 1e-12 || z.re.abs() > 1.0);
            }
        }
    }

    #[test]
    fn rejects_nonpositive_gap() {
        assert!(Contour::gamma(ContourSign::Plus, 0.0, 1.0).is_err());
        assert!(Contour::gamma(ContourSign::Plus, -1.0, 1.0).is_err());
    }
}
