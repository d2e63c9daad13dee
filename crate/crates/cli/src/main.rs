//! Command-line workbench over the hesslab library: every library
//! operation is reachable from a subcommand, and `verify-all` runs the full
//! acceptance suite.
//!
//! Exit codes: 0 on success, 1 for usage or runtime errors, 2 when a
//! mathematical verdict fails — so scripts can tell bugs from falsified
//! bounds.

mod util;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use hesslab::growth::{self, EquivalenceVerdict, GrowthFunction, InvarianceVerdict, Thresholds};
use hesslab::hessian::{self, HessianFamily, HessianType, WeakHessian};
use hesslab::hilbert::{self, GramPair, HilbertScale};
use hesslab::interpolation::{self, Level, WeightedNormContext};
use hesslab::linalg;
use hesslab::projection::{self, ContourSign};
use hesslab::schur::{self, ProbeConfig, SchurCertificate};
use hesslab::verify::{self, VerifyConfig};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use util::{emit, fnum, OutputFormat, Rendered, RunConfig};

/// Operation-to-subcommand dispatch table; a test checks that every library
/// operation is reachable from at least one subcommand.
pub const COVERAGE: &[(&str, &str)] = &[
    ("growth.sample", "growth sample"),
    ("growth.pointwise_product", "growth ptw"),
    ("growth.kang_product", "growth kang"),
    ("growth.shift", "growth shift"),
    ("growth.equivalence_report", "growth equiv"),
    ("growth.partial_order_leq", "growth order"),
    ("growth.is_shift_invariant", "growth invariance"),
    ("growth.is_scale_invariant", "growth invariance"),
    ("growth.kang_decompose", "growth decompose"),
    ("hilbert.inner_product", "pair extract"),
    ("hilbert.level_shift_isometry", "pair extract"),
    ("hilbert.riesz_operator", "pair extract"),
    ("hilbert.extract_pair_growth", "pair extract"),
    ("hilbert.pair_isomorphism_equivalence_check", "pair isocheck"),
    ("hessian.from_spectrum", "hessian growth"),
    ("hessian.signed_growth", "hessian growth"),
    ("hessian.translate", "hessian translate"),
    ("hessian.verify_translation_growth_equivalence", "hessian translate"),
    ("hessian.resolvent_level_norms", "hessian resolvent"),
    ("hessian.path_type_demo", "hessian path"),
    ("projection.resolvent_factor", "projection compute"),
    ("projection.contour_projection", "projection compute"),
    ("projection.eigenprojection_oracle", "projection compute"),
    ("projection.projection_derivative", "projection derivative"),
    ("projection.neumann_difference_check", "projection derivative"),
    ("projection.beta_block_hadamard", "projection hadamard"),
    ("projection.block_decompose", "projection blocks"),
    ("projection.half_level_norm", "projection blocks"),
    ("projection.alpha_bound_check", "projection bounds"),
    ("projection.dpi_half_bound_check", "projection bounds"),
    ("projection.projection_continuity_check", "projection continuity"),
    ("projection.restricted_projection_iso_check", "projection restricted-iso"),
    ("schur.hadamard", "schur bounds"),
    ("schur.schur_from_l2", "schur build"),
    ("schur.corollary_matrix", "schur build"),
    ("schur.example_iii_matrix", "schur build"),
    ("schur.grothendieck_upper_bound", "schur bounds"),
    ("schur.schur_norm_lower_bound", "schur bounds"),
    ("schur.iterated_limits_check", "schur limits"),
    ("schur.obstruction_demo", "schur obstruction"),
    ("interpolation.weighted_operator_norm", "interp norm"),
    ("interpolation.stein_check", "interp stein"),
    ("verify.run_all", "verify-all"),
];

#[derive(Parser)]
#[command(
    name = "hesslab",
    version,
    about = "Numerical workbench for growth functions, Hilbert pairs, Hessian spectra, contour spectral projections and Schur multipliers"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Truncation / window size.
    #[arg(long, global = true)]
    n: Option<u64>,
    /// RNG seed for everything seeded.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Tolerance for quadrature-backed verdicts.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Output format: table, json or csv.
    #[arg(long, global = true)]
    format: Option<OutputFormat>,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// key = value config file; flags override its entries.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Growth functions: samples, products, comparisons, decompositions.
    Growth {
        #[command(subcommand)]
        cmd: GrowthCmd,
    },
    /// Hilbert space pairs: growth extraction and isomorphism checks.
    Pair {
        #[command(subcommand)]
        cmd: PairCmd,
    },
    /// Truncated weak Hessians: signed growth, translation, resolvent, paths.
    Hessian {
        #[command(subcommand)]
        cmd: HessianCmd,
    },
    /// Contour spectral projections and their norm bounds.
    Projection {
        #[command(subcommand)]
        cmd: ProjectionCmd,
    },
    /// Schur multipliers: constructions, bounds, limits, obstruction.
    Schur {
        #[command(subcommand)]
        cmd: SchurCmd,
    },
    /// Weighted operator norms and the midpoint interpolation inequality.
    Interp {
        #[command(subcommand)]
        cmd: InterpCmd,
    },
    /// Run the full acceptance suite deterministically.
    #[command(name = "verify-all")]
    VerifyAll {
        /// Shrink every sweep for a fast smoke pass.
        #[arg(long)]
        smoke: bool,
    },
}

#[derive(Subcommand)]
enum GrowthCmd {
    /// Evaluate the first N values of a growth spec.
    Sample {
        #[arg(long, short)]
        f: String,
    },
    /// Pointwise product sample.
    Ptw {
        #[arg(long, short)]
        f: String,
        #[arg(long, short)]
        g: String,
    },
    /// Kang (merge) product sample.
    Kang {
        #[arg(long, short)]
        f: String,
        #[arg(long, short)]
        g: String,
    },
    /// Shifted sample f(.+1).
    Shift {
        #[arg(long, short)]
        f: String,
    },
    /// Two-sided growth-type comparison on the window.
    Equiv {
        #[arg(long, short)]
        f: String,
        #[arg(long, short)]
        g: String,
        /// Fail (exit 2) unless the verdict matches
        /// (equivalent, diverging or inconclusive).
        #[arg(long)]
        expect: Option<String>,
    },
    /// One-sided partial order \[f\] <= \[g\] on the window.
    Order {
        #[arg(long, short)]
        f: String,
        #[arg(long, short)]
        g: String,
    },
    /// Shift or scale invariance verdict on the window.
    Invariance {
        #[arg(long, short)]
        f: String,
        /// shift or scale.
        #[arg(long, default_value = "shift")]
        kind: String,
        /// Constant cap for the yes verdict.
        #[arg(long, default_value_t = 1e6)]
        cap: f64,
        /// Fail (exit 2) unless the verdict matches (yes or no).
        #[arg(long)]
        expect: Option<String>,
    },
    /// Stride decomposition f = f_k * g_k with exact reconstruction.
    Decompose {
        #[arg(long, short)]
        f: String,
        #[arg(long, short)]
        k: u64,
    },
}

#[derive(Subcommand)]
enum PairCmd {
    /// Extract the pair growth function from a Gram pair.
    Extract {
        /// Gram pair as inline JSON or @file ({"n":..,"g0":[[..]],"g1":[[..]]});
        /// omit to build the diagonal pair of --h.
        #[arg(long)]
        input: Option<String>,
        /// Growth spec for a diagonal pair (G0 = I, G1 = diag h).
        #[arg(long)]
        h: Option<String>,
    },
    /// Growth-equivalence check for the identity as a candidate pair map.
    Isocheck {
        #[arg(long, short)]
        f: String,
        #[arg(long, short)]
        g: String,
    },
}

#[derive(Subcommand)]
enum HessianCmd {
    /// Signed growth functions of a spectrum.
    Growth {
        /// Spectrum JSON or @file: {"neg": [...], "pos": [...], "h": "pow:1"}.
        #[arg(long)]
        spectrum: String,
    },
    /// Translation-equivalence of the signed growth types for a family.
    Translate {
        /// Growth spec of the positive eigenvalues a_v.
        #[arg(long, default_value = "pow:1")]
        pos: String,
        /// Growth spec of the negative magnitudes |a_{-v}|.
        #[arg(long, default_value = "pow:1")]
        neg: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
    },
    /// Resolvent norm H1 -> H2 at a point of the resolvent set.
    Resolvent {
        #[arg(long)]
        spectrum: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
    },
    /// Sign-count trace along a path of spectra.
    Path {
        /// JSON array (inline or @file) of {"eigs": [...]} samples.
        #[arg(long)]
        input: String,
    },
}

#[derive(Subcommand)]
enum ProjectionCmd {
    /// Contour projection vs the eigenprojection oracle.
    Compute {
        #[arg(long)]
        spectrum: String,
        /// plus or minus.
        #[arg(long, default_value = "plus")]
        sign: String,
    },
    /// Derivative of the projection: finite-difference order sweep and the
    /// geometric-series residual check.
    Derivative {
        #[arg(long)]
        spectrum: String,
    },
    /// Closed-form Hadamard representation of the beta block vs quadrature.
    Hadamard {
        #[arg(long)]
        spectrum: String,
    },
    /// Signed block decomposition of the derivative.
    Blocks {
        #[arg(long)]
        spectrum: String,
        /// Scale level for the block norms.
        #[arg(long, default_value_t = 0.5)]
        level: f64,
    },
    /// Sigma sweep of the alpha, beta-block and total derivative bounds.
    Bounds {
        /// Comma-separated gap values.
        #[arg(long, default_value = "0.25,0.5,1,2")]
        sigmas: String,
        /// Seeded trials per gap value.
        #[arg(long, default_value_t = 5)]
        trials: usize,
    },
    /// Continuity of the projection under a seeded perturbation.
    Continuity {
        #[arg(long)]
        spectrum: String,
        /// Perturbation size relative to the spectral gap.
        #[arg(long, default_value_t = 0.15)]
        eps: f64,
    },
    /// Restricted-projection isomorphism estimates for a nearby operator.
    #[command(name = "restricted-iso")]
    RestrictedIso {
        #[arg(long)]
        spectrum: String,
        /// Perturbation size relative to the spectral gap.
        #[arg(long, default_value_t = 0.05)]
        eps: f64,
    },
}

#[derive(Subcommand)]
enum SchurCmd {
    /// Build a multiplier window with its certificate.
    Build {
        /// cor, ex3, obstruction or l2exp.
        #[arg(long)]
        kind: String,
        /// Row sequence: lin or `const:<v>`.
        #[arg(long, default_value = "lin")]
        a: String,
        /// Column sequence: lin or `const:<v>`.
        #[arg(long, default_value = "lin")]
        b: String,
    },
    /// Certified upper bound vs probe lower bound.
    Bounds {
        #[arg(long)]
        kind: String,
        #[arg(long, default_value = "lin")]
        a: String,
        #[arg(long, default_value = "lin")]
        b: String,
    },
    /// Iterated limits of the entry generator.
    Limits {
        #[arg(long, default_value = "obstruction")]
        kind: String,
        #[arg(long, default_value = "lin")]
        a: String,
        #[arg(long, default_value = "lin")]
        b: String,
    },
    /// Lower-bound growth table for the non-multiplier mu/(mu+nu).
    Obstruction {
        /// Comma-separated window schedule.
        #[arg(long, default_value = "4,16,64")]
        schedule: String,
    },
}

#[derive(Subcommand)]
enum InterpCmd {
    /// Weighted operator norm of a seeded operator at a level.
    Norm {
        #[arg(long, short)]
        f: String,
        #[arg(long, short)]
        g: String,
        /// 0, half or 1.
        #[arg(long, default_value = "half")]
        level: String,
        /// Use the identity instead of a seeded operator.
        #[arg(long)]
        identity: bool,
    },
    /// Midpoint interpolation sweep: M_half <= sqrt(M0 M1).
    Stein {
        #[arg(long, short)]
        f: String,
        #[arg(long, short)]
        g: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version are successful exits; everything else is a
            // usage error (exit 1 by the workbench convention).
            let _ = err.print();
            return match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(1),
            };
        }
    };
    let cfg = match RunConfig::resolve(
        cli.global.n,
        cli.global.seed,
        cli.global.tol,
        cli.global.format,
        cli.global.out.clone(),
        cli.global.config.as_deref(),
    ) {
        Ok(cfg) => cfg,
        Err(err) => {
            eprintln!("error: {err:#}");
            return ExitCode::from(1);
        }
    };
    match run(&cli.command, &cfg) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(command: &Command, cfg: &RunConfig) -> Result<bool> {
    match command {
        Command::Growth { cmd } => run_growth(cmd, cfg),
        Command::Pair { cmd } => run_pair(cmd, cfg),
        Command::Hessian { cmd } => run_hessian(cmd, cfg),
        Command::Projection { cmd } => run_projection(cmd, cfg),
        Command::Schur { cmd } => run_schur(cmd, cfg),
        Command::Interp { cmd } => run_interp(cmd, cfg),
        Command::VerifyAll { smoke } => run_verify_all(*smoke, cfg),
    }
}

// ---------------------------------------------------------------------------
// growth
// ---------------------------------------------------------------------------

fn emit_sample(cfg: &RunConfig, f: &GrowthFunction) -> Result<bool> {
    let sample = f.sample(cfg.n)?;
    let mut csv = Vec::new();
    sample.write_csv(&mut csv)?;
    let csv = String::from_utf8(csv).expect("csv is utf8");
    let mut table = format!("sample of {} on 1..={}\n", sample.origin, cfg.n);
    for (i, v) in sample.values.iter().enumerate() {
        writeln!(table, "{:>6}  {}", i + 1, fnum(*v))?;
    }
    emit(cfg, &Rendered::from_serializable(&sample, table, Some(csv))?)?;
    Ok(true)
}

fn run_growth(cmd: &GrowthCmd, cfg: &RunConfig) -> Result<bool> {
    let th = Thresholds::default();
    match cmd {
        GrowthCmd::Sample { f } => emit_sample(cfg, &util::parse_spec_or_diagnose(f)?),
        GrowthCmd::Ptw { f, g } => {
            let f = util::parse_spec_or_diagnose(f)?;
            let g = util::parse_spec_or_diagnose(g)?;
            emit_sample(cfg, &GrowthFunction::pointwise_product(f, g))
        }
        GrowthCmd::Kang { f, g } => {
            let f = util::parse_spec_or_diagnose(f)?;
            let g = util::parse_spec_or_diagnose(g)?;
            emit_sample(cfg, &GrowthFunction::kang_product(f, g))
        }
        GrowthCmd::Shift { f } => {
            emit_sample(cfg, &GrowthFunction::shift(util::parse_spec_or_diagnose(f)?))
        }
        GrowthCmd::Equiv { f, g, expect } => {
            let f = util::parse_spec_or_diagnose(f)?;
            let g = util::parse_spec_or_diagnose(g)?;
            let report = growth::equivalence_report(&f, &g, cfg.n, &th)?;
            let table = format!(
                "equivalence of {f} and {g} on 1..={}\n  verdict: {:?}\n  c_estimate: {} (ln {})\n  stable: {}\n  final ratio: {}\n",
                cfg.n,
                report.verdict,
                fnum(report.c_estimate),
                fnum(report.ln_c_estimate),
                report.stability_flag,
                fnum(report.final_ratio),
            );
            let ok = match expect.as_deref() {
                None => true,
                Some("equivalent") => report.verdict == EquivalenceVerdict::EquivalentOnWindow,
                Some("diverging") => report.verdict == EquivalenceVerdict::RatioDiverging,
                Some("inconclusive") => report.verdict == EquivalenceVerdict::Inconclusive,
                Some(other) => bail!("unknown expectation {other:?}"),
            };
            emit(cfg, &Rendered::from_serializable(&report, table, None)?)?;
            Ok(ok)
        }
        GrowthCmd::Order { f, g } => {
            let f = util::parse_spec_or_diagnose(f)?;
            let g = util::parse_spec_or_diagnose(g)?;
            let verdict = growth::partial_order_leq(&f, &g, cfg.n, &th)?;
            let table = format!("[{f}] <= [{g}] on 1..={}: {:?}\n", cfg.n, verdict);
            emit(cfg, &Rendered::from_serializable(&verdict, table, None)?)?;
            Ok(true)
        }
        GrowthCmd::Invariance { f, kind, cap, expect } => {
            let func = util::parse_spec_or_diagnose(f)?;
            let report = match kind.as_str() {
                "shift" => growth::is_shift_invariant(&func, cfg.n, *cap)?,
                "scale" => growth::is_scale_invariant(&func, cfg.n, *cap)?,
                other => bail!("unknown invariance kind {other:?}; expected shift or scale"),
            };
            let table = format!(
                "{kind} invariance of {func} on 1..={}: {:?} (c = {}, stable = {})\n",
                cfg.n,
                report.verdict,
                fnum(report.c_estimate),
                report.stability_flag,
            );
            let ok = match expect.as_deref() {
                None => true,
                Some("yes") => report.verdict == InvarianceVerdict::YesOnWindow,
                Some("no") => report.verdict == InvarianceVerdict::NoOnWindow,
                Some(other) => bail!("unknown expectation {other:?}"),
            };
            emit(cfg, &Rendered::from_serializable(&report, table, None)?)?;
            Ok(ok)
        }
        GrowthCmd::Decompose { f, k } => {
            let func = util::parse_spec_or_diagnose(f)?;
            let (fk, gk) = growth::kang_decompose(&func, *k)?;
            let merged = GrowthFunction::kang_product(fk.clone(), gk.clone());
            let exact = (1..=cfg.n).all(|nu| merged.value(nu) == func.value(nu));
            let fk_inv = growth::is_shift_invariant(&fk, cfg.n.max(16), 1e6)?;
            let gk_inv = growth::is_shift_invariant(&gk, cfg.n.max(16), 1e6)?;
            #[derive(serde::Serialize)]
            struct DecomposeReport {
                f: String,
                k: u64,
                subsampled: String,
                remainder: String,
                exact_reconstruction: bool,
                subsampled_shift_invariant: bool,
                remainder_shift_invariant: bool,
            }
            let report = DecomposeReport {
                f: func.to_string(),
                k: *k,
                subsampled: fk.to_string(),
                remainder: gk.to_string(),
                exact_reconstruction: exact,
                subsampled_shift_invariant: fk_inv.verdict == InvarianceVerdict::YesOnWindow,
                remainder_shift_invariant: gk_inv.verdict == InvarianceVerdict::YesOnWindow,
            };
            let mut csv = String::from("nu,f,subsampled,remainder\n");
            for nu in 1..=cfg.n {
                writeln!(csv, "{nu},{},{},{}", func.value(nu), fk.value(nu), gk.value(nu))?;
            }
            let table = format!(
                "decomposition of {func} with stride {k}\n  f_k = {fk}\n  g_k = {gk}\n  exact reconstruction on 1..={}: {exact}\n  factors shift-invariant: {} / {}\n",
                cfg.n, report.subsampled_shift_invariant, report.remainder_shift_invariant,
            );
            emit(cfg, &Rendered::from_serializable(&report, table, Some(csv))?)?;
            Ok(exact)
        }
    }
}

// ---------------------------------------------------------------------------
// pair
// ---------------------------------------------------------------------------

fn run_pair(cmd: &PairCmd, cfg: &RunConfig) -> Result<bool> {
    match cmd {
        PairCmd::Extract { input, h } => {
            let pair = match (input, h) {
                (Some(arg), _) => {
                    let text = if let Some(path) = arg.strip_prefix('@') {
                        std::fs::read_to_string(path)
                            .with_context(|| format!("cannot read {path}"))?
                    } else {
                        arg.clone()
                    };
                    GramPair::from_json(&serde_json::from_str(&text)?)?
                }
                (None, Some(spec)) => {
                    let f = util::parse_spec_or_diagnose(spec)?;
                    GramPair::from_weights(&f.sample(cfg.n)?.values)?
                }
                (None, None) => bail!("pass --input or --h"),
            };
            let riesz = hilbert::riesz_operator(&pair)?;
            let pg = hilbert::extract_pair_growth(&pair)?;
            // Isometry certificate via the scale inner products on the
            // extracted basis, and a level-shift sanity on the result.
            let n = pg.h.len();
            let scale0 = HilbertScale::new(pg.h.clone(), 0.0)?;
            let phi = hilbert::level_shift_isometry(&scale0, 1.0);
            let mut worst_gram = 0.0_f64;
            for i in 0..n {
                let ei = pg.basis.matrix.column(i).into_owned();
                let g0ei = pair.g0() * &ei;
                let g1ei = pair.g1() * &ei;
                for j in 0..n {
                    let ej = pg.basis.matrix.column(j).into_owned();
                    let want0 = f64::from(u8::from(i == j));
                    let want1 = if i == j { pg.h[i] } else { 0.0 };
                    worst_gram = worst_gram.max((ej.dot(&g0ei) - want0).abs());
                    worst_gram = worst_gram.max((ej.dot(&g1ei) - want1).abs() / pg.h[i].max(1.0));
                }
            }
            // phi_1 maps a unit vector of H_0 to a unit vector of H_1.
            let e1 = nalgebra::DVector::from_fn(n, |k, _| f64::from(u8::from(k == 0)));
            let shifted = nalgebra::DVector::from_iterator(n, (&phi.matrix * &e1).iter().copied());
            let scale1 = scale0.at_level(1.0);
            let iso_residual = (scale1.inner_product(&shifted, &shifted)?
                - scale0.inner_product(&e1, &e1)?)
            .abs();
            #[derive(serde::Serialize)]
            struct ExtractReport {
                h: Vec<f64>,
                kappas: Vec<f64>,
                worst_gram_residual: f64,
                level_shift_residual: f64,
            }
            let report = ExtractReport {
                h: pg.h.clone(),
                kappas: riesz.kappas.clone(),
                worst_gram_residual: worst_gram,
                level_shift_residual: iso_residual,
            };
            let mut csv = String::from("nu,h\n");
            for (i, v) in report.h.iter().enumerate() {
                writeln!(csv, "{},{}", i + 1, v)?;
            }
            let mut table = format!(
                "pair growth (n = {n}); worst Gram residual {:.3e}; level-shift residual {:.3e}\n",
                worst_gram, iso_residual
            );
            for (i, v) in report.h.iter().enumerate() {
                writeln!(table, "{:>6}  {}", i + 1, fnum(*v))?;
            }
            emit(cfg, &Rendered::from_serializable(&report, table, Some(csv))?)?;
            Ok(worst_gram <= 1e-9 && iso_residual <= 1e-9)
        }
        PairCmd::Isocheck { f, g } => {
            let fs = util::parse_spec_or_diagnose(f)?.sample(cfg.n)?.values;
            let gs = util::parse_spec_or_diagnose(g)?.sample(cfg.n)?.values;
            let report = hilbert::pair_isomorphism_equivalence_check(
                &fs,
                &gs,
                &DMatrix::identity(cfg.n as usize, cfg.n as usize),
            )?;
            let table = format!(
                "identity as pair map ({f} vs {g}) on 1..={}\n  c0 = {} (half window {})\n  c = c0^4 = {}\n  holds on window: {}\n  half-window constant covers: {}\n  stable: {}\n",
                cfg.n,
                fnum(report.c0),
                fnum(report.c0_half_window),
                fnum(report.c),
                report.holds_on_window,
                report.holds_with_half_window_constant,
                report.stability_flag,
            );
            let ok = report.holds_on_window && report.stability_flag;
            emit(cfg, &Rendered::from_serializable(&report, table, None)?)?;
            Ok(ok)
        }
    }
}

// ---------------------------------------------------------------------------
// hessian
// ---------------------------------------------------------------------------

fn run_hessian(cmd: &HessianCmd, cfg: &RunConfig) -> Result<bool> {
    match cmd {
        HessianCmd::Growth { spectrum } => {
            let a = util::load_spectrum(spectrum, HessianType::Floer)?;
            let sg = hessian::signed_growth(&a)?;
            let mut csv = String::from("nu,total,positive,negative\n");
            for i in 0..sg.total.len() {
                let p = sg.positive.get(i).map(|v| v.to_string()).unwrap_or_default();
                let m = sg.negative.get(i).map(|v| v.to_string()).unwrap_or_default();
                writeln!(csv, "{},{},{p},{m}", i + 1, sg.total[i])?;
            }
            let table = format!(
                "signed growth (dim {})\n  total:    {:?}\n  positive: {:?}\n  negative: {:?}\n",
                a.dim(),
                sg.total,
                sg.positive,
                sg.negative
            );
            emit(cfg, &Rendered::from_serializable(&sg, table, Some(csv))?)?;
            Ok(true)
        }
        HessianCmd::Translate { pos, neg, lambda } => {
            let family = HessianFamily::new(
                util::parse_spec_or_diagnose(pos)?,
                util::parse_spec_or_diagnose(neg)?,
            );
            // Show a translated truncation alongside the window verdict.
            let truncated = family.truncate(8.min(cfg.n))?;
            let shifted = truncated.translate(*lambda);
            let report = hessian::verify_translation_growth_equivalence(
                &family,
                *lambda,
                cfg.n,
                &Thresholds::default(),
            )?;
            let table = format!(
                "translation by lambda = {lambda} on 1..={}\n  case (+): {:?}, c = {} <= proof constant {}\n  case (-): {:?}, c = {} <= proof constant {}\n  both equivalent: {}\n  sample translated spectrum: {:?}\n",
                cfg.n,
                report.plus.case,
                fnum(report.plus.report.c_estimate),
                fnum(report.plus.proof_constant),
                report.minus.case,
                fnum(report.minus.report.c_estimate),
                fnum(report.minus.proof_constant),
                report.both_equivalent,
                shifted.eigenvalues(),
            );
            let ok = report.both_equivalent
                && report.plus.report.c_estimate <= report.plus.proof_constant * (1.0 + 1e-9)
                && report.minus.report.c_estimate <= report.minus.proof_constant * (1.0 + 1e-9);
            emit(cfg, &Rendered::from_serializable(&report, table, None)?)?;
            Ok(ok)
        }
        HessianCmd::Resolvent { spectrum, lambda } => {
            let a = util::load_spectrum(spectrum, HessianType::Floer)?;
            let report = hessian::resolvent_level_norms(&a, *lambda)?;
            let table = format!(
                "resolvent at lambda = {lambda}\n  norm H1 -> H2: {}\n  diagonal formula: {}\n  eigenspace angle across levels: {:.3e}\n  convention: {}\n",
                fnum(report.norm_h1_to_h2),
                report.diagonal_formula.map(fnum).unwrap_or_else(|| "n/a (rotated basis)".into()),
                report.eigenspace_angle,
                report.norm_convention,
            );
            let ok = report.eigenspace_angle <= 1e-7;
            emit(cfg, &Rendered::from_serializable(&report, table, None)?)?;
            Ok(ok)
        }
        HessianCmd::Path { input } => {
            let text = if let Some(path) = input.strip_prefix('@') {
                std::fs::read_to_string(path).with_context(|| format!("cannot read {path}"))?
            } else {
                input.clone()
            };
            #[derive(serde::Deserialize)]
            struct PathSample {
                eigs: Vec<f64>,
            }
            let samples: Vec<PathSample> = serde_json::from_str(&text)
                .context("path input must be a JSON array of {\"eigs\": [...]}")?;
            let path: Vec<WeakHessian> = samples
                .iter()
                .map(|s| {
                    WeakHessian::from_eigenvalues(&s.eigs, None, None, HessianType::Floer)
                        .map_err(Into::into)
                })
                .collect::<Result<_>>()?;
            let report = hessian::path_type_demo(&path)?;
            let mut table = String::from("path sign counts (neg, pos):\n");
            for (i, (neg, pos)) in report.sign_counts.iter().enumerate() {
                writeln!(table, "{i:>4}  ({neg}, {pos})")?;
            }
            writeln!(
                table,
                "crossings at steps {:?} (total {})",
                report.crossings, report.crossing_count
            )?;
            emit(cfg, &Rendered::from_serializable(&report, table, None)?)?;
            Ok(true)
        }
    }
}

// ---------------------------------------------------------------------------
// projection
// ---------------------------------------------------------------------------

fn parse_sign(sign: &str) -> Result<ContourSign> {
    match sign {
        "plus" | "+" => Ok(ContourSign::Plus),
        "minus" | "-" => Ok(ContourSign::Minus),
        other => bail!("unknown sign {other:?}; expected plus or minus"),
    }
}

fn matrix_table(m: &DMatrix<f64>) -> String {
    let mut s = String::new();
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let _ = write!(s, "{:>12.6} ", m[(i, j)]);
        }
        s.push('\n');
    }
    s
}

fn run_projection(cmd: &ProjectionCmd, cfg: &RunConfig) -> Result<bool> {
    let quad = cfg.quad;
    match cmd {
        ProjectionCmd::Compute { spectrum, sign } => {
            let a = util::load_spectrum(spectrum, HessianType::Floer)?;
            let sign = parse_sign(sign)?;
            // Resolvent sanity at the origin: (Id - 0 A)^-1 = Id.
            let r0 = projection::resolvent_factor(&a, Complex64::new(0.0, 0.0))?;
            let mut r0_residual = 0.0_f64;
            for i in 0..a.dim() {
                for j in 0..a.dim() {
                    let want = f64::from(u8::from(i == j));
                    r0_residual =
                        r0_residual.max((r0[(i, j)].re - want).abs() + r0[(i, j)].im.abs());
                }
            }
            let (p, diag) = projection::contour_projection(&a, sign, &quad)?;
            let oracle = projection::eigenprojection_oracle(&a, sign)?;
            let distance = linalg::spectral_norm(&(&p - &oracle));
            #[derive(serde::Serialize)]
            struct ComputeReport {
                trace: f64,
                oracle_distance: f64,
                idempotency_defect: f64,
                max_imag: f64,
                resolvent_identity_residual: f64,
            }
            let report = ComputeReport {
                trace: p.trace(),
                oracle_distance: distance,
                idempotency_defect: linalg::spectral_norm(&(&p * &p - &p)),
                max_imag: diag.max_imag,
                resolvent_identity_residual: r0_residual,
            };
            let table = format!(
                "contour projection ({sign:?})\n{}\n  trace = {} (positive count {})\n  distance to oracle = {:.3e}\n  idempotency defect = {:.3e}\n",
                matrix_table(&p),
                fnum(report.trace),
                a.eigenvalues().iter().filter(|&&e| e > 0.0).count(),
                distance,
                report.idempotency_defect,
            );
            let ok = distance <= cfg.tol && report.idempotency_defect <= cfg.tol;
            emit(cfg, &Rendered::from_serializable(&report, table, None)?)?;
            Ok(ok)
        }
        ProjectionCmd::Derivative { spectrum } => {
            let a = util::load_spectrum(spectrum, HessianType::Floer)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let d = linalg::random_symmetric(a.dim(), &mut rng);
            let d = &d / linalg::spectral_norm(&d);
            let dpi = projection::projection_derivative(&a, &d, ContourSign::Plus, &quad)?;
            let sigma = a.spectral_gap().ok_or_else(|| anyhow!("spectrum must be invertible"))?;
            let eps0 = 0.02 * sigma;
            let proj = |m: &DMatrix<f64>| -> DMatrix<f64> {
                let (vals, vecs) = linalg::sym_eigen_ascending(m);
                let ind = nalgebra::DVector::from_iterator(
                    vals.len(),
                    vals.iter().map(|&v| f64::from(v > 0.0)),
                );
                &vecs * DMatrix::from_diagonal(&ind) * vecs.transpose()
            };
            let mut rows = Vec::new();
            let mut csv = String::from("eps,error\n");
            for k in 0..5 {
                let eps = eps0 / f64::powi(2.0, k);
                let fd = (proj(&(a.matrix() + &d * eps)) - proj(&(a.matrix() - &d * eps)))
                    / (2.0 * eps);
                let err = linalg::spectral_norm(&(fd - &dpi));
                writeln!(csv, "{eps},{err}")?;
                rows.push((eps, err));
            }
            let order = ((rows[0].1 / rows[rows.len() - 1].1).ln()
                / (rows[0].0 / rows[rows.len() - 1].0).ln())
            .max(0.0);
            // Geometric-series residual of the resolvent difference at a
            // point on the dangerous segment.
            let neumann = projection::neumann_difference_check(
                &a,
                &(&d * (0.05 * sigma)),
                Complex64::new(0.0, 0.5),
                4,
            )?;
            #[derive(serde::Serialize)]
            struct DerivativeReport {
                fd_errors: Vec<(f64, f64)>,
                observed_order: f64,
                neumann_rho: f64,
                neumann_pass: bool,
            }
            let report = DerivativeReport {
                fd_errors: rows.clone(),
                observed_order: order,
                neumann_rho: neumann.rho,
                neumann_pass: neumann.pass,
            };
            let mut table =
                String::from("finite-difference check of the derivative\n  eps        error\n");
            for (eps, err) in &rows {
                writeln!(table, "  {eps:<10.3e} {err:.3e}")?;
            }
            writeln!(table, "  observed order {order:.3} (needs >= 1.9)")?;
            writeln!(
                table,
                "  geometric-series residual at zeta = 0.5i: rho = {:.3}, pass = {}",
                neumann.rho, neumann.pass
            )?;
            let ok = order >= 1.9 && neumann.pass;
            emit(cfg, &Rendered::from_serializable(&report, table, Some(csv))?)?;
            Ok(ok)
        }
        ProjectionCmd::Hadamard { spectrum } => {
            let a = util::load_spectrum(spectrum, HessianType::Floer)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let d = linalg::random_symmetric(a.dim(), &mut rng);
            let closed = projection::beta_block_hadamard(&a, &d)?;
            let quadr = projection::beta_block_quadrature(&a, &d, &quad)?;
            let err = linalg::max_abs(&(&closed - &quadr));
            #[derive(serde::Serialize)]
            struct HadamardReport {
                entrywise_error: f64,
                q_equal_args: f64,
                q_mixed_sign: f64,
            }
            let report = HadamardReport {
                entrywise_error: err,
                q_equal_args: projection::arctan_divided_difference(1.0, 1.0),
                q_mixed_sign: projection::arctan_divided_difference(1.0, -1.0),
            };
            let table = format!(
                "beta block, closed form (eigenbasis)\n{}\n  entrywise deviation from quadrature: {:.3e}\n  q(1,1) = {} (= 1/2), q(1,-1) = {} (= pi/4)\n",
                matrix_table(&closed),
                err,
                fnum(report.q_equal_args),
                fnum(report.q_mixed_sign),
            );
            emit(cfg, &Rendered::from_serializable(&report, table, None)?)?;
            Ok(err <= cfg.tol)
        }
        ProjectionCmd::Blocks { spectrum, level } => {
            let a = util::load_spectrum(spectrum, HessianType::Floer)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let d = linalg::random_symmetric(a.dim(), &mut rng);
            let dpi = projection::projection_derivative(&a, &d, ContourSign::Plus, &quad)?;
            let blocks = projection::block_decompose(&dpi, &a, *level)?;
            let norms = blocks.block_norms(a.eigenvalues());
            let total = projection::half_level_norm(&dpi, &a, *level)?;
            let reassembly = linalg::max_abs(&(blocks.reassemble() - a.to_eigenbasis(&dpi)));
            #[derive(serde::Serialize)]
            struct BlocksReport {
                level: f64,
                block_norms: [f64; 4],
                total_norm: f64,
                reassembly_error: f64,
            }
            let report = BlocksReport {
                level: *level,
                block_norms: norms,
                total_norm: total,
                reassembly_error: reassembly,
            };
            let table = format!(
                "derivative blocks at level {level}\n  ++ {:.3e}   -+ {:.6}   +- {:.6}   -- {:.3e}\n  total {:.6} (at most the sum of the blocks)\n  reassembly error {:.1e}\n",
                norms[0], norms[1], norms[2], norms[3], total, reassembly,
            );
            let diag_ok = norms[0] <= cfg.tol.max(1e-8) && norms[3] <= cfg.tol.max(1e-8);
            emit(cfg, &Rendered::from_serializable(&report, table, None)?)?;
            Ok(diag_ok && reassembly == 0.0)
        }
        ProjectionCmd::Bounds { sigmas, trials } => {
            let sigmas: Vec<f64> = sigmas
                .split(',')
                .map(|s| s.trim().parse::<f64>().context("sigma list"))
                .collect::<Result<_>>()?;
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            #[derive(serde::Serialize)]
            struct SweepRow {
                sigma: f64,
                check: String,
                inputs_digest: String,
                measured: f64,
                bound: f64,
                slack: f64,
                pass: bool,
            }
            let mut rows: Vec<SweepRow> = Vec::new();
            let mut all_pass = true;
            for &sigma in &sigmas {
                let mut worst_alpha = (0.0_f64, 1.0_f64);
                let mut worst_beta = (0.0_f64, 1.0_f64);
                let mut worst_total = (0.0_f64, 1.0_f64);
                for _ in 0..*trials {
                    let a = verify::seeded_hessian(&mut rng, 6, 6, sigma);
                    let d = verify::seeded_delta_unit(&mut rng, &a);
                    let alpha = projection::alpha_bound_check(&a, &d, ContourSign::Plus, &quad)?;
                    all_pass &= alpha.pass;
                    if alpha.measured / alpha.bound > worst_alpha.0 / worst_alpha.1 {
                        worst_alpha = (alpha.measured, alpha.bound);
                    }
                    let dpi = projection::dpi_half_bound_check(&a, &d, &quad)?;
                    all_pass &= dpi.pass;
                    if dpi.total_measured / dpi.total_bound > worst_total.0 / worst_total.1 {
                        worst_total = (dpi.total_measured, dpi.total_bound);
                    }
                    for m in dpi.beta_block_measured {
                        if m / dpi.beta_block_bound > worst_beta.0 / worst_beta.1 {
                            worst_beta = (m, dpi.beta_block_bound);
                        }
                    }
                }
                for (check, (measured, bound)) in [
                    ("alpha-part", worst_alpha),
                    ("beta-offdiagonal-block", worst_beta),
                    ("derivative-total", worst_total),
                ] {
                    rows.push(SweepRow {
                        sigma,
                        check: check.to_string(),
                        inputs_digest: hesslab::report::digest(&format!(
                            "seed={} sigma={sigma} trials={trials} check={check}",
                            cfg.seed
                        )),
                        measured,
                        bound,
                        slack: measured / bound - 1.0,
                        pass: measured <= bound * (1.0 + 1e-6),
                    });
                }
            }
            let mut csv = String::from("sigma,check,measured,bound,pass\n");
            let mut table = String::from(
                "sigma sweep of the level-1/2 bounds (worst case per cell)\n  sigma   check                    measured      bound\n",
            );
            for r in &rows {
                writeln!(csv, "{},{},{},{},{}", r.sigma, r.check, r.measured, r.bound, r.pass)?;
                writeln!(
                    table,
                    "  {:<7} {:<24} {:<13.6} {:<13.6} {}",
                    r.sigma,
                    r.check,
                    r.measured,
                    r.bound,
                    if r.pass { "ok" } else { "VIOLATION" }
                )?;
            }
            emit(cfg, &Rendered::from_serializable(&rows, table, Some(csv))?)?;
            Ok(all_pass)
        }
        ProjectionCmd::Continuity { spectrum, eps } => {
            let a = util::load_spectrum(spectrum, HessianType::Floer)?;
            let sigma = a.spectral_gap().ok_or_else(|| anyhow!("spectrum must be invertible"))?;
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let d = linalg::random_symmetric(a.dim(), &mut rng);
            let d = &d * (eps * sigma / linalg::spectral_norm(&d));
            let (vals, vecs) = linalg::sym_eigen_ascending(&(a.matrix() + &d));
            let b = WeakHessian::from_eigenvalues(&vals, Some(vecs), None, HessianType::Floer)?;
            let report = projection::projection_continuity_check(&a, &b, &quad)?;
            let table = format!(
                "projection continuity under |delta| = {eps} sigma\n  uniform gap {:.4}\n  level 1/2:  {:.6} <= {:.6}\n  level 3/2:  {:.6} <= {:.6} (shift-transported perturbation norm)\n  pass: {}\n",
                report.sigma_uniform,
                report.half_measured,
                report.half_bound,
                report.threehalf_measured,
                report.threehalf_bound,
                report.pass,
            );
            let ok = report.pass;
            emit(cfg, &Rendered::from_serializable(&report, table, None)?)?;
            Ok(ok)
        }
        ProjectionCmd::RestrictedIso { spectrum, eps } => {
            let a = util::load_spectrum(spectrum, HessianType::Floer)?;
            let sigma = a.spectral_gap().ok_or_else(|| anyhow!("spectrum must be invertible"))?;
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let d = linalg::random_symmetric(a.dim(), &mut rng);
            let d = &d * (eps * sigma / linalg::spectral_norm(&d));
            let (vals, vecs) = linalg::sym_eigen_ascending(&(a.matrix() + &d));
            let b = WeakHessian::from_eigenvalues(&vals, Some(vecs), None, HessianType::Floer)?;
            let report = projection::restricted_projection_iso_check(&a, &b)?;
            let mut table = format!(
                "restricted projections within eps_plus = {}\n  projection distance (1/2, 3/2): {:?}\n",
                report.epsilon_plus, report.projection_distance
            );
            for lvl in &report.levels {
                writeln!(
                    table,
                    "  level {}: first composition {:.4} from Id (<= 1/4), second {:.4} (<= 1/2), condition {:.4} (<= 2)",
                    lvl.level, lvl.deviation_a, lvl.deviation_b, lvl.condition
                )?;
            }
            writeln!(table, "  ranks: {} vs {}", report.rank_a, report.rank_b)?;
            let ok = report.pass;
            emit(cfg, &Rendered::from_serializable(&report, table, None)?)?;
            Ok(ok)
        }
    }
}

// ---------------------------------------------------------------------------
// schur
// ---------------------------------------------------------------------------

fn build_schur(
    kind: &str,
    a: &str,
    b: &str,
    window: u64,
) -> Result<(schur::SchurMatrix, Option<SchurCertificate>, Option<f64>)> {
    match kind {
        "cor" => {
            let (m, cert) = schur::corollary_matrix(
                &util::parse_sequence(a)?,
                &util::parse_sequence(b)?,
                window,
            )?;
            Ok((m, Some(cert), None))
        }
        "ex3" => {
            let (m, cert) = schur::example_iii_matrix(
                &util::parse_sequence(a)?,
                &util::parse_sequence(b)?,
                window,
            )?;
            Ok((m, Some(cert), None))
        }
        "obstruction" => Ok((schur::SchurMatrix::obstruction(), None, None)),
        "l2exp" => {
            // Integral form of the Schur criterion with the exponential
            // family matching the closed-form entries.
            let seq_a = util::parse_sequence(a)?;
            let seq_b = util::parse_sequence(b)?;
            let fs: Vec<schur::L2Function> = (1..=window)
                .map(|nu| schur::L2Function::ScaledExp {
                    coeff: seq_b.at(nu).sqrt(),
                    rate: seq_b.at(nu),
                })
                .collect();
            let gs: Vec<schur::L2Function> = (1..=window)
                .map(|mu| schur::L2Function::ScaledExp {
                    coeff: seq_a.at(mu).sqrt(),
                    rate: seq_a.at(mu),
                })
                .collect();
            let (m, kappa) = schur::schur_from_l2(&fs, &gs, schur::Interval::half_line())?;
            Ok((m, None, Some(kappa)))
        }
        other => {
            bail!("unknown multiplier kind {other:?}; expected cor, ex3, obstruction or l2exp")
        }
    }
}

fn run_schur(cmd: &SchurCmd, cfg: &RunConfig) -> Result<bool> {
    let probes = ProbeConfig { seed: cfg.seed, ..ProbeConfig::default() };
    match cmd {
        SchurCmd::Build { kind, a, b } => {
            let window = cfg.n.min(64);
            let (m, cert, kappa) = build_schur(kind, a, b, window)?;
            let win = m.window(window)?;
            #[derive(serde::Serialize)]
            struct BuildReport {
                kind: String,
                window: u64,
                certified_bound: Option<f64>,
                entries: Vec<Vec<f64>>,
            }
            let report = BuildReport {
                kind: kind.clone(),
                window,
                certified_bound: cert.as_ref().map(|c| c.bound()).or(kappa),
                entries: (0..win.nrows())
                    .map(|i| (0..win.ncols()).map(|j| win[(i, j)]).collect())
                    .collect(),
            };
            let mut csv = String::from("mu,nu,value\n");
            for i in 0..win.nrows() {
                for j in 0..win.ncols() {
                    writeln!(csv, "{},{},{}", i + 1, j + 1, win[(i, j)])?;
                }
            }
            let table = format!(
                "{kind} window {window}\n{}\n  certified bound: {}\n",
                matrix_table(&win),
                report.certified_bound.map(fnum).unwrap_or_else(|| "none".into())
            );
            emit(cfg, &Rendered::from_serializable(&report, table, Some(csv))?)?;
            Ok(true)
        }
        SchurCmd::Bounds { kind, a, b } => {
            let window = cfg.n;
            let (m, cert, kappa) = build_schur(kind, a, b, window)?;
            let lower = schur::schur_norm_lower_bound(&m, window, &probes)?;
            // One explicit Hadamard application: the identity probe.
            let id_ratio = linalg::spectral_norm(&schur::hadamard(
                &m,
                &DMatrix::identity(window as usize, window as usize),
            )?);
            let upper = match &cert {
                Some(cert) => Some(schur::grothendieck_upper_bound(cert, &m, window, &probes)?),
                None => None,
            };
            #[derive(serde::Serialize)]
            struct BoundsReport {
                kind: String,
                window: u64,
                lower_bound: f64,
                lower_witness: String,
                identity_probe_ratio: f64,
                upper_bound: Option<f64>,
                upper_consistent: Option<bool>,
            }
            let report = BoundsReport {
                kind: kind.clone(),
                window,
                lower_bound: lower.value,
                lower_witness: lower.witness.clone(),
                identity_probe_ratio: id_ratio,
                upper_bound: upper.as_ref().map(|u| u.bound).or(kappa),
                upper_consistent: upper.as_ref().map(|u| u.pass),
            };
            let table = format!(
                "{kind} multiplier norm bounds at window {window}\n  lower bound {} ({})\n  upper bound {}\n  consistent: {:?}\n",
                fnum(report.lower_bound),
                report.lower_witness,
                report.upper_bound.map(fnum).unwrap_or_else(|| "none".into()),
                report.upper_consistent,
            );
            let ok = match report.upper_bound {
                Some(upper) => report.lower_bound <= upper * (1.0 + 1e-9),
                None => true,
            };
            emit(cfg, &Rendered::from_serializable(&report, table, None)?)?;
            Ok(ok)
        }
        SchurCmd::Limits { kind, a, b } => {
            let (m, _, _) = build_schur(kind, a, b, cfg.n.min(64))?;
            let schedule: Vec<u64> = vec![cfg.n.max(8), cfg.n.max(8) * 2];
            let report = schur::iterated_limits_check(&m, &schedule)?;
            let table = format!(
                "iterated limits of {kind}\n  lim_mu lim_nu = {}\n  lim_nu lim_mu = {}\n  gap = {}\n  verdict: {:?}\n",
                fnum(report.l1),
                fnum(report.l2),
                fnum(report.gap),
                report.verdict,
            );
            emit(cfg, &Rendered::from_serializable(&report, table, None)?)?;
            Ok(true)
        }
        SchurCmd::Obstruction { schedule } => {
            let schedule: Vec<u64> = schedule
                .split(',')
                .map(|s| s.trim().parse::<u64>().context("schedule entry"))
                .collect::<Result<_>>()?;
            let table_data = schur::obstruction_demo(&schedule, &probes)?;
            let mut csv = Vec::new();
            table_data.write_csv(&mut csv)?;
            let csv = String::from_utf8(csv).expect("utf8");
            let mut table = String::from(
                "obstruction growth table for mu/(mu+nu)\n  n      lower_bound  gap_witness\n",
            );
            for row in &table_data.rows {
                writeln!(table, "  {:<6} {:<12.6} {:.6}", row.n, row.lower_bound, row.gap_witness)?;
            }
            let monotone = table_data
                .rows
                .windows(2)
                .all(|w| w[1].lower_bound >= w[0].lower_bound - 1e-12);
            let gap_ok = table_data.rows.iter().all(|r| (r.gap_witness - 1.0).abs() < 1e-3);
            emit(cfg, &Rendered::from_serializable(&table_data, table, Some(csv))?)?;
            Ok(monotone && gap_ok)
        }
    }
}

// ---------------------------------------------------------------------------
// interp
// ---------------------------------------------------------------------------

fn run_interp(cmd: &InterpCmd, cfg: &RunConfig) -> Result<bool> {
    match cmd {
        InterpCmd::Norm { f, g, level, identity } => {
            let fs = util::parse_spec_or_diagnose(f)?.sample(cfg.n)?.values;
            let gs = util::parse_spec_or_diagnose(g)?.sample(cfg.n)?.values;
            let ctx = WeightedNormContext::new(fs, gs)?;
            let level = match level.as_str() {
                "0" | "zero" => Level::Zero,
                "half" | "0.5" | "1/2" => Level::Half,
                "1" | "one" => Level::One,
                other => bail!("unknown level {other:?}; expected 0, half or 1"),
            };
            let n = cfg.n as usize;
            let t = if *identity {
                DMatrix::identity(n, n)
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                DMatrix::from_fn(n, n, |_, _| linalg::standard_normal(&mut rng))
            };
            let norm = interpolation::weighted_operator_norm(&t, &ctx, level)?;
            #[derive(serde::Serialize)]
            struct NormReport {
                level: Level,
                norm: f64,
            }
            let report = NormReport { level, norm };
            let table = format!("weighted operator norm at level {level:?}: {}\n", fnum(norm));
            emit(cfg, &Rendered::from_serializable(&report, table, None)?)?;
            Ok(true)
        }
        InterpCmd::Stein { f, g, trials } => {
            let fs = util::parse_spec_or_diagnose(f)?.sample(cfg.n)?.values;
            let gs = util::parse_spec_or_diagnose(g)?.sample(cfg.n)?.values;
            let ctx = WeightedNormContext::new(fs, gs)?;
            let n = cfg.n as usize;
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let mut csv = String::from("seed,M0,M1,Mhalf,bound,slack\n");
            let mut violations = 0usize;
            let mut worst = f64::NEG_INFINITY;
            let mut reports = Vec::new();
            for trial in 0..*trials {
                let t = DMatrix::from_fn(n, n, |_, _| linalg::standard_normal(&mut rng));
                let r = interpolation::stein_check(&t, &ctx)?;
                writeln!(
                    csv,
                    "{},{},{},{},{},{}",
                    cfg.seed.wrapping_add(trial as u64),
                    r.m0,
                    r.m1,
                    r.m_half,
                    r.bound,
                    r.slack
                )?;
                if !r.pass {
                    violations += 1;
                }
                worst = worst.max(r.slack);
                reports.push(r);
            }
            let table = format!(
                "midpoint interpolation sweep: {trials} trials at n = {}\n  violations: {violations}\n  worst relative slack: {worst:.3e}\n",
                cfg.n
            );
            emit(cfg, &Rendered::from_serializable(&reports, table, Some(csv))?)?;
            Ok(violations == 0)
        }
    }
}

// ---------------------------------------------------------------------------
// verify-all
// ---------------------------------------------------------------------------

fn run_verify_all(smoke: bool, cfg: &RunConfig) -> Result<bool> {
    // Small --n values switch to the smoke subset for quick sanity runs.
    let smoke = smoke || cfg.n <= 32;
    let outcomes = verify::run_all(&VerifyConfig { seed: cfg.seed, smoke });
    let mut table = String::new();
    let mut csv = String::from("id,name,measured,bound,pass\n");
    let mut all_pass = true;
    for o in &outcomes {
        writeln!(
            table,
            "criterion {:>2} {:<28} {}  measured={:<12.4e} bound={:<12.4e} ({} ms, budget {} ms)",
            o.id,
            o.name,
            if o.pass { "PASS" } else { "FAIL" },
            o.measured,
            o.bound,
            o.runtime_ms,
            o.budget_ms,
        )?;
        writeln!(table, "             {}", o.detail)?;
        writeln!(csv, "{},{},{},{},{}", o.id, o.name, o.measured, o.bound, o.pass)?;
        all_pass &= o.pass;
    }
    writeln!(
        table,
        "suite: {} ({} criteria, seed {}, {})",
        if all_pass { "PASS" } else { "FAIL" },
        outcomes.len(),
        cfg.seed,
        if smoke { "smoke scale" } else { "full scale" },
    )?;
    emit(cfg, &Rendered::from_serializable(&outcomes, table, Some(csv))?)?;
    Ok(all_pass)
}
