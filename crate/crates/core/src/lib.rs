//! hesslab — a desk-scale numerical workbench for spectral analysis on
//! Hilbert scales.
//!
//! The library models, at finite truncation, the objects that appear in the
//! spectral theory of Hessians acting on scales of weighted ℓ² spaces:
//!
//! * [`growth`] — monotone growth functions, their pointwise and Kang
//!   (merge) products, growth-type comparison on windows, and the
//!   constructive stride decompositions.
//! * [`hilbert`] — weighted ℓ² scales, Gram-matrix pairs, the Riesz
//!   operator, pair-growth extraction and the pair-isomorphism test.
//! * [`hessian`] — truncated weak Hessians with signed spectra, translation,
//!   signed growth functions and resolvent-level norms.
//! * [`projection`] — contour-integral spectral projections, their
//!   derivative, the Hadamard representation of the imaginary-axis block,
//!   and the quantitative norm bounds that come with them.
//! * [`schur`] — Schur/Hadamard multipliers with factorization certificates
//!   (upper bounds) and adversarial probe searches (lower bounds).
//! * [`interpolation`] — weighted operator norms and the Stein–Thorin
//!   midpoint inequality.
//! * [`verify`] — the self-contained acceptance suite wiring all of the
//!   above into reproducible pass/fail certificates.
//!
//! All computations are pure and deterministic for a fixed seed; values are
//! immutable after construction and safe to share across threads.

// Validation guards are written as `!(x > 0.0)` on purpose: unlike
// `x <= 0.0`, the negated form also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod growth;
pub mod hessian;
pub mod hilbert;
pub mod interpolation;
pub mod linalg;
pub mod projection;
pub mod report;
pub mod schur;
pub mod verify;

pub use growth::{GrowthFunction, GrowthSample, EquivalenceReport, Thresholds};
pub use hessian::{HessianFamily, HessianType, WeakHessian};
pub use hilbert::{GramPair, HilbertScale, PairMap};
pub use projection::{Contour, ContourSign, QuadratureConfig};
pub use schur::SchurMatrix;

/// Registry of the public operations exposed by the workbench, used by the
/// CLI coverage test to ensure every operation is reachable from a
/// subcommand.
pub const OPERATIONS: &[&str] = &[
    // growth
    "growth.sample",
    "growth.pointwise_product",
    "growth.kang_product",
    "growth.shift",
    "growth.equivalence_report",
    "growth.partial_order_leq",
    "growth.is_shift_invariant",
    "growth.is_scale_invariant",
    "growth.kang_decompose",
    // hilbert pair
    "hilbert.inner_product",
    "hilbert.level_shift_isometry",
    "hilbert.riesz_operator",
    "hilbert.extract_pair_growth",
    "hilbert.pair_isomorphism_equivalence_check",
    // hessian
    "hessian.from_spectrum",
    "hessian.signed_growth",
    "hessian.translate",
    "hessian.verify_translation_growth_equivalence",
    "hessian.resolvent_level_norms",
    "hessian.path_type_demo",
    // projection
    "projection.resolvent_factor",
    "projection.contour_projection",
    "projection.eigenprojection_oracle",
    "projection.projection_derivative",
    "projection.neumann_difference_check",
    "projection.beta_block_hadamard",
    "projection.block_decompose",
    "projection.half_level_norm",
    "projection.alpha_bound_check",
    "projection.dpi_half_bound_check",
    "projection.projection_continuity_check",
    "projection.restricted_projection_iso_check",
    // schur
    "schur.hadamard",
    "schur.schur_from_l2",
    "schur.corollary_matrix",
    "schur.example_iii_matrix",
    "schur.grothendieck_upper_bound",
    "schur.schur_norm_lower_bound",
    "schur.iterated_limits_check",
    "schur.obstruction_demo",
    // interpolation
    "interpolation.weighted_operator_norm",
    "interpolation.stein_check",
    // verify
    "verify.run_all",
];
