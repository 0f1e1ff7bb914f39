//! Asymptotic norm extraction for metric vector spaces.
//!
//! Given a metric vector space `(E, d)` over ℝ, ℂ or ℍ whose distance is
//! approximately translation invariant and approximately scalar
//! multiplicative, this crate estimates the asymptotic seminorm
//!
//! ```text
//! δ₀(x, y) = lim (1/n) ∫_𝕌 d(nux, nuy) dμ(u)
//! ```
//!
//! detects the bounded subspace `E₀` (the null space of `δ₀`), builds the
//! quotient norm on `E / E₀`, and verifies the explicit lipschitz-equivalence
//! sandwich between the extracted norm and the original distance.
//!
//! The building blocks:
//!
//! * [`field`] — scalar arithmetic for the three ℝ-fields and quadrature
//!   rules for the normalized Haar measure on the unit group 𝕌.
//! * [`space`] — the metric-vector-space abstraction, a zoo of distances
//!   with closed-form answers, and sampled metric-axiom checks.
//! * [`hypotheses`] — empirical estimation of the hypothesis constants
//!   (C₀; C₁, C₂, C₃) and divergence detection.
//! * [`asymptote`] — subadditive limit estimation, Haar-averaged distances,
//!   null-space detection, quotient norms, and bound verification.
//! * [`report`] — the analysis pipeline, a machine-readable JSON report,
//!   convergence-curve CSV export, and the pass/fail verification suite.
//!
//! Every estimator is a pure function of its inputs plus an explicit seed,
//! so identical inputs produce identical outputs. Sampling can only ever
//! certify "consistent with the hypotheses at the sampled resolution",
//! never a proof; verdicts and reports are worded accordingly.
//!
//! See the crate examples for runnable tours of each capability, or the
//! `amn` binary for the command-line pipeline.

pub mod asymptote;
pub mod field;
pub mod hypotheses;
pub mod report;
pub mod space;

pub mod cli;

pub use asymptote::{
    averaged_distance, delta, delta0, extract_norm_model, homogeneity_check, quotient_hausdorff,
    quotient_norm, subadditive_limit, verify_theorem2_bounds, Delta0Mode, ExtractConfig,
    LimitEstimate, NormModel, Verdict,
};
pub use field::{unit_quadrature, FieldTag, Scalar, UnitQuadrature};
pub use hypotheses::{
    check_sum_condition, estimate_translation_defect, fit_asymptotic, fit_multiplicativity,
    AsymptoticFit, FitOutcome, HypothesisConstants, SumConditionOutcome,
};
pub use space::{metric_axiom_check, AxiomReport, DistanceSpace, Vector};

/// Errors surfaced by fallible constructors, parsers and I/O.
///
/// Numerical estimators themselves do not fail: degenerate or
/// hypothesis-violating inputs produce verdicts, not errors. Mismatched
/// fields in scalar/vector arithmetic are usage errors and panic.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A constructor precondition was violated (e.g. `p < 1` for ℓp).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// A space spec string or CLI point argument failed to parse.
    #[error("spec parse error: {0}")]
    SpecParse(String),
    /// An operation requiring a NORMABLE model was given a degenerate one.
    #[error("model not usable: {0}")]
    NotNormable(String),
    /// Report (de)serialization failure or schema version mismatch.
    #[error("report error: {0}")]
    Report(String),
    /// Underlying I/O failure when writing reports or curves.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
