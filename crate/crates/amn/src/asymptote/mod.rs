//! The asymptotic machinery: subadditive limit estimation, the
//! Haar-averaged distance d₀ and its limit seminorm δ₀, bounded-subspace
//! detection with quotient norms, and the bound-verification checks.

mod checks;
mod limits;
mod model;

pub use checks::{
    homogeneity_check, quotient_hausdorff, verify_theorem2_bounds, BoundReport,
    HomogeneityReport,
};
pub use limits::{
    averaged_distance, delta, delta0, geometric_schedule, subadditive_limit, Delta0Mode,
    LimitEstimate, DEFAULT_N_MAX,
};
pub use model::{
    extract_norm_model, quotient_norm, ExtractConfig, NormModel, Verdict,
    DEFAULT_TOL_NULL_REL,
};
