//! Empirical estimation of hypothesis constants: the translation defect C₀,
//! the multiplicativity constants (C₁, C₂, C₃), the derived C₂′, and the
//! n-fold sum condition.
//!
//! Sampled estimation can only lower-bound the true constants; fitted values
//! certify the sampled inequalities exactly (`max_residual ≤ 0`) and all
//! downstream bound checks re-test on fresh seeds. Verdicts are therefore
//! "consistent with the hypotheses at sampled resolution", never proofs.
//!
//! Divergence detection: a fixed sample box bounds every distance value, so
//! no finite sample can push the fitted C₂ past any fixed ceiling even when
//! no finite C₂ exists globally. The fit therefore also sweeps the scale of
//! the base pairs (levels 2^j) and tracks the C₂ each level requires. If the
//! per-level requirement keeps growing geometrically through the top levels,
//! the extrapolated constant is unbounded and the fit reports DIVERGENT.

use rand::Rng;
use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::field::{unit_quadrature, FieldTag, Scalar};
use crate::space::{sample_vector, scale_vector, DistanceSpace, Vector, DEFAULT_BOX_RADIUS};
use crate::{Error, Result};

/// Default ceiling above which a fitted constant is declared divergent.
pub const DEFAULT_DIVERGENCE_CEILING: f64 = 1e6;

/// Default exponent bound for the λ sweep: |λ| runs over 2^0 .. 2^10.
pub const DEFAULT_LAMBDA_MAX_EXP: u32 = 10;

/// C₁ candidates tried in increasing order when fitting Theorem-2 style
/// constants; the first finite fit wins.
pub const DEFAULT_C1_SELECTION_GRID: [f64; 7] = [1.0, 1.05, 1.1, 1.25, 1.5, 2.0, 4.0];

/// Default C₁ grid for the asymptotic (C₁ → 1) family, sorted decreasing.
pub const DEFAULT_ASYMPTOTIC_GRID: [f64; 4] = [1.5, 1.25, 1.1, 1.01];

/// Fitted hypothesis constants together with fit diagnostics.
///
/// `c2prime` is always recomputed as `c1·c2 + c1·c3 + c2`, and
/// `max_residual` is the worst slack of the fitted constants over every
/// sampled inequality (≤ 0 by construction).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HypothesisConstants {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c2prime: f64,
    pub samples_used: usize,
    pub max_residual: f64,
}

impl HypothesisConstants {
    /// Assemble, recomputing the derived constant.
    pub fn new(
        c0: f64,
        c1: f64,
        c2: f64,
        c3: f64,
        samples_used: usize,
        max_residual: f64,
    ) -> Self {
        assert!(c1 >= 1.0, "C1 must be at least 1");
        assert!(c0 >= 0.0 && c2 >= 0.0 && c3 >= 0.0);
        HypothesisConstants {
            c0,
            c1,
            c2,
            c3,
            c2prime: c1 * c2 + c1 * c3 + c2,
            samples_used,
            max_residual,
        }
    }
}

/// Result of a multiplicativity fit at one C₁.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FitOutcome {
    Finite { c2: f64, c3: f64 },
    Divergent,
}

impl FitOutcome {
    pub fn is_divergent(&self) -> bool {
        matches!(self, FitOutcome::Divergent)
    }
}

/// Full diagnostics of a multiplicativity fit.
#[derive(Clone, Debug)]
pub struct MultiplicativityFit {
    pub outcome: FitOutcome,
    /// Minimal C₂ required at each base-pair scale 2^j.
    pub level_requirements: Vec<f64>,
    /// Least-squares slope of log2(requirement) across the top levels.
    pub growth_rate: f64,
    pub samples_used: usize,
    /// Worst slack of the fitted constants on the sample set (finite fits).
    pub max_residual: Option<f64>,
}

/// Knobs for the multiplicativity fit.
#[derive(Clone, Copy, Debug)]
pub struct FitOptions {
    pub box_radius: f64,
    pub divergence_ceiling: f64,
    /// Base pairs are additionally scaled by 2^0 .. 2^scale_levels.
    pub scale_levels: u32,
    /// How many top levels enter the growth test.
    pub growth_window: usize,
    /// log2-slope at or above which the requirement is extrapolated to ∞.
    pub growth_slope_threshold: f64,
    /// Levels below this are treated as numerically zero.
    pub growth_floor: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            box_radius: DEFAULT_BOX_RADIUS,
            divergence_ceiling: DEFAULT_DIVERGENCE_CEILING,
            scale_levels: DEFAULT_LAMBDA_MAX_EXP,
            growth_window: 6,
            growth_slope_threshold: 0.1,
            growth_floor: 1e-9,
        }
    }
}

/// The default λ sweep: `{±2^k·u}` for `0 ≤ k ≤ max_exp` and `u` running
/// over the nodes of a small unit-group quadrature (exact duplicates are
/// dropped).
pub fn default_lambda_sweep(field: FieldTag, max_exp: u32, seed: u64) -> Vec<Scalar> {
    let resolution = match field {
        FieldTag::Real => 1,
        FieldTag::Complex => 8,
        FieldTag::Quaternion => 24,
    };
    let quad = unit_quadrature(field, resolution, seed)
        .expect("fixed positive resolution is always valid");
    let mut sweep: Vec<Scalar> = Vec::new();
    for k in 0..=max_exp {
        let mag = (2.0f64).powi(k as i32);
        for (u, _) in quad.nodes() {
            for lam in [u.scale(mag), u.scale(-mag)] {
                if !sweep.iter().any(|s| s.coords() == lam.coords()) {
                    sweep.push(lam);
                }
            }
        }
    }
    sweep
}

/// Estimate the translation defect C₀:
/// `max(0, max over sampled (x,y,z) of d(x+z, y+z) − d(x,y))`.
///
/// A lower bound on the true C₀ at the sampled resolution.
pub fn estimate_translation_defect(space: &DistanceSpace, seed: u64, trials: usize) -> f64 {
    estimate_translation_defect_in_box(space, seed, trials, DEFAULT_BOX_RADIUS)
}

pub fn estimate_translation_defect_in_box(
    space: &DistanceSpace,
    seed: u64,
    trials: usize,
    box_radius: f64,
) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triples: Vec<(Vector, Vector, Vector)> = (0..trials)
        .map(|_| {
            (
                sample_vector(&mut rng, space.field(), space.dim(), box_radius),
                sample_vector(&mut rng, space.field(), space.dim(), box_radius),
                sample_vector(&mut rng, space.field(), space.dim(), box_radius),
            )
        })
        .collect();
    let defect = triples
        .par_iter()
        .map(|(x, y, z)| space.evaluate(&x.add(z), &y.add(z)) - space.evaluate(x, y))
        .reduce(|| f64::NEG_INFINITY, f64::max);
    defect.max(0.0)
}

/// Fit minimal `(c2, c3)` such that `c2·|λ| + c3` dominates every sampled
/// violation of the two-sided multiplicativity inequality at the given `c1`,
/// or report DIVERGENT. See the module docs for the divergence rule.
pub fn fit_multiplicativity(
    space: &DistanceSpace,
    c1: f64,
    seed: u64,
    trials: usize,
    lambda_sweep: &[Scalar],
) -> Result<FitOutcome> {
    fit_multiplicativity_detailed(space, c1, seed, trials, lambda_sweep, FitOptions::default())
        .map(|fit| fit.outcome)
}

pub fn fit_multiplicativity_detailed(
    space: &DistanceSpace,
    c1: f64,
    seed: u64,
    trials: usize,
    lambda_sweep: &[Scalar],
    opts: FitOptions,
) -> Result<MultiplicativityFit> {
    if lambda_sweep.is_empty() {
        return Err(Error::InvalidParameter("lambda sweep must be nonempty".into()));
    }
    if !(c1 >= 1.0) {
        return Err(Error::InvalidParameter(format!("c1 must be >= 1, got {c1}")));
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(Vector, Vector)> = (0..trials)
        .map(|_| {
            (
                sample_vector(&mut rng, space.field(), space.dim(), opts.box_radius),
                sample_vector(&mut rng, space.field(), space.dim(), opts.box_radius),
            )
        })
        .collect();

    // residuals[j] = per-sample (|λ|, violation) at base-pair scale 2^j
    let levels = opts.scale_levels as usize + 1;
    let residuals: Vec<Vec<(f64, f64)>> = (0..levels)
        .into_par_iter()
        .map(|j| {
            let s = (2.0f64).powi(j as i32);
            let mut level = Vec::with_capacity(pairs.len() * lambda_sweep.len());
            for (x, y) in &pairs {
                let (xs, ys) = (x.scale_real(s), y.scale_real(s));
                let d = space.evaluate(&xs, &ys);
                for lam in lambda_sweep {
                    let mag = lam.abs();
                    let dl = space.evaluate(&scale_vector(*lam, &xs), &scale_vector(*lam, &ys));
                    let r_plus = dl - c1 * mag * d;
                    let r_minus = mag * d / c1 - dl;
                    level.push((mag, r_plus.max(r_minus)));
                }
            }
            level
        })
        .collect();

    // c3 covers the |λ| ≤ 1 samples at the native scale; everything else
    // must be certified by c2·|λ|.
    let c3 = residuals[0]
        .iter()
        .filter(|(mag, _)| *mag <= 1.0 + 1e-12)
        .map(|(_, r)| *r)
        .fold(0.0, f64::max);
    let level_requirements: Vec<f64> = residuals
        .iter()
        .enumerate()
        .map(|(j, level)| {
            level
                .iter()
                .filter(|(mag, _)| j > 0 || *mag > 1.0 + 1e-12)
                .map(|(mag, r)| (r - c3) / mag)
                .fold(0.0, f64::max)
        })
        .collect();
    let c2 = level_requirements.iter().copied().fold(0.0, f64::max);
    let samples_used = trials * lambda_sweep.len() * levels;

    let growth_rate = log2_growth_rate(&level_requirements, opts.growth_window, opts.growth_floor);
    let grows_without_bound = growth_rate
        .map(|rate| rate >= opts.growth_slope_threshold)
        .unwrap_or(false);

    if c2 > opts.divergence_ceiling || grows_without_bound {
        return Ok(MultiplicativityFit {
            outcome: FitOutcome::Divergent,
            level_requirements,
            growth_rate: growth_rate.unwrap_or(0.0),
            samples_used,
            max_residual: None,
        });
    }

    let max_residual = residuals
        .iter()
        .flat_map(|level| level.iter())
        .map(|(mag, r)| r - (c2 * mag + c3))
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(MultiplicativityFit {
        outcome: FitOutcome::Finite { c2, c3 },
        level_requirements,
        growth_rate: growth_rate.unwrap_or(0.0),
        samples_used,
        max_residual: Some(max_residual),
    })
}

/// Least-squares slope of log2(values) over the last `window` entries.
/// Returns `None` when any entry in the window sits at or below `floor`
/// (a vanishing requirement cannot diverge).
fn log2_growth_rate(values: &[f64], window: usize, floor: f64) -> Option<f64> {
    let w = window.min(values.len());
    if w < 2 {
        return None;
    }
    let tail = &values[values.len() - w..];
    if tail.iter().any(|v| *v <= floor) {
        return None;
    }
    let logs: Vec<f64> = tail.iter().map(|v| v.log2()).collect();
    let n = logs.len() as f64;
    let mean_x = (logs.len() - 1) as f64 / 2.0;
    let mean_y = logs.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (i, y) in logs.iter().enumerate() {
        let dx = i as f64 - mean_x;
        num += dx * (y - mean_y);
        den += dx * dx;
    }
    Some(num / den)
}

/// The asymptotic (Definition-6 style) family: one fit per grid C₁.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticFit {
    /// Sorted by decreasing C₁.
    pub grid: Vec<AsymptoticGridPoint>,
    pub divergent: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticGridPoint {
    pub c1: f64,
    #[serde(flatten)]
    pub fit: FitOutcome,
}

/// Apply [`fit_multiplicativity`] at every grid point (all strictly > 1),
/// sharing one seeded sample set across the grid.
pub fn fit_asymptotic(
    space: &DistanceSpace,
    c1_grid: &[f64],
    seed: u64,
    trials: usize,
    lambda_sweep: &[Scalar],
) -> Result<AsymptoticFit> {
    fit_asymptotic_with(space, c1_grid, seed, trials, lambda_sweep, FitOptions::default())
}

pub fn fit_asymptotic_with(
    space: &DistanceSpace,
    c1_grid: &[f64],
    seed: u64,
    trials: usize,
    lambda_sweep: &[Scalar],
    opts: FitOptions,
) -> Result<AsymptoticFit> {
    if c1_grid.iter().any(|c1| !(*c1 > 1.0)) {
        return Err(Error::InvalidParameter(
            "asymptotic grid values must be strictly greater than 1".into(),
        ));
    }
    let mut grid_sorted: Vec<f64> = c1_grid.to_vec();
    grid_sorted.sort_by(|a, b| b.partial_cmp(a).expect("grid values are finite"));
    let mut grid = Vec::with_capacity(grid_sorted.len());
    let mut divergent = false;
    for c1 in grid_sorted {
        let fit = fit_multiplicativity_detailed(space, c1, seed, trials, lambda_sweep, opts)?;
        divergent |= fit.outcome.is_divergent();
        grid.push(AsymptoticGridPoint { c1, fit: fit.outcome });
    }
    Ok(AsymptoticFit { grid, divergent })
}

/// Outcome of the n-fold sum condition check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SumConditionOutcome {
    Value { c0_sum: f64 },
    Divergent,
}

/// Minimal C₀ such that `d(Σxᵢ, Σyᵢ) ≤ c1·Σd(xᵢ, yᵢ) + n·C₀` holds on all
/// sampled tuples with `2 ≤ n ≤ max_n`, clamped at 0; DIVERGENT above the
/// default ceiling.
pub fn check_sum_condition(
    space: &DistanceSpace,
    c1: f64,
    seed: u64,
    trials: usize,
    max_n: usize,
) -> Result<SumConditionOutcome> {
    check_sum_condition_in_box(space, c1, seed, trials, max_n, DEFAULT_BOX_RADIUS)
}

pub fn check_sum_condition_in_box(
    space: &DistanceSpace,
    c1: f64,
    seed: u64,
    trials: usize,
    max_n: usize,
    box_radius: f64,
) -> Result<SumConditionOutcome> {
    if max_n < 2 {
        return Err(Error::InvalidParameter(format!("max_n must be >= 2, got {max_n}")));
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tuples: Vec<Vec<(Vector, Vector)>> = (0..trials)
        .map(|_| {
            let n = rng.gen_range(2..=max_n);
            (0..n)
                .map(|_| {
                    (
                        sample_vector(&mut rng, space.field(), space.dim(), box_radius),
                        sample_vector(&mut rng, space.field(), space.dim(), box_radius),
                    )
                })
                .collect()
        })
        .collect();
    let worst = tuples
        .par_iter()
        .map(|tuple| {
            let mut sum_x = Vector::zero(space.field(), space.dim());
            let mut sum_y = Vector::zero(space.field(), space.dim());
            let mut sum_d = 0.0;
            for (x, y) in tuple {
                sum_x = sum_x.add(x);
                sum_y = sum_y.add(y);
                sum_d += space.evaluate(x, y);
            }
            (space.evaluate(&sum_x, &sum_y) - c1 * sum_d) / tuple.len() as f64
        })
        .reduce(|| f64::NEG_INFINITY, f64::max)
        .max(0.0);
    if worst > DEFAULT_DIVERGENCE_CEILING {
        Ok(SumConditionOutcome::Divergent)
    } else {
        Ok(SumConditionOutcome::Value { c0_sum: worst })
    }
}
