//! Subadditive limit estimation along geometric schedules.
//!
//! For a C₀-translation-invariant distance the sequence
//! `aₙ = d(nx, ny) + 2C₀` is subadditive, so `aₙ/n` converges and
//! `min (aₙ + 2C₀)/n` is a monotone upper envelope of the limit. The
//! estimator evaluates `aₙ` on a geometric schedule (total cost logarithmic
//! in `n_max`), reports the envelope, and extrapolates the empirically
//! affine `aₙ ≈ δ·n + b` structure across the largest schedule points. Both
//! the envelope and the extrapolated value are retained so a consumer can
//! distrust extrapolation.

use serde::{Deserialize, Serialize};

use crate::field::UnitQuadrature;
use crate::space::{scale_vector, DistanceSpace, Vector};
use crate::{Error, Result};

/// Default largest schedule point: 2²⁰.
pub const DEFAULT_N_MAX: u64 = 1 << 20;

/// How many of the largest schedule points enter the affine extrapolation.
const EXTRAPOLATION_POINTS: usize = 5;

/// The output of a subadditive-limit computation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitEstimate {
    /// Best estimate: the extrapolated slope clamped to `[0, upper_envelope]`.
    pub value: f64,
    /// `min over the schedule of (aₙ + 2C₀)/n`; an upper bound of the limit
    /// for genuinely subadditive sequences.
    pub upper_envelope: f64,
    /// Slope of the least-squares affine fit over the largest schedule points.
    pub extrapolated: f64,
    /// Error indicator: difference of the final two envelope values.
    pub last_gap: f64,
    /// Schedule points used (strictly increasing).
    pub schedule: Vec<u64>,
    /// `aₙ` at each schedule point.
    pub a_values: Vec<f64>,
    /// Running-minimum envelope at each schedule point (non-increasing).
    pub envelope_curve: Vec<f64>,
    pub n_max: u64,
}

/// The default geometric schedule: powers of two `1, 2, 4, …` up to and
/// including the largest power not exceeding `n_max`.
pub fn geometric_schedule(n_max: u64) -> Vec<u64> {
    assert!(n_max >= 1, "schedule needs n_max >= 1");
    let mut schedule = Vec::new();
    let mut n: u64 = 1;
    while n <= n_max {
        schedule.push(n);
        match n.checked_mul(2) {
            Some(next) => n = next,
            None => break,
        }
    }
    schedule
}

/// Estimate `lim aₙ/n` for a weakly subadditive sequence evaluated on a
/// strictly increasing schedule.
pub fn subadditive_limit<F: Fn(u64) -> f64>(
    a: F,
    c0: f64,
    schedule: &[u64],
) -> Result<LimitEstimate> {
    if schedule.is_empty() {
        return Err(Error::InvalidParameter("schedule must be nonempty".into()));
    }
    if schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("schedule must be strictly increasing".into()));
    }
    let a_values: Vec<f64> = schedule.iter().map(|&n| a(n)).collect();
    let mut envelope_curve = Vec::with_capacity(schedule.len());
    let mut running = f64::INFINITY;
    for (&n, &an) in schedule.iter().zip(&a_values) {
        running = running.min((an + 2.0 * c0) / n as f64);
        envelope_curve.push(running);
    }
    debug_assert!(envelope_curve.windows(2).all(|w| w[1] <= w[0] + 1e-15));
    let upper_envelope = *envelope_curve.last().expect("schedule is nonempty");
    let last_gap = if envelope_curve.len() >= 2 {
        envelope_curve[envelope_curve.len() - 2] - upper_envelope
    } else {
        0.0
    };
    let extrapolated = affine_slope_tail(schedule, &a_values, EXTRAPOLATION_POINTS);
    let value = extrapolated.max(0.0).min(upper_envelope);
    debug_assert!(value <= upper_envelope + 1e-12);
    Ok(LimitEstimate {
        value,
        upper_envelope,
        extrapolated,
        last_gap,
        schedule: schedule.to_vec(),
        a_values,
        envelope_curve,
        n_max: *schedule.last().expect("schedule is nonempty"),
    })
}

/// Least-squares slope of `a ≈ δ·n + b` over the last `points` entries
/// (centered for conditioning). Falls back to `a/n` for single points.
fn affine_slope_tail(schedule: &[u64], a_values: &[f64], points: usize) -> f64 {
    let k = points.min(schedule.len());
    if k < 2 {
        return a_values[0] / schedule[0] as f64;
    }
    let ns = &schedule[schedule.len() - k..];
    let avs = &a_values[a_values.len() - k..];
    let mean_n = ns.iter().map(|&n| n as f64).sum::<f64>() / k as f64;
    let mean_a = avs.iter().sum::<f64>() / k as f64;
    let mut num = 0.0;
    let mut den = 0.0;
    for (&n, &a) in ns.iter().zip(avs) {
        let dn = n as f64 - mean_n;
        num += dn * (a - mean_a);
        den += dn * dn;
    }
    num / den
}

/// The Haar-averaged distance `d₀(x, y) = Σᵢ wᵢ · d(uᵢx, uᵢy)`.
pub fn averaged_distance(
    space: &DistanceSpace,
    quad: &UnitQuadrature,
    x: &Vector,
    y: &Vector,
) -> f64 {
    assert!(
        quad.field() == space.field(),
        "quadrature field {} does not match space field {}",
        quad.field(),
        space.field()
    );
    quad.nodes()
        .iter()
        .map(|(u, w)| w * space.evaluate(&scale_vector(*u, x), &scale_vector(*u, y)))
        .sum()
}

/// δ(x, y) = lim d(nx, ny)/n, estimated on the given schedule.
pub fn delta(
    space: &DistanceSpace,
    c0: f64,
    x: &Vector,
    y: &Vector,
    schedule: &[u64],
) -> Result<LimitEstimate> {
    let estimate =
        subadditive_limit(|n| space.evaluate(&x.scale_int(n), &y.scale_int(n)), c0, schedule)?;
    // δ(x,y) ≤ d(x,y) + 2C₀ holds by construction: the envelope includes
    // the n = 1 point whenever the schedule starts at 1.
    debug_assert!(
        schedule[0] != 1
            || estimate.value <= space.evaluate(x, y) + 2.0 * c0 + 1e-9,
        "limit exceeded the n = 1 bound"
    );
    Ok(estimate)
}

/// Which side of the exchange `lim ∘ ∫ = ∫ ∘ lim` the estimator takes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Delta0Mode {
    /// Average over 𝕌 first, then take the subadditive limit.
    AvgThenLimit,
    /// Take per-node limits, then average the node values.
    LimitThenAvg,
}

/// δ₀(x, y) = lim d₀(nx, ny)/n, in either evaluation order. The two modes
/// agree in the limit; their numerical discrepancy is a consumer-visible
/// cross-check.
pub fn delta0(
    space: &DistanceSpace,
    quad: &UnitQuadrature,
    c0: f64,
    x: &Vector,
    y: &Vector,
    schedule: &[u64],
    mode: Delta0Mode,
) -> Result<LimitEstimate> {
    match mode {
        Delta0Mode::AvgThenLimit => subadditive_limit(
            |n| averaged_distance(space, quad, &x.scale_int(n), &y.scale_int(n)),
            c0,
            schedule,
        ),
        Delta0Mode::LimitThenAvg => {
            let mut combined: Option<LimitEstimate> = None;
            for (u, w) in quad.nodes() {
                let part = delta(space, c0, &scale_vector(*u, x), &scale_vector(*u, y), schedule)?;
                combined = Some(match combined {
                    None => scale_estimate(&part, *w),
                    Some(acc) => add_estimates(&acc, &scale_estimate(&part, *w)),
                });
            }
            Ok(combined.expect("quadrature node sets are nonempty"))
        }
    }
}

fn scale_estimate(e: &LimitEstimate, w: f64) -> LimitEstimate {
    LimitEstimate {
        value: w * e.value,
        upper_envelope: w * e.upper_envelope,
        extrapolated: w * e.extrapolated,
        last_gap: w * e.last_gap,
        schedule: e.schedule.clone(),
        a_values: e.a_values.iter().map(|a| w * a).collect(),
        envelope_curve: e.envelope_curve.iter().map(|v| w * v).collect(),
        n_max: e.n_max,
    }
}

fn add_estimates(a: &LimitEstimate, b: &LimitEstimate) -> LimitEstimate {
    debug_assert_eq!(a.schedule, b.schedule);
    LimitEstimate {
        value: a.value + b.value,
        upper_envelope: a.upper_envelope + b.upper_envelope,
        extrapolated: a.extrapolated + b.extrapolated,
        last_gap: a.last_gap + b.last_gap,
        schedule: a.schedule.clone(),
        a_values: a.a_values.iter().zip(&b.a_values).map(|(x, y)| x + y).collect(),
        envelope_curve: a
            .envelope_curve
            .iter()
            .zip(&b.envelope_curve)
            .map(|(x, y)| x + y)
            .collect(),
        n_max: a.n_max,
    }
}
