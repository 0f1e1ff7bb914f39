//! Extraction of the norm model: probe the asymptotic seminorm, detect the
//! bounded subspace E₀ as its numerical null space, and build the quotient
//! projector.
//!
//! E₀ detection is a search problem the underlying theory does not supply an
//! algorithm for: we minimize `v ↦ δ̂₀(v, 0)` over the unit sphere of the
//! realified space by seeded random-restart coordinate pattern search,
//! deflating to the orthogonal complement after each accepted null
//! direction. Detection is validated against zoo ground truth only; for
//! unknown spaces the verdict is "consistent at sampled resolution".

use rand::Rng;
use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::asymptote::limits::{
    delta0, geometric_schedule, Delta0Mode, LimitEstimate, DEFAULT_N_MAX,
};
use crate::field::UnitQuadrature;
use crate::hypotheses::HypothesisConstants;
use crate::space::{scale_vector, DistanceSpace, Vector};
use crate::{Error, Result};

/// Default relative null threshold: directions below `1e−3 ×` the median
/// probe seminorm are treated as null.
pub const DEFAULT_TOL_NULL_REL: f64 = 1e-3;

/// Median probe seminorm below this fraction of the median raw distance
/// means every direction sits at the estimator floor: the space is
/// degenerate and sphere search is skipped.
const DEGENERATE_RATIO: f64 = 5e-3;

/// Classification of a space after extraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    /// The quotient by the detected E₀ carries a genuine norm (E₀ may be
    /// trivial).
    Normable,
    /// Every direction is null at estimator resolution: E₀ is everything.
    DegenerateE0Full,
    /// The multiplicativity fit diverged; no constants certify the
    /// extraction hypotheses. Takes precedence over degeneracy.
    HypothesesViolated,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Normable => "NORMABLE",
            Verdict::DegenerateE0Full => "DEGENERATE_E0_FULL",
            Verdict::HypothesesViolated => "HYPOTHESES_VIOLATED",
        };
        f.write_str(s)
    }
}

/// Tuning knobs for [`extract_norm_model`].
#[derive(Clone, Debug)]
pub struct ExtractConfig {
    pub seed: u64,
    /// Schedule for every seminorm estimate.
    pub schedule: Vec<u64>,
    /// Seeded random probe directions on top of the standard basis.
    pub probes: usize,
    /// Null threshold relative to the median probe seminorm.
    pub tol_null_rel: f64,
    /// Random restarts of the sphere search per deflation round.
    pub restarts: usize,
    /// Coordinate-descent iterations per restart.
    pub steps: usize,
}

impl Default for ExtractConfig {
    fn default() -> Self {
        ExtractConfig {
            seed: 42,
            schedule: geometric_schedule(DEFAULT_N_MAX),
            probes: 16,
            tol_null_rel: DEFAULT_TOL_NULL_REL,
            restarts: 50,
            steps: 200,
        }
    }
}

/// The extracted seminorm evaluator, detected E₀ basis, quotient projector
/// and verdict.
#[derive(Clone, Debug)]
pub struct NormModel {
    space: DistanceSpace,
    quad: UnitQuadrature,
    c0: f64,
    schedule: Vec<u64>,
    verdict: Verdict,
    /// Orthonormal (in realified coordinates) basis of the detected E₀.
    null_basis: Vec<Vector>,
    tol_null: f64,
    /// Median probe seminorm; the scale every relative tolerance refers to.
    scale: f64,
    probe_values: Vec<f64>,
    /// max δ̂₀(u·b, 0) over quadrature nodes and detected null directions;
    /// K-linearity of E₀ is checked, not assumed.
    k_linearity_defect: f64,
}

impl NormModel {
    pub fn space(&self) -> &DistanceSpace {
        &self.space
    }

    pub fn quad(&self) -> &UnitQuadrature {
        &self.quad
    }

    pub fn c0(&self) -> f64 {
        self.c0
    }

    pub fn schedule(&self) -> &[u64] {
        &self.schedule
    }

    pub fn verdict(&self) -> Verdict {
        self.verdict
    }

    pub fn null_basis(&self) -> &[Vector] {
        &self.null_basis
    }

    pub fn tol_null(&self) -> f64 {
        self.tol_null
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn probe_values(&self) -> &[f64] {
        &self.probe_values
    }

    pub fn k_linearity_defect(&self) -> f64 {
        self.k_linearity_defect
    }

    /// The estimated seminorm δ̂₀(x, 0) (averaged first, then the limit).
    pub fn seminorm(&self, x: &Vector) -> LimitEstimate {
        delta0(
            &self.space,
            &self.quad,
            self.c0,
            x,
            &self.space.zero_vector(),
            &self.schedule,
            Delta0Mode::AvgThenLimit,
        )
        .expect("model schedules are validated at construction")
    }

    /// Project onto the orthogonal complement of span(null_basis) in
    /// realified coordinates.
    pub fn project(&self, x: &Vector) -> Vector {
        let mut reals = x.to_reals();
        for b in &self.null_basis {
            let br = b.to_reals();
            let coeff = dot(&reals, &br);
            for (r, bv) in reals.iter_mut().zip(&br) {
                *r -= coeff * bv;
            }
        }
        Vector::from_reals(x.field(), &reals).expect("projection preserves shape")
    }
}

/// Quotient norm of the class of `x`: δ̂₀(projector(x), 0). Requires a
/// NORMABLE model.
pub fn quotient_norm(model: &NormModel, x: &Vector) -> Result<f64> {
    if model.verdict() != Verdict::Normable {
        return Err(Error::NotNormable(format!(
            "quotient norm needs a NORMABLE model, verdict is {}",
            model.verdict()
        )));
    }
    Ok(model.seminorm(&model.project(x)).value)
}

/// Run the extraction: probe the seminorm on basis and random directions,
/// decide degeneracy, search for null directions with deflation, and
/// assemble the model. A divergent constants fit yields the
/// HYPOTHESES_VIOLATED verdict (not an error); the scan still runs so the
/// report can show both findings.
pub fn extract_norm_model(
    space: &DistanceSpace,
    quad: &UnitQuadrature,
    c0: f64,
    constants: Option<&HypothesisConstants>,
    config: &ExtractConfig,
) -> NormModel {
    assert!(
        quad.field() == space.field(),
        "quadrature field must match the space"
    );
    let real_dim = space.dim() * space.field().components();
    let seminorm_of = |reals: &[f64]| -> f64 {
        let v = Vector::from_reals(space.field(), reals).expect("probe shape is valid");
        delta0(
            space,
            quad,
            c0,
            &v,
            &space.zero_vector(),
            &config.schedule,
            Delta0Mode::AvgThenLimit,
        )
        .expect("validated schedule")
        .value
    };

    // Probe directions: realified standard basis plus seeded random units.
    let mut directions: Vec<Vec<f64>> = (0..real_dim)
        .map(|i| {
            let mut e = vec![0.0; real_dim];
            e[i] = 1.0;
            e
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for _ in 0..config.probes {
        directions.push(random_unit(&mut rng, real_dim));
    }
    let probe_values: Vec<f64> = directions.par_iter().map(|d| seminorm_of(d)).collect();
    let raw_values: Vec<f64> = directions
        .iter()
        .map(|d| {
            let v = Vector::from_reals(space.field(), d).expect("probe shape is valid");
            space.evaluate(&v, &space.zero_vector())
        })
        .collect();
    let scale = median(&probe_values);
    let raw_scale = median(&raw_values);
    let tol_null = config.tol_null_rel * scale;

    let divergent = constants.is_none();
    let degenerate = scale <= DEGENERATE_RATIO * raw_scale.max(f64::MIN_POSITIVE);

    let (null_basis_reals, searched) = if degenerate {
        // Everything is below resolution; E₀ is the whole space.
        (
            (0..real_dim)
                .map(|i| {
                    let mut e = vec![0.0; real_dim];
                    e[i] = 1.0;
                    e
                })
                .collect::<Vec<_>>(),
            false,
        )
    } else {
        (
            search_null_directions(&seminorm_of, real_dim, tol_null, &directions, &probe_values, config),
            true,
        )
    };

    let verdict = if divergent {
        Verdict::HypothesesViolated
    } else if null_basis_reals.len() == real_dim {
        Verdict::DegenerateE0Full
    } else {
        Verdict::Normable
    };

    let null_basis: Vec<Vector> = null_basis_reals
        .iter()
        .map(|b| Vector::from_reals(space.field(), b).expect("basis shape is valid"))
        .collect();

    // Detected E₀ should be a K-subspace, not merely an ℝ-subspace; measure
    // how null it stays under unit rotations.
    let k_linearity_defect = if searched && !null_basis.is_empty() {
        let stride = (quad.nodes().len() / 8).max(1);
        null_basis
            .iter()
            .flat_map(|b| quad.nodes().iter().step_by(stride).map(move |(u, _)| (u, b)))
            .map(|(u, b)| seminorm_of(&scale_vector(*u, b).to_reals()))
            .fold(0.0, f64::max)
    } else {
        0.0
    };

    NormModel {
        space: space.clone(),
        quad: quad.clone(),
        c0,
        schedule: config.schedule.clone(),
        verdict,
        null_basis,
        tol_null,
        scale,
        probe_values,
        k_linearity_defect,
    }
}

/// Deflating null search: minimize the seminorm over the unit sphere of the
/// current complement; accept directions below `tol_null`, polish them, and
/// repeat in the orthogonal complement until nothing null is found.
fn search_null_directions(
    seminorm_of: &(impl Fn(&[f64]) -> f64 + Sync),
    real_dim: usize,
    tol_null: f64,
    probe_dirs: &[Vec<f64>],
    probe_values: &[f64],
    config: &ExtractConfig,
) -> Vec<Vec<f64>> {
    let mut complement: Vec<Vec<f64>> = (0..real_dim)
        .map(|i| {
            let mut e = vec![0.0; real_dim];
            e[i] = 1.0;
            e
        })
        .collect();
    let mut null_basis: Vec<Vec<f64>> = Vec::new();

    // Warm start: the probe direction with the smallest seminorm.
    let warm = probe_values
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| a.partial_cmp(b).expect("seminorms are finite"))
        .map(|(i, _)| probe_dirs[i].clone());

    while !complement.is_empty() {
        let m = complement.len();
        let objective = |w: &[f64]| -> f64 {
            let v = combine(&complement, w);
            seminorm_of(&v)
        };
        let starts: Vec<Vec<f64>> = (0..config.restarts.max(1))
            .map(|r| {
                if r == 0 {
                    if let Some(w) = warm.as_ref().and_then(|v| coeffs_in(&complement, v)) {
                        return w;
                    }
                }
                let mut rng = ChaCha8Rng::seed_from_u64(
                    config.seed ^ (0x9e3779b97f4a7c15u64.wrapping_mul(r as u64 + 1)),
                );
                random_unit(&mut rng, m)
            })
            .collect();
        let (best_val, _, best_w) = starts
            .into_par_iter()
            .enumerate()
            .map(|(idx, start)| {
                let (w, val) = pattern_search(&objective, start, 0.5, config.steps);
                (val, idx, w)
            })
            .reduce(
                || (f64::INFINITY, usize::MAX, Vec::new()),
                |a, b| {
                    if (b.0, b.1) < (a.0, a.1) {
                        b
                    } else {
                        a
                    }
                },
            );
        if !(best_val <= tol_null) {
            break;
        }
        // Polish so the accepted direction (and later projections through
        // it) are accurate well below the acceptance threshold.
        let (w, _) = pattern_search(&objective, best_w, 0.05, 600);
        let v = combine(&complement, &w);
        null_basis.push(v.clone());
        complement = deflate(&complement, &v);
    }
    null_basis
}

/// Coordinate pattern search on the unit sphere (coefficients are
/// renormalized after every move). Deterministic given the start.
fn pattern_search(
    objective: &impl Fn(&[f64]) -> f64,
    start: Vec<f64>,
    initial_step: f64,
    iterations: usize,
) -> (Vec<f64>, f64) {
    let m = start.len();
    let mut w = normalized(start);
    let mut best = objective(&w);
    let mut step = initial_step;
    let mut failures_in_row = 0;
    for it in 0..iterations {
        let coord = it % m;
        let mut improved = false;
        for sign in [1.0, -1.0] {
            let mut cand = w.clone();
            cand[coord] += sign * step;
            let cand = normalized(cand);
            let val = objective(&cand);
            if val < best {
                best = val;
                w = cand;
                improved = true;
            }
        }
        if improved {
            failures_in_row = 0;
        } else {
            failures_in_row += 1;
            if failures_in_row >= m {
                step *= 0.5;
                failures_in_row = 0;
                if step < 1e-12 {
                    break;
                }
            }
        }
    }
    (w, best)
}

fn combine(basis: &[Vec<f64>], coeffs: &[f64]) -> Vec<f64> {
    let d = basis[0].len();
    let mut v = vec![0.0; d];
    for (b, &c) in basis.iter().zip(coeffs) {
        for (vi, bi) in v.iter_mut().zip(b) {
            *vi += c * bi;
        }
    }
    v
}

/// Coefficients of `v` in the orthonormal `basis`, renormalized; `None`
/// when `v` has no usable component in the span.
fn coeffs_in(basis: &[Vec<f64>], v: &[f64]) -> Option<Vec<f64>> {
    let coeffs: Vec<f64> = basis.iter().map(|b| dot(b, v)).collect();
    let n = norm(&coeffs);
    if n <= 1e-9 {
        None
    } else {
        Some(coeffs.iter().map(|c| c / n).collect())
    }
}

/// Remove the `v` component from an orthonormal basis and re-orthonormalize,
/// dropping the direction that collapses.
fn deflate(basis: &[Vec<f64>], v: &[f64]) -> Vec<Vec<f64>> {
    let mut reduced: Vec<Vec<f64>> = Vec::new();
    for b in basis {
        let coeff = dot(b, v);
        let mut nb: Vec<f64> = b.iter().zip(v).map(|(bi, vi)| bi - coeff * vi).collect();
        for r in &reduced {
            let c = dot(&nb, r);
            for (ni, ri) in nb.iter_mut().zip(r) {
                *ni -= c * ri;
            }
        }
        let n = norm(&nb);
        if n > 1e-8 {
            reduced.push(nb.iter().map(|x| x / n).collect());
        }
    }
    debug_assert_eq!(reduced.len() + 1, basis.len());
    reduced
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn normalized(mut a: Vec<f64>) -> Vec<f64> {
    let n = norm(&a);
    if n > 0.0 {
        for x in &mut a {
            *x /= n;
        }
    }
    a
}

fn random_unit(rng: &mut impl Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        if norm(&v) > 1e-3 {
            return normalized(v);
        }
    }
}

fn median(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("values are finite"));
    sorted[sorted.len() / 2]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{unit_quadrature, FieldTag};
    use crate::hypotheses::HypothesisConstants;
    use crate::space::{zoo_bounded_dir, zoo_lp, zoo_quasi_lp};

    fn constants_exact() -> HypothesisConstants {
        HypothesisConstants::new(0.0, 1.0, 0.0, 0.0, 1, 0.0)
    }

    fn fast_config() -> ExtractConfig {
        ExtractConfig {
            schedule: geometric_schedule(1 << 16),
            restarts: 12,
            steps: 120,
            probes: 8,
            ..ExtractConfig::default()
        }
    }

    #[test]
    fn lp_extracts_with_trivial_null_space() {
        let space = zoo_lp(FieldTag::Real, 3, 2.0).unwrap();
        let quad = unit_quadrature(FieldTag::Real, 1, 0).unwrap();
        let k = constants_exact();
        let model = extract_norm_model(&space, &quad, 0.0, Some(&k), &fast_config());
        assert_eq!(model.verdict(), Verdict::Normable);
        assert!(model.null_basis().is_empty());
        let x = Vector::from_reals(FieldTag::Real, &[3.0, 0.0, 4.0]).unwrap();
        assert!((quotient_norm(&model, &x).unwrap() - 5.0).abs() <= 1e-9);
        assert_eq!(model.project(&x), x);
    }

    #[test]
    fn bounded_dir_detects_the_capped_direction() {
        let space = zoo_bounded_dir(2, 1.0).unwrap();
        let quad = unit_quadrature(FieldTag::Real, 1, 0).unwrap();
        let k = constants_exact();
        let config = ExtractConfig {
            schedule: geometric_schedule(1 << 20),
            ..fast_config()
        };
        let model = extract_norm_model(&space, &quad, 0.0, Some(&k), &config);
        assert_eq!(model.verdict(), Verdict::Normable);
        assert_eq!(model.null_basis().len(), 1);
        let b = model.null_basis()[0].to_reals();
        assert!(b[1].abs() >= 0.999, "detected direction {:?}", b);
        assert!(model.seminorm(&model.null_basis()[0]).value <= model.tol_null());
        // quotient norm of (3, 7) is |3| regardless of the capped part
        let x = Vector::from_reals(FieldTag::Real, &[3.0, 7.0]).unwrap();
        let q = quotient_norm(&model, &x).unwrap();
        assert!((q - 3.0).abs() <= 1e-4, "quotient norm {q}");
        // well-definedness: shifting by a null vector does not move it
        let shifted = x.add(&model.null_basis()[0].scale_real(2.5));
        let q2 = quotient_norm(&model, &shifted).unwrap();
        assert!((q - q2).abs() <= 1e-4);
    }

    #[test]
    fn quasi_lp_is_degenerate_before_any_search() {
        let space = zoo_quasi_lp(2, 0.5).unwrap();
        let quad = unit_quadrature(FieldTag::Real, 1, 0).unwrap();
        let k = constants_exact();
        let config = ExtractConfig {
            schedule: geometric_schedule(1 << 20),
            ..fast_config()
        };
        let model = extract_norm_model(&space, &quad, 0.0, Some(&k), &config);
        assert_eq!(model.verdict(), Verdict::DegenerateE0Full);
        assert_eq!(model.null_basis().len(), 2);
        assert!(quotient_norm(&model, &space.zero_vector()).is_err());
    }

    #[test]
    fn divergent_constants_mark_the_model_violated() {
        let space = zoo_quasi_lp(2, 0.5).unwrap();
        let quad = unit_quadrature(FieldTag::Real, 1, 0).unwrap();
        let config = ExtractConfig {
            schedule: geometric_schedule(1 << 20),
            ..fast_config()
        };
        let model = extract_norm_model(&space, &quad, 0.0, None, &config);
        assert_eq!(model.verdict(), Verdict::HypothesesViolated);
        assert!(quotient_norm(&model, &space.zero_vector()).is_err());
    }

    #[test]
    fn null_basis_is_orthonormal() {
        let space = zoo_bounded_dir(3, 1.0).unwrap();
        let quad = unit_quadrature(FieldTag::Real, 1, 0).unwrap();
        let k = constants_exact();
        let model = extract_norm_model(&space, &quad, 0.0, Some(&k), &fast_config());
        let basis = model.null_basis();
        assert_eq!(basis.len(), 2, "E₀ of bounded-dir dim 3 is two-dimensional");
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let g = dot(&a.to_reals(), &b.to_reals());
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((g - expected).abs() <= 1e-10, "gram[{i}][{j}] = {g}");
            }
        }
        // E₀ = span(e₂, e₃): both basis vectors have negligible e₁ part
        for b in basis {
            assert!(b.to_reals()[0].abs() <= 1e-6);
        }
    }

    #[test]
    fn zero_vector_has_zero_quotient_norm() {
        let space = zoo_lp(FieldTag::Real, 2, 1.0).unwrap();
        let quad = unit_quadrature(FieldTag::Real, 1, 0).unwrap();
        let k = constants_exact();
        let model = extract_norm_model(&space, &quad, 0.0, Some(&k), &fast_config());
        assert_eq!(quotient_norm(&model, &space.zero_vector()).unwrap(), 0.0);
    }

    #[test]
    fn pattern_search_finds_a_coordinate_minimum() {
        // f(w) = |w₀| on the unit circle has minima at ±e₁.
        let objective = |w: &[f64]| w[0].abs();
        let (w, val) = pattern_search(&objective, vec![0.8, 0.6], 0.5, 300);
        assert!(val <= 1e-9, "val = {val}");
        assert!(w[1].abs() >= 0.999);
    }

    #[test]
    fn deflate_removes_exactly_one_dimension() {
        let basis: Vec<Vec<f64>> = vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ];
        let v = normalized(vec![1.0, 1.0, 0.0]);
        let reduced = deflate(&basis, &v);
        assert_eq!(reduced.len(), 2);
        for r in &reduced {
            assert!(dot(r, &v).abs() <= 1e-12);
        }
    }
}
