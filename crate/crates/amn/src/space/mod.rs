//! Metric vector spaces at desk scale: vectors over ℝ/ℂ/ℍ, a distance
//! evaluator with declared metadata, and sampled metric-axiom checks.
//!
//! A [`DistanceSpace`] bundles a deterministic, re-entrant distance
//! evaluator with its field, dimension and (for zoo members) an analytic
//! ground-truth record. Evaluators are stateless and safe to call
//! concurrently from many workers.

mod zoo;

pub use zoo::{
    parse_space_spec, with_jitter, zoo_bounded_dir, zoo_c_l1, zoo_catalog, zoo_lp, zoo_quasi_lp,
    zoo_warp, AnalyticRecord, ZooEntry,
};

use std::sync::Arc;

use rand::Rng;
use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};
use serde::{Deserialize, Serialize};

use crate::field::{FieldTag, Scalar};

/// Default half-width of the sampling box used by all seeded checks.
pub const DEFAULT_BOX_RADIUS: f64 = 10.0;

/// A vector with `dim` scalar coordinates over one of the three fields.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector {
    field: FieldTag,
    coords: Vec<Scalar>,
}

impl Vector {
    pub fn new(field: FieldTag, coords: Vec<Scalar>) -> Self {
        assert!(
            coords.iter().all(|c| c.field() == field),
            "vector coordinates must share the vector's field"
        );
        Vector { field, coords }
    }

    pub fn zero(field: FieldTag, dim: usize) -> Self {
        Vector { field, coords: vec![Scalar::zero(field); dim] }
    }

    /// Build from flattened real coordinates (`dim × field.components()`
    /// reals, coordinate-major).
    pub fn from_reals(field: FieldTag, reals: &[f64]) -> crate::Result<Self> {
        let k = field.components();
        if reals.is_empty() || reals.len() % k != 0 {
            return Err(crate::Error::InvalidParameter(format!(
                "expected a positive multiple of {k} real coordinates for field {field}, got {}",
                reals.len()
            )));
        }
        let coords = reals
            .chunks(k)
            .map(|chunk| Scalar::from_coords(field, chunk))
            .collect::<crate::Result<Vec<_>>>()?;
        Ok(Vector { field, coords })
    }

    /// Flatten to real coordinates (inverse of [`Vector::from_reals`]).
    pub fn to_reals(&self) -> Vec<f64> {
        self.coords.iter().flat_map(|c| c.coords().iter().copied()).collect()
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Dimension of the underlying real vector space.
    pub fn real_dim(&self) -> usize {
        self.coords.len() * self.field.components()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    /// Euclidean length of the flattened real coordinates.
    pub fn euclidean_len(&self) -> f64 {
        self.to_reals().iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    fn zip_with(&self, other: &Vector, f: impl Fn(Scalar, Scalar) -> Scalar) -> Vector {
        assert!(
            self.field == other.field && self.coords.len() == other.coords.len(),
            "vector arithmetic requires matching field and dimension"
        );
        let coords =
            self.coords.iter().zip(&other.coords).map(|(a, b)| f(*a, *b)).collect();
        Vector { field: self.field, coords }
    }

    pub fn add(&self, other: &Vector) -> Vector {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        self.zip_with(other, |a, b| a + (-b))
    }

    pub fn neg(&self) -> Vector {
        self.scale_real(-1.0)
    }

    /// Multiply every coordinate by a real factor.
    pub fn scale_real(&self, t: f64) -> Vector {
        Vector {
            field: self.field,
            coords: self.coords.iter().map(|c| c.scale(t)).collect(),
        }
    }

    /// Integer scaling `n·x`; the limits in this crate only ever scale by
    /// integers, which keeps the scaling itself a single exact-ish multiply.
    pub fn scale_int(&self, n: u64) -> Vector {
        self.scale_real(n as f64)
    }
}

/// Left scalar multiplication λ·x, coordinatewise.
pub fn scale_vector(lambda: Scalar, x: &Vector) -> Vector {
    assert!(
        lambda.field() == x.field(),
        "scalar/vector field mismatch is a usage error"
    );
    Vector {
        field: x.field(),
        coords: x.coords().iter().map(|c| lambda * *c).collect(),
    }
}

/// A metric vector space: a deterministic distance evaluator plus declared
/// metadata. Cloning is cheap (the evaluator is reference counted).
#[derive(Clone)]
pub struct DistanceSpace {
    field: FieldTag,
    dim: usize,
    label: String,
    eval: Arc<dyn Fn(&Vector, &Vector) -> f64 + Send + Sync>,
    analytic: Option<AnalyticRecord>,
}

impl DistanceSpace {
    pub(crate) fn new(
        field: FieldTag,
        dim: usize,
        label: String,
        eval: Arc<dyn Fn(&Vector, &Vector) -> f64 + Send + Sync>,
        analytic: Option<AnalyticRecord>,
    ) -> Self {
        DistanceSpace { field, dim, label, eval, analytic }
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Canonical spec string for this space.
    pub fn label(&self) -> &str {
        &self.label
    }

    /// Evaluate the distance. Deterministic and re-entrant: equal arguments
    /// always return bit-identical results.
    pub fn evaluate(&self, x: &Vector, y: &Vector) -> f64 {
        debug_assert!(x.field() == self.field && y.field() == self.field);
        debug_assert!(x.dim() == self.dim && y.dim() == self.dim);
        (self.eval)(x, y)
    }

    /// Closed-form ground truth, present on zoo members.
    pub fn analytic(&self) -> Option<&AnalyticRecord> {
        self.analytic.as_ref()
    }

    pub fn zero_vector(&self) -> Vector {
        Vector::zero(self.field, self.dim)
    }
}

impl std::fmt::Debug for DistanceSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DistanceSpace")
            .field("label", &self.label)
            .field("field", &self.field)
            .field("dim", &self.dim)
            .finish()
    }
}

/// Draw a vector whose flattened real coordinates are uniform in
/// `[-radius, radius]`.
pub fn sample_vector(
    rng: &mut impl Rng,
    field: FieldTag,
    dim: usize,
    radius: f64,
) -> Vector {
    let reals: Vec<f64> =
        (0..dim * field.components()).map(|_| rng.gen_range(-radius..=radius)).collect();
    Vector::from_reals(field, &reals).expect("sampled coordinate count is always valid")
}

/// Worst sampled violations of the metric axioms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub trials: usize,
    pub box_radius: f64,
    /// max |d(x,y) − d(y,x)|
    pub max_symmetry_violation: f64,
    /// max d(x,x)
    pub max_identity_violation: f64,
    /// max d(x,z) − d(x,y) − d(y,z), clamped at 0
    pub max_triangle_violation: f64,
}

impl AxiomReport {
    pub fn max_violation(&self) -> f64 {
        self.max_symmetry_violation
            .max(self.max_identity_violation)
            .max(self.max_triangle_violation)
    }
}

/// Sample `trials` triples from the seeded box distribution and report the
/// worst violation of symmetry, identity and the triangle inequality.
/// Violations are report content, not errors.
pub fn metric_axiom_check(space: &DistanceSpace, seed: u64, trials: usize) -> AxiomReport {
    metric_axiom_check_in_box(space, seed, trials, DEFAULT_BOX_RADIUS)
}

pub fn metric_axiom_check_in_box(
    space: &DistanceSpace,
    seed: u64,
    trials: usize,
    box_radius: f64,
) -> AxiomReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = AxiomReport {
        trials,
        box_radius,
        max_symmetry_violation: 0.0,
        max_identity_violation: 0.0,
        max_triangle_violation: 0.0,
    };
    for _ in 0..trials {
        let x = sample_vector(&mut rng, space.field(), space.dim(), box_radius);
        let y = sample_vector(&mut rng, space.field(), space.dim(), box_radius);
        let z = sample_vector(&mut rng, space.field(), space.dim(), box_radius);
        let dxy = space.evaluate(&x, &y);
        let dyx = space.evaluate(&y, &x);
        let dxz = space.evaluate(&x, &z);
        let dyz = space.evaluate(&y, &z);
        report.max_symmetry_violation = report.max_symmetry_violation.max((dxy - dyx).abs());
        report.max_identity_violation =
            report.max_identity_violation.max(space.evaluate(&x, &x));
        report.max_triangle_violation =
            report.max_triangle_violation.max(dxz - dxy - dyz);
    }
    report.max_triangle_violation = report.max_triangle_violation.max(0.0);
    report
}
