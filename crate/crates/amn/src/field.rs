//! Scalar arithmetic for the three ℝ-fields and Haar quadrature on their
//! unit groups.
//!
//! Every locally compact archimedean valued field of characteristic zero is
//! ℝ, ℂ or the quaternions ℍ, so scalars carry 1, 2 or 4 real coordinates.
//! The unit group 𝕌 = {u : |u| = 1} is compact ({±1}, the circle, or S³)
//! and carries a normalized right-invariant Haar measure μ. Integrals over
//! μ are approximated by [`UnitQuadrature`] node sets:
//!
//! * ℝ — exactly {+1, −1} with weight ½ each (𝕌 is finite).
//! * ℂ — the N-th roots of unity, weight 1/N; exact for trigonometric
//!   polynomials of degree < N.
//! * ℍ — the 24 unit quaternions of the binary tetrahedral group (the
//!   24-cell vertices), augmented past 24 nodes with seeded low-discrepancy
//!   points on S³. No exactness degree is claimed for ℍ; consumers rely on
//!   self-convergence under resolution doubling.

use rand::Rng;
use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Which of the three ℝ-fields scalars live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldTag {
    #[serde(rename = "REAL")]
    Real,
    #[serde(rename = "COMPLEX")]
    Complex,
    #[serde(rename = "QUATERNION")]
    Quaternion,
}

impl FieldTag {
    /// Number of real coordinates per scalar: 1, 2 or 4.
    pub fn components(self) -> usize {
        match self {
            FieldTag::Real => 1,
            FieldTag::Complex => 2,
            FieldTag::Quaternion => 4,
        }
    }

    /// Short name used in spec strings: `R`, `C`, `H`.
    pub fn short_name(self) -> &'static str {
        match self {
            FieldTag::Real => "R",
            FieldTag::Complex => "C",
            FieldTag::Quaternion => "H",
        }
    }

    /// Parse the spec-string form (`R`, `C`, `H`).
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "R" | "r" => Ok(FieldTag::Real),
            "C" | "c" => Ok(FieldTag::Complex),
            "H" | "h" => Ok(FieldTag::Quaternion),
            other => Err(Error::SpecParse(format!(
                "unknown field '{other}' (expected R, C or H)"
            ))),
        }
    }
}

impl std::fmt::Display for FieldTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.short_name())
    }
}

/// A scalar of one of the three fields, stored as up to four real
/// coordinates `(w, x, y, z)`; unused trailing coordinates are zero.
///
/// For ℝ only `w` is used; for ℂ, `w + x·i`; for ℍ, `w + x·i + y·j + z·k`.
/// Mixing fields in arithmetic is a usage error and panics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Scalar {
    field: FieldTag,
    c: [f64; 4],
}

impl Scalar {
    pub fn real(x: f64) -> Self {
        Scalar { field: FieldTag::Real, c: [x, 0.0, 0.0, 0.0] }
    }

    pub fn complex(re: f64, im: f64) -> Self {
        Scalar { field: FieldTag::Complex, c: [re, im, 0.0, 0.0] }
    }

    pub fn quaternion(w: f64, x: f64, y: f64, z: f64) -> Self {
        Scalar { field: FieldTag::Quaternion, c: [w, x, y, z] }
    }

    /// Additive identity of the given field.
    pub fn zero(field: FieldTag) -> Self {
        Scalar { field, c: [0.0; 4] }
    }

    /// Multiplicative identity of the given field.
    pub fn one(field: FieldTag) -> Self {
        Scalar { field, c: [1.0, 0.0, 0.0, 0.0] }
    }

    /// Build a scalar from exactly `field.components()` real coordinates.
    pub fn from_coords(field: FieldTag, coords: &[f64]) -> Result<Self> {
        if coords.len() != field.components() {
            return Err(Error::InvalidParameter(format!(
                "field {} needs {} coordinates, got {}",
                field,
                field.components(),
                coords.len()
            )));
        }
        let mut c = [0.0; 4];
        c[..coords.len()].copy_from_slice(coords);
        Ok(Scalar { field, c })
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    /// The active real coordinates (length 1, 2 or 4).
    pub fn coords(&self) -> &[f64] {
        &self.c[..self.field.components()]
    }

    /// Absolute value: the Euclidean length of the coordinates. This is the
    /// unique archimedean absolute value on each field and is multiplicative,
    /// |ab| = |a||b|.
    pub fn abs(&self) -> f64 {
        let [w, x, y, z] = self.c;
        (w * w + x * x + y * y + z * z).sqrt()
    }

    /// Conjugate (identity on ℝ, negates the imaginary parts on ℂ and ℍ).
    pub fn conj(&self) -> Self {
        let [w, x, y, z] = self.c;
        Scalar { field: self.field, c: [w, -x, -y, -z] }
    }

    /// Multiply by a real number (commutes with everything).
    pub fn scale(&self, t: f64) -> Self {
        let [w, x, y, z] = self.c;
        Scalar { field: self.field, c: [w * t, x * t, y * t, z * t] }
    }

    fn assert_same_field(&self, other: &Scalar, op: &str) {
        assert!(
            self.field == other.field,
            "scalar {op} across fields ({} vs {}) is a usage error",
            self.field,
            other.field
        );
    }
}

impl std::ops::Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.assert_same_field(&rhs, "addition");
        let mut c = [0.0; 4];
        for i in 0..4 {
            c[i] = self.c[i] + rhs.c[i];
        }
        Scalar { field: self.field, c }
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.scale(-1.0)
    }
}

impl std::ops::Mul for Scalar {
    type Output = Scalar;

    /// Field multiplication. Real and complex products are the usual ones;
    /// the quaternion product follows the Hamilton table (ij = k, jk = i,
    /// ki = j) and is associative but not commutative.
    fn mul(self, rhs: Scalar) -> Scalar {
        self.assert_same_field(&rhs, "multiplication");
        let [a, b, c, d] = self.c;
        let [e, f, g, h] = rhs.c;
        let coords = match self.field {
            FieldTag::Real => [a * e, 0.0, 0.0, 0.0],
            FieldTag::Complex => [a * e - b * f, a * f + b * e, 0.0, 0.0],
            FieldTag::Quaternion => [
                a * e - b * f - c * g - d * h,
                a * f + b * e + c * h - d * g,
                a * g - b * h + c * e + d * f,
                a * h + b * g - c * f + d * e,
            ],
        };
        Scalar { field: self.field, c: coords }
    }
}

/// Product of two scalars of the same field.
pub fn scalar_mul(a: Scalar, b: Scalar) -> Scalar {
    a * b
}

/// Absolute value of a scalar.
pub fn scalar_abs(a: Scalar) -> f64 {
    a.abs()
}

/// A weighted node set approximating the normalized Haar measure μ on the
/// unit group 𝕌 of a field.
///
/// Invariants: weights are nonnegative and sum to 1 within 1e−12, and every
/// node has | |u| − 1 | ≤ 1e−12.
#[derive(Clone, Debug)]
pub struct UnitQuadrature {
    field: FieldTag,
    nodes: Vec<(Scalar, f64)>,
    resolution: u32,
}

impl UnitQuadrature {
    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn nodes(&self) -> &[(Scalar, f64)] {
        &self.nodes
    }

    pub fn resolution(&self) -> u32 {
        self.resolution
    }

    /// Weighted average of `f` over the node set: ≈ ∫_𝕌 f(u) dμ(u).
    pub fn average<F: Fn(&Scalar) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().map(|(u, w)| w * f(u)).sum()
    }
}

/// Build a quadrature rule for the unit group of `field`.
///
/// ℝ ignores `resolution` (𝕌 = {±1} exactly); ℂ uses the `resolution`
/// distinct roots of unity; ℍ uses the 24-cell vertex set up to resolution
/// 24 and augments beyond with Halton points on S³ shifted by a seeded
/// Cranley–Patterson rotation, all nodes reweighted uniformly.
pub fn unit_quadrature(field: FieldTag, resolution: u32, seed: u64) -> Result<UnitQuadrature> {
    if resolution == 0 {
        return Err(Error::InvalidParameter(
            "quadrature resolution must be at least 1".into(),
        ));
    }
    let nodes = match field {
        FieldTag::Real => vec![(Scalar::real(1.0), 0.5), (Scalar::real(-1.0), 0.5)],
        FieldTag::Complex => {
            let n = resolution as usize;
            let w = 1.0 / n as f64;
            (0..n)
                .map(|k| {
                    let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
                    (Scalar::complex(theta.cos(), theta.sin()), w)
                })
                .collect()
        }
        FieldTag::Quaternion => {
            let mut units = binary_tetrahedral_units();
            if resolution > 24 {
                units.extend(halton_s3_points(resolution as usize - 24, seed));
            }
            let w = 1.0 / units.len() as f64;
            units.into_iter().map(|u| (u, w)).collect()
        }
    };
    Ok(UnitQuadrature { field, nodes, resolution })
}

/// The 24 unit quaternions of the binary tetrahedral group: ±1, ±i, ±j, ±k
/// and (±1 ± i ± j ± k)/2. They are the vertices of the 24-cell and form a
/// multiplicative group, so equal-weight averages over them are exactly
/// right invariant under group elements.
fn binary_tetrahedral_units() -> Vec<Scalar> {
    let mut units = Vec::with_capacity(24);
    for axis in 0..4 {
        for sign in [1.0, -1.0] {
            let mut c = [0.0; 4];
            c[axis] = sign;
            units.push(Scalar::quaternion(c[0], c[1], c[2], c[3]));
        }
    }
    for sw in [0.5, -0.5] {
        for sx in [0.5, -0.5] {
            for sy in [0.5, -0.5] {
                for sz in [0.5, -0.5] {
                    units.push(Scalar::quaternion(sw, sx, sy, sz));
                }
            }
        }
    }
    units
}

/// Van der Corput radical inverse in the given base.
fn radical_inverse(mut index: u64, base: u64) -> f64 {
    let mut result = 0.0;
    let mut inv = 1.0 / base as f64;
    while index > 0 {
        result += (index % base) as f64 * inv;
        index /= base;
        inv /= base as f64;
    }
    result
}

/// `count` low-discrepancy points on S³: a Halton sequence in [0,1)³
/// (bases 2, 3, 5) with a seeded Cranley–Patterson shift, mapped through
/// the standard uniform-quaternion parametrization
/// `(√(1−u₁) sin 2πu₂, √(1−u₁) cos 2πu₂, √u₁ sin 2πu₃, √u₁ cos 2πu₃)`.
fn halton_s3_points(count: usize, seed: u64) -> Vec<Scalar> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shift: [f64; 3] = [rng.gen::<f64>(), rng.gen::<f64>(), rng.gen::<f64>()];
    let tau = 2.0 * std::f64::consts::PI;
    (0..count)
        .map(|i| {
            let idx = i as u64 + 1;
            let u1 = (radical_inverse(idx, 2) + shift[0]).fract();
            let u2 = (radical_inverse(idx, 3) + shift[1]).fract();
            let u3 = (radical_inverse(idx, 5) + shift[2]).fract();
            let (a, b) = ((1.0 - u1).sqrt(), u1.sqrt());
            Scalar::quaternion(
                a * (tau * u2).sin(),
                a * (tau * u2).cos(),
                b * (tau * u3).sin(),
                b * (tau * u3).cos(),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abs_is_pythagorean() {
        assert_eq!(Scalar::complex(3.0, 4.0).abs(), 5.0);
    }

    #[test]
    fn complex_i_squared_is_minus_one() {
        let i = Scalar::complex(0.0, 1.0);
        assert_eq!(i * i, Scalar::complex(-1.0, 0.0));
    }

    #[test]
    fn quaternion_table() {
        let i = Scalar::quaternion(0.0, 1.0, 0.0, 0.0);
        let j = Scalar::quaternion(0.0, 0.0, 1.0, 0.0);
        let k = Scalar::quaternion(0.0, 0.0, 0.0, 1.0);
        assert_eq!(j * k, i);
        assert_eq!(k * j, -i);
        assert_eq!(i * j, k);
        assert_eq!(i * i, Scalar::quaternion(-1.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn quaternion_multiplication_is_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let mut q = || {
                Scalar::quaternion(
                    rng.gen_range(-2.0..2.0),
                    rng.gen_range(-2.0..2.0),
                    rng.gen_range(-2.0..2.0),
                    rng.gen_range(-2.0..2.0),
                )
            };
            let (a, b, c) = (q(), q(), q());
            let left = (a * b) * c;
            let right = a * (b * c);
            for i in 0..4 {
                assert!((left.c[i] - right.c[i]).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn abs_is_multiplicative_on_random_samples() {
        // |ab| = |a||b| to relative 1e−12 over 10⁴ seeded pairs per field.
        for field in [FieldTag::Real, FieldTag::Complex, FieldTag::Quaternion] {
            let mut rng = ChaCha8Rng::seed_from_u64(42);
            for _ in 0..10_000 {
                let mut s = || {
                    let coords: Vec<f64> =
                        (0..field.components()).map(|_| rng.gen_range(-5.0..5.0)).collect();
                    Scalar::from_coords(field, &coords).unwrap()
                };
                let (a, b) = (s(), s());
                let lhs = (a * b).abs();
                let rhs = a.abs() * b.abs();
                assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1e-300));
            }
        }
    }

    #[test]
    #[should_panic(expected = "usage error")]
    fn mixed_field_multiplication_panics() {
        let _ = Scalar::real(1.0) * Scalar::complex(1.0, 0.0);
    }

    #[test]
    fn real_quadrature_is_exactly_plus_minus_one() {
        for resolution in [1, 7, 100] {
            let q = unit_quadrature(FieldTag::Real, resolution, 3).unwrap();
            assert_eq!(q.nodes().len(), 2);
            assert_eq!(q.nodes()[0], (Scalar::real(1.0), 0.5));
            assert_eq!(q.nodes()[1], (Scalar::real(-1.0), 0.5));
        }
    }

    #[test]
    fn complex_quadrature_fourth_roots() {
        let q = unit_quadrature(FieldTag::Complex, 4, 0).unwrap();
        let expected = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)];
        for ((node, w), (re, im)) in q.nodes().iter().zip(expected) {
            assert_eq!(*w, 0.25);
            assert!((node.coords()[0] - re).abs() <= 1e-15);
            assert!((node.coords()[1] - im).abs() <= 1e-15);
        }
    }

    #[test]
    fn quadrature_rejects_zero_resolution() {
        assert!(unit_quadrature(FieldTag::Complex, 0, 0).is_err());
    }

    #[test]
    fn weights_sum_to_one_and_nodes_are_unit() {
        for (field, resolution) in [
            (FieldTag::Real, 1),
            (FieldTag::Complex, 17),
            (FieldTag::Complex, 256),
            (FieldTag::Quaternion, 24),
            (FieldTag::Quaternion, 200),
        ] {
            let q = unit_quadrature(field, resolution, 11).unwrap();
            let total: f64 = q.nodes().iter().map(|(_, w)| w).sum();
            assert!((total - 1.0).abs() <= 1e-12);
            for (u, w) in q.nodes() {
                assert!(*w >= 0.0);
                assert!((u.abs() - 1.0).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn complex_quadrature_kills_low_harmonics() {
        // ∫ e^{ikθ} dμ = 0 for 0 < |k| < N, exactly up to rounding.
        let n = 64;
        let q = unit_quadrature(FieldTag::Complex, n, 0).unwrap();
        for k in 1..n as i32 {
            let re = q.average(|u| {
                let theta = u.coords()[1].atan2(u.coords()[0]);
                (k as f64 * theta).cos()
            });
            let im = q.average(|u| {
                let theta = u.coords()[1].atan2(u.coords()[0]);
                (k as f64 * theta).sin()
            });
            assert!(re.abs() <= 1e-12, "k={k}: re={re}");
            assert!(im.abs() <= 1e-12, "k={k}: im={im}");
        }
    }

    #[test]
    fn complex_average_of_abs_coords_matches_dense_oracle() {
        // Oracle: 10⁶-point midpoint quadrature of (1/2π)∫(|cos|+|sin|)dθ,
        // whose exact value is 4/π.
        let oracle = {
            let m = 1_000_000;
            let mut sum = 0.0;
            for k in 0..m {
                let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.5) / m as f64;
                sum += theta.cos().abs() + theta.sin().abs();
            }
            sum / m as f64
        };
        assert!((oracle - 4.0 / std::f64::consts::PI).abs() <= 1e-9);

        let q = unit_quadrature(FieldTag::Complex, 256, 0).unwrap();
        let avg = q.average(|u| u.coords()[0].abs() + u.coords()[1].abs());
        assert!((avg - oracle).abs() <= 1e-4, "avg={avg}, oracle={oracle}");
    }

    #[test]
    fn binary_tetrahedral_set_is_closed_under_multiplication() {
        let units = binary_tetrahedral_units();
        assert_eq!(units.len(), 24);
        for a in &units {
            for b in &units {
                let p = *a * *b;
                let hit = units.iter().any(|u| {
                    u.coords().iter().zip(p.coords()).all(|(x, y)| (x - y).abs() <= 1e-12)
                });
                assert!(hit, "product {:?} left the 24-cell set", p.coords());
            }
        }
    }

    #[test]
    fn group_quadrature_is_right_invariant_on_group_elements() {
        // For v in the group, u ↦ uv permutes the nodes, so averages agree
        // exactly for any integrand.
        let q = unit_quadrature(FieldTag::Quaternion, 24, 0).unwrap();
        let f = |u: &Scalar| {
            let c = u.coords();
            c[0].abs() + 0.5 * c[1] * c[2] + c[3].powi(2)
        };
        for v in binary_tetrahedral_units() {
            let shifted = q.average(|u| f(&(*u * v)));
            let plain = q.average(f);
            assert!((shifted - plain).abs() <= 1e-12);
        }
    }

    #[test]
    fn real_quadrature_right_invariance_is_exact() {
        let q = unit_quadrature(FieldTag::Real, 1, 0).unwrap();
        let f = |u: &Scalar| (1.0 + u.coords()[0]).exp();
        let v = Scalar::real(-1.0);
        let shifted = q.average(|u| f(&(*u * v)));
        assert!((shifted - q.average(f)).abs() <= 1e-12);
    }

    #[test]
    fn complex_quadrature_right_invariance_for_smooth_integrand() {
        // sin(Re u)·cos(Im u) is entire; N = 64 nodes integrate its Fourier
        // tail far below 1e−9, so shifting by any unit barely moves the mean.
        let q = unit_quadrature(FieldTag::Complex, 64, 0).unwrap();
        let f = |u: &Scalar| u.coords()[0].sin() * u.coords()[1].cos();
        let v = Scalar::complex(0.6_f64.cos(), 0.6_f64.sin());
        let shifted = q.average(|u| f(&(*u * v)));
        assert!((shifted - q.average(f)).abs() <= 1e-9);
    }

    #[test]
    fn quaternion_augmented_rule_self_converges() {
        // No analytic target for ℍ: doubling the resolution must move a
        // smooth average by a small, shrinking amount.
        let f = |u: &Scalar| u.coords()[0].abs() + u.coords()[2].powi(2);
        let a = unit_quadrature(FieldTag::Quaternion, 200, 5).unwrap().average(f);
        let b = unit_quadrature(FieldTag::Quaternion, 400, 5).unwrap().average(f);
        let c = unit_quadrature(FieldTag::Quaternion, 800, 5).unwrap().average(f);
        assert!((a - b).abs() <= 0.05);
        assert!((b - c).abs() <= (a - b).abs() + 0.01);
    }

    #[test]
    fn halton_points_are_seed_deterministic() {
        let a = halton_s3_points(10, 9);
        let b = halton_s3_points(10, 9);
        let c = halton_s3_points(10, 10);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
