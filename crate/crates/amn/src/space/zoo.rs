//! The zoo: distances with closed-form asymptotic answers, used as ground
//! truth throughout the test and verification suites, plus the spec-string
//! mini-language that names them (`zoo:<name>?key=value&...`).

use std::sync::Arc;

use crate::field::FieldTag;
use crate::space::{DistanceSpace, Vector};
use crate::{Error, Result};

/// Known closed-form answers attached to a zoo member.
#[derive(Clone)]
pub struct AnalyticRecord {
    /// Human-readable one-liner for `amn zoo list`.
    pub summary: String,
    /// The analytic asymptotic seminorm δ₀(·, 0), when it exists in closed
    /// form. `None` means no claim.
    pub limit_seminorm: Option<Arc<dyn Fn(&Vector) -> f64 + Send + Sync>>,
    /// Known basis of the bounded subspace E₀ (empty = trivial E₀).
    pub null_basis: Vec<Vector>,
    /// E₀ is the whole space (naive extraction degenerates).
    pub e0_is_full: bool,
    /// A valid hypothesis-constant tuple (C₀; C₁, C₂, C₃), when known.
    pub constants: Option<AnalyticConstants>,
}

/// A hypothesis-constant tuple known to hold for a zoo member.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnalyticConstants {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl std::fmt::Debug for AnalyticRecord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AnalyticRecord")
            .field("summary", &self.summary)
            .field("null_basis_len", &self.null_basis.len())
            .field("e0_is_full", &self.e0_is_full)
            .field("constants", &self.constants)
            .finish()
    }
}

fn fmt_param(v: f64) -> String {
    if v.is_infinite() {
        "inf".to_string()
    } else {
        format!("{v}")
    }
}

/// ℓp distance `(Σᵢ |xᵢ−yᵢ|^p)^{1/p}` over any of the three fields;
/// `p = ∞` means the max coordinate. An exact norm: the asymptotic
/// seminorm equals the distance itself, E₀ = {0}, constants (0; 1, 0, 0).
pub fn zoo_lp(field: FieldTag, dim: usize, p: f64) -> Result<DistanceSpace> {
    if !(p >= 1.0) {
        return Err(Error::InvalidParameter(format!("lp requires p >= 1, got {p}")));
    }
    if dim == 0 {
        return Err(Error::InvalidParameter("lp requires dim >= 1".into()));
    }
    let norm = move |v: &Vector| lp_norm(v, p);
    let eval: Arc<dyn Fn(&Vector, &Vector) -> f64 + Send + Sync> =
        Arc::new(move |x: &Vector, y: &Vector| norm(&x.sub(y)));
    let analytic = AnalyticRecord {
        summary: format!(
            "exact l{} norm; delta0 = d; E0 = {{0}}; constants (0; 1, 0, 0)",
            fmt_param(p)
        ),
        limit_seminorm: Some(Arc::new(move |v: &Vector| lp_norm(v, p))),
        null_basis: Vec::new(),
        e0_is_full: false,
        constants: Some(AnalyticConstants { c0: 0.0, c1: 1.0, c2: 0.0, c3: 0.0 }),
    };
    let label = format!("zoo:lp?field={}&dim={}&p={}", field.short_name(), dim, fmt_param(p));
    Ok(DistanceSpace::new(field, dim, label, eval, Some(analytic)))
}

fn lp_norm(v: &Vector, p: f64) -> f64 {
    if p.is_infinite() {
        v.coords().iter().map(|c| c.abs()).fold(0.0, f64::max)
    } else if p == 1.0 {
        v.coords().iter().map(|c| c.abs()).sum()
    } else if p == 2.0 {
        v.coords().iter().map(|c| c.abs().powi(2)).sum::<f64>().sqrt()
    } else {
        v.coords().iter().map(|c| c.abs().powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

/// Warp a metric through `f(t) = t + c·(1 − e^{−t})`.
///
/// `f` is concave, increasing, `f(0) = 0`, so the result is again a metric,
/// and `0 ≤ f(t) − t < c` makes it asymptotically isometric to the base
/// with multiplicative factor 1 and additive defect below `c`. The
/// asymptotic seminorm is the base's.
pub fn zoo_warp(base: DistanceSpace, c: f64) -> Result<DistanceSpace> {
    if !(c > 0.0) {
        return Err(Error::InvalidParameter(format!("warp requires c > 0, got {c}")));
    }
    let label = match base.label().strip_prefix("zoo:lp?") {
        Some(query) => format!("zoo:warp?base=lp&{}&c={}", query, fmt_param(c)),
        None => format!("zoo:warp?base=({})&c={}", base.label(), fmt_param(c)),
    };
    let analytic = base.analytic().map(|rec| AnalyticRecord {
        summary: format!("f(base) with f(t) = t + c(1-exp(-t)), c = {}; same delta0 as base", c),
        limit_seminorm: rec.limit_seminorm.clone(),
        null_basis: rec.null_basis.clone(),
        e0_is_full: rec.e0_is_full,
        // Residual analysis at C1 = 1: the warp adds at most c·|λ| above
        // |λ|·d and never falls below it, so (C2, C3) = (c, 0) certify.
        constants: rec.constants.map(|k| AnalyticConstants {
            c0: k.c0,
            c1: k.c1,
            c2: k.c2 + c,
            c3: k.c3,
        }),
    });
    let inner = base.clone();
    let eval: Arc<dyn Fn(&Vector, &Vector) -> f64 + Send + Sync> =
        Arc::new(move |x: &Vector, y: &Vector| {
            let t = inner.evaluate(x, y);
            t + c * (1.0 - (-t).exp())
        });
    Ok(DistanceSpace::new(base.field(), base.dim(), label, eval, analytic))
}

/// One unbounded direction, the rest capped:
/// `d(x,y) = |x₁−y₁| + Σ_{i≥2} min(|xᵢ−yᵢ|, cap)` over ℝ.
///
/// The distance is bounded on span(e₂, …, e_d), so E₀ is exactly that
/// span and the quotient norm of a class is `|x₁−y₁|`.
pub fn zoo_bounded_dir(dim: usize, cap: f64) -> Result<DistanceSpace> {
    if dim < 2 {
        return Err(Error::InvalidParameter(format!(
            "bounded-dir requires dim >= 2, got {dim}"
        )));
    }
    if !(cap > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "bounded-dir requires cap > 0, got {cap}"
        )));
    }
    let eval: Arc<dyn Fn(&Vector, &Vector) -> f64 + Send + Sync> =
        Arc::new(move |x: &Vector, y: &Vector| {
            let d = x.sub(y);
            let c = d.coords();
            c[0].abs() + c[1..].iter().map(|s| s.abs().min(cap)).sum::<f64>()
        });
    let mut null_basis = Vec::new();
    for i in 1..dim {
        let mut reals = vec![0.0; dim];
        reals[i] = 1.0;
        null_basis.push(Vector::from_reals(FieldTag::Real, &reals).unwrap());
    }
    let span = if dim == 2 { "span(e2)".to_string() } else { format!("span(e2..e{dim})") };
    let analytic = AnalyticRecord {
        summary: format!(
            "|x1-y1| + sum min(|xi-yi|, {cap}); E0 = {span}; quotient norm = |x1-y1|"
        ),
        limit_seminorm: Some(Arc::new(|v: &Vector| v.coords()[0].abs())),
        null_basis,
        e0_is_full: false,
        constants: Some(AnalyticConstants {
            c0: 0.0,
            c1: 1.0,
            c2: (dim - 1) as f64 * cap,
            c3: 0.0,
        }),
    };
    let label = format!("zoo:bounded-dir?dim={}&cap={}", dim, fmt_param(cap));
    Ok(DistanceSpace::new(FieldTag::Real, dim, label, eval, Some(analytic)))
}

/// The real ℓ¹ norm of the realified coordinates of a complex vector:
/// `d(x,y) = Σᵢ (|Re(xᵢ−yᵢ)| + |Im(xᵢ−yᵢ)|)`.
///
/// A genuine norm on the underlying ℝ-space but not ℂ-homogeneous; its
/// Haar average over the circle is `δ₀(x, 0) = (4/π)·Σᵢ|xᵢ|`.
pub fn zoo_c_l1(dim: usize) -> Result<DistanceSpace> {
    if dim == 0 {
        return Err(Error::InvalidParameter("c-l1 requires dim >= 1".into()));
    }
    let eval: Arc<dyn Fn(&Vector, &Vector) -> f64 + Send + Sync> =
        Arc::new(|x: &Vector, y: &Vector| {
            x.sub(y).to_reals().iter().map(|t| t.abs()).sum()
        });
    let four_over_pi = 4.0 / std::f64::consts::PI;
    let analytic = AnalyticRecord {
        summary: "sum |Re dz_i| + |Im dz_i| over C; delta0 = (4/pi)*sum|x_i|".to_string(),
        limit_seminorm: Some(Arc::new(move |v: &Vector| {
            four_over_pi * v.coords().iter().map(|c| c.abs()).sum::<f64>()
        })),
        null_basis: Vec::new(),
        e0_is_full: false,
        // |Re z| + |Im z| is within [|z|, √2|z|], so C1 = √2 certifies with
        // no additive terms.
        constants: Some(AnalyticConstants {
            c0: 0.0,
            c1: std::f64::consts::SQRT_2,
            c2: 0.0,
            c3: 0.0,
        }),
    };
    let label = format!("zoo:c-l1?dim={dim}");
    Ok(DistanceSpace::new(FieldTag::Complex, dim, label, eval, Some(analytic)))
}

/// The p-th power metric of ℓp with `0 < p < 1`:
/// `d(x,y) = Σᵢ|xᵢ−yᵢ|^p` over ℝ.
///
/// A genuine translation-invariant metric, but `d(nx, 0)/n = n^{p−1}·d(x, 0)`
/// vanishes in every direction, so the asymptotic seminorm is identically
/// zero and E₀ is the whole space. The negative example of the zoo: no
/// finite multiplicativity constants exist globally.
pub fn zoo_quasi_lp(dim: usize, p: f64) -> Result<DistanceSpace> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "quasi-lp requires 0 < p < 1, got {p}"
        )));
    }
    if dim == 0 {
        return Err(Error::InvalidParameter("quasi-lp requires dim >= 1".into()));
    }
    let eval: Arc<dyn Fn(&Vector, &Vector) -> f64 + Send + Sync> =
        Arc::new(move |x: &Vector, y: &Vector| {
            x.sub(y).coords().iter().map(|c| c.abs().powf(p)).sum()
        });
    let analytic = AnalyticRecord {
        summary: format!(
            "sum |xi-yi|^{p}; delta0 = 0 everywhere, E0 = whole space (not normable)"
        ),
        limit_seminorm: Some(Arc::new(|_: &Vector| 0.0)),
        null_basis: Vec::new(),
        e0_is_full: true,
        constants: None,
    };
    let label = format!("zoo:quasi-lp?dim={}&p={}", dim, fmt_param(p));
    Ok(DistanceSpace::new(FieldTag::Real, dim, label, eval, Some(analytic)))
}

/// Add a bounded translation-variant perturbation:
/// `d′(x,y) = d(x,y) + ε·|h(x) − h(y)|` with `h(v) = (1 + sin Σ coords(v))/2`.
///
/// `|h(x) − h(y)|` is a pseudometric (it vanishes on the diagonal, is
/// symmetric and satisfies the triangle inequality), so `d′` is again a
/// metric, but it is no longer translation invariant: the defect is
/// positive and at most `ε`. Exercises the C₀-estimation path.
pub fn with_jitter(base: DistanceSpace, eps: f64) -> Result<DistanceSpace> {
    if !(eps > 0.0 && eps <= 0.5) {
        return Err(Error::InvalidParameter(format!(
            "jitter requires 0 < eps <= 1/2, got {eps}"
        )));
    }
    let label = format!("{}&jitter={}", base.label(), fmt_param(eps));
    let analytic = base.analytic().map(|rec| AnalyticRecord {
        summary: format!("{} + jitter eps = {}", rec.summary, eps),
        limit_seminorm: rec.limit_seminorm.clone(),
        null_basis: rec.null_basis.clone(),
        e0_is_full: rec.e0_is_full,
        // The perturbation is bounded by ε, so ε joins the translation
        // defect and the additive multiplicativity slack.
        constants: rec.constants.map(|k| AnalyticConstants {
            c0: k.c0 + eps,
            c1: k.c1,
            c2: k.c2 + eps,
            c3: k.c3 + eps,
        }),
    });
    let h = |v: &Vector| (1.0 + v.to_reals().iter().sum::<f64>().sin()) / 2.0;
    let inner = base.clone();
    let eval: Arc<dyn Fn(&Vector, &Vector) -> f64 + Send + Sync> =
        Arc::new(move |x: &Vector, y: &Vector| {
            inner.evaluate(x, y) + eps * (h(x) - h(y)).abs()
        });
    Ok(DistanceSpace::new(base.field(), base.dim(), label, eval, analytic))
}

/// An entry of the zoo catalog, for listings.
#[derive(Clone, Debug)]
pub struct ZooEntry {
    pub name: &'static str,
    pub parameters: &'static str,
    pub example_spec: &'static str,
    pub summary: String,
}

/// The zoo catalog, sorted by name. Summaries come from each member's
/// analytic record so listings and reports can never drift apart.
pub fn zoo_catalog() -> Vec<ZooEntry> {
    let summary_of = |s: DistanceSpace| s.analytic().unwrap().summary.clone();
    let mut entries = vec![
        ZooEntry {
            name: "zoo:bounded-dir",
            parameters: "dim >= 2, cap > 0",
            example_spec: "zoo:bounded-dir?dim=2&cap=1",
            summary: summary_of(zoo_bounded_dir(2, 1.0).unwrap()),
        },
        ZooEntry {
            name: "zoo:c-l1",
            parameters: "dim >= 1",
            example_spec: "zoo:c-l1?dim=1",
            summary: summary_of(zoo_c_l1(1).unwrap()),
        },
        ZooEntry {
            name: "zoo:lp",
            parameters: "field in {R, C, H}, dim >= 1, p >= 1 or p=inf",
            example_spec: "zoo:lp?field=R&dim=3&p=2",
            summary: summary_of(zoo_lp(FieldTag::Real, 3, 2.0).unwrap()),
        },
        ZooEntry {
            name: "zoo:quasi-lp",
            parameters: "dim >= 1, 0 < p < 1",
            example_spec: "zoo:quasi-lp?dim=2&p=0.5",
            summary: summary_of(zoo_quasi_lp(2, 0.5).unwrap()),
        },
        ZooEntry {
            name: "zoo:warp",
            parameters: "base=lp with its params, c > 0",
            example_spec: "zoo:warp?base=lp&field=R&dim=3&p=2&c=10",
            summary: summary_of(
                zoo_warp(zoo_lp(FieldTag::Real, 3, 2.0).unwrap(), 10.0).unwrap(),
            ),
        },
    ];
    entries.sort_by_key(|e| e.name);
    entries
}

/// Parse the space mini-language: `zoo:<name>?key=value&...`.
///
/// Every zoo member accepts an optional `jitter=<eps>`; unknown or
/// duplicate keys are errors.
pub fn parse_space_spec(spec: &str) -> Result<DistanceSpace> {
    let rest = spec
        .strip_prefix("zoo:")
        .ok_or_else(|| Error::SpecParse(format!("spec must start with 'zoo:', got '{spec}'")))?;
    let (name, query) = match rest.split_once('?') {
        Some((n, q)) => (n, q),
        None => (rest, ""),
    };
    let mut params = ParamBag::parse(query)?;
    let jitter = params.take_f64_opt("jitter")?;
    let space = match name {
        "lp" => {
            let field = params.take_field_or("field", FieldTag::Real)?;
            let dim = params.take_usize("dim")?;
            let p = params.take_p("p")?;
            params.finish(name)?;
            zoo_lp(field, dim, p)?
        }
        "warp" => {
            let base_name = params.take_str("base")?;
            if base_name != "lp" {
                return Err(Error::SpecParse(format!(
                    "warp base must be 'lp', got '{base_name}'"
                )));
            }
            let field = params.take_field_or("field", FieldTag::Real)?;
            let dim = params.take_usize("dim")?;
            let p = params.take_p("p")?;
            let c = params.take_f64("c")?;
            params.finish(name)?;
            zoo_warp(zoo_lp(field, dim, p)?, c)?
        }
        "bounded-dir" => {
            let dim = params.take_usize("dim")?;
            let cap = params.take_f64("cap")?;
            params.finish(name)?;
            zoo_bounded_dir(dim, cap)?
        }
        "c-l1" => {
            let dim = params.take_usize("dim")?;
            params.finish(name)?;
            zoo_c_l1(dim)?
        }
        "quasi-lp" => {
            let dim = params.take_usize("dim")?;
            let p = params.take_f64("p")?;
            params.finish(name)?;
            zoo_quasi_lp(dim, p)?
        }
        other => {
            return Err(Error::SpecParse(format!("unknown zoo space '{other}'")));
        }
    };
    match jitter {
        Some(eps) => with_jitter(space, eps),
        None => Ok(space),
    }
}

struct ParamBag {
    entries: Vec<(String, String)>,
}

impl ParamBag {
    fn parse(query: &str) -> Result<Self> {
        let mut entries: Vec<(String, String)> = Vec::new();
        if query.is_empty() {
            return Ok(ParamBag { entries });
        }
        for pair in query.split('&') {
            let (k, v) = pair.split_once('=').ok_or_else(|| {
                Error::SpecParse(format!("expected key=value, got '{pair}'"))
            })?;
            if k.is_empty() || v.is_empty() {
                return Err(Error::SpecParse(format!("empty key or value in '{pair}'")));
            }
            if entries.iter().any(|(seen, _)| seen == k) {
                return Err(Error::SpecParse(format!("duplicate key '{k}'")));
            }
            entries.push((k.to_string(), v.to_string()));
        }
        Ok(ParamBag { entries })
    }

    fn take_raw(&mut self, key: &str) -> Option<String> {
        let idx = self.entries.iter().position(|(k, _)| k == key)?;
        Some(self.entries.remove(idx).1)
    }

    fn take_str(&mut self, key: &str) -> Result<String> {
        self.take_raw(key)
            .ok_or_else(|| Error::SpecParse(format!("missing required key '{key}'")))
    }

    fn take_usize(&mut self, key: &str) -> Result<usize> {
        let raw = self.take_str(key)?;
        raw.parse::<usize>()
            .map_err(|_| Error::SpecParse(format!("key '{key}' must be a positive integer, got '{raw}'")))
    }

    fn take_f64(&mut self, key: &str) -> Result<f64> {
        let raw = self.take_str(key)?;
        raw.parse::<f64>()
            .map_err(|_| Error::SpecParse(format!("key '{key}' must be a number, got '{raw}'")))
    }

    fn take_f64_opt(&mut self, key: &str) -> Result<Option<f64>> {
        match self.take_raw(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse::<f64>()
                .map(Some)
                .map_err(|_| Error::SpecParse(format!("key '{key}' must be a number, got '{raw}'"))),
        }
    }

    fn take_p(&mut self, key: &str) -> Result<f64> {
        let raw = self.take_str(key)?;
        match raw.to_ascii_lowercase().as_str() {
            "inf" | "infinity" => Ok(f64::INFINITY),
            _ => raw
                .parse::<f64>()
                .map_err(|_| Error::SpecParse(format!("key '{key}' must be a number or 'inf', got '{raw}'"))),
        }
    }

    fn take_field_or(&mut self, key: &str, default: FieldTag) -> Result<FieldTag> {
        match self.take_raw(key) {
            None => Ok(default),
            Some(raw) => FieldTag::parse(&raw),
        }
    }

    fn finish(self, name: &str) -> Result<()> {
        if let Some((k, _)) = self.entries.first() {
            return Err(Error::SpecParse(format!("unknown key '{k}' for zoo:{name}")));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(reals: &[f64]) -> Vector {
        Vector::from_reals(FieldTag::Real, reals).unwrap()
    }

    #[test]
    fn lp_known_values() {
        let l2 = zoo_lp(FieldTag::Real, 2, 2.0).unwrap();
        assert_eq!(l2.evaluate(&v(&[3.0, 4.0]), &v(&[0.0, 0.0])), 5.0);
        let l1 = zoo_lp(FieldTag::Real, 2, 1.0).unwrap();
        assert_eq!(l1.evaluate(&v(&[1.0, -2.0]), &v(&[0.0, 0.0])), 3.0);
        let linf = zoo_lp(FieldTag::Real, 2, f64::INFINITY).unwrap();
        assert_eq!(linf.evaluate(&v(&[1.0, -2.0]), &v(&[0.0, 0.0])), 2.0);
    }

    #[test]
    fn lp_rejects_p_below_one() {
        assert!(zoo_lp(FieldTag::Real, 2, 0.99).is_err());
        assert!(zoo_lp(FieldTag::Real, 2, f64::NAN).is_err());
    }

    #[test]
    fn warp_formula_at_unit_distance() {
        // f(1) = 1 + 10(1 − e^{−1}), evaluated directly.
        let base = zoo_lp(FieldTag::Real, 2, 2.0).unwrap();
        let warped = zoo_warp(base, 10.0).unwrap();
        let expected = 1.0 + 10.0 * (1.0 - (-1.0_f64).exp());
        let got = warped.evaluate(&v(&[1.0, 0.0]), &v(&[0.0, 0.0]));
        assert!((got - expected).abs() <= 1e-12);
        assert!((got - 7.321206).abs() <= 1e-6);
    }

    #[test]
    fn warp_rejects_nonpositive_c() {
        let base = zoo_lp(FieldTag::Real, 2, 2.0).unwrap();
        assert!(zoo_warp(base.clone(), 0.0).is_err());
        assert!(zoo_warp(base, -1.0).is_err());
    }

    #[test]
    fn bounded_dir_caps_tail_coordinates() {
        let space = zoo_bounded_dir(2, 1.0).unwrap();
        assert_eq!(space.evaluate(&v(&[3.0, 100.0]), &v(&[0.0, 0.0])), 4.0);
    }

    #[test]
    fn bounded_dir_rejects_bad_params() {
        assert!(zoo_bounded_dir(1, 1.0).is_err());
        assert!(zoo_bounded_dir(2, 0.0).is_err());
    }

    #[test]
    fn c_l1_raw_values() {
        let space = zoo_c_l1(1).unwrap();
        let zero = Vector::zero(FieldTag::Complex, 1);
        let one = Vector::from_reals(FieldTag::Complex, &[1.0, 0.0]).unwrap();
        let i = Vector::from_reals(FieldTag::Complex, &[0.0, 1.0]).unwrap();
        let one_plus_i = Vector::from_reals(FieldTag::Complex, &[1.0, 1.0]).unwrap();
        assert_eq!(space.evaluate(&one, &zero), 1.0);
        assert_eq!(space.evaluate(&i, &zero), 1.0);
        assert_eq!(space.evaluate(&one_plus_i, &zero), 2.0);
    }

    #[test]
    fn quasi_lp_values_and_decay() {
        let space = zoo_quasi_lp(1, 0.5).unwrap();
        assert_eq!(space.evaluate(&v(&[4.0]), &v(&[0.0])), 2.0);
        // d(n·e₁, 0)/n = n^{−1/2}: at n = 2²⁰ this is 2^{−10}.
        let n: u64 = 1 << 20;
        let e1 = v(&[1.0]);
        let ratio = space.evaluate(&e1.scale_int(n), &v(&[0.0])) / n as f64;
        assert!((ratio - (2.0_f64).powi(-10)).abs() <= 1e-12);
    }

    #[test]
    fn quasi_lp_rejects_p_outside_unit_interval() {
        assert!(zoo_quasi_lp(1, 0.0).is_err());
        assert!(zoo_quasi_lp(1, 1.0).is_err());
        assert!(zoo_quasi_lp(1, -0.5).is_err());
    }

    #[test]
    fn jitter_breaks_translation_invariance_but_keeps_the_metric() {
        let space = with_jitter(zoo_lp(FieldTag::Real, 2, 2.0).unwrap(), 0.25).unwrap();
        // identity and symmetry are exact
        let x = v(&[1.3, -0.4]);
        let y = v(&[0.2, 2.0]);
        assert_eq!(space.evaluate(&x, &x), 0.0);
        assert_eq!(space.evaluate(&x, &y), space.evaluate(&y, &x));
        // translation moves the distance
        let z = v(&[0.7, 0.7]);
        let defect =
            (space.evaluate(&x.add(&z), &y.add(&z)) - space.evaluate(&x, &y)).abs();
        assert!(defect > 0.0);
        assert!(defect <= 0.25 + 1e-12);
    }

    #[test]
    fn jitter_rejects_out_of_range_eps() {
        let base = zoo_lp(FieldTag::Real, 2, 2.0).unwrap();
        assert!(with_jitter(base.clone(), 0.0).is_err());
        assert!(with_jitter(base, 0.6).is_err());
    }

    #[test]
    fn parser_accepts_canonical_specs() {
        let cases = [
            "zoo:lp?field=R&dim=3&p=2",
            "zoo:lp?field=C&dim=2&p=inf",
            "zoo:warp?base=lp&field=R&dim=3&p=2&c=10",
            "zoo:warp?base=lp&p=2&dim=3&c=10",
            "zoo:bounded-dir?dim=2&cap=1",
            "zoo:c-l1?dim=1",
            "zoo:quasi-lp?dim=2&p=0.5",
            "zoo:lp?field=R&dim=2&p=2&jitter=0.25",
        ];
        for spec in cases {
            let space = parse_space_spec(spec).expect(spec);
            assert!(space.dim() >= 1);
        }
    }

    #[test]
    fn parser_labels_are_canonical_and_reparseable() {
        let spec = "zoo:warp?base=lp&p=2&dim=3&c=10";
        let space = parse_space_spec(spec).unwrap();
        assert_eq!(space.label(), "zoo:warp?base=lp&field=R&dim=3&p=2&c=10");
        let again = parse_space_spec(space.label()).unwrap();
        assert_eq!(again.label(), space.label());
    }

    #[test]
    fn parser_rejects_unknown_keys_and_names() {
        assert!(parse_space_spec("zoo:lp?field=R&dim=3&p=2&bogus=1").is_err());
        assert!(parse_space_spec("zoo:sphere?dim=2").is_err());
        assert!(parse_space_spec("lp?dim=2&p=2").is_err());
        assert!(parse_space_spec("zoo:lp?field=R&dim=3&p=2&p=3").is_err());
        assert!(parse_space_spec("zoo:c-l1?dim=1&cap=2").is_err());
    }

    #[test]
    fn catalog_is_sorted_and_carries_the_haar_constant() {
        let entries = zoo_catalog();
        let names: Vec<_> = entries.iter().map(|e| e.name).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
        let c_l1 = entries.iter().find(|e| e.name == "zoo:c-l1").unwrap();
        assert!(c_l1.summary.contains("delta0 = (4/pi)*sum|x_i|"));
    }
}
