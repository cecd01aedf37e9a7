//! Inverse bicomplex Laplace transform.
//!
//! Each idempotent component `Fⱼ` is inverted as a classical complex image
//! and the two results are recombined as `f(t) = c₁e₁ + c₂e₂`. For a real
//! object function both components give the same `f(t)` and the recombined
//! value is the real scalar `f(t)`.
//!
//! Two engines are provided:
//!
//! * **Bromwich**: the line integral `(1/2π) ∫ e^{(x+iy)t} Fⱼ(x+iy) dy` on
//!   `x = k + δ`, truncated symmetrically to `[−Y, Y]` and evaluated by the
//!   trapezoidal rule. The leading `c/s` behaviour of `Fⱼ` is subtracted as
//!   `c/(s − k)` and its inverse `c e^{kt}` added back exactly, which leaves a
//!   residual decaying like `1/|s|²` so the truncation converges quickly.
//!   The step is chosen so the periodic aliasing images of the trapezoid
//!   (spaced `2π/h` apart in `t`) are damped by at least `e^{−25}`.
//! * **Residue**: for rational images, `f(t) = Σ Res{e^{st} Fⱼ(s)}` over the
//!   denominator roots. Poles of any multiplicity are supported through the
//!   Taylor expansion of `e^{st} num(s)/q(s)` at the pole, which generalises
//!   the simple-pole formula `e^{pt} num(p)/den′(p)`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bicomplex::{Bicomplex, Component, IdempotentPair};
use crate::error::{Error, Result};
use crate::poly;
use crate::signal::{decay_check, ImageFunction, RationalFunction, DEFAULT_DECAY_RADII};

pub const ROOT_MAX_ITERATIONS: usize = 500;
pub const CLUSTER_TOL: f64 = 1e-7;
pub const ROOT_TOL: f64 = 1e-8;
/// Upper bound on `x·t` before the abscissa is pulled towards `k`.
pub const MAX_EXPONENT: f64 = 30.0;
/// Exponent by which the first trapezoid alias `f(t + 2π/h)` is damped.
const ALIAS_DAMPING: f64 = 25.0;
/// Smallest abscissa offset used when shrinking `δ` for large `t`.
const MIN_OFFSET: f64 = 0.05;
/// Upper bound on `δ·t`: quadrature noise relative to `e^{kt}` grows like `e^{δt}`.
const MAX_RELATIVE_EXPONENT: f64 = 10.0;
/// Height at which the leading `c/s` coefficient is estimated.
const LEADING_PROBE: f64 = 1e6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BromwichConfig {
    /// `δ` in `x = k + δ`.
    pub abscissa_offset: f64,
    /// Initial truncation `Y` of the line integral; doubled on refinement.
    pub half_height: f64,
    /// Largest step `h` along the line; the alias bound may shrink it further.
    pub step_h: f64,
    pub refine_tol: f64,
    pub max_refinements: usize,
    /// Largest accepted magnitude of the `i₁`, `i₂`, `i₁i₂` coefficients of
    /// the recombined value before a non-real warning is attached.
    pub reality_tol: f64,
}

impl Default for BromwichConfig {
    fn default() -> Self {
        Self {
            abscissa_offset: 1.0,
            half_height: 200.0,
            step_h: 0.25,
            refine_tol: 1e-6,
            max_refinements: 10,
            reality_tol: 1e-6,
        }
    }
}

impl BromwichConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v > 0.0 && v.is_finite();
        if !positive(self.abscissa_offset) {
            return Err(Error::InvalidArgument(
                "abscissa offset must be positive".into(),
            ));
        }
        if !positive(self.half_height) {
            return Err(Error::InvalidArgument(
                "half height must be positive".into(),
            ));
        }
        if !positive(self.step_h) {
            return Err(Error::InvalidArgument("step must be positive".into()));
        }
        if !positive(self.refine_tol) {
            return Err(Error::InvalidArgument(
                "refine tolerance must be positive".into(),
            ));
        }
        if !(self.reality_tol >= 0.0) {
            return Err(Error::InvalidArgument(
                "reality tolerance must be non-negative".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Bromwich,
    Residue,
    /// Residue for rational images, Bromwich otherwise.
    Auto,
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bromwich" => Ok(Method::Bromwich),
            "residue" => Ok(Method::Residue),
            "auto" => Ok(Method::Auto),
            other => Err(Error::Parse(format!(
                "unknown method `{other}` (expected bromwich, residue or auto)"
            ))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Bromwich => "bromwich",
            Method::Residue => "residue",
            Method::Auto => "auto",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Warning {
    /// The recombined value has non-negligible `i₁`, `i₂` or `i₁i₂` content,
    /// i.e. the two components do not invert to the same real function.
    NonRealObject { defect: f64 },
    /// `x·t` could not be kept under the cap; quadrature noise is amplified
    /// by `e^{x t}`.
    ExponentialAmplification { exponent: f64 },
}

/// Result of inverting one component along the Bromwich line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComponentInversion {
    pub value: Complex64,
    pub abscissa: f64,
    pub refinements: usize,
    pub amplified: bool,
}

/// One inverted sample `f(t)` with its diagnostics.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InversionPoint {
    pub t: f64,
    /// Real coefficient of the recombined value.
    pub f: f64,
    #[serde(skip)]
    pub value: Bicomplex,
    pub reality_defect: f64,
    pub refinements: usize,
    pub warnings: Vec<Warning>,
}

impl InversionPoint {
    fn from_components(t: f64, c1: Complex64, c2: Complex64, reality_tol: f64) -> Self {
        let value = Bicomplex::from_idempotent(IdempotentPair::new(c1, c2));
        let reality_defect = value.non_real_defect();
        let mut warnings = Vec::new();
        if reality_defect > reality_tol {
            warnings.push(Warning::NonRealObject {
                defect: reality_defect,
            });
        }
        Self {
            t,
            f: value.a0,
            value,
            reality_defect,
            refinements: 0,
            warnings,
        }
    }

    pub fn is_real(&self) -> bool {
        !self
            .warnings
            .iter()
            .any(|w| matches!(w, Warning::NonRealObject { .. }))
    }
}

fn check_time(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "inversion requires t > 0 (the closing arc vanishes only for t > 0), got t = {t}"
        )))
    }
}

/// Inverts one complex component image along `Re(s) = k + δ`.
///
/// `image` must decay on large left arcs and be analytic for `Re(s) > k`.
pub fn bromwich_component<F>(
    image: F,
    k: f64,
    t: f64,
    cfg: &BromwichConfig,
) -> Result<ComponentInversion>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    check_time(t)?;
    cfg.validate()?;
    if !k.is_finite() {
        return Err(Error::InvalidArgument("abscissa k must be finite".into()));
    }

    let mut delta = cfg
        .abscissa_offset
        .min((MAX_RELATIVE_EXPONENT / t).max(MIN_OFFSET));
    let mut amplified = false;
    if (k + delta) * t > MAX_EXPONENT {
        let room = MAX_EXPONENT / t - k;
        if room >= MIN_OFFSET.min(delta) {
            delta = delta.min(room);
        } else {
            delta = delta.min(MIN_OFFSET);
            amplified = true;
        }
    }
    let x = k + delta;
    let growth = (x * t).exp();

    let eval = |s: Complex64| -> Result<Complex64> {
        let v = image(s)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::InvalidImage(format!(
                "image is not finite at s = {s}"
            )))
        }
    };

    // Leading coefficient c in F(s) ~ c/s; the symmetric average cancels
    // the next-order term.
    let up = Complex64::new(x, LEADING_PROBE);
    let down = up.conj();
    let mut leading = (up * eval(up)? + down * eval(down)?) * 0.5;
    if !leading.is_finite() {
        leading = Complex64::new(0.0, 0.0);
    }
    let pole = Complex64::new(k, 0.0);
    let residual = |y: f64| -> Result<Complex64> {
        let s = Complex64::new(x, y);
        let g = eval(s)? - leading / (s - pole);
        let phase = Complex64::from_polar(growth, y * t);
        Ok(phase * g)
    };

    let period = (ALIAS_DAMPING / delta).max(2.0 * t);
    let h = cfg.step_h.min(std::f64::consts::TAU / period);

    let mut n = (cfg.half_height / h).ceil().max(1.0) as usize;
    let mut sum = residual(0.0)?;
    for j in 1..=n {
        let y = j as f64 * h;
        sum += residual(y)? + residual(-y)?;
    }
    let edge = |n: usize| -> Result<Complex64> {
        let y = n as f64 * h;
        Ok((residual(y)? + residual(-y)?) * 0.5)
    };
    let scale = h / std::f64::consts::TAU;
    let subtracted = leading * (k * t).exp();
    let mut estimate = (sum - edge(n)?) * scale + subtracted;

    for refinement in 1..=cfg.max_refinements {
        for j in n + 1..=2 * n {
            let y = j as f64 * h;
            sum += residual(y)? + residual(-y)?;
        }
        n *= 2;
        let refined = (sum - edge(n)?) * scale + subtracted;
        let change = (refined - estimate).norm();
        let previous = estimate;
        estimate = refined;
        if change < cfg.refine_tol {
            return Ok(ComponentInversion {
                value: estimate,
                abscissa: x,
                refinements: refinement,
                amplified,
            });
        }
        if refinement == cfg.max_refinements {
            return Err(Error::InversionConvergence {
                last: estimate,
                previous,
                refinements: refinement,
            });
        }
    }
    Err(Error::InversionConvergence {
        last: estimate,
        previous: estimate,
        refinements: 0,
    })
}

/// Abscissa of the Bromwich line family for an image: the declared `k`,
/// moved right of every pole for rational images.
pub fn effective_abscissa(image: &ImageFunction) -> Result<f64> {
    let mut k = image.abscissa_k();
    for c in Component::BOTH {
        if let Some(r) = image.rational_component(c) {
            k = k.max(find_poles(r)?.rightmost_re());
        }
    }
    Ok(k)
}

/// `f(t)` from both components by Bromwich quadrature, recombined along `e₁`, `e₂`.
pub fn bromwich_invert(
    image: &ImageFunction,
    t: f64,
    cfg: &BromwichConfig,
) -> Result<InversionPoint> {
    check_time(t)?;
    let decay = decay_check(image, &DEFAULT_DECAY_RADII)?;
    if !decay.passes {
        return Err(Error::InvalidImage(format!(
            "image does not decay on large arcs (fitted order {:.3}, bound {:.3e})",
            decay.est_p, decay.est_m
        )));
    }
    let k = effective_abscissa(image)?;
    let first = bromwich_component(|s| image.eval_component(Component::First, s), k, t, cfg)?;
    let second = if same_components(image) {
        first
    } else {
        bromwich_component(|s| image.eval_component(Component::Second, s), k, t, cfg)?
    };
    let mut point = InversionPoint::from_components(t, first.value, second.value, cfg.reality_tol);
    point.refinements = first.refinements.max(second.refinements);
    if first.amplified || second.amplified {
        point.warnings.push(Warning::ExponentialAmplification {
            exponent: first.abscissa.max(second.abscissa) * t,
        });
    }
    Ok(point)
}

fn same_components(image: &ImageFunction) -> bool {
    match image {
        ImageFunction::Rational { r1, r2, .. } => r1 == r2,
        ImageFunction::Components { f1, f2, .. } => std::sync::Arc::ptr_eq(f1, f2),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Pole {
    #[serde(with = "crate::bicomplex::complex_pair")]
    pub location: Complex64,
    pub multiplicity: usize,
}

/// Distinct denominator roots with multiplicities, ordered by real then
/// imaginary part.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PoleSet {
    pub poles: Vec<Pole>,
}

impl PoleSet {
    pub fn total_multiplicity(&self) -> usize {
        self.poles.iter().map(|p| p.multiplicity).sum()
    }

    pub fn rightmost_re(&self) -> f64 {
        self.poles
            .iter()
            .map(|p| p.location.re)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Roots of the denominator by Aberth iteration, clustered into multiple
/// roots and polished by Newton's method on `den^{(m−1)}`.
pub fn find_poles(r: &RationalFunction) -> Result<PoleSet> {
    let den = r.den();
    if den.last().is_none_or(|c| *c == Complex64::new(0.0, 0.0)) {
        return Err(Error::InvalidArgument(
            "leading denominator coefficient is zero".into(),
        ));
    }
    let roots = poly::aberth_roots(den, ROOT_MAX_ITERATIONS)?;
    let mut poles = Vec::new();
    for (location, multiplicity) in poly::cluster_roots(&roots, CLUSTER_TOL) {
        let location = polish(den, location, multiplicity);
        let residual = poly::eval(den, location).norm();
        if !(residual <= ROOT_TOL * poly::magnitude_scale(den, location)) {
            return Err(Error::NumericFailure(format!(
                "root finder did not converge: |den({location})| = {residual:.3e}"
            )));
        }
        poles.push(Pole {
            location,
            multiplicity,
        });
    }
    poles.sort_by(|a, b| {
        a.location
            .re
            .total_cmp(&b.location.re)
            .then(a.location.im.total_cmp(&b.location.im))
    });
    Ok(PoleSet { poles })
}

fn polish(den: &[Complex64], mut z: Complex64, multiplicity: usize) -> Complex64 {
    let mut p = den.to_vec();
    for _ in 1..multiplicity {
        p = poly::derivative(&p);
    }
    let dp = poly::derivative(&p);
    for _ in 0..8 {
        let d = poly::eval(&dp, z);
        if d.norm() == 0.0 {
            break;
        }
        let step = poly::eval(&p, z) / d;
        if !step.is_finite() || step.norm() > poly::MAX_CLUSTER_RADIUS * (1.0 + z.norm()) {
            break;
        }
        z -= step;
    }
    z
}

/// `Res{e^{st} r(s), s = pole}` for a pole of multiplicity `m`.
///
/// With `den(p + u) = Σ dⱼ uʲ` (so `dⱼ ≈ 0` for `j < m`) and
/// `g(p + u) = num(p + u) / Σ_{j≥m} dⱼ u^{j−m} = Σ gᵢ uⁱ`, the residue is
/// `e^{pt} Σ_{i<m} gᵢ t^{m−1−i}/(m−1−i)!`. For `m = 1` this is
/// `e^{pt} num(p)/den′(p)`.
pub fn residue_at(r: &RationalFunction, pole: Complex64, m: usize, t: f64) -> Result<Complex64> {
    check_time(t)?;
    let den = r.den();
    if m == 0 || m > r.den_degree() {
        return Err(Error::InvalidArgument(format!(
            "multiplicity {m} is outside 1..={}",
            r.den_degree()
        )));
    }
    if !(poly::eval(den, pole).norm() <= ROOT_TOL * poly::magnitude_scale(den, pole)) {
        return Err(Error::InvalidPole { pole });
    }
    let d = poly::taylor_shift(den, pole);
    let q = &d[m..];
    if q[0].norm() <= ROOT_TOL * poly::magnitude_scale(den, pole) {
        // den vanishes to higher order than m at this point
        return Err(Error::InvalidPole { pole });
    }
    let n = poly::taylor_shift(r.num(), pole);

    // Power-series division g = n / q up to order m−1.
    let mut g = vec![Complex64::new(0.0, 0.0); m];
    for i in 0..m {
        let mut acc = n.get(i).copied().unwrap_or_default();
        for j in 1..=i.min(q.len() - 1) {
            acc -= q[j] * g[i - j];
        }
        g[i] = acc / q[0];
    }

    let mut sum = Complex64::new(0.0, 0.0);
    let mut t_power = 1.0;
    let mut factorial = 1.0;
    for (l, gi) in g.iter().rev().enumerate() {
        if l > 0 {
            t_power *= t;
            factorial *= l as f64;
        }
        sum += gi * (t_power / factorial);
    }
    let value = (pole * t).exp() * sum;
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NumericFailure(format!(
            "residue at {pole} overflowed for t = {t}"
        )))
    }
}

/// Sum of the residues of `e^{st} r(s)` over all poles of `r`.
pub fn residue_sum(r: &RationalFunction, poles: &PoleSet, t: f64) -> Result<Complex64> {
    poles
        .poles
        .iter()
        .map(|p| residue_at(r, p.location, p.multiplicity, t))
        .sum()
}

/// `f(t)` from both rational components by residue summation.
pub fn residue_invert(image: &ImageFunction, t: f64) -> Result<InversionPoint> {
    residue_invert_with(image, t, BromwichConfig::default().reality_tol)
}

fn residue_invert_with(image: &ImageFunction, t: f64, reality_tol: f64) -> Result<InversionPoint> {
    check_time(t)?;
    let (r1, r2) = match image {
        ImageFunction::Rational { r1, r2, .. } => (r1, r2),
        ImageFunction::Components { .. } => {
            return Err(Error::InvalidArgument(
                "residue inversion needs a rational image".into(),
            ))
        }
    };
    let c1 = residue_sum(r1, &find_poles(r1)?, t)?;
    let c2 = if r1 == r2 {
        c1
    } else {
        residue_sum(r2, &find_poles(r2)?, t)?
    };
    Ok(InversionPoint::from_components(t, c1, c2, reality_tol))
}

/// Inverts at every grid time. The grid as a whole is validated up front;
/// numerical failures are reported per point.
pub fn invert_grid(
    image: &ImageFunction,
    times: &[f64],
    cfg: &BromwichConfig,
    method: Method,
) -> Result<Vec<Result<InversionPoint>>> {
    cfg.validate()?;
    if times.is_empty() {
        return Err(Error::Domain("empty time grid".into()));
    }
    if let Some(t) = times.iter().find(|t| !(**t > 0.0 && t.is_finite())) {
        return Err(Error::Domain(format!(
            "grid contains t = {t}; all times must be > 0"
        )));
    }
    if times.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Domain(
            "time grid must be strictly increasing".into(),
        ));
    }
    let method = match (method, image) {
        (Method::Auto, ImageFunction::Rational { .. }) => Method::Residue,
        (Method::Auto, ImageFunction::Components { .. }) => Method::Bromwich,
        (m, _) => m,
    };
    if method == Method::Residue && matches!(image, ImageFunction::Components { .. }) {
        return Err(Error::InvalidArgument(
            "residue inversion needs a rational image".into(),
        ));
    }
    Ok(times
        .par_iter()
        .map(|&t| match method {
            Method::Residue => residue_invert_with(image, t, cfg.reality_tol),
            _ => bromwich_invert(image, t, cfg),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::catalog_lookup;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rat(num: &[f64], den: &[f64]) -> RationalFunction {
        RationalFunction::from_real(num, den).unwrap()
    }

    #[test]
    fn bromwich_component_examples() {
        let cfg = BromwichConfig::default();
        let v = bromwich_component(|s| Ok(s.inv()), 0.0, 1.0, &cfg).unwrap();
        assert!((v.value - c(1.0, 0.0)).norm() < 1e-4);
        let v = bromwich_component(|s| Ok((s * s + 1.0).inv()), 0.0, FRAC_PI_2, &cfg).unwrap();
        assert!((v.value - c(1.0, 0.0)).norm() < 1e-4);
        assert!(matches!(
            bromwich_component(|s| Ok(s.inv()), 0.0, 0.0, &cfg),
            Err(Error::Domain(_))
        ));
        assert!(bromwich_component(|s| Ok(s.inv()), 0.0, -1.0, &cfg).is_err());
    }

    #[test]
    fn bromwich_non_convergence_carries_iterates() {
        let cfg = BromwichConfig {
            refine_tol: 1e-15,
            max_refinements: 2,
            ..Default::default()
        };
        // 1/sqrt-like decay keeps the truncation error large
        let err = bromwich_component(|s| Ok((s + 2.0).sqrt().inv()), 0.0, 1.0, &cfg).unwrap_err();
        match err {
            Error::InversionConvergence {
                refinements,
                last,
                previous,
            } => {
                assert_eq!(refinements, 2);
                assert!(last.is_finite() && previous.is_finite());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bromwich_invert_examples() {
        let cfg = BromwichConfig::default();
        let step = catalog_lookup("unit_step", 1.0, 0.0)
            .unwrap()
            .image_function();
        let p = bromwich_invert(&step, 2.0, &cfg).unwrap();
        assert!((p.f - 1.0).abs() < 1e-4 && p.is_real());

        let sin2 = catalog_lookup("sin", 2.0, 0.0).unwrap().image_function();
        let p = bromwich_invert(&sin2, FRAC_PI_4, &cfg).unwrap();
        assert!((p.f - 1.0).abs() < 1e-4);

        let split =
            ImageFunction::rational_pair(rat(&[1.0], &[0.0, 1.0]), rat(&[2.0], &[0.0, 1.0]), 0.0);
        let p = bromwich_invert(&split, 1.0, &cfg).unwrap();
        assert!((p.f - 1.5).abs() < 1e-4);
        assert!((p.value.a3 + 0.5).abs() < 1e-4);
        assert!(!p.is_real());
    }

    #[test]
    fn bromwich_rejects_non_decaying() {
        let one = ImageFunction::components(|_| c(1.0, 0.0), |_| c(1.0, 0.0), 0.0);
        assert!(matches!(
            bromwich_invert(&one, 1.0, &BromwichConfig::default()),
            Err(Error::InvalidImage(_))
        ));
    }

    #[test]
    fn large_time_shrinks_abscissa() {
        let cfg = BromwichConfig::default();
        let v = bromwich_component(|s| Ok((s + 0.5).inv()), -0.5, 60.0, &cfg).unwrap();
        assert!(v.abscissa * 60.0 <= MAX_EXPONENT + 1e-9);
        assert!(!v.amplified);
        assert!((v.value.re - (-30.0f64).exp()).abs() < 1e-12);
        let v = bromwich_component(|s| Ok((s - 1.0).inv()), 1.0, 40.0, &cfg).unwrap();
        assert!(v.amplified);
    }

    #[test]
    fn find_poles_examples() {
        let ps = find_poles(&rat(&[1.0], &[0.0, 1.0])).unwrap();
        assert_eq!(ps.poles.len(), 1);
        assert_eq!(ps.poles[0].multiplicity, 1);
        assert!(ps.poles[0].location.norm() < 1e-15);

        let ps = find_poles(&rat(&[3.0], &[9.0, 0.0, 1.0])).unwrap();
        assert_eq!(ps.poles.len(), 2);
        assert!((ps.poles[0].location - c(0.0, -3.0)).norm() < 1e-12);
        assert!((ps.poles[1].location - c(0.0, 3.0)).norm() < 1e-12);

        let ps = find_poles(&rat(&[1.0], &[1.0, 2.0, 1.0])).unwrap();
        assert_eq!(ps.poles.len(), 1);
        assert_eq!(ps.poles[0].multiplicity, 2);
        assert!((ps.poles[0].location - c(-1.0, 0.0)).norm() < 1e-12);
        assert_eq!(ps.total_multiplicity(), 2);
    }

    #[test]
    fn residue_at_examples() {
        let r = rat(&[1.0], &[0.0, 1.0]);
        for t in [0.1, 1.0, 7.0] {
            assert!((residue_at(&r, c(0.0, 0.0), 1, t).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        }
        let r = rat(&[1.0], &[1.0, 0.0, 1.0]);
        let t = 0.8;
        let res = residue_at(&r, c(0.0, 1.0), 1, t).unwrap();
        let expected = (c(0.0, 1.0) * t).exp() / c(0.0, 2.0);
        assert!((res - expected).norm() < 1e-15);

        let r = rat(&[1.0], &[1.0, 2.0, 1.0]);
        for t in [0.3, 2.0] {
            let res = residue_at(&r, c(-1.0, 0.0), 2, t).unwrap();
            assert!((res - c(t * (-t).exp(), 0.0)).norm() < 1e-14);
        }
        assert!(matches!(
            residue_at(&r, c(1.0, 0.0), 1, 1.0),
            Err(Error::InvalidPole { .. })
        ));
        // a double pole treated as simple has no finite residue
        assert!(matches!(
            residue_at(&r, c(-1.0, 0.0), 1, 1.0),
            Err(Error::InvalidPole { .. })
        ));
        assert!(residue_at(&r, c(-1.0, 0.0), 2, 0.0).is_err());
    }

    #[test]
    fn residue_invert_examples() {
        let step = catalog_lookup("unit_step", 1.0, 0.0)
            .unwrap()
            .image_function();
        for t in [0.01, 1.0, 50.0] {
            assert!((residue_invert(&step, t).unwrap().f - 1.0).abs() < 1e-15);
        }
        let ds = catalog_lookup("damped_sin", 2.0, 0.5)
            .unwrap()
            .image_function();
        // e^{-0.5} sin 2
        let p = residue_invert(&ds, 1.0).unwrap();
        assert!((p.f - 0.551_516_768_167_580_8).abs() < 1e-12, "{}", p.f);
        let cos = catalog_lookup("cos", 1.0, 0.0).unwrap().image_function();
        assert!((residue_invert(&cos, 0.001).unwrap().f - 1.0).abs() < 1e-6);

        let comp = ImageFunction::components(|s| s.inv(), |s| s.inv(), 0.0);
        assert!(residue_invert(&comp, 1.0).is_err());
    }

    #[test]
    fn grid_validation() {
        let cfg = BromwichConfig::default();
        let sin = catalog_lookup("sin", 1.0, 0.0).unwrap().image_function();
        assert!(matches!(
            invert_grid(&sin, &[0.0, 0.1], &cfg, Method::Auto),
            Err(Error::Domain(_))
        ));
        assert!(invert_grid(&sin, &[0.2, 0.1], &cfg, Method::Auto).is_err());
        assert!(invert_grid(&sin, &[], &cfg, Method::Auto).is_err());
        let comp = ImageFunction::components(|s| s.inv(), |s| s.inv(), 0.0);
        assert!(invert_grid(&comp, &[1.0], &cfg, Method::Residue).is_err());
        let out = invert_grid(&comp, &[1.0], &cfg, Method::Auto).unwrap();
        assert!((out[0].as_ref().unwrap().f - 1.0).abs() < 1e-4);
    }

    #[test]
    fn grid_matches_closed_form() {
        let cfg = BromwichConfig::default();
        let entry = catalog_lookup("sin", 1.0, 0.0).unwrap();
        let image = entry.image_function();
        let times: Vec<f64> = (1..=50).map(|i| i as f64 * 0.1).collect();
        for (method, tol) in [(Method::Residue, 1e-9), (Method::Bromwich, 1e-4)] {
            let out = invert_grid(&image, &times, &cfg, method).unwrap();
            for p in out {
                let p = p.unwrap();
                assert!(
                    (p.f - entry.closed_form(p.t)).abs() <= tol,
                    "{method} t={}",
                    p.t
                );
            }
        }
    }

    #[test]
    fn method_parse() {
        assert_eq!("auto".parse::<Method>().unwrap(), Method::Auto);
        assert!("talbot".parse::<Method>().is_err());
    }
}
