//! Object functions `f(t)` of exponential order, image functions `F`, and the
//! catalog of elementary transform pairs.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bicomplex::{Bicomplex, Component, IdempotentPair};
use crate::error::{Error, Result};
use crate::poly;

pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
/// User-supplied complex component image. Must be pure; it may be called
/// concurrently from several threads.
pub type ComplexFn = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

/// Horizon of the probe grid used to estimate `M` in `|f(t)| ≤ M e^{kt}`.
pub const PROBE_HORIZON: f64 = 20.0;
const PROBE_POINTS: usize = 2001;
/// Growth of `|f| e^{−kt}` between the two halves of the probe grid above
/// which a signal is rejected as not being of the declared order.
const ORDER_GROWTH_LIMIT: f64 = 1e6;

pub const DECAY_P_MIN: f64 = 0.5;
pub const DECAY_TOL: f64 = 1e-3;
pub const DEFAULT_DECAY_RADII: [f64; 5] = [1e2, 3e2, 1e3, 3e3, 1e4];
const ARC_SAMPLES: usize = 33;

/// A real object function on `t ≥ 0` with declared exponential order `k`.
#[derive(Clone)]
pub struct SignalSpec {
    eval: RealFn,
    order_k: f64,
    label: String,
    bound_m: f64,
    breakpoints: Arc<[f64]>,
}

impl fmt::Debug for SignalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SignalSpec")
            .field("label", &self.label)
            .field("order_k", &self.order_k)
            .field("bound_m", &self.bound_m)
            .finish()
    }
}

impl SignalSpec {
    /// Registers a signal, estimating `M = max |f(t)| e^{−kt}` over a probe
    /// grid on `[0, 20]`.
    pub fn new<F>(label: impl Into<String>, order_k: f64, f: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::from_arc(label, order_k, Arc::new(f))
    }

    pub fn from_arc(label: impl Into<String>, order_k: f64, eval: RealFn) -> Result<Self> {
        let label = label.into();
        if !order_k.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "signal `{label}`: exponential order must be finite"
            )));
        }
        let mut first_half: f64 = 0.0;
        let mut second_half: f64 = 0.0;
        for i in 0..PROBE_POINTS {
            let t = PROBE_HORIZON * i as f64 / (PROBE_POINTS - 1) as f64;
            let v = eval(t);
            if !v.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "signal `{label}` is not finite at t = {t}"
                )));
            }
            let scaled = v.abs() * (-order_k * t).exp();
            if t <= 0.5 * PROBE_HORIZON {
                first_half = first_half.max(scaled);
            } else {
                second_half = second_half.max(scaled);
            }
        }
        if first_half > 0.0 && second_half > ORDER_GROWTH_LIMIT * first_half {
            return Err(Error::InvalidArgument(format!(
                "signal `{label}` grows faster than exp({order_k} t) on the probe grid"
            )));
        }
        let bound_m = first_half.max(second_half);
        if !bound_m.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "signal `{label}` overflows its exponential bound"
            )));
        }
        Ok(Self {
            eval,
            order_k,
            label,
            bound_m,
            breakpoints: Arc::from(Vec::new()),
        })
    }

    /// Piecewise-linear signal through `(t, f)` samples, zero beyond the last
    /// sample. The first sample must be at `t = 0`.
    pub fn from_samples(
        label: impl Into<String>,
        order_k: f64,
        samples: Vec<(f64, f64)>,
    ) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidArgument(
                "at least two samples are required".into(),
            ));
        }
        if samples[0].0 != 0.0 {
            return Err(Error::InvalidArgument("samples must start at t = 0".into()));
        }
        if samples.windows(2).any(|w| !(w[1].0 > w[0].0)) {
            return Err(Error::InvalidArgument(
                "sample times must be strictly increasing".into(),
            ));
        }
        if samples
            .iter()
            .any(|(t, f)| !t.is_finite() || !f.is_finite())
        {
            return Err(Error::InvalidArgument("samples must be finite".into()));
        }
        let breakpoints: Vec<f64> = samples.iter().skip(1).map(|(t, _)| *t).collect();
        let samples = Arc::new(samples);
        let f = move |t: f64| {
            let last = samples[samples.len() - 1];
            if t < 0.0 || t > last.0 {
                return 0.0;
            }
            let i = samples.partition_point(|(ti, _)| *ti <= t);
            if i == samples.len() {
                return last.1;
            }
            let (t0, f0) = samples[i - 1];
            let (t1, f1) = samples[i];
            f0 + (f1 - f0) * (t - t0) / (t1 - t0)
        };
        let mut spec = Self::new(label, order_k, f)?;
        spec.breakpoints = Arc::from(breakpoints);
        Ok(spec)
    }

    /// Points where the signal or its derivative may jump, in increasing order.
    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.eval)(t)
    }

    pub fn order_k(&self) -> f64 {
        self.order_k
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Estimated constant `M` in `|f(t)| ≤ M e^{kt}`.
    pub fn bound_m(&self) -> f64 {
        self.bound_m
    }

    /// `α f + β g` with order `max(k_f, k_g)`.
    pub fn linear_combination(
        alpha: f64,
        f: &SignalSpec,
        beta: f64,
        g: &SignalSpec,
    ) -> Result<Self> {
        let (fe, ge) = (f.eval.clone(), g.eval.clone());
        Self::new(
            format!("{alpha}*{} + {beta}*{}", f.label, g.label),
            f.order_k.max(g.order_k),
            move |t| alpha * fe(t) + beta * ge(t),
        )
    }
}

/// `num(s)/den(s)` with complex coefficients in ascending degree, strictly proper.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RationalJson", into = "RationalJson")]
pub struct RationalFunction {
    num: Vec<Complex64>,
    den: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct RationalJson {
    num: Vec<[f64; 2]>,
    den: Vec<[f64; 2]>,
}

impl TryFrom<RationalJson> for RationalFunction {
    type Error = Error;
    fn try_from(raw: RationalJson) -> Result<Self> {
        let conv = |v: Vec<[f64; 2]>| {
            v.into_iter()
                .map(|[re, im]| Complex64::new(re, im))
                .collect()
        };
        RationalFunction::new(conv(raw.num), conv(raw.den))
    }
}

impl From<RationalFunction> for RationalJson {
    fn from(r: RationalFunction) -> Self {
        let conv = |v: Vec<Complex64>| v.into_iter().map(|z| [z.re, z.im]).collect();
        RationalJson {
            num: conv(r.num),
            den: conv(r.den),
        }
    }
}

impl RationalFunction {
    /// Validates strict properness; trailing zero numerator coefficients are
    /// dropped, a zero leading denominator coefficient is rejected.
    pub fn new(num: Vec<Complex64>, den: Vec<Complex64>) -> Result<Self> {
        if num.iter().chain(&den).any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument(
                "rational coefficients must be finite".into(),
            ));
        }
        let den_deg = match den.last() {
            None => return Err(Error::InvalidArgument("empty denominator".into())),
            Some(c) if *c == Complex64::new(0.0, 0.0) => {
                return Err(Error::InvalidArgument(
                    "leading denominator coefficient is zero".into(),
                ))
            }
            Some(_) => den.len() - 1,
        };
        let num = poly::trim(num);
        if den_deg == 0 || num.len() > den_deg {
            return Err(Error::InvalidArgument(format!(
                "image must be strictly proper: deg(num) = {}, deg(den) = {den_deg}",
                num.len() as isize - 1
            )));
        }
        Ok(Self { num, den })
    }

    pub fn from_real(num: &[f64], den: &[f64]) -> Result<Self> {
        let conv = |v: &[f64]| v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::new(conv(num), conv(den))
    }

    pub fn num(&self) -> &[Complex64] {
        &self.num
    }

    pub fn den(&self) -> &[Complex64] {
        &self.den
    }

    pub fn den_degree(&self) -> usize {
        self.den.len() - 1
    }

    /// Horner evaluation, refusing points where
    /// `|den(s)| ≤ 1e−10 · (1 + |s|^deg)`.
    pub fn eval(&self, s: Complex64) -> Result<Complex64> {
        let d = poly::eval(&self.den, s);
        let eps = 1e-10 * (1.0 + s.norm().powi(self.den_degree() as i32));
        if d.norm() <= eps {
            return Err(Error::PoleProximity { s });
        }
        Ok(poly::eval(&self.num, s) / d)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            num: poly::trim(poly::scale(&self.num, c)),
            den: self.den.clone(),
        }
    }

    /// Sum over the common denominator `den₁·den₂`.
    pub fn add(&self, other: &Self) -> Self {
        let num = poly::add(
            &poly::mul(&self.num, &other.den),
            &poly::mul(&other.num, &self.den),
        );
        Self {
            num: poly::trim(num),
            den: poly::mul(&self.den, &other.den),
        }
    }
}

/// An image function supplied per idempotent component.
#[derive(Clone)]
pub enum ImageFunction {
    Components {
        f1: ComplexFn,
        f2: ComplexFn,
        abscissa_k: f64,
    },
    Rational {
        r1: RationalFunction,
        r2: RationalFunction,
        abscissa_k: f64,
    },
}

impl fmt::Debug for ImageFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ImageFunction::Components { abscissa_k, .. } => f
                .debug_struct("Components")
                .field("abscissa_k", abscissa_k)
                .finish_non_exhaustive(),
            ImageFunction::Rational { r1, r2, abscissa_k } => f
                .debug_struct("Rational")
                .field("r1", r1)
                .field("r2", r2)
                .field("abscissa_k", abscissa_k)
                .finish(),
        }
    }
}

impl ImageFunction {
    pub fn components<F1, F2>(f1: F1, f2: F2, abscissa_k: f64) -> Self
    where
        F1: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
        F2: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    {
        ImageFunction::Components {
            f1: Arc::new(f1),
            f2: Arc::new(f2),
            abscissa_k,
        }
    }

    /// Same rational function on both components.
    pub fn rational(r: RationalFunction, abscissa_k: f64) -> Self {
        ImageFunction::Rational {
            r1: r.clone(),
            r2: r,
            abscissa_k,
        }
    }

    pub fn rational_pair(r1: RationalFunction, r2: RationalFunction, abscissa_k: f64) -> Self {
        ImageFunction::Rational { r1, r2, abscissa_k }
    }

    pub fn abscissa_k(&self) -> f64 {
        match self {
            ImageFunction::Components { abscissa_k, .. }
            | ImageFunction::Rational { abscissa_k, .. } => *abscissa_k,
        }
    }

    pub fn rational_component(&self, c: Component) -> Option<&RationalFunction> {
        match (self, c) {
            (ImageFunction::Rational { r1, .. }, Component::First) => Some(r1),
            (ImageFunction::Rational { r2, .. }, Component::Second) => Some(r2),
            _ => None,
        }
    }

    /// Evaluates `Fⱼ(s)`; non-finite results become an invalid-image error.
    pub fn eval_component(&self, c: Component, s: Complex64) -> Result<Complex64> {
        let v = match (self, c) {
            (ImageFunction::Components { f1, .. }, Component::First) => f1(s),
            (ImageFunction::Components { f2, .. }, Component::Second) => f2(s),
            (ImageFunction::Rational { r1, .. }, Component::First) => r1.eval(s)?,
            (ImageFunction::Rational { r2, .. }, Component::Second) => r2.eval(s)?,
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::InvalidImage(format!(
                "component {} is not finite at s = {s}",
                c.index()
            )))
        }
    }

    /// `F(ξ) = F₁(ξ₁)e₁ + F₂(ξ₂)e₂`.
    pub fn eval(&self, xi: Bicomplex) -> Result<Bicomplex> {
        let p = xi.to_idempotent();
        Ok(Bicomplex::from_idempotent(IdempotentPair::new(
            self.eval_component(Component::First, p.xi1)?,
            self.eval_component(Component::Second, p.xi2)?,
        )))
    }
}

/// Outcome of the arc-decay probe `|F(ξ)| < M/|ξ|^p`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DecayReport {
    pub passes: bool,
    pub est_p: f64,
    pub est_m: f64,
}

/// Samples `|Fⱼ|` on left semicircular arcs centred on the abscissa and fits
/// `log max|F|` against `log R` by least squares. Passes when the fitted
/// order is at least 0.5 and the largest arc's maximum is at most `1e−3`.
/// Both components must pass; the report carries the weaker one.
pub fn decay_check(image: &ImageFunction, radii: &[f64]) -> Result<DecayReport> {
    if radii.len() < 3 {
        return Err(Error::InvalidArgument(
            "decay probe needs at least three radii".into(),
        ));
    }
    if radii.windows(2).any(|w| !(w[1] > w[0])) || radii[0] <= 0.0 {
        return Err(Error::InvalidArgument(
            "decay radii must be positive and increasing".into(),
        ));
    }
    let center = image.abscissa_k();
    let mut combined: Option<DecayReport> = None;
    for c in Component::BOTH {
        let mut maxima = Vec::with_capacity(radii.len());
        for &r in radii {
            let mut m: f64 = 0.0;
            for i in 0..ARC_SAMPLES {
                let theta = std::f64::consts::FRAC_PI_2
                    + std::f64::consts::PI * i as f64 / (ARC_SAMPLES - 1) as f64;
                let s = Complex64::new(center, 0.0) + Complex64::from_polar(r, theta);
                let v = image
                    .eval_component(c, s)
                    .map_err(|e| Error::InvalidImage(format!("decay probe at s = {s}: {e}")))?;
                m = m.max(v.norm());
            }
            maxima.push(m);
        }
        let report = fit_decay(radii, &maxima);
        combined = Some(match combined {
            None => report,
            Some(prev) => DecayReport {
                passes: prev.passes && report.passes,
                est_p: prev.est_p.min(report.est_p),
                est_m: prev.est_m.max(report.est_m),
            },
        });
    }
    Ok(combined.expect("two components"))
}

fn fit_decay(radii: &[f64], maxima: &[f64]) -> DecayReport {
    let last = *maxima.last().expect("non-empty");
    if maxima.iter().all(|&m| m == 0.0) {
        return DecayReport {
            passes: true,
            est_p: f64::INFINITY,
            est_m: 0.0,
        };
    }
    if maxima.contains(&0.0) {
        // Vanishing on some arcs but not others: no power law to fit.
        return DecayReport {
            passes: false,
            est_p: 0.0,
            est_m: maxima.iter().copied().fold(0.0, f64::max),
        };
    }
    let xs: Vec<f64> = radii.iter().map(|r| r.ln()).collect();
    let ys: Vec<f64> = maxima.iter().map(|m| m.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let est_p = -slope;
    DecayReport {
        passes: est_p >= DECAY_P_MIN && last <= DECAY_TOL,
        est_p,
        est_m: intercept.exp(),
    }
}

/// Identifiers of the catalogued transform pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairId {
    UnitStep,
    Sin,
    Cos,
    DampedCos,
    DampedSin,
}

impl PairId {
    pub const ALL: [PairId; 5] = [
        PairId::UnitStep,
        PairId::Sin,
        PairId::Cos,
        PairId::DampedCos,
        PairId::DampedSin,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PairId::UnitStep => "unit_step",
            PairId::Sin => "sin",
            PairId::Cos => "cos",
            PairId::DampedCos => "damped_cos",
            PairId::DampedSin => "damped_sin",
        }
    }

    pub fn uses_omega(self) -> bool {
        self != PairId::UnitStep
    }

    pub fn uses_damping(self) -> bool {
        matches!(self, PairId::DampedCos | PairId::DampedSin)
    }
}

impl fmt::Display for PairId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PairId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PairId::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::UnknownPair(s.to_string()))
    }
}

/// A catalog pair instantiated with its parameters `ω` and `a`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CatalogEntry {
    pub id: PairId,
    pub omega: f64,
    pub a: f64,
}

/// Instantiates a catalog pair. `omega` must be positive for every pair that
/// uses it; unused parameters are normalised to `ω = 1`, `a = 0`.
pub fn catalog_lookup(id: &str, omega: f64, a: f64) -> Result<CatalogEntry> {
    let id: PairId = id.parse()?;
    CatalogEntry::new(id, omega, a)
}

impl CatalogEntry {
    pub fn new(id: PairId, omega: f64, a: f64) -> Result<Self> {
        if id.uses_omega() && !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "pair `{id}` requires omega > 0, got {omega}"
            )));
        }
        if id.uses_damping() && !a.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "pair `{id}` requires a finite a"
            )));
        }
        Ok(Self {
            id,
            omega: if id.uses_omega() { omega } else { 1.0 },
            a: if id.uses_damping() { a } else { 0.0 },
        })
    }

    /// Declared exponential order of the object: `0`, or `−a` for damped pairs.
    pub fn order_k(&self) -> f64 {
        if self.id.uses_damping() {
            -self.a
        } else {
            0.0
        }
    }

    pub fn image(&self) -> RationalFunction {
        let (w, a) = (self.omega, self.a);
        let (num, den): (Vec<f64>, Vec<f64>) = match self.id {
            PairId::UnitStep => (vec![1.0], vec![0.0, 1.0]),
            PairId::Sin => (vec![w], vec![w * w, 0.0, 1.0]),
            PairId::Cos => (vec![0.0, 1.0], vec![w * w, 0.0, 1.0]),
            PairId::DampedCos => (vec![a, 1.0], vec![a * a + w * w, 2.0 * a, 1.0]),
            PairId::DampedSin => (vec![w], vec![a * a + w * w, 2.0 * a, 1.0]),
        };
        RationalFunction::from_real(&num, &den).expect("catalog images are strictly proper")
    }

    /// The image on both idempotent components, with abscissa at the order `k`
    /// (which coincides with the rightmost pole's real part).
    pub fn image_function(&self) -> ImageFunction {
        ImageFunction::rational(self.image(), self.order_k())
    }

    pub fn closed_form(&self, t: f64) -> f64 {
        let (w, a) = (self.omega, self.a);
        match self.id {
            PairId::UnitStep => 1.0,
            PairId::Sin => (w * t).sin(),
            PairId::Cos => (w * t).cos(),
            PairId::DampedCos => (-a * t).exp() * (w * t).cos(),
            PairId::DampedSin => (-a * t).exp() * (w * t).sin(),
        }
    }

    pub fn object(&self) -> SignalSpec {
        let entry = *self;
        SignalSpec::new(self.label(), self.order_k(), move |t| entry.closed_form(t))
            .expect("catalog objects are of their declared order")
    }

    /// Power `p` in `|F(s)| ~ 1/|s|^p` as `|s| → ∞`.
    pub fn asymptotic_order(&self) -> f64 {
        match self.id {
            PairId::Sin | PairId::DampedSin => 2.0,
            _ => 1.0,
        }
    }

    pub fn label(&self) -> String {
        match (self.id.uses_omega(), self.id.uses_damping()) {
            (false, _) => self.id.to_string(),
            (true, false) => format!("{}(omega={})", self.id, self.omega),
            (true, true) => format!("{}(omega={},a={})", self.id, self.omega, self.a),
        }
    }
}
