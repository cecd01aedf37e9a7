//! Forward bicomplex Laplace transform `F(ξ) = ∫₀^∞ f(t) e^{−ξt} dt`,
//! evaluated as two complex transforms `F₁(ξ₁)`, `F₂(ξ₂)` recombined along
//! `e₁`, `e₂`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bicomplex::{Bicomplex, Component, IdempotentPair};
use crate::error::{Error, Result};
use crate::quadrature;
use crate::signal::SignalSpec;

/// Points closer than this to the boundary `Re(ξⱼ) = k` are refused.
pub const REGION_MARGIN: f64 = 1e-6;
/// Largest truncation horizon the tail bound may ask for.
pub const MAX_HORIZON: f64 = 1e6;
/// Largest number of panels the refinement loop may use.
pub const MAX_PANELS: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureRule {
    /// Dyadic panel refinement until successive estimates agree.
    AdaptiveSubdivision,
    /// A single composite pass with the configured panel count.
    FixedComposite,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    /// Initial truncation horizon; extended automatically by the tail bound.
    pub t_max: f64,
    pub n_panels: usize,
    pub tail_tol: f64,
    pub rule: QuadratureRule,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            t_max: 20.0,
            n_panels: 32,
            tail_tol: 1e-11,
            rule: QuadratureRule::AdaptiveSubdivision,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return Err(Error::InvalidArgument("t_max must be positive".into()));
        }
        if self.n_panels < 8 {
            return Err(Error::InvalidArgument("n_panels must be at least 8".into()));
        }
        if !(self.tail_tol > 0.0) {
            return Err(Error::InvalidArgument("tail_tol must be positive".into()));
        }
        Ok(())
    }
}

/// Whether both idempotent components satisfy `Re(ξⱼ) > k`.
pub fn in_region(xi: &Bicomplex, k: f64) -> bool {
    let p = xi.to_idempotent();
    p.xi1.re > k && p.xi2.re > k
}

/// Transform of `f` at a bicomplex point inside the region of convergence.
pub fn laplace_point(f: &SignalSpec, xi: &Bicomplex, cfg: &QuadratureConfig) -> Result<Bicomplex> {
    cfg.validate()?;
    if !xi.is_finite() {
        return Err(Error::InvalidArgument(
            "transform point must be finite".into(),
        ));
    }
    let p = xi.to_idempotent();
    let k = f.order_k();
    for c in Component::BOTH {
        let re = p.get(c).re;
        if !(re >= k + REGION_MARGIN) {
            return Err(Error::ConvergenceRegion {
                component: c.index(),
                re,
                k,
            });
        }
    }
    let f1 = laplace_complex(f, p.xi1, cfg)?;
    // Equal components (ξ complex) share one integral.
    let f2 = if p.xi2 == p.xi1 {
        f1
    } else {
        laplace_complex(f, p.xi2, cfg)?
    };
    Ok(Bicomplex::from_idempotent(IdempotentPair::new(f1, f2)))
}

/// Pointwise transform over a list; failures are reported per point.
pub fn laplace_grid(
    f: &SignalSpec,
    xis: &[Bicomplex],
    cfg: &QuadratureConfig,
) -> Vec<Result<Bicomplex>> {
    xis.par_iter().map(|xi| laplace_point(f, xi, cfg)).collect()
}

/// Classical complex transform `∫₀^∞ f(t) e^{−st} dt` for `Re(s) > k`.
pub fn laplace_complex(f: &SignalSpec, s: Complex64, cfg: &QuadratureConfig) -> Result<Complex64> {
    let gap = s.re - f.order_k();
    if !(gap > 0.0) {
        return Err(Error::ConvergenceRegion {
            component: 1,
            re: s.re,
            k: f.order_k(),
        });
    }
    let horizon = truncation_horizon(f.bound_m(), gap, cfg)?;

    // Keep each panel under a quarter period of e^{−i Im(s) t}.
    let mut panels = cfg.n_panels;
    if s.im != 0.0 {
        let max_width = std::f64::consts::PI / (4.0 * s.im.abs());
        panels = panels.max((horizon / max_width).ceil() as usize);
    }
    if panels > MAX_PANELS {
        return Err(Error::Truncation(format!(
            "{panels} panels needed on [0, {horizon}] exceeds the cap of {MAX_PANELS}"
        )));
    }

    let mut edges = vec![0.0];
    edges.extend(
        f.breakpoints()
            .iter()
            .copied()
            .filter(|&b| b > 0.0 && b < horizon),
    );
    edges.push(horizon);
    let integrate = |panels: usize| -> Complex64 {
        edges
            .windows(2)
            .map(|w| {
                let n = ((panels as f64) * (w[1] - w[0]) / horizon).ceil().max(1.0) as usize;
                quadrature::composite(|t: f64| (-s * t).exp() * f.eval(t), w[0], w[1], n)
            })
            .sum()
    };
    let mut estimate = integrate(panels);
    if cfg.rule == QuadratureRule::FixedComposite {
        return Ok(estimate);
    }
    loop {
        if panels * 2 > MAX_PANELS {
            return Err(Error::Truncation(format!(
                "quadrature did not settle to {} within {MAX_PANELS} panels",
                cfg.tail_tol
            )));
        }
        panels *= 2;
        let refined = integrate(panels);
        let settled = (refined - estimate).norm() < cfg.tail_tol;
        estimate = refined;
        if settled {
            return Ok(estimate);
        }
    }
}

/// Smallest horizon `T ≥ t_max` with `M e^{−(σ−k)T} / (σ−k) < tail_tol`.
fn truncation_horizon(bound_m: f64, gap: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if bound_m == 0.0 {
        return Ok(cfg.t_max);
    }
    let needed = (bound_m / (gap * cfg.tail_tol)).ln() / gap;
    let horizon = cfg.t_max.max(needed * 1.01);
    if !(horizon <= MAX_HORIZON) {
        return Err(Error::Truncation(format!(
            "tail bound needs a horizon of {needed:.3e} (cap {MAX_HORIZON:.0e}); move the point further right of k"
        )));
    }
    Ok(horizon)
}
