//! Dense complex polynomials in ascending-degree order and a simultaneous
//! (Aberth–Ehrlich) root finder.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest degree accepted by [`aberth_roots`].
pub const MAX_DEGREE: usize = 64;

/// Horner evaluation of `Σ cᵢ sⁱ`.
pub fn eval(coeffs: &[Complex64], s: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * s + c)
}

/// Index of the highest nonzero coefficient, `None` for the zero polynomial.
pub fn degree(coeffs: &[Complex64]) -> Option<usize> {
    coeffs.iter().rposition(|c| *c != Complex64::new(0.0, 0.0))
}

pub fn trim(mut coeffs: Vec<Complex64>) -> Vec<Complex64> {
    match degree(&coeffs) {
        Some(d) => coeffs.truncate(d + 1),
        None => coeffs.clear(),
    }
    coeffs
}

pub fn derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * i as f64)
        .collect()
}

pub fn add(p: &[Complex64], q: &[Complex64]) -> Vec<Complex64> {
    let n = p.len().max(q.len());
    (0..n)
        .map(|i| p.get(i).copied().unwrap_or_default() + q.get(i).copied().unwrap_or_default())
        .collect()
}

pub fn mul(p: &[Complex64], q: &[Complex64]) -> Vec<Complex64> {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Complex64::new(0.0, 0.0); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

pub fn scale(p: &[Complex64], c: Complex64) -> Vec<Complex64> {
    p.iter().map(|x| x * c).collect()
}

/// Divides by `(s − root)`, returning the quotient and the remainder `p(root)`.
pub fn deflate(p: &[Complex64], root: Complex64) -> (Vec<Complex64>, Complex64) {
    if p.is_empty() {
        return (Vec::new(), Complex64::new(0.0, 0.0));
    }
    let n = p.len() - 1;
    let mut quotient = vec![Complex64::new(0.0, 0.0); n];
    let mut carry = p[n];
    for i in (0..n).rev() {
        quotient[i] = carry;
        carry = p[i] + carry * root;
    }
    (quotient, carry)
}

/// Coefficients of `p(center + u)` in powers of `u`, i.e. the Taylor
/// coefficients `p⁽ʲ⁾(center)/j!`.
pub fn taylor_shift(p: &[Complex64], center: Complex64) -> Vec<Complex64> {
    let mut work = p.to_vec();
    let mut out = Vec::with_capacity(p.len());
    while !work.is_empty() {
        let (q, r) = deflate(&work, center);
        out.push(r);
        work = q;
    }
    out
}

/// Scale used to judge whether `|p(s)|` is small: `Σ |cᵢ| |s|ⁱ`.
pub fn magnitude_scale(coeffs: &[Complex64], s: Complex64) -> f64 {
    let r = s.norm();
    coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

/// All roots of `p` (with repetition) by Aberth–Ehrlich simultaneous iteration.
///
/// The iteration stops once every correction is below `1e−15 · (1 + |z|)`.
/// If the cap is reached the iterate is returned anyway and left to the
/// caller's residual check.
pub fn aberth_roots(p: &[Complex64], max_iterations: usize) -> Result<Vec<Complex64>> {
    let deg = degree(p)
        .ok_or_else(|| Error::InvalidArgument("cannot find roots of the zero polynomial".into()))?;
    if deg > MAX_DEGREE {
        return Err(Error::InvalidArgument(format!(
            "polynomial degree {deg} exceeds the supported maximum {MAX_DEGREE}"
        )));
    }
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lead = p[deg];
    let monic: Vec<Complex64> = p[..=deg].iter().map(|c| c / lead).collect();
    if deg == 1 {
        return Ok(vec![-monic[0]]);
    }
    let dmonic = derivative(&monic);

    // Starting points on a circle sized by the root magnitudes' geometric
    // mean, rotated off the axes to avoid symmetric stalls.
    let radius = {
        let c0 = monic[0].norm();
        let r = if c0 > 0.0 {
            c0.powf(1.0 / deg as f64)
        } else {
            1.0
        };
        let cauchy = 1.0 + monic[..deg].iter().map(|c| c.norm()).fold(0.0, f64::max);
        r.clamp(1e-3, cauchy)
    };
    let center = -monic[deg - 1] / deg as f64;
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / deg as f64 + 0.4;
            center + Complex64::from_polar(radius, theta)
        })
        .collect();

    for _ in 0..max_iterations {
        let mut converged = true;
        for i in 0..deg {
            let pz = eval(&monic, z[i]);
            if pz == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = pz / eval(&dmonic, z[i]);
            let repulsion: Complex64 = (0..deg)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d == Complex64::new(0.0, 0.0) {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let denom = Complex64::new(1.0, 0.0) - ratio * repulsion;
            let step = if denom.norm() > 0.0 && ratio.is_finite() {
                ratio / denom
            } else {
                ratio
            };
            if !step.is_finite() {
                return Err(Error::NumericFailure(
                    "root iteration produced a non-finite step".into(),
                ));
            }
            z[i] -= step;
            if step.norm() > 1e-15 * (1.0 + z[i].norm()) {
                converged = false;
            }
        }
        if converged {
            break;
        }
    }
    Ok(z)
}

/// Largest radius (relative to `1 + |r|`) that may be read as one root.
pub const MAX_CLUSTER_RADIUS: f64 = 1e-3;

/// Radius within which `m` roots are read as one `m`-fold root. Such a
/// root splits into roots about `ε^{1/m}` apart.
pub fn cluster_radius(m: usize, rel: f64) -> f64 {
    rel.max(16.0 * f64::EPSILON.powf(1.0 / m as f64))
        .min(MAX_CLUSTER_RADIUS.max(rel))
}

/// Groups nearby roots and replaces each group by its mean, returning
/// `(location, multiplicity)` pairs.
///
/// From each unassigned root the largest group of its nearest neighbours
/// lying within `cluster_radius(m, rel) · (1 + |mean|)` of the group mean is
/// taken.
pub fn cluster_roots(roots: &[Complex64], rel: f64) -> Vec<(Complex64, usize)> {
    let mut used = vec![false; roots.len()];
    let mut out = Vec::new();
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        let mut near: Vec<usize> = (0..roots.len()).filter(|&j| j != i && !used[j]).collect();
        near.sort_by(|&a, &b| {
            (roots[a] - roots[i])
                .norm()
                .total_cmp(&(roots[b] - roots[i]).norm())
        });
        let mut chosen = vec![i];
        for m in (2..=near.len() + 1).rev() {
            let group: Vec<usize> = std::iter::once(i)
                .chain(near[..m - 1].iter().copied())
                .collect();
            let mean = group.iter().map(|&j| roots[j]).sum::<Complex64>() / m as f64;
            let radius = cluster_radius(m, rel) * (1.0 + mean.norm());
            if group.iter().all(|&j| (roots[j] - mean).norm() <= radius) {
                chosen = group;
                break;
            }
        }
        for &j in &chosen {
            used[j] = true;
        }
        let mean = chosen.iter().map(|&j| roots[j]).sum::<Complex64>() / chosen.len() as f64;
        out.push((mean, chosen.len()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|&x| c(x, 0.0)).collect()
    }

    #[test]
    fn horner_matches_power_sum() {
        let p = vec![c(1.0, 2.0), c(-0.5, 0.0), c(0.0, 3.0), c(2.0, -1.0)];
        let s = c(0.7, -1.3);
        let naive: Complex64 = p
            .iter()
            .enumerate()
            .map(|(i, a)| a * s.powi(i as i32))
            .sum();
        assert!((eval(&p, s) - naive).norm() < 1e-13);
    }

    #[test]
    fn deflate_and_shift() {
        // (s+1)^2 = s^2 + 2s + 1
        let p = real(&[1.0, 2.0, 1.0]);
        let (q, r) = deflate(&p, c(-1.0, 0.0));
        assert_eq!(q, real(&[1.0, 1.0]));
        assert_eq!(r, c(0.0, 0.0));
        // p(2 + u) = 9 + 6u + u^2
        assert_eq!(taylor_shift(&p, c(2.0, 0.0)), real(&[9.0, 6.0, 1.0]));
    }

    #[test]
    fn aberth_simple_and_multiple() {
        let roots = aberth_roots(&real(&[9.0, 0.0, 1.0]), 500).unwrap();
        let mut clusters = cluster_roots(&roots, 1e-7);
        clusters.sort_by(|a, b| a.0.im.total_cmp(&b.0.im));
        assert_eq!(clusters.len(), 2);
        assert!((clusters[0].0 - c(0.0, -3.0)).norm() < 1e-12);
        assert!((clusters[1].0 - c(0.0, 3.0)).norm() < 1e-12);

        let roots = aberth_roots(&real(&[1.0, 2.0, 1.0]), 500).unwrap();
        let clusters = cluster_roots(&roots, 1e-7);
        assert_eq!(clusters.len(), 1);
        assert_eq!(clusters[0].1, 2);
        assert!((clusters[0].0 - c(-1.0, 0.0)).norm() < 1e-7);

        // (s+1)^3 splits by about ε^{1/3}
        let roots = aberth_roots(&real(&[1.0, 3.0, 3.0, 1.0]), 500).unwrap();
        let clusters = cluster_roots(&roots, 1e-7);
        assert_eq!(clusters, vec![(clusters[0].0, 3)]);
        assert!((clusters[0].0 - c(-1.0, 0.0)).norm() < 1e-5);
    }

    #[test]
    fn aberth_rejects_bad_input() {
        assert!(aberth_roots(&[], 10).is_err());
        assert!(aberth_roots(&real(&[0.0, 0.0]), 10).is_err());
        let mut big = vec![c(0.0, 0.0); MAX_DEGREE + 2];
        big[MAX_DEGREE + 1] = c(1.0, 0.0);
        big[0] = c(1.0, 0.0);
        assert!(aberth_roots(&big, 10).is_err());
    }

    #[test]
    fn aberth_higher_degree() {
        // (s-1)(s-2)(s-3)(s+4)(s^2+1)
        let mut p = real(&[1.0]);
        for r in [
            c(1.0, 0.0),
            c(2.0, 0.0),
            c(3.0, 0.0),
            c(-4.0, 0.0),
            c(0.0, 1.0),
            c(0.0, -1.0),
        ] {
            p = mul(&p, &[-r, c(1.0, 0.0)]);
        }
        let roots = aberth_roots(&p, 500).unwrap();
        assert_eq!(roots.len(), 6);
        for r in roots {
            assert!(eval(&p, r).norm() < 1e-10, "residual at {r}");
        }
    }
}
