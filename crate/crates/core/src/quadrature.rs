//! Composite Gauss–Legendre quadrature for complex-valued integrands.

use std::sync::OnceLock;

use num_complex::Complex64;

/// Points per Gauss–Legendre panel.
pub const GL_ORDER: usize = 16;

/// Nodes and weights on `[-1, 1]` for an `n`-point Gauss–Legendre rule,
/// by Newton iteration on `Pₙ` from the Chebyshev-like initial guesses.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 {
                1.0
            } else if n == 1 {
                x
            } else {
                p1
            };
            let pn1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pn1) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn rule16() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(GL_ORDER))
}

/// Integrates `f` over `[a, b]` split into `panels` equal panels.
pub fn composite<F>(f: F, a: f64, b: f64, panels: usize) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let (nodes, weights) = rule16();
    let width = (b - a) / panels as f64;
    let half = 0.5 * width;
    let mut total = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * width;
        let panel: Complex64 = nodes
            .iter()
            .zip(weights)
            .map(|(x, w)| f(mid + half * x) * *w)
            .sum();
        total += panel * half;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two_and_nodes_symmetric() {
        for n in [1, 2, 5, 16] {
            let (x, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14, "n = {n}");
            for i in 0..n {
                assert!((x[i] + x[n - 1 - i]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn exact_for_degree_31() {
        // ∫_{-1}^{1} x^30 dx = 2/31
        let v = composite(
            |x| Complex64::new(x.powi(30) + x.powi(31), 0.0),
            -1.0,
            1.0,
            1,
        );
        assert!((v.re - 2.0 / 31.0).abs() < 1e-14);
    }

    #[test]
    fn oscillatory_exponential() {
        // ∫_0^10 e^{-(1+5i)t} dt = (1 - e^{-(1+5i)10}) / (1+5i)
        let s = Complex64::new(1.0, 5.0);
        let exact = (Complex64::new(1.0, 0.0) - (-s * 10.0).exp()) / s;
        let v = composite(|t| (-s * t).exp(), 0.0, 10.0, 40);
        assert!((v - exact).norm() < 1e-13);
    }
}
