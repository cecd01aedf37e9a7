mod common;

use bicomplex_laplace::signal::{PairId, DEFAULT_DECAY_RADII};
use bicomplex_laplace::{
    bromwich_component, bromwich_invert, decay_check, find_poles, invert_grid, residue_invert,
    BromwichConfig, CatalogEntry, Complex64, Error, ImageFunction, Method, RationalFunction,
};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Test-side polynomial product, independent of the library's.
fn poly_mul(p: &[Complex64], q: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![c(0.0, 0.0); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// `Σ cⱼ / (s − pⱼ)` over a common denominator.
fn partial_fractions(poles: &[Complex64], weights: &[Complex64]) -> RationalFunction {
    let linear = |p: Complex64| vec![-p, c(1.0, 0.0)];
    let den = poles
        .iter()
        .fold(vec![c(1.0, 0.0)], |acc, &p| poly_mul(&acc, &linear(p)));
    let mut num = vec![c(0.0, 0.0); poles.len()];
    for (j, w) in weights.iter().enumerate() {
        let term = poles
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != j)
            .fold(vec![*w], |acc, (_, &p)| poly_mul(&acc, &linear(p)));
        for (i, t) in term.iter().enumerate() {
            num[i] += t;
        }
    }
    RationalFunction::new(num, den).unwrap()
}

fn series(poles: &[Complex64], weights: &[Complex64], t: f64) -> Complex64 {
    poles
        .iter()
        .zip(weights)
        .map(|(p, w)| w * (p * t).exp())
        .sum()
}

fn pole_set() -> impl Strategy<Value = Vec<Complex64>> {
    // distinct real poles plus one conjugate pair, all left of zero
    (
        prop::collection::vec(-3.0f64..-0.1, 1..3),
        -2.0f64..-0.1,
        0.5f64..3.0,
    )
        .prop_filter_map("poles too close", |(reals, re, im)| {
            let mut poles: Vec<Complex64> = reals.into_iter().map(|r| c(r, 0.0)).collect();
            poles.push(c(re, im));
            poles.push(c(re, -im));
            let ok = poles
                .iter()
                .enumerate()
                .all(|(i, p)| poles[..i].iter().all(|q| (p - q).norm() > 0.2));
            ok.then_some(poles)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn residues_recover_partial_fraction_series(poles in pole_set(), w in prop::collection::vec(-2.0f64..2.0, 5)) {
        let n = poles.len();
        let mut weights: Vec<Complex64> = w[..n - 2].iter().map(|&x| c(x, 0.0)).collect();
        // conjugate weights on the conjugate pair keep the object real
        weights.push(c(w[n - 2], w[n - 1]));
        weights.push(c(w[n - 2], -w[n - 1]));
        let r = partial_fractions(&poles, &weights);
        prop_assert_eq!(find_poles(&r).unwrap().total_multiplicity(), n);
        let image = ImageFunction::rational(r, 0.0);
        for t in [0.1, 0.7, 2.0, 5.0] {
            let p = residue_invert(&image, t).unwrap();
            let exact = series(&poles, &weights, t);
            prop_assert!((p.f - exact.re).abs() < 1e-9, "t={}: {} vs {}", t, p.f, exact.re);
            prop_assert!(p.reality_defect < 1e-9);
        }
    }

    #[test]
    fn residue_linearity(alpha in -3.0f64..3.0, beta in -3.0f64..3.0, t in 0.1f64..5.0) {
        let f = CatalogEntry::new(PairId::DampedSin, 2.0, 0.5).unwrap();
        let g = CatalogEntry::new(PairId::Cos, 1.0, 0.0).unwrap();
        let combined = f.image().scale(c(alpha, 0.0)).add(&g.image().scale(c(beta, 0.0)));
        let lhs = residue_invert(&ImageFunction::rational(combined, 0.0), t).unwrap().f;
        let rhs = alpha * residue_invert(&f.image_function(), t).unwrap().f
            + beta * residue_invert(&g.image_function(), t).unwrap().f;
        prop_assert!((lhs - rhs).abs() < 1e-9 * (1.0 + alpha.abs() + beta.abs()));
    }

    #[test]
    fn rational_eval_matches_power_sums(
        num in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 1..4),
        den in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 4..6),
        re in -5.0f64..5.0, im in -5.0f64..5.0,
    ) {
        let num: Vec<Complex64> = num.into_iter().map(|(a, b)| c(a, b)).collect();
        let mut den: Vec<Complex64> = den.into_iter().map(|(a, b)| c(a, b)).collect();
        let last = den.len() - 1;
        den[last] = c(1.0, 0.0);
        let r = RationalFunction::new(num.clone(), den.clone()).unwrap();
        let s = c(re, im);
        let power_sum = |p: &[Complex64]| -> Complex64 { p.iter().enumerate().map(|(i, a)| a * s.powi(i as i32)).sum() };
        let d = power_sum(&den);
        prop_assume!(d.norm() > 1e-3);
        let exact = power_sum(&num) / d;
        prop_assert!((r.eval(s).unwrap() - exact).norm() <= 1e-10 * (1.0 + exact.norm()));
    }
}

#[test]
fn methods_agree_on_catalog() {
    let cfg = BromwichConfig::default();
    for id in PairId::ALL {
        let image = CatalogEntry::new(id, 2.0, 1.0).unwrap().image_function();
        for t in [0.5, 1.0, 2.0, 5.0] {
            let r = residue_invert(&image, t).unwrap().f;
            let b = bromwich_invert(&image, t, &cfg).unwrap().f;
            assert!((r - b).abs() < 2e-4, "{id} t={t}: {r} vs {b}");
        }
    }
}

#[test]
fn multiple_poles() {
    let cfg = BromwichConfig::default();
    // 1/(s+1)^2 -> t e^{-t};  1/(s+1)^3 -> t^2 e^{-t} / 2
    let double = RationalFunction::from_real(&[1.0], &[1.0, 2.0, 1.0]).unwrap();
    let triple = RationalFunction::from_real(&[1.0], &[1.0, 3.0, 3.0, 1.0]).unwrap();
    let poles = find_poles(&triple).unwrap().poles;
    assert_eq!(poles.len(), 1);
    assert_eq!(poles[0].multiplicity, 3);
    assert!((poles[0].location - c(-1.0, 0.0)).norm() < 1e-12);
    for i in 1..=50 {
        let t = i as f64 * 0.1;
        let e = (-t).exp();
        let r2 = residue_invert(&ImageFunction::rational(double.clone(), -1.0), t)
            .unwrap()
            .f;
        assert!((r2 - t * e).abs() < 1e-8, "t={t}");
        let r3 = residue_invert(&ImageFunction::rational(triple.clone(), -1.0), t)
            .unwrap()
            .f;
        assert!((r3 - t * t * e / 2.0).abs() < 1e-8, "t={t}");
    }
    // 1/(s+2)^4 -> t^3 e^{-2t} / 6
    let quadruple = RationalFunction::from_real(&[1.0], &[16.0, 32.0, 24.0, 8.0, 1.0]).unwrap();
    for t in [0.3, 1.0, 4.0] {
        let r4 = residue_invert(&ImageFunction::rational(quadruple.clone(), -2.0), t)
            .unwrap()
            .f;
        assert!(
            (r4 - t.powi(3) * (-2.0 * t).exp() / 6.0).abs() < 1e-8,
            "t={t}"
        );
    }
    for t in [0.5, 2.0] {
        let b = bromwich_invert(&ImageFunction::rational(double.clone(), -1.0), t, &cfg)
            .unwrap()
            .f;
        assert!((b - t * (-t).exp()).abs() < 1e-3);
    }
}

#[test]
fn equal_components_reduce_to_classical_inversion() {
    let cfg = BromwichConfig::default();
    let entry = CatalogEntry::new(PairId::DampedCos, 2.0, 0.5).unwrap();
    let r = entry.image();
    let image = entry.image_function();
    for t in [0.5, 1.0, 3.0] {
        let bicomplex = bromwich_invert(&image, t, &cfg).unwrap();
        let k = image.abscissa_k();
        let single = bromwich_component(|s| r.eval(s), k, t, &cfg).unwrap();
        assert!((bicomplex.f - single.value.re).abs() < 1e-10);
        assert!(bicomplex.reality_defect < 1e-10);
    }
}

#[test]
fn distinct_components_warn_non_real() {
    let r1 = RationalFunction::from_real(&[1.0], &[0.0, 1.0]).unwrap();
    let r2 = RationalFunction::from_real(&[1.0], &[1.0, 1.0]).unwrap();
    let image = ImageFunction::rational_pair(r1, r2, 0.0);
    let p = residue_invert(&image, 1.0).unwrap();
    // (1 + e^{-1})/2 on the real part, (1 − e^{-1})/2 on i1i2
    assert!((p.f - (1.0 + (-1.0f64).exp()) / 2.0).abs() < 1e-12);
    assert!((p.value.a3 - (1.0 - (-1.0f64).exp()) / 2.0).abs() < 1e-12);
    assert!(!p.is_real());
}

#[test]
fn decay_gate() {
    for id in PairId::ALL {
        let entry = CatalogEntry::new(id, 2.0, 0.5).unwrap();
        let report = decay_check(&entry.image_function(), &DEFAULT_DECAY_RADII).unwrap();
        assert!(report.passes, "{id}");
        assert!(
            (report.est_p - entry.asymptotic_order()).abs() <= 0.3,
            "{id}: {}",
            report.est_p
        );
    }
    let one = ImageFunction::components(|_| c(1.0, 0.0), |_| c(1.0, 0.0), 0.0);
    assert!(!decay_check(&one, &DEFAULT_DECAY_RADII).unwrap().passes);
    let err = bromwich_invert(&one, 1.0, &BromwichConfig::default()).unwrap_err();
    assert!(matches!(err, Error::InvalidImage(_)));
}

#[test]
fn grid_validation() {
    let image = CatalogEntry::new(PairId::Sin, 1.0, 0.0)
        .unwrap()
        .image_function();
    let cfg = BromwichConfig::default();
    for bad in [
        vec![],
        vec![0.0, 1.0],
        vec![-1.0],
        vec![1.0, 1.0],
        vec![2.0, 1.0],
        vec![f64::NAN],
    ] {
        assert!(
            matches!(
                invert_grid(&image, &bad, &cfg, Method::Auto),
                Err(Error::Domain(_))
            ),
            "{bad:?}"
        );
    }
    let closure = ImageFunction::components(|s| s.inv(), |s| s.inv(), 0.0);
    assert!(invert_grid(&closure, &[1.0], &cfg, Method::Residue).is_err());
    let out = invert_grid(&closure, &[1.0, 2.0], &cfg, Method::Auto).unwrap();
    for p in out {
        assert!((p.unwrap().f - 1.0).abs() < 1e-4);
    }
}
