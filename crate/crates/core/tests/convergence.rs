use macdonald::envelope::{error_envelope, EnvelopeSpec};
use macdonald::*;
use std::f64::consts::PI;

fn smallx_envelope(nu: f64, x0: f64, spec: &EnvelopeSpec<f64>) -> f64 {
    let o = Order::new(nu).unwrap();
    error_envelope(
        |x| {
            let a = Abscissa::new(x)?;
            Ok(besselk_imag(o, a)?.value - besselk_smallx_approx(o, a)?)
        },
        x0,
        spec,
    )
    .unwrap()
}

#[test]
fn smallx_error_scales_quadratically() {
    let spec = EnvelopeSpec::new(1.0, 16, 2.0);
    let r = smallx_envelope(1.0, 2e-2, &spec) / smallx_envelope(1.0, 1e-2, &spec);
    assert!(r > 4.0 / 1.5 && r < 4.0 * 1.5, "ratio {r}");
    for nu in [0.5, 2.0] {
        let r = smallx_envelope(nu, 0.0625, &spec) / smallx_envelope(nu, 0.03125, &spec);
        assert!(r > 3.0 && r < 5.0, "nu={nu} ratio {r}");
    }
}

#[test]
fn boundary_and_quadrature_agree_off_grid() {
    let spec = QuadratureSpec::default();
    for (nu, nu2, xi) in [
        (0.3, 0.7, 0.05),
        (1.2, 3.4, 0.002),
        (4.0, 4.5, 0.5),
        (0.8, 2.5, 1.7),
    ] {
        let p = PairSpec::new(nu, nu2, xi).unwrap();
        let b = kernel_boundary(p).unwrap().value;
        let q = kernel_quadrature(p, &spec).unwrap();
        assert!(
            (b - q.value).abs() <= 1e-8 + 1e-8 * b.abs(),
            "{nu} {nu2} {xi}: {b} vs {}",
            q.value
        );
    }
}

#[test]
fn sinc_form_error_shrinks_fourfold() {
    let spec = EnvelopeSpec::new(3.0, 32, 2.0);
    let env = |xi0: f64| {
        error_envelope(
            |xi| {
                let p = PairSpec::new(1.0, 1.5, xi)?;
                Ok(kernel_asymptotic(p)?.value - kernel_boundary(p)?.value)
            },
            xi0,
            &spec,
        )
        .unwrap()
    };
    let e: Vec<f64> = [4e-4, 2e-4, 1e-4].iter().map(|&x| env(x)).collect();
    for w in e.windows(2) {
        let r = w[0] / w[1];
        assert!(r > 3.0 && r < 5.0, "ratio {r}");
    }
}

#[test]
fn delta_sequence_with_compact_bump() {
    let phi = TestFunction::bump(2.0, 1.5).unwrap();
    let nu = Order::new(2.0).unwrap();
    let spec = QuadratureSpec::default();
    let errs: Vec<f64> = [1e-2, 1e-4, 1e-6]
        .iter()
        .map(|&xi| {
            let d = delta_smear(nu, limit_parameter(xi), &phi, &spec).unwrap();
            (d.error / d.target).abs()
        })
        .collect();
    assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");
    assert!(errs[2] < 0.02);
}

#[test]
fn weak_limit_converges_to_weight() {
    let phi = TestFunction::gaussian(1.0, 0.2).unwrap();
    let r = weak_limit_test(
        1.0,
        &[1e-2, 1e-3, 1e-4, 1e-6],
        &phi,
        &QuadratureSpec::default(),
    )
    .unwrap();
    assert!((r.target - PI * PI / (2.0 * PI.sinh())).abs() < 1e-15);
    assert!(r.is_converging(0.1), "{:?}", r.errors());
    assert!(r.rows.last().unwrap().relative_error < 0.05);
}

#[test]
fn weak_limit_at_other_orders() {
    let spec = QuadratureSpec::default();
    for (nu, w) in [(2.0, 0.3), (3.0, 0.5)] {
        let phi = TestFunction::gaussian(nu, w).unwrap();
        let r = weak_limit_test(nu, &[1e-2, 1e-4, 1e-6, 1e-8], &phi, &spec).unwrap();
        assert!(r.is_converging(0.1), "nu={nu} {:?}", r.errors());
        assert!(
            r.rows.last().unwrap().relative_error < 0.05,
            "nu={nu} {:?}",
            r.errors()
        );
    }
}

#[test]
fn diagonal_grows_logarithmically() {
    let w = orthogonality_weight(1.0);
    let ratio = |xi: f64| diagonal_limit(1.0, xi).unwrap() / (w * limit_parameter(xi) / PI);
    for xi in [1e-6, 1e-8] {
        assert!((ratio(xi) - 1.0).abs() < 0.1, "xi={xi} ratio {}", ratio(xi));
    }
}
