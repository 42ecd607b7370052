//! Acceptance suite: one line per criterion, nonzero exit if any gating
//! criterion fails.

use std::f64::consts::PI;
use std::process::Command;

use macdonald::envelope::{error_envelope, EnvelopeSpec};
use macdonald::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const REFERENCE: &str = include_str!("../../core/tests/oracle/reference.txt");
const BIN: &str = env!("CARGO_BIN_EXE_macdonald");

/// Criteria that cannot hold as stated; reported but not gating.
const KNOWN_UNATTAINABLE: &[(u32, &str)] = &[(
    4,
    "the leading large-x form omits the -(4nu^2+1)/(8x) correction, which exceeds 2/x for nu = 3",
)];

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail }
}

fn k(nu: f64, x: f64) -> FunctionValue64 {
    besselk_imag(Order::new(nu).unwrap(), Abscissa::new(x).unwrap()).unwrap()
}

fn reference_grid() -> Vec<(f64, f64, f64)> {
    let grid_nu = [0.1, 0.5, 1.0, 2.0, 5.0, 10.0];
    let grid_x = [1e-4, 1e-2, 0.1, 1.0, 2.0, 5.0, 20.0];
    let rows: Vec<(f64, f64, f64)> = REFERENCE
        .lines()
        .filter(|l| l.starts_with("K nu=") && !l.contains("dK"))
        .map(|l| {
            let p: Vec<&str> = l.split_whitespace().collect();
            (
                p[1].trim_start_matches("nu=").parse().unwrap(),
                p[2].trim_start_matches("x=").parse().unwrap(),
                p[4].parse().unwrap(),
            )
        })
        .filter(|(nu, x, _)| grid_nu.contains(nu) && grid_x.contains(x))
        .collect();
    assert_eq!(
        rows.len(),
        grid_nu.len() * grid_x.len(),
        "reference grid incomplete"
    );
    rows
}

fn gamma_identity() -> Verdict {
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let nu = 0.1 * 200f64.powf(i as f64 / 49.0);
        let m = log_gamma(Complex64::new(0.0, nu))
            .unwrap()
            .log_modulus
            .exp();
        let closed = (PI / (nu * (PI * nu).sinh())).sqrt();
        worst = worst.max((m - closed).abs() / closed);
    }
    verdict(
        worst <= 1e-12,
        format!("max rel {worst:.1e} over 50 nu in [0.1, 20]"),
    )
}

fn symmetry() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut asym = 0;
    let mut residue: f64 = 0.0;
    for _ in 0..100 {
        let nu = rng.gen_range(0.05..20.0);
        let x = 10f64.powf(rng.gen_range(-6.0..30f64.log10()));
        if k(nu, x).value.to_bits() != k(-nu, x).value.to_bits() {
            asym += 1;
        }
        if x <= series_switch(nu) {
            let o = Order::new(nu).unwrap();
            residue = residue.max(besselk_realness_residue(o, Abscissa::new(x).unwrap()).unwrap());
        }
    }
    verdict(
        asym == 0 && residue < 1e-10,
        format!("{asym}/100 asymmetric, max realness residue {residue:.1e}"),
    )
}

fn oracle_grid() -> Verdict {
    let mut worst: f64 = 0.0;
    for (nu, x, want) in reference_grid() {
        worst = worst.max((k(nu, x).value - want).abs() / want.abs());
    }
    verdict(
        worst <= 1e-10,
        format!("max rel {worst:.1e} on 42 grid points"),
    )
}

fn large_x() -> Verdict {
    let mut misses = Vec::new();
    for nu in [0.5, 1.0, 3.0] {
        for x in [10.0, 20.0, 50.0] {
            let o = Order::new(nu).unwrap();
            let a = Abscissa::new(x).unwrap();
            let dev = (k(nu, x).value / besselk_largex_approx(o, a).unwrap() - 1.0).abs();
            if dev > 2.0 / x {
                misses.push(format!("nu={nu} x={x} dev={dev:.3} > {:.3}", 2.0 / x));
            }
        }
    }
    let detail = if misses.is_empty() {
        "9/9 within 2/x".to_string()
    } else {
        format!("{}/9 within 2/x; {}", 9 - misses.len(), misses.join(", "))
    };
    verdict(misses.is_empty(), detail)
}

fn small_x() -> Verdict {
    let o = Order::new(1.0).unwrap();
    let spec = EnvelopeSpec::new(1.0, 16, 2.0);
    let env = |x0: f64| {
        error_envelope(
            |x| {
                let a = Abscissa::new(x)?;
                Ok(besselk_imag(o, a)?.value - besselk_smallx_approx(o, a)?)
            },
            x0,
            &spec,
        )
        .unwrap()
    };
    let e: Vec<f64> = (4..=10).map(|n| env(2f64.powi(-n))).collect();
    let ratios: Vec<f64> = e.windows(2).map(|w| w[0] / w[1]).collect();
    let ok = ratios.iter().all(|r| (3.0..=5.0).contains(r));
    verdict(ok, format!("halving ratios {}", fmt_list(&ratios)))
}

fn ode() -> Verdict {
    let mut worst: f64 = 0.0;
    let mut worst_terms: f64 = 0.0;
    for (nu, x, _) in reference_grid() {
        let o = Order::new(nu).unwrap();
        let r = ode_residual(o, Abscissa::new(x).unwrap()).unwrap();
        let kv = k(nu, x).value;
        worst = worst.max(r.residual.abs() / ((nu * nu / x + x) * kv.abs()));
        worst_terms = worst_terms.max(r.normalized);
    }
    verdict(
        worst <= 1e-6 && worst_terms <= 1e-6,
        format!("max |res|/((nu^2/x+x)|K|) {worst:.1e}, term-normalized {worst_terms:.1e}"),
    )
}

fn integration_by_parts() -> Verdict {
    let orders = [0.5, 1.0, 2.0, 5.0];
    let spec = QuadratureSpec::default();
    let (mut cases, mut ok) = (0, 0);
    let mut worst: f64 = 0.0;
    for &nu in &orders {
        for &nu2 in &orders {
            if nu == nu2 {
                continue;
            }
            for xi in [1e-3, 1e-2, 0.1, 1.0] {
                let p = PairSpec::new(nu, nu2, xi).unwrap();
                let b = kernel_boundary(p).unwrap().value;
                let q = kernel_quadrature(p, &spec).unwrap().value;
                let d = (b - q).abs() / (1e-8 + 1e-8 * b.abs());
                worst = worst.max(d);
                cases += 1;
                ok += usize::from(d <= 1.0);
            }
        }
    }
    verdict(
        cases == 48 && ok == 48,
        format!("{ok}/{cases} cases, worst |diff| at {worst:.1e} of tolerance"),
    )
}

fn sinc_form() -> Verdict {
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
    let e: Vec<f64> = [1e-3, 5e-4, 2.5e-4].iter().map(|&x| env(x)).collect();
    let ratios: Vec<f64> = e.windows(2).map(|w| w[0] / w[1]).collect();
    let ok = ratios.iter().all(|r| (3.0..=5.0).contains(r));
    verdict(ok, format!("halving ratios {}", fmt_list(&ratios)))
}

fn delta_sequence() -> Verdict {
    let nu = Order::new(2.0).unwrap();
    let phi = TestFunction::gaussian(2.0, 0.3).unwrap();
    let spec = QuadratureSpec::default();
    let errs: Vec<f64> = [1e-2, 1e-4, 1e-6]
        .iter()
        .map(|&xi| {
            let d = delta_smear(nu, limit_parameter(xi), &phi, &spec).unwrap();
            (d.error / d.target).abs()
        })
        .collect();
    let f0 = phase_function(Order::new(1.0).unwrap(), 0.0).unwrap();
    let ok = errs[2] <= 0.02 && errs.windows(2).all(|w| w[1] < w[0]) && f0 == 0.0;
    verdict(
        ok,
        format!(
            "nu=2, gaussian(2, 0.3): rel errors {} at xi=1e-2,1e-4,1e-6; f(0)={f0}",
            fmt_list(&errs)
        ),
    )
}

fn weak_limit() -> Verdict {
    let phi = TestFunction::gaussian(1.0, 0.2).unwrap();
    let xis = [1e-3, 1e-4, 1e-5, 1e-6];
    let r = weak_limit_test(1.0, &xis, &phi, &QuadratureSpec::default()).unwrap();
    let target = PI * PI / (2.0 * PI.sinh()) * phi.eval(1.0);
    let last = r.rows.last().unwrap();
    let final_rel = (last.smeared - target).abs() / target;
    let reflected = r
        .rows
        .iter()
        .find(|row| row.xi == 1e-4)
        .unwrap()
        .reflected_term
        / target;
    let ok = final_rel <= 0.05 && r.is_converging(0.1) && reflected < 0.01;
    verdict(
        ok,
        format!(
            "rel errors {} at xi=1e-3..1e-6; reflected/target at 1e-4 = {reflected:.2e}",
            fmt_list(
                &r.errors()
                    .iter()
                    .map(|e| e.abs() / target)
                    .collect::<Vec<_>>()
            )
        ),
    )
}

fn diagonal_growth() -> Verdict {
    let xi = 1e-8;
    let ratio =
        diagonal_limit(1.0, xi).unwrap() / (PI * PI / (2.0 * PI.sinh()) * limit_parameter(xi) / PI);
    verdict(
        (ratio - 1.0).abs() <= 0.1,
        format!("ratio {ratio:.4} at xi=1e-8"),
    )
}

fn cli_end_to_end() -> Verdict {
    let examples: [&[&str]; 3] = [
        &["eval", "--nu", "1", "--x", "1"],
        &["identity-check", "--nu", "1", "--nu2", "2", "--xi", "0.1"],
        &[
            "delta-test",
            "--nu",
            "1",
            "--xi",
            "1e-2,1e-4,1e-6",
            "--phi",
            "gaussian:1,0.2",
        ],
    ];
    let mut notes = Vec::new();
    for args in examples {
        let a = Command::new(BIN).args(args).output().unwrap();
        let b = Command::new(BIN).args(args).output().unwrap();
        if a.status.code() != Some(0) || b.status.code() != Some(0) {
            notes.push(format!("{} exit {:?}", args[0], a.status.code()));
        }
        if a.stdout != b.stdout || a.stdout.is_empty() {
            notes.push(format!("{} output differs between runs", args[0]));
        }
    }
    let detail = if notes.is_empty() {
        "3/3 examples exit 0 with identical reports".to_string()
    } else {
        notes.join("; ")
    };
    verdict(notes.is_empty(), detail)
}

type Criterion = (u32, &'static str, fn() -> Verdict);

fn fmt_list(v: &[f64]) -> String {
    v.iter()
        .map(|x| format!("{x:.3}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn main() {
    let criteria: [Criterion; 12] = [
        (1, "gamma modulus identity", gamma_identity),
        (2, "order symmetry and realness", symmetry),
        (3, "reference grid agreement", oracle_grid),
        (4, "large-x asymptotic form", large_x),
        (5, "small-x asymptotic scaling", small_x),
        (6, "ODE residual", ode),
        (7, "integration-by-parts identity", integration_by_parts),
        (8, "sinc-kernel form", sinc_form),
        (9, "delta-sequence lemma", delta_sequence),
        (10, "orthogonality weak limit", weak_limit),
        (11, "diagonal logarithmic growth", diagonal_growth),
        (12, "CLI end to end", cli_end_to_end),
    ];
    let start = std::time::Instant::now();
    let mut gating_failures = 0;
    let mut passed = 0;
    for (id, name, check) in criteria {
        let t = std::time::Instant::now();
        let v = check();
        let known = KNOWN_UNATTAINABLE.iter().find(|(k, _)| *k == id);
        let tag = if v.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] {id:>2} {name}: {} ({:.2?})", v.detail, t.elapsed());
        match (v.pass, known) {
            (true, _) => passed += 1,
            (false, Some((_, why))) => println!("          known: {why}"),
            (false, None) => gating_failures += 1,
        }
    }
    println!(
        "acceptance: {passed}/{} passed, {gating_failures} unexpected failure(s), {:.2?}",
        criteria.len(),
        start.elapsed()
    );
    if gating_failures > 0 {
        std::process::exit(1);
    }
}
