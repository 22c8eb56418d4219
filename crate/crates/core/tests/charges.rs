use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex;
use proptest::prelude::*;
use soler::charges::{charge_table, profile_charge};
use soler::{apply_su11, charges, energy, make_bifrequency, one_frequency, solve_profile, RadialQuadrature, ShootingOptions, SolitonProfile, SpinorField, Su11};

type C64 = Complex<f64>;

fn profile(omega: f64) -> Arc<SolitonProfile> {
    Arc::new(solve_profile(omega, 1.0, &ShootingOptions::default()).unwrap())
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton on P_n.
fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

/// Brute-force `(int psi^dag psi dOmega, int i psi^T gamma^2 psi dOmega)` at radius `r`.
fn sphere_densities(f: &SpinorField, r: f64, t: f64) -> (f64, C64) {
    let gl = gauss_legendre(12);
    let nphi = 16;
    let i = C64::i();
    let (mut q, mut s) = (0.0, C64::new(0.0, 0.0));
    for &(ct, w) in &gl {
        let st = (1.0 - ct * ct).sqrt();
        for k in 0..nphi {
            let phi = 2.0 * PI * k as f64 / nphi as f64;
            let dir = [st * phi.cos(), st * phi.sin(), ct];
            let p = f.value(r, dir, t);
            let dw = w * 2.0 * PI / nphi as f64;
            q += dw * p.iter().map(|z| z.norm_sqr()).sum::<f64>();
            // psi^T gamma^2 psi = 2 U^T sigma_2 L, U^T sigma_2 L = -i U1 L2 + i U2 L1
            let ut_s2_l = -i * p[0] * p[3] + i * p[1] * p[2];
            s += dw * i * 2.0 * ut_s2_l;
        }
    }
    (q, s)
}

fn norm_sq(s: &[C64; 2]) -> f64 {
    s[0].norm_sqr() + s[1].norm_sqr()
}

fn random_g(s: f64, a: f64, b: f64) -> Su11 {
    Su11::from_angles(s, a, b)
}

#[test]
fn closed_forms_match_sphere_quadrature() {
    let p = profile(0.8);
    let quad = RadialQuadrature::default();
    let g = random_g(0.6, 0.4, -1.3);
    let eta = [C64::new(0.1, 0.5), C64::new(-0.2, 0.3)];
    let xi = [C64::new(0.3, 0.2), C64::new(1.1, -0.4)];
    let k = ((1.0 + norm_sq(&eta)) / norm_sq(&xi)).sqrt();
    let base = make_bifrequency(p.clone(), xi.map(|z| z * k), eta).unwrap();
    let f = apply_su11(&g, &base);
    let (q, sigma) = charges(&f, &quad);
    let q0 = profile_charge(&p, &quad);
    for t in [0.0, 0.7, 2.3] {
        for r in [0.2, 1.0, 2.5] {
            let (v, u) = p.eval(r);
            let (dq, ds) = sphere_densities(&f, r, t);
            let radial = 4.0 * PI * (v * v + u * u);
            assert!((dq - q / q0 * radial).abs() < 1e-10 * (1.0 + dq.abs()), "Q density at r={r} t={t}");
            assert!((ds - sigma / q0 * radial).norm() < 1e-10 * (1.0 + ds.norm()), "Sigma density at r={r} t={t}");
        }
    }
}

#[test]
fn bifrequency_density_is_time_independent() {
    let p = profile(0.7);
    let s = 0.8f64;
    let f = make_bifrequency(p.clone(), [C64::new(s.cosh(), 0.0), C64::new(0.0, 0.0)], [C64::new(s.sinh(), 0.0), C64::new(0.0, 0.0)]).unwrap();
    for r in [0.1, 0.9, 3.0] {
        let (v, u) = p.eval(r);
        for t in [0.0, 0.4, 1.9] {
            for dir in [[0.0, 0.0, 1.0], [0.6, 0.0, 0.8], [0.0, -1.0, 0.0]] {
                let d = f.scalar_density(r, dir, t);
                assert!((d - (v * v - u * u)).abs() < 1e-12);
            }
        }
    }
    assert!(f.is_attracting());
}

#[test]
fn bifrequency_solves_the_equation() {
    let p = profile(0.6);
    let f = apply_su11(&random_g(0.5, 0.1, 0.9), &one_frequency(p));
    let quad = RadialQuadrature::new(120, 10.0).unwrap();
    assert!(f.nld_residual(quad.nodes()) < 1e-5);
}

#[test]
fn orbit_of_one_frequency_has_orthogonal_spinors() {
    let f = apply_su11(&random_g(1.1, 0.3, 2.0), &one_frequency(profile(0.9)));
    let (x2, e2) = (norm_sq(&f.xi), norm_sq(&f.eta));
    let inner = f.xi[0].conj() * f.eta[0] + f.xi[1].conj() * f.eta[1];
    assert!((x2 - e2 - 1.0).abs() < 1e-12);
    assert!(inner.norm() < 1e-12);
}

#[test]
fn quadrature_agrees_with_trapezoid_on_profile_samples() {
    for omega in [0.5, 0.9, 0.98] {
        let p = profile(omega);
        let q = profile_charge(&p, &RadialQuadrature::default());
        // trapezoid on the solver's samples, each step split in 16
        let g = |r: f64| {
            let (v, u) = p.eval(r);
            (v * v + u * u) * r * r
        };
        let mut trap = 0.0;
        for w in p.samples.windows(2) {
            let h = (w[1].r - w[0].r) / 16.0;
            trap += (0..16).map(|k| 0.5 * h * (g(w[0].r + k as f64 * h) + g(w[0].r + (k + 1) as f64 * h))).sum::<f64>();
        }
        trap *= 4.0 * PI;
        assert!(((q - trap) / q).abs() < 1e-6, "omega={omega} q={q} trap={trap}");
    }
}

#[test]
fn energy_minimum_near_0936() {
    let quad = RadialQuadrature::default();
    let omegas: Vec<f64> = (0..=49).map(|k| 0.5 + 0.01 * k as f64).collect();
    let es: Vec<f64> = omegas.iter().map(|&w| energy(&profile(w), &quad)).collect();
    let (k, _) = es.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)).unwrap();
    assert!(k > 0 && k + 1 < es.len());
    // vertex of the parabola through the three lowest samples
    let (e0, e1, e2) = (es[k - 1], es[k], es[k + 1]);
    let w = omegas[k] + 0.01 * 0.5 * (e0 - e2) / (e0 - 2.0 * e1 + e2);
    assert!((w - 0.936).abs() < 0.01, "minimum at {w}");
}

#[test]
fn charge_and_energy_diverge_like_inverse_root() {
    // the leading power only dominates close to the threshold
    let quad = RadialQuadrature::default();
    let ws = [0.998, 0.999, 0.9995];
    let rows = charge_table(&ws.map(profile), &Su11::identity(), &quad);
    let fit = |ys: Vec<f64>| {
        let xs: Vec<f64> = ws.iter().map(|w| (1.0 - w).ln()).collect();
        let ys: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
        let n = xs.len() as f64;
        let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
        sxy / sxx
    };
    let eq = fit(rows.iter().map(|r| r.q).collect());
    let ee = fit(rows.iter().map(|r| r.energy).collect());
    assert!((eq + 0.5).abs() < 0.1, "Q exponent {eq}");
    assert!((ee + 0.5).abs() < 0.1, "E exponent {ee}");
}

#[test]
fn energy_matches_virial_form() {
    // on solutions, E = omega Q + 1/2 int (v^2 - u^2)^2
    let quad = RadialQuadrature::default();
    let p = profile(0.85);
    let q = profile_charge(&p, &quad);
    let extra = quad.volume(|r| {
        let (v, u) = p.eval(r);
        0.5 * (v * v - u * u).powi(2)
    });
    let e = energy(&p, &quad);
    assert!((e - (0.85 * q + extra)).abs() < 1e-6 * e.abs());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn su11_laws(s1 in -1.5f64..1.5, a1 in -3.2f64..3.2, b1 in -3.2f64..3.2,
                 s2 in -1.5f64..1.5, a2 in -3.2f64..3.2, b2 in -3.2f64..3.2) {
        let p = SHARED.with(|p| p.clone());
        let quad = QUAD.with(|q| q.clone());
        let f = apply_su11(&random_g(s2, a2, b2), &one_frequency(p));
        let g = random_g(s1, a1, b1);
        let (q, sigma) = charges(&f, &quad);
        let gf = apply_su11(&g, &f);
        let (gq, gs) = charges(&gf, &quad);
        let inv = q * q - sigma.norm_sqr();
        prop_assert!(((gq * gq - gs.norm_sqr()) - inv).abs() <= 1e-8 * inv.abs().max(gq * gq));
        let law_q = (g.a.norm_sqr() + g.b.norm_sqr()) * q + 2.0 * (g.a * g.b.conj() * sigma).re;
        prop_assert!((gq - law_q).abs() <= 1e-10 * gq);
        let law_s = g.a * g.a * sigma + 2.0 * g.a * g.b * q + g.b * g.b * sigma.conj();
        prop_assert!((gs - law_s).norm() <= 1e-10 * gq);
        prop_assert!(gq > 0.0);
    }
}

thread_local! {
    static SHARED: Arc<SolitonProfile> = profile(0.9);
    static QUAD: RadialQuadrature = RadialQuadrature::new(200, 10.0).unwrap();
}
