use proptest::prelude::*;
use soler::{assemble, build_grid, compute_spectrum, solve_profile, Channel, ShootingOptions, C64};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // d/dr e^{-a r} = -a e^{-a r}, int_0^inf r^2 e^{-a r} dr = 2 / a^3
    #[test]
    fn grid_is_spectrally_accurate(a in 0.3f64..2.0, n in 64usize..96, l in 2.0f64..12.0) {
        let g = build_grid(n, l).unwrap();
        let f: Vec<f64> = g.nodes.iter().map(|r| (-a * r).exp()).collect();
        for (i, r) in g.nodes.iter().enumerate() {
            let d: f64 = (0..n).map(|j| g.diff[(i, j)] * f[j]).sum();
            prop_assert!((d + a * f[i]).abs() < 1e-7, "r = {r}");
        }
        let w = g.radial_weights();
        let total: f64 = w.iter().zip(&f).map(|(w, f)| w * f).sum();
        prop_assert!((total * a.powi(3) / 2.0 - 1.0).abs() < 1e-8);
    }

    #[test]
    fn ground_state_is_nodeless_and_decaying(omega in 0.15f64..0.98) {
        let p = solve_profile(omega, 1.0, &ShootingOptions::default()).unwrap();
        prop_assert!(p.max_residual() < 1e-6);
        prop_assert!((p.kappa - (1.0 - omega * omega).sqrt()).abs() < 1e-12);
        prop_assert!(p.samples.iter().all(|s| s.v > 0.0));
        prop_assert!(p.samples.iter().skip(1).all(|s| s.u > 0.0));
        let far = p.samples.last().unwrap();
        prop_assert!(far.v < 1e-3 * p.v_at_zero);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    // a real operator: eigenvalues come in pairs lambda, -conj(lambda)
    #[test]
    fn spectrum_closed_under_reflection(omega in 0.2f64..0.95, ell in 0u32..3, m_pick in 0u32..3) {
        let m = (m_pick.min(ell)) as i32;
        let channel = Channel::from_ell_m(ell, m, 0.0).unwrap();
        let p = solve_profile(omega, 1.0, &ShootingOptions::default()).unwrap();
        let g = build_grid(32, 10.0).unwrap();
        let op = assemble(&p, &g, channel).unwrap();
        let spec = compute_spectrum(&op, false).unwrap().eigenvalues;
        prop_assert_eq!(spec.len(), op.size());
        for l in &spec {
            let mirror = C64::new(-l.re, l.im);
            let d = spec.iter().map(|k| (k - mirror).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(d <= 1e-6 * (1.0 + l.norm()), "{l} has no partner");
        }
    }
}
