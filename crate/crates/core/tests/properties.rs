use proptest::prelude::*;
use recoil_core::quadrature::QuadratureSpec;
use recoil_core::*;

fn dressed(n_alpha: f64, gamma0: f64, recoil_scale: f64, omega_m: f64) -> Analysis {
    let base = ModelParams::new(omega_m, gamma0, recoil_scale, 0.0).unwrap();
    let p = base
        .with_density(density_for_n_alpha(&base, n_alpha).unwrap())
        .unwrap();
    Analysis::new(&p, LineShape::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polarizability_increases_toward_resonance(
        omega_m in 20.0f64..500.0,
        omega_k in 0.2f64..3.0,
        recoil in 0.0f64..1e-3,
        a in 0.01f64..0.98,
        b in 0.01f64..0.98,
    ) {
        let p = ModelParams::new(omega_m, 1e-6, recoil, 0.0).unwrap();
        let top = omega_m + p.recoil_frequency(omega_k);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assume!(hi - lo > 1e-6);
        let alpha_lo = polarizability(lo * top, omega_k, &p).unwrap();
        let alpha_hi = polarizability(hi * top, omega_k, &p).unwrap();
        prop_assert!(alpha_lo > 0.0);
        prop_assert!(alpha_hi > alpha_lo);
    }

    #[test]
    fn index_affine_in_density(alpha in 0.0f64..1e-4, density in 0.0f64..1e3) {
        let p0 = ModelParams::new(100.0, 1e-6, 0.0, 0.0).unwrap();
        prop_assert_eq!(refractive_index(&p0, alpha).unwrap(), 1.0);
        let p1 = p0.with_density(density).unwrap();
        let p2 = p0.with_density(2.0 * density).unwrap();
        let n1 = refractive_index(&p1, alpha).unwrap();
        let n2 = refractive_index(&p2, alpha).unwrap();
        prop_assert!(((n2 - 1.0) - 2.0 * (n1 - 1.0)).abs() <= 1e-15);
    }

    #[test]
    fn pole_satisfies_its_equation(
        omega_m in 30.0f64..500.0,
        density in 0.0f64..2e5,
        omega_k in 0.3f64..3.0,
        recoil in 0.0f64..1e-4,
    ) {
        let p = ModelParams::new(omega_m, 1e-6, recoil, density).unwrap();
        let r = self_consistent_pole(omega_k, &p).unwrap();
        let alpha = polarizability(r.pole_energy, omega_k, &p).unwrap();
        let mapped = p.recoil_frequency(omega_k) + (1.0 - 0.5 * density * alpha) * omega_k;
        prop_assert!((mapped - r.pole_energy).abs() <= 1e-12 * r.pole_energy.abs());
        prop_assert_eq!(r.n, 1.0 + 0.5 * density * r.alpha);
        prop_assert!(r.iterations <= 20);
        prop_assert!(r.alpha > 0.0);
    }

    #[test]
    fn density_is_non_negative(
        n_alpha in 0.0f64..0.1,
        gamma0 in 1e-8f64..1e-3,
        offset in -50.0f64..50.0,
    ) {
        let a = dressed(n_alpha, gamma0, 1e-9, 100.0);
        let w = (a.density.center + offset * a.density.width).max(0.0);
        prop_assert!(a.density.rho(w) >= 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ledger_closes(
        n_alpha in 0.0f64..0.05,
        omega_m in 50.0f64..1000.0,
        gamma0 in 1e-8f64..1e-5,
        recoil in 0.0f64..1e-9,
    ) {
        let a = dressed(n_alpha, gamma0, recoil, omega_m);
        let l = a.ledger(&QuadratureSpec::default()).unwrap();
        let bound = (n_alpha * n_alpha).max(10.0 * n_alpha / omega_m).max(10.0 * gamma0);
        prop_assert!((l.total.quadrature - 1.0).abs() <= bound, "{:?} bound {}", l, bound);
        prop_assert_eq!(
            l.total.quadrature,
            l.field.quadrature + l.medium.quadrature + l.interaction.quadrature
        );
    }

    #[test]
    fn probability_conserved_to_order_n_alpha(
        n_alpha in 0.0f64..0.05,
        omega_m in 50.0f64..1000.0,
        gamma0 in 1e-8f64..1e-5,
    ) {
        let a = dressed(n_alpha, gamma0, 0.0, omega_m);
        let q = QuadratureSpec::default();
        let photons = a.normalization(&q).unwrap().quadrature;
        let medium = a.excitation(&q).unwrap();
        let k = 10.0 * n_alpha * a.density.center / omega_m;
        let total = photons + medium.total();
        // quadrature noise of the photon normalization is O(10 γ₀)
        prop_assert!((total - 1.0).abs() <= k + 10.0 * gamma0, "{}", total);
        prop_assert!(medium.rotating >= medium.anti_rotating);
    }

    #[test]
    fn recoil_follows_index_squared(
        n_alpha in 0.0f64..0.05,
        gamma0 in 1e-8f64..1e-5,
        recoil in 0.0f64..1e-6,
    ) {
        let a = dressed(n_alpha, gamma0, recoil, 100.0);
        let r = a.recoil(&QuadratureSpec::default()).unwrap();
        let n = a.response.n;
        prop_assert!((r.stats.recoil_ratio - n * n).abs() <= 100.0 * gamma0 + 10.0 * recoil);
    }

    #[test]
    fn oracle_consistency(
        n_alpha in 0.0f64..0.05,
        gamma0 in 1e-8f64..1e-5,
        power in 0u32..=2,
    ) {
        let a = dressed(n_alpha, gamma0, 1e-9, 100.0);
        let q = QuadratureSpec::default();
        let r = observables::moment(&a.density, power, &q).unwrap();
        let bound = 10.0 * (q.rel_tol * r.closed_form.abs()).max(q.tail_bound());
        prop_assert!(r.abs_error <= bound);
    }

    #[test]
    fn window_doubling_is_stable(
        n_alpha in 0.0f64..0.05,
        gamma0 in 1e-8f64..1e-5,
        power in 0u32..=2,
    ) {
        let a = dressed(n_alpha, gamma0, 1e-9, 100.0);
        let q = QuadratureSpec::default();
        let wide = QuadratureSpec { window_half_width: 2.0 * q.window_half_width, ..q };
        let narrow = observables::moment(&a.density, power, &q).unwrap().quadrature;
        let doubled = observables::moment(&a.density, power, &wide).unwrap().quadrature;
        prop_assert!((narrow - doubled).abs() <= 4.0 * q.tail_bound());
    }
}

#[test]
fn mean_frequency_increases_with_n_alpha() {
    let q = QuadratureSpec::default();
    let mut last = 0.0;
    for i in 0..=10 {
        let x = 0.01 * i as f64;
        let r = dressed(x, 1e-6, 1e-6, 100.0).mean_frequency(&q).unwrap();
        assert!(r.quadrature > last);
        assert!(r.closed_form > last);
        last = r.closed_form;
    }
}

#[test]
fn vacuum_limit_is_continuous() {
    let q = QuadratureSpec::default();
    let vac = dressed(0.0, 1e-6, 1e-9, 100.0);
    let vac_ledger = vac.ledger(&q).unwrap();
    for x in [1e-6, 1e-9, 1e-12] {
        let a = dressed(x, 1e-6, 1e-9, 100.0);
        assert!((a.density.center - vac.density.center).abs() <= x);
        let l = a.ledger(&q).unwrap();
        assert!((l.field.closed_form - vac_ledger.field.closed_form).abs() <= x);
        assert!((l.medium.quadrature - vac_ledger.medium.quadrature).abs() <= x);
        assert!((l.interaction.quadrature - vac_ledger.interaction.quadrature).abs() <= 2.0 * x);
    }
}

#[test]
fn reports_are_bit_reproducible() {
    let q = QuadratureSpec::default();
    let a = dressed(0.02, 1e-6, 1e-9, 100.0);
    let b = dressed(0.02, 1e-6, 1e-9, 100.0);
    assert_eq!(a, b);
    assert_eq!(a.ledger(&q).unwrap(), b.ledger(&q).unwrap());
    assert_eq!(a.recoil(&q).unwrap(), b.recoil(&q).unwrap());
    let handles: Vec<_> = (0..4)
        .map(|_| {
            std::thread::spawn(move || dressed(0.02, 1e-6, 1e-9, 100.0).normalization(&q).unwrap())
        })
        .collect();
    let first = a.normalization(&q).unwrap();
    for h in handles {
        assert_eq!(h.join().unwrap(), first);
    }
}
