use proptest::prelude::*;

use qmorse::numerics::special::{erf, exp_scaled_erfi_integral};
use qmorse::numerics::{differentiate, DiffConfig};
use qmorse::{
    beta_from_kelvin, builtin_registry, em_summand, kelvin_from_beta, thermo_point, z_direct, DeformedSpectrum,
    Differentiation, Molecule, PartitionMethod, Registry,
};

fn molecule_name() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["H2", "HCl", "LiH", "CO"])
}

fn spectrum(name: &str, q: f64) -> DeformedSpectrum {
    DeformedSpectrum::new(builtin_registry().get(name).unwrap(), q).unwrap()
}

#[test]
fn erf_is_odd_on_log_grid() {
    for i in 0..=400 {
        let x = 10f64.powf(-6.0 + i as f64 * (6f64.log10() + 6.0) / 400.0);
        assert!((erf(-x) + erf(x)).abs() <= 1e-15, "x = {x}");
    }
}

#[test]
fn q_one_is_the_plain_morse_ladder() {
    for m in builtin_registry().iter() {
        let s = DeformedSpectrum::new(m, 1.0).unwrap();
        // E_n = -V0 + ħω(n+½) - ħω²(n+½)²/(4V0), with ħω = 2V0/μ at q = 1
        let hw = 2.0 * m.v0() / s.mu();
        for (n, e) in s.levels().iter().enumerate() {
            let k = n as f64 + 0.5;
            let morse = -m.v0() + hw * k - hw * hw * k * k / (4.0 * m.v0());
            assert!((e - morse).abs() <= 1e-12 * m.v0(), "{} n={n}", m.name());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn erfi_integral_is_additive(c in 0.01f64..40.0, a in 0.0f64..1.0, w1 in 0.0f64..1.0, w2 in 0.0f64..1.0) {
        let b = a + w1;
        let d = b + w2;
        let whole = exp_scaled_erfi_integral(c, a, d).unwrap();
        let parts = exp_scaled_erfi_integral(c, a, b).unwrap().add(exp_scaled_erfi_integral(c, b, d).unwrap());
        let scale = whole.log_scale;
        let (x, y) = (whole.rescaled(scale).mantissa, parts.rescaled(scale).mantissa);
        prop_assert!((x - y).abs() <= 1e-12 * x.abs().max(1e-300), "{x} {y}");
    }

    #[test]
    fn differentiation_is_exact_on_quadratics(a in -5.0f64..5.0, b in -5.0f64..5.0, c in -5.0f64..5.0, x in -3.0f64..3.0) {
        let f = |t: f64| a * t * t + b * t + c;
        let cfg = DiffConfig::default();
        let d1 = differentiate(f, x, 1, &cfg).unwrap();
        let d2 = differentiate(f, x, 2, &cfg).unwrap();
        let tol = 1e-6 * (1.0 + a.abs() + b.abs() + c.abs());
        prop_assert!((d1 - (2.0 * a * x + b)).abs() <= tol);
        prop_assert!((d2 - 2.0 * a).abs() <= 1e3 * tol);
    }

    #[test]
    fn summand_matches_direct_terms(name in molecule_name(), q in 0.3f64..=1.0, beta in 0.01f64..50.0) {
        let s = spectrum(name, q);
        if let Ok(de) = s.excitation_energies() {
            for (n, d) in de.iter().enumerate() {
                let direct = (-beta * d).exp();
                let em = em_summand(n as f64, &s, beta);
                prop_assert!((em - direct).abs() <= 1e-14 * direct.max(f64::MIN_POSITIVE), "n={} {} {}", n, em, direct);
            }
        }
    }

    #[test]
    fn z_decreases_with_beta(name in molecule_name(), q in 0.3f64..=1.0, b1 in 0.01f64..50.0, b2 in 0.01f64..50.0) {
        let s = spectrum(name, q);
        let (lo, hi) = if b1 < b2 { (b1, b2) } else { (b2, b1) };
        prop_assume!(hi > lo);
        let z_lo = z_direct(&s, lo).unwrap().z;
        let z_hi = z_direct(&s, hi).unwrap().z;
        prop_assert!(z_hi <= z_lo);
        prop_assert!(z_hi >= 1.0);
    }

    #[test]
    fn z_is_continuous_in_q(name in molecule_name(), beta in 0.1f64..20.0) {
        let z1 = z_direct(&spectrum(name, 1.0), beta).unwrap().z;
        let mut previous = f64::INFINITY;
        for k in 4..=9 {
            let eps = 10f64.powi(-k);
            let gap = (z_direct(&spectrum(name, 1.0 - eps), beta).unwrap().z - z1).abs();
            // smaller steps in q never move Z further
            prop_assert!(gap <= previous || gap < 1e-12);
            previous = gap;
        }
        prop_assert!(previous < 1e-6);
    }

    #[test]
    fn nu_is_invariant_under_depth_and_range_rescaling(m in 0.5f64..30.0, v0 in 0.5f64..12.0, alpha in 0.5f64..3.0) {
        let a = DeformedSpectrum::new(&Molecule::new("X", m, v0, alpha).unwrap(), 1.0).unwrap();
        let b = DeformedSpectrum::new(&Molecule::new("X", m, 4.0 * v0, 2.0 * alpha).unwrap(), 1.0).unwrap();
        prop_assert!((a.nu() - b.nu()).abs() <= 1e-12 * a.nu());
    }

    #[test]
    fn registry_csv_round_trips(rows in prop::collection::vec((0.1f64..300.0, 0.01f64..20.0, 0.05f64..5.0), 1..6)) {
        let molecules = rows
            .iter()
            .enumerate()
            .map(|(i, &(m, v, a))| Molecule::new(format!("M{i}"), m, v, a).unwrap());
        let registry = Registry::from_molecules(molecules).unwrap();
        let back = Registry::parse_csv(&registry.to_csv()).unwrap();
        prop_assert_eq!(back, registry);
    }

    #[test]
    fn temperature_round_trips(beta in 1e-4f64..1e4) {
        let back = beta_from_kelvin(kelvin_from_beta(beta).unwrap()).unwrap();
        prop_assert!((back - beta).abs() <= 1e-14 * beta);
    }

    #[test]
    fn entropy_is_energy_minus_free_energy(name in molecule_name(), q in 0.3f64..=1.0, beta in 0.05f64..50.0) {
        let s = spectrum(name, q);
        let p = thermo_point(&s, beta, &PartitionMethod::direct(), Differentiation::Analytic).unwrap();
        let rebuilt = beta * (p.internal_energy - p.free_energy);
        prop_assert!((p.entropy - rebuilt).abs() <= 1e-10 * p.entropy.abs().max(1.0));
        prop_assert!(p.heat_capacity >= 0.0);
    }
}
