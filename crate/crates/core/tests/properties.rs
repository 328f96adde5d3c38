mod common;

use common::{derivative_scale, richardson_first};
use proptest::prelude::*;
use slet_core::closed_form;
use slet_core::potential::{
    effective_l, make_effective, PotentialPair, PowerTerm, RadialPotential,
};
use slet_core::{solve_state, Branch, QuantumNumbers, SletSolution};

fn exponent() -> impl Strategy<Value = f64> {
    prop_oneof![
        Just(-1.0),
        Just(0.0),
        Just(1.0),
        Just(2.0),
        Just(3.0),
        Just(0.5),
        Just(1.5),
        -1.0..4.0f64,
    ]
}

fn power_sum() -> impl Strategy<Value = Vec<PowerTerm>> {
    prop::collection::vec(
        (-2.0..2.0f64, exponent()).prop_map(|(c, p)| PowerTerm::new(c, p)),
        1..5,
    )
}

fn coulomb_plus(max_a: f64) -> impl Strategy<Value = RadialPotential> {
    (0.0..max_a, -0.3..0.3f64, 0.0..0.2f64).prop_map(|(a, c, k)| {
        RadialPotential::coulomb(a)
            + RadialPotential::constant(c)
            + RadialPotential::monomial(k, 1.0)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn effective_l_identity(l in 0u32..20, ac in -5.0..0.25f64) {
        let lp = effective_l(l, ac).unwrap();
        let lhs = lp * (lp + 1.0) + ac;
        let rhs = (l * (l + 1)) as f64;
        let scale = rhs.max(ac.abs()).max(lp.abs()).max(1.0);
        prop_assert!((lhs - rhs).abs() <= 4.0 * f64::EPSILON * scale, "{lhs} vs {rhs}");
    }

    #[test]
    fn analytic_derivatives_match_chained_differences(
        terms in power_sum(),
        r in 0.1..10.0f64,
    ) {
        let p = RadialPotential::new(terms.clone()).unwrap();
        for order in 1..=6 {
            let analytic = p.derivative(order, r).unwrap();
            let lower = |x: f64| p.derivative(order - 1, x).unwrap();
            let numeric = richardson_first(lower, r, 0.1 * r);
            let scale = derivative_scale(p.terms(), order, r);
            prop_assert!(
                (analytic - numeric).abs() <= 1e-6 * scale,
                "order {order} at r = {r}: {analytic} vs {numeric}"
            );
        }
        let first = richardson_first(|x| p.eval(x), r, 0.1 * r);
        let scale = derivative_scale(p.terms(), 1, r);
        prop_assert!((p.derivative(1, r).unwrap() - first).abs() <= 1e-6 * scale);
    }

    #[test]
    fn coulomb_squares_cancel_structurally(v in coulomb_plus(0.5), s in coulomb_plus(0.5), m in 0.1..5.0f64) {
        let eff = make_effective(&PotentialPair::new(m, v, s).unwrap());
        prop_assert_eq!(eff.gamma().coefficient(-2.0), 0.0);
        prop_assert!(eff.gamma().terms().iter().all(|t| t.exponent >= -1.0));
        prop_assert_eq!(eff.ac(), eff.a1() * eff.a1() - eff.a2() * eff.a2());
    }

    #[test]
    fn zero_scalar_leaves_reduced_vector_square(v in coulomb_plus(0.5), m in 0.1..5.0f64) {
        let eff = make_effective(&PotentialPair::new(m, v.clone(), RadialPotential::zero()).unwrap());
        let a1 = eff.a1();
        let reduced = &(&v * &v) + &RadialPotential::monomial(-a1 * a1, -2.0);
        let expected = -&reduced + RadialPotential::constant(m * m);
        prop_assert_eq!(eff.gamma(), &expected);
    }

    #[test]
    fn general_coulomb_solves_its_quadratic(
        a1 in 0.0..0.49f64,
        a2 in 0.0..2.0f64,
        n_r in 0u32..6,
        l in 0u32..4,
        m in 0.1..10.0f64,
    ) {
        for branch in [Branch::Particle, Branch::Antiparticle] {
            let g = closed_form::general_coulomb(m, a1, a2, n_r, l, branch).unwrap();
            let e = g.energy;
            let lhs = e * e - m * m;
            let rhs = -(2.0 * m * a2 + 2.0 * e * a1).powi(2) / (2.0 * g.n_tilde).powi(2);
            prop_assert!((lhs - rhs).abs() <= 1e-13 * m * m, "{lhs} vs {rhs}");
            prop_assert!(e.abs() <= m * (1.0 + 1e-15));
        }
    }

    #[test]
    fn general_coulomb_reductions(a in 0.0..0.49f64, n_r in 0u32..6, l in 0u32..4, m in 0.1..10.0f64) {
        let close = |x: f64, y: f64| (x - y).abs() <= 1e-14 * x.abs().max(y.abs()).max(m);
        let g = closed_form::general_coulomb(m, a, 0.0, n_r, l, Branch::Particle).unwrap();
        let v = closed_form::vector_coulomb(m, a, n_r, l).unwrap();
        prop_assert!(close(g.energy, v.energy), "{} vs {}", g.energy, v.energy);
        for branch in [Branch::Particle, Branch::Antiparticle] {
            let g = closed_form::general_coulomb(m, 0.0, a, n_r, l, branch).unwrap();
            let s = closed_form::scalar_coulomb(m, a, n_r, l, branch).unwrap();
            prop_assert!(close(g.energy, s.energy), "{} vs {}", g.energy, s.energy);
        }
        let g = closed_form::general_coulomb(m, a, a, n_r, l, Branch::Particle).unwrap();
        let e = closed_form::equal_mix(m, a, n_r, l).unwrap();
        prop_assert!(close(g.energy, e.energy), "{} vs {}", g.energy, e.energy);
    }

    #[test]
    fn vector_coulomb_levels_rise_with_n_r(a in 0.01..0.49f64, l in 0u32..3) {
        let energies: Vec<f64> = (0..=5)
            .map(|n_r| closed_form::vector_coulomb(1.0, a, n_r, l).unwrap().energy)
            .collect();
        prop_assert!(energies.windows(2).all(|w| w[0] < w[1]), "{energies:?}");
    }

    #[test]
    fn solution_round_trips_through_json(a1 in 0.05..0.45f64, k in 0.0..0.2f64, n_r in 0u32..2, l in 0u32..2) {
        let pair = PotentialPair::new(
            1.0,
            RadialPotential::coulomb(a1),
            RadialPotential::monomial(k, 1.0),
        ).unwrap();
        let solution = solve_state(&pair, QuantumNumbers::new(n_r, l), Branch::Particle).unwrap();
        let text = serde_json::to_string(&solution).unwrap();
        let back: SletSolution = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, solution);
    }
}
