use slet_core::closed_form;
use slet_core::golden;
use slet_core::oracle::{
    default_bracket, find_bound_state, find_bound_state_with, OracleSettings, DEFAULT_LOG_STEP,
};
use slet_core::potential::{make_effective, PotentialPair, RadialPotential};
use slet_core::{solve_state, Branch, EffectiveProblem, QuantumNumbers};

fn effective(v: RadialPotential, s: RadialPotential) -> EffectiveProblem {
    make_effective(&PotentialPair::new(1.0, v, s).unwrap())
}

fn oracle_energy(eff: &EffectiveProblem, qn: QuantumNumbers, branch: Branch) -> f64 {
    let bracket = default_bracket(eff, qn, branch).unwrap();
    let result = find_bound_state(eff, qn, bracket).unwrap();
    assert_eq!(result.nodes, qn.n_r as usize);
    assert!(result.bracket.0 < result.energy && result.energy < result.bracket.1);
    result.energy
}

#[test]
fn reproduces_closed_forms_across_couplings() {
    for a in [0.1, 0.25, 0.4, 0.49] {
        for (n_r, l) in [(0, 0), (1, 0), (0, 1), (2, 1)] {
            let qn = QuantumNumbers::new(n_r, l);
            let cases = [
                (
                    effective(RadialPotential::coulomb(a), RadialPotential::zero()),
                    closed_form::vector_coulomb(1.0, a, n_r, l),
                ),
                (
                    effective(RadialPotential::zero(), RadialPotential::coulomb(a)),
                    closed_form::scalar_coulomb(1.0, a, n_r, l, Branch::Particle),
                ),
                (
                    effective(RadialPotential::coulomb(a), RadialPotential::coulomb(a)),
                    closed_form::equal_mix(1.0, a, n_r, l),
                ),
            ];
            for (eff, exact) in cases {
                let exact = exact.unwrap().energy;
                let got = oracle_energy(&eff, qn, Branch::Particle);
                assert!(
                    (got - exact).abs() <= 1e-8 * exact.abs(),
                    "{a} {n_r} {l}: {got} vs {exact}"
                );
            }
        }
    }
}

#[test]
fn scalar_linear_tracks_the_expansion() {
    for table in [3, 4] {
        for row in golden::table(table).filter(|r| r.k > 0.0) {
            let pair = row.pair().unwrap();
            let eff = make_effective(&pair);
            let exact = oracle_energy(&eff, QuantumNumbers::ground(), Branch::Particle);
            let slet = solve_state(&pair, QuantumNumbers::ground(), Branch::Particle)
                .unwrap()
                .energy;
            let allowed = (2e-3 * exact.abs()).max(row.reference.hi - row.reference.lo);
            assert!(
                (slet - exact).abs() <= allowed,
                "{} {}: {slet} vs {exact}",
                row.a1,
                row.k
            );
        }
    }
}

#[test]
fn excited_confined_states_have_their_nodes() {
    let eff = effective(
        RadialPotential::coulomb(0.3),
        RadialPotential::monomial(0.1, 1.0),
    );
    let mut previous = f64::NEG_INFINITY;
    for n_r in 0..4 {
        let energy = oracle_energy(&eff, QuantumNumbers::new(n_r, 0), Branch::Particle);
        assert!(energy > previous);
        previous = energy;
    }
}

#[test]
fn grid_refinement_is_converged() {
    let problems = [
        effective(
            RadialPotential::coulomb(0.5),
            RadialPotential::monomial(0.2, 1.0),
        ),
        effective(
            RadialPotential::coulomb(0.2),
            RadialPotential::monomial(0.01, 1.0),
        ),
        effective(RadialPotential::coulomb(0.45), RadialPotential::zero()),
    ];
    let qn = QuantumNumbers::ground();
    for eff in &problems {
        let bracket = default_bracket(eff, qn, Branch::Particle).unwrap();
        let coarse = find_bound_state(eff, qn, bracket).unwrap();
        let fine = find_bound_state_with(
            eff,
            qn,
            bracket,
            &OracleSettings {
                log_step: DEFAULT_LOG_STEP / 2.0,
            },
        )
        .unwrap();
        assert!(
            (coarse.energy - fine.energy).abs() <= 1e-8,
            "{} {}",
            coarse.energy,
            fine.energy
        );
        assert!(fine.grid.n_points > coarse.grid.n_points);
    }
}

#[test]
fn vector_linear_rows_are_rejected() {
    for row in golden::table(1)
        .chain(golden::table(2))
        .filter(|r| r.k > 0.0)
    {
        let eff = make_effective(&row.pair().unwrap());
        let err = find_bound_state(&eff, QuantumNumbers::ground(), (0.5, 1.5)).unwrap_err();
        assert_eq!(err.kind(), "NotConfining");
        assert_eq!(
            default_bracket(&eff, QuantumNumbers::ground(), Branch::Particle)
                .unwrap_err()
                .kind(),
            "NotConfining"
        );
    }
}
