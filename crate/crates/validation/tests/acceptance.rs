//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{derivative_scale, richardson_first};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use slet_core::closed_form;
use slet_core::golden::{self, GoldenRow};
use slet_core::oracle::{default_bracket, find_bound_state};
use slet_core::potential::{make_effective, PotentialPair, PowerTerm, RadialPotential};
use slet_core::{solve_state, Branch, QuantumNumbers, SletSolution};

const COUPLINGS: [f64; 5] = [0.1, 0.2, 0.3, 0.4, 0.45];
const SEED: u64 = 0x5eed_c0de;

struct Report {
    failures: usize,
}

impl Report {
    fn record(&mut self, id: u32, name: &str, ok: bool, elapsed: Duration, detail: String) {
        if !ok {
            self.failures += 1;
        }
        let status = if ok { "PASS" } else { "FAIL" };
        println!(
            "{status} [{id}] {name} ({:.3} s): {detail}",
            elapsed.as_secs_f64()
        );
    }
}

/// Collects E1 magnitudes from every solve so criterion 7 can reuse them.
#[derive(Default)]
struct E1Log {
    worst: f64,
    count: usize,
}

impl E1Log {
    fn push(&mut self, s: &SletSolution) {
        self.worst = self.worst.max(s.e1.abs() / s.e0.abs().max(1.0));
        self.count += 1;
    }
}

fn coulomb_pair(a1: f64, a2: f64) -> PotentialPair {
    PotentialPair::new(
        1.0,
        RadialPotential::coulomb(a1),
        RadialPotential::coulomb(a2),
    )
    .unwrap()
}

fn pure_cases(a: f64, n_r: u32, l: u32) -> [(PotentialPair, f64); 3] {
    [
        (
            coulomb_pair(a, 0.0),
            closed_form::vector_coulomb(1.0, a, n_r, l).unwrap().energy,
        ),
        (
            coulomb_pair(0.0, a),
            closed_form::scalar_coulomb(1.0, a, n_r, l, Branch::Particle)
                .unwrap()
                .energy,
        ),
        (
            coulomb_pair(a, a),
            closed_form::equal_mix(1.0, a, n_r, l).unwrap().energy,
        ),
    ]
}

// Printed table values, compared as printed.
#[allow(clippy::approx_constant)]
fn closed_form_regression(report: &mut Report) {
    let cases = [
        (0.2, 0.978_906_312_93),
        (0.3, 0.948_683_298_1),
        (0.4, 0.894_427_191),
        (0.5, 0.707_106_781_19),
    ];
    let start = Instant::now();
    let mut worst_dev = 0.0f64;
    let mut slowest = Duration::ZERO;
    for (a1, expected) in cases {
        let t = Instant::now();
        let energy = closed_form::vector_coulomb(1.0, a1, 0, 0).map(|r| r.energy);
        slowest = slowest.max(t.elapsed());
        worst_dev = worst_dev.max(energy.map_or(f64::INFINITY, |e| (e - expected).abs()));
    }
    let ok = worst_dev <= 1e-10 && slowest < Duration::from_millis(1);
    report.record(
        1,
        "vector Coulomb closed form",
        ok,
        start.elapsed(),
        format!(
            "max |dE| = {worst_dev:.2e}, slowest call {} ns",
            slowest.as_nanos()
        ),
    );
}

fn collapse(report: &mut Report, e1: &mut E1Log) {
    let start = Instant::now();
    let mut worst_rel = 0.0f64;
    let mut worst_higher = 0.0f64;
    let mut errors = Vec::new();
    for a in COUPLINGS {
        for n_r in 0..=2 {
            for l in 0..=1 {
                for (pair, exact) in pure_cases(a, n_r, l) {
                    match solve_state(&pair, QuantumNumbers::new(n_r, l), Branch::Particle) {
                        Ok(s) => {
                            e1.push(&s);
                            worst_rel = worst_rel.max((s.energy - exact).abs() / exact.abs());
                            worst_higher =
                                worst_higher.max(s.e2.abs().max(s.e3.abs()) / s.e0.abs());
                        }
                        Err(err) => errors.push(format!("A={a} n_r={n_r} l={l}: {err}")),
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = errors.is_empty()
        && worst_rel <= 1e-10
        && worst_higher <= 1e-12
        && elapsed < Duration::from_secs(1);
    report.record(
        2,
        "expansion collapses to closed forms",
        ok,
        elapsed,
        format!(
            "max rel dE = {worst_rel:.2e}, max |E2|,|E3| / |E0| = {worst_higher:.2e}, errors = {errors:?}"
        ),
    );
}

fn table_reproduction(report: &mut Report, e1: &mut E1Log, id: u32, tables: [u8; 2], label: &str) {
    let start = Instant::now();
    let mut worst_units = 0.0f64;
    let mut misses = Vec::new();
    let mut rows = 0;
    for row in tables
        .iter()
        .flat_map(|&t| golden::table(t))
        .filter(|r| r.k != 0.0)
    {
        rows += 1;
        let solved = row
            .pair()
            .and_then(|pair| solve_state(&pair, QuantumNumbers::ground(), Branch::Particle));
        let s = match solved {
            Ok(s) => s,
            Err(err) => {
                misses.push(format!(
                    "table {} ({}, {}): {err}",
                    row.table, row.a1, row.k
                ));
                continue;
            }
        };
        e1.push(&s);
        for (column, (printed, got)) in row.columns().iter().zip(s.partial_sums).enumerate() {
            let units = printed.units_off(got);
            worst_units = worst_units.max(units);
            if units > 5.0 {
                misses.push(format!(
                    "table {} ({}, {}) column {column}: {got:.12} vs {} ({units:.1} units)",
                    row.table, row.a1, row.k, printed.value
                ));
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = rows == 20 && misses.is_empty() && elapsed < Duration::from_secs(10);
    report.record(
        id,
        label,
        ok,
        elapsed,
        format!("{rows} rows, worst {worst_units:.2} units of last digit, misses = {misses:?}"),
    );
}

fn quadratic_residual(report: &mut Report) {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut worst_residual = 0.0f64;
    let mut worst_reduction = 0.0f64;
    let mut errors = 0usize;
    let rel = |x: f64, y: f64| (x - y).abs() / x.abs().max(y.abs()).max(f64::MIN_POSITIVE);
    for _ in 0..1000 {
        let m = rng.random_range(0.1..10.0);
        let a1 = rng.random_range(0.0..0.499);
        let a2 = rng.random_range(0.0..2.0);
        let n_r = rng.random_range(0..6u32);
        let l = rng.random_range(0..4u32);
        for branch in [Branch::Particle, Branch::Antiparticle] {
            let Ok(g) = closed_form::general_coulomb(m, a1, a2, n_r, l, branch) else {
                errors += 1;
                continue;
            };
            let e = g.energy;
            let lhs = e * e - m * m;
            let rhs = -(2.0 * m * a2 + 2.0 * e * a1).powi(2) / (2.0 * g.n_tilde).powi(2);
            worst_residual = worst_residual.max((lhs - rhs).abs() / (m * m));

            let reductions = [
                (
                    closed_form::general_coulomb(m, a1, 0.0, n_r, l, Branch::Particle),
                    closed_form::vector_coulomb(m, a1, n_r, l),
                ),
                (
                    closed_form::general_coulomb(m, 0.0, a2, n_r, l, branch),
                    closed_form::scalar_coulomb(m, a2, n_r, l, branch),
                ),
                (
                    closed_form::general_coulomb(m, a1, a1, n_r, l, Branch::Particle),
                    closed_form::equal_mix(m, a1, n_r, l),
                ),
            ];
            for (general, special) in reductions {
                match (general, special) {
                    (Ok(x), Ok(y)) => {
                        worst_reduction = worst_reduction.max(rel(x.energy, y.energy))
                    }
                    _ => errors += 1,
                }
            }
        }
    }
    let ok = errors == 0 && worst_residual <= 1e-13 && worst_reduction <= 1e-14;
    report.record(
        5,
        "general Coulomb quadratic and reductions",
        ok,
        start.elapsed(),
        format!(
            "1000 draws, max residual = {worst_residual:.2e}, max reduction error = {worst_reduction:.2e}, errors = {errors}"
        ),
    );
}

fn oracle_energy(pair: &PotentialPair, qn: QuantumNumbers) -> slet_core::Result<f64> {
    let eff = make_effective(pair);
    let bracket = default_bracket(&eff, qn, Branch::Particle)?;
    Ok(find_bound_state(&eff, qn, bracket)?.energy)
}

fn oracle_cross_validation(report: &mut Report) {
    let start = Instant::now();
    let mut worst_rel = 0.0f64;
    let mut misses = Vec::new();
    for a in COUPLINGS {
        for (n_r, l) in [(0, 0), (1, 0), (0, 1), (2, 1)] {
            for (pair, exact) in pure_cases(a, n_r, l) {
                match oracle_energy(&pair, QuantumNumbers::new(n_r, l)) {
                    Ok(e) => worst_rel = worst_rel.max((e - exact).abs() / exact.abs()),
                    Err(err) => misses.push(format!("A={a} n_r={n_r} l={l}: {err}")),
                }
            }
        }
    }
    let bounded: Vec<&GoldenRow> = golden::table(3)
        .chain(golden::table(4))
        .filter(|r| r.k <= 0.1)
        .collect();
    for row in &bounded {
        match row
            .pair()
            .and_then(|p| oracle_energy(&p, QuantumNumbers::ground()))
        {
            Ok(e) if row.reference.contains_rounded(e) => {}
            Ok(e) => misses.push(format!(
                "table {} ({}, {}): {e:.12} outside [{}, {}]",
                row.table, row.a1, row.k, row.reference.lo, row.reference.hi
            )),
            Err(err) => misses.push(format!(
                "table {} ({}, {}): {err}",
                row.table, row.a1, row.k
            )),
        }
    }
    let elapsed = start.elapsed();
    let ok = misses.is_empty() && worst_rel <= 1e-8 && elapsed < Duration::from_secs(60);
    report.record(
        6,
        "shooting oracle cross-validation",
        ok,
        elapsed,
        format!(
            "max rel dE vs closed forms = {worst_rel:.2e}, {} bounded rows, misses = {misses:?}",
            bounded.len()
        ),
    );
}

fn e1_annihilation(report: &mut Report, e1: &E1Log, elapsed: Duration) {
    report.record(
        7,
        "first-order correction vanishes",
        e1.count > 0 && e1.worst <= 1e-12,
        elapsed,
        format!(
            "{} solves, max |E1| / max(1, |E0|) = {:.2e}",
            e1.count, e1.worst
        ),
    );
}

fn dirac_identity(report: &mut Report) {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut errors = 0usize;
    for j in [0.5, 1.5, 2.5] {
        for n_r in 0..=2 {
            for a in [0.1, 0.3, 0.5, 1.0, 3.0] {
                let dirac = closed_form::dirac_equal_mix(1.0, a, n_r, j);
                let kg = closed_form::equal_mix(1.0, a, n_r, (j + 0.5) as u32);
                match (dirac, kg) {
                    (Ok(d), Ok(k)) => worst = worst.max((d.energy - k.energy).abs()),
                    _ => errors += 1,
                }
            }
        }
    }
    report.record(
        8,
        "Dirac equal-mix mapping",
        errors == 0 && worst <= 1e-14,
        start.elapsed(),
        format!("max |dE| = {worst:.2e}, errors = {errors}"),
    );
}

fn random_power_sum(rng: &mut StdRng) -> Vec<PowerTerm> {
    const FIXED: [f64; 7] = [-1.0, 0.0, 0.5, 1.0, 1.5, 2.0, 3.0];
    let count = rng.random_range(1..5);
    (0..count)
        .map(|_| {
            let exponent = if rng.random_bool(0.5) {
                FIXED[rng.random_range(0..FIXED.len())]
            } else {
                rng.random_range(-1.0..4.0)
            };
            PowerTerm::new(rng.random_range(-2.0..2.0), exponent)
        })
        .collect()
}

fn derivative_oracle(report: &mut Report) {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(SEED ^ 0x9);
    let mut worst = 0.0f64;
    let mut errors = 0usize;
    for _ in 0..100 {
        let terms = random_power_sum(&mut rng);
        let r = rng.random_range(0.1..10.0);
        let Ok(p) = RadialPotential::new(terms) else {
            errors += 1;
            continue;
        };
        for order in 1..=6 {
            let (Ok(analytic), Ok(_)) = (p.derivative(order, r), p.derivative(order - 1, r)) else {
                errors += 1;
                continue;
            };
            let numeric = richardson_first(|x| p.derivative(order - 1, x).unwrap(), r, 0.1 * r);
            let scale = derivative_scale(p.terms(), order, r);
            worst = worst.max((analytic - numeric).abs() / scale);
        }
    }
    report.record(
        9,
        "analytic derivatives vs extrapolated differences",
        errors == 0 && worst <= 1e-6,
        start.elapsed(),
        format!("100 points, orders 1-6, max scaled error = {worst:.2e}, errors = {errors}"),
    );
}

fn main() -> ExitCode {
    let mut report = Report { failures: 0 };
    let mut e1 = E1Log::default();
    let start = Instant::now();

    closed_form_regression(&mut report);
    collapse(&mut report, &mut e1);
    table_reproduction(&mut report, &mut e1, 3, [1, 2], "vector linear tables");
    table_reproduction(&mut report, &mut e1, 4, [3, 4], "scalar linear tables");
    quadratic_residual(&mut report);
    oracle_cross_validation(&mut report);
    e1_annihilation(&mut report, &e1, start.elapsed());
    dirac_identity(&mut report);
    derivative_oracle(&mut report);

    println!("{} of 9 criteria failed", report.failures);
    if report.failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
