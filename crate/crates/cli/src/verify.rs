//! Side-by-side checks of the expansion against closed forms, the shooting
//! oracle and the reference tables.

use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use slet_core::golden::{self, GoldenRow, LinearCoupling, Reference};
use slet_core::{
    make_effective, solve_effective, Branch, PotentialPair, QuantumNumbers, RadialPotential,
    SletError,
};

use crate::error::CliError;
use crate::output::{csv_text, json_text, plain_table, sig12};
use crate::scenario::{row_pair, Format, Problem, Scenario};
use crate::solve::{closed_form_for, deviation, oracle_for};

/// The expansion is approximate once the potential is not pure Coulomb; it is
/// held to this relative distance from the oracle, or the reference gap if wider.
pub const SLET_APPROXIMATION: f64 = 2e-3;
/// Allowed deviation from a printed table cell, in units of its last digit.
pub const PRINTED_UNITS: f64 = 5.0;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
    Informational,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => f.write_str("PASS"),
            Status::Fail => f.write_str("FAIL"),
            Status::Skipped(reason) => write!(f, "SKIPPED({reason})"),
            Status::Informational => f.write_str("INFORMATIONAL"),
        }
    }
}

impl Serialize for Status {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub case: String,
    pub check: String,
    pub value: Option<f64>,
    pub reference: Option<f64>,
    pub deviation: Option<f64>,
    pub tolerance: Option<f64>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    fn compare(
        case: &str,
        check: &str,
        value: f64,
        reference: f64,
        deviation: f64,
        tolerance: f64,
    ) -> Self {
        Self {
            case: case.to_string(),
            check: check.to_string(),
            value: Some(value),
            reference: Some(reference),
            deviation: Some(deviation),
            tolerance: Some(tolerance),
            status: if deviation <= tolerance {
                Status::Pass
            } else {
                Status::Fail
            },
            note: None,
        }
    }

    fn failed(case: &str, check: &str, err: &SletError) -> Self {
        let status = if err.kind() == "NotConfining" {
            Status::Skipped("NotConfining".into())
        } else {
            Status::Fail
        };
        Self {
            case: case.to_string(),
            check: check.to_string(),
            value: None,
            reference: None,
            deviation: None,
            tolerance: None,
            status,
            note: Some(format!("{}: {}", err.kind(), err.root())),
        }
    }

    fn with_note(mut self, note: &str) -> Self {
        self.note = Some(note.to_string());
        self
    }
}

#[derive(Debug, Default, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub informational: usize,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub tolerance: f64,
    pub summary: Summary,
    pub checks: Vec<Check>,
}

/// One unit of verification work, run in parallel with the others.
enum Case {
    State {
        label: String,
        pair: PotentialPair,
        qn: QuantumNumbers,
        branch: Branch,
    },
    Golden(&'static GoldenRow),
    Row {
        label: String,
        pair: Result<PotentialPair, SletError>,
        reference: Option<Reference>,
    },
}

fn state_checks(
    label: &str,
    pair: &PotentialPair,
    qn: QuantumNumbers,
    branch: Branch,
    tol: f64,
) -> Vec<Check> {
    let eff = make_effective(pair);
    let mass = pair.mass();
    let slet = match solve_effective(&eff, qn, branch) {
        Ok(s) => s,
        Err(e) => return vec![Check::failed(label, "slet", &e)],
    };
    let oracle = oracle_for(&eff, qn, branch);
    let mut checks = Vec::new();
    match closed_form_for(&eff, qn, branch) {
        Ok(exact) => {
            let e = exact.energy;
            checks.push(Check::compare(
                label,
                "slet vs closed_form",
                slet.energy,
                e,
                deviation(slet.energy, e, mass),
                tol,
            ));
            checks.push(match &oracle {
                Ok(o) => Check::compare(
                    label,
                    "oracle vs closed_form",
                    o.energy,
                    e,
                    deviation(o.energy, e, mass),
                    tol,
                ),
                Err(err) => Check::failed(label, "oracle vs closed_form", err),
            });
        }
        Err(SletError::NoClosedForm(_)) => checks.push(match &oracle {
            Ok(o) => Check::compare(
                label,
                "slet vs oracle",
                slet.energy,
                o.energy,
                deviation(slet.energy, o.energy, mass),
                SLET_APPROXIMATION,
            ),
            Err(err) => Check::failed(label, "slet vs oracle", err),
        }),
        Err(err) => checks.push(Check::failed(label, "closed_form", &err)),
    }
    checks
}

/// Rows where the reference bounds erupt; comparing against them is reported
/// but never counted as a pass or a failure.
fn known_reference_eruption(row: &GoldenRow) -> bool {
    row.table == 1 && row.a1 == 0.2 && row.k >= 0.1
}

fn reference_tolerance(reference: &Reference, energy: f64) -> f64 {
    (SLET_APPROXIMATION * energy.abs()).max(reference.hi - reference.lo)
}

fn golden_checks(row: &GoldenRow) -> Vec<Check> {
    let label = format!("table {} A1={} k={}", row.table, row.a1, row.k);
    let label = label.as_str();
    let pair = match row.pair() {
        Ok(p) => p,
        Err(e) => return vec![Check::failed(label, "slet", &e)],
    };
    let eff = make_effective(&pair);
    let qn = QuantumNumbers::ground();
    let slet = match solve_effective(&eff, qn, Branch::Particle) {
        Ok(s) => s,
        Err(e) => return vec![Check::failed(label, "slet", &e)],
    };
    let mut checks = Vec::new();

    let units = row
        .columns()
        .iter()
        .zip(slet.partial_sums)
        .map(|(printed, got)| printed.units_off(got))
        .fold(0.0f64, f64::max);
    checks.push(
        Check::compare(
            label,
            "slet vs printed columns",
            slet.energy,
            row.e_full.value,
            units,
            PRINTED_UNITS,
        )
        .with_note("deviation in units of the last printed digit, worst of three columns"),
    );

    let reference = &row.reference;
    match oracle_for(&eff, qn, Branch::Particle) {
        Ok(o) if row.k <= 0.1 => {
            let half_unit = 0.5 * 10f64.powi(-(reference.decimals as i32));
            checks.push(
                Check::compare(
                    label,
                    "oracle vs reference",
                    o.energy,
                    reference.hi,
                    reference.distance(o.energy),
                    half_unit,
                )
                .with_note(&format!("reference interval {}", reference.text)),
            );
        }
        Ok(o) => {
            let tol = reference_tolerance(reference, o.energy);
            let dev = (slet.energy - o.energy).abs();
            checks.push(Check::compare(
                label,
                "slet vs oracle",
                slet.energy,
                o.energy,
                dev,
                tol,
            ));
        }
        Err(err) => {
            checks.push(Check::failed(label, "oracle", &err));
            if row.coupling() == LinearCoupling::Vector {
                let dev = reference.distance(slet.energy);
                let mut check = Check::compare(
                    label,
                    "slet vs reference",
                    slet.energy,
                    reference.hi,
                    dev,
                    reference_tolerance(reference, slet.energy),
                )
                .with_note(&format!("reference interval {}", reference.text));
                if known_reference_eruption(row) {
                    check.status = Status::Informational;
                    check.note = Some(format!(
                        "reference interval {} is unreliable here",
                        reference.text
                    ));
                }
                checks.push(check);
            }
        }
    }
    checks
}

fn row_checks(
    label: &str,
    pair: &Result<PotentialPair, SletError>,
    reference: Option<&Reference>,
    tol: f64,
) -> Vec<Check> {
    let pair = match pair {
        Ok(p) => p,
        Err(e) => return vec![Check::failed(label, "slet", e)],
    };
    let mut checks = state_checks(label, pair, QuantumNumbers::ground(), Branch::Particle, tol);
    if let Some(reference) = reference {
        let eff = make_effective(pair);
        match oracle_for(&eff, QuantumNumbers::ground(), Branch::Particle) {
            Ok(o) => {
                let half_unit = 0.5 * 10f64.powi(-(reference.decimals as i32));
                checks.push(Check::compare(
                    label,
                    "oracle vs reference",
                    o.energy,
                    reference.hi,
                    reference.distance(o.energy),
                    half_unit,
                ));
            }
            Err(err) => checks.push(Check::failed(label, "oracle vs reference", &err)),
        }
    }
    checks
}

fn builtin_cases() -> Vec<Case> {
    let mut cases = Vec::new();
    for a1 in [0.2, 0.3, 0.4, 0.5] {
        cases.push(Case::State {
            label: format!("vector Coulomb A1={a1}"),
            pair: PotentialPair::new(1.0, RadialPotential::coulomb(a1), RadialPotential::zero())
                .expect("Coulomb pair is valid"),
            qn: QuantumNumbers::ground(),
            branch: Branch::Particle,
        });
    }
    cases.push(Case::State {
        label: "equal mix A=1 n=1".into(),
        pair: PotentialPair::new(
            1.0,
            RadialPotential::coulomb(1.0),
            RadialPotential::coulomb(1.0),
        )
        .expect("Coulomb pair is valid"),
        qn: QuantumNumbers::ground(),
        branch: Branch::Particle,
    });
    cases.extend(golden::rows().iter().map(Case::Golden));
    cases
}

fn problem_cases(problem: &Problem, scenario: &Scenario) -> Result<Vec<Case>, CliError> {
    let mut cases: Vec<Case> = problem
        .states
        .iter()
        .map(|&qn| Case::State {
            label: format!("n_r={} l={}", qn.n_r, qn.l),
            pair: problem.pair.clone(),
            qn,
            branch: problem.branch,
        })
        .collect();
    if !scenario.rows.is_empty() {
        let linear: LinearCoupling = scenario
            .linear
            .ok_or_else(|| {
                CliError::Usage("scenario rows need `linear = \"vector\"` or `\"scalar\"`".into())
            })?
            .into();
        for row in &scenario.rows {
            let reference = row
                .reference
                .as_deref()
                .map(|t| {
                    Reference::parse(t)
                        .ok_or_else(|| CliError::Usage(format!("cannot read reference `{t}`")))
                })
                .transpose()?;
            cases.push(Case::Row {
                label: format!("row A1={} k={}", row.a1, row.k),
                pair: row_pair(
                    problem.mass,
                    problem.pair.vector(),
                    problem.pair.scalar(),
                    linear,
                    row,
                ),
                reference,
            });
        }
    }
    Ok(cases)
}

pub enum Suite<'a> {
    Builtin,
    Problem(&'a Problem, &'a Scenario),
}

pub fn run(suite: Suite<'_>, tol: f64) -> Result<VerifyReport, CliError> {
    let cases = match suite {
        Suite::Builtin => builtin_cases(),
        Suite::Problem(problem, scenario) => problem_cases(problem, scenario)?,
    };
    let checks: Vec<Check> = cases
        .par_iter()
        .map(|case| match case {
            Case::State {
                label,
                pair,
                qn,
                branch,
            } => state_checks(label, pair, *qn, *branch, tol),
            Case::Golden(row) => golden_checks(row),
            Case::Row {
                label,
                pair,
                reference,
            } => row_checks(label, pair, reference.as_ref(), tol),
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let mut summary = Summary::default();
    for c in &checks {
        match c.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::Skipped(_) => summary.skipped += 1,
            Status::Informational => summary.informational += 1,
        }
    }
    Ok(VerifyReport {
        tolerance: tol,
        summary,
        checks,
    })
}

const HEADER: [&str; 8] = [
    "case",
    "check",
    "value",
    "reference",
    "deviation",
    "tolerance",
    "status",
    "note",
];

fn rows(report: &VerifyReport) -> Vec<Vec<String>> {
    let opt = |x: Option<f64>| x.map(sig12).unwrap_or_default();
    report
        .checks
        .iter()
        .map(|c| {
            vec![
                c.case.clone(),
                c.check.clone(),
                opt(c.value),
                opt(c.reference),
                c.deviation.map(|d| format!("{d:.3e}")).unwrap_or_default(),
                c.tolerance.map(|t| format!("{t:.3e}")).unwrap_or_default(),
                c.status.to_string(),
                c.note.clone().unwrap_or_default(),
            ]
        })
        .collect()
}

pub fn render(report: &VerifyReport, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(json_text(report)),
        Format::Csv => csv_text(&HEADER, &rows(report)),
        Format::Table => {
            let s = &report.summary;
            Ok(plain_table(&HEADER, &rows(report))
                + &format!(
                    "\n{} PASS, {} FAIL, {} SKIPPED, {} INFORMATIONAL\n",
                    s.pass, s.fail, s.skipped, s.informational
                ))
        }
    }
}
