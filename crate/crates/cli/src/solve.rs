use std::collections::BTreeMap;

use serde::Serialize;
use slet_core::closed_form::{self, ClosedFormResult};
use slet_core::oracle::{default_bracket, find_bound_state};
use slet_core::{
    make_effective, solve_effective, Branch, EffectiveProblem, OracleResult, QuantumNumbers,
    SletError, SletSolution, Stage,
};

use crate::error::CliError;
use crate::output::{csv_text, json_text, plain_table, sig12};
use crate::scenario::{Format, Mode, Problem};

#[derive(Debug, Serialize)]
pub struct Agreement {
    /// Method the expansion is compared against.
    pub reference: &'static str,
    /// `|E_slet - E_ref| / max(|E_ref|, m)`.
    pub deviation: f64,
    pub tolerance: f64,
    pub within: bool,
}

#[derive(Debug, Serialize)]
pub struct StateReport {
    pub n_r: u32,
    pub l: u32,
    pub branch: Branch,
    pub energy: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slet: Option<SletSolution>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<ClosedFormResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleResult>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub skipped: BTreeMap<&'static str, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<Agreement>,
}

#[derive(Debug, Serialize)]
pub struct SolveReport {
    pub mass: f64,
    pub vector: String,
    pub scalar: String,
    pub mode: Mode,
    pub states: Vec<StateReport>,
}

pub fn closed_form_for(
    eff: &EffectiveProblem,
    qn: QuantumNumbers,
    branch: Branch,
) -> Result<ClosedFormResult, SletError> {
    closed_form::for_problem(eff, qn.n_r, qn.l, branch)
}

pub fn oracle_for(
    eff: &EffectiveProblem,
    qn: QuantumNumbers,
    branch: Branch,
) -> Result<OracleResult, SletError> {
    let bracket = default_bracket(eff, qn, branch)?;
    find_bound_state(eff, qn, bracket)
}

/// Relative deviation, floored at the mass so zero energies stay comparable.
pub fn deviation(value: f64, reference: f64, mass: f64) -> f64 {
    (value - reference).abs() / reference.abs().max(mass)
}

fn solve_one(
    problem: &Problem,
    qn: QuantumNumbers,
    mode: Mode,
    tol: f64,
) -> Result<StateReport, CliError> {
    let eff = make_effective(&problem.pair);
    let branch = problem.branch;
    let mut skipped = BTreeMap::new();

    let slet = match mode {
        Mode::Slet | Mode::All => Some(solve_effective(&eff, qn, branch)?),
        _ => None,
    };
    let closed = match mode {
        Mode::ClosedForm => Some(
            closed_form_for(&eff, qn, branch).map_err(|e| CliError::at(Stage::ClosedForm, e))?,
        ),
        Mode::All => match closed_form_for(&eff, qn, branch) {
            Ok(c) => Some(c),
            Err(e @ SletError::NoClosedForm(_)) => {
                skipped.insert("closed_form", format!("{}: {e}", e.kind()));
                None
            }
            Err(e) => return Err(CliError::at(Stage::ClosedForm, e)),
        },
        _ => None,
    };
    let oracle = match mode {
        Mode::Oracle => {
            Some(oracle_for(&eff, qn, branch).map_err(|e| CliError::at(Stage::Oracle, e))?)
        }
        Mode::All => match oracle_for(&eff, qn, branch) {
            Ok(o) => Some(o),
            Err(e) if e.kind() == "NotConfining" => {
                skipped.insert("oracle", format!("{}: {}", e.kind(), e.root()));
                None
            }
            Err(e) => return Err(CliError::at(Stage::Oracle, e)),
        },
        _ => None,
    };

    let exact = closed
        .as_ref()
        .map(|c| ("closed_form", c.energy))
        .or_else(|| oracle.as_ref().map(|o| ("oracle", o.energy)));
    let agreement = match (mode, &slet, exact) {
        (Mode::All, Some(s), Some((reference, e))) => {
            let deviation = deviation(s.energy, e, problem.mass);
            Some(Agreement {
                reference,
                deviation,
                tolerance: tol,
                within: deviation <= tol,
            })
        }
        _ => None,
    };
    let energy = match mode {
        Mode::ClosedForm => closed.as_ref().map(|c| c.energy),
        Mode::Oracle => oracle.as_ref().map(|o| o.energy),
        Mode::Slet | Mode::All => slet.as_ref().map(|s| s.energy),
    }
    .expect("the requested method produced a result");

    Ok(StateReport {
        n_r: qn.n_r,
        l: qn.l,
        branch,
        energy,
        slet,
        closed_form: closed,
        oracle,
        skipped,
        agreement,
    })
}

pub fn run(problem: &Problem, mode: Mode, format: Format, tol: f64) -> Result<String, CliError> {
    let states = problem
        .states
        .iter()
        .map(|&qn| solve_one(problem, qn, mode, tol))
        .collect::<Result<Vec<_>, _>>()?;
    let report = SolveReport {
        mass: problem.mass,
        vector: problem.vector_text.clone(),
        scalar: problem.scalar_text.clone(),
        mode,
        states,
    };
    match format {
        Format::Json => Ok(json_text(&report)),
        Format::Csv => csv_text(&HEADER, &rows(&report)),
        Format::Table => Ok(plain_table(&HEADER, &rows(&report))),
    }
}

const HEADER: [&str; 7] = ["n_r", "l", "branch", "method", "energy", "E0", "E0_plus_E2"];

fn rows(report: &SolveReport) -> Vec<Vec<String>> {
    let mut rows = Vec::new();
    for s in &report.states {
        let branch = match s.branch {
            Branch::Particle => "particle",
            Branch::Antiparticle => "antiparticle",
        };
        let mut push = |method: &str, energy: String, e0: String, e02: String| {
            rows.push(vec![
                s.n_r.to_string(),
                s.l.to_string(),
                branch.into(),
                method.into(),
                energy,
                e0,
                e02,
            ]);
        };
        if let Some(slet) = &s.slet {
            push(
                "slet",
                sig12(slet.energy),
                sig12(slet.partial_sums[0]),
                sig12(slet.partial_sums[1]),
            );
        }
        if let Some(c) = &s.closed_form {
            push("closed-form", sig12(c.energy), String::new(), String::new());
        }
        if let Some(o) = &s.oracle {
            push("oracle", sig12(o.energy), String::new(), String::new());
        }
        for (method, reason) in &s.skipped {
            let kind = reason.split(':').next().unwrap_or(reason);
            push(
                &method.replace('_', "-"),
                format!("SKIPPED({kind})"),
                String::new(),
                String::new(),
            );
        }
    }
    rows
}
