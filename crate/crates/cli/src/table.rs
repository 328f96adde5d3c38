//! Ground-state tables for Coulomb plus linear potentials, rows solved in parallel.

use rayon::prelude::*;
use serde::Serialize;
use slet_core::golden::{self, LinearCoupling, Printed, Reference};
use slet_core::{solve_state, Branch, PotentialPair, QuantumNumbers, RadialPotential, SletError};

use crate::error::CliError;
use crate::expr::parse_potential;
use crate::output::{csv_text, json_text, plain_table, sig12};
use crate::scenario::{row_pair, Format, Scenario};

pub const CSV_HEADER: [&str; 8] = [
    "A1",
    "k",
    "E0",
    "E0_plus_E2",
    "E_full",
    "ref_lo",
    "ref_hi",
    "abs_dev",
];

/// One requested row before solving.
struct Job {
    table: Option<u8>,
    a1: f64,
    k: f64,
    pair: Result<PotentialPair, SletError>,
    reference: Option<Reference>,
    printed: Option<[Printed; 3]>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PrintedCell {
    pub text: String,
    pub decimals: u32,
}

impl From<Printed> for PrintedCell {
    fn from(p: Printed) -> Self {
        Self {
            text: format!("{:.*}", p.decimals as usize, p.value),
            decimals: p.decimals,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<u8>,
    pub a1: f64,
    pub k: f64,
    pub e0: Option<f64>,
    pub e0_plus_e2: Option<f64>,
    pub e_full: Option<f64>,
    pub reference: Option<String>,
    pub ref_lo: Option<f64>,
    pub ref_hi: Option<f64>,
    /// Distance from `e_full` to the reference interval.
    pub abs_dev: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub printed: Option<[PrintedCell; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn solve_job(job: &Job) -> TableRow {
    let solved = job
        .pair
        .clone()
        .and_then(|pair| solve_state(&pair, QuantumNumbers::ground(), Branch::Particle));
    let (sums, error) = match solved {
        Ok(s) => (Some(s.partial_sums), None),
        Err(e) => (None, Some(format!("{}: {}", e.kind(), e.root()))),
    };
    let e_full = sums.map(|s| s[2]);
    TableRow {
        table: job.table,
        a1: job.a1,
        k: job.k,
        e0: sums.map(|s| s[0]),
        e0_plus_e2: sums.map(|s| s[1]),
        e_full,
        reference: job.reference.as_ref().map(|r| r.text.clone()),
        ref_lo: job.reference.as_ref().map(|r| r.lo),
        ref_hi: job.reference.as_ref().map(|r| r.hi),
        abs_dev: job
            .reference
            .as_ref()
            .zip(e_full)
            .map(|(r, e)| r.distance(e)),
        printed: job.printed.map(|p| p.map(PrintedCell::from)),
        error,
    }
}

fn builtin_jobs(table: u8) -> Vec<Job> {
    golden::table(table)
        .map(|row| Job {
            table: Some(table),
            a1: row.a1,
            k: row.k,
            pair: row.pair(),
            reference: Some(row.reference.clone()),
            printed: Some(row.columns()),
        })
        .collect()
}

fn scenario_jobs(scenario: &Scenario) -> Result<Vec<Job>, CliError> {
    if scenario.rows.is_empty() {
        return Err(CliError::Usage(
            "a table scenario needs at least one [[rows]] entry".into(),
        ));
    }
    let linear: LinearCoupling = scenario
        .linear
        .ok_or_else(|| {
            CliError::Usage("a table scenario needs `linear = \"vector\"` or `\"scalar\"`".into())
        })?
        .into();
    let parse = |name: &str, text: &Option<String>| match text {
        Some(t) => parse_potential(t).map_err(|e| CliError::Usage(format!("{name}: {e}"))),
        None => Ok(RadialPotential::zero()),
    };
    let vector = parse("vector", &scenario.vector)?;
    let scalar = parse("scalar", &scenario.scalar)?;
    let mass = scenario.mass.unwrap_or(1.0);
    scenario
        .rows
        .iter()
        .map(|row| {
            let reference = row
                .reference
                .as_deref()
                .map(|text| {
                    Reference::parse(text)
                        .ok_or_else(|| CliError::Usage(format!("cannot read reference `{text}`")))
                })
                .transpose()?;
            Ok(Job {
                table: None,
                a1: row.a1,
                k: row.k,
                pair: row_pair(mass, &vector, &scalar, linear, row),
                reference,
                printed: None,
            })
        })
        .collect()
}

pub enum Source<'a> {
    Builtin(u8),
    Scenario(&'a Scenario),
}

/// Solves every row; the second value counts rows that failed.
pub fn compute(source: Source<'_>) -> Result<(Vec<TableRow>, usize), CliError> {
    let jobs = match source {
        Source::Builtin(id) => builtin_jobs(id),
        Source::Scenario(s) => scenario_jobs(s)?,
    };
    let rows: Vec<TableRow> = jobs.par_iter().map(solve_job).collect();
    let failed = rows.iter().filter(|r| r.error.is_some()).count();
    Ok((rows, failed))
}

fn opt(x: Option<f64>) -> String {
    x.map(sig12).unwrap_or_default()
}

fn csv_rows(rows: &[TableRow]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| {
            let e0 = match &r.error {
                Some(e) => format!("ERROR({e})"),
                None => opt(r.e0),
            };
            vec![
                r.a1.to_string(),
                r.k.to_string(),
                e0,
                opt(r.e0_plus_e2),
                opt(r.e_full),
                opt(r.ref_lo),
                opt(r.ref_hi),
                opt(r.abs_dev),
            ]
        })
        .collect()
}

/// Twelve digits, then the value rounded to the printed digit count next to the printed text.
fn eyeball(value: Option<f64>, printed: Option<&PrintedCell>) -> String {
    match (value, printed) {
        (Some(v), Some(p)) => format!("{} [{:.*} | {}]", sig12(v), p.decimals as usize, v, p.text),
        (v, _) => opt(v),
    }
}

fn plain_rows(rows: &[TableRow]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| {
            let printed = |i: usize| r.printed.as_ref().map(|p| &p[i]);
            let e0 = match &r.error {
                Some(e) => format!("ERROR({e})"),
                None => eyeball(r.e0, printed(0)),
            };
            vec![
                r.a1.to_string(),
                r.k.to_string(),
                e0,
                eyeball(r.e0_plus_e2, printed(1)),
                eyeball(r.e_full, printed(2)),
                r.reference.clone().unwrap_or_default(),
                opt(r.abs_dev),
            ]
        })
        .collect()
}

pub fn render(rows: &[TableRow], format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(json_text(&rows)),
        Format::Csv => csv_text(&CSV_HEADER, &csv_rows(rows)),
        Format::Table => Ok(plain_table(
            &[
                "A1",
                "k",
                "E0 [rounded | printed]",
                "E0_plus_E2 [rounded | printed]",
                "E_full [rounded | printed]",
                "reference",
                "abs_dev",
            ],
            &plain_rows(rows),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_keep_printed_order() {
        let (rows, failed) = compute(Source::Builtin(4)).unwrap();
        assert_eq!(failed, 0);
        let expected: Vec<(f64, f64)> = golden::table(4).map(|r| (r.a1, r.k)).collect();
        let got: Vec<(f64, f64)> = rows.iter().map(|r| (r.a1, r.k)).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn error_rows_do_not_abort() {
        let scenario = Scenario::parse(
            "linear = \"scalar\"\n[[rows]]\na1 = 0.3\nk = 0.05\n[[rows]]\na1 = 0.7\nk = 0.05\n",
        )
        .unwrap();
        let (rows, failed) = compute(Source::Scenario(&scenario)).unwrap();
        assert_eq!(failed, 1);
        assert!(rows[0].error.is_none());
        assert!(rows[1]
            .error
            .as_deref()
            .unwrap()
            .starts_with("SupercriticalCoupling"));
        let text = render(&rows, Format::Csv).unwrap();
        assert!(text
            .lines()
            .nth(2)
            .unwrap()
            .contains("\"ERROR(SupercriticalCoupling: "));
    }
}
