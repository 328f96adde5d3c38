//! TOML scenario files. Field names match the command-line flags.

use std::path::Path;

use serde::{Deserialize, Serialize};
use slet_core::golden::LinearCoupling;
use slet_core::{Branch, PotentialPair, QuantumNumbers, RadialPotential};

use crate::error::CliError;
use crate::expr::parse_potential;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    #[default]
    Slet,
    ClosedForm,
    Oracle,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Linear {
    Vector,
    Scalar,
}

impl From<Linear> for LinearCoupling {
    fn from(value: Linear) -> Self {
        match value {
            Linear::Vector => LinearCoupling::Vector,
            Linear::Scalar => LinearCoupling::Scalar,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateEntry {
    pub nr: u32,
    pub l: u32,
}

impl From<StateEntry> for QuantumNumbers {
    fn from(s: StateEntry) -> Self {
        QuantumNumbers::new(s.nr, s.l)
    }
}

/// One row of a user-defined table: `V = vector - A1/r`, `S = scalar`, with
/// `k r` added to whichever potential `linear` names.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RowEntry {
    pub a1: f64,
    pub k: f64,
    /// Reference in the `1.027622(19)` bound notation, or a plain number.
    pub reference: Option<String>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub mass: Option<f64>,
    pub vector: Option<String>,
    pub scalar: Option<String>,
    pub branch: Option<Branch>,
    pub mode: Option<Mode>,
    pub format: Option<Format>,
    pub tol: Option<f64>,
    #[serde(default)]
    pub states: Vec<StateEntry>,
    pub linear: Option<Linear>,
    #[serde(default)]
    pub rows: Vec<RowEntry>,
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Usage(format!("cannot read scenario {}: {e}", path.display()))
        })?;
        Self::parse(&text).map_err(|e| CliError::Usage(format!("scenario {}: {e}", path.display())))
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        toml::from_str(text).map_err(|e| e.to_string())
    }
}

/// A fully resolved problem: potentials, mass, branch and the states to solve.
#[derive(Debug, Clone)]
pub struct Problem {
    pub mass: f64,
    pub vector_text: String,
    pub scalar_text: String,
    pub pair: PotentialPair,
    pub branch: Branch,
    pub states: Vec<QuantumNumbers>,
}

impl Problem {
    pub fn build(
        mass: f64,
        vector: &str,
        scalar: &str,
        branch: Branch,
        states: Vec<QuantumNumbers>,
    ) -> Result<Self, CliError> {
        if states.is_empty() {
            return Err(CliError::Usage(
                "at least one (nr, l) state is required".into(),
            ));
        }
        let pair = potentials(mass, vector, scalar)?;
        Ok(Self {
            mass,
            vector_text: vector.to_string(),
            scalar_text: scalar.to_string(),
            pair,
            branch,
            states,
        })
    }
}

pub fn potentials(mass: f64, vector: &str, scalar: &str) -> Result<PotentialPair, CliError> {
    let parse = |name: &str, text: &str| {
        parse_potential(text).map_err(|e| CliError::Usage(format!("--{name}: {e}")))
    };
    let v = parse("vector", vector)?;
    let s = parse("scalar", scalar)?;
    PotentialPair::new(mass, v, s).map_err(|e| CliError::Usage(e.to_string()))
}

/// Potentials of a user-defined table row.
pub fn row_pair(
    mass: f64,
    base_vector: &RadialPotential,
    base_scalar: &RadialPotential,
    linear: LinearCoupling,
    row: &RowEntry,
) -> slet_core::Result<PotentialPair> {
    let coulomb = RadialPotential::coulomb(row.a1);
    let ramp = RadialPotential::monomial(row.k, 1.0);
    let vector = base_vector + &coulomb;
    match linear {
        LinearCoupling::Vector => PotentialPair::new(mass, vector + ramp, base_scalar.clone()),
        LinearCoupling::Scalar => PotentialPair::new(mass, vector, base_scalar + &ramp),
    }
}
