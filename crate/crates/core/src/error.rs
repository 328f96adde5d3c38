use std::fmt;

use thiserror::Error;

/// Pipeline stage an error surfaced from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    EffectiveL,
    SolveR0,
    EnergyCorrections,
    ClosedForm,
    Oracle,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Stage::EffectiveL => "effective_l",
            Stage::SolveR0 => "solve_r0",
            Stage::EnergyCorrections => "energy_corrections",
            Stage::ClosedForm => "closed_form",
            Stage::Oracle => "oracle",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SletError {
    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    #[error("mass must be positive and finite, got {0}")]
    InvalidMass(f64),

    #[error("invalid quantum number: {0}")]
    InvalidQuantumNumber(String),

    #[error("supercritical coupling: (l+1/2)^2 - Ac = {discriminant} < 0 for l = {l}, Ac = {ac}")]
    SupercriticalCoupling { l: u32, ac: f64, discriminant: f64 },

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("no real expansion point at r = {r}: b^2 - 4c = {discriminant}")]
    NoRealExpansion { r: f64, discriminant: f64 },

    #[error("non-positive Q = {q} at r = {r}")]
    NonpositiveQ { r: f64, q: f64 },

    #[error("complex leading energy at r = {r}: radicand {radicand}")]
    ComplexLeadingEnergy { r: f64, radicand: f64 },

    #[error("imaginary oscillator frequency at r = {r}: w^2 = {radicand}")]
    ImaginaryFrequency { r: f64, radicand: f64 },

    #[error("no sign change of the r0 condition in [{r_lo}, {r_hi}]")]
    NoBracket { r_lo: f64, r_hi: f64 },

    #[error("expansion point r0 = {r0} is not a minimum of E0: d2E0/dr0^2 = {second_derivative}")]
    MaximumNotMinimum { r0: f64, second_derivative: f64 },

    #[error("branch inconsistent with the r0 condition at r0 = {r0}: dE0/dr0 = {slope}")]
    BranchInconsistent { r0: f64, slope: f64 },

    #[error("degenerate denominator: E0 = {e0}, V(r0) = {v}")]
    DegenerateDenominator { e0: f64, v: f64 },

    #[error("effective potential not confining at E = {energy}: leading term {coefficient} r^{exponent}")]
    NotConfining {
        energy: f64,
        exponent: f64,
        coefficient: f64,
    },

    #[error(
        "energy bracket [{lo}, {hi}] does not isolate the state (nodes {nodes_lo}..{nodes_hi})"
    )]
    BracketExhausted {
        lo: f64,
        hi: f64,
        nodes_lo: usize,
        nodes_hi: usize,
    },

    #[error("converged state has {found} nodes, expected {expected}")]
    NodeMismatch { expected: u32, found: usize },

    #[error("no closed form for this potential mixture: {0}")]
    NoClosedForm(String),

    #[error("{stage}: {source}")]
    Stage {
        stage: Stage,
        #[source]
        source: Box<SletError>,
    },
}

impl SletError {
    pub(crate) fn at(self, stage: Stage) -> Self {
        match self {
            SletError::Stage { .. } => self,
            other => SletError::Stage {
                stage,
                source: Box::new(other),
            },
        }
    }

    /// Name of the underlying error variant, without the stage wrapper.
    pub fn kind(&self) -> &'static str {
        match self {
            SletError::InvalidPotential(_) => "InvalidPotential",
            SletError::InvalidMass(_) => "InvalidMass",
            SletError::InvalidQuantumNumber(_) => "InvalidQuantumNumber",
            SletError::SupercriticalCoupling { .. } => "SupercriticalCoupling",
            SletError::DomainError(_) => "DomainError",
            SletError::NoRealExpansion { .. } => "NoRealExpansion",
            SletError::NonpositiveQ { .. } => "NonpositiveQ",
            SletError::ComplexLeadingEnergy { .. } => "ComplexLeadingEnergy",
            SletError::ImaginaryFrequency { .. } => "ImaginaryFrequency",
            SletError::NoBracket { .. } => "NoBracket",
            SletError::MaximumNotMinimum { .. } => "MaximumNotMinimum",
            SletError::BranchInconsistent { .. } => "BranchInconsistent",
            SletError::DegenerateDenominator { .. } => "DegenerateDenominator",
            SletError::NotConfining { .. } => "NotConfining",
            SletError::BracketExhausted { .. } => "BracketExhausted",
            SletError::NodeMismatch { .. } => "NodeMismatch",
            SletError::NoClosedForm(_) => "NoClosedForm",
            SletError::Stage { source, .. } => source.kind(),
        }
    }

    pub fn stage(&self) -> Option<Stage> {
        match self {
            SletError::Stage { stage, .. } => Some(*stage),
            _ => None,
        }
    }

    /// The error with any stage wrapper removed.
    pub fn root(&self) -> &SletError {
        match self {
            SletError::Stage { source, .. } => source.root(),
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, SletError>;
