//! Bound-state energies of the radial Klein-Gordon equation with Coulomb-like
//! Lorentz-vector and Lorentz-scalar potentials.
//!
//! * [`potential`]: power-law potentials, the Coulomb-subtracted problem and `l'`.
//! * [`slet`]: the shifted-l expansion, through third order in `1/l̄`.
//! * [`closed_form`]: exact energies for pure Coulomb mixtures.
//! * [`oracle`]: direct Numerov shooting on the radial equation.
//! * [`golden`]: reference ground-state tables for Coulomb plus linear potentials.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod closed_form;
pub mod error;
pub mod golden;
pub mod oracle;
pub mod potential;
pub mod roots;
pub mod slet;

pub use closed_form::{ClosedFormKind, ClosedFormResult};
pub use error::{Result, SletError, Stage};
pub use oracle::{default_bracket, find_bound_state, OracleResult, RadialGrid};
pub use potential::{
    effective_l, make_effective, EffectiveProblem, PotentialPair, PowerTerm, RadialPotential,
};
pub use slet::{solve_effective, solve_state, Branch, QuantumNumbers, SletSolution};
