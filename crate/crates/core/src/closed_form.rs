//! Exact energies for pure Coulomb mixtures `V = -A1/r`, `S = -A2/r`.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SletError};
use crate::potential::{effective_l, EffectiveProblem};
use crate::slet::Branch;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedFormKind {
    VectorCoulomb,
    ScalarCoulomb,
    EqualMix,
    DiracEqualMix,
    GeneralCoulomb,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormResult {
    pub energy: f64,
    /// Effective principal quantum number (ñ, or n for the equal mix).
    pub n_tilde: f64,
    pub kind: ClosedFormKind,
    pub branch: Branch,
    pub n_r: u32,
    /// Orbital quantum number; for the Dirac form this is `j + 1/2`.
    pub l: f64,
}

fn check_mass(m: f64) -> Result<()> {
    if m > 0.0 && m.is_finite() {
        Ok(())
    } else {
        Err(SletError::InvalidMass(m))
    }
}

/// `E = m[1 + A1²/ñ²]^(-1/2)`, `ñ = n_r + 1/2 + sqrt((l+1/2)² - A1²)`.
pub fn vector_coulomb(m: f64, a1: f64, n_r: u32, l: u32) -> Result<ClosedFormResult> {
    check_mass(m)?;
    let l_prime = effective_l(l, a1 * a1)?;
    let n_tilde = n_r as f64 + 1.0 + l_prime;
    Ok(ClosedFormResult {
        energy: m / (1.0 + a1 * a1 / (n_tilde * n_tilde)).sqrt(),
        n_tilde,
        kind: ClosedFormKind::VectorCoulomb,
        branch: Branch::Particle,
        n_r,
        l: l as f64,
    })
}

/// `E = ±m[1 - A2²/ñ²]^(1/2)`, `ñ = n_r + 1/2 + sqrt((l+1/2)² + A2²)`.
pub fn scalar_coulomb(
    m: f64,
    a2: f64,
    n_r: u32,
    l: u32,
    branch: Branch,
) -> Result<ClosedFormResult> {
    check_mass(m)?;
    let half = l as f64 + 0.5;
    let n_tilde = n_r as f64 + 0.5 + (half * half + a2 * a2).sqrt();
    Ok(ClosedFormResult {
        energy: branch.sign() * m * (1.0 - a2 * a2 / (n_tilde * n_tilde)).sqrt(),
        n_tilde,
        kind: ClosedFormKind::ScalarCoulomb,
        branch,
        n_r,
        l: l as f64,
    })
}

fn equal_mix_energy(m: f64, a: f64, n: f64) -> f64 {
    m * (1.0 - 2.0 * a * a / (n * n + a * a))
}

/// `E = m[1 - 2A²/(n² + A²)]`, `n = n_r + l + 1`.
pub fn equal_mix(m: f64, a: f64, n_r: u32, l: u32) -> Result<ClosedFormResult> {
    check_mass(m)?;
    let n = (n_r + l + 1) as f64;
    Ok(ClosedFormResult {
        energy: equal_mix_energy(m, a, n),
        n_tilde: n,
        kind: ClosedFormKind::EqualMix,
        branch: Branch::Particle,
        n_r,
        l: l as f64,
    })
}

/// Dirac particle in `V = S = -A/r`: `E = m[1 - 2A²/((n_r + |κ| + 1)² + A²)]`, `|κ| = j + 1/2`.
pub fn dirac_equal_mix(m: f64, a: f64, n_r: u32, j: f64) -> Result<ClosedFormResult> {
    check_mass(m)?;
    let kappa = j + 0.5;
    if !(kappa >= 1.0) || kappa.fract() != 0.0 {
        return Err(SletError::InvalidQuantumNumber(format!(
            "j = {j} is not a positive half-integer"
        )));
    }
    let n = n_r as f64 + kappa + 1.0;
    Ok(ClosedFormResult {
        energy: equal_mix_energy(m, a, n),
        n_tilde: n,
        kind: ClosedFormKind::DiracEqualMix,
        branch: Branch::Particle,
        n_r,
        l: kappa,
    })
}

/// General vector plus scalar Coulomb mixture:
/// `E = m[-A1A2 ± sqrt(A1²A2² + (ñ² + A1²)(ñ² - A2²))] / (ñ² + A1²)`, `ñ = n_r + l' + 1`.
pub fn general_coulomb(
    m: f64,
    a1: f64,
    a2: f64,
    n_r: u32,
    l: u32,
    branch: Branch,
) -> Result<ClosedFormResult> {
    check_mass(m)?;
    let l_prime = effective_l(l, a1 * a1 - a2 * a2)?;
    let n_tilde = n_r as f64 + l_prime + 1.0;
    let n2 = n_tilde * n_tilde;
    let root = (a1 * a1 * a2 * a2 + (n2 + a1 * a1) * (n2 - a2 * a2)).sqrt();
    Ok(ClosedFormResult {
        energy: m * (-a1 * a2 + branch.sign() * root) / (n2 + a1 * a1),
        n_tilde,
        kind: ClosedFormKind::GeneralCoulomb,
        branch,
        n_r,
        l: l as f64,
    })
}

/// Picks the most specific closed form for a pure Coulomb problem.
pub fn for_problem(
    effective: &EffectiveProblem,
    n_r: u32,
    l: u32,
    branch: Branch,
) -> Result<ClosedFormResult> {
    if !effective.is_pure_coulomb() {
        return Err(SletError::NoClosedForm(
            "potentials contain terms other than 1/r".into(),
        ));
    }
    let (m, a1, a2) = (effective.mass(), effective.a1(), effective.a2());
    match branch {
        Branch::Particle if a2 == 0.0 => vector_coulomb(m, a1, n_r, l),
        _ if a1 == 0.0 => scalar_coulomb(m, a2, n_r, l, branch),
        Branch::Particle if a1 == a2 => equal_mix(m, a1, n_r, l),
        _ => general_coulomb(m, a1, a2, n_r, l, branch),
    }
}
