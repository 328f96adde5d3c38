//! Radial potentials as exact power-law sums.
//!
//! Every quantity the expansion needs (V², S², γ and their derivatives up to
//! sixth order) stays inside the algebra of finite sums `Σ cᵢ r^pᵢ`, so the
//! potentials are stored symbolically and evaluated analytically.

use std::ops::{Add, Mul, Neg};

use serde::Serialize;

use crate::error::{Result, SletError};

/// Highest derivative order the expansion coefficients require.
pub const MAX_DERIVATIVE_ORDER: usize = 6;

/// A single term `coefficient · r^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerTerm {
    pub coefficient: f64,
    pub exponent: f64,
}

impl PowerTerm {
    pub fn new(coefficient: f64, exponent: f64) -> Self {
        Self {
            coefficient,
            exponent,
        }
    }

    pub fn eval(&self, r: f64) -> f64 {
        self.coefficient * pow(r, self.exponent)
    }

    fn derivative(&self, order: usize, r: f64) -> f64 {
        let mut factor = self.coefficient;
        for i in 0..order {
            factor *= self.exponent - i as f64;
            if factor == 0.0 {
                return 0.0;
            }
        }
        factor * pow(r, self.exponent - order as f64)
    }
}

fn pow(r: f64, p: f64) -> f64 {
    if p == p.trunc() && p.abs() <= i32::MAX as f64 {
        r.powi(p as i32)
    } else {
        r.powf(p)
    }
}

/// Normalized sum of power terms: exponents unique and ascending, no zero
/// coefficients.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
#[serde(transparent)]
pub struct RadialPotential {
    terms: Vec<PowerTerm>,
}

impl RadialPotential {
    pub fn new(terms: impl IntoIterator<Item = PowerTerm>) -> Result<Self> {
        let terms: Vec<PowerTerm> = terms.into_iter().collect();
        if let Some(bad) = terms
            .iter()
            .find(|t| !t.coefficient.is_finite() || !t.exponent.is_finite())
        {
            return Err(SletError::InvalidPotential(format!(
                "non-finite term {} r^{}",
                bad.coefficient, bad.exponent
            )));
        }
        Ok(Self::normalized(terms))
    }

    fn normalized(mut terms: Vec<PowerTerm>) -> Self {
        terms.sort_by(|a, b| a.exponent.total_cmp(&b.exponent));
        let mut merged: Vec<PowerTerm> = Vec::with_capacity(terms.len());
        for term in terms {
            match merged.last_mut() {
                Some(last) if last.exponent == term.exponent => {
                    last.coefficient += term.coefficient;
                }
                _ => merged.push(term),
            }
        }
        merged.retain(|t| t.coefficient != 0.0);
        Self { terms: merged }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(value: f64) -> Self {
        Self::normalized(vec![PowerTerm::new(value, 0.0)])
    }

    /// The Coulomb-like potential `-strength / r`.
    pub fn coulomb(strength: f64) -> Self {
        Self::normalized(vec![PowerTerm::new(-strength, -1.0)])
    }

    /// A single term `coefficient · r^exponent`.
    pub fn monomial(coefficient: f64, exponent: f64) -> Self {
        Self::normalized(vec![PowerTerm::new(coefficient, exponent)])
    }

    pub fn terms(&self) -> &[PowerTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the `r^exponent` term, zero if absent.
    pub fn coefficient(&self, exponent: f64) -> f64 {
        self.terms
            .iter()
            .find(|t| t.exponent == exponent)
            .map_or(0.0, |t| t.coefficient)
    }

    /// Term with the largest exponent, if any.
    pub fn leading_term(&self) -> Option<PowerTerm> {
        self.terms.last().copied()
    }

    pub fn eval(&self, r: f64) -> f64 {
        self.terms.iter().map(|t| t.eval(r)).sum()
    }

    /// Analytic derivative of the given order (0 through 6) at `r > 0`.
    pub fn derivative(&self, order: usize, r: f64) -> Result<f64> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(SletError::DomainError(format!(
                "potential evaluated at r = {r}, need r > 0"
            )));
        }
        if order > MAX_DERIVATIVE_ORDER {
            return Err(SletError::DomainError(format!(
                "derivative order {order} exceeds {MAX_DERIVATIVE_ORDER}"
            )));
        }
        Ok(self.terms.iter().map(|t| t.derivative(order, r)).sum())
    }

    /// Value and derivatives of orders 0..=6 at `r`.
    pub fn jet(&self, r: f64) -> Result<[f64; MAX_DERIVATIVE_ORDER + 1]> {
        let mut out = [0.0; MAX_DERIVATIVE_ORDER + 1];
        for (order, slot) in out.iter_mut().enumerate() {
            *slot = self.derivative(order, r)?;
        }
        Ok(out)
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::normalized(
            self.terms
                .iter()
                .map(|t| PowerTerm::new(t.coefficient * factor, t.exponent))
                .collect(),
        )
    }
}

impl Add for &RadialPotential {
    type Output = RadialPotential;

    fn add(self, rhs: &RadialPotential) -> RadialPotential {
        RadialPotential::normalized(self.terms.iter().chain(&rhs.terms).copied().collect())
    }
}

impl Add for RadialPotential {
    type Output = RadialPotential;

    fn add(self, rhs: RadialPotential) -> RadialPotential {
        &self + &rhs
    }
}

impl Mul for &RadialPotential {
    type Output = RadialPotential;

    fn mul(self, rhs: &RadialPotential) -> RadialPotential {
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for a in &self.terms {
            for b in &rhs.terms {
                terms.push(PowerTerm::new(
                    a.coefficient * b.coefficient,
                    a.exponent + b.exponent,
                ));
            }
        }
        RadialPotential::normalized(terms)
    }
}

impl Neg for &RadialPotential {
    type Output = RadialPotential;

    fn neg(self) -> RadialPotential {
        self.scale(-1.0)
    }
}

/// Mass plus Lorentz-vector and Lorentz-scalar potentials (units ħ = c = 1).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PotentialPair {
    mass: f64,
    vector: RadialPotential,
    scalar: RadialPotential,
}

impl PotentialPair {
    /// Rejects non-positive masses and any singular term other than `1/r`.
    pub fn new(mass: f64, vector: RadialPotential, scalar: RadialPotential) -> Result<Self> {
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(SletError::InvalidMass(mass));
        }
        for (name, potential) in [("vector", &vector), ("scalar", &scalar)] {
            if let Some(t) = potential
                .terms()
                .iter()
                .find(|t| t.exponent < 0.0 && t.exponent != -1.0)
            {
                return Err(SletError::InvalidPotential(format!(
                    "{name} term {} r^{} is more singular than Coulomb or non-Coulomb singular",
                    t.coefficient, t.exponent
                )));
            }
        }
        Ok(Self {
            mass,
            vector,
            scalar,
        })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn vector(&self) -> &RadialPotential {
        &self.vector
    }

    pub fn scalar(&self) -> &RadialPotential {
        &self.scalar
    }
}

/// Coulomb-subtracted form of the radial equation:
/// `-R'' + [l'(l'+1)/r² + γ(r) + 2E V(r)] R = E² R`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EffectiveProblem {
    pair: PotentialPair,
    a1: f64,
    a2: f64,
    ac: f64,
    gamma: RadialPotential,
}

/// Builds the Coulomb strengths, `A_c` and `γ(r) = -(V² - A1²/r²) + (S² - A2²/r²) + 2mS + m²`.
pub fn make_effective(pair: &PotentialPair) -> EffectiveProblem {
    let m = pair.mass;
    let a1 = -pair.vector.coefficient(-1.0);
    let a2 = -pair.scalar.coefficient(-1.0);

    // V² carries exactly a1·a1 at r^-2 (other singular terms are rejected
    // upstream), so adding the negated square cancels it bit-for-bit.
    let vector_reduced =
        &(&pair.vector * &pair.vector) + &RadialPotential::monomial(-a1 * a1, -2.0);
    let scalar_reduced =
        &(&pair.scalar * &pair.scalar) + &RadialPotential::monomial(-a2 * a2, -2.0);

    let gamma = [
        -&vector_reduced,
        scalar_reduced,
        pair.scalar.scale(2.0 * m),
        RadialPotential::constant(m * m),
    ]
    .into_iter()
    .fold(RadialPotential::zero(), |acc, p| acc + p);

    EffectiveProblem {
        pair: pair.clone(),
        a1,
        a2,
        ac: a1 * a1 - a2 * a2,
        gamma,
    }
}

impl EffectiveProblem {
    pub fn pair(&self) -> &PotentialPair {
        &self.pair
    }

    pub fn mass(&self) -> f64 {
        self.pair.mass
    }

    pub fn vector(&self) -> &RadialPotential {
        &self.pair.vector
    }

    pub fn scalar(&self) -> &RadialPotential {
        &self.pair.scalar
    }

    /// Strength of the `-A1/r` term of V.
    pub fn a1(&self) -> f64 {
        self.a1
    }

    /// Strength of the `-A2/r` term of S.
    pub fn a2(&self) -> f64 {
        self.a2
    }

    pub fn ac(&self) -> f64 {
        self.ac
    }

    pub fn gamma(&self) -> &RadialPotential {
        &self.gamma
    }

    /// `(l + 1/2)² - A_c`, i.e. `(l' + 1/2)²`.
    pub fn centrifugal_discriminant(&self, l: u32) -> f64 {
        let half = l as f64 + 0.5;
        half * half - self.ac
    }

    pub fn l_prime(&self, l: u32) -> Result<f64> {
        effective_l(l, self.ac)
    }

    /// True when both potentials are pure `1/r` terms (or absent).
    pub fn is_pure_coulomb(&self) -> bool {
        let only_coulomb = |p: &RadialPotential| p.terms().iter().all(|t| t.exponent == -1.0);
        only_coulomb(&self.pair.vector) && only_coulomb(&self.pair.scalar)
    }
}

/// `l' = -1/2 + sqrt((l+1/2)² - A_c)`.
pub fn effective_l(l: u32, ac: f64) -> Result<f64> {
    let half = l as f64 + 0.5;
    let discriminant = half * half - ac;
    if !(discriminant >= 0.0) {
        return Err(SletError::SupercriticalCoupling {
            l,
            ac,
            discriminant,
        });
    }
    Ok(-0.5 + discriminant.sqrt())
}
