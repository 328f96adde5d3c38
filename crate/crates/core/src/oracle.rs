//! Direct shooting solution of the radial equation, used to check the expansion.
//!
//! With `x = ln r` and `R = e^(x/2) y` the radial equation becomes
//! `y'' = K(x, E) y`, `K = (l' + 1/2)² + r²[γ(r) + 2E V(r) - E²]`, which is
//! smooth at the origin even though `R ~ r^(l'+1)` is not. Numerov steps on
//! a uniform grid in `x` therefore keep their full fourth-order accuracy.
//!
//! The eigenvalue is isolated by bisection on the node count of the outward
//! solution and then polished by Brent's method on the normalized Wronskian
//! of outward and inward solutions at the outer turning point.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SletError, Stage};
use crate::potential::{EffectiveProblem, RadialPotential};
use crate::roots::brent;
use crate::slet::{length_scale, Branch, QuantumNumbers};

/// Default Numerov step in `ln r`.
pub const DEFAULT_LOG_STEP: f64 = 0.0025;
/// Smallest allowed number of grid points.
pub const MIN_POINTS: usize = 1000;
/// `r_min` relative to the problem's length scale.
const INNER_RATIO: f64 = 1e-8;
/// Required `U(r_max)·r_max²` at the outer edge.
const EDGE_BARRIER: f64 = 400.0;
/// Required WKB decay exponent `∫ sqrt(K) dx` between the outer turning point and `r_max`.
const EDGE_ACTION: f64 = 40.0;
/// Step in `ln r` of the coarse march that places `r_max`.
const MARCH_STEP: f64 = 0.02;
/// The march gives up `MARCH_SPAN` e-folds beyond the length scale.
const MARCH_SPAN: f64 = 50.0;
/// Upper bound on `h²·max|K|`.
const STIFFNESS_LIMIT: f64 = 1.0;
/// Bracket width, in units of the mass, at which the grid is frozen.
const FREEZE_WIDTH: f64 = 1e-6;
const MAX_BISECTIONS: usize = 200;
const MAX_DOUBLINGS: usize = 40;
/// Offset of default brackets from a continuum threshold, in units of the mass.
const THRESHOLD_GAP: f64 = 1e-6;
const RESCALE: f64 = 1e150;

/// Uniform grid in `ln r`: `r_i = r_min·e^(i·h)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialGrid {
    pub r_min: f64,
    pub r_max: f64,
    /// Step in `ln r`.
    pub h: f64,
    pub n_points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub energy: f64,
    pub nodes: usize,
    pub bracket: (f64, f64),
    pub grid: RadialGrid,
    /// Normalized Wronskian of the matched solutions at the converged energy.
    pub matching_defect: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleSettings {
    /// Numerov step in `ln r`; reduced automatically where the equation is stiff.
    pub log_step: f64,
}

impl Default for OracleSettings {
    fn default() -> Self {
        Self {
            log_step: DEFAULT_LOG_STEP,
        }
    }
}

/// Coefficient of `R` in `-R'' + U(r, E) R = 0`:
/// `U = l'(l'+1)/r² + γ(r) + 2E V(r) - E²`.
pub fn effective_term(effective: &EffectiveProblem, l: u32, energy: f64, r: f64) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(SletError::DomainError(format!(
            "effective term evaluated at r = {r}, need r > 0"
        )));
    }
    let l_prime = effective.l_prime(l)?;
    Ok(l_prime * (l_prime + 1.0) / (r * r)
        + effective.gamma().eval(r)
        + 2.0 * energy * effective.vector().eval(r)
        - energy * energy)
}

/// `γ + 2E V - E²` as an exact power sum.
fn asymptotic_part(effective: &EffectiveProblem, energy: f64) -> RadialPotential {
    effective.gamma()
        + &(&effective.vector().scale(2.0 * energy) + &RadialPotential::constant(-energy * energy))
}

/// Checks that `U(r, E)` stays positive as `r → ∞`.
fn check_confining(effective: &EffectiveProblem, energy: f64) -> Result<()> {
    match asymptotic_part(effective, energy).leading_term() {
        Some(t) if t.exponent >= 0.0 && t.coefficient > 0.0 => Ok(()),
        Some(t) => Err(SletError::NotConfining {
            energy,
            exponent: t.exponent,
            coefficient: t.coefficient,
        }),
        None => Err(SletError::NotConfining {
            energy,
            exponent: 0.0,
            coefficient: 0.0,
        }),
    }
}

#[derive(Default)]
struct NodeCounter {
    last: f64,
    count: usize,
}

impl NodeCounter {
    fn push(&mut self, y: f64) {
        if y != 0.0 {
            if self.last != 0.0 && y.signum() != self.last.signum() {
                self.count += 1;
            }
            self.last = y;
        }
    }
}

struct Shooter<'a> {
    effective: &'a EffectiveProblem,
    s: f64,
    x_min: f64,
    x_anchor: f64,
    log_step: f64,
}

/// Energy-independent parts of `K`: `K_i = g_i + 2E v_i - E² q_i`.
struct Grid {
    r_min: f64,
    h: f64,
    s: f64,
    r: Vec<f64>,
    g: Vec<f64>,
    v: Vec<f64>,
    q: Vec<f64>,
    c_gamma: f64,
    c_vector: f64,
}

impl<'a> Shooter<'a> {
    fn new(effective: &'a EffectiveProblem, l_prime: f64, n_r: u32, log_step: f64) -> Self {
        let scale = length_scale(effective, l_prime, n_r);
        Self {
            effective,
            s: l_prime + 0.5,
            x_min: (scale * INNER_RATIO).ln(),
            x_anchor: scale.ln(),
            log_step,
        }
    }

    fn k_at(&self, x: f64, energy: f64) -> f64 {
        let r = x.exp();
        let u = self.effective.gamma().eval(r) + 2.0 * energy * self.effective.vector().eval(r)
            - energy * energy;
        self.s * self.s + r * r * u
    }

    /// Grid reaching deep into the outer forbidden region at `energy`, or
    /// `None` when no such region exists (energy in a continuum).
    fn grid_for(&self, energy: f64) -> Option<Grid> {
        let x_cap = self.x_anchor + MARCH_SPAN;
        let mut x = self.x_min;
        let mut action = 0.0;
        let mut k_max: f64 = 0.0;
        let x_max = loop {
            let k = self.k_at(x, energy);
            if !k.is_finite() {
                return None;
            }
            k_max = k_max.max(k.abs());
            if k < 0.0 {
                action = 0.0;
            } else {
                action += k.sqrt() * MARCH_STEP;
            }
            if x >= self.x_anchor && k - 0.25 >= EDGE_BARRIER && action >= EDGE_ACTION {
                break x;
            }
            x += MARCH_STEP;
            if x > x_cap {
                return None;
            }
        };

        let span = x_max - self.x_min;
        let h = self
            .log_step
            .min((STIFFNESS_LIMIT / k_max).sqrt())
            .min(span / (MIN_POINTS - 1) as f64);
        let n = (span / h).ceil() as usize + 1;
        Some(Grid::new(self.effective, self.s, self.x_min, h, n))
    }
}

impl Grid {
    fn new(effective: &EffectiveProblem, s: f64, x_min: f64, h: f64, n: usize) -> Self {
        let r: Vec<f64> = (0..n).map(|i| (x_min + i as f64 * h).exp()).collect();
        let q: Vec<f64> = r.iter().map(|r| r * r).collect();
        let g = r
            .iter()
            .zip(&q)
            .map(|(&r, q)| s * s + q * effective.gamma().eval(r))
            .collect();
        let v = r
            .iter()
            .zip(&q)
            .map(|(&r, q)| q * effective.vector().eval(r))
            .collect();
        Self {
            r_min: r[0],
            h,
            s,
            r,
            g,
            v,
            q,
            c_gamma: effective.gamma().coefficient(-1.0),
            c_vector: effective.vector().coefficient(-1.0),
        }
    }

    fn len(&self) -> usize {
        self.r.len()
    }

    fn describe(&self) -> RadialGrid {
        RadialGrid {
            r_min: self.r_min,
            r_max: self.r[self.len() - 1],
            h: self.h,
            n_points: self.len(),
        }
    }

    fn k(&self, i: usize, energy: f64) -> f64 {
        self.g[i] + energy * (2.0 * self.v[i] - energy * self.q[i])
    }

    fn f(&self, i: usize, energy: f64) -> f64 {
        1.0 - self.h * self.h / 12.0 * self.k(i, energy)
    }

    /// Regular solution `y ~ r^(l'+1/2)(1 + a r)`, normalized to 1 at `r_min`.
    fn seed(&self, i: usize, energy: f64) -> f64 {
        let a = (self.c_gamma + 2.0 * energy * self.c_vector) / (2.0 * self.s + 1.0);
        (self.s * i as f64 * self.h).exp() * (1.0 + a * self.r[i])
    }

    /// Integrates outward through index `upto`; returns the node count and
    /// `(y[upto], y[upto + 1])` (the latter is NaN when `upto` is the last point).
    ///
    /// Numerov in summed form: with `z = f y`, `Δ_i = Δ_(i-1) + h² K_i y_i` and
    /// `z_(i+1) = z_i + Δ_i`, which keeps roundoff from growing linearly where
    /// `K ≈ 0` (critical `l' = -1/2`).
    fn outward(&self, energy: f64, upto: usize) -> (usize, f64, f64) {
        let h2 = self.h * self.h;
        let mut nodes = NodeCounter::default();
        let (y0, mut y) = (self.seed(0, energy), self.seed(1, energy));
        nodes.push(y0);
        nodes.push(y);
        let mut z = self.f(1, energy) * y;
        let mut delta = z - self.f(0, energy) * y0;
        let mut prev = y0;
        let last = (upto + 1).min(self.len() - 1);
        for i in 2..=last {
            delta += h2 * self.k(i - 1, energy) * y;
            z += delta;
            let next = z / self.f(i, energy);
            if i <= upto {
                nodes.push(next);
            }
            prev = y;
            y = next;
            if y.abs() > RESCALE {
                (y, prev, z, delta) = (y / RESCALE, prev / RESCALE, z / RESCALE, delta / RESCALE);
            }
        }
        if upto + 1 < self.len() {
            (nodes.count, prev, y)
        } else {
            (nodes.count, y, f64::NAN)
        }
    }

    /// Integrates inward from `y(r_max) = 0` down to index `downto`; returns
    /// the node count on `[downto, n-2]` and `(y[downto], y[downto + 1])`.
    fn inward(&self, energy: f64, downto: usize) -> (usize, f64, f64) {
        let h2 = self.h * self.h;
        let n = self.len();
        let mut nodes = NodeCounter::default();
        let (mut prev, mut y) = (0.0, 1.0);
        nodes.push(y);
        let mut z = self.f(n - 2, energy) * y;
        let mut delta = z;
        for i in (downto..n - 2).rev() {
            delta += h2 * self.k(i + 1, energy) * y;
            z += delta;
            let next = z / self.f(i, energy);
            nodes.push(next);
            prev = y;
            y = next;
            if y.abs() > RESCALE {
                (y, prev, z, delta) = (y / RESCALE, prev / RESCALE, z / RESCALE, delta / RESCALE);
            }
        }
        (nodes.count, y, prev)
    }

    fn count_nodes(&self, energy: f64) -> usize {
        self.outward(energy, self.len() - 1).0
    }

    /// Outer classical turning point, or the bottom of `K` when nothing is allowed.
    fn matching_index(&self, energy: f64) -> usize {
        let n = self.len();
        let index = (0..n)
            .rev()
            .find(|&i| self.k(i, energy) < 0.0)
            .unwrap_or_else(|| {
                (0..n)
                    .min_by(|&a, &b| self.k(a, energy).total_cmp(&self.k(b, energy)))
                    .unwrap_or(0)
            });
        index.clamp(1, n - 3)
    }

    fn defect(&self, energy: f64, m: usize) -> f64 {
        let (_, o0, o1) = self.outward(energy, m);
        let (_, i0, i1) = self.inward(energy, m);
        (o0 * i1 - o1 * i0) / (o0.hypot(o1) * i0.hypot(i1))
    }

    fn matched_nodes(&self, energy: f64, m: usize) -> usize {
        self.outward(energy, m).0 + self.inward(energy, m).0
    }
}

fn count_at(shooter: &Shooter, energy: f64) -> usize {
    shooter
        .grid_for(energy)
        .map_or(usize::MAX, |g| g.count_nodes(energy))
}

/// Default energy bracket for the requested state.
///
/// Coulomb-bound problems use the interval below the continuum threshold;
/// confining problems start from zero and double outward until the bracket
/// holds more than `n_r` nodes. A zero vector potential gives a spectrum
/// symmetric under `E → -E`, so each branch then keeps to its own half.
pub fn default_bracket(
    effective: &EffectiveProblem,
    qn: QuantumNumbers,
    branch: Branch,
) -> Result<(f64, f64)> {
    let m = effective.mass();
    let confining = effective
        .gamma()
        .terms()
        .iter()
        .chain(effective.vector().terms())
        .any(|t| t.exponent > 0.0);

    if confining {
        let l_prime = effective.l_prime(qn.l)?;
        let shooter = Shooter::new(effective, l_prime, qn.n_r, DEFAULT_LOG_STEP);
        let sign = branch.sign();
        let mut far = 2.0 * m;
        for _ in 0..MAX_DOUBLINGS {
            check_confining(effective, sign * far)?;
            if count_at(&shooter, sign * far) > qn.n_r as usize {
                break;
            }
            far *= 2.0;
        }
        return Ok(match branch {
            Branch::Particle => (0.0, far),
            Branch::Antiparticle => (-far, 0.0),
        });
    }

    let v0 = effective.vector().coefficient(0.0);
    let g0 = effective.gamma().coefficient(0.0);
    let radicand = v0 * v0 + g0;
    if !(radicand > 0.0) {
        return Err(SletError::NotConfining {
            energy: v0,
            exponent: 0.0,
            coefficient: radicand,
        });
    }
    let half_width = radicand.sqrt();
    let gap = THRESHOLD_GAP * m;
    let (lo, hi) = (v0 - half_width + gap, v0 + half_width - gap);
    Ok(match (effective.vector().is_zero(), branch) {
        (true, Branch::Particle) => (v0, hi),
        (true, Branch::Antiparticle) => (lo, v0),
        (false, _) => (lo, hi),
    })
}

/// Finds the state with `n_r` nodes inside `bracket` using the default settings.
pub fn find_bound_state(
    effective: &EffectiveProblem,
    qn: QuantumNumbers,
    bracket: (f64, f64),
) -> Result<OracleResult> {
    find_bound_state_with(effective, qn, bracket, &OracleSettings::default())
}

pub fn find_bound_state_with(
    effective: &EffectiveProblem,
    qn: QuantumNumbers,
    bracket: (f64, f64),
    settings: &OracleSettings,
) -> Result<OracleResult> {
    search(effective, qn, bracket, settings).map_err(|e| e.at(Stage::Oracle))
}

fn search(
    effective: &EffectiveProblem,
    qn: QuantumNumbers,
    (lo, hi): (f64, f64),
    settings: &OracleSettings,
) -> Result<OracleResult> {
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(SletError::DomainError(format!(
            "energy bracket [{lo}, {hi}] is empty or not finite"
        )));
    }
    if !(settings.log_step > 0.0) {
        return Err(SletError::DomainError(format!(
            "log step {} must be positive",
            settings.log_step
        )));
    }
    check_confining(effective, lo)?;
    check_confining(effective, hi)?;

    let l_prime = effective.l_prime(qn.l)?;
    let shooter = Shooter::new(effective, l_prime, qn.n_r, settings.log_step);
    let target = qn.n_r as usize;
    let exhausted = |nodes_lo, nodes_hi| SletError::BracketExhausted {
        lo,
        hi,
        nodes_lo,
        nodes_hi,
    };

    // `below` has at most n_r nodes, `above` more; either may be the larger energy.
    let (n_lo, n_hi) = (count_at(&shooter, lo), count_at(&shooter, hi));
    let (mut below, mut above, mut n_below, mut n_above) = if n_lo <= target && n_hi > target {
        (lo, hi, n_lo, n_hi)
    } else if n_hi <= target && n_lo > target {
        (hi, lo, n_hi, n_lo)
    } else {
        return Err(exhausted(n_lo, n_hi));
    };

    let width = FREEZE_WIDTH * effective.mass();
    let isolated = |b: f64, a: f64, nb: usize, na: usize| {
        (a - b).abs() <= width && nb == target && na == target + 1
    };
    let mut iterations = 0;
    while !isolated(below, above, n_below, n_above) {
        iterations += 1;
        if iterations > MAX_BISECTIONS {
            return Err(exhausted(n_lo, n_hi));
        }
        let mid = 0.5 * (below + above);
        let n_mid = count_at(&shooter, mid);
        if n_mid <= target {
            (below, n_below) = (mid, n_mid);
        } else {
            (above, n_above) = (mid, n_mid);
        }
    }

    let mid = 0.5 * (below + above);
    let grid = shooter.grid_for(mid).ok_or_else(|| exhausted(n_lo, n_hi))?;
    if grid.count_nodes(below) != target || grid.count_nodes(above) != target + 1 {
        return Err(exhausted(n_lo, n_hi));
    }
    let m = grid.matching_index(mid);
    let root = brent(|e| grid.defect(e, m), below, above, 0.0, MAX_BISECTIONS)
        .ok_or_else(|| exhausted(n_below, n_above))?;

    let nodes = grid.matched_nodes(root.x, m);
    if nodes != target {
        return Err(SletError::NodeMismatch {
            expected: qn.n_r,
            found: nodes,
        });
    }
    Ok(OracleResult {
        energy: root.x,
        nodes,
        bracket: (below.min(above), below.max(above)),
        grid: grid.describe(),
        matching_defect: root.fx,
    })
}
