//! Ground-state reference tables for Coulomb plus linear potentials (`m = 1`).
//!
//! Tables 1 and 2 put the linear term in the vector potential,
//! `V = -A1/r + k r`, `S = 0`; tables 3 and 4 put it in the scalar,
//! `V = -A1/r`, `S = k r`. Each row carries the expansion's three partial
//! sums as printed and an independent reference written as an upper bound
//! with the differing trailing digits of the lower bound in parentheses,
//! e.g. `1.027622(19)` for the interval `[1.027619, 1.027622]`.

use std::sync::OnceLock;

use serde::Deserialize;

use crate::potential::{PotentialPair, RadialPotential};
use crate::Result;

const DATA: &str = include_str!("../data/golden_tables.csv");

/// A decimal as printed, remembering how many fractional digits it had.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Printed {
    pub value: f64,
    pub decimals: u32,
}

impl Printed {
    pub fn parse(text: &str) -> Option<Self> {
        let text = text.trim();
        let value: f64 = text.parse().ok()?;
        let decimals = text
            .split_once('.')
            .map_or(0, |(_, frac)| frac.len() as u32);
        Some(Self { value, decimals })
    }

    /// One unit in the last printed digit.
    pub fn unit(&self) -> f64 {
        10f64.powi(-(self.decimals as i32))
    }

    /// Deviation from `x` in units of the last printed digit.
    pub fn units_off(&self, x: f64) -> f64 {
        (x - self.value).abs() / self.unit()
    }
}

/// Reference interval `[lo, hi]`; a value printed without parentheses is a
/// point, `lo == hi`.
#[derive(Debug, Clone, PartialEq)]
pub struct Reference {
    pub text: String,
    pub lo: f64,
    pub hi: f64,
    pub decimals: u32,
}

impl Reference {
    pub fn parse(text: &str) -> Option<Self> {
        let text = text.trim();
        let (upper, lower) = match text.split_once('(') {
            Some((upper, rest)) => {
                let digits = rest.strip_suffix(')')?;
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return None;
                }
                let keep = upper.len().checked_sub(digits.len())?;
                if upper[keep..].contains('.') {
                    return None;
                }
                (upper, format!("{}{}", &upper[..keep], digits))
            }
            None => (text, text.to_string()),
        };
        let hi = Printed::parse(upper)?;
        let lo: f64 = lower.parse().ok()?;
        Some(Self {
            text: text.to_string(),
            lo: lo.min(hi.value),
            hi: lo.max(hi.value),
            decimals: hi.decimals,
        })
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Distance from `x` to the interval, zero inside.
    pub fn distance(&self, x: f64) -> f64 {
        if x < self.lo {
            self.lo - x
        } else if x > self.hi {
            x - self.hi
        } else {
            0.0
        }
    }

    /// Membership allowing half a unit of the last printed digit on either
    /// side, since the printed bounds are themselves rounded.
    pub fn contains_rounded(&self, x: f64) -> bool {
        self.distance(x) <= 0.5 * 10f64.powi(-(self.decimals as i32))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinearCoupling {
    Vector,
    Scalar,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GoldenRow {
    pub table: u8,
    pub a1: f64,
    pub k: f64,
    pub reference: Reference,
    pub e0: Printed,
    pub e0_plus_e2: Printed,
    pub e_full: Printed,
}

impl GoldenRow {
    pub fn coupling(&self) -> LinearCoupling {
        coupling_of(self.table)
    }

    pub fn pair(&self) -> Result<PotentialPair> {
        table_pair(self.table, self.a1, self.k)
    }

    /// The three printed columns in order `E0`, `E0 + E2/l̄²`, full.
    pub fn columns(&self) -> [Printed; 3] {
        [self.e0, self.e0_plus_e2, self.e_full]
    }
}

/// Tables 1 and 2 use a vector linear term, tables 3 and 4 a scalar one.
pub fn coupling_of(table: u8) -> LinearCoupling {
    if table <= 2 {
        LinearCoupling::Vector
    } else {
        LinearCoupling::Scalar
    }
}

/// The potentials of a table row: `-A1/r` in `V` plus `k r` in `V` or `S`, `m = 1`.
pub fn table_pair(table: u8, a1: f64, k: f64) -> Result<PotentialPair> {
    let coulomb = RadialPotential::coulomb(a1);
    let linear = RadialPotential::monomial(k, 1.0);
    match coupling_of(table) {
        LinearCoupling::Vector => {
            PotentialPair::new(1.0, coulomb + linear, RadialPotential::zero())
        }
        LinearCoupling::Scalar => PotentialPair::new(1.0, coulomb, linear),
    }
}

#[derive(Deserialize)]
struct RawRow {
    table: u8,
    #[serde(rename = "A1")]
    a1: f64,
    k: f64,
    reference: String,
    #[serde(rename = "E0")]
    e0: String,
    #[serde(rename = "E0_plus_E2")]
    e0_plus_e2: String,
    #[serde(rename = "E_full")]
    e_full: String,
}

fn parse_rows() -> Vec<GoldenRow> {
    let mut reader = csv::Reader::from_reader(DATA.as_bytes());
    reader
        .deserialize::<RawRow>()
        .map(|raw| {
            let raw = raw.expect("embedded golden table is well-formed");
            let printed = |s: &str| Printed::parse(s).expect("embedded golden value parses");
            GoldenRow {
                table: raw.table,
                a1: raw.a1,
                k: raw.k,
                reference: Reference::parse(&raw.reference).expect("embedded reference parses"),
                e0: printed(&raw.e0),
                e0_plus_e2: printed(&raw.e0_plus_e2),
                e_full: printed(&raw.e_full),
            }
        })
        .collect()
}

/// All embedded rows, tables 1 to 4, in printed order.
pub fn rows() -> &'static [GoldenRow] {
    static ROWS: OnceLock<Vec<GoldenRow>> = OnceLock::new();
    ROWS.get_or_init(parse_rows)
}

/// Rows of one table, in printed order.
pub fn table(id: u8) -> impl Iterator<Item = &'static GoldenRow> {
    rows().iter().filter(move |r| r.table == id)
}
