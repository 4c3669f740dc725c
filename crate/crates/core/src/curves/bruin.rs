//! Embedded solution tables for 16a^5 + b^5 = d^2 and b^5 - 4a^5 = d^2 in
//! coprime integers, with a bounded exhaustive search that corroborates them.
//!
//! The tables are trusted input: the certificate verifier checks that a
//! lookup quotes them exactly, and the search below only confirms that no
//! unlisted small solution exists.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use crate::arith::{i128_sqrt_exact, int_sqrt_exact};

/// A coprime solution `[a, b, d]`.
pub type Triple = [BigInt; 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EquationId {
    /// 16a^5 + b^5 = d^2
    E16,
    /// b^5 - 4a^5 = d^2
    E4,
}

impl EquationId {
    pub const ALL: [EquationId; 2] = [EquationId::E16, EquationId::E4];

    /// The fifth-power side evaluated at (a, b).
    pub fn lhs(self, a: &BigInt, b: &BigInt) -> BigInt {
        let (a5, b5) = (a.pow(5u32), b.pow(5u32));
        match self {
            EquationId::E16 => a5 * 16 + b5,
            EquationId::E4 => b5 - a5 * 4,
        }
    }

    fn lhs_i128(self, a: i128, b: i128) -> Option<i128> {
        let (a5, b5) = (a.checked_pow(5)?, b.checked_pow(5)?);
        match self {
            EquationId::E16 => a5.checked_mul(16)?.checked_add(b5),
            EquationId::E4 => b5.checked_sub(a5.checked_mul(4)?),
        }
    }

    /// `lhs(a, b) - d^2` in the given variable names.
    pub fn polynomial(self, a: &str, b: &str, d: &str) -> super::MPoly {
        let text = match self {
            EquationId::E16 => format!("16*{a}^5 + {b}^5 - {d}^2"),
            EquationId::E4 => format!("{b}^5 - 4*{a}^5 - {d}^2"),
        };
        super::mp(&text)
    }

    pub fn holds(self, t: &Triple) -> bool {
        self.lhs(&t[0], &t[1]) == &t[2] * &t[2]
    }
}

impl fmt::Display for EquationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquationId::E16 => write!(f, "16a^5 + b^5 = d^2"),
            EquationId::E4 => write!(f, "b^5 - 4a^5 = d^2"),
        }
    }
}

/// The region of coprime (a, b) a table entry speaks for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    AbNonzero,
    BNonzero,
}

impl Scope {
    pub fn contains(self, a: &BigInt, b: &BigInt) -> bool {
        match self {
            Scope::AbNonzero => !a.is_zero() && !b.is_zero(),
            Scope::BNonzero => !b.is_zero(),
        }
    }
}

/// Parametric solution families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// a = 0, b = m^2, d = ±m^5; coprimality forces m = ±1.
    AZero,
}

impl Family {
    pub fn contains(self, t: &Triple) -> bool {
        match self {
            Family::AZero => t[0].is_zero(),
        }
    }
}

#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactEntry {
    pub equation: EquationId,
    pub scope: Scope,
    #[serde_as(as = "Vec<[DisplayFromStr; 3]>")]
    pub solutions: Vec<Triple>,
    pub families: Vec<Family>,
    pub citation: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactTable {
    pub entries: Vec<FactEntry>,
}

fn triple(a: i64, b: i64, d: i64) -> Triple {
    [BigInt::from(a), BigInt::from(b), BigInt::from(d)]
}

impl FactTable {
    /// Bruin's classification of the coprime solutions.
    pub fn embedded() -> Self {
        let citation = "N. Bruin, Chabauty methods and covering techniques applied to \
                        generalized Fermat equations, CWI Tract 133 (2002)";
        FactTable {
            entries: vec![
                FactEntry {
                    equation: EquationId::E16,
                    scope: Scope::AbNonzero,
                    solutions: vec![triple(-1, 2, 4), triple(-1, 2, -4)],
                    families: vec![],
                    citation: citation.to_string(),
                },
                FactEntry {
                    equation: EquationId::E4,
                    scope: Scope::BNonzero,
                    solutions: vec![triple(-1, 2, 6), triple(-1, 2, -6)],
                    families: vec![Family::AZero],
                    citation: citation.to_string(),
                },
            ],
        }
    }

    pub fn entry(&self, eq: EquationId) -> Option<&FactEntry> {
        self.entries.iter().find(|e| e.equation == eq)
    }

    /// Whether `t` is listed, lies in a listed family, or falls outside the
    /// entry's scope.
    pub fn explains(&self, eq: EquationId, t: &Triple) -> bool {
        let Some(entry) = self.entry(eq) else { return false };
        !entry.scope.contains(&t[0], &t[1])
            || entry.solutions.contains(t)
            || entry.families.iter().any(|f| f.contains(t))
    }

    /// Solutions found by the bounded search that the table does not explain.
    pub fn unexplained(&self, eq: EquationId, bound: u64) -> Vec<Triple> {
        corroborate_bruin(eq, bound)
            .into_iter()
            .filter(|t| !self.explains(eq, t))
            .collect()
    }
}

/// Every coprime solution with |a|, |b| <= bound, sorted, d of both signs.
pub fn corroborate_bruin(eq: EquationId, bound: u64) -> Vec<Triple> {
    let bound = bound as i64;
    let found: BTreeSet<Triple> = (-bound..=bound)
        .into_par_iter()
        .flat_map_iter(|a| {
            (-bound..=bound).filter_map(move |b| {
                if a.gcd(&b) != 1 {
                    return None;
                }
                let root = match eq.lhs_i128(a as i128, b as i128) {
                    Some(v) => i128_sqrt_exact(v).map(BigInt::from),
                    None => {
                        let v = eq.lhs(&BigInt::from(a), &BigInt::from(b));
                        if v.is_negative() {
                            None
                        } else {
                            int_sqrt_exact(&v)
                        }
                    }
                }?;
                Some((a, b, root))
            })
        })
        .flat_map_iter(|(a, b, d)| {
            let mut v = vec![[BigInt::from(a), BigInt::from(b), d.clone()]];
            if !d.is_zero() {
                v.push([BigInt::from(a), BigInt::from(b), -d]);
            }
            v
        })
        .collect();
    found.into_iter().collect()
}
