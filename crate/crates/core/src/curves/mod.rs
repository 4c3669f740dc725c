//! The hyperelliptic curves C1: Y^2 = 5(16X^5 + 1) and
//! C2: Y^2 = (1 - 4X^5)(16X^5 + 1): point search, the embedded solution
//! tables for the associated generalized Fermat equations, and obstruction
//! certificates with an independent verifier.

pub mod bruin;
pub mod certificate;
pub mod mpoly;
mod prove;
mod verify;

pub use bruin::{corroborate_bruin, EquationId, FactEntry, FactTable, Family, Scope, Triple};
pub use certificate::*;
pub use mpoly::{mp, MPoly};
pub use prove::{mod25_case_count, prove, prove_c1_empty, prove_c2_points};
pub use verify::{
    certificate_holds, enumerate_residues, verify_certificate, verify_certificate_with,
    Enumeration, VerificationFailure,
};

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{i128_sqrt_exact, int, is_square, rat, Rational};
use crate::error::{Error, Result};
use crate::height::fractions_of_height;
use crate::poly::{qx, QPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CurveId {
    C1,
    C2,
}

impl CurveId {
    pub const ALL: [CurveId; 2] = [CurveId::C1, CurveId::C2];

    /// Right-hand side as a polynomial in X.
    pub fn rhs(self) -> QPoly {
        let x5 = qx().monomial(int(1), 5);
        let ring = qx();
        let sixteen = ring.add_p(&ring.scale(&x5, &int(16)), &ring.constant(int(1)));
        match self {
            CurveId::C1 => ring.scale(&sixteen, &int(5)),
            CurveId::C2 => {
                let first = ring.sub_p(&ring.constant(int(1)), &ring.scale(&x5, &int(4)));
                ring.mul_p(&first, &sixteen)
            }
        }
    }

    pub fn rhs_mpoly(self) -> MPoly {
        match self {
            CurveId::C1 => mp("5*(16*X^5 + 1)"),
            CurveId::C2 => mp("(1 - 4*X^5)*(16*X^5 + 1)"),
        }
    }

    pub fn rhs_at(self, x: &Rational) -> Rational {
        qx().eval(&self.rhs(), x)
    }

    pub fn genus(self) -> u32 {
        match self {
            CurveId::C1 => 2,
            CurveId::C2 => 4,
        }
    }
}

impl fmt::Display for CurveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for CurveId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "c1" => Ok(CurveId::C1),
            "c2" => Ok(CurveId::C2),
            _ => Err(Error::Parse(format!("unknown curve {s:?}; expected c1 or c2"))),
        }
    }
}

/// A rational point with Y^2 = rhs(X).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffinePoint {
    #[serde(with = "crate::arith::rational_str")]
    pub x: Rational,
    #[serde(with = "crate::arith::rational_str")]
    pub y: Rational,
}

impl AffinePoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        AffinePoint { x, y }
    }

    pub fn lies_on(&self, curve: CurveId) -> bool {
        &self.y * &self.y == curve.rhs_at(&self.x)
    }

    /// X ascending, then Y positive before negative.
    pub fn canonical_cmp(&self, other: &Self) -> std::cmp::Ordering {
        use num_traits::Signed;
        self.x
            .cmp(&other.x)
            .then_with(|| self.y.is_negative().cmp(&other.y.is_negative()))
            .then_with(|| self.y.abs().cmp(&other.y.abs()))
    }
}

impl fmt::Display for AffinePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Both points above `x` when rhs(x) is a nonzero square, one when it is 0.
pub fn points_above(curve: CurveId, x: &Rational) -> Vec<AffinePoint> {
    match is_square(&curve.rhs_at(x)) {
        None => Vec::new(),
        Some(y) if y == int(0) => vec![AffinePoint::new(x.clone(), y)],
        Some(y) => vec![AffinePoint::new(x.clone(), y.clone()), AffinePoint::new(x.clone(), -y)],
    }
}

/// Square numerator test for X = a/b, b > 0, in i128; `None` on overflow.
fn fast_square_test(curve: CurveId, a: i64, b: i64) -> Option<bool> {
    let (a, b) = (a as i128, b as i128);
    let a5 = a.checked_pow(5)?;
    let b5 = b.checked_pow(5)?;
    let sixteen = a5.checked_mul(16)?.checked_add(b5)?;
    // C1: rhs b^6 = 5 b (16a^5 + b^5); C2: rhs b^10 = (b^5 - 4a^5)(16a^5 + b^5)
    let n = match curve {
        CurveId::C1 => sixteen.checked_mul(5)?.checked_mul(b)?,
        CurveId::C2 => b5.checked_sub(a5.checked_mul(4)?)?.checked_mul(sixteen)?,
    };
    Some(i128_sqrt_exact(n).is_some())
}

/// All affine rational points with X of height at most `height_bound`,
/// ordered by X ascending, Y positive first.
pub fn search_points(curve: CurveId, height_bound: u64) -> Vec<AffinePoint> {
    let mut points: Vec<AffinePoint> = (1..=height_bound)
        .into_par_iter()
        .flat_map_iter(|h| {
            fractions_of_height(h).into_iter().filter_map(move |(a, b)| {
                let hit = fast_square_test(curve, a, b)
                    .unwrap_or_else(|| is_square(&curve.rhs_at(&rat(a, b))).is_some());
                hit.then(|| points_above(curve, &rat(a, b)))
            })
        })
        .flatten()
        .collect();
    points.sort_by(AffinePoint::canonical_cmp);
    debug_assert!(points.iter().all(|p| p.lies_on(curve)));
    points
}

/// Searches with an exact re-check of every returned point.
pub fn search_points_checked(curve: CurveId, height_bound: u64) -> Result<Vec<AffinePoint>> {
    let points = search_points(curve, height_bound);
    match points.iter().find(|p| !p.lies_on(curve)) {
        Some(bad) => Err(Error::Parse(format!("search produced a point off {curve}: {bad}"))),
        None => Ok(points),
    }
}
