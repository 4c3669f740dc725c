//! Obstruction certificates: a finite list of checkable steps that pins the
//! full set of rational points on a curve.
//!
//! Polynomials are strings in the `MPoly` grammar; integers and rationals
//! are decimal strings so that documents survive any JSON reader.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use super::bruin::{EquationId, Family, Scope, Triple};
use super::{AffinePoint, CurveId};
use crate::arith::Rational;

pub const CERTIFICATE_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObstructionCertificate {
    pub schema_version: u32,
    pub curve: CurveSpec,
    pub steps: Vec<Step>,
    pub verdict: Verdict,
}

/// The curve Y^2 = rhs(X); `rhs` must agree with the tag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub tag: CurveId,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Empty,
    Points(Vec<AffinePoint>),
}

impl Verdict {
    pub fn points(&self) -> &[AffinePoint] {
        match self {
            Verdict::Empty => &[],
            Verdict::Points(p) => p,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Step {
    AlgebraicIdentity(IdentityStep),
    ResidueEnumeration(ResidueStep),
    ValuationArgument(ValuationStep),
    FactLookup(LookupStep),
    SquareTest(SquareTestStep),
}

impl Step {
    pub fn label(&self) -> &str {
        match self {
            Step::AlgebraicIdentity(s) => &s.label,
            Step::ResidueEnumeration(s) => &s.label,
            Step::ValuationArgument(s) => &s.label,
            Step::FactLookup(s) => &s.label,
            Step::SquareTest(s) => &s.label,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Step::AlgebraicIdentity(_) => "AlgebraicIdentity",
            Step::ResidueEnumeration(_) => "ResidueEnumeration",
            Step::ValuationArgument(_) => "ValuationArgument",
            Step::FactLookup(_) => "FactLookup",
            Step::SquareTest(_) => "SquareTest",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityStep {
    pub label: String,
    pub form: IdentityForm,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityForm {
    /// Establishes `left = prod(right)` from
    /// `multiplier * (left - prod(right)) = sum(cofactor_i * hypothesis_i)`.
    Derivation {
        left: String,
        right: Vec<String>,
        hypotheses: Vec<Hypothesis>,
        cofactors: Vec<String>,
        multiplier: String,
    },
    /// `sum(coefficient_i * factor_i) = result` as polynomials.
    Combination { terms: Vec<CombinationTerm>, result: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CombinationTerm {
    #[serde(with = "crate::arith::rational_str")]
    pub coefficient: Rational,
    pub factor: String,
}

/// A polynomial known to vanish; the comment gives that polynomial.
#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    /// Y^2 - rhs(X)
    Curve,
    /// left - prod(right) of an earlier derivation
    Relation { label: String },
    /// scale * var - value, for a fresh var
    Definition {
        var: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        scale: Option<String>,
        value: String,
    },
    /// denominator * var - numerator, with fresh coprime integers, denominator > 0
    Fraction { var: String, numerator: String, denominator: String },
    /// denominator - kernel * square_var^2 from a denominator-kernel step
    Kernel { step: String },
    /// A - kernel * square_var^2 for one case of a squarefree split
    Case {
        step: String,
        #[serde_as(as = "DisplayFromStr")]
        kernel: u64,
    },
}

#[serde_as]
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidueStep {
    pub label: String,
    #[serde_as(as = "DisplayFromStr")]
    pub modulus: u64,
    pub variables: Vec<ResidueVar>,
    pub constraints: Vec<Congruence>,
    pub claim: ResidueClaim,
    pub role: ResidueRole,
    #[serde(default)]
    pub uses: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueVar {
    pub name: String,
    pub units_only: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Congruence {
    pub left: String,
    pub right: String,
}

#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResidueClaim {
    /// Number of solution tuples.
    Count {
        #[serde_as(as = "DisplayFromStr")]
        count: u64,
    },
    /// Sorted set of values of `expressions` over the solutions.
    Image {
        expressions: Vec<String>,
        #[serde_as(as = "Vec<Vec<DisplayFromStr>>")]
        values: Vec<Vec<u64>>,
    },
}

#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResidueRole {
    /// A displayed fact consumed by later steps through `uses`.
    Exposition,
    /// No solution with `variable` in the given valuation patterns at `prime`.
    ExcludesPatterns {
        relation: String,
        #[serde_as(as = "DisplayFromStr")]
        prime: u64,
        variable: String,
        patterns: Vec<Pattern>,
    },
    /// In this case `prime` divides neither numerator nor denominator.
    UnitsInCase {
        split: String,
        #[serde_as(as = "DisplayFromStr")]
        kernel: u64,
        #[serde_as(as = "DisplayFromStr")]
        prime: u64,
    },
    /// The listed case relations have no common solution.
    CaseElimination {
        split: String,
        #[serde_as(as = "DisplayFromStr")]
        kernel: u64,
        relations: Vec<RelationRef>,
    },
}

#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationRef {
    Derived { label: String },
    Case {
        split: String,
        #[serde_as(as = "DisplayFromStr")]
        kernel: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValuationStep {
    pub label: String,
    pub form: ValuationForm,
}

#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValuationForm {
    /// For c*W^2 = sum of terms, with valuations fixed by `patterns` as
    /// affine functions of k >= 1, one term has strictly least valuation.
    DominantTerm {
        prime: PrimeSpec,
        target: ValuationTarget,
        square_var: String,
        patterns: BTreeMap<String, Pattern>,
        conclusion: ValuationConclusion,
    },
    /// Combines per-prime parity facts into denominator = kernel * square_var^2.
    DenominatorKernel {
        variable: String,
        #[serde_as(as = "DisplayFromStr")]
        kernel: u64,
        square_var: String,
        classes: Vec<KernelClass>,
    },
    /// From W^2 = A*B with gcd(A, B) supported on the primes of the given
    /// combinations: A = s * square_var^2 for s among `kernels`.
    SquarefreeCases {
        relation: String,
        factor: usize,
        combinations: Vec<String>,
        sign_normalization: String,
        square_var: String,
        #[serde_as(as = "Vec<DisplayFromStr>")]
        kernels: Vec<u64>,
    },
}

#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeSpec {
    Prime(#[serde_as(as = "DisplayFromStr")] u64),
    AllExcept(#[serde_as(as = "Vec<DisplayFromStr>")] Vec<u64>),
}

#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValuationTarget {
    Derived { label: String },
    Cases {
        split: String,
        #[serde_as(as = "Vec<DisplayFromStr>")]
        kernels: Vec<u64>,
    },
}

/// Valuation of a variable: 0, +k or -k with k >= 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pattern {
    Negative,
    Zero,
    Positive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValuationConclusion {
    Contradiction,
    /// k is congruent to `residue` mod 2.
    Parity { residue: u8 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelClass {
    pub primes: PrimeSpec,
    pub negative: String,
    pub non_negative: Vec<String>,
}

#[serde_as]
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LookupStep {
    pub label: String,
    pub equation: EquationId,
    pub relation: RelationRef,
    pub variables: [String; 3],
    pub scope: Scope,
    #[serde_as(as = "Vec<[DisplayFromStr; 3]>")]
    pub candidates: Vec<Triple>,
    pub families: Vec<Family>,
    #[serde(with = "crate::arith::rational_vec_str")]
    pub abscissae: Vec<Rational>,
    #[serde(with = "crate::arith::rational_vec_str")]
    pub excluded_abscissae: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SquareTestStep {
    pub label: String,
    #[serde(with = "crate::arith::rational_str")]
    pub abscissa: Rational,
    #[serde(with = "crate::arith::rational_str")]
    pub value: Rational,
    pub verdict: SquareVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SquareVerdict {
    NotSquare,
    Square {
        #[serde(with = "crate::arith::rational_str")]
        root: Rational,
    },
}

impl ObstructionCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> crate::Result<Self> {
        serde_json::from_str(s).map_err(|e| crate::Error::Parse(format!("certificate: {e}")))
    }

    pub fn step_index(&self, label: &str) -> Option<usize> {
        self.steps.iter().position(|s| s.label() == label)
    }
}

/// Integer triple from small values.
pub fn triple_of(a: i64, b: i64, d: i64) -> Triple {
    [BigInt::from(a), BigInt::from(b), BigInt::from(d)]
}
