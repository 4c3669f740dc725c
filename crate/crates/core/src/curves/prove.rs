//! Certificate producers for C1 (no affine points) and C2 (four points).
//! Cofactors are computed with `MPoly` arithmetic and stored in canonical
//! rendering, so certificates are byte-stable.

use std::collections::BTreeMap;

use super::bruin::{EquationId, FactTable};
use super::certificate::*;
use super::mpoly::{mp, MPoly};
use super::verify::enumerate_residues;
use super::{points_above, AffinePoint, CurveId};
use crate::arith::{int, is_square, rat, Rational};

fn canon(s: &str) -> String {
    mp(s).to_string()
}

/// sum_{i < n} u^i v^(n-1-i), so u^n - v^n = (u - v) * geometric_sum.
fn geometric_sum(u: &MPoly, v: &MPoly, n: u32) -> MPoly {
    (0..n).fold(MPoly::zero(), |acc, i| &acc + &(&u.pow(i) * &v.pow(n - 1 - i)))
}

fn derivation(
    label: &str,
    left: &str,
    right: &[&str],
    hypotheses: Vec<Hypothesis>,
    cofactors: Vec<String>,
    multiplier: &str,
) -> Step {
    Step::AlgebraicIdentity(IdentityStep {
        label: label.into(),
        form: IdentityForm::Derivation {
            left: canon(left),
            right: right.iter().map(|s| canon(s)).collect(),
            hypotheses,
            cofactors: cofactors.iter().map(|s| canon(s)).collect(),
            multiplier: canon(multiplier),
        },
    })
}

fn var(name: &str, units_only: bool) -> ResidueVar {
    ResidueVar { name: name.into(), units_only }
}

fn congruence(left: &str, right: &str) -> Congruence {
    Congruence { left: canon(left), right: canon(right) }
}

fn dominant(
    label: &str,
    prime: PrimeSpec,
    target: ValuationTarget,
    square_var: &str,
    patterns: &[(&str, Pattern)],
    conclusion: ValuationConclusion,
) -> Step {
    Step::ValuationArgument(ValuationStep {
        label: label.into(),
        form: ValuationForm::DominantTerm {
            prime,
            target,
            square_var: square_var.into(),
            patterns: patterns.iter().map(|(v, p)| (v.to_string(), *p)).collect::<BTreeMap<_, _>>(),
            conclusion,
        },
    })
}

fn derived(label: &str) -> ValuationTarget {
    ValuationTarget::Derived { label: label.into() }
}

fn square_test(curve: CurveId, label: &str, x: Rational) -> Step {
    let value = curve.rhs_at(&x);
    let verdict = match is_square(&value) {
        Some(root) => SquareVerdict::Square { root },
        None => SquareVerdict::NotSquare,
    };
    Step::SquareTest(SquareTestStep { label: label.into(), abscissa: x, value, verdict })
}

fn lookup(
    label: &str,
    table: &FactTable,
    equation: EquationId,
    relation: RelationRef,
    abscissae: Vec<Rational>,
    excluded_abscissae: Vec<Rational>,
) -> Step {
    let entry = table.entry(equation).expect("table entry");
    Step::FactLookup(LookupStep {
        label: label.into(),
        equation,
        relation,
        variables: ["a".into(), "b".into(), "d".into()],
        scope: entry.scope,
        candidates: entry.solutions.clone(),
        families: entry.families.clone(),
        abscissae,
        excluded_abscissae,
    })
}

fn verdict_from(points: Vec<AffinePoint>) -> Verdict {
    if points.is_empty() {
        Verdict::Empty
    } else {
        Verdict::Points(points)
    }
}

fn header(curve: CurveId) -> CurveSpec {
    CurveSpec { tag: curve, rhs: curve.rhs_mpoly().to_string() }
}

/// C1 has no affine rational points: 2-adic and 5-adic valuations force
/// X = a/(5c^2), which turns the curve into 16a^5 + b^5 = d^2.
pub fn prove_c1_empty() -> ObstructionCertificate {
    let curve = CurveId::C1;
    let table = FactTable::embedded();
    let x = MPoly::var("X");
    let (a, b) = (MPoly::var("a"), MPoly::var("b"));
    let bx = &b * &x;
    let fraction_cofactor = geometric_sum(&bx, &a, 5).scale(&int(16));
    let kernel_cofactor = geometric_sum(&b, &mp("5*c^2"), 5);
    let x_negative = [("X", Pattern::Negative)];
    let steps = vec![
        derivation(
            "scaled-equation",
            "5*Z^2",
            &["16*X^5 + 1"],
            vec![Hypothesis::Curve, Hypothesis::Definition { var: "Z".into(), scale: None, value: canon("1/5*Y") }],
            vec!["1/5".into(), "5*Z + Y".into()],
            "1",
        ),
        derivation(
            "homogenized",
            "5*Z^2*b^5",
            &["16*a^5 + b^5"],
            vec![
                Hypothesis::Relation { label: "scaled-equation".into() },
                Hypothesis::Fraction { var: "X".into(), numerator: "a".into(), denominator: "b".into() },
            ],
            vec!["b^5".into(), fraction_cofactor.to_string()],
            "1",
        ),
        Step::ResidueEnumeration(ResidueStep {
            label: "squares-mod-8".into(),
            modulus: 8,
            variables: vec![var("Z", false)],
            constraints: vec![],
            claim: ResidueClaim::Image { expressions: vec![canon("Z^2")], values: vec![vec![0], vec![1], vec![4]] },
            role: ResidueRole::Exposition,
            uses: vec![],
        }),
        Step::ResidueEnumeration(ResidueStep {
            label: "two-adic-integral".into(),
            modulus: 8,
            variables: vec![var("X", false), var("Z", false)],
            constraints: vec![congruence("5*Z^2", "16*X^5 + 1")],
            claim: ResidueClaim::Count { count: 0 },
            role: ResidueRole::ExcludesPatterns {
                relation: "scaled-equation".into(),
                prime: 2,
                variable: "X".into(),
                patterns: vec![Pattern::Zero, Pattern::Positive],
            },
            uses: vec!["squares-mod-8".into()],
        }),
        dominant(
            "two-adic-denominator",
            PrimeSpec::Prime(2),
            derived("scaled-equation"),
            "Z",
            &x_negative,
            ValuationConclusion::Parity { residue: 0 },
        ),
        dominant(
            "other-primes-denominator",
            PrimeSpec::AllExcept(vec![2, 5]),
            derived("scaled-equation"),
            "Z",
            &x_negative,
            ValuationConclusion::Parity { residue: 0 },
        ),
        dominant(
            "five-adic-positive",
            PrimeSpec::Prime(5),
            derived("scaled-equation"),
            "Z",
            &[("X", Pattern::Positive)],
            ValuationConclusion::Contradiction,
        ),
        Step::ResidueEnumeration(ResidueStep {
            label: "fifth-powers-mod-25".into(),
            modulus: 25,
            variables: vec![var("X", true)],
            constraints: vec![],
            claim: ResidueClaim::Image {
                expressions: vec![canon("X^5")],
                values: vec![vec![1], vec![7], vec![18], vec![24]],
            },
            role: ResidueRole::Exposition,
            uses: vec![],
        }),
        Step::ResidueEnumeration(ResidueStep {
            label: "five-adic-unit".into(),
            modulus: 25,
            variables: vec![var("X", true), var("Z", false)],
            constraints: vec![congruence("5*Z^2", "16*X^5 + 1")],
            claim: ResidueClaim::Count { count: 0 },
            role: ResidueRole::ExcludesPatterns {
                relation: "scaled-equation".into(),
                prime: 5,
                variable: "X".into(),
                patterns: vec![Pattern::Zero],
            },
            uses: vec!["fifth-powers-mod-25".into()],
        }),
        dominant(
            "five-adic-denominator",
            PrimeSpec::Prime(5),
            derived("scaled-equation"),
            "Z",
            &x_negative,
            ValuationConclusion::Parity { residue: 1 },
        ),
        Step::ValuationArgument(ValuationStep {
            label: "denominator-kernel".into(),
            form: ValuationForm::DenominatorKernel {
                variable: "X".into(),
                kernel: 5,
                square_var: "c".into(),
                classes: vec![
                    KernelClass {
                        primes: PrimeSpec::Prime(2),
                        negative: "two-adic-denominator".into(),
                        non_negative: vec!["two-adic-integral".into()],
                    },
                    KernelClass {
                        primes: PrimeSpec::Prime(5),
                        negative: "five-adic-denominator".into(),
                        non_negative: vec!["five-adic-positive".into(), "five-adic-unit".into()],
                    },
                    KernelClass {
                        primes: PrimeSpec::AllExcept(vec![2, 5]),
                        negative: "other-primes-denominator".into(),
                        non_negative: vec![],
                    },
                ],
            },
        }),
        derivation(
            "bruin-form",
            "d^2",
            &["16*a^5 + b^5"],
            vec![
                Hypothesis::Relation { label: "homogenized".into() },
                Hypothesis::Kernel { step: "denominator-kernel".into() },
                Hypothesis::Definition { var: "d".into(), scale: None, value: canon("125*c^5*Z") },
            ],
            vec![
                "1".into(),
                (&mp("-5*Z^2") * &kernel_cofactor).to_string(),
                "d + 125*c^5*Z".into(),
            ],
            "1",
        ),
        lookup(
            "e16-lookup",
            &table,
            EquationId::E16,
            RelationRef::Derived { label: "bruin-form".into() },
            vec![rat(-1, 2)],
            vec![int(0)],
        ),
        square_test(curve, "square-test-minus-half", rat(-1, 2)),
        square_test(curve, "square-test-zero", int(0)),
    ];
    ObstructionCertificate {
        schema_version: CERTIFICATE_SCHEMA_VERSION,
        curve: header(curve),
        steps,
        verdict: Verdict::Empty,
    }
}

const C2_A: &str = "b^5 - 4*a^5";
const C2_B: &str = "16*a^5 + b^5";

/// C2 has exactly the points (0, ±1) and (-1/2, ±3/4): W^2 = A*B splits
/// into four squarefree cases, closed by 2-adic valuations, a lookup for
/// b^5 - 4a^5 = d^2 and a 25-adic incompatibility.
pub fn prove_c2_points() -> ObstructionCertificate {
    let curve = CurveId::C2;
    let table = FactTable::embedded();
    let (a, b, x) = (MPoly::var("a"), MPoly::var("b"), MPoly::var("X"));
    let bx = &b * &x;
    // b^10 rhs(X) - A*B = (bX - a) * q
    let q = &geometric_sum(&bx, &a, 10).scale(&int(-64))
        + &(&b.pow(5) * &geometric_sum(&bx, &a, 5)).scale(&int(12));
    let case = |k: u64| RelationRef::Case { split: "case-split".into(), kernel: k };
    let cases_2_10 = ValuationTarget::Cases { split: "case-split".into(), kernels: vec![2, 10] };
    let mut steps = vec![
        derivation(
            "homogenized",
            "W^2",
            &[C2_A, C2_B],
            vec![
                Hypothesis::Curve,
                Hypothesis::Fraction { var: "X".into(), numerator: "a".into(), denominator: "b".into() },
                Hypothesis::Definition { var: "W".into(), scale: None, value: canon("Y*b^5") },
            ],
            vec!["b^10".into(), q.to_string(), "W + Y*b^5".into()],
            "1",
        ),
        Step::AlgebraicIdentity(IdentityStep {
            label: "gcd-b".into(),
            form: IdentityForm::Combination {
                terms: vec![
                    CombinationTerm { coefficient: int(4), factor: canon(C2_A) },
                    CombinationTerm { coefficient: int(1), factor: canon(C2_B) },
                ],
                result: canon("5*b^5"),
            },
        }),
        Step::AlgebraicIdentity(IdentityStep {
            label: "gcd-a".into(),
            form: IdentityForm::Combination {
                terms: vec![
                    CombinationTerm { coefficient: int(1), factor: canon(C2_B) },
                    CombinationTerm { coefficient: int(-1), factor: canon(C2_A) },
                ],
                result: canon("20*a^5"),
            },
        }),
        Step::ValuationArgument(ValuationStep {
            label: "case-split".into(),
            form: ValuationForm::SquarefreeCases {
                relation: "homogenized".into(),
                factor: 0,
                combinations: vec!["gcd-b".into(), "gcd-a".into()],
                sign_normalization: "(a,b) -> (-a,-b)".into(),
                square_var: "d".into(),
                kernels: vec![1, 2, 5, 10],
            },
        }),
        dominant(
            "two-adic-case-units",
            PrimeSpec::Prime(2),
            cases_2_10.clone(),
            "d",
            &[("a", Pattern::Zero), ("b", Pattern::Zero)],
            ValuationConclusion::Contradiction,
        ),
        dominant(
            "two-adic-case-b-even",
            PrimeSpec::Prime(2),
            cases_2_10.clone(),
            "d",
            &[("a", Pattern::Zero), ("b", Pattern::Positive)],
            ValuationConclusion::Contradiction,
        ),
        dominant(
            "two-adic-case-a-even",
            PrimeSpec::Prime(2),
            cases_2_10,
            "d",
            &[("a", Pattern::Positive), ("b", Pattern::Zero)],
            ValuationConclusion::Contradiction,
        ),
        lookup("e4-lookup", &table, EquationId::E4, case(1), vec![rat(-1, 2), int(0)], vec![]),
        // 5d^2 (5c^2 - B) = (W^2 - AB) + B (A - 5d^2) + (5dc - W)(W + 5dc)
        derivation(
            "case-five-cofactor",
            "5*c^2",
            &[C2_B],
            vec![
                Hypothesis::Relation { label: "homogenized".into() },
                Hypothesis::Case { step: "case-split".into(), kernel: 5 },
                Hypothesis::Definition { var: "c".into(), scale: Some(canon("5*d")), value: canon("W") },
            ],
            vec!["1".into(), C2_B.into(), "5*c*d + W".into()],
            "5*d^2",
        ),
        Step::ResidueEnumeration(ResidueStep {
            label: "five-divides-neither".into(),
            modulus: 5,
            variables: vec![var("a", false), var("b", false)],
            constraints: vec![congruence(C2_A, "0"), congruence("a*b", "0")],
            claim: ResidueClaim::Image { expressions: vec![canon("a"), canon("b")], values: vec![vec![0, 0]] },
            role: ResidueRole::UnitsInCase { split: "case-split".into(), kernel: 5, prime: 5 },
            uses: vec![],
        }),
        Step::ResidueEnumeration(ResidueStep {
            label: "mod-25-incompatibility".into(),
            modulus: 25,
            variables: vec![var("a", true), var("b", true), var("c", false), var("d", false)],
            constraints: vec![congruence("5*d^2", C2_A), congruence("5*c^2", C2_B)],
            claim: ResidueClaim::Count { count: 0 },
            role: ResidueRole::CaseElimination {
                split: "case-split".into(),
                kernel: 5,
                relations: vec![case(5), RelationRef::Derived { label: "case-five-cofactor".into() }],
            },
            uses: vec!["five-divides-neither".into()],
        }),
    ];
    let mut points = Vec::new();
    for (label, x) in [("square-test-minus-half", rat(-1, 2)), ("square-test-zero", int(0))] {
        points.extend(points_above(curve, &x));
        steps.push(square_test(curve, label, x));
    }
    points.sort_by(AffinePoint::canonical_cmp);
    ObstructionCertificate {
        schema_version: CERTIFICATE_SCHEMA_VERSION,
        curve: header(curve),
        steps,
        verdict: verdict_from(points),
    }
}

/// Solutions mod 25 of 5d^2 = b^5 - 4a^5, 5c^2 = 16a^5 + b^5, with a, b
/// units or unrestricted.
pub fn mod25_case_count(units_only: bool) -> u64 {
    let vars = [var("a", units_only), var("b", units_only), var("c", false), var("d", false)];
    let constraints = [(mp("5*d^2"), mp(C2_A)), (mp("5*c^2"), mp(C2_B))];
    enumerate_residues(25, &vars, &constraints, &[]).expect("small enumeration").count
}

/// The certificate for either curve.
pub fn prove(curve: CurveId) -> ObstructionCertificate {
    match curve {
        CurveId::C1 => prove_c1_empty(),
        CurveId::C2 => prove_c2_points(),
    }
}
