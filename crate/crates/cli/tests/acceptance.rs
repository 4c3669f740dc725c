//! Acceptance suite: one PASS/FAIL line per criterion. Exact comparisons
//! carry zero tolerance; the only tolerances are the wall-clock budgets below.
//! Every derived value is recomputed here by code that does not go through
//! the library's own routines.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use fermat5::arith::{int, rat, Rational};
use fermat5::curves::{
    mod25_case_count, prove_c1_empty, prove_c2_points, search_points, verify_certificate, AffinePoint, CurveId,
    EquationId, FactTable, ObstructionCertificate,
};
use fermat5::galois::{classify_galois, splitting_degree_oracle, GaloisClass};
use fermat5::line::{delta_routes, membership_identity_check, scan_parameters, LineParameter};
use fermat5::poly::{qpoly_from_ints, quartic_irreducible, QPoly};
use fermat5::pipeline::ScanSummary;

const THEOREM_BUDGET: Duration = Duration::from_secs(5);
const CURVE_SEARCH_BUDGET: Duration = Duration::from_secs(60);
const MOD25_BUDGET: Duration = Duration::from_secs(1);
const SCAN_BUDGET: Duration = Duration::from_secs(600);
const BRUIN_BUDGET: Duration = Duration::from_secs(30);

const SEARCH_HEIGHT: u64 = 1000;
const SCAN_HEIGHT: u64 = 200;
const BRUIN_BOUND: i64 = 100;
const FUZZ_DISCRIMINANT: usize = 1000;
const FUZZ_DISCRIMINANT_HEIGHT: i64 = 10_000;
const FUZZ_MEMBERSHIP: usize = 100;
const MIN_CORPUS: usize = 50;
const MIN_MUTATIONS: usize = 10;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn within(budget: Duration, elapsed: Duration) -> bool {
    elapsed < budget
}

/// Dense polynomials over Q, ascending, used only as an independent oracle.
mod dense {
    use super::*;

    pub type P = Vec<BigRational>;

    pub fn trim(mut a: P) -> P {
        while a.last().is_some_and(Zero::is_zero) {
            a.pop();
        }
        a
    }

    pub fn from_ints(c: &[i64]) -> P {
        trim(c.iter().map(|&n| BigRational::from_integer(n.into())).collect())
    }

    pub fn add(a: &P, b: &P) -> P {
        let n = a.len().max(b.len());
        let z = BigRational::zero();
        trim((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
    }

    pub fn mul(a: &P, b: &P) -> P {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    pub fn rem(a: &P, m: &P) -> P {
        let mut r = a.clone();
        let lead = m.last().unwrap().clone();
        while r.len() >= m.len() {
            let c = r.last().unwrap() / &lead;
            let shift = r.len() - m.len();
            for (i, mi) in m.iter().enumerate() {
                r[shift + i] -= &c * mi;
            }
            r = trim(r);
        }
        r
    }

    pub fn pow_mod(a: &P, e: u32, m: &P) -> P {
        (0..e).fold(vec![BigRational::one()], |acc, _| rem(&mul(&acc, a), m))
    }

    pub fn scale(a: &P, c: &BigRational) -> P {
        trim(a.iter().map(|x| x * c).collect())
    }
}

fn isqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn coprime(mut a: i64, mut b: i64) -> bool {
    (a, b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a == 1
}

fn random_t(rng: &mut ChaCha8Rng, height: i64) -> LineParameter {
    loop {
        let t = rat(rng.gen_range(-height..=height), rng.gen_range(1..=height));
        if let Ok(t) = LineParameter::new(t) {
            return t;
        }
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_fermat5"))
        .args(["verify-theorem", "--format", "json"])
        .output()
        .expect("run fermat5");
    let elapsed = start.elapsed();
    let code = out.status.code();
    let report: Value = match serde_json::from_slice(&out.stdout) {
        Ok(v) => v,
        Err(e) => return outcome(false, format!("unparseable report: {e}")),
    };
    let theorem_step = report["steps"]
        .as_array()
        .and_then(|s| s.iter().find(|s| s["name"] == "theorem-point"))
        .is_some_and(|s| s["passed"] == true);

    // 2^5 + (2α)^5 + (-α-1)^5 reduced modulo 31X^4 - 36X^3 + 26X^2 - 36X + 31
    let m = dense::from_ints(&[31, -36, 26, -36, 31]);
    let alpha = dense::from_ints(&[0, 1]);
    let sum = [dense::from_ints(&[2]), dense::from_ints(&[0, 2]), dense::from_ints(&[-1, -1])]
        .iter()
        .fold(Vec::new(), |acc, c| dense::add(&acc, &dense::pow_mod(c, 5, &m)));
    let independent_zero = sum.is_empty() && !dense::pow_mod(&alpha, 4, &m).is_empty();

    let passed = code == Some(0)
        && report["galois_class"] == "C4"
        && report["field_minpoly"] == "31X⁴−36X³+26X²−36X+31"
        && report["point"]["rendered"] == "(2, 2α, −α−1)"
        && report["conclusion"] == "confirmed"
        && theorem_step
        && independent_zero
        && within(THEOREM_BUDGET, elapsed);
    outcome(
        passed,
        format!(
            "exit {code:?}, class {}, identity exact {independent_zero}, {:.2} s (budget {} s)",
            report["galois_class"],
            elapsed.as_secs_f64(),
            THEOREM_BUDGET.as_secs()
        ),
    )
}

fn single_threaded<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(1).build().expect("pool").install(f)
}

/// Naive search in test code: every x of height at most `bound`, exact
/// integer square roots of q^10 rhs(p/q) (C1, C2 are even degree 10 in q).
fn naive_points(curve: CurveId, bound: i64) -> Vec<(Rational, Rational)> {
    let mut out = Vec::new();
    for q in 1..=bound {
        for p in -bound..=bound {
            if !coprime(p, q) {
                continue;
            }
            let (p5, q5) = (BigInt::from(p).pow(5), BigInt::from(q).pow(5));
            let n: BigInt = match curve {
                CurveId::C1 => 5 * (16 * &p5 + &q5) * &q5,
                CurveId::C2 => (&q5 - 4 * &p5) * (16 * &p5 + &q5),
            };
            if let Some(r) = isqrt_exact(&n) {
                let x = Rational::new(p.into(), q.into());
                let y = Rational::new(r, BigInt::from(q).pow(5));
                out.push((x.clone(), y.clone()));
                if !y.is_zero() {
                    out.push((x, -y));
                }
            }
        }
    }
    out.sort();
    out
}

fn as_pairs(points: &[AffinePoint]) -> Vec<(Rational, Rational)> {
    let mut v: Vec<_> = points.iter().map(|p| (p.x.clone(), p.y.clone())).collect();
    v.sort();
    v
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let found = single_threaded(|| search_points(CurveId::C2, SEARCH_HEIGHT));
    let elapsed = start.elapsed();
    let mut expected = vec![(int(0), int(1)), (int(0), int(-1)), (rat(-1, 2), rat(3, 4)), (rat(-1, 2), rat(-3, 4))];
    expected.sort();
    let naive = naive_points(CurveId::C2, 150) == expected;
    let passed = as_pairs(&found) == expected && naive && within(CURVE_SEARCH_BUDGET, elapsed);
    let list: Vec<String> = found.iter().map(ToString::to_string).collect();
    outcome(
        passed,
        format!(
            "{} at height {SEARCH_HEIGHT}, naive oracle agrees at 150: {naive}, {:.2} s single-threaded",
            list.join(" "),
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let found = single_threaded(|| search_points(CurveId::C1, SEARCH_HEIGHT));
    let certified = verify_certificate(&prove_c1_empty()).is_ok();
    let elapsed = start.elapsed();
    let naive = naive_points(CurveId::C1, 150).is_empty();
    let passed = found.is_empty() && certified && naive && within(CURVE_SEARCH_BUDGET, elapsed);
    outcome(
        passed,
        format!(
            "{} points at height {SEARCH_HEIGHT}, certificate verified {certified}, naive oracle empty at 150: {naive}, {:.2} s",
            found.len(),
            elapsed.as_secs_f64()
        ),
    )
}

/// (a, b, c, d) mod 25 with b^5 - 4a^5 = 5d^2 and 16a^5 + b^5 = 5c^2.
fn mod25_oracle(units_only: bool) -> u64 {
    let f = |x: i64| x.pow(5).rem_euclid(25);
    let mut n = 0;
    for a in 0..25i64 {
        for b in 0..25i64 {
            if units_only && (a % 5 == 0 || b % 5 == 0) {
                continue;
            }
            let (l1, l2) = ((f(b) - 4 * f(a)).rem_euclid(25), (16 * f(a) + f(b)).rem_euclid(25));
            let hits = |l: i64| (0..25i64).filter(|d| (5 * d * d - l).rem_euclid(25) == 0).count() as u64;
            n += hits(l1) * hits(l2);
        }
    }
    n
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let (units, all) = (mod25_case_count(true), mod25_case_count(false));
    let elapsed = start.elapsed();
    let (o_units, o_all) = (mod25_oracle(true), mod25_oracle(false));
    let passed = units == 0 && all > 0 && units == o_units && all == o_all && within(MOD25_BUDGET, elapsed);
    outcome(
        passed,
        format!(
            "5 ∤ ab: {units} (oracle {o_units}); unrestricted: {all} (oracle {o_all}); {:.3} s",
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let mut bad = Vec::new();
    for _ in 0..FUZZ_DISCRIMINANT {
        let t = random_t(&mut rng, FUZZ_DISCRIMINANT_HEIGHT);
        let [resultant, via_u, via_t] = delta_routes(&t);
        let t5 = num_traits::pow(t.t().clone(), 5);
        let u = (int(4) * &t5 - int(1)) / (&t5 + int(1));
        let oracle_u = -(&u * &u) * num_traits::pow(&u - int(4), 3) * (int(3) * &u + int(4));
        let n = int(4) * &t5 - int(1);
        let oracle_t = int(125) * &n * &n * (int(16) * &t5 + int(1)) / num_traits::pow(&t5 + int(1), 6);
        if !(resultant == via_u && via_u == via_t && via_t == oracle_u && oracle_u == oracle_t) {
            bad.push(t.t().to_string());
        }
    }
    outcome(
        bad.is_empty(),
        format!("{} of {FUZZ_DISCRIMINANT} t (height ≤ {FUZZ_DISCRIMINANT_HEIGHT}) disagree {bad:?}", bad.len()),
    )
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut bad = Vec::new();
    for _ in 0..FUZZ_MEMBERSHIP {
        let t = random_t(&mut rng, 1000);
        let t5 = num_traits::pow(t.t().clone(), 5);
        let u = (int(4) * &t5 - int(1)) / (&t5 + int(1));
        let f: dense::P = vec![int(1), u.clone(), &u + int(2), u, int(1)];
        let x = dense::scale(&dense::from_ints(&[1, 1]), t.t());
        let y = dense::from_ints(&[0, 1]);
        let total = dense::add(&dense::add(&dense::pow_mod(&x, 5, &f), &dense::pow_mod(&y, 5, &f)), &dense::from_ints(&[1]));
        if !(total.is_empty() && membership_identity_check(&t)) {
            bad.push(t.t().to_string());
        }
    }
    outcome(bad.is_empty(), format!("{} of {FUZZ_MEMBERSHIP} t fail {bad:?}", bad.len()))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let profiles = match scan_parameters(SCAN_HEIGHT) {
        Ok(p) => p,
        Err(e) => return outcome(false, format!("scan failed: {e}")),
    };
    let elapsed = start.elapsed();
    let s = ScanSummary::from_profiles(SCAN_HEIGHT, &profiles);

    // independent condition test over the same parameters
    let h = SCAN_HEIGHT as i64;
    let (mut count, mut o1, mut o2) = (0usize, Vec::new(), Vec::new());
    for q in 1..=h {
        for p in -h..=h {
            if !coprime(p, q) || (p == -1 && q == 1) {
                continue;
            }
            count += 1;
            let (p5, q5) = (BigInt::from(p).pow(5), BigInt::from(q).pow(5));
            let t = Rational::new(p.into(), q.into());
            if isqrt_exact(&(5 * (16 * &p5 + &q5) * &q5)).is_some() {
                o1.push(t.clone());
            }
            if isqrt_exact(&((&q5 - 4 * &p5) * (16 * &p5 + &q5))).is_some() {
                o2.push(t);
            }
        }
    }
    o2.sort();
    let expected = vec![rat(-1, 2), int(0)];
    let passed = s.cond1_hits.is_empty()
        && o1.is_empty()
        && s.cond2_hits == expected
        && o2 == expected
        && count == s.parameters
        && s.order4_without_condition.is_empty()
        && s.order8_not_dihedral.is_empty()
        && within(SCAN_BUDGET, elapsed);
    let classes: Vec<String> = s.class_counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
    outcome(
        passed,
        format!(
            "{} parameters (oracle {count}); cond2 at {:?}; {}; {:.1} s",
            s.parameters,
            s.cond2_hits.iter().map(ToString::to_string).collect::<Vec<_>>(),
            classes.join(" "),
            elapsed.as_secs_f64()
        ),
    )
}

fn galois_corpus() -> Vec<QPoly> {
    let mut corpus: Vec<QPoly> = [
        // cyclic
        &[1, 1, 1, 1, 1][..],
        &[31, -36, 26, -36, 31],
        &[2, 0, -4, 0, 1],
        &[5, 0, 5, 0, 1],
        &[20, 0, -10, 0, 1],
        &[13, 0, 13, 0, 1],
        &[1, -1, 1, -1, 1],
        // Klein four
        &[1, 0, 0, 0, 1],
        &[1, 0, -10, 0, 1],
        &[9, 0, -14, 0, 1],
        &[1, 0, 1, 0, 1],
        &[4, 0, 0, 0, 1],
        // dihedral
        &[-2, 0, 0, 0, 1],
        &[-3, 0, 0, 0, 1],
        &[2, 0, 0, 0, 1],
        &[-5, 0, 0, 0, 1],
        &[3, 0, 0, 0, 1],
        // alternating
        &[12, 8, 0, 0, 1],
        &[-3, -3, 6, -2, 1],
        &[1, 2, 0, -2, 1],
        // symmetric
        &[-1, -1, 0, 0, 1],
        &[1, 1, 0, 0, 1],
        &[1, 0, 0, 1, 1],
        &[-2, 1, 3, 0, 1],
    ]
    .iter()
    .map(|c| qpoly_from_ints(c))
    .collect();
    // sqrt(m) + sqrt(n) generates a Klein four extension
    for (m, n) in [(2, 3), (2, 5), (3, 5), (2, 7), (3, 7), (5, 7)] {
        corpus.push(qpoly_from_ints(&[(m - n) * (m - n), 0, -2 * (m + n), 0, 1]));
    }
    // X^4 + bX + c with square discriminant and splitting degree 12
    let mut alternating = 0;
    'search: for b in 1..=40i64 {
        for c in -40..=40i64 {
            let q = qpoly_from_ints(&[c, b, 0, 0, 1]);
            let disc = -27 * b.pow(4) + 256 * c.pow(3);
            let square = disc > 0 && isqrt_exact(&BigInt::from(disc)).is_some();
            if square && quartic_irreducible(&q).unwrap_or(false) && splitting_degree_oracle(&q) == Ok(12) {
                corpus.push(q);
                alternating += 1;
                if alternating == 5 {
                    break 'search;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    while corpus.len() < 100 {
        let mut c: Vec<i64> = (0..4).map(|_| rng.gen_range(-9..=9)).collect();
        c.push(rng.gen_range(1..=3));
        corpus.push(qpoly_from_ints(&c));
    }
    corpus.retain(|q| quartic_irreducible(q).unwrap_or(false));
    corpus
}

fn criterion_8() -> Outcome {
    let corpus = galois_corpus();
    let mut seen = std::collections::BTreeMap::new();
    let mut disagreements = Vec::new();
    for q in &corpus {
        let class = classify_galois(q);
        let order = splitting_degree_oracle(q);
        match (class, order) {
            (Ok(c), Ok(o)) if c.order() == o => *seen.entry(c).or_insert(0usize) += 1,
            (c, o) => disagreements.push(format!("{q}: {c:?} vs {o:?}")),
        }
    }
    let covered = GaloisClass::ALL.iter().all(|c| seen.contains_key(c));
    let passed = disagreements.is_empty() && covered && corpus.len() >= MIN_CORPUS;
    let tally: Vec<String> = seen.iter().map(|(c, n)| format!("{c}={n}")).collect();
    outcome(
        passed,
        format!(
            "{} irreducible quartics, {} disagreements, {}{}",
            corpus.len(),
            disagreements.len(),
            tally.join(" "),
            if disagreements.is_empty() { String::new() } else { format!(" {disagreements:?}") }
        ),
    )
}

/// Coprime (a, b) with |a|, |b| ≤ bound and lhs(a, b) a perfect square.
fn bruin_oracle(eq: EquationId, bound: i64) -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            if !coprime(a, b) {
                continue;
            }
            let (a5, b5) = (BigInt::from(a).pow(5), BigInt::from(b).pow(5));
            let lhs = match eq {
                EquationId::E16 => 16 * a5 + b5,
                EquationId::E4 => b5 - 4 * a5,
            };
            if let Some(d) = isqrt_exact(&lhs) {
                let d: i64 = d.try_into().expect("small root");
                out.push([a, b, d]);
                if d != 0 {
                    out.push([a, b, -d]);
                }
            }
        }
    }
    out
}

fn criterion_9() -> Outcome {
    let table = FactTable::embedded();
    let start = Instant::now();
    let unexplained: Vec<_> = [EquationId::E16, EquationId::E4]
        .into_iter()
        .map(|eq| (eq, table.unexplained(eq, BRUIN_BOUND as u64)))
        .collect();
    let elapsed = start.elapsed();
    let mut oracle_unexplained = 0;
    let mut oracle_total = 0;
    for eq in [EquationId::E16, EquationId::E4] {
        for [a, b, d] in bruin_oracle(eq, BRUIN_BOUND) {
            oracle_total += 1;
            let t = [BigInt::from(a), BigInt::from(b), BigInt::from(d)];
            if !table.explains(eq, &t) {
                oracle_unexplained += 1;
            }
        }
    }
    let passed = unexplained.iter().all(|(_, u)| u.is_empty()) && oracle_unexplained == 0 && within(BRUIN_BUDGET, elapsed);
    outcome(
        passed,
        format!(
            "unexplained {:?}; oracle found {oracle_total} solutions, {oracle_unexplained} unexplained; {:.2} s",
            unexplained.iter().map(|(e, u)| format!("{e:?}: {}", u.len())).collect::<Vec<_>>(),
            elapsed.as_secs_f64()
        ),
    )
}

type Edit = Box<dyn Fn(&mut Value)>;

fn step_mut<'a>(v: &'a mut Value, label: &str) -> &'a mut Value {
    v["steps"]
        .as_array_mut()
        .and_then(|s| s.iter_mut().find(|s| s["label"] == label))
        .unwrap_or_else(|| panic!("no step {label}"))
}

fn edit(label: &'static str, path: &'static [&'static str], value: Value) -> Edit {
    Box::new(move |v| {
        let mut cur = step_mut(v, label);
        for key in path {
            cur = match key.parse::<usize>() {
                Ok(i) => &mut cur[i],
                Err(_) => &mut cur[*key],
            };
        }
        *cur = value.clone();
    })
}

fn c1_mutations() -> Vec<Edit> {
    vec![
        edit("scaled-equation", &["form", "derivation", "cofactors", "0"], "1/4".into()),
        edit("homogenized", &["form", "derivation", "multiplier"], "2".into()),
        edit("two-adic-integral", &["modulus"], "24".into()),
        edit("five-adic-unit", &["claim", "count", "count"], "1".into()),
        edit("fifth-powers-mod-25", &["claim", "image", "values", "1", "0"], "8".into()),
        edit("five-adic-positive", &["form", "dominant_term", "prime", "prime"], "3".into()),
        edit("denominator-kernel", &["form", "denominator_kernel", "kernel"], "10".into()),
        edit("e16-lookup", &["candidates", "0", "2"], "5".into()),
        edit("e16-lookup", &["abscissae", "0"], "1/2".into()),
        edit("square-test-zero", &["value"], "4".into()),
        Box::new(|v| v["verdict"] = serde_json::json!({"points": [{"x": "0", "y": "1"}]})),
        Box::new(|v| v["curve"]["rhs"] = "80*X^5 + 4".into()),
    ]
}

fn c2_mutations() -> Vec<Edit> {
    vec![
        edit("homogenized", &["form", "derivation", "cofactors", "0"], "b^9".into()),
        edit("gcd-b", &["form", "combination", "result"], "3*b^5".into()),
        edit("case-split", &["form", "squarefree_cases", "kernels"], serde_json::json!(["1", "2", "5"])),
        edit("two-adic-case-b-even", &["form", "dominant_term", "patterns", "b"], "zero".into()),
        edit("mod-25-incompatibility", &["modulus"], "5".into()),
        edit("mod-25-incompatibility", &["uses"], serde_json::json!([])),
        edit("five-divides-neither", &["claim", "image", "values"], serde_json::json!([["0", "1"]])),
        edit("e4-lookup", &["families"], serde_json::json!([])),
        edit("square-test-minus-half", &["verdict", "square", "root"], "-3/4".into()),
        edit("case-five-cofactor", &["form", "derivation", "multiplier"], "5*W^2".into()),
        Box::new(|v| {
            v["verdict"]["points"].as_array_mut().unwrap().pop();
        }),
    ]
}

/// Returns (valid mutants, rejected mutants); a mutant is valid when it
/// still deserializes and differs from the original.
fn run_mutations(cert: &ObstructionCertificate, mut edits: Vec<Edit>) -> (usize, usize, Vec<String>) {
    for i in 0..cert.steps.len() {
        edits.push(Box::new(move |v| {
            v["steps"].as_array_mut().unwrap().remove(i);
        }));
    }
    let original: Value = serde_json::from_str(&cert.to_json()).unwrap();
    let (mut valid, mut rejected, mut accepted) = (0, 0, Vec::new());
    for (i, e) in edits.iter().enumerate() {
        let mut v = original.clone();
        e(&mut v);
        let Ok(mutant) = serde_json::from_value::<ObstructionCertificate>(v) else {
            continue;
        };
        if &mutant == cert {
            continue;
        }
        valid += 1;
        if verify_certificate(&mutant).is_err() {
            rejected += 1;
        } else {
            accepted.push(format!("mutation {i}"));
        }
    }
    (valid, rejected, accepted)
}

fn criterion_10() -> Outcome {
    let (v1, r1, a1) = run_mutations(&prove_c1_empty(), c1_mutations());
    let (v2, r2, a2) = run_mutations(&prove_c2_points(), c2_mutations());
    let passed = v1 >= MIN_MUTATIONS && v2 >= MIN_MUTATIONS && v1 == r1 && v2 == r2;
    outcome(
        passed,
        format!("C1 {r1}/{v1} rejected, C2 {r2}/{v2} rejected{}", {
            let a: Vec<_> = a1.iter().chain(&a2).collect();
            if a.is_empty() { String::new() } else { format!(", accepted: {a:?}") }
        }),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("theorem confirmation", criterion_1),
        ("C2 points at height 1000", criterion_2),
        ("C1 empty at height 1000", criterion_3),
        ("mod-25 incompatibility", criterion_4),
        ("discriminant identity fuzz", criterion_5),
        ("membership identity fuzz", criterion_6),
        ("scan corroboration at height 200", criterion_7),
        ("classifier vs oracle", criterion_8),
        ("fact table corroboration", criterion_9),
        ("certificate mutations", criterion_10),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.passed {
            failures += 1;
        }
        println!("{} {:>2} {name}: {}", if o.passed { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
