//! Independent certificate interpreter. Every step is re-derived from the
//! data it quotes; nothing produced by the prover is trusted.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::bruin::{FactTable, Family, Scope};
use super::certificate::*;
use super::mpoly::MPoly;
use super::{AffinePoint, CurveId};
use crate::arith::{int, is_prime, is_square, padic_val, prime_support, Rational};
use crate::error::{Error, Result};
use crate::poly::rational_roots;

/// The first step that does not check, or `step: None` for a failure of
/// the certificate as a whole.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationFailure {
    pub step: Option<usize>,
    pub label: String,
    pub reason: String,
}

impl fmt::Display for VerificationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.step {
            Some(i) => write!(f, "step {} ({}): {}", i + 1, self.label, self.reason),
            None => write!(f, "{}: {}", self.label, self.reason),
        }
    }
}

impl std::error::Error for VerificationFailure {}

/// Valuation patterns of (a, b) at one prime.
type PatternPair = (Pattern, Pattern);

pub fn verify_certificate(cert: &ObstructionCertificate) -> std::result::Result<(), VerificationFailure> {
    verify_certificate_with(cert, &FactTable::embedded())
}

pub fn verify_certificate_with(
    cert: &ObstructionCertificate,
    table: &FactTable,
) -> std::result::Result<(), VerificationFailure> {
    let whole = |label: &str, reason: String| VerificationFailure { step: None, label: label.into(), reason };
    if cert.schema_version != CERTIFICATE_SCHEMA_VERSION {
        return Err(whole("schema", format!("unsupported schema version {}", cert.schema_version)));
    }
    let curve = cert.curve.tag;
    match cert.curve.rhs.parse::<MPoly>() {
        Ok(p) if p == curve.rhs_mpoly() => {}
        Ok(_) => return Err(whole("curve", format!("rhs does not match {curve}"))),
        Err(e) => return Err(whole("curve", e.to_string())),
    }
    let mut seen = HashSet::new();
    for (i, s) in cert.steps.iter().enumerate() {
        if !seen.insert(s.label()) {
            return Err(VerificationFailure {
                step: Some(i),
                label: s.label().into(),
                reason: "duplicate label".into(),
            });
        }
    }
    let mut checker = Checker::new(curve, table);
    for (i, step) in cert.steps.iter().enumerate() {
        checker.step(i, step).map_err(|reason| VerificationFailure {
            step: Some(i),
            label: step.label().into(),
            reason,
        })?;
        checker.labels.insert(step.label().to_string(), i);
    }
    checker.finish(cert)
}

pub fn certificate_holds(cert: &ObstructionCertificate, table: &FactTable) -> bool {
    verify_certificate_with(cert, table).is_ok()
}

/// Solution count and expression image of a congruence system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub count: u64,
    pub image: BTreeSet<Vec<u64>>,
}

const MAX_TUPLES: u128 = 50_000_000;

/// Enumerates residue tuples, units-only variables ranging over units.
pub fn enumerate_residues(
    modulus: u64,
    vars: &[ResidueVar],
    constraints: &[(MPoly, MPoly)],
    expressions: &[MPoly],
) -> Result<Enumeration> {
    if modulus < 2 {
        return Err(Error::Parse(format!("modulus {modulus} is below 2")));
    }
    let names: Vec<String> = vars.iter().map(|v| v.name.clone()).collect();
    let domains: Vec<Vec<u64>> = vars
        .iter()
        .map(|v| {
            (0..modulus)
                .filter(|&r| !v.units_only || num_integer::gcd(r, modulus) == 1)
                .collect()
        })
        .collect();
    let total: u128 = domains.iter().map(|d| d.len() as u128).product();
    if total > MAX_TUPLES {
        return Err(Error::Parse(format!("{total} residue tuples exceed the enumeration cap")));
    }
    let compiled = constraints
        .iter()
        .map(|(l, r)| (l - r).compile_mod(&names, modulus))
        .collect::<Result<Vec<_>>>()?;
    let exprs = expressions
        .iter()
        .map(|e| e.compile_mod(&names, modulus))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Enumeration { count: 0, image: BTreeSet::new() };
    if domains.iter().any(|d| d.is_empty()) {
        return Ok(out);
    }
    let mut idx = vec![0usize; vars.len()];
    let mut point: Vec<u64> = domains.iter().map(|d| d[0]).collect();
    loop {
        if compiled.iter().all(|c| c.eval(&point) == 0) {
            out.count += 1;
            if !exprs.is_empty() {
                out.image.insert(exprs.iter().map(|e| e.eval(&point)).collect());
            }
        }
        // odometer, last variable fastest
        let mut k = vars.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < domains[k].len() {
                point[k] = domains[k][idx[k]];
                break;
            }
            idx[k] = 0;
            point[k] = domains[k][0];
        }
    }
}

type Check<T> = std::result::Result<T, String>;
type CaseKey = (String, u64);

#[derive(Debug, Clone)]
struct Relation {
    left: MPoly,
    right: Vec<MPoly>,
    scope: Option<CaseKey>,
}

impl Relation {
    fn right_product(&self) -> MPoly {
        self.right.iter().fold(MPoly::int(1), |acc, f| &acc * f)
    }

    fn poly(&self) -> MPoly {
        &self.left - &self.right_product()
    }
}

#[derive(Debug, Clone, PartialEq)]
struct FractionInfo {
    var: String,
    num: String,
    den: String,
}

#[derive(Debug, Clone)]
struct KernelInfo {
    den: String,
    kernel: u64,
    square_var: String,
}

#[derive(Debug, Clone)]
struct SplitInfo {
    factor: MPoly,
    square_var: String,
    kernels: Vec<u64>,
}

#[derive(Debug, Clone)]
struct DominantResult {
    prime: PrimeSpec,
    target: ValuationTarget,
    patterns: BTreeMap<String, Pattern>,
    conclusion: ValuationConclusion,
}

#[derive(Debug, Clone)]
struct Exclusion {
    relation: String,
    prime: u64,
    variable: String,
    patterns: Vec<Pattern>,
}

struct Checker<'a> {
    table: &'a FactTable,
    curve: CurveId,
    rhs: MPoly,
    labels: HashMap<String, usize>,
    bound: BTreeSet<String>,
    nonzero: BTreeSet<String>,
    definitions: HashMap<String, (MPoly, MPoly)>,
    fraction: Option<FractionInfo>,
    relations: HashMap<String, Relation>,
    combinations: HashMap<String, (Vec<(Rational, MPoly)>, MPoly)>,
    kernels: HashMap<String, KernelInfo>,
    splits: Vec<(usize, String, SplitInfo)>,
    dominant: HashMap<String, DominantResult>,
    exclusions: HashMap<String, Exclusion>,
    units: HashMap<String, (String, u64, u64)>,
    closed: BTreeSet<CaseKey>,
    main_closed: bool,
    candidates: BTreeSet<Rational>,
    square_tests: Vec<(usize, Rational, SquareVerdict)>,
    referenced: HashSet<String>,
}

fn parse(s: &str) -> Check<MPoly> {
    s.parse::<MPoly>().map_err(|e| format!("cannot parse {s:?}: {e}"))
}

fn single_square(left: &MPoly) -> Option<(Rational, String)> {
    let (c, mono) = left.as_term()?;
    let mut it = mono.iter();
    match (it.next(), it.next()) {
        (Some((v, 2)), None) => Some((c.clone(), v.clone())),
        _ => None,
    }
}

fn squarefree_divisors(primes: &BTreeSet<u64>) -> Vec<u64> {
    let mut out = vec![1u64];
    for &p in primes {
        let more: Vec<u64> = out.iter().map(|d| d * p).collect();
        out.extend(more);
    }
    out.sort_unstable();
    out
}

fn rational_support(q: &Rational) -> BTreeSet<u64> {
    let mut s: BTreeSet<u64> = prime_support(q.numer()).into_iter().collect();
    s.extend(prime_support(q.denom()));
    s
}

fn pattern_slope(p: Pattern) -> i64 {
    match p {
        Pattern::Negative => -1,
        Pattern::Zero => 0,
        Pattern::Positive => 1,
    }
}

impl<'a> Checker<'a> {
    fn new(curve: CurveId, table: &'a FactTable) -> Self {
        Checker {
            table,
            curve,
            rhs: curve.rhs_mpoly(),
            labels: HashMap::new(),
            bound: ["X", "Y"].iter().map(|s| s.to_string()).collect(),
            nonzero: BTreeSet::new(),
            definitions: HashMap::new(),
            fraction: None,
            relations: HashMap::new(),
            combinations: HashMap::new(),
            kernels: HashMap::new(),
            splits: Vec::new(),
            dominant: HashMap::new(),
            exclusions: HashMap::new(),
            units: HashMap::new(),
            closed: BTreeSet::new(),
            main_closed: false,
            candidates: BTreeSet::new(),
            square_tests: Vec::new(),
            referenced: HashSet::new(),
        }
    }

    fn earlier(&mut self, label: &str) -> Check<()> {
        if !self.labels.contains_key(label) {
            return Err(format!("reference to {label:?}, which is not an earlier step"));
        }
        self.referenced.insert(label.to_string());
        Ok(())
    }

    fn fraction(&self) -> Check<FractionInfo> {
        self.fraction.clone().ok_or_else(|| "no fraction X = a/b has been introduced".to_string())
    }

    fn fresh(&mut self, var: &str) -> Check<()> {
        if self.bound.contains(var) {
            return Err(format!("variable {var} is already bound"));
        }
        self.bound.insert(var.to_string());
        Ok(())
    }

    fn split(&self, label: &str) -> Check<&SplitInfo> {
        self.splits
            .iter()
            .find(|(_, l, _)| l == label)
            .map(|(_, _, s)| s)
            .ok_or_else(|| format!("{label:?} is not a case split"))
    }

    fn case_relation(&mut self, split: &str, kernel: u64) -> Check<Relation> {
        self.earlier(split)?;
        let info = self.split(split)?;
        if !info.kernels.contains(&kernel) {
            return Err(format!("{kernel} is not a case of {split:?}"));
        }
        let d = MPoly::var(&info.square_var);
        Ok(Relation {
            left: d.pow(2).scale(&int(kernel as i64)),
            right: vec![info.factor.clone()],
            scope: Some((split.to_string(), kernel)),
        })
    }

    fn resolve(&mut self, r: &RelationRef) -> Check<Relation> {
        match r {
            RelationRef::Derived { label } => {
                self.earlier(label)?;
                self.relations.get(label).cloned().ok_or_else(|| format!("{label:?} is not a relation"))
            }
            RelationRef::Case { split, kernel } => self.case_relation(split, *kernel),
        }
    }

    fn derived_unscoped(&mut self, label: &str) -> Check<Relation> {
        let rel = self.resolve(&RelationRef::Derived { label: label.into() })?;
        if rel.scope.is_some() {
            return Err(format!("relation {label:?} holds only in one case"));
        }
        Ok(rel)
    }

    fn step(&mut self, _index: usize, step: &Step) -> Check<()> {
        match step {
            Step::AlgebraicIdentity(s) => match &s.form {
                IdentityForm::Derivation { left, right, hypotheses, cofactors, multiplier } => {
                    self.derivation(&s.label, left, right, hypotheses, cofactors, multiplier)
                }
                IdentityForm::Combination { terms, result } => self.combination(&s.label, terms, result),
            },
            Step::ResidueEnumeration(s) => self.residue(s),
            Step::ValuationArgument(s) => match &s.form {
                ValuationForm::DominantTerm { prime, target, square_var, patterns, conclusion } => {
                    self.dominant_term(&s.label, prime, target, square_var, patterns, *conclusion)
                }
                ValuationForm::DenominatorKernel { variable, kernel, square_var, classes } => {
                    self.denominator_kernel(&s.label, variable, *kernel, square_var, classes)
                }
                ValuationForm::SquarefreeCases {
                    relation,
                    factor,
                    combinations,
                    sign_normalization,
                    square_var,
                    kernels,
                } => self.squarefree_cases(
                    &s.label,
                    relation,
                    *factor,
                    combinations,
                    sign_normalization,
                    square_var,
                    kernels,
                ),
            },
            Step::FactLookup(s) => self.lookup(s),
            Step::SquareTest(s) => self.square_test(_index, s),
        }
    }

    fn hypothesis(&mut self, h: &Hypothesis) -> Check<(MPoly, Option<CaseKey>)> {
        match h {
            Hypothesis::Curve => Ok((&MPoly::var("Y").pow(2) - &self.rhs, None)),
            Hypothesis::Relation { label } => {
                let rel = self.resolve(&RelationRef::Derived { label: label.clone() })?;
                Ok((rel.poly(), rel.scope))
            }
            Hypothesis::Definition { var, scale, value } => {
                let scale = parse(scale.as_deref().unwrap_or("1"))?;
                let value = parse(value)?;
                if let Some((s, v)) = self.definitions.get(var) {
                    if *s != scale || *v != value {
                        return Err(format!("{var} is redefined differently"));
                    }
                } else {
                    match scale.as_term() {
                        Some((c, m)) if !c.is_zero() && m.keys().all(|v| self.nonzero.contains(v)) => {}
                        _ => return Err(format!("scale of {var} is not a nonzero monomial")),
                    }
                    if let Some(v) = value.variables().iter().chain(scale.variables().iter()).find(|v| !self.bound.contains(*v)) {
                        return Err(format!("definition of {var} uses unbound {v}"));
                    }
                    self.fresh(var)?;
                    self.definitions.insert(var.clone(), (scale.clone(), value.clone()));
                }
                Ok((&(&scale * &MPoly::var(var)) - &value, None))
            }
            Hypothesis::Fraction { var, numerator, denominator } => {
                let info = FractionInfo { var: var.clone(), num: numerator.clone(), den: denominator.clone() };
                match &self.fraction {
                    Some(f) if *f == info => {}
                    Some(_) => return Err("a different fraction is already introduced".into()),
                    None => {
                        if var != "X" {
                            return Err(format!("only X may be written as a fraction, not {var}"));
                        }
                        if numerator == denominator {
                            return Err("numerator and denominator must differ".into());
                        }
                        self.fresh(numerator)?;
                        self.fresh(denominator)?;
                        self.nonzero.insert(denominator.clone());
                        self.fraction = Some(info);
                    }
                }
                Ok((&(&MPoly::var(denominator) * &MPoly::var(var)) - &MPoly::var(numerator), None))
            }
            Hypothesis::Kernel { step } => {
                self.earlier(step)?;
                let k = self.kernels.get(step).cloned().ok_or_else(|| format!("{step:?} is not a kernel step"))?;
                let sq = MPoly::var(&k.square_var).pow(2).scale(&int(k.kernel as i64));
                Ok((&MPoly::var(&k.den) - &sq, None))
            }
            Hypothesis::Case { step, kernel } => {
                let rel = self.case_relation(step, *kernel)?;
                Ok((&rel.right_product() - &rel.left, rel.scope))
            }
        }
    }

    fn derivation(
        &mut self,
        label: &str,
        left: &str,
        right: &[String],
        hypotheses: &[Hypothesis],
        cofactors: &[String],
        multiplier: &str,
    ) -> Check<()> {
        if hypotheses.len() != cofactors.len() {
            return Err(format!("{} hypotheses but {} cofactors", hypotheses.len(), cofactors.len()));
        }
        let mut scope: Option<CaseKey> = None;
        let mut combined = MPoly::zero();
        for (h, c) in hypotheses.iter().zip(cofactors) {
            let (poly, s) = self.hypothesis(h)?;
            if let Some(s) = s {
                if scope.as_ref().is_some_and(|old| *old != s) {
                    return Err("hypotheses come from different cases".into());
                }
                scope = Some(s);
            }
            combined = &combined + &(&parse(c)? * &poly);
        }
        let m = parse(multiplier)?;
        match m.as_term() {
            Some((c, mono)) if !c.is_zero() && mono.keys().all(|v| self.nonzero.contains(v)) => {}
            _ => return Err("multiplier is not a monomial in variables known to be nonzero".into()),
        }
        let rel = Relation {
            left: parse(left)?,
            right: right.iter().map(|s| parse(s)).collect::<Check<_>>()?,
            scope,
        };
        if &m * &rel.poly() != combined {
            return Err("identity does not hold: multiplier * (left - right) differs from the cofactor combination".into());
        }
        let mut vars = rel.left.variables();
        for f in &rel.right {
            vars.extend(f.variables());
        }
        if let Some(v) = vars.iter().find(|v| !self.bound.contains(*v)) {
            return Err(format!("conclusion mentions unbound variable {v}"));
        }
        self.relations.insert(label.to_string(), rel);
        Ok(())
    }

    fn combination(&mut self, label: &str, terms: &[CombinationTerm], result: &str) -> Check<()> {
        let mut sum = MPoly::zero();
        let mut parsed = Vec::new();
        for t in terms {
            let f = parse(&t.factor)?;
            sum = &sum + &f.scale(&t.coefficient);
            parsed.push((t.coefficient.clone(), f));
        }
        let result = parse(result)?;
        if sum != result {
            return Err(format!("combination equals {sum}, not {result}"));
        }
        self.combinations.insert(label.to_string(), (parsed, result));
        Ok(())
    }

    fn residue(&mut self, s: &ResidueStep) -> Check<()> {
        let names: BTreeSet<&str> = s.variables.iter().map(|v| v.name.as_str()).collect();
        if names.len() != s.variables.len() {
            return Err("repeated residue variable".into());
        }
        let constraints: Vec<(MPoly, MPoly)> = s
            .constraints
            .iter()
            .map(|c| Ok((parse(&c.left)?, parse(&c.right)?)))
            .collect::<Check<_>>()?;
        let expressions: Vec<MPoly> = match &s.claim {
            ResidueClaim::Count { .. } => Vec::new(),
            ResidueClaim::Image { expressions, .. } => expressions.iter().map(|e| parse(e)).collect::<Check<_>>()?,
        };
        for p in constraints.iter().flat_map(|(l, r)| [l, r]).chain(expressions.iter()) {
            if let Some(v) = p.variables().into_iter().find(|v| !names.contains(v.as_str())) {
                return Err(format!("{v} is not a residue variable"));
            }
        }
        let e = enumerate_residues(s.modulus, &s.variables, &constraints, &expressions).map_err(|e| e.to_string())?;
        match &s.claim {
            ResidueClaim::Count { count } => {
                if e.count != *count {
                    return Err(format!("claimed {count} solutions, enumeration finds {}", e.count));
                }
            }
            ResidueClaim::Image { values, .. } => {
                let found: Vec<Vec<u64>> = e.image.iter().cloned().collect();
                if *values != found {
                    return Err(format!("claimed image {values:?}, enumeration finds {found:?}"));
                }
            }
        }
        let mut used_units = Vec::new();
        for u in &s.uses {
            self.earlier(u)?;
            if let Some(f) = self.units.get(u) {
                used_units.push(f.clone());
            }
        }
        let var = |name: &str| s.variables.iter().find(|v| v.name == name);
        match &s.role {
            ResidueRole::Exposition => Ok(()),
            ResidueRole::ExcludesPatterns { relation, prime, variable, patterns } => {
                let count_zero = matches!(s.claim, ResidueClaim::Count { count: 0 });
                if !count_zero {
                    return Err("an exclusion must claim zero solutions".into());
                }
                if !is_prime(*prime) || !is_prime_power(s.modulus, *prime) {
                    return Err(format!("modulus {} is not a power of {prime}", s.modulus));
                }
                let rel = self.derived_unscoped(relation)?;
                if constraints.len() != 1 || constraints[0].0 != rel.left || constraints[0].1 != rel.right_product() {
                    return Err(format!("congruence does not restate {relation:?}"));
                }
                if variable != "X" {
                    return Err("patterns must describe X".into());
                }
                let (c, w) = single_square(&rel.left).ok_or("left side is not c*W^2")?;
                let right = rel.right_product();
                if right.variables().iter().any(|v| v != "X") || w == "X" {
                    return Err("relation must be c*W^2 = f(X)".into());
                }
                let v = padic_val(&c, *prime).map_err(|e| e.to_string())?;
                let integral = right.terms().all(|(_, k)| padic_val(&Rational::from_integer(k.denom().clone()), *prime) == Ok(0));
                if v > 1 || !integral {
                    return Err(format!("{w} need not be {prime}-integral"));
                }
                let (Some(xv), Some(wv)) = (var("X"), var(&w)) else {
                    return Err("residue variables must be X and the square variable".into());
                };
                if wv.units_only {
                    return Err(format!("{w} cannot be restricted to units"));
                }
                let mut pats = patterns.clone();
                pats.sort();
                pats.dedup();
                let ok = if xv.units_only {
                    pats == [Pattern::Zero]
                } else {
                    !pats.is_empty() && !pats.contains(&Pattern::Negative)
                };
                if !ok || pats.len() != patterns.len() {
                    return Err(format!("patterns {patterns:?} do not match the residue domain"));
                }
                self.exclusions.insert(
                    s.label.clone(),
                    Exclusion { relation: relation.clone(), prime: *prime, variable: variable.clone(), patterns: pats },
                );
                Ok(())
            }
            ResidueRole::UnitsInCase { split, kernel, prime } => {
                let rel = self.case_relation(split, *kernel)?;
                let f = self.fraction()?;
                if s.modulus != *prime || !is_prime(*prime) || kernel % prime != 0 {
                    return Err(format!("{prime} must be a prime dividing the kernel {kernel}, used as modulus"));
                }
                let ab = &MPoly::var(&f.num) * &MPoly::var(&f.den);
                let expected = [(rel.right_product(), MPoly::zero()), (ab, MPoly::zero())];
                if constraints != expected {
                    return Err("constraints must be A = 0 and a*b = 0".into());
                }
                let want = [MPoly::var(&f.num), MPoly::var(&f.den)];
                let image_ok = matches!(&s.claim, ResidueClaim::Image { values, .. } if *values == vec![vec![0, 0]]);
                if expressions != want || !image_ok {
                    return Err("claim must be that a and b both vanish".into());
                }
                if s.variables.iter().any(|v| v.units_only) {
                    return Err("variables must range over all residues".into());
                }
                self.units.insert(s.label.clone(), (split.clone(), *kernel, *prime));
                Ok(())
            }
            ResidueRole::CaseElimination { split, kernel, relations } => {
                if !matches!(s.claim, ResidueClaim::Count { count: 0 }) {
                    return Err("an elimination must claim zero solutions".into());
                }
                let f = self.fraction()?;
                let integers: BTreeSet<String> = [f.num.clone(), f.den.clone()].into();
                if relations.len() != constraints.len() {
                    return Err("one congruence per relation is required".into());
                }
                let key = (split.clone(), *kernel);
                for (r, (l, rt)) in relations.iter().zip(&constraints) {
                    let rel = self.resolve(r)?;
                    if rel.scope.as_ref().is_some_and(|sc| *sc != key) {
                        return Err("relation belongs to another case".into());
                    }
                    if rel.left != *l || rel.right_product() != *rt {
                        return Err("congruence does not restate its relation".into());
                    }
                    let (c, _) = single_square(&rel.left).ok_or("relation is not s*v^2 = f(a, b)")?;
                    let squarefree_int = c.is_integer()
                        && c.is_positive()
                        && prime_support(c.numer()).iter().all(|&p| padic_val(&c, p) == Ok(1));
                    if !squarefree_int || !rt.is_integral() || !rt.variables().is_subset(&integers) {
                        return Err("relation does not force integral variables".into());
                    }
                }
                for v in s.variables.iter().filter(|v| v.units_only) {
                    let justified = integers.contains(&v.name)
                        && used_units.iter().any(|(sp, k, p)| *sp == key.0 && *k == key.1 && s.modulus.is_multiple_of(*p));
                    if !justified {
                        return Err(format!("{} is restricted to units without justification", v.name));
                    }
                }
                self.case_relation(split, *kernel)?;
                self.closed.insert(key);
                self.referenced.insert(s.label.clone());
                Ok(())
            }
        }
    }

    fn dominant_term(
        &mut self,
        label: &str,
        prime: &PrimeSpec,
        target: &ValuationTarget,
        square_var: &str,
        patterns: &BTreeMap<String, Pattern>,
        conclusion: ValuationConclusion,
    ) -> Check<()> {
        let explicit = match prime {
            PrimeSpec::Prime(p) if is_prime(*p) => Some(*p),
            PrimeSpec::Prime(p) => return Err(format!("{p} is not prime")),
            PrimeSpec::AllExcept(list) if list.iter().all(|&p| is_prime(p)) => None,
            PrimeSpec::AllExcept(_) => return Err("exception list contains a non-prime".into()),
        };
        let relations = match target {
            ValuationTarget::Derived { label } => vec![self.resolve(&RelationRef::Derived { label: label.clone() })?],
            ValuationTarget::Cases { split, kernels } => {
                if kernels.is_empty() {
                    return Err("no cases listed".into());
                }
                kernels.iter().map(|&k| self.case_relation(split, k)).collect::<Check<_>>()?
            }
        };
        let keys: BTreeSet<String> = patterns.keys().cloned().collect();
        let on_x = keys == BTreeSet::from(["X".to_string()]);
        if !on_x {
            let f = self.fraction()?;
            if keys != BTreeSet::from([f.num.clone(), f.den.clone()]) {
                return Err("patterns must describe X or both of a, b".into());
            }
            if explicit.is_none() {
                return Err("integer patterns need a single prime".into());
            }
            if patterns.values().any(|p| *p == Pattern::Negative) {
                return Err("integers have non-negative valuation".into());
            }
            if patterns.values().all(|p| *p == Pattern::Positive) {
                return Err("coprime integers cannot both be divisible by the prime".into());
            }
        }
        let val = |q: &Rational| -> Check<i64> {
            match (explicit, prime) {
                (Some(p), _) => padic_val(q, p).map_err(|e| e.to_string()),
                (None, PrimeSpec::AllExcept(list)) => {
                    if rational_support(q).iter().all(|p| list.contains(p)) {
                        Ok(0)
                    } else {
                        Err(format!("coefficient {q} has a prime outside the exception list"))
                    }
                }
                _ => unreachable!(),
            }
        };
        for rel in &relations {
            let (c, w) = single_square(&rel.left).ok_or("left side is not c*W^2")?;
            if w != square_var {
                return Err(format!("square variable is {w}, not {square_var}"));
            }
            let right = rel.right_product();
            if let Some(v) = right.variables().into_iter().find(|v| !keys.contains(v)) {
                return Err(format!("no valuation pattern for {v}"));
            }
            let lhs = val(&c)?;
            let mut terms: Vec<(i64, i64)> = Vec::new();
            for (mono, coef) in right.terms() {
                let alpha = val(coef)?;
                let beta: i64 = mono.iter().map(|(v, &e)| e as i64 * pattern_slope(patterns[v])).sum();
                terms.push((alpha, beta));
            }
            let dominant = (0..terms.len()).find(|&j| {
                let (aj, bj) = terms[j];
                terms.iter().enumerate().all(|(i, &(ai, bi))| i == j || (aj + bj < ai + bi && bj <= bi))
            });
            let Some(j) = dominant else {
                return Err("no term has strictly least valuation for every k >= 1".into());
            };
            let (aj, bj) = terms[j];
            // v(c) + 2 v(W) = aj + bj*k
            let derived = if bj.rem_euclid(2) == 0 {
                if (aj - lhs).rem_euclid(2) == 1 {
                    Some(ValuationConclusion::Contradiction)
                } else {
                    None
                }
            } else {
                Some(ValuationConclusion::Parity { residue: (lhs - aj).rem_euclid(2) as u8 })
            };
            if derived != Some(conclusion) {
                return Err(match derived {
                    Some(d) => format!("valuations give {d:?}, not {conclusion:?}"),
                    None => "valuations are consistent; no conclusion follows".into(),
                });
            }
        }
        self.dominant.insert(
            label.to_string(),
            DominantResult { prime: prime.clone(), target: target.clone(), patterns: patterns.clone(), conclusion },
        );
        Ok(())
    }

    fn denominator_kernel(
        &mut self,
        label: &str,
        variable: &str,
        kernel: u64,
        square_var: &str,
        classes: &[KernelClass],
    ) -> Check<()> {
        let f = self.fraction()?;
        if variable != f.var {
            return Err(format!("{variable} is not the fraction variable"));
        }
        let mut explicit: Vec<u64> = Vec::new();
        let mut rest: Option<Vec<u64>> = None;
        for c in classes {
            match &c.primes {
                PrimeSpec::Prime(p) if is_prime(*p) && !explicit.contains(p) => explicit.push(*p),
                PrimeSpec::AllExcept(l) if rest.is_none() => rest = Some(l.clone()),
                _ => return Err("prime classes must be distinct primes plus one remainder".into()),
            }
        }
        let mut sorted = explicit.clone();
        sorted.sort_unstable();
        let mut rest = rest.ok_or("missing the class of all other primes")?;
        rest.sort_unstable();
        if rest != sorted {
            return Err("remainder class must exclude exactly the listed primes".into());
        }
        let only_x = BTreeMap::from([(variable.to_string(), Pattern::Negative)]);
        let mut product = 1u64;
        for c in classes {
            self.earlier(&c.negative)?;
            let neg = self.dominant.get(&c.negative).cloned().ok_or("negative class must cite a valuation step")?;
            let r = match (&neg.target, neg.conclusion) {
                (ValuationTarget::Derived { label }, ValuationConclusion::Parity { residue })
                    if neg.prime == c.primes && neg.patterns == only_x =>
                {
                    self.derived_unscoped(label)?;
                    residue
                }
                _ => return Err(format!("{:?} is not a parity result for negative valuation", c.negative)),
            };
            let mut covered = BTreeSet::new();
            for l in &c.non_negative {
                self.earlier(l)?;
                if let Some(d) = self.dominant.get(l).cloned() {
                    let pat = d.patterns.get(variable).copied();
                    let ok = d.prime == c.primes
                        && d.patterns.len() == 1
                        && matches!(pat, Some(Pattern::Zero | Pattern::Positive))
                        && d.conclusion == ValuationConclusion::Contradiction
                        && matches!(&d.target, ValuationTarget::Derived { .. });
                    if !ok {
                        return Err(format!("{l:?} does not exclude a non-negative valuation"));
                    }
                    if let ValuationTarget::Derived { label } = &d.target {
                        self.derived_unscoped(label)?;
                    }
                    covered.insert(pat.unwrap());
                } else if let Some(ex) = self.exclusions.get(l).cloned() {
                    if c.primes != PrimeSpec::Prime(ex.prime) || ex.variable != variable {
                        return Err(format!("{l:?} excludes patterns for another prime"));
                    }
                    self.derived_unscoped(&ex.relation)?;
                    covered.extend(ex.patterns);
                } else {
                    return Err(format!("{l:?} is not an exclusion"));
                }
            }
            let full = covered == BTreeSet::from([Pattern::Zero, Pattern::Positive]);
            if !covered.is_empty() && !full {
                return Err("non-negative valuations are only partly excluded".into());
            }
            match (&c.primes, r) {
                (_, 0) => {}
                (PrimeSpec::Prime(p), 1) if full => product *= p,
                (PrimeSpec::Prime(p), _) => return Err(format!("valuation of the denominator at {p} is not determined")),
                (PrimeSpec::AllExcept(_), _) => return Err("remaining primes must appear to even powers".into()),
            }
        }
        if product != kernel {
            return Err(format!("denominator kernel is {product}, not {kernel}"));
        }
        self.fresh(square_var)?;
        self.nonzero.insert(square_var.to_string());
        self.kernels.insert(
            label.to_string(),
            KernelInfo { den: f.den.clone(), kernel, square_var: square_var.to_string() },
        );
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn squarefree_cases(
        &mut self,
        label: &str,
        relation: &str,
        factor: usize,
        combinations: &[String],
        sign_normalization: &str,
        square_var: &str,
        kernels: &[u64],
    ) -> Check<()> {
        let rel = self.derived_unscoped(relation)?;
        let f = self.fraction()?;
        let (c, _w) = single_square(&rel.left).ok_or("left side is not W^2")?;
        if !c.is_one() || rel.right.len() != 2 || factor > 1 {
            return Err("relation must read W^2 = A*B".into());
        }
        let a_factor = rel.right[factor].clone();
        let b_factor = rel.right[1 - factor].clone();
        let ints: BTreeSet<String> = [f.num.clone(), f.den.clone()].into();
        for p in [&a_factor, &b_factor] {
            if !p.is_integral() || !p.variables().is_subset(&ints) {
                return Err("factors must be integral polynomials in a, b".into());
            }
        }
        // A*B never vanishes: it is b^N rhs(X) and rhs has no rational root.
        let product = &a_factor * &b_factor;
        let n = product.terms().map(|(m, _)| m.values().sum::<u32>()).max().unwrap_or(0);
        let dehomog = product.substitute(&f.num, &(&MPoly::var(&f.var) * &MPoly::var(&f.den)));
        if dehomog != &MPoly::var(&f.den).pow(n) * &self.rhs || !rational_roots(&self.curve.rhs()).is_empty() {
            return Err("A*B is not a nonvanishing form of the curve".into());
        }
        let mut support = BTreeSet::new();
        let mut hit = BTreeSet::new();
        for l in combinations {
            self.earlier(l)?;
            let (terms, result) = self.combinations.get(l).cloned().ok_or_else(|| format!("{l:?} is not a combination"))?;
            for (coef, fac) in &terms {
                if !coef.is_integer() || (*fac != a_factor && *fac != b_factor) {
                    return Err(format!("{l:?} is not an integral combination of A and B"));
                }
            }
            let (c, mono) = result.as_term().ok_or("combination result is not a monomial")?;
            let var = match mono.iter().collect::<Vec<_>>()[..] {
                [(v, _)] if ints.contains(v) => v.clone(),
                _ => return Err("combination result must be c * a^e or c * b^e".into()),
            };
            if !c.is_integer() || c.is_zero() {
                return Err("combination constant must be a nonzero integer".into());
            }
            hit.insert(var);
            support.extend(prime_support(c.numer()));
        }
        if hit != ints {
            return Err("combinations must isolate both a and b".into());
        }
        let expected_norm = format!("({},{}) -> (-{},-{})", f.num, f.den, f.num, f.den);
        let flip = |p: &MPoly| {
            p.substitute(&f.num, &-&MPoly::var(&f.num)).substitute(&f.den, &-&MPoly::var(&f.den))
        };
        if sign_normalization != expected_norm || flip(&a_factor) != -&a_factor || flip(&b_factor) != -&b_factor {
            return Err("sign normalization does not negate both factors".into());
        }
        let divisors = squarefree_divisors(&support);
        if kernels != divisors {
            return Err(format!("cases must be the squarefree divisors {divisors:?}"));
        }
        self.fresh(square_var)?;
        self.nonzero.insert(square_var.to_string());
        let index = self.labels.len();
        self.splits.push((
            index,
            label.to_string(),
            SplitInfo { factor: a_factor, square_var: square_var.to_string(), kernels: kernels.to_vec() },
        ));
        Ok(())
    }

    fn lookup(&mut self, s: &LookupStep) -> Check<()> {
        let entry = self
            .table
            .entry(s.equation)
            .cloned()
            .ok_or_else(|| format!("fact table has no entry for {}", s.equation))?;
        let rel = self.resolve(&s.relation)?;
        let f = self.fraction()?;
        let [va, vb, vd] = &s.variables;
        if *va != f.num || *vb != f.den {
            return Err("lookup variables must be the numerator and denominator of X".into());
        }
        match single_square(&rel.left) {
            Some((c, w)) if c.is_one() && w == *vd => {}
            _ => return Err(format!("relation must read {vd}^2 = f(a, b)")),
        }
        let eq = s.equation.polynomial(va, vb, vd);
        let poly = rel.poly();
        if poly != eq && poly != -&eq {
            return Err(format!("relation is not {}", s.equation));
        }
        if s.scope != entry.scope || s.candidates != entry.solutions || s.families != entry.families {
            return Err("lookup does not quote the fact table".into());
        }
        let mut abscissae: BTreeSet<Rational> = s
            .candidates
            .iter()
            .filter(|t| !t[1].is_zero())
            .map(|t| Rational::new(t[0].clone(), t[1].clone()))
            .collect();
        if s.families.contains(&Family::AZero) {
            abscissae.insert(int(0));
        }
        let excluded: Vec<Rational> = match s.scope {
            Scope::AbNonzero => vec![int(0)],
            Scope::BNonzero => vec![],
        };
        if s.abscissae != abscissae.iter().cloned().collect::<Vec<_>>() || s.excluded_abscissae != excluded {
            return Err("abscissae do not follow from the table".into());
        }
        match rel.scope {
            None => self.main_closed = true,
            Some(k) => {
                self.closed.insert(k);
            }
        }
        self.candidates.extend(abscissae);
        self.candidates.extend(excluded);
        Ok(())
    }

    fn square_test(&mut self, index: usize, s: &SquareTestStep) -> Check<()> {
        let value = self.curve.rhs_at(&s.abscissa);
        if value != s.value {
            return Err(format!("rhs({}) is {value}, not {}", s.abscissa, s.value));
        }
        let ok = match (&s.verdict, is_square(&value)) {
            (SquareVerdict::NotSquare, None) => true,
            (SquareVerdict::Square { root }, Some(r)) => *root == r,
            _ => false,
        };
        if !ok {
            return Err("square verdict is wrong".into());
        }
        if self.square_tests.iter().any(|(_, x, _)| *x == s.abscissa) {
            return Err("abscissa tested twice".into());
        }
        self.square_tests.push((index, s.abscissa.clone(), s.verdict.clone()));
        Ok(())
    }

    fn case_covered_by_valuations(&mut self, split: &str, kernel: u64) -> bool {
        let f = match &self.fraction {
            Some(f) => f.clone(),
            None => return false,
        };
        let needed: BTreeSet<(Pattern, Pattern)> = [
            (Pattern::Zero, Pattern::Zero),
            (Pattern::Zero, Pattern::Positive),
            (Pattern::Positive, Pattern::Zero),
        ]
        .into();
        let mut by_prime: BTreeMap<u64, Vec<(String, PatternPair)>> = BTreeMap::new();
        for (label, d) in &self.dominant {
            let (PrimeSpec::Prime(p), ValuationTarget::Cases { split: sp, kernels }) = (&d.prime, &d.target) else {
                continue;
            };
            if sp != split || !kernels.contains(&kernel) || d.conclusion != ValuationConclusion::Contradiction {
                continue;
            }
            if let (Some(pa), Some(pb)) = (d.patterns.get(&f.num), d.patterns.get(&f.den)) {
                by_prime.entry(*p).or_default().push((label.clone(), (*pa, *pb)));
            }
        }
        for steps in by_prime.values() {
            let got: BTreeSet<_> = steps.iter().map(|(_, p)| *p).collect();
            if needed.is_subset(&got) {
                self.referenced.extend(steps.iter().map(|(l, _)| l.clone()));
                return true;
            }
        }
        false
    }

    fn finish(mut self, cert: &ObstructionCertificate) -> std::result::Result<(), VerificationFailure> {
        let fail = |step: Option<usize>, label: &str, reason: String| VerificationFailure {
            step,
            label: label.to_string(),
            reason,
        };
        let splits = self.splits.clone();
        for (index, label, info) in &splits {
            for &k in &info.kernels {
                let key = (label.clone(), k);
                if !self.closed.contains(&key) && !self.case_covered_by_valuations(label, k) {
                    return Err(fail(Some(*index), label, format!("case {k} is never closed")));
                }
            }
        }
        if splits.is_empty() && !self.main_closed {
            return Err(fail(None, "cases", "no step accounts for every point".into()));
        }
        for x in &self.candidates {
            if !self.square_tests.iter().any(|(_, t, _)| t == x) {
                return Err(fail(None, "square tests", format!("candidate abscissa {x} is never tested")));
            }
        }
        for (i, x, _) in &self.square_tests {
            if !self.candidates.contains(x) {
                return Err(fail(Some(*i), cert.steps[*i].label(), format!("{x} is not a candidate abscissa")));
            }
        }
        let mut points = Vec::new();
        for (_, x, v) in &self.square_tests {
            if let SquareVerdict::Square { root } = v {
                points.push(AffinePoint::new(x.clone(), root.clone()));
                if !root.is_zero() {
                    points.push(AffinePoint::new(x.clone(), -root.clone()));
                }
            }
        }
        points.sort_by(AffinePoint::canonical_cmp);
        let expected = if points.is_empty() { Verdict::Empty } else { Verdict::Points(points) };
        if cert.verdict != expected {
            return Err(fail(None, "verdict", format!("steps establish {expected:?}")));
        }
        for (i, s) in cert.steps.iter().enumerate() {
            let terminal = matches!(s, Step::FactLookup(_) | Step::SquareTest(_));
            if !terminal && !self.referenced.contains(s.label()) {
                return Err(fail(Some(i), s.label(), "conclusion is never used".into()));
            }
        }
        Ok(())
    }
}

fn is_prime_power(n: u64, p: u64) -> bool {
    let mut n = n;
    while n > 1 && n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        let vars = [ResidueVar { name: "x".into(), units_only: false }];
        let c = [(MPoly::var("x").pow(2), MPoly::int(1))];
        let e = enumerate_residues(8, &vars, &c, &[MPoly::var("x")]).unwrap();
        assert_eq!(e.count, 4);
        assert_eq!(e.image.len(), 4);
        let units = [ResidueVar { name: "x".into(), units_only: true }];
        let fifth = enumerate_residues(25, &units, &[], &[MPoly::var("x").pow(5)]).unwrap();
        let image: Vec<Vec<u64>> = fifth.image.into_iter().collect();
        assert_eq!(image, vec![vec![1], vec![7], vec![18], vec![24]]);
    }

    #[test]
    fn divisors() {
        assert_eq!(squarefree_divisors(&[2, 5].into()), vec![1, 2, 5, 10]);
        assert!(is_prime_power(25, 5) && !is_prime_power(50, 5));
    }
}
