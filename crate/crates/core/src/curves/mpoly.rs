//! Sparse multivariate polynomials over Q with named variables.
//!
//! Certificates store identities as strings in this syntax; the renderer is
//! canonical, so `parse(render(p)) == p` and equal polynomials render equally.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};

/// Variable name to positive exponent, sorted by name.
pub type Monomial = BTreeMap<String, u32>;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = MPoly::zero();
        p.add_term(Monomial::new(), c);
        p
    }

    pub fn int(n: i64) -> Self {
        MPoly::constant(Rational::from_integer(n.into()))
    }

    pub fn var(name: &str) -> Self {
        let mut m = Monomial::new();
        m.insert(name.to_string(), 1);
        let mut p = MPoly::zero();
        p.add_term(m, Rational::one());
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.terms.keys().flat_map(|m| m.keys().cloned()).collect()
    }

    /// The constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::new()).cloned(),
            _ => None,
        }
    }

    /// (coefficient, monomial) if the polynomial is a single term.
    pub fn as_term(&self) -> Option<(&Rational, &Monomial)> {
        (self.terms.len() == 1).then(|| {
            let (m, c) = self.terms.iter().next().unwrap();
            (c, m)
        })
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        (0..e).fold(MPoly::int(1), |acc, _| &acc * self)
    }

    /// Replaces `var` by `value` everywhere.
    pub fn substitute(&self, var: &str, value: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let e = rest.remove(var).unwrap_or(0);
            let mut term = MPoly::zero();
            term.add_term(rest, c.clone());
            out = &out + &(&term * &value.pow(e));
        }
        out
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        self.terms.keys().filter_map(|m| m.get(var).copied()).max().unwrap_or(0)
    }

    /// Every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Value at integer residues modulo `modulus`; every coefficient must have
    /// a denominator invertible modulo `modulus`.
    pub fn compile_mod(&self, vars: &[String], modulus: u64) -> Result<CompiledPoly> {
        let m = BigInt::from(modulus);
        let mut terms = Vec::new();
        for (mono, c) in &self.terms {
            let inv = c.denom().extended_gcd(&m);
            if !inv.gcd.is_one() {
                return Err(Error::NotInvertible { gcd: inv.gcd.to_string() });
            }
            let coeff = (c.numer() * inv.x).mod_floor(&m).to_u64().expect("reduced residue");
            let mut powers = Vec::new();
            for (name, &e) in mono {
                let idx = vars
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| Error::Parse(format!("unbound variable {name}")))?;
                powers.push((idx, e));
            }
            terms.push((coeff, powers));
        }
        Ok(CompiledPoly { modulus, terms })
    }
}

/// Polynomial specialised for repeated evaluation on residues.
#[derive(Debug, Clone)]
pub struct CompiledPoly {
    modulus: u64,
    terms: Vec<(u64, Vec<(usize, u32)>)>,
}

impl CompiledPoly {
    pub fn eval(&self, point: &[u64]) -> u64 {
        let m = self.modulus as u128;
        let mut acc = 0u128;
        for (c, powers) in &self.terms {
            let mut t = *c as u128;
            for &(i, e) in powers {
                for _ in 0..e {
                    t = t * point[i] as u128 % m;
                }
            }
            acc = (acc + t) % m;
        }
        acc as u64
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, other: &MPoly) -> MPoly {
        self + &(-other)
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut m = m1.clone();
                for (v, e) in m2 {
                    *m.entry(v.clone()).or_insert(0) += e;
                }
                out.add_term(m, c1 * c2);
            }
        }
        out
    }
}

fn total_degree(m: &Monomial) -> u32 {
    m.values().sum()
}

/// Higher exponent of the alphabetically first differing variable first.
fn lex_cmp(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    let vars: BTreeSet<&String> = a.keys().chain(b.keys()).collect();
    for v in vars {
        let (ea, eb) = (a.get(v).copied().unwrap_or(0), b.get(v).copied().unwrap_or(0));
        if ea != eb {
            return eb.cmp(&ea);
        }
    }
    std::cmp::Ordering::Equal
}

impl fmt::Display for MPoly {
    /// Terms by descending total degree, then by variable name.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| total_degree(b).cmp(&total_degree(a)).then_with(|| lex_cmp(a, b)));
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let vars: Vec<String> = m
                .iter()
                .map(|(v, &e)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            let coeff = if abs.is_integer() { abs.numer().to_string() } else { format!("{}/{}", abs.numer(), abs.denom()) };
            match (vars.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{coeff}")?,
                (false, true) => write!(f, "{}", vars.join("*"))?,
                (false, false) => write!(f, "{}*{}", coeff, vars.join("*"))?,
            }
        }
        Ok(())
    }
}

impl FromStr for MPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tokens = tokenize(s)?;
        let mut parser = Parser { tokens, pos: 0 };
        let p = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(Error::Parse(format!("trailing input in {s:?}")));
        }
        Ok(p)
    }
}

/// Parses a polynomial, panicking on malformed input; for literals in code.
pub fn mp(s: &str) -> MPoly {
    s.parse().unwrap_or_else(|e| panic!("bad polynomial literal {s:?}: {e}"))
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Token::Num(text.parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) || c == '\u{2212}' {
            out.push(Token::Op(if c == '\u{2212}' { '-' } else { c }));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Token::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if op == '*' {
                &acc * &rhs
            } else {
                let c = rhs
                    .as_constant()
                    .filter(|c| !c.is_zero())
                    .ok_or_else(|| Error::Parse("division by a non-constant or zero".into()))?;
                acc.scale(&c.recip())
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MPoly> {
        if self.peek_op() == Some('-') {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            match self.tokens.get(self.pos) {
                Some(Token::Num(n)) => {
                    let e = n.to_u32().ok_or_else(|| Error::Parse("exponent too large".into()))?;
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return Err(Error::Parse("expected exponent".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly> {
        let token = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        match token {
            Some(Token::Num(n)) => Ok(MPoly::constant(Rational::from_integer(n))),
            Some(Token::Ident(v)) => Ok(MPoly::var(&v)),
            Some(Token::Op('(')) => {
                let inner = self.expr()?;
                if self.tokens.get(self.pos) != Some(&Token::Op(')')) {
                    return Err(Error::Parse("expected ')'".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}
