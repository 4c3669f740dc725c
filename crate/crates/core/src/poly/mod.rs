//! Dense univariate polynomials over any [`Ring`].

mod quartic;
mod quotient;
mod roots;

pub use quartic::{
    depress_quartic, epsilon_factorization, integral_monic_model, palindromic_quartic,
    quadratic_factorization, quartic_discriminant, quartic_irreducible, DepressedQuartic,
    QuarticAnalysis,
};
pub use quotient::{QuadraticRing, QuadraticRingTag, QuotientRing};
pub use roots::{primitive_integer_model, rational_root_multiplicities, rational_roots};

use std::fmt;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::ring::{Field, RationalAlgebra, RationalField, Ring};

/// Coefficients indexed by degree, trailing zeros trimmed. The zero
/// polynomial has no coefficients and degree `None` (minus infinity).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UniPoly<E> {
    coeffs: Vec<E>,
}

impl<E> UniPoly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lc(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }

    pub fn map<F, T>(&self, f: F) -> UniPoly<T>
    where
        F: FnMut(&E) -> T,
    {
        UniPoly {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

pub type QPoly = UniPoly<Rational>;

/// Polynomial ring over `base`; `var` is only used for rendering.
#[derive(Clone, Debug)]
pub struct PolyRing<R: Ring> {
    pub base: R,
    pub var: String,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R, var: &str) -> Self {
        PolyRing {
            base,
            var: var.to_string(),
        }
    }

    pub fn from_coeffs(&self, mut coeffs: Vec<R::Elem>) -> UniPoly<R::Elem> {
        while coeffs.last().is_some_and(|c| self.base.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(&self, coeffs: &[i64]) -> UniPoly<R::Elem> {
        self.from_coeffs(coeffs.iter().map(|&c| self.base.from_int(c)).collect())
    }

    pub fn zero_poly(&self) -> UniPoly<R::Elem> {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(&self, c: R::Elem) -> UniPoly<R::Elem> {
        self.from_coeffs(vec![c])
    }

    pub fn monomial(&self, c: R::Elem, k: usize) -> UniPoly<R::Elem> {
        let mut coeffs = vec![self.base.zero(); k];
        coeffs.push(c);
        self.from_coeffs(coeffs)
    }

    pub fn x(&self) -> UniPoly<R::Elem> {
        self.monomial(self.base.one(), 1)
    }

    pub fn add_p(&self, a: &UniPoly<R::Elem>, b: &UniPoly<R::Elem>) -> UniPoly<R::Elem> {
        let n = a.coeffs.len().max(b.coeffs.len());
        let zero = self.base.zero();
        let coeffs = (0..n)
            .map(|i| {
                self.base.add(
                    a.coeffs.get(i).unwrap_or(&zero),
                    b.coeffs.get(i).unwrap_or(&zero),
                )
            })
            .collect();
        self.from_coeffs(coeffs)
    }

    pub fn neg_p(&self, a: &UniPoly<R::Elem>) -> UniPoly<R::Elem> {
        UniPoly {
            coeffs: a.coeffs.iter().map(|c| self.base.neg(c)).collect(),
        }
    }

    pub fn sub_p(&self, a: &UniPoly<R::Elem>, b: &UniPoly<R::Elem>) -> UniPoly<R::Elem> {
        self.add_p(a, &self.neg_p(b))
    }

    pub fn mul_p(&self, a: &UniPoly<R::Elem>, b: &UniPoly<R::Elem>) -> UniPoly<R::Elem> {
        if a.is_zero() || b.is_zero() {
            return self.zero_poly();
        }
        let mut out = vec![self.base.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                out[i + j] = self.base.add(&out[i + j], &self.base.mul(x, y));
            }
        }
        self.from_coeffs(out)
    }

    pub fn scale(&self, a: &UniPoly<R::Elem>, c: &R::Elem) -> UniPoly<R::Elem> {
        self.from_coeffs(a.coeffs.iter().map(|x| self.base.mul(x, c)).collect())
    }

    pub fn pow_p(&self, a: &UniPoly<R::Elem>, e: u32) -> UniPoly<R::Elem> {
        let mut result = self.constant(self.base.one());
        for _ in 0..e {
            result = self.mul_p(&result, a);
        }
        result
    }

    /// Horner evaluation at a point of the coefficient ring.
    pub fn eval(&self, a: &UniPoly<R::Elem>, x: &R::Elem) -> R::Elem {
        a.coeffs.iter().rev().fold(self.base.zero(), |acc, c| {
            self.base.add(&self.base.mul(&acc, x), c)
        })
    }

    /// Evaluation at a point of an arbitrary ring `target` into which the
    /// coefficients are mapped by `embed`.
    pub fn eval_in<S: Ring>(
        &self,
        a: &UniPoly<R::Elem>,
        target: &S,
        x: &S::Elem,
        embed: impl Fn(&R::Elem) -> S::Elem,
    ) -> S::Elem {
        a.coeffs.iter().rev().fold(target.zero(), |acc, c| {
            target.add(&target.mul(&acc, x), &embed(c))
        })
    }

    pub fn derivative(&self, a: &UniPoly<R::Elem>) -> UniPoly<R::Elem> {
        let coeffs = a
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.base.mul(&self.base.from_int(i as i64), c))
            .collect();
        self.from_coeffs(coeffs)
    }

    /// a(b(X)).
    pub fn compose(&self, a: &UniPoly<R::Elem>, b: &UniPoly<R::Elem>) -> UniPoly<R::Elem> {
        a.coeffs.iter().rev().fold(self.zero_poly(), |acc, c| {
            self.add_p(&self.mul_p(&acc, b), &self.constant(c.clone()))
        })
    }

    /// Coefficient sequence reads the same reversed.
    pub fn is_palindromic(&self, a: &UniPoly<R::Elem>) -> bool {
        let n = a.coeffs.len();
        (0..n / 2).all(|i| self.base.equal(&a.coeffs[i], &a.coeffs[n - 1 - i]))
    }

    /// Division by a monic divisor; needs no inverses.
    pub fn divmod_monic(
        &self,
        a: &UniPoly<R::Elem>,
        b: &UniPoly<R::Elem>,
    ) -> (UniPoly<R::Elem>, UniPoly<R::Elem>) {
        let db = b.degree().expect("monic divisor is nonzero");
        debug_assert!(self.base.is_one(b.lc().unwrap()));
        let mut rem = a.coeffs.clone();
        if rem.len() <= db {
            return (self.zero_poly(), self.from_coeffs(rem));
        }
        let mut quot = vec![self.base.zero(); rem.len() - db];
        for k in (0..quot.len()).rev() {
            let c = rem[k + db].clone();
            if self.base.is_zero(&c) {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                rem[k + j] = self.base.sub(&rem[k + j], &self.base.mul(&c, bj));
            }
            quot[k] = c;
        }
        rem.truncate(db);
        (self.from_coeffs(quot), self.from_coeffs(rem))
    }

    pub fn render(&self, a: &UniPoly<R::Elem>) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in a.coeffs.iter().enumerate().rev() {
            if self.base.is_zero(c) {
                continue;
            }
            let mut s = self.base.render(c);
            let needs_parens = s[1..].contains(['+', '-']);
            if needs_parens {
                s = format!("({s})");
            }
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) if !needs_parens => (true, rest.to_string()),
                _ => (false, s),
            };
            let term = match (i, body.as_str()) {
                (0, _) => body.clone(),
                (_, "1") => self.power(i),
                _ => format!("{}*{}", body, self.power(i)),
            };
            if out.is_empty() {
                out = if neg { format!("-{term}") } else { term };
            } else {
                out.push_str(if neg { " - " } else { " + " });
                out.push_str(&term);
            }
        }
        out
    }

    fn power(&self, i: usize) -> String {
        if i == 1 {
            self.var.clone()
        } else {
            format!("{}^{}", self.var, i)
        }
    }
}

/// Quotient and remainder.
pub type QuotRem<E> = (UniPoly<E>, UniPoly<E>);

impl<R: Field> PolyRing<R> {
    pub fn divmod(
        &self,
        a: &UniPoly<R::Elem>,
        b: &UniPoly<R::Elem>,
    ) -> Result<QuotRem<R::Elem>> {
        let lc = b.lc().ok_or(Error::DivisionByZero)?;
        let inv = self.base.try_inv(lc)?;
        let monic = self.scale(b, &inv);
        let (q, r) = self.divmod_monic(a, &monic);
        Ok((self.scale(&q, &inv), r))
    }

    pub fn rem(&self, a: &UniPoly<R::Elem>, b: &UniPoly<R::Elem>) -> Result<UniPoly<R::Elem>> {
        Ok(self.divmod(a, b)?.1)
    }

    pub fn monic(&self, a: &UniPoly<R::Elem>) -> Result<UniPoly<R::Elem>> {
        match a.lc() {
            None => Ok(a.clone()),
            Some(lc) => Ok(self.scale(a, &self.base.try_inv(lc)?)),
        }
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, a: &UniPoly<R::Elem>, b: &UniPoly<R::Elem>) -> Result<UniPoly<R::Elem>> {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = self.rem(&a, &b)?;
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// (g, s, t) with s*a + t*b = g, g monic.
    #[allow(clippy::type_complexity)]
    pub fn ext_gcd(
        &self,
        a: &UniPoly<R::Elem>,
        b: &UniPoly<R::Elem>,
    ) -> Result<(UniPoly<R::Elem>, UniPoly<R::Elem>, UniPoly<R::Elem>)> {
        let one = self.constant(self.base.one());
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (one.clone(), self.zero_poly());
        let (mut t0, mut t1) = (self.zero_poly(), one);
        while !r1.is_zero() {
            let (q, r) = self.divmod(&r0, &r1)?;
            r0 = std::mem::replace(&mut r1, r);
            let s = self.sub_p(&s0, &self.mul_p(&q, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = self.sub_p(&t0, &self.mul_p(&q, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lc() {
            None => Ok((r0, s0, t0)),
            Some(lc) => {
                let inv = self.base.try_inv(lc)?;
                Ok((
                    self.scale(&r0, &inv),
                    self.scale(&s0, &inv),
                    self.scale(&t0, &inv),
                ))
            }
        }
    }

    /// Resultant by the Euclidean remainder sequence.
    pub fn resultant(&self, a: &UniPoly<R::Elem>, b: &UniPoly<R::Elem>) -> Result<R::Elem> {
        let (mut a, mut b) = (a.clone(), b.clone());
        let mut acc = self.base.one();
        loop {
            let (Some(m), Some(n)) = (a.degree(), b.degree()) else {
                return Ok(self.base.zero());
            };
            if n == 0 {
                return Ok(self.base.mul(&acc, &self.base.pow(&b.coeffs[0], m as u32)));
            }
            let r = self.rem(&a, &b)?;
            let Some(k) = r.degree() else {
                return Ok(self.base.zero());
            };
            if (m * n) % 2 == 1 {
                acc = self.base.neg(&acc);
            }
            acc = self
                .base
                .mul(&acc, &self.base.pow(b.lc().unwrap(), (m - k) as u32));
            a = b;
            b = r;
        }
    }

    /// disc(p) = (-1)^(n(n-1)/2) Res(p, p') / lc(p).
    pub fn discriminant(&self, p: &UniPoly<R::Elem>) -> Result<R::Elem> {
        let n = p.degree().unwrap_or(0);
        if n < 2 {
            return Err(Error::Degree(format!(
                "discriminant needs degree >= 2, got {n}"
            )));
        }
        let res = self.resultant(p, &self.derivative(p))?;
        let signed = if (n * (n - 1) / 2) % 2 == 1 {
            self.base.neg(&res)
        } else {
            res
        };
        self.base.try_div(&signed, p.lc().unwrap())
    }
}

impl<R: RationalAlgebra> PolyRing<R> {
    pub fn from_rationals(&self, coeffs: &[Rational]) -> UniPoly<R::Elem> {
        self.from_coeffs(coeffs.iter().map(|c| self.base.from_rational(c)).collect())
    }

    pub fn embed_qpoly(&self, p: &QPoly) -> UniPoly<R::Elem> {
        self.from_rationals(p.coeffs())
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = UniPoly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        self.zero_poly()
    }
    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }
    fn from_int(&self, n: i64) -> Self::Elem {
        self.constant(self.base.from_int(n))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add_p(a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.neg_p(a)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul_p(a, b)
    }
    fn render(&self, a: &Self::Elem) -> String {
        self.render(a)
    }
}

/// Q[X] with variable `X`.
pub fn qx() -> PolyRing<RationalField> {
    PolyRing::new(RationalField, "X")
}

pub fn qpoly_from_ints(coeffs: &[i64]) -> QPoly {
    qx().from_ints(coeffs)
}

impl fmt::Display for UniPoly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&qx().render(self))
    }
}
