//! Quotient rings R[X]/(m) for a monic modulus m, and the pure quadratic
//! rings R[e]/(e^2 - D) used for Q(epsilon) and Q(sqrt(disc)).

use std::sync::Arc;

use super::{PolyRing, UniPoly};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::ring::{Field, RationalAlgebra, Ring, SqrtRing};

/// Elements are residues of degree < deg(modulus), stored as a coefficient
/// vector of exactly deg(modulus) entries.
#[derive(Clone, Debug)]
pub struct QuotientRing<R: Field> {
    poly: PolyRing<R>,
    modulus: Arc<UniPoly<R::Elem>>,
}

impl<R: Field> QuotientRing<R> {
    /// `modulus` is made monic; it must have positive degree.
    pub fn new(base: R, modulus: &UniPoly<R::Elem>, var: &str) -> Result<Self> {
        let poly = PolyRing::new(base, var);
        match modulus.degree() {
            None | Some(0) => {
                return Err(Error::Degree(
                    "quotient modulus must have positive degree".into(),
                ))
            }
            _ => {}
        }
        let monic = poly.monic(modulus)?;
        Ok(QuotientRing {
            poly,
            modulus: Arc::new(monic),
        })
    }

    pub fn base(&self) -> &R {
        &self.poly.base
    }

    pub fn poly_ring(&self) -> &PolyRing<R> {
        &self.poly
    }

    pub fn modulus(&self) -> &UniPoly<R::Elem> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    fn pad(&self, p: UniPoly<R::Elem>) -> Vec<R::Elem> {
        let mut c = p.into_coeffs();
        c.resize(self.degree(), self.base().zero());
        c
    }

    /// Class of a polynomial.
    pub fn reduce(&self, p: &UniPoly<R::Elem>) -> Vec<R::Elem> {
        let (_, r) = self.poly.divmod_monic(p, &self.modulus);
        self.pad(r)
    }

    pub fn to_poly(&self, a: &[R::Elem]) -> UniPoly<R::Elem> {
        self.poly.from_coeffs(a.to_vec())
    }

    /// The class of X.
    pub fn generator(&self) -> Vec<R::Elem> {
        self.reduce(&self.poly.x())
    }

    pub fn embed(&self, c: &R::Elem) -> Vec<R::Elem> {
        self.reduce(&self.poly.constant(c.clone()))
    }

    /// Evaluates g (coefficients in the base ring) at `a`.
    pub fn eval_base_poly(&self, g: &UniPoly<R::Elem>, a: &Vec<R::Elem>) -> Vec<R::Elem> {
        self.poly.eval_in(g, self, a, |c| self.embed(c))
    }

    pub fn is_root_of(&self, g: &UniPoly<R::Elem>, a: &Vec<R::Elem>) -> bool {
        self.is_zero(&self.eval_base_poly(g, a))
    }
}

impl<R: Field> Ring for QuotientRing<R> {
    type Elem = Vec<R::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base().zero(); self.degree()]
    }
    fn one(&self) -> Self::Elem {
        self.embed(&self.base().one())
    }
    fn from_int(&self, n: i64) -> Self::Elem {
        self.embed(&self.base().from_int(n))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|c| self.base().is_zero(c))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter()
            .zip(b)
            .map(|(x, y)| self.base().add(x, y))
            .collect()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base().neg(x)).collect()
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter()
            .zip(b)
            .map(|(x, y)| self.base().sub(x, y))
            .collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let prod = self.poly.mul_p(&self.to_poly(a), &self.to_poly(b));
        self.reduce(&prod)
    }
    fn render(&self, a: &Self::Elem) -> String {
        self.poly.render(&self.to_poly(a))
    }
}

impl<R: Field> Field for QuotientRing<R> {
    /// Inverse by extended gcd with the modulus; zero divisors are reported
    /// together with the gcd witness.
    fn try_inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        let (g, s, _) = self.poly.ext_gcd(&self.to_poly(a), &self.modulus)?;
        if g.degree() != Some(0) {
            return Err(Error::NotInvertible {
                gcd: self.poly.render(&g),
            });
        }
        Ok(self.reduce(&s))
    }
}

impl<R: Field + RationalAlgebra> RationalAlgebra for QuotientRing<R> {
    fn from_rational(&self, q: &Rational) -> Self::Elem {
        self.embed(&self.base().from_rational(q))
    }
}

/// Records the parameter D of R[e]/(e^2 - D) and whether the ring is a field.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticRingTag<E> {
    pub discriminant_parameter: E,
    pub is_field: bool,
}

/// R[e]/(e^2 - D). Elements are `[x, y]` meaning x + y*e. D may be zero or a
/// square, in which case the ring has zero divisors and `tag.is_field` is false.
#[derive(Clone, Debug)]
pub struct QuadraticRing<R: Field + SqrtRing> {
    inner: QuotientRing<R>,
    pub tag: QuadraticRingTag<R::Elem>,
}

impl<R: Field + SqrtRing> QuadraticRing<R> {
    pub fn new(base: R, d: R::Elem, var: &str) -> Self {
        let modulus = PolyRing::new(base.clone(), var).from_coeffs(vec![
            base.neg(&d),
            base.zero(),
            base.one(),
        ]);
        let is_field = !base.is_zero(&d) && base.sqrt(&d).is_none();
        let inner = QuotientRing::new(base, &modulus, var).expect("degree-2 modulus");
        QuadraticRing {
            inner,
            tag: QuadraticRingTag {
                discriminant_parameter: d,
                is_field,
            },
        }
    }

    pub fn quotient(&self) -> &QuotientRing<R> {
        &self.inner
    }

    pub fn base(&self) -> &R {
        self.inner.base()
    }

    pub fn d(&self) -> &R::Elem {
        &self.tag.discriminant_parameter
    }

    pub fn elem(&self, x: R::Elem, y: R::Elem) -> Vec<R::Elem> {
        vec![x, y]
    }

    pub fn generator(&self) -> Vec<R::Elem> {
        self.inner.generator()
    }

    pub fn embed(&self, c: &R::Elem) -> Vec<R::Elem> {
        self.inner.embed(c)
    }
}

impl<R: Field + SqrtRing> Ring for QuadraticRing<R> {
    type Elem = Vec<R::Elem>;

    fn zero(&self) -> Self::Elem {
        self.inner.zero()
    }
    fn one(&self) -> Self::Elem {
        self.inner.one()
    }
    fn from_int(&self, n: i64) -> Self::Elem {
        self.inner.from_int(n)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.inner.is_zero(a)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.inner.add(a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.inner.neg(a)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.inner.sub(a, b)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        // (x1 + y1 e)(x2 + y2 e) = x1 x2 + D y1 y2 + (x1 y2 + x2 y1) e
        let r = self.base();
        let x = r.add(&r.mul(&a[0], &b[0]), &r.mul(self.d(), &r.mul(&a[1], &b[1])));
        let y = r.add(&r.mul(&a[0], &b[1]), &r.mul(&a[1], &b[0]));
        vec![x, y]
    }
    fn render(&self, a: &Self::Elem) -> String {
        self.inner.render(a)
    }
}

impl<R: Field + SqrtRing> Field for QuadraticRing<R> {
    fn try_inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        self.inner.try_inv(a)
    }
}

impl<R: Field + SqrtRing + RationalAlgebra> RationalAlgebra for QuadraticRing<R> {
    fn from_rational(&self, q: &Rational) -> Self::Elem {
        self.inner.from_rational(q)
    }
}

impl<R: Field + SqrtRing> SqrtRing for QuadraticRing<R> {
    /// Square roots through the norm: if (p + q e)^2 = x + y e then
    /// p^2 = (x +- sqrt(x^2 - D y^2)) / 2 in the base ring.
    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let r = self.base();
        let (x, y) = (&a[0], &a[1]);
        let two = r.from_int(2);
        let mut candidates = Vec::new();
        if r.is_zero(y) {
            if let Some(s) = r.sqrt(x) {
                candidates.push(vec![s, r.zero()]);
            }
            if !r.is_zero(self.d()) {
                if let Some(s) = r.try_div(x, self.d()).ok().and_then(|v| r.sqrt(&v)) {
                    candidates.push(vec![r.zero(), s]);
                }
            }
        } else {
            let norm = r.sub(&r.mul(x, x), &r.mul(self.d(), &r.mul(y, y)));
            if let Some(n) = r.sqrt(&norm) {
                for w in [r.add(x, &n), r.sub(x, &n)] {
                    let Ok(half) = r.try_div(&w, &two) else {
                        continue;
                    };
                    let Some(p) = r.sqrt(&half) else { continue };
                    if r.is_zero(&p) {
                        continue;
                    }
                    if let Ok(q) = r.try_div(y, &r.mul(&two, &p)) {
                        candidates.push(vec![p, q]);
                    }
                }
            }
        }
        candidates
            .into_iter()
            .find(|c| self.equal(&self.mul(c, c), a))
    }
}
