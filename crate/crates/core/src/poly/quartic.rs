//! Quartic-specific tools: the palindromic family, its factorization over
//! Q(epsilon), depressed form, and the exact irreducibility decision.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{qx, rational_roots, PolyRing, QPoly, QuadraticRing, UniPoly};
use crate::arith::{int, is_square, rat, Rational};
use crate::error::{Error, Result};
use crate::ring::{RationalField, Ring};

/// X^4 + u X^3 + (u+2) X^2 + u X + 1.
pub fn palindromic_quartic(u: &Rational) -> QPoly {
    qx().from_coeffs(vec![int(1), u.clone(), u + int(2), u.clone(), int(1)])
}

pub type QuadElem = Vec<Rational>;

/// The two quadratic factors of f_u over Q[e]/(e^2 - (u^2 - 4u)).
#[derive(Clone, Debug)]
pub struct EpsilonFactorization {
    pub ring: PolyRing<QuadraticRing<RationalField>>,
    pub minus: UniPoly<QuadElem>,
    pub plus: UniPoly<QuadElem>,
}

impl EpsilonFactorization {
    pub fn product(&self) -> UniPoly<QuadElem> {
        self.ring.mul_p(&self.minus, &self.plus)
    }

    /// True iff the product reduces to f_u exactly.
    pub fn check(&self, u: &Rational) -> bool {
        let f = self.ring.embed_qpoly(&palindromic_quartic(u));
        self.product() == f
    }
}

/// (X^2 + (u - e)/2 X + 1, X^2 + (u + e)/2 X + 1) with e^2 = u^2 - 4u. The
/// quotient ring is allowed to be degenerate (u in {0, 4} or u^2 - 4u square).
pub fn epsilon_factorization(u: &Rational) -> EpsilonFactorization {
    let d = u * u - int(4) * u;
    let quad = QuadraticRing::new(RationalField, d, "e");
    let half = Rational::new(1.into(), 2.into());
    let lin = |sign: i64| vec![u * &half, int(sign) * &half];
    let ring = PolyRing::new(quad.clone(), "X");
    let one = quad.one();
    let minus = ring.from_coeffs(vec![one.clone(), lin(-1), one.clone()]);
    let plus = ring.from_coeffs(vec![one.clone(), lin(1), one]);
    EpsilonFactorization { ring, minus, plus }
}

/// q(X) = d(X + shift) with d(Y) = Y^4 + p Y^2 + q Y + r.
#[derive(Clone, Debug, PartialEq)]
pub struct DepressedQuartic {
    pub shift: Rational,
    pub p: Rational,
    pub q: Rational,
    pub r: Rational,
}

impl DepressedQuartic {
    pub fn poly(&self) -> QPoly {
        qx().from_coeffs(vec![
            self.r.clone(),
            self.q.clone(),
            self.p.clone(),
            int(0),
            int(1),
        ])
    }

    /// S^3 + 2p S^2 + (p^2 - 4r) S - q^2, whose roots are the squares s^2 of
    /// the linear coefficients in d = (Y^2 + sY + m)(Y^2 - sY + n).
    pub fn square_sum_cubic(&self) -> QPoly {
        let (p, q, r) = (&self.p, &self.q, &self.r);
        qx().from_coeffs(vec![-(q * q), p * p - int(4) * r, int(2) * p, int(1)])
    }
}

fn check_quartic(q: &QPoly) -> Result<()> {
    if q.degree() != Some(4) {
        return Err(Error::Degree(format!(
            "expected a quartic, got degree {:?}",
            q.degree()
        )));
    }
    Ok(())
}

fn require_quartic(q: &QPoly) -> Result<QPoly> {
    check_quartic(q)?;
    qx().monic(q)
}

/// Depressed form of the monic model of `q` (shift by a3/4).
pub fn depress_quartic(q: &QPoly) -> Result<DepressedQuartic> {
    let q = require_quartic(q)?;
    let c = q.coeffs();
    let (d, cc, b, a) = (&c[0], &c[1], &c[2], &c[3]);
    let a2 = a * a;
    // d(Y) = q(Y - a/4)
    Ok(DepressedQuartic {
        shift: a / int(4),
        p: b - &a2 * rat(3, 8),
        q: cc - a * b / int(2) + &a2 * a / int(8),
        r: d - a * cc / int(4) + &a2 * b / int(16) - &a2 * &a2 * rat(3, 256),
    })
}

/// Splits a quartic into two monic rational quadratics when possible.
pub fn quadratic_factorization(q: &QPoly) -> Result<Option<(QPoly, QPoly)>> {
    let dq = depress_quartic(q)?;
    let ring = qx();
    let two = int(2);
    let mut candidates: Vec<(Rational, Rational, Rational)> = Vec::new();
    for s2 in rational_roots(&dq.square_sum_cubic()) {
        if s2.is_zero() {
            continue;
        }
        if let Some(s) = is_square(&s2) {
            let t = &dq.q / &s;
            let base = &dq.p + &s2;
            candidates.push((s, (&base - &t) / &two, (&base + &t) / &two));
        }
    }
    if dq.q.is_zero() {
        if let Some(sigma) = is_square(&(&dq.p * &dq.p - int(4) * &dq.r)) {
            candidates.push((int(0), (&dq.p - &sigma) / &two, (&dq.p + &sigma) / &two));
        }
    }
    let undo = ring.from_coeffs(vec![dq.shift.clone(), Rational::one()]);
    for (s, m, n) in candidates {
        let g = ring.from_coeffs(vec![m, s.clone(), int(1)]);
        let h = ring.from_coeffs(vec![n, -s, int(1)]);
        if ring.mul_p(&g, &h) == dq.poly() {
            return Ok(Some((ring.compose(&g, &undo), ring.compose(&h, &undo))));
        }
    }
    Ok(None)
}

/// c^n q(X/c) / lc for the least common denominator c of the monic model:
/// monic with integer coefficients, same factorization pattern and Galois
/// group as `q`.
pub fn integral_monic_model(q: &QPoly) -> Result<QPoly> {
    let monic = qx().monic(q)?;
    let c = monic
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let c = Rational::from_integer(c);
    let mut coeffs = monic.into_coeffs();
    let mut scale = Rational::one();
    for coeff in coeffs.iter_mut().rev().skip(1) {
        scale *= &c;
        *coeff *= &scale;
    }
    Ok(qx().from_coeffs(coeffs))
}

/// Irreducible over Q iff no rational root and no rational quadratic factor.
pub fn quartic_irreducible(q: &QPoly) -> Result<bool> {
    Ok(QuarticAnalysis::of(q)?.irreducible)
}

/// Shared data for the irreducibility decision and the Galois classifier.
#[derive(Clone, Debug, PartialEq)]
pub struct QuarticAnalysis {
    /// Monic model X^4 + aX^3 + bX^2 + cX + d.
    pub monic: QPoly,
    /// Rational roots of Z^3 - bZ^2 + (ac - 4d)Z - (a^2 d - 4bd + c^2), whose
    /// roots are x1x2 + x3x4 and conjugates; empty when the quartic has a
    /// rational root.
    pub resolvent_roots: Vec<Rational>,
    pub irreducible: bool,
}

impl QuarticAnalysis {
    pub fn of(q: &QPoly) -> Result<Self> {
        let monic = require_quartic(q)?;
        if !rational_roots(q).is_empty() {
            return Ok(QuarticAnalysis { monic, resolvent_roots: Vec::new(), irreducible: false });
        }
        // With the primitive model A X^4 + B X^3 + C X^2 + D X + E, W = A Z
        // turns the resolvent into a monic integer cubic.
        let f = super::primitive_integer_model(q);
        let (e, d, c, b, a) = (&f[0], &f[1], &f[2], &f[3], &f[4]);
        let big = |n: BigInt| Rational::from_integer(n);
        let cubic = qx().from_coeffs(vec![
            big(-(b * b * e - BigInt::from(4) * a * c * e + a * d * d)),
            big(b * d - BigInt::from(4) * a * e),
            big(-c),
            int(1),
        ]);
        let lead = big(a.clone());
        let resolvent_roots: Vec<Rational> = rational_roots(&cubic).into_iter().map(|w| w / &lead).collect();
        let irreducible = !has_rational_quadratic_factor(&monic, &resolvent_roots);
        Ok(QuarticAnalysis { monic, resolvent_roots, irreducible })
    }

    /// Coefficients (a, b, c, d) of the monic model.
    pub fn monic_coefficients(&self) -> [&Rational; 4] {
        let c = self.monic.coeffs();
        [&c[3], &c[2], &c[1], &c[0]]
    }
}

/// (X^2 + s1 X + m)(X^2 + s2 X + n) = X^4 + aX^3 + bX^2 + cX + d forces
/// theta = m + n to be a resolvent root, m, n the roots of z^2 - theta z + d
/// and s1, s2 the roots of s^2 - a s + (b - theta); c decides the pairing.
fn has_rational_quadratic_factor(monic: &QPoly, resolvent_roots: &[Rational]) -> bool {
    let co = monic.coeffs();
    let (d, c, b, a) = (&co[0], &co[1], &co[2], &co[3]);
    let two = int(2);
    resolvent_roots.iter().any(|theta| {
        let Some(r1) = is_square(&(theta * theta - int(4) * d)) else { return false };
        let Some(r2) = is_square(&(a * a - int(4) * (b - theta))) else { return false };
        let (m, n) = ((theta - &r1) / &two, (theta + &r1) / &two);
        let (s1, s2) = ((a - &r2) / &two, (a + &r2) / &two);
        &s1 * &n + &s2 * &m == *c || &s1 * &m + &s2 * &n == *c
    })
}

impl DepressedQuartic {
    /// Z^3 - pZ^2 - 4rZ + (4pr - q^2), roots y1y2 + y3y4 and conjugates.
    pub fn resolvent_cubic(&self) -> QPoly {
        let (p, q, r) = (&self.p, &self.q, &self.r);
        qx().from_coeffs(vec![int(4) * p * r - q * q, int(-4) * r, -p.clone(), int(1)])
    }
}

/// Discriminant of a quartic from the closed-form expression in the
/// coefficients of its primitive integer model.
pub fn quartic_discriminant(q: &QPoly) -> Result<Rational> {
    check_quartic(q)?;
    let f = super::primitive_integer_model(q);
    let (e, d, c, b, a) = (&f[0], &f[1], &f[2], &f[3], &f[4]);
    let disc: BigInt = 256 * a.pow(3) * e.pow(3) - 192 * a.pow(2) * b * d * e.pow(2)
        - 128 * a.pow(2) * c.pow(2) * e.pow(2)
        + 144 * a.pow(2) * c * d.pow(2) * e
        - 27 * a.pow(2) * d.pow(4)
        + 144 * a * b.pow(2) * c * e.pow(2)
        - 6 * a * b.pow(2) * d.pow(2) * e
        - 80 * a * b * c.pow(2) * d * e
        + 18 * a * b * c * d.pow(3)
        + 16 * a * c.pow(4) * e
        - 4 * a * c.pow(3) * d.pow(2)
        - 27 * b.pow(4) * e.pow(2)
        + 18 * b.pow(3) * c * d * e
        - 4 * b.pow(3) * d.pow(3)
        - 4 * b.pow(2) * c.pow(3) * e
        + b.pow(2) * c.pow(2) * d.pow(2);
    // the caller's quartic is lambda * f with lambda = lc / a
    let lambda = q.lc().expect("quartic") / Rational::from_integer(a.clone());
    Ok(num_traits::pow(lambda, 6) * Rational::from_integer(disc))
}
