//! Galois groups of irreducible rational quartics.
//!
//! The classifier follows the resolvent-cubic decision tree. With exactly one
//! rational resolvent root theta of X^4 + aX^3 + bX^2 + cX + d, G is C4 iff
//! X^2 - theta X + d and X^2 + aX + (b - theta) split over Q(sqrt(disc))
//! (Kappe and Warren); the same split is also decided structurally by
//! `splits_over_quadratic`.

mod oracle;

pub use oracle::{roots_in_stem_field, splitting_degree_oracle};

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{int, is_square, Rational};
use crate::error::{Error, Result};
use crate::poly::{
    depress_quartic, integral_monic_model, palindromic_quartic, quartic_discriminant,
    quartic_irreducible, qx, rational_roots, DepressedQuartic, PolyRing, QPoly, QuadraticRing,
    QuarticAnalysis,
};
use crate::ring::{RationalField, Ring, SqrtRing};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GaloisClass {
    C4,
    V4,
    D4,
    A4,
    S4,
}

impl GaloisClass {
    pub fn order(self) -> u32 {
        match self {
            GaloisClass::C4 | GaloisClass::V4 => 4,
            GaloisClass::D4 => 8,
            GaloisClass::A4 => 12,
            GaloisClass::S4 => 24,
        }
    }

    pub const ALL: [GaloisClass; 5] = [
        GaloisClass::C4,
        GaloisClass::V4,
        GaloisClass::D4,
        GaloisClass::A4,
        GaloisClass::S4,
    ];
}

impl fmt::Display for GaloisClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResolventData {
    pub quartic: QPoly,
    pub resolvent_cubic: QPoly,
    pub discriminant: Rational,
    pub rational_resolvent_roots: Vec<Rational>,
}

/// Resolvent cubic of the depressed monic model Y^4 + pY^2 + qY + r:
/// roots y1y2 + y3y4, y1y3 + y2y4, y1y4 + y2y3, i.e.
/// Z^3 - p Z^2 - 4r Z + (4pr - q^2).
pub fn resolvent_cubic(q: &QPoly) -> Result<QPoly> {
    Ok(depress_quartic(q)?.resolvent_cubic())
}

pub fn resolvent_data(q: &QPoly) -> Result<ResolventData> {
    let ring = qx();
    let monic = ring.monic(q)?;
    let cubic = resolvent_cubic(&monic)?;
    Ok(ResolventData {
        discriminant: quartic_discriminant(&monic)?,
        rational_resolvent_roots: rational_roots(&cubic),
        quartic: monic,
        resolvent_cubic: cubic,
    })
}

type QuadElem = Vec<Rational>;

/// Roots in L of a rational cubic.
fn cubic_roots_in(l: &QuadraticRing<RationalField>, cubic: &QPoly) -> Vec<QuadElem> {
    let ring = qx();
    let mut roots: Vec<QuadElem> = Vec::new();
    let mut rest = cubic.clone();
    for r in rational_roots(cubic) {
        roots.push(l.embed(&r));
        let lin = ring.from_coeffs(vec![-r, Rational::one()]);
        rest = ring.divmod(&rest, &lin).expect("nonzero divisor").0;
    }
    if rest.degree() == Some(2) {
        let c = rest.coeffs();
        let (b, c0) = (&c[1] / &c[2], &c[0] / &c[2]);
        let delta = &b * &b - int(4) * &c0;
        if let Some(s) = l.sqrt(&l.embed(&delta)) {
            let half = Rational::new(1.into(), 2.into());
            let minus_b = l.embed(&-b);
            for root in [l.add(&minus_b, &s), l.sub(&minus_b, &s)] {
                roots.push(root.iter().map(|x| x * &half).collect());
            }
        }
    }
    roots
}

/// Whether the depressed quartic splits into two quadratics over
/// L = Q[e]/(e^2 - D), by solving (Y^2 + sY + m)(Y^2 - sY + n) = d exactly.
pub fn splits_over_quadratic(d: &DepressedQuartic, disc_param: &Rational) -> bool {
    let l = QuadraticRing::new(RationalField, disc_param.clone(), "e");
    let ring = PolyRing::new(l.clone(), "Y");
    let target = ring.embed_qpoly(&d.poly());
    let (p, q, r) = (l.embed(&d.p), l.embed(&d.q), l.embed(&d.r));
    let half = |x: &QuadElem| -> QuadElem { x.iter().map(|c| c / int(2)).collect() };
    let mut candidates: Vec<(QuadElem, QuadElem, QuadElem)> = Vec::new();
    for s2 in cubic_roots_in(&l, &d.square_sum_cubic()) {
        if l.is_zero(&s2) {
            continue;
        }
        let Some(s) = l.sqrt(&s2) else { continue };
        let Ok(inv_s) = crate::ring::Field::try_inv(&l, &s) else {
            continue;
        };
        let t = l.mul(&q, &inv_s);
        let base = l.add(&p, &s2);
        candidates.push((s, half(&l.sub(&base, &t)), half(&l.add(&base, &t))));
    }
    if d.q.is_zero() {
        let delta = l.sub(&l.mul(&p, &p), &l.mul(&l.from_int(4), &r));
        if let Some(sigma) = l.sqrt(&delta) {
            candidates.push((l.zero(), half(&l.sub(&p, &sigma)), half(&l.add(&p, &sigma))));
        }
    }
    candidates.into_iter().any(|(s, m, n)| {
        let g = ring.from_coeffs(vec![m, s.clone(), l.one()]);
        let h = ring.from_coeffs(vec![n, l.neg(&s), l.one()]);
        ring.mul_p(&g, &h) == target
    })
}

/// Galois class of an irreducible quartic (any leading coefficient).
pub fn classify_galois(q: &QPoly) -> Result<GaloisClass> {
    classify_quartic(q)?.ok_or_else(|| Error::Reducible(q.to_string()))
}

/// Galois class, or `None` for a reducible quartic.
pub fn classify_quartic(q: &QPoly) -> Result<Option<GaloisClass>> {
    let a = QuarticAnalysis::of(q)?;
    if !a.irreducible {
        return Ok(None);
    }
    let disc = quartic_discriminant(&a.monic)?;
    let disc_square = is_square(&disc).is_some();
    Ok(Some(match a.resolvent_roots.as_slice() {
        [] if disc_square => GaloisClass::A4,
        [] => GaloisClass::S4,
        [theta] => {
            let [ca, cb, _, cd] = a.monic_coefficients();
            let splits = |delta: Rational| {
                delta.is_zero() || is_square(&delta).is_some() || is_square(&(delta * &disc)).is_some()
            };
            if splits(theta * theta - int(4) * cd) && splits(ca * ca - int(4) * (cb - theta)) {
                GaloisClass::C4
            } else {
                GaloisClass::D4
            }
        }
        _ => GaloisClass::V4,
    }))
}

/// The C4/D4 decision by an explicit factorization over Q(sqrt(disc)).
pub fn c4_by_quadratic_split(q: &QPoly) -> Result<bool> {
    let data = resolvent_data(&integral_monic_model(q)?)?;
    let d = depress_quartic(&data.quartic)?;
    Ok(splits_over_quadratic(&d, &data.discriminant))
}

/// |G| for irreducible f_u from the palindromic structure: 4 iff
/// -(u-4)(3u+4) is a square in Q(epsilon), epsilon^2 = u^2 - 4u; else 8.
pub fn palindromic_order_bound(u: &Rational) -> Result<u32> {
    let f = palindromic_quartic(u);
    if !quartic_irreducible(&f)? {
        return Err(Error::Reducible(f.to_string()));
    }
    Ok(palindromic_order_unchecked(u))
}

pub(crate) fn palindromic_order_unchecked(u: &Rational) -> u32 {
    let l = QuadraticRing::new(RationalField, u * u - int(4) * u, "e");
    let w = -(u - int(4)) * (int(3) * u + int(4));
    if l.sqrt(&l.embed(&w)).is_some() {
        4
    } else {
        8
    }
}
