//! Quartic points on lines through a = (0, -1, 1).
//!
//! A point (x, y, 1) on such a line has x = t(y + 1); substituting into
//! x^5 + y^5 + 1 = 0 and dividing by (y + 1)(t^5 + 1) leaves the palindromic
//! quartic f_t = X^4 + uX^3 + (u + 2)X^2 + uX + 1, u = (4t^5 - 1)/(t^5 + 1).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{int, is_square, rational_vec_str, Rational};
use crate::error::{Error, Result};
use crate::galois::{classify_quartic, GaloisClass};
use crate::height::rationals_up_to;
use crate::poly::{palindromic_quartic, quartic_discriminant, qx, QPoly, QuotientRing};
use crate::ring::{Field, RationalField, Ring};

/// Line parameter t; t = -1 is unrepresentable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LineParameter(Rational);

impl LineParameter {
    pub fn new(t: Rational) -> Result<Self> {
        if t == int(-1) {
            return Err(Error::ParameterDomain(
                "t = -1 yields no quartic point".into(),
            ));
        }
        Ok(LineParameter(t))
    }

    pub fn t(&self) -> &Rational {
        &self.0
    }

    fn t5(&self) -> Rational {
        num_traits::pow(self.0.clone(), 5)
    }
}

impl TryFrom<Rational> for LineParameter {
    type Error = Error;

    fn try_from(t: Rational) -> Result<Self> {
        LineParameter::new(t)
    }
}

pub fn u_of_t(t: &LineParameter) -> Rational {
    let t5 = t.t5();
    (int(4) * &t5 - int(1)) / (t5 + int(1))
}

pub fn quartic_of_t(t: &LineParameter) -> QPoly {
    palindromic_quartic(&u_of_t(t))
}

/// Projective point; equality up to a nonzero scalar is `equal_in`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProjectivePoint<E> {
    pub x: E,
    pub y: E,
    pub z: E,
}

impl<E: Clone> ProjectivePoint<E> {
    pub fn new(x: E, y: E, z: E) -> Self {
        ProjectivePoint { x, y, z }
    }

    pub fn coords(&self) -> [&E; 3] {
        [&self.x, &self.y, &self.z]
    }

    /// Coordinate `i` of the result is coordinate `perm[i]` of `self`.
    pub fn permute(&self, perm: [usize; 3]) -> Self {
        let c = self.coords();
        ProjectivePoint::new(c[perm[0]].clone(), c[perm[1]].clone(), c[perm[2]].clone())
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, s: &E) -> Self {
        ProjectivePoint::new(
            ring.mul(s, &self.x),
            ring.mul(s, &self.y),
            ring.mul(s, &self.z),
        )
    }

    pub fn is_degenerate<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        self.coords().iter().all(|c| ring.is_zero(c))
    }

    /// x y z != 0.
    pub fn is_nontrivial<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        self.coords().iter().all(|c| !ring.is_zero(c))
    }

    /// All 2x2 minors vanish; meaningful over a field.
    pub fn equal_in<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> bool {
        if self.is_degenerate(ring) || other.is_degenerate(ring) {
            return false;
        }
        let (a, b) = (self.coords(), other.coords());
        (0..3).all(|i| (i + 1..3).all(|j| ring.equal(&ring.mul(a[i], b[j]), &ring.mul(a[j], b[i]))))
    }

    /// Some coordinate permutation of `other` is projectively equal to `self`.
    pub fn equal_up_to_permutation<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> bool {
        PERMUTATIONS
            .iter()
            .any(|&p| self.equal_in(ring, &other.permute(p)))
    }

    /// Scales the last nonzero coordinate to 1.
    pub fn normalize<R: Field<Elem = E>>(&self, ring: &R) -> Result<Self> {
        let last = self
            .coords()
            .into_iter()
            .rev()
            .find(|c| !ring.is_zero(c))
            .ok_or_else(|| Error::ParameterDomain("all coordinates zero".into()))?;
        Ok(self.scale(ring, &ring.try_inv(last)?))
    }

    pub fn fermat_value<R: Ring<Elem = E>>(&self, ring: &R) -> E {
        let fifth = |c: &E| ring.pow(c, 5);
        ring.add(&ring.add(&fifth(&self.x), &fifth(&self.y)), &fifth(&self.z))
    }

    /// x^5 + y^5 + z^5 = 0 exactly.
    pub fn on_fermat_quintic<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        !self.is_degenerate(ring) && ring.is_zero(&self.fermat_value(ring))
    }

    pub fn render<R: Ring<Elem = E>>(&self, ring: &R) -> String {
        format!(
            "({}, {}, {})",
            ring.render(&self.x),
            ring.render(&self.y),
            ring.render(&self.z)
        )
    }
}

pub const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

pub type NumberField = QuotientRing<RationalField>;
pub type FieldElem = Vec<Rational>;

/// Q[Y]/(f_t).
pub fn field_of_t(t: &LineParameter, var: &str) -> Result<NumberField> {
    QuotientRing::new(RationalField, &quartic_of_t(t), var)
}

/// (t(y + 1), y, 1) for a root y of f_t in `ring`.
pub fn point_from_root(
    t: &LineParameter,
    ring: &NumberField,
    y: &FieldElem,
) -> Result<ProjectivePoint<FieldElem>> {
    if !ring.is_root_of(&quartic_of_t(t), y) {
        return Err(Error::NotARoot);
    }
    let x = ring.mul(&ring.embed(t.t()), &ring.add(y, &ring.one()));
    Ok(ProjectivePoint::new(x, y.clone(), ring.one()))
}

/// (t(Y + 1))^5 + Y^5 + 1 = 0 in Q[Y]/(f_t).
pub fn membership_identity_check(t: &LineParameter) -> bool {
    let Ok(k) = field_of_t(t, "Y") else {
        return false;
    };
    point_from_root(t, &k, &k.generator()).is_ok_and(|p| p.on_fermat_quintic(&k))
}

/// Y (Y^3 + uY^2 + (u + 2)Y + u) = -1 in Q[Y]/(f_t).
pub fn reciprocity_check(t: &LineParameter) -> bool {
    let u = u_of_t(t);
    let Ok(k) = field_of_t(t, "Y") else {
        return false;
    };
    let cofactor = k.reduce(&qx().from_coeffs(vec![u.clone(), &u + int(2), u, int(1)]));
    k.equal(&k.mul(&k.generator(), &cofactor), &k.from_int(-1))
}

/// disc(f_t) by resultant, -u^2 (u-4)^3 (3u+4), and
/// 5^3 (4t^5-1)^2 (16t^5+1) / (t^5+1)^6.
pub fn delta_routes(t: &LineParameter) -> [Rational; 3] {
    let u = u_of_t(t);
    let t5 = t.t5();
    let resultant_route = qx()
        .discriminant(&quartic_of_t(t))
        .expect("quartic discriminant");
    let u_route = -(&u * &u) * num_traits::pow(&u - int(4), 3) * (int(3) * &u + int(4));
    let n = int(4) * &t5 - int(1);
    let t_route = int(125) * &n * &n * (int(16) * &t5 + int(1)) / num_traits::pow(t5 + int(1), 6);
    [resultant_route, u_route, t_route]
}

pub fn delta_identity_check(t: &LineParameter) -> bool {
    let [a, b, c] = delta_routes(t);
    a == b && b == c
}

/// 5(16t^5 + 1).
pub fn condition1_value(t: &LineParameter) -> Rational {
    int(5) * (int(16) * t.t5() + int(1))
}

/// (1 - 4t^5)(16t^5 + 1).
pub fn condition2_value(t: &LineParameter) -> Rational {
    let t5 = t.t5();
    (int(1) - int(4) * &t5) * (int(16) * &t5 + int(1))
}

pub fn condition1(t: &LineParameter) -> bool {
    is_square(&condition1_value(t)).is_some()
}

pub fn condition2(t: &LineParameter) -> bool {
    is_square(&condition2_value(t)).is_some()
}

/// -u(3u + 4) = (1 - 4t^5)(16t^5 + 1)/(t^5 + 1)^2.
pub fn minus_u_identity_check(t: &LineParameter) -> bool {
    let u = u_of_t(t);
    let left = -(&u) * (int(3) * &u + int(4));
    let right = condition2_value(t) / num_traits::pow(t.t5() + int(1), 2);
    left == right
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuarticProfile {
    #[serde(with = "crate::arith::rational_str")]
    pub t: Rational,
    #[serde(with = "crate::arith::rational_str")]
    pub u: Rational,
    /// Ascending coefficients.
    #[serde(with = "rational_vec_str")]
    pub f_t: Vec<Rational>,
    #[serde(with = "crate::arith::rational_str")]
    pub delta: Rational,
    pub cond1: bool,
    pub cond2: bool,
    pub irreducible: bool,
    pub galois_order: Option<u32>,
    pub galois_class: Option<GaloisClass>,
}

pub fn profile(t: &LineParameter) -> Result<QuarticProfile> {
    let f = quartic_of_t(t);
    let galois_class = classify_quartic(&f)?;
    Ok(QuarticProfile {
        t: t.t().clone(),
        u: u_of_t(t),
        delta: quartic_discriminant(&f)?,
        f_t: f.into_coeffs(),
        cond1: condition1(t),
        cond2: condition2(t),
        irreducible: galois_class.is_some(),
        galois_order: galois_class.map(GaloisClass::order),
        galois_class,
    })
}

/// Every t of height at most `height_bound` except -1, canonical order.
pub fn scan_parameters(height_bound: u64) -> Result<Vec<QuarticProfile>> {
    let params: Vec<LineParameter> = rationals_up_to(height_bound)
        .into_iter()
        .filter_map(|t| LineParameter::new(t).ok())
        .collect();
    params.par_iter().map(profile).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn lp(n: i64, d: i64) -> LineParameter {
        LineParameter::new(rat(n, d)).unwrap()
    }

    #[test]
    fn parameter_domain() {
        assert!(matches!(
            LineParameter::new(int(-1)),
            Err(Error::ParameterDomain(_))
        ));
        assert!(LineParameter::try_from(rat(-1, 2)).is_ok());
    }

    #[test]
    fn u_examples() {
        assert_eq!(u_of_t(&lp(-1, 2)), rat(-36, 31));
        assert_eq!(u_of_t(&lp(0, 1)), int(-1));
        assert_eq!(u_of_t(&lp(1, 1)), rat(3, 2));
    }

    #[test]
    fn quartic_examples() {
        let f = quartic_of_t(&lp(-1, 2));
        let scaled = qx().scale(&f, &int(31));
        assert_eq!(
            scaled,
            crate::poly::qpoly_from_ints(&[31, -36, 26, -36, 31])
        );
        assert_eq!(
            quartic_of_t(&lp(0, 1)),
            crate::poly::qpoly_from_ints(&[1, -1, 1, -1, 1])
        );
    }

    #[test]
    fn theorem_point_from_root() {
        let t = lp(-1, 2);
        let k = field_of_t(&t, "a").unwrap();
        let alpha = k.generator();
        let p = point_from_root(&t, &k, &alpha).unwrap();
        assert!(p.on_fermat_quintic(&k));
        let half = rat(-1, 2);
        assert_eq!(p.x, vec![half.clone(), half, int(0), int(0)]);
        let representative = ProjectivePoint::new(
            k.from_int(2),
            k.mul(&k.from_int(2), &alpha),
            k.sub(&k.neg(&alpha), &k.one()),
        );
        assert!(representative.on_fermat_quintic(&k));
        assert!(representative.equal_up_to_permutation(&k, &p));
        assert!(!representative.equal_in(&k, &p));
        assert_eq!(p.normalize(&k).unwrap(), p);
    }

    #[test]
    fn trivial_point_at_zero() {
        let t = lp(0, 1);
        let k = field_of_t(&t, "y").unwrap();
        let p = point_from_root(&t, &k, &k.generator()).unwrap();
        assert!(k.is_zero(&p.x));
        assert!(!p.is_nontrivial(&k));
        assert!(p.on_fermat_quintic(&k));
        assert!(matches!(
            point_from_root(&t, &k, &k.one()),
            Err(Error::NotARoot)
        ));
    }

    #[test]
    fn identities_at_fixed_parameters() {
        for t in [lp(0, 1), lp(-1, 2), lp(1, 1), lp(3, 7), lp(-200, 199)] {
            assert!(delta_identity_check(&t));
            assert!(minus_u_identity_check(&t));
            assert!(membership_identity_check(&t));
            assert!(reciprocity_check(&t));
        }
        assert_eq!(delta_routes(&lp(0, 1))[0], int(125));
        let t5 = rat(-1, 32);
        let expected = int(125) * rat(81, 64) * rat(1, 2) / num_traits::pow(int(1) + t5, 6);
        assert_eq!(delta_routes(&lp(-1, 2))[2], expected);
        assert_eq!(
            condition2_value(&lp(-1, 2)) / num_traits::pow(rat(31, 32), 2),
            rat(9, 16) * rat(1024, 961)
        );
    }

    #[test]
    fn conditions() {
        assert!(condition2(&lp(-1, 2)));
        assert_eq!(condition2_value(&lp(-1, 2)), rat(9, 16));
        assert!(!condition1(&lp(-1, 2)));
        assert_eq!(condition1_value(&lp(-1, 2)), rat(5, 2));
        assert!(condition2(&lp(0, 1)));
    }

    #[test]
    fn small_scans() {
        let one = scan_parameters(1).unwrap();
        let ts: Vec<Rational> = one.iter().map(|p| p.t.clone()).collect();
        assert_eq!(ts, vec![int(0), int(1)]);
        let two = scan_parameters(2).unwrap();
        assert!(two.iter().all(|p| !p.cond1));
        let hits: Vec<Rational> = two
            .iter()
            .filter(|p| p.cond2)
            .map(|p| p.t.clone())
            .collect();
        assert_eq!(hits, vec![int(0), rat(-1, 2)]);
        for p in &two {
            let rev: Vec<_> = p.f_t.iter().rev().cloned().collect();
            assert_eq!(rev, p.f_t);
            assert_eq!(p.irreducible, p.galois_class.is_some());
        }
    }

    #[test]
    fn profile_json() {
        let p = profile(&lp(-1, 2)).unwrap();
        let json = serde_json::to_value(&p).unwrap();
        assert_eq!(json["t"], "-1/2");
        assert_eq!(json["u"], "-36/31");
        assert_eq!(json["f_t"][3], "-36/31");
        assert_eq!(json["galois_class"], "C4");
        assert_eq!(json["galois_order"], 4);
        let back: QuarticProfile = serde_json::from_value(json).unwrap();
        assert_eq!(back, p);
    }
}
