//! Coefficient rings.
//!
//! Rings are values that carry their own context (a modulus, a parent ring)
//! and operate on plain element values, so the same polynomial code runs over
//! Q, Z/nZ and towers of quotient rings.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{is_square, rational_to_string, Rational};
use crate::error::{Error, Result};

pub trait Ring: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_int(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn render(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.is_zero(&self.sub(a, b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        self.equal(a, &self.one())
    }

    fn pow(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut result = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }
}

/// Rings where inversion is attempted element-wise. Fields always succeed on
/// nonzero input; quotient rings report zero divisors.
pub trait Field: Ring {
    fn try_inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn try_div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.try_inv(b)?))
    }
}

/// Q-algebras: rationals embed canonically.
pub trait RationalAlgebra: Ring {
    #[allow(clippy::wrong_self_convention)]
    fn from_rational(&self, q: &Rational) -> Self::Elem;
}

/// Exact square roots, `None` when the element is not a square.
pub trait SqrtRing: Ring {
    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem>;
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RationalField;

impl Ring for RationalField {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn from_int(&self, n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn equal(&self, a: &Rational, b: &Rational) -> bool {
        a == b
    }
    fn render(&self, a: &Rational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            rational_to_string(a)
        }
    }
}

impl Field for RationalField {
    fn try_inv(&self, a: &Rational) -> Result<Rational> {
        if a.is_zero() {
            return Err(Error::NotInvertible { gcd: "0".into() });
        }
        Ok(a.recip())
    }
}

impl RationalAlgebra for RationalField {
    fn from_rational(&self, q: &Rational) -> Rational {
        q.clone()
    }
}

impl SqrtRing for RationalField {
    fn sqrt(&self, a: &Rational) -> Option<Rational> {
        is_square(a)
    }
}

/// Z/nZ with canonical residues in [0, n).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModRing {
    pub modulus: u64,
}

impl ModRing {
    pub fn new(modulus: u64) -> Self {
        assert!(modulus >= 2);
        ModRing { modulus }
    }

    pub fn reduce_big(&self, n: &BigInt) -> u64 {
        let m = BigInt::from(self.modulus);
        let r = n.mod_floor(&m);
        r.try_into().expect("residue fits")
    }
}

impl Ring for ModRing {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.modulus
    }
    fn from_int(&self, n: i64) -> u64 {
        n.rem_euclid(self.modulus as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.modulus as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.modulus - a % self.modulus) % self.modulus
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.modulus as u128) as u64
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
}

impl Field for ModRing {
    fn try_inv(&self, a: &u64) -> Result<u64> {
        let m = self.modulus as i128;
        let e = (*a as i128).extended_gcd(&m);
        if e.gcd != 1 {
            return Err(Error::NotInvertible {
                gcd: e.gcd.to_string(),
            });
        }
        Ok(e.x.rem_euclid(m) as u64)
    }
}
