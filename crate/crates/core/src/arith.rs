//! Exact scalar arithmetic: canonical big rationals, p-adic valuations,
//! rational square roots and power-residue sets.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    rational_normalize(BigInt::from(num), BigInt::from(den)).expect("nonzero denominator")
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rational_normalize(num: BigInt, den: BigInt) -> Result<Rational> {
    if den.is_zero() {
        return Err(Error::InvalidRational(format!("{num}/0: zero denominator")));
    }
    // BigRational::new reduces and moves the sign to the numerator.
    Ok(Rational::new(num, den))
}

/// Canonical `p/q` rendering, used for every serialized rational.
pub fn rational_to_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `p/q`, `p` or `-p/q`; the unicode minus sign is accepted.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let cleaned = s.trim().replace('\u{2212}', "-");
    let (n, d) = match cleaned.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (cleaned.as_str(), "1"),
    };
    let num: BigInt = n
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
    let den: BigInt = d
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
    rational_normalize(num, den)
}

/// Height of a reduced rational p/q: max(|p|, q).
pub fn height(q: &Rational) -> BigInt {
    let n = q.numer().abs();
    if &n > q.denom() {
        n
    } else {
        q.denom().clone()
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Exponent of `p` in a nonzero integer.
pub fn int_valuation(n: &BigInt, p: u64) -> u64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// v_p(q) for nonzero q. Zero is rejected rather than mapped to a sentinel.
pub fn padic_val(q: &Rational, p: u64) -> Result<i64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if q.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    Ok(int_valuation(q.numer(), p) as i64 - int_valuation(q.denom(), p) as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ValuationValue {
    Finite(i64),
    Infinity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadicValuation {
    pub prime: u64,
    pub value: ValuationValue,
}

impl PadicValuation {
    pub fn of(q: &Rational, prime: u64) -> Result<Self> {
        let value = match padic_val(q, prime) {
            Ok(v) => ValuationValue::Finite(v),
            Err(Error::ValuationOfZero) => ValuationValue::Infinity,
            Err(e) => return Err(e),
        };
        Ok(PadicValuation { prime, value })
    }
}

/// Exact integer square root, `None` unless `n` is a perfect square.
pub fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Non-negative rational square root, if one exists.
pub fn is_square(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = int_sqrt_exact(q.numer())?;
    let d = int_sqrt_exact(q.denom())?;
    Some(Rational::new(n, d))
}

/// Perfect-square test on machine integers for the search kernels.
pub fn i128_sqrt_exact(n: i128) -> Option<u128> {
    if n < 0 {
        return None;
    }
    let n = n as u128;
    // Squares mod 64 hit only 12 classes, cheap rejection before the root.
    const SQ64: u64 = {
        let mut mask = 0u64;
        let mut i = 0;
        while i < 64 {
            mask |= 1 << ((i * i) % 64);
            i += 1;
        }
        mask
    };
    if (SQ64 >> (n & 63)) & 1 == 0 {
        return None;
    }
    let r = n.isqrt();
    (r * r == n).then_some(r)
}

/// A sorted, deduplicated set of residues modulo `modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueSet {
    pub modulus: u64,
    pub members: BTreeSet<u64>,
}

impl ResidueSet {
    pub fn new(modulus: u64, members: impl IntoIterator<Item = u64>) -> Self {
        let members = members.into_iter().map(|m| m % modulus).collect();
        ResidueSet { modulus, members }
    }

    pub fn contains(&self, r: i64) -> bool {
        self.members
            .contains(&(r.rem_euclid(self.modulus as i64) as u64))
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn closed_under_negation(&self) -> bool {
        self.members
            .iter()
            .all(|&m| self.members.contains(&((self.modulus - m) % self.modulus)))
    }
}

impl fmt::Display for ResidueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.members.iter().map(|m| m.to_string()).collect();
        write!(f, "{{{}}} mod {}", items.join(", "), self.modulus)
    }
}

pub fn pow_mod(base: u64, exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut result = 1u128 % m;
    let mut b = base as u128 % m;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    result as u64
}

/// { a^exponent mod modulus } over all residues, or over the units only.
pub fn power_residues(modulus: u64, exponent: u64, units_only: bool) -> ResidueSet {
    assert!(modulus >= 2, "modulus must be at least 2");
    let members = (0..modulus)
        .filter(|&a| !units_only || a.gcd(&modulus) == 1)
        .map(|a| pow_mod(a, exponent, modulus));
    ResidueSet::new(modulus, members)
}

/// Primes dividing a nonzero integer, by trial division.
pub fn prime_support(n: &BigInt) -> Vec<u64> {
    let mut n = n.abs();
    let mut primes = Vec::new();
    let mut d = 2u64;
    while BigInt::from(d) * BigInt::from(d) <= n {
        let bd = BigInt::from(d);
        if (&n % &bd).is_zero() {
            primes.push(d);
            while (&n % &bd).is_zero() {
                n /= &bd;
            }
        }
        d += 1;
    }
    if n > BigInt::one() {
        primes.push(n.to_u64().expect("prime cofactor fits in u64"));
    }
    primes
}

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod rational_str {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rational_to_string(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter writing big integers as decimal strings.
pub mod rational_vec_str {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(rational_to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

pub mod bigint_str {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.trim().parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalize_examples() {
        let q = rational_normalize(BigInt::from(-9 * 32), BigInt::from(8 * 31)).unwrap();
        assert_eq!(q, rat(-36, 31));
        let z = rational_normalize(BigInt::from(0), BigInt::from(7)).unwrap();
        assert_eq!(
            (z.numer().clone(), z.denom().clone()),
            (BigInt::from(0), BigInt::from(1))
        );
        let q = rational_normalize(BigInt::from(4), BigInt::from(-6)).unwrap();
        assert_eq!(rational_to_string(&q), "-2/3");
        assert!(matches!(
            rational_normalize(BigInt::from(1), BigInt::from(0)),
            Err(Error::InvalidRational(_))
        ));
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(padic_val(&rat(-1, 8), 2).unwrap(), -3);
        assert_eq!(padic_val(&int(50), 5).unwrap(), 2);
        assert_eq!(padic_val(&rat(-36, 31), 5).unwrap(), 0);
        assert_eq!(padic_val(&int(0), 5), Err(Error::ValuationOfZero));
        assert_eq!(padic_val(&int(3), 4), Err(Error::NotPrime(4)));
        assert_eq!(
            PadicValuation::of(&int(0), 2).unwrap().value,
            ValuationValue::Infinity
        );
    }

    #[test]
    fn square_examples() {
        assert_eq!(is_square(&rat(9, 16)), Some(rat(3, 4)));
        assert_eq!(is_square(&int(0)), Some(int(0)));
        assert_eq!(is_square(&rat(5, 2)), None);
        assert_eq!(is_square(&int(-4)), None);
    }

    #[test]
    fn residue_examples() {
        let fifth = power_residues(25, 5, true);
        assert_eq!(
            fifth.members.iter().copied().collect::<Vec<_>>(),
            vec![1, 7, 18, 24]
        );
        assert!(fifth.closed_under_negation());
        let sq8 = power_residues(8, 2, false);
        assert_eq!(
            sq8.members.iter().copied().collect::<Vec<_>>(),
            vec![0, 1, 4]
        );
        assert!(!sq8.contains(5));
        assert_eq!(power_residues(5, 1, false).len(), 5);
    }

    #[test]
    fn parse_roundtrip_and_unicode_minus() {
        assert_eq!(parse_rational("\u{2212}36/31").unwrap(), rat(-36, 31));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn is_square_agrees_with_scan() {
        // Brute-force oracle: n*d is a square iff some k <= sqrt bound has k*k = n*d.
        let squares: BTreeSet<i64> = (0..=1000i64).map(|k| k * k).collect();
        for n in -40i64..=40 {
            for d in 1i64..=40 {
                let q = rat(n, d);
                let prod = q.numer().to_i64().unwrap() * q.denom().to_i64().unwrap();
                assert_eq!(is_square(&q).is_some(), squares.contains(&prod), "{q}");
            }
        }
    }

    #[test]
    fn i128_square_kernel() {
        for n in 0i128..5000 {
            let expect = (0..=71i128).any(|k| k * k == n);
            assert_eq!(i128_sqrt_exact(n).is_some(), expect, "{n}");
        }
        let big = 12345678901234567i128;
        assert_eq!(i128_sqrt_exact(big * big), Some(big as u128));
        assert_eq!(i128_sqrt_exact(big * big + 1), None);
    }

    fn nonzero_rational() -> impl Strategy<Value = Rational> {
        (-10_000i64..10_000, 1i64..10_000)
            .prop_filter("nonzero", |(n, _)| *n != 0)
            .prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn valuation_is_additive(q in nonzero_rational(), r in nonzero_rational()) {
            for p in [2u64, 5] {
                let lhs = padic_val(&(&q * &r), p).unwrap();
                prop_assert_eq!(lhs, padic_val(&q, p).unwrap() + padic_val(&r, p).unwrap());
            }
        }

        #[test]
        fn square_root_squares_back(n in -1_000_000i64..1_000_000, d in 1i64..1000) {
            let q = rat(n, d);
            if let Some(s) = is_square(&q) {
                prop_assert_eq!(&s * &s, q);
            } else {
                let prod = q.numer() * q.denom();
                let is_int_square = prod >= BigInt::zero() && {
                    let r = prod.sqrt();
                    &r * &r == prod
                };
                prop_assert!(!is_int_square);
            }
        }

        #[test]
        fn fifth_power_units_mod_25_closed(_x in 0u8..1) {
            let s = power_residues(25, 5, true);
            prop_assert_eq!(s.len(), 4);
            prop_assert!(s.closed_under_negation());
        }
    }
}
