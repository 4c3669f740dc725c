//! Rational roots of rational polynomials.
//!
//! Roots are found p-adically: pick a small prime p not dividing the leading
//! coefficient at which every root mod p is simple, lift each root by Newton
//! iteration to p^k > 2 |c0| |lc|, then recover a/b by rational
//! reconstruction and confirm it exactly. Every rational root a/b of the
//! primitive model has b | lc and a | c0, so the reconstruction is unique.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{qx, QPoly};
use crate::arith::Rational;
use crate::ring::{ModRing, Ring};

/// Integer coefficients with content 1 and positive leading coefficient.
pub fn primitive_integer_model(p: &QPoly) -> Vec<BigInt> {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return ints;
    }
    let sign = if ints.last().is_some_and(|c| c.is_negative()) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    ints.into_iter().map(|c| c / &content * &sign).collect()
}

fn eval_big(p: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    p.iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|&n| crate::arith::is_prime(n))
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// a/b with |a| <= num_bound, 0 < b <= den_bound and a = b r (mod m).
fn rational_reconstruct(
    r: &BigInt,
    m: &BigInt,
    num_bound: &BigInt,
    den_bound: &BigInt,
) -> Option<Rational> {
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > num_bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || &t1.abs() > den_bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rational::new(r1, t1))
}

/// Roots mod `prime` of an integer polynomial, if `prime` does not divide the
/// leading coefficient and every root mod `prime` is simple.
fn simple_roots_mod(p: &[BigInt], prime: u64) -> Option<Vec<u64>> {
    let ring = ModRing::new(prime);
    if ring.reduce_big(p.last()?) == 0 {
        return None;
    }
    let reduced: Vec<u64> = p.iter().map(|c| ring.reduce_big(c)).collect();
    let deriv: Vec<u64> = reduced
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| ring.mul(&(i as u64 % prime), c))
        .collect();
    let eval = |poly: &[u64], x: u64| {
        poly.iter()
            .rev()
            .fold(0u64, |acc, c| ring.add(&ring.mul(&acc, &x), c))
    };
    let roots: Vec<u64> = (0..prime).filter(|&x| eval(&reduced, x) == 0).collect();
    roots.iter().all(|&r| eval(&deriv, r) != 0).then_some(roots)
}

/// Lifts simple roots mod `prime` and keeps the exact rational roots.
fn lift_roots(p: &[BigInt], prime: u64, roots: Vec<u64>) -> Vec<Rational> {
    let deg = p.len() - 1;
    let lc = p.last().unwrap();
    let c0 = &p[0];
    let bound = BigInt::from(2) * c0.abs() * lc.abs() + 1;
    let bp = BigInt::from(prime);
    let mut modulus = bp.clone();
    let mut k = 1u32;
    while modulus <= bound {
        modulus *= &bp;
        k += 1;
    }
    let deriv_big: Vec<BigInt> = p.iter().enumerate().skip(1).map(|(i, c)| c * i).collect();
    let mut found = Vec::new();
    let is_root = |q: &Rational| {
        let (num, den) = (q.numer(), q.denom());
        if num.is_zero() || !(lc % den).is_zero() || !(c0 % num).is_zero() {
            return false;
        }
        // sum c_i num^i den^(deg-i) == 0
        let value = p.iter().enumerate().fold(BigInt::zero(), |acc, (i, c)| {
            acc + c * num.pow(i as u32) * den.pow((deg - i) as u32)
        });
        value.is_zero()
    };
    for r in roots {
        let mut x = BigInt::from(r);
        let mut precision = 1u32;
        while precision < k {
            precision = (precision * 2).min(k);
            let m = bp.pow(precision);
            let fx = eval_big(p, &x, &m);
            let dx = eval_big(&deriv_big, &x, &m);
            let inv = mod_inverse(&dx, &m).expect("simple root stays a unit");
            x = (x - fx * inv).mod_floor(&m);
            if precision < k {
                // early exit once a balanced reconstruction is a genuine root
                let half = (&m / 2u32).sqrt();
                let early =
                    rational_reconstruct(&x, &m, &half.clone().min(c0.abs()), &half.min(lc.abs()));
                if let Some(q) = early.filter(|q| is_root(q)) {
                    found.push(q);
                    precision = k + 1;
                }
            }
        }
        if precision == k {
            if let Some(q) =
                rational_reconstruct(&x, &modulus, &c0.abs(), &lc.abs()).filter(|q| is_root(q))
            {
                found.push(q);
            }
        }
    }
    found.sort();
    found.dedup();
    found
}

/// Distinct roots of a squarefree integer polynomial with nonzero constant term.
fn roots_of_squarefree(p: &[BigInt]) -> Vec<Rational> {
    if p.len() < 2 {
        return Vec::new();
    }
    for prime in small_primes() {
        if let Some(roots) = simple_roots_mod(p, prime) {
            return lift_roots(p, prime, roots);
        }
    }
    unreachable!("a squarefree polynomial has good reduction at almost every prime")
}

/// Number of primes tried before falling back to the squarefree part over Q.
const FAST_PATH_PRIMES: usize = 12;

/// Distinct rational roots in ascending order. The zero polynomial has none
/// by convention.
pub fn rational_roots(p: &QPoly) -> Vec<Rational> {
    rational_root_multiplicities(p)
        .into_iter()
        .map(|(r, _)| r)
        .collect()
}

/// Distinct rational roots with their multiplicities, ascending.
pub fn rational_root_multiplicities(p: &QPoly) -> Vec<(Rational, usize)> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let model = primitive_integer_model(p);
    let zeros = model.iter().take_while(|c| c.is_zero()).count();
    let rest = &model[zeros..];
    let mut out = Vec::new();
    if zeros > 0 {
        out.push((Rational::zero(), zeros));
    }
    // a rational root repeated over Q is repeated mod every prime not dividing lc
    if rest.len() > 1 {
        let fast = small_primes().take(FAST_PATH_PRIMES).find_map(|prime| {
            simple_roots_mod(rest, prime).map(|roots| lift_roots(rest, prime, roots))
        });
        match fast {
            Some(roots) => out.extend(roots.into_iter().map(|r| (r, 1))),
            None => out.extend(multiplicities_via_squarefree(
                &qx().from_coeffs(
                    rest.iter()
                        .map(|c| Rational::from_integer(c.clone()))
                        .collect(),
                ),
            )),
        }
    }
    out.sort();
    out
}

fn multiplicities_via_squarefree(p: &QPoly) -> Vec<(Rational, usize)> {
    let ring = qx();
    let g = ring.gcd(p, &ring.derivative(p)).expect("Q is a field");
    let squarefree = ring.divmod(p, &g).expect("gcd divides").0;
    roots_of_squarefree(&primitive_integer_model(&squarefree))
        .into_iter()
        .map(|r| {
            let lin = ring.from_coeffs(vec![-r.clone(), Rational::one()]);
            let mut rest = p.clone();
            let mut mult = 0;
            loop {
                let (q, rem) = ring.divmod(&rest, &lin).unwrap();
                if !rem.is_zero() {
                    break;
                }
                mult += 1;
                rest = q;
            }
            (r, mult)
        })
        .collect()
}
