//! Splitting-field degree without resolvents.
//!
//! Numerical roots only propose candidate polynomial expressions; every
//! candidate is accepted solely after an exact check in the tower
//! K1 = Q[a]/(q), K2 = K1[b]/(q(b)/(b - a)).

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::poly::{quartic_irreducible, qx, PolyRing, QPoly, QuotientRing, UniPoly};
use crate::ring::{RationalField, Ring};

const MAX_DENOMINATOR: i64 = 1 << 24;
const REAL_TOLERANCE: f64 = 1e-6;

/// Degree of the splitting field of an irreducible quartic.
pub fn splitting_degree_oracle(q: &QPoly) -> Result<u32> {
    let ring = qx();
    let monic = ring.monic(q)?;
    if monic.degree() != Some(4) {
        return Err(Error::Degree("oracle expects a quartic".into()));
    }
    if !quartic_irreducible(&monic)? {
        return Err(Error::Reducible(ring.render(&monic)));
    }
    let roots = complex_roots(&monic);
    let k1 = QuotientRing::new(RationalField, &monic, "a")?;
    let n1 = roots_in_k1(&monic, &k1, &roots).len();
    match n1 {
        4 => Ok(4),
        2 => Ok(8),
        1 if root_in_k2(&monic, &k1, &roots)? => Ok(12),
        1 => Ok(24),
        n => Err(Error::Degree(format!(
            "inconsistent root count {n} in Q[a]/(q)"
        ))),
    }
}

fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn eval_c(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::zero(), |acc, &c| acc * z + c)
}

/// Durand-Kerner with a Newton polish; monic input.
fn complex_roots(monic: &QPoly) -> Vec<Complex64> {
    let coeffs: Vec<f64> = monic.coeffs().iter().map(to_f64).collect();
    let deriv: Vec<f64> = (1..coeffs.len()).map(|i| coeffs[i] * i as f64).collect();
    let n = coeffs.len() - 1;
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32 + 1)).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let denom = (0..n)
                .filter(|&j| j != i)
                .fold(Complex64::new(1.0, 0.0), |acc, j| acc * (z[i] - z[j]));
            let step = eval_c(&coeffs, z[i]) / denom;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    for root in z.iter_mut() {
        for _ in 0..4 {
            let d = eval_c(&deriv, *root);
            if d.norm() > 0.0 {
                *root -= eval_c(&coeffs, *root) / d;
            }
        }
    }
    z
}

/// Continued-fraction approximation with bounded denominator.
fn approximate_rational(x: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let tol = 1e-7 * x.abs().max(1.0);
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut rest = x;
    for _ in 0..64 {
        let a = rest.floor();
        if a.abs() > 1e15 {
            return None;
        }
        let a = a as i128;
        (h0, h1) = (h1, a * h1 + h0);
        (k0, k1) = (k1, a * k1 + k0);
        if k1 > MAX_DENOMINATOR as i128 {
            return None;
        }
        if (x - h1 as f64 / k1 as f64).abs() < tol {
            return Some(Rational::new(BigInt::from(h1), BigInt::from(k1)));
        }
        let frac = rest - rest.floor();
        if frac == 0.0 {
            return None;
        }
        rest = 1.0 / frac;
    }
    None
}

/// LU factorization with partial pivoting of a square complex matrix.
struct Lu {
    a: Vec<Vec<Complex64>>,
    perm: Vec<usize>,
}

impl Lu {
    fn new(mut a: Vec<Vec<Complex64>>) -> Option<Self> {
        let n = a.len();
        let mut perm: Vec<usize> = (0..n).collect();
        for col in 0..n {
            let pivot = (col..n).max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))?;
            if a[pivot][col].norm() < 1e-300 {
                return None;
            }
            a.swap(col, pivot);
            perm.swap(col, pivot);
            for row in col + 1..n {
                let factor = a[row][col] / a[col][col];
                a[row][col] = factor;
                let (upper, lower) = a.split_at_mut(row);
                for (x, &pivot_row) in lower[0][col + 1..].iter_mut().zip(&upper[col][col + 1..]) {
                    *x -= factor * pivot_row;
                }
            }
        }
        Some(Lu { a, perm })
    }

    fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.a.len();
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for k in 0..i {
                let sub = self.a[i][k] * x[k];
                x[i] -= sub;
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                let sub = self.a[i][k] * x[k];
                x[i] -= sub;
            }
            x[i] /= self.a[i][i];
        }
        x
    }
}

fn rationalize(values: &[Complex64]) -> Option<Vec<Rational>> {
    let scale = values.iter().map(|v| v.norm()).fold(1.0f64, f64::max);
    values
        .iter()
        .map(|v| {
            if v.im.abs() > REAL_TOLERANCE * scale {
                None
            } else {
                approximate_rational(v.re)
            }
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Roots of an irreducible quartic q in its stem field Q[var]/(q monic),
/// each certified by exact evaluation, sorted by coefficient vector.
pub fn roots_in_stem_field(q: &QPoly, var: &str) -> Result<(QuotientRing<RationalField>, Vec<Vec<Rational>>)> {
    let monic = qx().monic(q)?;
    if monic.degree() != Some(4) {
        return Err(Error::Degree("expected a quartic".into()));
    }
    let k = QuotientRing::new(RationalField, &monic, var)?;
    let mut roots = roots_in_k1(&monic, &k, &complex_roots(&monic));
    roots.sort();
    Ok((k, roots))
}

/// Distinct roots of q in K1, each certified exactly.
fn roots_in_k1(q: &QPoly, k1: &QuotientRing<RationalField>, roots: &[Complex64]) -> Vec<Vec<Rational>> {
    let vandermonde: Vec<Vec<Complex64>> = roots
        .iter()
        .map(|&z| (0..4).map(|k| z.powu(k)).collect())
        .collect();
    let Some(lu) = Lu::new(vandermonde) else {
        return Vec::new();
    };
    let mut found: Vec<Vec<Rational>> = Vec::new();
    for perm in permutations(4) {
        let rhs: Vec<Complex64> = perm.iter().map(|&i| roots[i]).collect();
        let Some(coeffs) = rationalize(&lu.solve(&rhs)) else {
            continue;
        };
        let candidate = k1.reduce(&qx().from_coeffs(coeffs));
        if k1.is_root_of(q, &candidate) && !found.contains(&candidate) {
            found.push(candidate);
        }
    }
    found
}

/// Whether some h(a, b) with deg_a < 4, deg_b < 3 is a third root of q in K2.
fn root_in_k2(q: &QPoly, k1: &QuotientRing<RationalField>, roots: &[Complex64]) -> Result<bool> {
    let k1y = PolyRing::new(k1.clone(), "b");
    let lifted = k1y.embed_qpoly(q);
    let linear = k1y.from_coeffs(vec![k1.neg(&k1.generator()), k1.one()]);
    let (cofactor, rem) = k1y.divmod_monic(&lifted, &linear);
    debug_assert!(rem.is_zero());
    let k2 = QuotientRing::new(k1.clone(), &cofactor, "b")?;
    let a_in_k2 = k2.embed(&k1.generator());
    let b_in_k2 = k2.generator();

    let pairs: Vec<(usize, usize)> = (0..4)
        .flat_map(|i| (0..4).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let monomials: Vec<(u32, u32)> = (0..3).flat_map(|j| (0..4).map(move |i| (i, j))).collect();
    let matrix: Vec<Vec<Complex64>> = pairs
        .iter()
        .map(|&(s, t)| {
            monomials
                .iter()
                .map(|&(i, j)| roots[s].powu(i) * roots[t].powu(j))
                .collect()
        })
        .collect();
    let Some(lu) = Lu::new(matrix) else {
        return Ok(false);
    };
    let k2z = PolyRing::new(k2.clone(), "Z");
    let lifted_q: UniPoly<Vec<Vec<Rational>>> = k2z.embed_qpoly(q);

    for mask in 0u32..(1 << pairs.len()) {
        let rhs: Vec<Complex64> = pairs
            .iter()
            .enumerate()
            .map(|(idx, &(s, t))| {
                let others: Vec<usize> = (0..4).filter(|&k| k != s && k != t).collect();
                roots[others[((mask >> idx) & 1) as usize]]
            })
            .collect();
        let Some(coeffs) = rationalize(&lu.solve(&rhs)) else {
            continue;
        };
        // coefficient of b^j is the K1 element sum_i c_{ij} a^i
        let element: Vec<Vec<Rational>> = coeffs
            .chunks(4)
            .map(|chunk| k1.reduce(&qx().from_coeffs(chunk.to_vec())))
            .collect();
        let element = k2.reduce(&k2.poly_ring().from_coeffs(element));
        if element == a_in_k2 || element == b_in_k2 {
            continue;
        }
        let value = k2z.eval(&lifted_q, &element);
        if k2.is_zero(&value) {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::poly::qpoly_from_ints;

    #[test]
    fn continued_fractions() {
        assert_eq!(approximate_rational(0.75), Some(rat(3, 4)));
        assert_eq!(approximate_rational(-36.0 / 31.0), Some(rat(-36, 31)));
        assert_eq!(approximate_rational(0.75 + 1e-11), Some(rat(3, 4)));
        assert_eq!(approximate_rational(f64::NAN), None);
    }

    #[test]
    fn degrees_of_examples() {
        let cases: [(&[i64], u32); 6] = [
            (&[31, -36, 26, -36, 31], 4),
            (&[1, 0, 0, 0, 1], 4),
            (&[-2, 0, 0, 0, 1], 8),
            (&[12, 8, 0, 0, 1], 12),
            (&[-1, -1, 0, 0, 1], 24),
            (&[1, 1, 1, 1, 1], 4),
        ];
        for (c, degree) in cases {
            assert_eq!(
                splitting_degree_oracle(&qpoly_from_ints(c)).unwrap(),
                degree,
                "{c:?}"
            );
        }
    }

    #[test]
    fn reducible_input_is_rejected() {
        let q = qpoly_from_ints(&[1, 0, 2, 0, 1]);
        assert!(matches!(splitting_degree_oracle(&q), Err(Error::Reducible(_))));
    }

    #[test]
    fn cyclic_stem_field_holds_all_roots() {
        let (k, roots) = roots_in_stem_field(&qpoly_from_ints(&[31, -36, 26, -36, 31]), "α").unwrap();
        assert_eq!(roots.len(), 4);
        assert!(roots.contains(&k.generator()));
        let (_, roots) = roots_in_stem_field(&qpoly_from_ints(&[-2, 0, 0, 0, 1]), "a").unwrap();
        assert_eq!(roots.len(), 2);
    }
}
