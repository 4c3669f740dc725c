//! Canonical enumeration of rationals by height max(|p|, q).
//!
//! Order: height ascending, then numerator ascending, then value ascending.

use num_integer::Integer;

use crate::arith::{rat, Rational};

/// Reduced fractions p/q with max(|p|, q) = h, in canonical order.
pub fn fractions_of_height(h: u64) -> Vec<(i64, i64)> {
    let h = h as i64;
    if h == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for p in -h..=h {
        let dens: Vec<i64> = if p.abs() == h {
            (1..=h).collect()
        } else {
            vec![h]
        };
        for q in dens {
            if p.gcd(&q) == 1 || (p == 0 && q == 1) {
                out.push((p, q));
            }
        }
    }
    // equal numerators: smaller value first
    out.sort_by(|a, b| {
        a.0.cmp(&b.0)
            .then_with(|| rat(a.0, a.1).cmp(&rat(b.0, b.1)))
    });
    out
}

/// All rationals of height at most `bound`, canonical order.
pub fn rationals_up_to(bound: u64) -> Vec<Rational> {
    (1..=bound)
        .flat_map(fractions_of_height)
        .map(|(p, q)| rat(p, q))
        .collect()
}

/// Number of rationals of height at most `bound`.
pub fn count_up_to(bound: u64) -> usize {
    (1..=bound).map(|h| fractions_of_height(h).len()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::height;
    use num_bigint::BigInt;
    use std::collections::BTreeSet;

    #[test]
    fn small_heights() {
        assert_eq!(fractions_of_height(1), vec![(-1, 1), (0, 1), (1, 1)]);
        assert_eq!(
            fractions_of_height(2),
            vec![(-2, 1), (-1, 2), (1, 2), (2, 1)]
        );
        assert_eq!(
            fractions_of_height(3),
            vec![
                (-3, 1),
                (-3, 2),
                (-2, 3),
                (-1, 3),
                (1, 3),
                (2, 3),
                (3, 2),
                (3, 1)
            ]
        );
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let bound = 25i64;
        let mut expected = BTreeSet::new();
        for p in -bound..=bound {
            for q in 1..=bound {
                expected.insert(rat(p, q));
            }
        }
        let listed = rationals_up_to(bound as u64);
        let as_set: BTreeSet<_> = listed.iter().cloned().collect();
        assert_eq!(listed.len(), as_set.len());
        assert_eq!(as_set, expected);
        assert_eq!(count_up_to(bound as u64), listed.len());
        for w in listed.windows(2) {
            let (h0, h1) = (height(&w[0]), height(&w[1]));
            assert!(h0 < h1 || (h0 == h1 && (w[0].numer(), &w[0]) < (w[1].numer(), &w[1])));
        }
        assert!(listed.iter().all(|q| height(q) <= BigInt::from(bound)));
    }
}
