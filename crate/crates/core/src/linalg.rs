//! Exact linear algebra: fraction-free rank and rational linear solving.

use std::collections::HashSet;

use num::{BigInt, Integer, One, Signed, Zero};
use rayon::prelude::*;

use crate::scalars::{BareissRing, Rational};

/// Rank by fraction-free (Bareiss) elimination. Works over any integral domain
/// with exact division; columns without a pivot are skipped.
pub fn bareiss_rank<R: BareissRing>(mut a: Vec<Vec<R>>) -> usize {
    let nrows = a.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = a[0].len();
    let mut prev = R::ring_one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_ring_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        rest.par_iter_mut().for_each(|row| {
            let lead = row[c].clone();
            let lead_zero = lead.is_ring_zero();
            for j in c + 1..ncols {
                let scaled = pivot.ring_mul(&row[j]);
                let num = if lead_zero || pivot_row[j].is_ring_zero() {
                    scaled
                } else {
                    scaled.ring_sub(&lead.ring_mul(&pivot_row[j]))
                };
                row[j] = if num.is_ring_zero() {
                    num
                } else {
                    num.div_exact_ring(&prev)
                };
            }
            row[c] = lead.ring_sub(&lead);
        });
        prev = pivot.clone();
        r += 1;
    }
    r
}

/// Scales a rational row to a primitive integer row.
pub fn primitive_integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .filter(|v| !v.is_zero())
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = row
        .iter()
        .map(|v| (v * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints
        .iter()
        .filter(|v| !v.is_zero())
        .fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|v| v / &g).collect()
    }
}

/// Exact rank of a rational matrix given by rows.
pub fn rational_rank(rows: &[Vec<Rational>]) -> usize {
    let ints = dedup_projective(rows.iter().map(|r| primitive_integer_row(r)).collect());
    bareiss_rank(ints)
}

/// Drops zero rows and rows that are multiples of an earlier row.
/// Rows must already be primitive integer vectors.
pub fn dedup_projective(rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mut row in rows {
        let Some(first) = row.iter().find(|v| !v.is_zero()) else {
            continue;
        };
        if first.is_negative() {
            row.iter_mut().for_each(|v| *v = -&*v);
        }
        if seen.insert(row.clone()) {
            out.push(row);
        }
    }
    out
}

/// Solves `sum_j x_j * columns[j] = rhs` over the rationals. Returns the
/// solution with all free variables set to zero, or `None` if inconsistent.
pub fn solve(columns: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let nvars = columns.len();
    let nrows = rhs.len();
    let mut m: Vec<Vec<Rational>> = (0..nrows)
        .map(|i| {
            let mut row: Vec<Rational> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .filter(|row| row.iter().any(|v| !v.is_zero()))
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nvars {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[nvars].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); nvars];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][nvars].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, rat, ParamPoly};

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    #[test]
    fn bareiss_small_ranks() {
        assert_eq!(bareiss_rank(ints(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(bareiss_rank(ints(&[&[0, 1, 2], &[0, 2, 5], &[0, 0, 0]])), 2);
        assert_eq!(
            bareiss_rank(ints(&[&[2, 3, 5], &[7, 11, 13], &[17, 19, 23]])),
            3
        );
        assert_eq!(bareiss_rank::<BigInt>(vec![]), 0);
        // pivot-free leading column
        assert_eq!(bareiss_rank(ints(&[&[0, 0, 1], &[0, 3, 1], &[0, 6, 2]])), 2);
    }

    #[test]
    fn bareiss_over_parameter_polys() {
        let q1 = ParamPoly::param(1);
        let q2 = ParamPoly::param(2);
        let one = ParamPoly::one();
        // [[q1, q2], [q1*q2, q2^2]] has rank 1; [[q1, 1], [1, q2]] has rank 2
        let a = vec![vec![q1.clone(), q2.clone()], vec![&q1 * &q2, &q2 * &q2]];
        assert_eq!(bareiss_rank(a), 1);
        let b = vec![vec![q1.clone(), one.clone()], vec![one, q2]];
        assert_eq!(bareiss_rank(b), 2);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let cols = vec![vec![int(1), int(0), int(1)], vec![int(0), int(1), int(1)]];
        let x = solve(&cols, &[int(2), int(3), int(5)]).unwrap();
        assert_eq!(x, vec![int(2), int(3)]);
        assert!(solve(&cols, &[int(2), int(3), int(6)]).is_none());
        let x = solve(&cols, &[rat(1, 2), int(0), rat(1, 2)]).unwrap();
        assert_eq!(x, vec![rat(1, 2), int(0)]);
    }

    #[test]
    fn rational_rank_clears_denominators() {
        let rows = vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![int(3), int(2)],
            vec![int(0), int(0)],
        ];
        assert_eq!(rational_rank(&rows), 1);
    }
}
