//! Insertion of a letter into the standard polynomial, and moving `[x1,x2]`
//! across a block of letters.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use num::{One, Zero};

use crate::error::{Error, Result};
use crate::freealg::{commutator, permutation_sign, standard_poly, Gen, NcPoly, Word};
use crate::pairs::PairTarget;
use crate::scalars::{int, rat, Rational};

use super::solve_modulo_identities;

/// Coefficients with `sum_sigma sign(sigma) x_{s1}..x_{sk} y x_{s(k+1)}..x_{sn}
/// = alpha * y S_n + beta * S_n y` modulo weak identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InsertionCoeffs {
    pub n: usize,
    pub k: usize,
    pub alpha: Rational,
    pub beta: Rational,
}

fn check_insertion_args(n: usize, k: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be >= 2, got {n}")));
    }
    if k == 0 || k >= n {
        return Err(Error::InvalidArgument(format!(
            "k must satisfy 1 <= k <= {}, got {k}",
            n - 1
        )));
    }
    Ok(())
}

/// Coefficients from the closed base case and the recursion
/// `alpha(n,k) = alpha(n-1,k-1) alpha(n,1)`,
/// `beta(n,k) = alpha(n-1,k-1) beta(n,1) + beta(n-1,k-1)`.
pub fn insertion_coeffs(n: usize, k: usize) -> Result<InsertionCoeffs> {
    check_insertion_args(n, k)?;
    let mut memo = HashMap::new();
    let (alpha, beta) = recurse(n, k, &mut memo);
    Ok(InsertionCoeffs { n, k, alpha, beta })
}

fn recurse(
    n: usize,
    k: usize,
    memo: &mut HashMap<(usize, usize), (Rational, Rational)>,
) -> (Rational, Rational) {
    if let Some(v) = memo.get(&(n, k)) {
        return v.clone();
    }
    let nn = n as i64;
    let base = (rat(-(nn - 1), nn), rat(if n % 2 == 1 { 1 } else { -1 }, nn));
    let v = if k == 1 {
        base
    } else {
        let (a_prev, b_prev) = recurse(n - 1, k - 1, memo);
        (&a_prev * &base.0, &a_prev * &base.1 + b_prev)
    };
    memo.insert((n, k), v.clone());
    v
}

/// `y` is `x_{n+1}`.
fn y_gen(n: usize) -> Gen {
    n as Gen + 1
}

/// `sum_sigma sign(sigma) x_{s1}..x_{sk} y x_{s(k+1)}..x_{sn}`.
pub fn insertion_sum(n: usize, k: usize) -> NcPoly {
    let y = y_gen(n);
    NcPoly::from_terms((0..n).permutations(n).map(|p| {
        let mut letters: Vec<Gen> = p.iter().map(|&i| i as Gen + 1).collect();
        letters.insert(k, y);
        (Word::new(letters), int(permutation_sign(&p)))
    }))
}

fn y_times_standard(n: usize) -> Result<(NcPoly, NcPoly)> {
    let s = standard_poly(n)?;
    let y = NcPoly::x(y_gen(n));
    Ok((&y * &s, &s * &y))
}

/// Insertion sum minus `alpha y S_n + beta S_n y` with the recursive coefficients.
pub fn insertion_defect(n: usize, k: usize) -> Result<NcPoly> {
    let c = insertion_coeffs(n, k)?;
    let (ys, sy) = y_times_standard(n)?;
    Ok(&(&insertion_sum(n, k) - &ys.scale(&c.alpha)) - &sy.scale(&c.beta))
}

/// Coefficients obtained by solving for `alpha, beta` in the image of the
/// evaluation map of `(C_{n+1}, V_{n+1})`.
pub fn insertion_coeffs_by_evaluation(n: usize, k: usize) -> Result<InsertionCoeffs> {
    check_insertion_args(n, k)?;
    let (ys, sy) = y_times_standard(n)?;
    let pair = PairTarget::clifford(n + 1)?;
    let sol =
        solve_modulo_identities(&insertion_sum(n, k), &[ys, sy], &pair)?.ok_or_else(|| {
            Error::InvalidArgument(format!("insertion sum ({n},{k}) has no solution"))
        })?;
    Ok(InsertionCoeffs {
        n,
        k,
        alpha: sol[0].clone(),
        beta: sol[1].clone(),
    })
}

/// `x_i S_n - (-1)^(n-1) S_n x_i`.
pub fn standard_commutation_defect(n: usize, i: usize) -> Result<NcPoly> {
    if i == 0 || i > n {
        return Err(Error::InvalidArgument(format!(
            "i must satisfy 1 <= i <= {n}, got {i}"
        )));
    }
    let s = standard_poly(n)?;
    let x = NcPoly::x(i as Gen);
    let sign = if n % 2 == 1 { int(1) } else { int(-1) };
    Ok(&(&x * &s) - &(&s * &x).scale(&sign))
}

/// `x1 y1..yn x2 - x2 y1..yn x1` with `y_i = x_{i+2}`.
pub fn swap_difference(n: usize) -> NcPoly {
    let ys: Vec<Gen> = (3..n as Gen + 3).collect();
    let word = |a: Gen, b: Gen| {
        let mut l = vec![a];
        l.extend(&ys);
        l.push(b);
        Word::new(l)
    };
    NcPoly::from_terms([(word(1, 2), int(1)), (word(2, 1), int(-1))])
}

type Sandwich = BTreeMap<(Word, Word), Rational>;

/// Pairs `(A_i, B_i)` in `y1..yn` (`y_i = x_{i+2}`), grouped by the right
/// factor, with `deg A_i > 0` and `swap_difference(n) - sum A_i [x1,x2] B_i`
/// a weak identity of every Clifford pair.
pub fn swap_decomposition(n: usize) -> Result<Vec<(NcPoly, NcPoly)>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be >= 2, got {n}")));
    }
    let ys: Vec<Gen> = (3..n as Gen + 3).collect();
    let terms = sandwich(&ys);
    let mut grouped: BTreeMap<Word, NcPoly> = BTreeMap::new();
    for ((a, b), c) in terms {
        grouped.entry(b).or_insert_with(NcPoly::zero).add_term(a, c);
    }
    Ok(grouped
        .into_iter()
        .filter(|(_, a)| !a.is_zero())
        .map(|(b, a)| (a, NcPoly::word(b)))
        .collect())
}

/// `D(Y)` with `x1 Y x2 - x2 Y x1 = sum c A [x1,x2] B` modulo identities, as a
/// map `(A, B) -> c`.
fn sandwich(ys: &[Gen]) -> Sandwich {
    let mut out = Sandwich::new();
    match ys {
        [] => {
            out.insert((Word::empty(), Word::empty()), Rational::one());
        }
        [y] => {
            let w = Word::new(vec![*y]);
            out.insert((w.clone(), Word::empty()), rat(-1, 2));
            out.insert((Word::empty(), w), rat(-1, 2));
        }
        [y1, y2, rest @ ..] => {
            let tail2: Vec<Gen> = std::iter::once(*y2).chain(rest.iter().copied()).collect();
            let tail1: Vec<Gen> = std::iter::once(*y1).chain(rest.iter().copied()).collect();
            accumulate(&mut out, &[*y1], &sandwich(&tail2), &int(-1));
            accumulate(&mut out, &[*y2], &sandwich(&tail1), &int(1));
            accumulate(&mut out, &[*y2, *y1], &sandwich(rest), &int(1));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn accumulate(out: &mut Sandwich, prefix: &[Gen], inner: &Sandwich, c: &Rational) {
    let p = Word::new(prefix.to_vec());
    for ((a, b), v) in inner {
        let entry = out
            .entry((p.concat(a), b.clone()))
            .or_insert_with(Rational::zero);
        *entry += c * v;
    }
}

/// `swap_difference(n) - sum A_i [x1,x2] B_i`.
pub fn swap_decomposition_defect(n: usize, pairs: &[(NcPoly, NcPoly)]) -> NcPoly {
    let c = commutator(&NcPoly::x(1), &NcPoly::x(2));
    pairs
        .iter()
        .fold(swap_difference(n), |acc, (a, b)| &acc - &(&(a * &c) * b))
}
