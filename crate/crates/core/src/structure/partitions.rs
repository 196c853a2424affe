//! Integer partitions, Young diagram containment and standard tableaux counts.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num::{BigUint, One};

use crate::error::{Error, Result};

/// A partition `l1 >= l2 >= ... >= lr > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument(
                "partition parts must be positive".into(),
            ));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(
                "partition parts must be weakly decreasing".into(),
            ));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Row `i` (0-based), zero beyond the last row.
    pub fn row(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Column lengths of the diagram.
    pub fn columns(&self) -> Vec<usize> {
        (0..self.row(0))
            .map(|j| self.0.iter().take_while(|&&p| p > j).count())
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Comma-separated parts, e.g. `3,1`. The empty string is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.trim().is_empty() {
            return Ok(Partition::default());
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim().parse::<usize>().map_err(|_| {
                    Error::InvalidArgument(format!("bad partition part {:?}", p.trim()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `n`, optionally with at most `max_rows` rows, in
/// reverse-lexicographic order.
pub fn partitions(n: usize, max_rows: Option<usize>) -> Vec<Partition> {
    fn go(
        rest: usize,
        max_part: usize,
        rows_left: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if rows_left == 0 {
            return;
        }
        for p in (1..=rest.min(max_part)).rev() {
            cur.push(p);
            go(rest - p, p, rows_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(
        n,
        n,
        max_rows.unwrap_or(usize::MAX),
        &mut Vec::new(),
        &mut out,
    );
    out
}

/// Number of standard Young tableaux of shape `lambda`, by the hook length formula.
pub fn hook_dim(lambda: &Partition) -> BigUint {
    let cols = lambda.columns();
    let mut hooks = BigUint::one();
    for (i, &row) in lambda.parts().iter().enumerate() {
        for (j, &col) in cols.iter().enumerate().take(row) {
            let hook = (row - j - 1) + (col - i - 1) + 1;
            hooks *= BigUint::from(hook);
        }
    }
    let n_fact: BigUint = (1..=lambda.size()).map(BigUint::from).product();
    n_fact / hooks
}

/// Number of standard Young tableaux, counted by removing the cell holding the
/// largest entry (always a corner) in every possible way.
pub fn standard_tableaux_count(lambda: &Partition) -> BigUint {
    fn count(shape: Vec<usize>, memo: &mut HashMap<Vec<usize>, BigUint>) -> BigUint {
        if shape.is_empty() {
            return BigUint::one();
        }
        if let Some(v) = memo.get(&shape) {
            return v.clone();
        }
        let mut total = BigUint::default();
        for i in 0..shape.len() {
            let is_corner = i + 1 == shape.len() || shape[i + 1] < shape[i];
            if is_corner {
                let mut smaller = shape.clone();
                smaller[i] -= 1;
                if smaller[i] == 0 {
                    smaller.pop();
                }
                total += count(smaller, memo);
            }
        }
        memo.insert(shape, total.clone());
        total
    }
    count(lambda.parts().to_vec(), &mut HashMap::new())
}

/// Number of permutations of `n` letters squaring to the identity, from
/// `a(n) = a(n-1) + (n-1) a(n-2)`. Panics past `n = 31`, where the count
/// leaves `u64`.
pub fn involutions(n: usize) -> u64 {
    assert!(n <= 31, "involution count for n = {n} overflows u64");
    let (mut prev, mut cur) = (1u64, 1u64);
    for m in 2..=n as u64 {
        (prev, cur) = (cur, cur + (m - 1) * prev);
    }
    cur
}

/// `[lambda] ⊆ [mu]`: every row of `lambda` fits in the matching row of `mu`.
pub fn diagram_contains(lambda: &Partition, mu: &Partition) -> bool {
    lambda.len() <= mu.len() && (0..lambda.len()).all(|i| lambda.row(i) <= mu.row(i))
}

/// Inclusion-minimal diagrams of `set`, in input order without repeats.
pub fn minimal_diagrams(set: &[Partition]) -> Vec<Partition> {
    let distinct: Vec<&Partition> = set.iter().unique().collect();
    distinct
        .iter()
        .filter(|&&p| !distinct.iter().any(|&q| q != p && diagram_contains(q, p)))
        .map(|&p| p.clone())
        .collect()
}
