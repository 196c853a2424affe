//! Multilinear structure: rank of evaluation maps, spans of GL-consequences,
//! insertion coefficients, factorization through the standard polynomial and
//! the partition toolkit.

mod factor;
mod lemmas;
mod partitions;

pub use factor::{alternating_sum, factor_through_standard, FactorOutput, StandardFactorization};
pub use lemmas::{
    insertion_coeffs, insertion_coeffs_by_evaluation, insertion_defect, insertion_sum,
    standard_commutation_defect, swap_decomposition, swap_decomposition_defect, swap_difference,
    InsertionCoeffs,
};
pub use partitions::{
    diagram_contains, hook_dim, involutions, minimal_diagrams, partitions, standard_tableaux_count,
    Partition,
};

use std::collections::{BTreeSet, HashMap, HashSet};

use itertools::Itertools;
use num::{BigInt, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freealg::{
    central_square_generator, multilinear_words, standard_poly, Gen, MultiDegree, NcPoly,
    PolarizationPlan, Word,
};
use crate::linalg::{bareiss_rank, rational_rank, solve};
use crate::pairs::{is_weak_identity_capped, EvalFrame, PairTarget};
use crate::scalars::{ParamPoly, Rational};

/// Default degree cap for rank computations.
pub const DEFAULT_RANK_CAP: usize = 6;
/// Largest degree accepted even with the cap raised.
pub const HARD_RANK_CAP: usize = 7;
/// Default specialization seeds.
pub const DEFAULT_SEEDS: [u64; 2] = [0, 7];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankOptions {
    /// Degree cap, at most [`HARD_RANK_CAP`].
    pub max_degree: usize,
    /// Each seed `s` sends `q_i` to the `(s + i)`-th prime.
    pub seeds: Vec<u64>,
    /// Always run fraction-free elimination over the symbolic parameters too.
    pub exact: bool,
}

impl Default for RankOptions {
    fn default() -> Self {
        Self {
            max_degree: DEFAULT_RANK_CAP,
            seeds: DEFAULT_SEEDS.to_vec(),
            exact: false,
        }
    }
}

impl RankOptions {
    fn check_degree(&self, n: usize) -> Result<()> {
        let cap = self.max_degree.min(HARD_RANK_CAP);
        if n > cap {
            return Err(Error::DegreeTooHigh { degree: n, cap });
        }
        if n == 0 {
            return Err(Error::InvalidArgument("degree must be >= 1".into()));
        }
        Ok(())
    }
}

/// How the reported rank was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RankMethod {
    /// Integer matrix, no parameters involved.
    Integer,
    /// Agreement of all prime specializations.
    Specialized,
    /// Fraction-free elimination over the symbolic parameters.
    Symbolic,
}

/// Rank data of a degree-`n` multilinear matrix with rows indexed by the `n!`
/// multilinear words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub degree: usize,
    pub target: String,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    pub quotient_dim: usize,
    pub seeds: Vec<u64>,
    pub seed_ranks: Vec<usize>,
    pub method: RankMethod,
}

/// The `i`-th prime, 0-based.
pub fn nth_prime(i: usize) -> u64 {
    let mut found = 0;
    let mut c = 1u64;
    loop {
        c += 1;
        if (2..)
            .take_while(|d| d * d <= c)
            .all(|d| !c.is_multiple_of(d))
        {
            if found == i {
                return c;
            }
            found += 1;
        }
    }
}

/// Values of `q_1..q_k` for a seed.
pub fn seed_values(seed: u64, k: usize) -> Vec<Rational> {
    (0..k)
        .map(|i| Rational::from_integer(BigInt::from(nth_prime(seed as usize + i))))
        .collect()
}

/// Rank of the evaluation map on degree-`n` multilinear polynomials;
/// its kernel is the space of multilinear weak identities of that degree.
pub fn evaluation_kernel(n: usize, target: &PairTarget, opts: &RankOptions) -> Result<RankReport> {
    opts.check_degree(n)?;
    let words = multilinear_words(n, n)?;
    let frame = EvalFrame::new(target, (1..=n as Gen).collect());
    let raw = frame.word_rows(&words);
    let ncoords = frame.num_coords();
    let raw_cols: Vec<Vec<i64>> = (0..ncoords)
        .into_par_iter()
        .map(|c| raw.iter().map(|row| row[c]).collect())
        .collect();
    let scales = frame.scales();
    let k = match target {
        PairTarget::Clifford(q) => q.k(),
        PairTarget::Matrix => 0,
    };
    let symbolic = matches!(target, PairTarget::Clifford(q) if q.is_symbolic());

    let specialized_rank = |values: &[Rational]| -> Result<usize> {
        let cols = raw_cols
            .par_iter()
            .zip(&scales)
            .map(|(col, s)| {
                let s = s.specialize_slice(values)?;
                Ok(col
                    .iter()
                    .map(|&v| Rational::from_integer(v.into()) * &s)
                    .collect::<Vec<_>>())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(rational_rank(&cols))
    };

    let (seeds, seed_ranks, mut rank, mut method) = if symbolic {
        let ranks = opts
            .seeds
            .par_iter()
            .map(|&s| specialized_rank(&seed_values(s, k)))
            .collect::<Result<Vec<_>>>()?;
        let agreed = ranks.iter().all_equal_value().ok().copied();
        (
            opts.seeds.clone(),
            ranks,
            agreed.unwrap_or(0),
            RankMethod::Specialized,
        )
    } else {
        let values = match target {
            PairTarget::Clifford(q) => (1..=k)
                .map(|i| q.q(i).as_constant().expect("explicit form"))
                .collect(),
            PairTarget::Matrix => Vec::new(),
        };
        let r = specialized_rank(&values)?;
        (Vec::new(), Vec::new(), r, RankMethod::Integer)
    };

    let disagree = symbolic && !seed_ranks.iter().all_equal();
    if symbolic && (opts.exact || disagree || seed_ranks.is_empty()) {
        rank = symbolic_rank(&raw_cols, &scales);
        method = RankMethod::Symbolic;
    }
    Ok(RankReport {
        degree: n,
        target: target.describe(),
        rows: words.len(),
        cols: ncoords,
        rank,
        kernel_dim: words.len() - rank,
        quotient_dim: rank,
        seeds,
        seed_ranks,
        method,
    })
}

fn symbolic_rank(raw_cols: &[Vec<i64>], scales: &[ParamPoly]) -> usize {
    let mut seen = HashSet::new();
    let rows: Vec<Vec<ParamPoly>> = raw_cols
        .iter()
        .zip(scales)
        .filter(|(col, s)| seen.insert(((*col).clone(), (*s).clone())))
        .map(|(col, s)| {
            col.iter()
                .map(|&v| s.scale(&Rational::from_integer(v.into())))
                .collect()
        })
        .collect();
    bareiss_rank(rows)
}

/// Spanning set of the degree-`n` multilinear GL-consequences of `gens`:
/// `m1 * g' * m2` with `g'` the polarized generator on an injection of its
/// variables into `x1..xn`, and `m1 m2` an arrangement of the remaining letters.
/// Elements proportional to earlier ones are dropped.
pub fn consequence_spanning_set(n: usize, gens: &[NcPoly]) -> Result<Vec<NcPoly>> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for g in gens {
        if g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let md = g.multidegree()?;
        let plan = PolarizationPlan::for_multidegree(&md);
        let lin = plan.apply(g);
        let vars = plan.output_generators();
        let d = vars.len();
        if d > n {
            continue;
        }
        for image in (1..=n as Gen).permutations(d) {
            let rename: HashMap<Gen, Gen> =
                vars.iter().copied().zip(image.iter().copied()).collect();
            let core = rename_generators(&lin, &rename);
            let used: BTreeSet<Gen> = image.iter().copied().collect();
            let rest: Vec<Gen> = (1..=n as Gen).filter(|g| !used.contains(g)).collect();
            for arrangement in rest.iter().copied().permutations(rest.len()) {
                for split in 0..=arrangement.len() {
                    let left = Word::new(arrangement[..split].to_vec());
                    let right = Word::new(arrangement[split..].to_vec());
                    let elt = wrap(&core, &left, &right);
                    if elt.is_zero() {
                        continue;
                    }
                    if seen.insert(projective_key(&elt)) {
                        out.push(elt);
                    }
                }
            }
        }
    }
    Ok(out)
}

fn rename_generators(f: &NcPoly, rename: &HashMap<Gen, Gen>) -> NcPoly {
    NcPoly::from_terms(f.terms().map(|(w, c)| {
        (
            Word::new(w.letters().iter().map(|g| rename[g]).collect()),
            c.clone(),
        )
    }))
}

fn wrap(core: &NcPoly, left: &Word, right: &Word) -> NcPoly {
    NcPoly::from_terms(
        core.terms()
            .map(|(w, c)| (left.concat(w).concat(right), c.clone())),
    )
}

fn projective_key(f: &NcPoly) -> NcPoly {
    let lead = f.terms().next().map(|(_, c)| c.clone()).expect("nonzero");
    f.scale(&lead.recip())
}

/// Coordinates of multilinear polynomials in the basis of multilinear words.
fn word_coordinates(n: usize, polys: &[NcPoly]) -> Result<Vec<Vec<Rational>>> {
    let words = multilinear_words(n, n)?;
    let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    polys
        .iter()
        .map(|p| {
            let mut row = vec![Rational::zero(); words.len()];
            for (w, c) in p.terms() {
                let i = index.get(w).ok_or_else(|| {
                    Error::InvalidArgument(format!("{w} is not a multilinear word of degree {n}"))
                })?;
                row[*i] = c.clone();
            }
            Ok(row)
        })
        .collect()
}

/// Dimension of the degree-`n` multilinear part of the GL-ideal generated by `gens`.
pub fn consequence_span_dim(n: usize, gens: &[NcPoly], opts: &RankOptions) -> Result<RankReport> {
    opts.check_degree(n)?;
    let span = consequence_spanning_set(n, gens)?;
    Ok(span_report(n, &span, gens))
}

fn span_report(n: usize, span: &[NcPoly], gens: &[NcPoly]) -> RankReport {
    let rows = (1..=n).product();
    let rank = if span.is_empty() {
        0
    } else {
        rational_rank(&word_coordinates(n, span).expect("multilinear spanning set"))
    };
    RankReport {
        degree: n,
        target: format!(
            "span of {}",
            gens.iter().map(|g| format!("[{g}]")).join(", ")
        ),
        rows,
        cols: span.len(),
        rank,
        kernel_dim: rows - rank,
        quotient_dim: rank,
        seeds: Vec::new(),
        seed_ranks: Vec::new(),
        method: RankMethod::Integer,
    }
}

/// Whether the multilinear polynomial `f` of degree `n` is a linear
/// combination of GL-consequences of `gens`.
pub fn in_consequence_span(
    n: usize,
    gens: &[NcPoly],
    f: &NcPoly,
    opts: &RankOptions,
) -> Result<bool> {
    opts.check_degree(n)?;
    let span = consequence_spanning_set(n, gens)?;
    let cols = word_coordinates(n, &span)?;
    let rhs = word_coordinates(n, std::slice::from_ref(f))?.remove(0);
    Ok(solve(&cols, &rhs).is_some())
}

/// Outcome of comparing the consequence span with the evaluation kernel.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationReport {
    pub degree: usize,
    pub k: usize,
    pub span: RankReport,
    pub kernel: RankReport,
    /// Every spanning element is a weak identity of the target.
    pub span_in_kernel: bool,
    pub passed: bool,
}

/// Degree-`n` check that `[x1^2,x2]` generates all weak identities of
/// `(C_n, V_n)`: the span of its consequences lies in and fills the kernel.
pub fn central_square_generation_check(n: usize, opts: &RankOptions) -> Result<GenerationReport> {
    if n < 3 {
        return Err(Error::InvalidArgument("degree must be >= 3".into()));
    }
    generation_check(n, n, vec![central_square_generator()], opts)
}

/// Degree-`n` check that `[x1^2,x2]` and `S_{k+1}` generate all weak
/// identities of `(C_k, V_k)`.
pub fn clifford_generation_check(
    n: usize,
    k: usize,
    opts: &RankOptions,
) -> Result<GenerationReport> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    generation_check(
        n,
        k,
        vec![central_square_generator(), standard_poly(k + 1)?],
        opts,
    )
}

fn generation_check(
    n: usize,
    k: usize,
    gens: Vec<NcPoly>,
    opts: &RankOptions,
) -> Result<GenerationReport> {
    opts.check_degree(n)?;
    let target = PairTarget::clifford(k)?;
    let span_set = consequence_spanning_set(n, &gens)?;
    let span = span_report(n, &span_set, &gens);
    let kernel = evaluation_kernel(n, &target, opts)?;
    let verdicts = span_set
        .par_iter()
        .map(|f| is_weak_identity_capped(f, &target, n).map(|v| v.holds()))
        .collect::<Result<Vec<_>>>()?;
    let span_in_kernel = verdicts.into_iter().all(|h| h);
    Ok(GenerationReport {
        degree: n,
        k,
        passed: span_in_kernel && span.rank == kernel.kernel_dim,
        span,
        kernel,
        span_in_kernel,
    })
}

/// Finds coefficients `c` with `target - sum c_j candidates[j]` a weak identity
/// of `pair`. All nonzero inputs must share one multidegree. Solving happens in
/// the image of the evaluation map, so the answer is one representative.
pub fn solve_modulo_identities(
    target: &NcPoly,
    candidates: &[NcPoly],
    pair: &PairTarget,
) -> Result<Option<Vec<Rational>>> {
    let mut md: Option<MultiDegree> = None;
    for p in std::iter::once(target).chain(candidates) {
        if p.is_zero() {
            continue;
        }
        let m = p.multidegree()?;
        match &md {
            None => md = Some(m),
            Some(prev) if *prev != m => {
                return Err(Error::InvalidArgument(format!(
                    "multidegrees differ: {prev} vs {m}"
                )))
            }
            _ => {}
        }
    }
    let Some(md) = md else {
        return Ok(Some(vec![Rational::zero(); candidates.len()]));
    };
    let plan = PolarizationPlan::for_multidegree(&md);
    let frame = EvalFrame::new(pair, plan.output_generators());
    let scales = match pair {
        PairTarget::Clifford(q) if q.is_symbolic() => {
            let values = seed_values(DEFAULT_SEEDS[0], q.k());
            frame
                .scales()
                .iter()
                .map(|s| s.specialize_slice(&values))
                .collect::<Result<Vec<_>>>()?
        }
        _ => frame
            .scales()
            .iter()
            .map(|s| s.as_constant().expect("constant scale"))
            .collect(),
    };
    let vector = |p: &NcPoly| -> Vec<Rational> {
        frame
            .raw_vector(&plan.apply(p))
            .into_iter()
            .zip(&scales)
            .map(|(v, s)| v * s)
            .collect()
    };
    let cols: Vec<Vec<Rational>> = candidates.par_iter().map(vector).collect();
    let rhs = vector(target);
    Ok(solve(&cols, &rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> RankOptions {
        RankOptions::default()
    }

    #[test]
    fn primes() {
        assert_eq!(
            (0..6).map(nth_prime).collect::<Vec<_>>(),
            vec![2, 3, 5, 7, 11, 13]
        );
    }

    #[test]
    fn span_below_generator_degree_is_empty() {
        let r = consequence_span_dim(2, &[central_square_generator()], &opts()).unwrap();
        assert_eq!(r.rank, 0);
        assert_eq!(r.kernel_dim, 2);
    }

    #[test]
    fn span_degree_three() {
        let set = consequence_spanning_set(3, &[central_square_generator()]).unwrap();
        assert_eq!(set.len(), 3);
        let r = consequence_span_dim(3, &[central_square_generator()], &opts()).unwrap();
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn kernel_small_cases() {
        let r = evaluation_kernel(3, &PairTarget::clifford(3).unwrap(), &opts()).unwrap();
        assert_eq!((r.rank, r.kernel_dim), (4, 2));
        assert_eq!(r.seed_ranks, vec![4, 4]);
        let r = evaluation_kernel(4, &PairTarget::clifford(2).unwrap(), &opts()).unwrap();
        assert_eq!(r.quotient_dim, 6);
        let r = evaluation_kernel(4, &PairTarget::Matrix, &opts()).unwrap();
        assert_eq!(r.quotient_dim, 9);
        assert_eq!(r.method, RankMethod::Integer);
    }

    #[test]
    fn symbolic_rank_agrees_with_specializations() {
        let o = RankOptions {
            exact: true,
            ..opts()
        };
        for k in 1..=4 {
            let r = evaluation_kernel(4, &PairTarget::clifford(k).unwrap(), &o).unwrap();
            assert_eq!(r.method, RankMethod::Symbolic);
            assert!(r.seed_ranks.iter().all(|&s| s == r.rank), "k={k}: {r:?}");
        }
    }

    #[test]
    fn degree_cap_enforced() {
        let e = evaluation_kernel(
            8,
            &PairTarget::Matrix,
            &RankOptions {
                max_degree: 9,
                ..opts()
            },
        );
        assert_eq!(e.unwrap_err(), Error::DegreeTooHigh { degree: 8, cap: 7 });
        assert!(evaluation_kernel(7, &PairTarget::Matrix, &opts()).is_err());
    }

    #[test]
    fn generation_small() {
        let r = central_square_generation_check(3, &opts()).unwrap();
        assert!(r.passed);
        assert_eq!(r.span.rank, 2);
        let r = clifford_generation_check(3, 2, &opts()).unwrap();
        assert!(r.passed);
        assert_eq!(r.kernel.kernel_dim, 3);
    }

    #[test]
    fn solving_modulo_identities() {
        // x1*x2 = x2*x1 + [x1,x2]; [x1,x2] is not an identity, so x1*x2 alone is not
        // a multiple of x2*x1
        let a = NcPoly::word(Word::new(vec![1, 2]));
        let b = NcPoly::word(Word::new(vec![2, 1]));
        let pair = PairTarget::clifford(2).unwrap();
        assert!(solve_modulo_identities(&a, std::slice::from_ref(&b), &pair)
            .unwrap()
            .is_none());
        let s = solve_modulo_identities(&a, &[a.clone(), b], &pair)
            .unwrap()
            .unwrap();
        assert_eq!(s[0], Rational::from_integer(1.into()));
    }
}
