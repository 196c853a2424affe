//! Rewriting alternating sums with interleaved monomials through `S_n`.

use std::collections::BTreeSet;

use itertools::Itertools;
use num::Zero;

use crate::error::{Error, Result};
use crate::freealg::{permutation_sign, standard_poly, Gen, NcPoly, Word};
use crate::pairs::{is_weak_identity_capped, PairTarget};
use crate::scalars::{int, Rational};

use super::solve_modulo_identities;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorOutput {
    /// `sum c_i D_i S_n E_i` as `(c_i, D_i, E_i)`.
    TwoSided(Vec<(Rational, Word, Word)>),
    /// `S_n * D`.
    RightFactor(NcPoly),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardFactorization {
    pub n: usize,
    pub ys: Vec<Word>,
    pub alternating_sum: NcPoly,
    pub output: FactorOutput,
}

impl StandardFactorization {
    /// The polynomial described by the output, equal to the alternating sum
    /// modulo weak identities.
    pub fn reconstruct(&self) -> NcPoly {
        let s = standard_poly(self.n).expect("n >= 1");
        match &self.output {
            FactorOutput::TwoSided(terms) => {
                let mut out = NcPoly::zero();
                for (c, d, e) in terms {
                    let t = &(&NcPoly::word(d.clone()) * &s) * &NcPoly::word(e.clone());
                    out += &t.scale(c);
                }
                out
            }
            FactorOutput::RightFactor(d) => &s * d,
        }
    }
}

/// `sum_sigma sign(sigma) x_{s1} Y_1 x_{s2} .. Y_{n-1} x_{sn}`.
pub fn alternating_sum(n: usize, ys: &[Word]) -> NcPoly {
    NcPoly::from_terms((0..n).permutations(n).map(|p| {
        let mut letters = Vec::new();
        for (i, &j) in p.iter().enumerate() {
            letters.push(j as Gen + 1);
            if let Some(y) = ys.get(i) {
                letters.extend_from_slice(y.letters());
            }
        }
        (Word::new(letters), int(permutation_sign(&p)))
    }))
}

/// Writes the alternating sum with interleaved monomials `Y_1..Y_{n-1}` as
/// `sum D_i S_n E_i` when every `Y_j` uses only letters `x_m, m > n`, or as
/// `S_n D` when every `Y_j` uses only `x1..xn`, modulo weak identities of
/// the Clifford pair of dimension equal to the total degree.
pub fn factor_through_standard(n: usize, ys: &[Word]) -> Result<StandardFactorization> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be >= 2, got {n}")));
    }
    if ys.len() != n - 1 {
        return Err(Error::InvalidArgument(format!(
            "expected {} interleaved words, got {}",
            n - 1,
            ys.len()
        )));
    }
    let letters: Vec<Gen> = ys
        .iter()
        .flat_map(|y| y.letters().iter().copied())
        .collect();
    let outer = letters.iter().all(|&g| g as usize > n);
    let inner = letters.iter().all(|&g| g as usize <= n);
    if !outer && !inner {
        return Err(Error::InconsistentVariables(format!(
            "interleaved words mix x1..x{n} with other letters"
        )));
    }
    let two_sided = outer && !letters.is_empty();

    let total = n + letters.len();
    let pair = PairTarget::clifford(total)?;
    let sum = alternating_sum(n, ys);
    let s = standard_poly(n)?;
    let arrangements: Vec<Vec<Gen>> = letters
        .iter()
        .copied()
        .permutations(letters.len())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    let output = if two_sided {
        let shapes: Vec<(Word, Word)> = arrangements
            .iter()
            .flat_map(|a| {
                (0..=a.len()).map(move |i| (Word::new(a[..i].to_vec()), Word::new(a[i..].to_vec())))
            })
            .collect();
        let candidates: Vec<NcPoly> = shapes
            .iter()
            .map(|(d, e)| &(&NcPoly::word(d.clone()) * &s) * &NcPoly::word(e.clone()))
            .collect();
        let sol = solve_modulo_identities(&sum, &candidates, &pair)?
            .ok_or(Error::FactorizationNotFound)?;
        FactorOutput::TwoSided(
            sol.into_iter()
                .zip(shapes)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, (d, e))| (c, d, e))
                .collect(),
        )
    } else {
        let words: Vec<Word> = arrangements.into_iter().map(Word::new).collect();
        let candidates: Vec<NcPoly> = words
            .iter()
            .map(|w| &s * &NcPoly::word(w.clone()))
            .collect();
        let sol = solve_modulo_identities(&sum, &candidates, &pair)?
            .ok_or(Error::FactorizationNotFound)?;
        FactorOutput::RightFactor(NcPoly::from_terms(words.into_iter().zip(sol)))
    };

    let result = StandardFactorization {
        n,
        ys: ys.to_vec(),
        alternating_sum: sum,
        output,
    };
    let defect = &result.alternating_sum - &result.reconstruct();
    if !defect.is_zero() && !is_weak_identity_capped(&defect, &pair, total)?.holds() {
        return Err(Error::FactorizationNotFound);
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn w(l: &[Gen]) -> Word {
        Word::new(l.to_vec())
    }

    #[test]
    fn empty_interleaving_is_the_standard_polynomial() {
        let f = factor_through_standard(2, &[Word::empty()]).unwrap();
        assert_eq!(f.output, FactorOutput::RightFactor(NcPoly::one()));
    }

    #[test]
    fn single_outer_letter() {
        let f = factor_through_standard(2, &[w(&[3])]).unwrap();
        assert_eq!(
            f.output,
            FactorOutput::TwoSided(vec![
                (rat(-1, 2), Word::empty(), w(&[3])),
                (rat(-1, 2), w(&[3]), Word::empty()),
            ])
        );
    }

    #[test]
    fn inner_letter_gives_zero() {
        let f = factor_through_standard(2, &[w(&[1])]).unwrap();
        assert_eq!(f.output, FactorOutput::RightFactor(NcPoly::zero()));
    }

    #[test]
    fn argument_errors() {
        assert!(matches!(
            factor_through_standard(3, &[w(&[1]), w(&[4])]),
            Err(Error::InconsistentVariables(_))
        ));
        assert!(factor_through_standard(3, &[w(&[1])]).is_err());
        assert!(factor_through_standard(1, &[]).is_err());
    }
}
