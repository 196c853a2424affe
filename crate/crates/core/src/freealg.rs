//! The free associative algebra over the rationals on generators `x1, x2, ...`.
//!
//! Words are ordered degree-lexicographically (shorter first, then letter by
//! letter); this order drives canonical printing and matrix indexing.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use itertools::Itertools;
use num::{One, Zero};

use crate::error::{Error, Result};
use crate::scalars::{rat, Rational};

/// Generator index, starting at 1.
pub type Gen = u32;

/// Default cap on the degree of multilinear bases.
pub const DEFAULT_MAX_DEGREE: usize = 7;

/// A monomial `x_{i1} x_{i2} ... x_{in}`; the empty word is the unit.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(Vec<Gen>);

impl Word {
    pub fn new(letters: Vec<Gen>) -> Self {
        assert!(
            letters.iter().all(|&g| g >= 1),
            "generator indices start at 1"
        );
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn multidegree(&self) -> MultiDegree {
        let mut d = BTreeMap::new();
        for &g in &self.0 {
            *d.entry(g).or_insert(0) += 1;
        }
        MultiDegree(d)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        write!(f, "{}", self.0.iter().map(|g| format!("x{g}")).join("*"))
    }
}

/// Degree in each generator.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct MultiDegree(BTreeMap<Gen, usize>);

impl MultiDegree {
    pub fn get(&self, g: Gen) -> usize {
        self.0.get(&g).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Gen, usize)> + '_ {
        self.0.iter().map(|(&g, &d)| (g, d))
    }

    pub fn generators(&self) -> impl Iterator<Item = Gen> + '_ {
        self.0.keys().copied()
    }

    pub fn is_multilinear(&self) -> bool {
        self.0.values().all(|&d| d == 1)
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{{}}}",
            self.0.iter().map(|(g, d)| format!("x{g}:{d}")).join(", ")
        )
    }
}

/// A linear combination of generators, the image of one generator under a
/// linear substitution.
pub type LinearForm = BTreeMap<Gen, Rational>;

/// Sparse noncommutative polynomial with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct NcPoly {
    terms: BTreeMap<Word, Rational>,
}

impl NcPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(Rational::one(), Word::empty())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Word::empty())
    }

    /// The generator `x_g`.
    pub fn x(g: Gen) -> Self {
        Self::term(Rational::one(), Word::new(vec![g]))
    }

    pub fn word(w: Word) -> Self {
        Self::term(Rational::one(), w)
    }

    pub fn term(c: Rational, w: Word) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Rational)>) -> Self {
        let mut p = Self::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending word order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::degree).max().unwrap_or(0)
    }

    pub fn generators(&self) -> BTreeSet<Gen> {
        self.terms
            .keys()
            .flat_map(|w| w.letters().iter().copied())
            .collect()
    }

    /// The common multidegree of all terms.
    pub fn multidegree(&self) -> Result<MultiDegree> {
        let mut it = self.terms.keys();
        let first = it.next().ok_or(Error::ZeroPolynomial)?;
        let md = first.multidegree();
        for w in it {
            if w.multidegree() != md {
                return Err(Error::NotMultihomogeneous(first.clone(), w.clone()));
            }
        }
        Ok(md)
    }

    /// Splits into multihomogeneous components, ordered by multidegree.
    pub fn homogeneous_components(&self) -> Vec<(MultiDegree, NcPoly)> {
        let mut parts: BTreeMap<MultiDegree, NcPoly> = BTreeMap::new();
        for (w, c) in &self.terms {
            parts
                .entry(w.multidegree())
                .or_default()
                .add_term(w.clone(), c.clone());
        }
        parts.into_iter().collect()
    }

    pub fn is_multilinear(&self) -> bool {
        self.multidegree()
            .map(|m| m.is_multilinear())
            .unwrap_or(false)
    }
}

impl<'a> AddAssign<&'a NcPoly> for NcPoly {
    fn add_assign(&mut self, rhs: &'a NcPoly) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), c.clone());
        }
    }
}

impl<'a> SubAssign<&'a NcPoly> for NcPoly {
    fn sub_assign(&mut self, rhs: &'a NcPoly) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), -c.clone());
        }
    }
}

impl<'a> Add<&'a NcPoly> for &'a NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: &'a NcPoly) -> NcPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a NcPoly> for &'a NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &'a NcPoly) -> NcPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a NcPoly> for &'a NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: &'a NcPoly) -> NcPoly {
        poly_mul(self, rhs)
    }
}

impl Neg for &NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        NcPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<NcPoly> for NcPoly {
            type Output = NcPoly;
            fn $m(self, rhs: NcPoly) -> NcPoly { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        -&self
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::cli::format_expr(self))
    }
}

/// Bilinear extension of word concatenation.
pub fn poly_mul(f: &NcPoly, g: &NcPoly) -> NcPoly {
    let mut out = NcPoly::zero();
    for (wa, ca) in &f.terms {
        for (wb, cb) in &g.terms {
            out.add_term(wa.concat(wb), ca * cb);
        }
    }
    out
}

/// `fg - gf`.
pub fn commutator(f: &NcPoly, g: &NcPoly) -> NcPoly {
    &(f * g) - &(g * f)
}

/// The Jordan product `(fg + gf) / 2`.
pub fn jordan(f: &NcPoly, g: &NcPoly) -> NcPoly {
    (&(f * g) + &(g * f)).scale(&rat(1, 2))
}

/// `[x1^2, x2]`, the generator of the weak identities of Clifford pairs.
pub fn central_square_generator() -> NcPoly {
    commutator(&NcPoly::x(1).pow(2), &NcPoly::x(2))
}

/// Sign of a permutation given in one-line notation.
pub fn permutation_sign(p: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Alternating sum of the given generators over all orderings.
pub fn standard_poly_in(gens: &[Gen]) -> NcPoly {
    let mut out = NcPoly::zero();
    for perm in (0..gens.len()).permutations(gens.len()) {
        let w = Word(perm.iter().map(|&i| gens[i]).collect());
        out.add_term(w, Rational::from_integer(permutation_sign(&perm).into()));
    }
    out
}

/// The standard polynomial `S_n(x1, ..., xn)`.
pub fn standard_poly(n: usize) -> Result<NcPoly> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "standard polynomial needs n >= 1".into(),
        ));
    }
    let gens: Vec<Gen> = (1..=n as Gen).collect();
    Ok(standard_poly_in(&gens))
}

/// Reversal involution on words, extended linearly.
pub fn star(f: &NcPoly) -> NcPoly {
    NcPoly {
        terms: f
            .terms
            .iter()
            .map(|(w, c)| (w.reversed(), c.clone()))
            .collect(),
    }
}

pub fn multidegree(f: &NcPoly) -> Result<MultiDegree> {
    f.multidegree()
}

/// How each generator of a multidegree is split into distinct generators
/// during full polarization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizationPlan {
    /// For every generator, the generators replacing its occurrences.
    /// The original index always comes first.
    pub copies: BTreeMap<Gen, Vec<Gen>>,
}

impl PolarizationPlan {
    /// Fresh generators are the smallest indices not used by `md`, handed out
    /// in increasing order, generator by generator.
    pub fn for_multidegree(md: &MultiDegree) -> Self {
        let used: BTreeSet<Gen> = md.generators().collect();
        let mut next = 1;
        let mut copies = BTreeMap::new();
        for (g, d) in md.iter() {
            let mut v = vec![g];
            for _ in 1..d {
                while used.contains(&next) {
                    next += 1;
                }
                v.push(next);
                next += 1;
            }
            copies.insert(g, v);
        }
        Self { copies }
    }

    /// All generators of the polarized polynomial, ascending.
    pub fn output_generators(&self) -> Vec<Gen> {
        let mut v: Vec<Gen> = self.copies.values().flatten().copied().collect();
        v.sort_unstable();
        v
    }

    /// Polarizes every term of `f`; all terms must have the planned multidegree.
    pub fn apply(&self, f: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in &f.terms {
            // positions of each generator in the word
            let mut positions: BTreeMap<Gen, Vec<usize>> = BTreeMap::new();
            for (i, &g) in w.0.iter().enumerate() {
                positions.entry(g).or_default().push(i);
            }
            let per_gen: Vec<(Vec<usize>, Vec<Vec<Gen>>)> = positions
                .into_iter()
                .map(|(g, pos)| {
                    let copies = &self.copies[&g];
                    debug_assert_eq!(copies.len(), pos.len());
                    let arrangements = copies
                        .iter()
                        .copied()
                        .permutations(copies.len())
                        .collect::<Vec<_>>();
                    (pos, arrangements)
                })
                .collect();
            for choice in per_gen
                .iter()
                .map(|(_, arr)| arr.iter())
                .multi_cartesian_product()
            {
                let mut letters = w.0.clone();
                for ((pos, _), arrangement) in per_gen.iter().zip(choice) {
                    for (&p, &g) in pos.iter().zip(arrangement) {
                        letters[p] = g;
                    }
                }
                out.add_term(Word(letters), c.clone());
            }
            if per_gen.is_empty() {
                out.add_term(w.clone(), c.clone());
            }
        }
        out
    }
}

/// Full polarization: every generator of degree `d > 1` is split into `d`
/// distinct generators. The result is multilinear, unscaled (integer
/// multiples of the input coefficients).
pub fn multilinearize(f: &NcPoly) -> Result<NcPoly> {
    let md = f.multidegree()?;
    Ok(PolarizationPlan::for_multidegree(&md).apply(f))
}

/// Applies the algebra endomorphism induced by a linear substitution.
pub fn substitute_linear(f: &NcPoly, subst: &BTreeMap<Gen, LinearForm>) -> Result<NcPoly> {
    let mut images: BTreeMap<Gen, NcPoly> = BTreeMap::new();
    for g in f.generators() {
        let form = subst.get(&g).ok_or(Error::MissingGenerator(g))?;
        let img = NcPoly::from_terms(form.iter().map(|(&h, c)| (Word(vec![h]), c.clone())));
        images.insert(g, img);
    }
    let mut out = NcPoly::zero();
    for (w, c) in &f.terms {
        let mut acc = NcPoly::constant(c.clone());
        for g in &w.0 {
            acc = &acc * &images[g];
            if acc.is_zero() {
                break;
            }
        }
        out += &acc;
    }
    Ok(out)
}

/// The `n!` multilinear words in `x1..xn`, ordered lexicographically by the
/// permutation they spell.
pub fn multilinear_words(n: usize, cap: usize) -> Result<Vec<Word>> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "multilinear degree must be >= 1".into(),
        ));
    }
    if n > cap {
        return Err(Error::DegreeTooHigh { degree: n, cap });
    }
    Ok((1..=n as Gen).permutations(n).map(Word).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::int;

    fn x(g: Gen) -> NcPoly {
        NcPoly::x(g)
    }

    fn w(letters: &[Gen]) -> Word {
        Word::new(letters.to_vec())
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(&x(1) * &x(2), NcPoly::word(w(&[1, 2])));
        let lhs = &(&x(1) + &x(2)) * &x(1);
        let rhs = NcPoly::from_terms([(w(&[1, 1]), int(1)), (w(&[2, 1]), int(1))]);
        assert_eq!(lhs, rhs);
        let f = &x(3) - &(&x(1) * &x(2)).scale(&rat(2, 3));
        assert_eq!(&NcPoly::one() * &f, f);
    }

    #[test]
    fn commutator_examples() {
        assert!(commutator(&x(1), &x(1)).is_zero());
        assert_eq!(
            commutator(&x(1), &x(2)),
            NcPoly::from_terms([(w(&[1, 2]), int(1)), (w(&[2, 1]), int(-1))])
        );
        assert_eq!(
            central_square_generator(),
            NcPoly::from_terms([(w(&[1, 1, 2]), int(1)), (w(&[2, 1, 1]), int(-1))])
        );
    }

    #[test]
    fn jordan_examples() {
        assert_eq!(jordan(&x(1), &x(1)), x(1).pow(2));
        assert_eq!(
            jordan(&x(1), &x(2)),
            NcPoly::from_terms([(w(&[1, 2]), rat(1, 2)), (w(&[2, 1]), rat(1, 2))])
        );
        assert_eq!(jordan(&x(1), &x(2)), jordan(&x(2), &x(1)));
    }

    #[test]
    fn linearized_generator_is_twice_commutator_of_jordan() {
        // polarizing [x1^2, x2] gives [x1 x3 + x3 x1, x2] = 2 [x1 o x3, x2]
        let lin = multilinearize(&central_square_generator()).unwrap();
        let expected = commutator(&jordan(&x(1), &x(3)), &x(2)).scale(&int(2));
        assert_eq!(lin, expected);
    }

    #[test]
    fn standard_poly_examples() {
        assert_eq!(standard_poly(1).unwrap(), x(1));
        assert_eq!(standard_poly(2).unwrap(), commutator(&x(1), &x(2)));
        let s3 = standard_poly(3).unwrap();
        assert_eq!(s3.len(), 6);
        let swap: BTreeMap<Gen, LinearForm> = [
            (1, [(2, int(1))].into()),
            (2, [(1, int(1))].into()),
            (3, [(3, int(1))].into()),
        ]
        .into();
        assert_eq!(substitute_linear(&s3, &swap).unwrap(), -&s3);
        assert!(standard_poly(0).is_err());
    }

    #[test]
    fn star_examples() {
        assert_eq!(
            star(&NcPoly::word(w(&[1, 2, 3]))),
            NcPoly::word(w(&[3, 2, 1]))
        );
        let g = central_square_generator();
        assert_eq!(star(&g), -&g);
    }

    #[test]
    fn star_fixes_s4_term_by_term() {
        // inv(rev p) = 6 - inv(p) for length 4, so signs agree and S_4 is fixed
        let s4 = standard_poly(4).unwrap();
        for (word, c) in s4.terms() {
            assert_eq!(s4.coeff(&word.reversed()), c.clone());
        }
        assert_eq!(star(&s4), s4);
        // S_3: inv(rev p) = 3 - inv(p), so reversal negates
        let s3 = standard_poly(3).unwrap();
        assert_eq!(star(&s3), -&s3);
    }

    #[test]
    fn multidegree_examples() {
        let md = central_square_generator().multidegree().unwrap();
        assert_eq!((md.get(1), md.get(2), md.total()), (2, 1, 3));
        assert!(standard_poly(3)
            .unwrap()
            .multidegree()
            .unwrap()
            .is_multilinear());
        let bad = &x(1) + &(&x(1) * &x(2));
        assert!(matches!(
            bad.multidegree(),
            Err(Error::NotMultihomogeneous(..))
        ));
        assert_eq!(NcPoly::zero().multidegree(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn multilinearize_examples() {
        // x1^2 -> x1 x2 + x2 x1: the smallest unused index is 2
        let sq = multilinearize(&x(1).pow(2)).unwrap();
        assert_eq!(
            sq,
            NcPoly::from_terms([(w(&[1, 2]), int(1)), (w(&[2, 1]), int(1))])
        );
        let g = multilinearize(&central_square_generator()).unwrap();
        let expected = commutator(&(&(&x(1) * &x(3)) + &(&x(3) * &x(1))), &x(2));
        assert_eq!(g, expected);
        let s3 = standard_poly(3).unwrap();
        assert_eq!(multilinearize(&s3).unwrap(), s3);
        assert!(multilinearize(&(&x(1) + &x(1).pow(2))).is_err());
    }

    #[test]
    fn polarization_plan_allocates_fresh_in_order() {
        // x2^3 x4^2: fresh indices are 1, 3 for x2 and 5 for x4
        let f = NcPoly::word(w(&[2, 2, 2, 4, 4]));
        let plan = PolarizationPlan::for_multidegree(&f.multidegree().unwrap());
        assert_eq!(plan.copies[&2], vec![2, 1, 3]);
        assert_eq!(plan.copies[&4], vec![4, 5]);
        let lin = plan.apply(&f);
        assert_eq!(lin.len(), 12);
        assert!(lin.is_multilinear());
    }

    #[test]
    fn substitution_examples() {
        let f = &(&x(1) * &x(2)) - &x(2).pow(3);
        let id: BTreeMap<Gen, LinearForm> =
            [(1, [(1, int(1))].into()), (2, [(2, int(1))].into())].into();
        assert_eq!(substitute_linear(&f, &id).unwrap(), f);
        let s2 = standard_poly(2).unwrap();
        let swap: BTreeMap<Gen, LinearForm> =
            [(1, [(2, int(1))].into()), (2, [(1, int(1))].into())].into();
        assert_eq!(substitute_linear(&s2, &swap).unwrap(), -&s2);
        let shear: BTreeMap<Gen, LinearForm> = [(1, [(1, int(1)), (2, int(1))].into())].into();
        let out = substitute_linear(&x(1).pow(2), &shear).unwrap();
        assert_eq!(out, (&x(1) + &x(2)).pow(2));
        assert_eq!(out.len(), 4);
        assert_eq!(
            substitute_linear(&x(3), &shear),
            Err(Error::MissingGenerator(3))
        );
    }

    #[test]
    fn multilinear_word_order() {
        assert_eq!(multilinear_words(1, 7).unwrap(), vec![w(&[1])]);
        assert_eq!(
            multilinear_words(2, 7).unwrap(),
            vec![w(&[1, 2]), w(&[2, 1])]
        );
        let m3 = multilinear_words(3, 7).unwrap();
        assert_eq!(m3.len(), 6);
        assert_eq!(m3[0], w(&[1, 2, 3]));
        assert_eq!(m3[5], w(&[3, 2, 1]));
        assert_eq!(
            multilinear_words(8, 7),
            Err(Error::DegreeTooHigh { degree: 8, cap: 7 })
        );
    }

    #[test]
    fn deglex_word_order() {
        assert!(w(&[3]) < w(&[1, 1]));
        assert!(w(&[1, 2]) < w(&[2, 1]));
        assert!(Word::empty() < w(&[1]));
    }
}
