//! Exact coefficients: arbitrary-precision rationals and commutative
//! polynomials in the Gram parameters `q1, q2, ...`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Builds the canonical reduced rational `num/den`.
pub fn rat_normalize(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Rational> {
    let den = den.into();
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(BigRational::new(num.into(), den))
}

/// Shorthand for small rational literals.
pub fn rat(num: i64, den: i64) -> Rational {
    rat_normalize(num, den).expect("nonzero denominator")
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Exponent vector over `q1, q2, ...` with trailing zeros trimmed, so that the
/// same monomial has one representation regardless of the ambient parameter count.
/// The derived `Ord` on the trimmed vector is the lexicographic monomial order.
pub type Exponents = Vec<u32>;

fn trim(mut e: Exponents) -> Exponents {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn add_exponents(a: &[u32], b: &[u32]) -> Exponents {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, v) in a.iter().enumerate() {
        out[i] += v;
    }
    for (i, v) in b.iter().enumerate() {
        out[i] += v;
    }
    out
}

/// Sparse commutative polynomial in the Gram parameters with rational coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct ParamPoly {
    terms: BTreeMap<Exponents, Rational>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, Vec::new())
    }

    /// The parameter `q_i` (1-based).
    pub fn param(i: usize) -> Self {
        assert!(i >= 1, "parameters are 1-based");
        let mut e = vec![0; i];
        e[i - 1] = 1;
        Self::monomial(Rational::one(), e)
    }

    pub fn monomial(c: Rational, exps: Exponents) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(trim(exps), c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Returns the value if the polynomial has no parameter dependence.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Largest parameter index that occurs.
    pub fn max_param(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    fn add_term(&mut self, exps: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
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

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    fn leading(&self) -> Option<(&Exponents, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / d`; fails when `d` does not divide `self`.
    pub fn div_exact(&self, d: &ParamPoly) -> Result<ParamPoly> {
        let (dl_exp, dl_coef) = d.leading().ok_or(Error::NotDivisible)?;
        let mut rem = self.clone();
        let mut quot = ParamPoly::zero();
        while let Some((rl_exp, rl_coef)) = rem.leading() {
            if rl_exp.len() < dl_exp.len() && dl_exp[rl_exp.len()..].iter().any(|&x| x > 0) {
                return Err(Error::NotDivisible);
            }
            let mut e = Vec::with_capacity(rl_exp.len());
            for (i, &r) in rl_exp.iter().enumerate() {
                let dv = dl_exp.get(i).copied().unwrap_or(0);
                if r < dv {
                    return Err(Error::NotDivisible);
                }
                e.push(r - dv);
            }
            let t = ParamPoly::monomial(rl_coef / dl_coef, e);
            rem -= &(&t * d);
            quot += &t;
        }
        Ok(quot)
    }

    /// Evaluates at `q_i -> assign[i]`.
    pub fn specialize(&self, assign: &BTreeMap<usize, Rational>) -> Result<Rational> {
        let mut total = Rational::zero();
        for (exps, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let q = assign.get(&(i + 1)).ok_or(Error::MissingParameter(i + 1))?;
                v *= num::pow(q.clone(), e as usize);
            }
            total += v;
        }
        Ok(total)
    }

    /// Evaluates with `values[i-1]` substituted for `q_i`.
    pub fn specialize_slice(&self, values: &[Rational]) -> Result<Rational> {
        let assign = values
            .iter()
            .enumerate()
            .map(|(i, v)| (i + 1, v.clone()))
            .collect();
        self.specialize(&assign)
    }
}

impl From<Rational> for ParamPoly {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl<'a> AddAssign<&'a ParamPoly> for ParamPoly {
    fn add_assign(&mut self, rhs: &'a ParamPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl<'a> SubAssign<&'a ParamPoly> for ParamPoly {
    fn sub_assign(&mut self, rhs: &'a ParamPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c.clone());
        }
    }
}

impl<'a> Add<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &'a ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &'a ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &'a ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(add_exponents(ea, eb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<ParamPoly> for ParamPoly {
            type Output = ParamPoly;
            fn $m(self, rhs: ParamPoly) -> ParamPoly { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        -&self
    }
}

fn fmt_monomial(exps: &[u32]) -> String {
    exps.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("q{}", i + 1)
            } else {
                format!("q{}^{}", i + 1, e)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (exps, c)) in self.terms.iter().rev().enumerate() {
            let mono = fmt_monomial(exps);
            let mag = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{mag}*{mono}")?,
            }
        }
        Ok(())
    }
}

/// Field operations needed by fraction-free elimination.
pub trait BareissRing: Clone + Send + Sync {
    fn ring_one() -> Self;
    fn is_ring_zero(&self) -> bool;
    fn ring_mul(&self, rhs: &Self) -> Self;
    fn ring_sub(&self, rhs: &Self) -> Self;
    /// Division known to be exact.
    fn div_exact_ring(&self, rhs: &Self) -> Self;
}

impl BareissRing for BigInt {
    fn ring_one() -> Self {
        BigInt::one()
    }
    fn is_ring_zero(&self) -> bool {
        self.is_zero()
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn div_exact_ring(&self, rhs: &Self) -> Self {
        debug_assert!((self % rhs).is_zero());
        self / rhs
    }
}

impl BareissRing for ParamPoly {
    fn ring_one() -> Self {
        ParamPoly::one()
    }
    fn is_ring_zero(&self) -> bool {
        self.is_zero()
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn div_exact_ring(&self, rhs: &Self) -> Self {
        self.div_exact(rhs)
            .expect("Bareiss quotients are exact over a polynomial ring")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_examples() {
        assert_eq!(rat_normalize(2, 4).unwrap(), rat(1, 2));
        let z = rat_normalize(0, 5).unwrap();
        assert!(z.numer().is_zero() && z.denom().is_one());
        let r = rat_normalize(-3, -6).unwrap();
        assert_eq!(r.numer(), &BigInt::from(1));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(rat_normalize(1, 0), Err(Error::ZeroDenominator));
    }

    #[test]
    fn specialize_examples() {
        let q1 = ParamPoly::param(1);
        let q2 = ParamPoly::param(2);
        let assign: BTreeMap<_, _> = [(1, int(2)), (2, int(3))].into();
        assert_eq!((&q1 * &q2).specialize(&assign).unwrap(), int(6));
        let half = ParamPoly::constant(rat(1, 2));
        assert_eq!(half.specialize(&BTreeMap::new()).unwrap(), rat(1, 2));
        let assign: BTreeMap<_, _> = [(1, int(1)), (2, int(-1))].into();
        assert!((&q1 + &q2).specialize(&assign).unwrap().is_zero());
        assert_eq!(
            q2.specialize(&[(1, int(1))].into()),
            Err(Error::MissingParameter(2))
        );
    }

    #[test]
    fn display_uses_q_notation() {
        let p = &(&ParamPoly::param(1) * &ParamPoly::param(1)).scale(&int(2))
            - &ParamPoly::constant(rat(1, 2));
        assert_eq!(p.to_string(), "2*q1^2 - 1/2");
        assert_eq!(ParamPoly::zero().to_string(), "0");
        assert_eq!((-ParamPoly::param(3)).to_string(), "-q3");
    }

    #[test]
    fn exact_division() {
        let q1 = ParamPoly::param(1);
        let q2 = ParamPoly::param(2);
        let a = &q1 + &q2;
        let b = &q1 - &ParamPoly::one();
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert_eq!(q1.div_exact(&q2), Err(Error::NotDivisible));
        assert_eq!(ParamPoly::one().div_exact(&q1), Err(Error::NotDivisible));
    }

    #[test]
    fn trailing_zero_exponents_are_canonical() {
        let a = ParamPoly::monomial(int(1), vec![1, 0, 0]);
        assert_eq!(a, ParamPoly::param(1));
        assert_eq!(
            ParamPoly::monomial(int(5), vec![0, 0]).as_constant(),
            Some(int(5))
        );
    }
}
