//! Clifford algebra `C_k` of a diagonal non-degenerate symmetric form with
//! Gram values `q_i = <e_i, e_i>`, and evaluation of free-algebra polynomials in it.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num::Zero;

use crate::error::{Error, Result};
use crate::freealg::{Gen, NcPoly};
use crate::scalars::{ParamPoly, Rational};

/// Largest supported dimension (blades are 64-bit masks).
pub const MAX_DIM: usize = 63;

/// Basis blade `e_{i1} ... e_{im}` with `i1 < ... < im`; bit `i-1` marks `e_i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Default)]
pub struct Blade(u64);

impl Blade {
    pub const UNIT: Blade = Blade(0);

    pub fn from_mask(mask: u64) -> Self {
        Blade(mask)
    }

    pub fn basis(i: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&i));
        Blade(1 << (i - 1))
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        Blade(indices.iter().fold(0, |m, &i| m | (1 << (i - 1))))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    pub fn indices(self) -> Vec<usize> {
        (0..64)
            .filter(|b| self.0 >> b & 1 == 1)
            .map(|b| b + 1)
            .collect()
    }

    /// Highest index used, 0 for the unit.
    pub fn top(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{{{}}}", self.indices().iter().join(","))
    }
}

/// Product of two basis blades ignoring Gram values: returns whether the
/// reordering sign is negative, the mask of contracted indices, and the result.
#[inline]
pub fn blade_product(a: u64, b: u64) -> (bool, u64, u64) {
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> j >> 1).count_ones();
        rest &= rest - 1;
    }
    (swaps % 2 == 1, a & b, a ^ b)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormValues {
    /// Generic Gram values `q1, ..., qk`.
    Symbolic,
    /// Fixed nonzero Gram values.
    Explicit(Vec<Rational>),
}

/// Diagonal Gram values of the form on `V_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormParams {
    k: usize,
    values: FormValues,
}

impl FormParams {
    pub fn symbolic(k: usize) -> Result<Self> {
        check_dim(k)?;
        Ok(Self {
            k,
            values: FormValues::Symbolic,
        })
    }

    pub fn explicit(values: Vec<Rational>) -> Result<Self> {
        check_dim(values.len())?;
        if let Some(i) = values.iter().position(Zero::is_zero) {
            return Err(Error::DegenerateForm(i + 1));
        }
        Ok(Self {
            k: values.len(),
            values: FormValues::Explicit(values),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn values(&self) -> &FormValues {
        &self.values
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self.values, FormValues::Symbolic)
    }

    /// `<e_i, e_i>`.
    pub fn q(&self, i: usize) -> ParamPoly {
        match &self.values {
            FormValues::Symbolic => ParamPoly::param(i),
            FormValues::Explicit(v) => ParamPoly::constant(v[i - 1].clone()),
        }
    }

    /// Product of `q_i` over the indices in `mask`.
    pub fn contraction(&self, mask: u64) -> ParamPoly {
        let mut exps = Vec::new();
        let mut c = Rational::from_integer(1.into());
        for i in Blade(mask).indices() {
            match &self.values {
                FormValues::Symbolic => {
                    if exps.len() < i {
                        exps.resize(i, 0);
                    }
                    exps[i - 1] += 1;
                }
                FormValues::Explicit(v) => c *= &v[i - 1],
            }
        }
        ParamPoly::monomial(c, exps)
    }

    fn check_blade(&self, b: Blade) -> Result<()> {
        let top = b.top();
        if top > self.k {
            return Err(Error::IndexOutOfRange {
                index: top,
                k: self.k,
            });
        }
        Ok(())
    }
}

fn check_dim(k: usize) -> Result<()> {
    if k == 0 || k > MAX_DIM {
        return Err(Error::InvalidArgument(format!(
            "Clifford dimension must be in 1..={MAX_DIM}, got {k}"
        )));
    }
    Ok(())
}

/// `a * b = coefficient * result`.
pub fn blade_mul(a: Blade, b: Blade, q: &FormParams) -> Result<(ParamPoly, Blade)> {
    q.check_blade(a)?;
    q.check_blade(b)?;
    let (neg, contracted, result) = blade_product(a.0, b.0);
    let c = q.contraction(contracted);
    Ok((if neg { -c } else { c }, Blade(result)))
}

/// Element of `C_k` with parameter-polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordElt {
    k: usize,
    terms: BTreeMap<Blade, ParamPoly>,
}

impl CliffordElt {
    pub fn zero(k: usize) -> Self {
        Self {
            k,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(k: usize) -> Self {
        Self::scalar(k, ParamPoly::one())
    }

    pub fn scalar(k: usize, c: ParamPoly) -> Self {
        Self::blade(k, Blade::UNIT, c)
    }

    pub fn blade(k: usize, b: Blade, c: ParamPoly) -> Self {
        let mut e = Self::zero(k);
        e.add_term(b, c);
        e
    }

    /// The basis vector `e_i`.
    pub fn basis(k: usize, i: usize) -> Result<Self> {
        if i == 0 || i > k {
            return Err(Error::IndexOutOfRange { index: i, k });
        }
        Ok(Self::blade(k, Blade::basis(i), ParamPoly::one()))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &ParamPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, b: Blade) -> ParamPoly {
        self.terms.get(&b).cloned().unwrap_or_default()
    }

    /// Returns the coefficient of the unit if no other blade occurs.
    pub fn as_scalar(&self) -> Option<ParamPoly> {
        if self.terms.keys().all(|b| *b == Blade::UNIT) {
            Some(self.coeff(Blade::UNIT))
        } else {
            None
        }
    }

    pub fn add_term(&mut self, b: Blade, c: ParamPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(b).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&b);
        }
    }

    pub fn add(&self, other: &CliffordElt) -> Result<CliffordElt> {
        if self.k != other.k {
            return Err(Error::DimensionMismatch(self.k, other.k));
        }
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &CliffordElt) -> Result<CliffordElt> {
        self.add(&other.scale(&ParamPoly::constant(Rational::from_integer((-1).into()))))
    }

    pub fn scale(&self, c: &ParamPoly) -> CliffordElt {
        let mut out = CliffordElt::zero(self.k);
        for (b, v) in &self.terms {
            out.add_term(*b, v * c);
        }
        out
    }
}

impl fmt::Display for CliffordElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            let mut coef = c.to_string();
            if c.num_terms() > 1 {
                coef = format!("({coef})");
            }
            let negative = coef.starts_with('-');
            let magnitude = coef.trim_start_matches('-');
            let body = match (*b == Blade::UNIT, magnitude) {
                (true, m) => m.to_string(),
                (false, "1") => b.to_string(),
                (false, m) => format!("{m}*{b}"),
            };
            match (i, negative) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

/// Bilinear extension of [`blade_mul`].
pub fn cliff_mul(a: &CliffordElt, b: &CliffordElt, q: &FormParams) -> Result<CliffordElt> {
    if a.k != q.k {
        return Err(Error::DimensionMismatch(a.k, q.k));
    }
    if b.k != q.k {
        return Err(Error::DimensionMismatch(b.k, q.k));
    }
    let mut out = CliffordElt::zero(q.k);
    for (ba, ca) in &a.terms {
        for (bb, cb) in &b.terms {
            let (neg, contracted, result) = blade_product(ba.0, bb.0);
            let mut c = &(ca * cb) * &q.contraction(contracted);
            if neg {
                c = -c;
            }
            out.add_term(Blade(result), c);
        }
    }
    Ok(out)
}

/// A vector of `V_k` in the orthogonal basis `e_1, ..., e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorV {
    pub coords: Vec<ParamPoly>,
}

impl VectorV {
    pub fn new(coords: Vec<ParamPoly>) -> Self {
        Self { coords }
    }
}

pub fn embed_vector(v: &VectorV, k: usize) -> Result<CliffordElt> {
    if v.coords.len() != k {
        return Err(Error::DimensionMismatch(v.coords.len(), k));
    }
    let mut out = CliffordElt::zero(k);
    for (i, c) in v.coords.iter().enumerate() {
        out.add_term(Blade::basis(i + 1), c.clone());
    }
    Ok(out)
}

/// Applies the algebra homomorphism `x_g -> assign[g]` to `f`.
pub fn evaluate(
    f: &NcPoly,
    assign: &BTreeMap<Gen, CliffordElt>,
    q: &FormParams,
) -> Result<CliffordElt> {
    for g in f.generators() {
        let v = assign.get(&g).ok_or(Error::MissingGenerator(g))?;
        if v.k != q.k {
            return Err(Error::DimensionMismatch(v.k, q.k));
        }
    }
    let mut out = CliffordElt::zero(q.k);
    for (w, c) in f.terms() {
        let mut acc = CliffordElt::scalar(q.k, ParamPoly::constant(c.clone()));
        for g in w.letters() {
            acc = cliff_mul(&acc, &assign[g], q)?;
            if acc.is_zero() {
                break;
            }
        }
        out = out.add(&acc)?;
    }
    Ok(out)
}
