//! Evaluation targets `(C_k, V_k)` and `(M_2, sl_2)` and the weak-identity
//! decision procedure.
//!
//! A polynomial is decided component by component: each multihomogeneous
//! component is fully polarized and the resulting multilinear polynomial is
//! evaluated on every tuple of basis elements of the substitution space.
//! For Clifford targets only tuples whose labels form an initial segment
//! `{1..j}` are visited: an order-preserving relabeling of the basis changes
//! each evaluation by a nonzero scalar only, and the canonical representative
//! is lexicographically smallest, so the first witness is unchanged.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::Zero;
use rayon::prelude::*;

use crate::clifford::{blade_product, Blade, CliffordElt, FormParams};
use crate::error::{Error, Result};
use crate::freealg::{Gen, NcPoly, PolarizationPlan, Word, DEFAULT_MAX_DEGREE};
use crate::scalars::{ParamPoly, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairTarget {
    /// `(C_k, V_k)`; `k` is carried by the form.
    Clifford(FormParams),
    /// `(M_2, sl_2)`.
    Matrix,
}

impl PairTarget {
    /// Clifford pair with generic Gram values.
    pub fn clifford(k: usize) -> Result<Self> {
        Ok(PairTarget::Clifford(FormParams::symbolic(k)?))
    }

    pub fn describe(&self) -> String {
        match self {
            PairTarget::Clifford(q) if q.is_symbolic() => format!("clifford:{}", q.k()),
            PairTarget::Clifford(q) => format!("clifford:{} (explicit form)", q.k()),
            PairTarget::Matrix => "m2".to_string(),
        }
    }
}

impl fmt::Display for PairTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Basis element of a substitution space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubstElement {
    /// `e_i` of `V_k`.
    Basis(usize),
    E,
    F,
    H,
}

impl fmt::Display for SubstElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubstElement::Basis(i) => write!(f, "e{i}"),
            SubstElement::E => write!(f, "E"),
            SubstElement::F => write!(f, "F"),
            SubstElement::H => write!(f, "H"),
        }
    }
}

pub fn substitution_basis(target: &PairTarget) -> Vec<SubstElement> {
    match target {
        PairTarget::Clifford(q) => (1..=q.k()).map(SubstElement::Basis).collect(),
        PairTarget::Matrix => vec![SubstElement::E, SubstElement::F, SubstElement::H],
    }
}

/// 2x2 matrix over parameter polynomials, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2 {
    pub entries: [ParamPoly; 4],
}

type IntMat = [i64; 4];

const E_INT: IntMat = [0, 1, 0, 0];
const F_INT: IntMat = [0, 0, 1, 0];
const H_INT: IntMat = [1, 0, 0, -1];
const ID_INT: IntMat = [1, 0, 0, 1];

#[inline]
fn int_mul(a: &IntMat, b: &IntMat) -> IntMat {
    [
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    ]
}

impl Mat2 {
    pub fn from_ints(m: [i64; 4]) -> Self {
        Mat2 {
            entries: m.map(|v| ParamPoly::constant(Rational::from_integer(v.into()))),
        }
    }

    pub fn from_rationals(m: [Rational; 4]) -> Self {
        Mat2 {
            entries: m.map(ParamPoly::constant),
        }
    }

    pub fn zero() -> Self {
        Self::from_ints([0; 4])
    }

    pub fn identity() -> Self {
        Self::from_ints(ID_INT)
    }

    pub fn e() -> Self {
        Self::from_ints(E_INT)
    }

    pub fn f() -> Self {
        Self::from_ints(F_INT)
    }

    pub fn h() -> Self {
        Self::from_ints(H_INT)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(ParamPoly::is_zero)
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let a = &self.entries;
        let b = &o.entries;
        Mat2 {
            entries: [
                &(&a[0] * &b[0]) + &(&a[1] * &b[2]),
                &(&a[0] * &b[1]) + &(&a[1] * &b[3]),
                &(&a[2] * &b[0]) + &(&a[3] * &b[2]),
                &(&a[2] * &b[1]) + &(&a[3] * &b[3]),
            ],
        }
    }

    pub fn add(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            entries: std::array::from_fn(|i| &self.entries[i] + &o.entries[i]),
        }
    }

    pub fn sub(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            entries: std::array::from_fn(|i| &self.entries[i] - &o.entries[i]),
        }
    }

    pub fn scale(&self, c: &ParamPoly) -> Mat2 {
        Mat2 {
            entries: std::array::from_fn(|i| &self.entries[i] * c),
        }
    }

    pub fn trace(&self) -> ParamPoly {
        &self.entries[0] + &self.entries[3]
    }

    pub fn det(&self) -> ParamPoly {
        &(&self.entries[0] * &self.entries[3]) - &(&self.entries[1] * &self.entries[2])
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = &self.entries;
        write!(f, "[[{}, {}], [{}, {}]]", e[0], e[1], e[2], e[3])
    }
}

pub fn mat2_evaluate(f: &NcPoly, assign: &BTreeMap<Gen, Mat2>) -> Result<Mat2> {
    for g in f.generators() {
        if !assign.contains_key(&g) {
            return Err(Error::MissingGenerator(g));
        }
    }
    let mut out = Mat2::zero();
    for (w, c) in f.terms() {
        let mut acc = Mat2::identity().scale(&ParamPoly::constant(c.clone()));
        for g in w.letters() {
            acc = acc.mul(&assign[g]);
        }
        out = out.add(&acc);
    }
    Ok(out)
}

/// A value of the target algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalValue {
    Clifford(CliffordElt),
    Matrix(Mat2),
}

impl EvalValue {
    pub fn is_zero(&self) -> bool {
        match self {
            EvalValue::Clifford(c) => c.is_zero(),
            EvalValue::Matrix(m) => m.is_zero(),
        }
    }
}

impl fmt::Display for EvalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalValue::Clifford(c) => write!(f, "{c}"),
            EvalValue::Matrix(m) => write!(f, "{m}"),
        }
    }
}

/// A substitution of basis elements under which a polynomial does not vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// The multilinear polynomial that was evaluated: the polarization of one
    /// multihomogeneous component of the input.
    pub component: NcPoly,
    pub assignment: BTreeMap<Gen, SubstElement>,
    pub value: EvalValue,
}

impl Witness {
    /// Evaluates `component` at `assignment` through the general evaluators.
    pub fn reevaluate(&self, target: &PairTarget) -> Result<EvalValue> {
        match target {
            PairTarget::Clifford(q) => {
                let assign = self
                    .assignment
                    .iter()
                    .map(|(&g, s)| match s {
                        SubstElement::Basis(i) => Ok((g, CliffordElt::basis(q.k(), *i)?)),
                        other => Err(Error::InvalidArgument(format!(
                            "{other} is not a vector of V_k"
                        ))),
                    })
                    .collect::<Result<BTreeMap<_, _>>>()?;
                Ok(EvalValue::Clifford(crate::clifford::evaluate(
                    &self.component,
                    &assign,
                    q,
                )?))
            }
            PairTarget::Matrix => {
                let assign = self
                    .assignment
                    .iter()
                    .map(|(&g, s)| match s {
                        SubstElement::E => Ok((g, Mat2::e())),
                        SubstElement::F => Ok((g, Mat2::f())),
                        SubstElement::H => Ok((g, Mat2::h())),
                        other => Err(Error::InvalidArgument(format!("{other} is not in sl_2"))),
                    })
                    .collect::<Result<BTreeMap<_, _>>>()?;
                Ok(EvalValue::Matrix(mat2_evaluate(&self.component, &assign)?))
            }
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let assignment = self
            .assignment
            .iter()
            .map(|(g, s)| format!("x{g}->{s}"))
            .collect::<Vec<_>>()
            .join(", ");
        write!(f, "{{{assignment}}} gives {}", self.value)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Box<Witness>),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

/// Decides whether `f` vanishes on all substitutions from the target's
/// generating subspace, with the default degree cap.
pub fn is_weak_identity(f: &NcPoly, target: &PairTarget) -> Result<Verdict> {
    is_weak_identity_capped(f, target, DEFAULT_MAX_DEGREE)
}

pub fn is_weak_identity_capped(f: &NcPoly, target: &PairTarget, cap: usize) -> Result<Verdict> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let degree = f.degree();
    if degree > cap {
        return Err(Error::DegreeTooHigh { degree, cap });
    }
    for (md, component) in f.homogeneous_components() {
        let plan = PolarizationPlan::for_multidegree(&md);
        let lin = plan.apply(&component);
        let frame = EvalFrame::new(target, plan.output_generators());
        if let Some((tuple, value)) = frame.first_nonzero(&lin) {
            return Ok(Verdict::Fails(Box::new(Witness {
                assignment: frame.assignment(tuple),
                component: lin,
                value,
            })));
        }
    }
    Ok(Verdict::Holds)
}

/// Evaluation of multilinear polynomials in a fixed ordered set of generators
/// at every (canonical) tuple of substitution basis elements.
///
/// Each tuple contributes coordinates: one for a Clifford target (a product
/// of basis vectors is a multiple of a single blade) and four matrix entries
/// for `(M_2, sl_2)`. A word's value at a coordinate is `raw * scale`, where
/// `raw` is a small integer and `scale` depends only on the coordinate.
pub struct EvalFrame {
    target: PairTarget,
    gens: Vec<Gen>,
    position: HashMap<Gen, usize>,
    tuples: Vec<Vec<u8>>,
}

impl EvalFrame {
    pub fn new(target: &PairTarget, gens: Vec<Gen>) -> Self {
        let n = gens.len();
        let tuples = match target {
            PairTarget::Clifford(q) => canonical_tuples(n, q.k().min(n.max(1))),
            PairTarget::Matrix => all_tuples(n, 3),
        };
        let position = gens.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        Self {
            target: target.clone(),
            gens,
            position,
            tuples,
        }
    }

    pub fn target(&self) -> &PairTarget {
        &self.target
    }

    pub fn generators(&self) -> &[Gen] {
        &self.gens
    }

    pub fn num_tuples(&self) -> usize {
        self.tuples.len()
    }

    pub fn coords_per_tuple(&self) -> usize {
        match self.target {
            PairTarget::Clifford(_) => 1,
            PairTarget::Matrix => 4,
        }
    }

    pub fn num_coords(&self) -> usize {
        self.num_tuples() * self.coords_per_tuple()
    }

    pub fn assignment(&self, tuple: usize) -> BTreeMap<Gen, SubstElement> {
        let basis = substitution_basis(&self.target);
        self.gens
            .iter()
            .zip(&self.tuples[tuple])
            .map(|(&g, &label)| (g, basis[label as usize - 1]))
            .collect()
    }

    fn labels<'a>(&'a self, w: &'a Word, tuple: &'a [u8]) -> impl Iterator<Item = u8> + 'a {
        w.letters().iter().map(move |g| tuple[self.position[g]])
    }

    /// Raw integer values of a word at one tuple.
    fn raw_word(&self, w: &Word, tuple: &[u8], out: &mut [i64]) {
        match self.target {
            PairTarget::Clifford(_) => {
                let mut cur = 0u64;
                let mut neg = false;
                for label in self.labels(w, tuple) {
                    let (n, _, r) = blade_product(cur, 1 << (label - 1));
                    neg ^= n;
                    cur = r;
                }
                out[0] = if neg { -1 } else { 1 };
            }
            PairTarget::Matrix => {
                let mut acc = ID_INT;
                for label in self.labels(w, tuple) {
                    let m = match label {
                        1 => &E_INT,
                        2 => &F_INT,
                        _ => &H_INT,
                    };
                    acc = int_mul(&acc, m);
                }
                out.copy_from_slice(&acc);
            }
        }
    }

    /// Blade and scale of a Clifford tuple: `e_{t1} ... e_{tn}` equals
    /// `+-scale * blade`, with the sign depending on the word.
    fn clifford_tuple_data(&self, q: &FormParams, tuple: &[u8]) -> (Blade, ParamPoly) {
        let mut counts = [0u32; 64];
        for &l in tuple {
            counts[l as usize - 1] += 1;
        }
        let mut blade = 0u64;
        let mut scale = ParamPoly::one();
        for (i, &c) in counts.iter().enumerate() {
            if c % 2 == 1 {
                blade |= 1 << i;
            }
            if c >= 2 {
                scale = &scale * &q.q(i + 1).pow(c / 2);
            }
        }
        (Blade::from_mask(blade), scale)
    }

    /// Scale factor of every coordinate.
    pub fn scales(&self) -> Vec<ParamPoly> {
        match &self.target {
            PairTarget::Clifford(q) => self
                .tuples
                .iter()
                .map(|t| self.clifford_tuple_data(q, t).1)
                .collect(),
            PairTarget::Matrix => vec![ParamPoly::one(); self.num_coords()],
        }
    }

    /// Raw coordinate vector of `p` (scales not applied).
    pub fn raw_vector(&self, p: &NcPoly) -> Vec<Rational> {
        let cpt = self.coords_per_tuple();
        self.tuples
            .par_iter()
            .flat_map_iter(|t| self.raw_at(p, t, cpt))
            .collect()
    }

    fn raw_at(&self, p: &NcPoly, t: &[u8], cpt: usize) -> Vec<Rational> {
        let mut acc = vec![Rational::zero(); cpt];
        let mut buf = [0i64; 4];
        for (w, c) in p.terms() {
            self.raw_word(w, t, &mut buf[..cpt]);
            for (a, &v) in acc.iter_mut().zip(&buf[..cpt]) {
                match v {
                    0 => {}
                    1 => *a += c,
                    -1 => *a -= c,
                    v => *a += c * Rational::from_integer(v.into()),
                }
            }
        }
        acc
    }

    /// Raw integer rows for a list of words.
    pub fn word_rows(&self, words: &[Word]) -> Vec<Vec<i64>> {
        let cpt = self.coords_per_tuple();
        words
            .par_iter()
            .map(|w| {
                let mut row = vec![0i64; self.num_coords()];
                for (i, t) in self.tuples.iter().enumerate() {
                    self.raw_word(w, t, &mut row[i * cpt..(i + 1) * cpt]);
                }
                row
            })
            .collect()
    }

    /// Value of `p` at one tuple.
    pub fn value_at(&self, p: &NcPoly, tuple: usize) -> EvalValue {
        let t = &self.tuples[tuple];
        let raw = self.raw_at(p, t, self.coords_per_tuple());
        self.value_from_raw(t, raw)
    }

    fn value_from_raw(&self, t: &[u8], raw: Vec<Rational>) -> EvalValue {
        match &self.target {
            PairTarget::Clifford(q) => {
                let (blade, scale) = self.clifford_tuple_data(q, t);
                let c = scale.scale(&raw[0]);
                EvalValue::Clifford(CliffordElt::blade(q.k(), blade, c))
            }
            PairTarget::Matrix => {
                let [a, b, c, d]: [Rational; 4] = raw.try_into().expect("four entries");
                EvalValue::Matrix(Mat2::from_rationals([a, b, c, d]))
            }
        }
    }

    /// First tuple (in enumeration order) where `p` does not vanish.
    pub fn first_nonzero(&self, p: &NcPoly) -> Option<(usize, EvalValue)> {
        if self.gens.is_empty() {
            // constant component
            let c = p.coeff(&Word::empty());
            if c.is_zero() {
                return None;
            }
            let value = match &self.target {
                PairTarget::Clifford(q) => {
                    EvalValue::Clifford(CliffordElt::scalar(q.k(), ParamPoly::constant(c)))
                }
                PairTarget::Matrix => EvalValue::Matrix(Mat2::identity().scale(&c.into())),
            };
            return Some((0, value));
        }
        let cpt = self.coords_per_tuple();
        let idx = self
            .tuples
            .par_iter()
            .position_first(|t| self.raw_at(p, t, cpt).iter().any(|v| !v.is_zero()))?;
        Some((idx, self.value_at(p, idx)))
    }
}

fn all_tuples(n: usize, m: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut t = vec![1u8; n];
    loop {
        out.push(t.clone());
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if (t[i] as usize) < m {
                t[i] += 1;
                for v in &mut t[i + 1..] {
                    *v = 1;
                }
                break;
            }
        }
    }
}

/// Tuples in `{1..m}^n` whose label set is `{1..j}` for some `j`, in lex order.
fn canonical_tuples(n: usize, m: usize) -> Vec<Vec<u8>> {
    all_tuples(n, m)
        .into_iter()
        .filter(|t| {
            let mut used = 0u64;
            for &l in t {
                used |= 1 << (l - 1);
            }
            (used & (used + 1)) == 0
        })
        .collect()
}

/// Evaluates a polynomial in `C_k` with `x_g -> e_{assign[g]}`.
pub fn evaluate_at_basis(
    f: &NcPoly,
    q: &FormParams,
    assign: &BTreeMap<Gen, usize>,
) -> Result<CliffordElt> {
    let a = assign
        .iter()
        .map(|(&g, &i)| Ok((g, CliffordElt::basis(q.k(), i)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    crate::clifford::evaluate(f, &a, q)
}
