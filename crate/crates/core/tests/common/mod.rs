//! Randomized property suites with fixed seeds, shared by the property tests
//! and the acceptance runner. Each suite panics on the first counterexample
//! and returns the number of cases it checked.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num::{BigInt, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wid_core::clifford::{cliff_mul, evaluate, Blade, CliffordElt, FormParams};
use wid_core::freealg::{
    central_square_generator, standard_poly, star, substitute_linear, Gen, LinearForm, NcPoly, Word,
};
use wid_core::linalg::rational_rank;
use wid_core::pairs::{is_weak_identity, PairTarget};
use wid_core::scalars::{ParamPoly, Rational};
use wid_core::{format_expr, parse_poly};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut impl Rng) -> Rational {
    let num = rng.gen_range(-5i64..=5);
    let den = rng.gen_range(1i64..=4);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn nonzero_rational(rng: &mut impl Rng) -> Rational {
    loop {
        let r = small_rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

/// Constant or `c * q_i` coefficient.
fn param_coeff(rng: &mut impl Rng, k: usize) -> ParamPoly {
    let c = ParamPoly::constant(nonzero_rational(rng));
    if rng.gen_bool(0.5) {
        &c * &ParamPoly::param(rng.gen_range(1..=k))
    } else {
        c
    }
}

pub fn random_clifford(rng: &mut impl Rng, k: usize) -> CliffordElt {
    let mut e = CliffordElt::zero(k);
    for _ in 0..rng.gen_range(1..=3) {
        let mask = rng.gen_range(0..(1u64 << k));
        e.add_term(Blade::from_mask(mask), param_coeff(rng, k));
    }
    e
}

pub fn random_poly(rng: &mut impl Rng, gens: u32, max_deg: usize, max_terms: usize) -> NcPoly {
    let mut f = NcPoly::zero();
    for _ in 0..rng.gen_range(1..=max_terms) {
        let d = rng.gen_range(0..=max_deg);
        let w = Word::new((0..d).map(|_| rng.gen_range(1..=gens)).collect());
        f.add_term(w, small_rational(rng));
    }
    f
}

/// `(ab)c = a(bc)` for random elements with symbolic Gram values, `k <= 6`.
pub fn clifford_associativity(seed: u64, triples: usize) -> usize {
    let mut r = rng(seed);
    for _ in 0..triples {
        let k = r.gen_range(1..=6);
        let q = FormParams::symbolic(k).unwrap();
        let (a, b, c) = (
            random_clifford(&mut r, k),
            random_clifford(&mut r, k),
            random_clifford(&mut r, k),
        );
        let left = cliff_mul(&cliff_mul(&a, &b, &q).unwrap(), &c, &q).unwrap();
        let right = cliff_mul(&a, &cliff_mul(&b, &c, &q).unwrap(), &q).unwrap();
        assert_eq!(left, right, "associativity fails for {a}, {b}, {c}");
    }
    triples
}

/// Evaluation respects sums and products.
pub fn evaluation_homomorphism(seed: u64, cases: usize) -> usize {
    let mut r = rng(seed);
    for _ in 0..cases {
        let k = r.gen_range(1..=4);
        let q = FormParams::symbolic(k).unwrap();
        let f = random_poly(&mut r, 3, 3, 3);
        let g = random_poly(&mut r, 3, 3, 3);
        let assign: BTreeMap<Gen, CliffordElt> =
            (1..=3).map(|i| (i, random_clifford(&mut r, k))).collect();
        let ev = |p: &NcPoly| evaluate(p, &assign, &q).unwrap();
        assert_eq!(ev(&(&f * &g)), cliff_mul(&ev(&f), &ev(&g), &q).unwrap());
        assert_eq!(ev(&(&f + &g)), ev(&f).add(&ev(&g)).unwrap());
    }
    cases
}

/// The reversal is an involutive anti-automorphism.
pub fn star_anti_automorphism(seed: u64, cases: usize) -> usize {
    let mut r = rng(seed);
    for _ in 0..cases {
        let f = random_poly(&mut r, 4, 4, 4);
        let g = random_poly(&mut r, 4, 4, 4);
        assert_eq!(star(&(&f * &g)), &star(&g) * &star(&f));
        assert_eq!(star(&(&f + &g)), &star(&f) + &star(&g));
        assert_eq!(star(&star(&f)), f);
    }
    cases
}

fn renaming(n: usize, rename: impl Fn(Gen) -> Gen) -> BTreeMap<Gen, LinearForm> {
    (1..=n as Gen)
        .map(|g| {
            (
                g,
                [(rename(g), Rational::from_integer(1.into()))]
                    .into_iter()
                    .collect(),
            )
        })
        .collect()
}

/// `S_n` changes sign under every transposition of variables and vanishes
/// when two variables coincide, for `n <= 6`.
pub fn standard_alternation() -> usize {
    let mut checked = 0;
    for n in 1..=6usize {
        let s = standard_poly(n).unwrap();
        for i in 1..=n as Gen {
            for j in i + 1..=n as Gen {
                let swap = renaming(n, |g| {
                    if g == i {
                        j
                    } else if g == j {
                        i
                    } else {
                        g
                    }
                });
                let swapped = substitute_linear(&s, &swap).unwrap();
                assert_eq!(swapped, -s.clone(), "S_{n} not alternating in x{i}, x{j}");
                let glue = renaming(n, |g| if g == j { i } else { g });
                assert!(substitute_linear(&s, &glue).unwrap().is_zero());
                checked += 1;
            }
        }
    }
    checked
}

fn leaf_text(rng: &mut impl Rng) -> String {
    match rng.gen_range(0..4) {
        0 => format!("{}", rng.gen_range(0..7)),
        1 => format!("{}/{}", rng.gen_range(0..7), rng.gen_range(1..5)),
        2 => format!("x{}", rng.gen_range(1..4)),
        _ => format!("y{}", rng.gen_range(1..3)),
    }
}

/// Random source text over the full expression grammar.
pub fn random_expr_text(rng: &mut impl Rng, depth: usize) -> String {
    if depth == 0 {
        return leaf_text(rng);
    }
    let mut sub = || random_expr_text(rng, depth - 1);
    let (a, b) = (sub(), sub());
    match rng.gen_range(0..9) {
        0 => format!("({a}) + ({b})"),
        1 => format!("({a}) - ({b})"),
        2 => format!("({a})*({b})"),
        3 => format!("({})^{}", leaf_text(rng), rng.gen_range(1..4)),
        4 => format!("[{a},{b}]"),
        5 => format!("jord({a}, {b})"),
        6 => format!("S({})", rng.gen_range(1..4)),
        7 => format!("-({a})"),
        _ => leaf_text(rng),
    }
}

/// `parse(format(f)) = f` on random polynomials, and `format . parse` is
/// idempotent on random source text.
pub fn parser_round_trip(seed: u64, cases: usize) -> usize {
    let mut r = rng(seed);
    for _ in 0..cases {
        let f = random_poly(&mut r, 5, 4, 5);
        let text = format_expr(&f);
        assert_eq!(parse_poly(&text).unwrap(), f, "round trip of {text}");

        let src = random_expr_text(&mut r, 3);
        let once = format_expr(&parse_poly(&src).unwrap());
        let twice = format_expr(&parse_poly(&once).unwrap());
        assert_eq!(once, twice, "format . parse not idempotent on {src}");
    }
    cases
}

fn random_invertible(rng: &mut impl Rng, gens: &[Gen]) -> BTreeMap<Gen, LinearForm> {
    loop {
        let rows: Vec<Vec<Rational>> = gens
            .iter()
            .map(|_| {
                gens.iter()
                    .map(|_| Rational::from_integer(rng.gen_range(-2i64..=2).into()))
                    .collect()
            })
            .collect();
        if rational_rank(&rows) == gens.len() {
            return gens
                .iter()
                .zip(&rows)
                .map(|(&g, row)| {
                    let form = gens
                        .iter()
                        .zip(row)
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(&h, c)| (h, c.clone()))
                        .collect();
                    (g, form)
                })
                .collect();
        }
    }
}

/// Verdicts of the identity checker are unchanged by invertible linear
/// substitutions of the variables.
pub fn gl_invariance(seed: u64, substitutions: usize) -> usize {
    let mut r = rng(seed);
    let cases: Vec<(NcPoly, PairTarget, bool)> = vec![
        (
            central_square_generator(),
            PairTarget::clifford(3).unwrap(),
            true,
        ),
        (
            standard_poly(3).unwrap(),
            PairTarget::clifford(2).unwrap(),
            true,
        ),
        (standard_poly(4).unwrap(), PairTarget::Matrix, true),
        (
            parse_poly("[x1,x2]").unwrap(),
            PairTarget::clifford(3).unwrap(),
            false,
        ),
        (
            parse_poly("x1^2*x2 + x2*x1*x2").unwrap(),
            PairTarget::clifford(2).unwrap(),
            false,
        ),
    ];
    for i in 0..substitutions {
        let (f, pair, expected) = &cases[i % cases.len()];
        let gens: Vec<Gen> = f.generators().into_iter().collect();
        let subst = random_invertible(&mut r, &gens);
        let g = substitute_linear(f, &subst).unwrap();
        assert_eq!(is_weak_identity(f, pair).unwrap().holds(), *expected);
        assert_eq!(
            is_weak_identity(&g, pair).unwrap().holds(),
            *expected,
            "verdict changed for {f} under {subst:?}"
        );
    }
    substitutions
}
