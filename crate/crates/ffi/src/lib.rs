//! C ABI over `wid-core`.
//!
//! Conventions:
//! - Every fallible function returns a [`WidStatus`] and writes results
//!   through out-pointers. On failure the out-pointers are left untouched
//!   and [`wid_last_error`] describes the problem.
//! - Polynomials and pairs are opaque handles, released with
//!   [`wid_poly_free`] and [`wid_pair_free`].
//! - Strings returned by the library are released with [`wid_string_free`].
//! - Panics never cross the boundary; they surface as `WID_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num::ToPrimitive;
use wid_core::structure::{
    central_square_generation_check, consequence_span_dim, hook_dim, insertion_coeffs, involutions,
    GenerationReport, Partition, RankReport,
};
use wid_core::{
    evaluation_kernel, format_expr, is_weak_identity, parse_poly, Error, NcPoly, PairTarget,
    RankOptions,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WidStatus {
    Ok = 0,
    InvalidArgument = 1,
    Parse = 2,
    DegreeTooHigh = 3,
    NullPointer = 4,
    Overflow = 5,
    Failed = 6,
    Panic = 7,
}

/// A noncommutative polynomial with rational coefficients.
pub struct WidPoly(NcPoly);

/// An evaluation target: a Clifford pair or the traceless 2x2 matrices.
pub struct WidPair(PairTarget);

/// Rank options. `seeds` may be null when `seeds_len` is zero, which selects
/// the default seeds.
#[repr(C)]
pub struct WidRankOptions {
    pub max_degree: usize,
    pub seeds: *const u64,
    pub seeds_len: usize,
    pub exact: bool,
}

/// Dimensions of a multilinear evaluation or span computation.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WidRankReport {
    pub degree: usize,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    pub quotient_dim: usize,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WidGenerationReport {
    pub span: WidRankReport,
    pub kernel: WidRankReport,
    pub span_in_kernel: bool,
    pub passed: bool,
}

impl From<&RankReport> for WidRankReport {
    fn from(r: &RankReport) -> Self {
        WidRankReport {
            degree: r.degree,
            rows: r.rows,
            cols: r.cols,
            rank: r.rank,
            kernel_dim: r.kernel_dim,
            quotient_dim: r.quotient_dim,
        }
    }
}

impl From<&GenerationReport> for WidGenerationReport {
    fn from(r: &GenerationReport) -> Self {
        WidGenerationReport {
            span: (&r.span).into(),
            kernel: (&r.kernel).into(),
            span_in_kernel: r.span_in_kernel,
            passed: r.passed,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(WidStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } | Error::ZeroDenominator => WidStatus::Parse,
            Error::DegreeTooHigh { .. } => WidStatus::DegreeTooHigh,
            Error::FactorizationNotFound => WidStatus::Failed,
            _ => WidStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn guard(f: impl FnOnce() -> Outcome) -> WidStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            WidStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            WidStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(WidStatus::NullPointer, format!("{what} is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null("string"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(WidStatus::InvalidArgument, "string is not UTF-8".into()))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s)
        .expect("formatted output has no nul bytes")
        .into_raw()
}

unsafe fn options(p: *const WidRankOptions) -> Result<RankOptions, Failure> {
    let Some(o) = p.as_ref() else {
        return Ok(RankOptions::default());
    };
    let mut opts = RankOptions {
        max_degree: o.max_degree,
        exact: o.exact,
        ..RankOptions::default()
    };
    if o.seeds_len > 0 {
        if o.seeds.is_null() {
            return Err(null("seeds"));
        }
        opts.seeds = std::slice::from_raw_parts(o.seeds, o.seeds_len).to_vec();
    }
    Ok(opts)
}

/// Message for the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn wid_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn wid_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an expression such as `"[x1^2,x2]"` or `"S(4)"`.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wid_poly_parse(
    text: *const c_char,
    out_poly: *mut *mut WidPoly,
) -> WidStatus {
    guard(|| {
        let text = read_str(text)?;
        let slot = out(out_poly, "out_poly")?;
        *slot = Box::into_raw(Box::new(WidPoly(parse_poly(text)?)));
        Ok(())
    })
}

/// # Safety
/// `poly` must be null or a handle from [`wid_poly_parse`].
#[no_mangle]
pub unsafe extern "C" fn wid_poly_free(poly: *mut WidPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Canonical text of `poly`; free the result with [`wid_string_free`].
///
/// # Safety
/// `poly` must be a live handle and `out_text` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wid_poly_format(
    poly: *const WidPoly,
    out_text: *mut *mut c_char,
) -> WidStatus {
    guard(|| {
        let p = deref(poly, "poly")?;
        *out(out_text, "out_text")? = to_c_string(format_expr(&p.0));
        Ok(())
    })
}

/// Total degree of `poly`; zero for constants and the zero polynomial.
///
/// # Safety
/// `poly` must be a live handle and `out_degree` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wid_poly_degree(
    poly: *const WidPoly,
    out_degree: *mut usize,
) -> WidStatus {
    guard(|| {
        let p = deref(poly, "poly")?;
        *out(out_degree, "out_degree")? = p.0.degree();
        Ok(())
    })
}

/// The Clifford pair of dimension `k` with symbolic Gram values.
///
/// # Safety
/// `out_pair` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wid_pair_clifford(k: usize, out_pair: *mut *mut WidPair) -> WidStatus {
    guard(|| {
        let slot = out(out_pair, "out_pair")?;
        *slot = Box::into_raw(Box::new(WidPair(PairTarget::clifford(k)?)));
        Ok(())
    })
}

/// The 2x2 matrices with traceless substitutions.
///
/// # Safety
/// `out_pair` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wid_pair_matrix(out_pair: *mut *mut WidPair) -> WidStatus {
    guard(|| {
        *out(out_pair, "out_pair")? = Box::into_raw(Box::new(WidPair(PairTarget::Matrix)));
        Ok(())
    })
}

/// # Safety
/// `pair` must be null or a handle from a `wid_pair_*` constructor.
#[no_mangle]
pub unsafe extern "C" fn wid_pair_free(pair: *mut WidPair) {
    if !pair.is_null() {
        drop(Box::from_raw(pair));
    }
}

/// Decides whether `poly` is a weak identity of `pair`.
///
/// # Safety
/// Handles must be live and `out_holds` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wid_check(
    poly: *const WidPoly,
    pair: *const WidPair,
    out_holds: *mut bool,
) -> WidStatus {
    guard(|| {
        let (p, t) = (deref(poly, "poly")?, deref(pair, "pair")?);
        *out(out_holds, "out_holds")? = is_weak_identity(&p.0, &t.0)?.holds();
        Ok(())
    })
}

/// Rank of evaluation on multilinear words of degree `n`.
///
/// # Safety
/// `pair` must be live, `opts` null or valid, `out_report` valid.
#[no_mangle]
pub unsafe extern "C" fn wid_evaluation_kernel(
    n: usize,
    pair: *const WidPair,
    opts: *const WidRankOptions,
    out_report: *mut WidRankReport,
) -> WidStatus {
    guard(|| {
        let t = deref(pair, "pair")?;
        let r = evaluation_kernel(n, &t.0, &options(opts)?)?;
        *out(out_report, "out_report")? = (&r).into();
        Ok(())
    })
}

/// Dimension of the degree-`n` multilinear consequences of `gens`.
///
/// # Safety
/// `gens` must point to `len` live handles.
#[no_mangle]
pub unsafe extern "C" fn wid_consequence_span(
    n: usize,
    gens: *const *const WidPoly,
    len: usize,
    opts: *const WidRankOptions,
    out_report: *mut WidRankReport,
) -> WidStatus {
    guard(|| {
        if gens.is_null() && len > 0 {
            return Err(null("gens"));
        }
        let handles = if len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(gens, len)
        };
        let polys = handles
            .iter()
            .map(|&h| deref(h, "generator").map(|p| p.0.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        let r = consequence_span_dim(n, &polys, &options(opts)?)?;
        *out(out_report, "out_report")? = (&r).into();
        Ok(())
    })
}

/// Compares the consequences of `[x1^2,x2]` with the Clifford kernel at
/// degree `n`.
///
/// # Safety
/// `opts` must be null or valid, `out_report` valid.
#[no_mangle]
pub unsafe extern "C" fn wid_generation_check(
    n: usize,
    opts: *const WidRankOptions,
    out_report: *mut WidGenerationReport,
) -> WidStatus {
    guard(|| {
        let r = central_square_generation_check(n, &options(opts)?)?;
        *out(out_report, "out_report")? = (&r).into();
        Ok(())
    })
}

/// Coefficients `alpha`, `beta` of the insertion relation, as `"p/q"`
/// strings to free with [`wid_string_free`].
///
/// # Safety
/// Out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn wid_insertion_coeffs(
    n: usize,
    k: usize,
    out_alpha: *mut *mut c_char,
    out_beta: *mut *mut c_char,
) -> WidStatus {
    guard(|| {
        let (a, b) = (out(out_alpha, "out_alpha")?, out(out_beta, "out_beta")?);
        let c = insertion_coeffs(n, k)?;
        *a = to_c_string(c.alpha.to_string());
        *b = to_c_string(c.beta.to_string());
        Ok(())
    })
}

/// Number of standard tableaux of shape `parts[0] >= parts[1] >= ...`.
///
/// # Safety
/// `parts` must point to `len` values.
#[no_mangle]
pub unsafe extern "C" fn wid_hook_dim(
    parts: *const usize,
    len: usize,
    out_dim: *mut u64,
) -> WidStatus {
    guard(|| {
        if parts.is_null() && len > 0 {
            return Err(null("parts"));
        }
        let slice = if len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(parts, len)
        };
        let shape = Partition::new(slice.to_vec())?;
        let d = hook_dim(&shape)
            .to_u64()
            .ok_or_else(|| Failure(WidStatus::Overflow, "dimension exceeds 64 bits".into()))?;
        *out(out_dim, "out_dim")? = d;
        Ok(())
    })
}

/// Number of involutions in the symmetric group on `n` letters.
///
/// # Safety
/// `out_count` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wid_involutions(n: usize, out_count: *mut u64) -> WidStatus {
    guard(|| {
        if n > 31 {
            return Err(Failure(
                WidStatus::Overflow,
                format!("count for n = {n} exceeds 64 bits"),
            ));
        }
        *out(out_count, "out_count")? = involutions(n);
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors_map_to_statuses() {
        let parse = Error::Parse {
            pos: 0,
            msg: "x".into(),
        };
        assert_eq!(Failure::from(parse).0, WidStatus::Parse);
        assert_eq!(
            Failure::from(Error::DegreeTooHigh { degree: 9, cap: 6 }).0,
            WidStatus::DegreeTooHigh
        );
        assert_eq!(
            Failure::from(Error::ZeroPolynomial).0,
            WidStatus::InvalidArgument
        );
    }

    #[test]
    fn panics_are_contained() {
        assert_eq!(guard(|| panic!("boom")), WidStatus::Panic);
        let msg = unsafe { CStr::from_ptr(wid_last_error()) };
        assert_eq!(msg.to_str().unwrap(), "internal panic");
    }
}
