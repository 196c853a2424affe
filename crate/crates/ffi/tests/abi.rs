use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use wid_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(wid_last_error()) }
        .to_string_lossy()
        .into_owned()
}

fn parse(text: &str) -> *mut WidPoly {
    let c = CString::new(text).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { wid_poly_parse(c.as_ptr(), &mut p) },
        WidStatus::Ok,
        "{}",
        last_error()
    );
    p
}

fn take_string(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { wid_string_free(s) };
    out
}

#[test]
fn parse_format_and_degree() {
    let p = parse("[x1, x2]");
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { wid_poly_format(p, &mut text) }, WidStatus::Ok);
    assert_eq!(take_string(text), "x1*x2 - x2*x1");
    let mut d = 0;
    assert_eq!(unsafe { wid_poly_degree(p, &mut d) }, WidStatus::Ok);
    assert_eq!(d, 2);
    unsafe { wid_poly_free(p) };
}

#[test]
fn parse_errors_set_message() {
    let c = CString::new("x1 +* x2").unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { wid_poly_parse(c.as_ptr(), &mut p) },
        WidStatus::Parse
    );
    assert!(p.is_null());
    assert!(last_error().contains("position"), "{}", last_error());
}

#[test]
fn null_pointers_are_rejected() {
    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { wid_poly_parse(ptr::null(), &mut p) },
        WidStatus::NullPointer
    );
    let mut holds = false;
    assert_eq!(
        unsafe { wid_check(ptr::null(), ptr::null(), &mut holds) },
        WidStatus::NullPointer
    );
    unsafe {
        wid_poly_free(ptr::null_mut());
        wid_pair_free(ptr::null_mut());
        wid_string_free(ptr::null_mut());
    }
}

#[test]
fn identity_checks() {
    let g = parse("[x1^2,x2]");
    let c = parse("[x1,x2]");
    let s4 = parse("S(4)");
    let (mut cl, mut m2) = (ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(wid_pair_clifford(3, &mut cl), WidStatus::Ok);
        assert_eq!(wid_pair_matrix(&mut m2), WidStatus::Ok);
        let mut holds = false;
        assert_eq!(wid_check(g, cl, &mut holds), WidStatus::Ok);
        assert!(holds);
        assert_eq!(wid_check(c, cl, &mut holds), WidStatus::Ok);
        assert!(!holds);
        assert_eq!(wid_check(s4, m2, &mut holds), WidStatus::Ok);
        assert!(holds);
        let mut bad = ptr::null_mut();
        assert_eq!(wid_pair_clifford(0, &mut bad), WidStatus::InvalidArgument);
        for p in [g, c, s4] {
            wid_poly_free(p);
        }
        wid_pair_free(cl);
        wid_pair_free(m2);
    }
}

#[test]
fn ranks_and_spans() {
    let mut cl = ptr::null_mut();
    let mut r = WidRankReport::default();
    unsafe {
        assert_eq!(wid_pair_clifford(2, &mut cl), WidStatus::Ok);
        assert_eq!(
            wid_evaluation_kernel(4, cl, ptr::null(), &mut r),
            WidStatus::Ok
        );
        assert_eq!((r.rank + r.kernel_dim, r.quotient_dim), (24, 6));

        let seeds = [3u64, 5];
        let opts = WidRankOptions {
            max_degree: 3,
            seeds: seeds.as_ptr(),
            seeds_len: 2,
            exact: false,
        };
        assert_eq!(
            wid_evaluation_kernel(4, cl, &opts, &mut r),
            WidStatus::DegreeTooHigh
        );
        assert!(last_error().contains("degree"));
        wid_pair_free(cl);
    }
    let g = parse("[x1^2,x2]") as *const WidPoly;
    assert_eq!(
        unsafe { wid_consequence_span(4, &g, 1, ptr::null(), &mut r) },
        WidStatus::Ok
    );
    assert_eq!(r.rank, 14);
    unsafe { wid_poly_free(g as *mut _) };

    let mut gen = WidGenerationReport::default();
    assert_eq!(
        unsafe { wid_generation_check(4, ptr::null(), &mut gen) },
        WidStatus::Ok
    );
    assert!(gen.passed && gen.span_in_kernel);
    assert_eq!(gen.kernel.quotient_dim, 10);
}

#[test]
fn coefficients_and_counts() {
    let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
    assert_eq!(
        unsafe { wid_insertion_coeffs(3, 1, &mut a, &mut b) },
        WidStatus::Ok
    );
    assert_eq!(
        (take_string(a), take_string(b)),
        ("-2/3".to_string(), "1/3".to_string())
    );

    let mut d = 0;
    assert_eq!(
        unsafe { wid_hook_dim([3usize, 2].as_ptr(), 2, &mut d) },
        WidStatus::Ok
    );
    assert_eq!(d, 5);
    assert_eq!(
        unsafe { wid_hook_dim([1usize, 2].as_ptr(), 2, &mut d) },
        WidStatus::InvalidArgument
    );

    let mut n = 0;
    assert_eq!(unsafe { wid_involutions(6, &mut n) }, WidStatus::Ok);
    assert_eq!(n, 76);
    assert_eq!(unsafe { wid_involutions(40, &mut n) }, WidStatus::Overflow);
}

#[test]
fn generated_header_compiles_as_c() {
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let src = std::env::temp_dir().join(format!("wid_header_{}.c", std::process::id()));
    std::fs::write(
        &src,
        "#include \"wid.h\"\nint main(void) { return WID_STATUS_OK; }\n",
    )
    .unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&include)
        .arg(&src)
        .status()
        .expect("a C compiler is available");
    std::fs::remove_file(&src).ok();
    assert!(status.success());
}
