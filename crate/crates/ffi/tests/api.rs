use std::ffi::{c_char, CStr, CString};
use std::ptr;

use okubo_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

/// Takes ownership of a returned string.
unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    okubo_string_free(s);
    out
}

fn last_error() -> String {
    unsafe {
        CStr::from_ptr(okubo_last_error())
            .to_str()
            .unwrap()
            .to_owned()
    }
}

unsafe fn algebra(field: &str, alpha: &str, beta: &str) -> *mut OkuboAlgebraHandle {
    let mut a = ptr::null_mut();
    let st = okubo_algebra_new(
        c(field).as_ptr(),
        c(alpha).as_ptr(),
        c(beta).as_ptr(),
        &mut a,
    );
    assert_eq!(st, OkuboStatus::Ok, "{}", last_error());
    a
}

unsafe fn element(a: *const OkuboAlgebraHandle, src: &str) -> *mut OkuboElementHandle {
    let mut x = ptr::null_mut();
    assert_eq!(
        okubo_element_parse(a, c(src).as_ptr(), &mut x),
        OkuboStatus::Ok,
        "{}",
        last_error()
    );
    x
}

#[test]
fn products_and_forms_in_symbolic_field() {
    unsafe {
        let a = algebra("2147483647(b)", "1", "b");
        let x = element(a, "z01 - z11");
        let y = element(a, "z02 - z22");
        let mut xx = ptr::null_mut();
        let mut yy = ptr::null_mut();
        assert_eq!(okubo_mul(a, x, x, &mut xx), OkuboStatus::Ok);
        assert_eq!(okubo_mul(a, y, y, &mut yy), OkuboStatus::Ok);

        let mut s = ptr::null_mut();
        assert_eq!(okubo_element_coordinates(a, xx, &mut s), OkuboStatus::Ok);
        assert_eq!(take(s), "{0, 0, 0, 1, 0, 1, 1, 0}");
        assert_eq!(okubo_element_coordinates(a, yy, &mut s), OkuboStatus::Ok);
        assert_eq!(take(s), "{0, 0, b, 0, b, 0, 0, b}");
        assert_eq!(okubo_bilin(a, xx, yy, &mut s), OkuboStatus::Ok);
        assert_eq!(take(s), "3b^2");
        assert_eq!(okubo_bilin(a, x, xx, &mut s), OkuboStatus::Ok);
        assert_eq!(take(s), "0");
        assert_eq!(okubo_qnorm(a, x, &mut s), OkuboStatus::Ok);
        assert_eq!(take(s), "0");

        let mut class = OkuboClass::TypeA;
        assert_eq!(okubo_classify(a, x, &mut class), OkuboStatus::Ok);
        assert_eq!(class, OkuboClass::TypeB);

        assert_eq!(okubo_element_to_string(a, xx, &mut s), OkuboStatus::Ok);
        let printed = take(s);
        let back = element(a, &printed);
        assert_eq!(okubo_element_coordinates(a, back, &mut s), OkuboStatus::Ok);
        assert_eq!(take(s), "{0, 0, 0, 1, 0, 1, 1, 0}");

        for e in [x, y, xx, yy, back] {
            okubo_element_free(e);
        }
        okubo_algebra_free(a);
    }
}

#[test]
fn elements_of_different_algebras_are_rejected() {
    unsafe {
        let a = algebra("gf3", "1", "1");
        let b = algebra("gf3", "1", "1");
        let x = element(a, "z10");
        let y = element(b, "z20");
        let mut z = ptr::null_mut();
        assert_eq!(okubo_mul(a, x, y, &mut z), OkuboStatus::MixedAlgebras);
        assert!(z.is_null());
        assert!(last_error().contains("different algebras"));
        let mut s = ptr::null_mut();
        assert_eq!(okubo_bilin(b, x, y, &mut s), OkuboStatus::MixedAlgebras);
        assert_eq!(okubo_bilin(a, x, x, &mut s), OkuboStatus::Ok);
        assert_eq!(take(s), "0");
        assert_eq!(last_error(), "");
        for e in [x, y] {
            okubo_element_free(e);
        }
        okubo_algebra_free(a);
        okubo_algebra_free(b);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut a = ptr::null_mut();
        assert_eq!(
            okubo_algebra_new(c("6").as_ptr(), c("1").as_ptr(), c("1").as_ptr(), &mut a),
            OkuboStatus::InvalidField
        );
        assert!(!last_error().is_empty());
        assert_eq!(
            okubo_algebra_new(c("gf3").as_ptr(), c("0").as_ptr(), c("1").as_ptr(), &mut a),
            OkuboStatus::InvalidAlgebra
        );
        assert_eq!(
            okubo_algebra_new(ptr::null(), c("1").as_ptr(), c("1").as_ptr(), &mut a),
            OkuboStatus::NullPointer
        );
        let bad = [0xffu8, 0];
        assert_eq!(
            okubo_algebra_new(
                bad.as_ptr().cast(),
                c("1").as_ptr(),
                c("1").as_ptr(),
                &mut a
            ),
            OkuboStatus::InvalidUtf8
        );
        assert!(a.is_null());

        let a = algebra("gf3", "1", "1");
        let mut x = ptr::null_mut();
        assert_eq!(
            okubo_element_parse(a, c("z10 +").as_ptr(), &mut x),
            OkuboStatus::ParseError
        );
        let e = element(a, "z10 + z20");
        let mut class = OkuboClass::TypeA;
        assert_eq!(
            okubo_classify(a, e, &mut class),
            OkuboStatus::NotZeroDivisor
        );
        assert_eq!(
            okubo_classify(a, e, ptr::null_mut()),
            OkuboStatus::NotZeroDivisor
        );
        let z = element(a, "z10");
        assert_eq!(
            okubo_classify(a, z, ptr::null_mut()),
            OkuboStatus::NullPointer
        );

        let mut passed = false;
        let mut report = ptr::null_mut();
        assert_eq!(
            okubo_verify(a, c("section5").as_ptr(), 0, 0, &mut passed, &mut report),
            OkuboStatus::IncompatibleSuite
        );
        assert_eq!(
            okubo_verify(a, c("nonsense").as_ptr(), 0, 0, &mut passed, &mut report),
            OkuboStatus::ParseError
        );

        let r = algebra("3(t)", "1", "t");
        let mut s = ptr::null_mut();
        assert_eq!(
            okubo_graph_report(r, 0, 0, &mut s),
            OkuboStatus::InfiniteField
        );
        okubo_element_free(e);
        okubo_element_free(z);
        okubo_algebra_free(a);
        okubo_algebra_free(r);
        okubo_algebra_free(ptr::null_mut());
        okubo_string_free(ptr::null_mut());
    }
}

#[test]
fn verify_and_report() {
    unsafe {
        let a = algebra("gf2", "1", "1");
        let mut passed = false;
        let mut report = ptr::null_mut();
        assert_eq!(
            okubo_verify(a, c("all").as_ptr(), 0, 0, &mut passed, &mut report),
            OkuboStatus::Ok
        );
        let text = take(report);
        assert!(passed, "{text}");
        assert!(text.contains("suite orth-components: PASS"));
        assert!(text.contains("suite section5: SKIPPED"));

        let mut json = ptr::null_mut();
        assert_eq!(okubo_graph_report(a, 0, 0, &mut json), OkuboStatus::Ok);
        let json = take(json);
        assert!(json.contains("\"vertex_count\": 135"));

        let mut info = ptr::null_mut();
        assert_eq!(okubo_algebra_info(a, &mut info), OkuboStatus::Ok);
        assert!(take(info).contains("zero-divisor lines: 135"));
        okubo_algebra_free(a);

        let v = CStr::from_ptr(okubo_version()).to_str().unwrap();
        assert_eq!(v, env!("CARGO_PKG_VERSION"));
    }
}

#[test]
fn last_error_is_per_thread() {
    unsafe {
        let mut a = ptr::null_mut();
        assert_eq!(
            okubo_algebra_new(c("6").as_ptr(), c("1").as_ptr(), c("1").as_ptr(), &mut a),
            OkuboStatus::InvalidField
        );
    }
    let other = std::thread::spawn(last_error).join().unwrap();
    assert_eq!(other, "");
    assert!(!last_error().is_empty());
}
