use std::ffi::{CStr, CString};
use std::ptr;

use kweights_ffi::*;

fn last_error() -> String {
    let p = kw_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn group(spec: &str) -> *mut KwSquare {
    let spec = CString::new(spec).unwrap();
    let mut sq = ptr::null_mut();
    assert_eq!(unsafe { kw_square_group(spec.as_ptr(), &mut sq) }, KwStatus::Ok);
    sq
}

#[test]
fn square_lifecycle() {
    let flat = [0i64, 1, 2, 1, 2, 0, 2, 0, 1];
    let mut sq = ptr::null_mut();
    unsafe {
        assert_eq!(kw_square_from_flat(3, flat.as_ptr(), &mut sq), KwStatus::Ok);
        assert_eq!(kw_square_order(sq), 3);
        let mut v = 0usize;
        assert_eq!(kw_square_get(sq, 1, 2, &mut v), KwStatus::Ok);
        assert_eq!(v, 0);
        assert_eq!(kw_square_get(sq, 3, 0, &mut v), KwStatus::OutOfRange);

        let mut text = ptr::null_mut();
        assert_eq!(kw_square_to_string(sq, &mut text), KwStatus::Ok);
        assert_eq!(CStr::from_ptr(text).to_str().unwrap(), "0 1 2\n1 2 0\n2 0 1\n");

        let mut again = ptr::null_mut();
        assert_eq!(kw_square_parse(text, &mut again), KwStatus::Ok);
        assert_eq!(kw_square_order(again), 3);
        kw_string_free(text);
        kw_square_free(again);
        kw_square_free(sq);
        kw_square_free(ptr::null_mut());
    }
}

#[test]
fn errors_set_status_and_message() {
    let flat = [0i64, 1, 0, 1];
    let mut sq = ptr::null_mut();
    unsafe {
        assert_eq!(kw_square_from_flat(2, flat.as_ptr(), &mut sq), KwStatus::InvalidInput);
        assert!(sq.is_null());
        assert!(last_error().contains("column"), "{}", last_error());
        assert_eq!(kw_square_from_flat(2, ptr::null(), &mut sq), KwStatus::NullPointer);
        let bad = CString::new("sum:2,x").unwrap();
        assert_eq!(kw_square_group(bad.as_ptr(), &mut sq), KwStatus::InvalidInput);
        assert_eq!(kw_square_order(ptr::null()), 0);
    }
}

#[test]
fn weights_and_classification() {
    let z3 = group("cyclic:3");
    unsafe {
        let mut w = ptr::null_mut();
        assert_eq!(kw_weight_construct(z3, 2, 0, 0, &mut w), KwStatus::Ok);
        let mut v = 0i64;
        assert_eq!(kw_weight_get(w, 0, 0, &mut v), KwStatus::Ok);
        assert_eq!(v, 0);
        let (mut kind, mut len) = (KwClassKind::Unclassified, 0usize);
        assert_eq!(kw_classify(z3, w, 2, &mut kind, &mut len), KwStatus::Ok);
        assert_eq!((kind, len), (KwClassKind::Exact, 3));
        assert_eq!(kw_classify(z3, w, 1, &mut kind, &mut len), KwStatus::Ok);
        assert_eq!((kind, len), (KwClassKind::Unclassified, 0));
        kw_weight_free(w);

        let partial = [1i64, 0, 0, 0, 0, 0, 0, 0, 0];
        assert_eq!(kw_weight_from_flat(3, partial.as_ptr(), &mut w), KwStatus::Ok);
        assert_eq!(kw_classify(z3, w, 1, &mut kind, &mut len), KwStatus::Ok);
        assert_eq!((kind, len), (KwClassKind::Partial, 1));
        kw_weight_free(w);

        let z4 = group("cyclic:4");
        assert_eq!(kw_weight_construct(z4, 1, 0, 0, &mut w), KwStatus::OutOfRange);
        assert_eq!(kw_weight_construct(z4, 4, 0, 0, &mut w), KwStatus::Ok);
        assert_eq!(kw_weight_order(w), 4);
        kw_weight_free(w);
        kw_square_free(z4);
    }
    unsafe { kw_square_free(z3) };
}

#[test]
fn decisions_and_searches() {
    let z4 = group("cyclic:4");
    let klein = group("sum:2,2");
    unsafe {
        let (mut feasible, mut w) = (-1, ptr::null_mut());
        assert_eq!(kw_decide(z4, 1, &mut feasible, &mut w), KwStatus::Ok);
        assert_eq!(feasible, 0);
        assert!(w.is_null());
        assert_eq!(kw_decide(klein, 1, &mut feasible, &mut w), KwStatus::Ok);
        assert_eq!(feasible, 1);
        let (mut kind, mut len) = (KwClassKind::Unclassified, 0);
        kw_classify(klein, w, 1, &mut kind, &mut len);
        assert_eq!(kind, KwClassKind::Exact);
        kw_weight_free(w);
        assert_eq!(kw_decide(z4, 3, &mut feasible, ptr::null_mut()), KwStatus::Ok);

        let mut count = 0u64;
        assert_eq!(kw_count_transversals(klein, &mut count), KwStatus::Ok);
        assert_eq!(count, 8);
        assert_eq!(kw_count_near_transversals(z4, 1, &mut count), KwStatus::Ok);
        assert!(count > 0);

        let mut result = KwPlexResult::BudgetExceeded;
        let mut plex = ptr::null_mut();
        assert_eq!(kw_find_k_plex(z4, 1, 0, &mut result, &mut plex), KwStatus::Ok);
        assert_eq!(result, KwPlexResult::Exhausted);
        assert!(plex.is_null());
        assert_eq!(kw_find_k_plex(z4, 2, 0, &mut result, &mut plex), KwStatus::Ok);
        assert_eq!(result, KwPlexResult::Found);
        kw_classify(z4, plex, 2, &mut kind, &mut len);
        assert_eq!(kind, KwClassKind::Exact);
        kw_weight_free(plex);
        assert_eq!(kw_find_k_plex(z4, 2, 1, &mut result, ptr::null_mut()), KwStatus::Ok);
        assert_eq!(result, KwPlexResult::BudgetExceeded);

        let mut holds = 0;
        let spec = CString::new("cyclic:6").unwrap();
        assert_eq!(kw_verify_dichotomy(spec.as_ptr(), &mut holds), KwStatus::Ok);
        assert_eq!(holds, 1);
        let spec = CString::new("cyclic:9").unwrap();
        assert_eq!(kw_verify_dichotomy(spec.as_ptr(), &mut holds), KwStatus::OutOfRange);

        kw_square_free(z4);
        kw_square_free(klein);
    }
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/kweights.h")).unwrap();
    for name in [
        "kw_last_error", "kw_string_free", "kw_square_from_flat", "kw_square_parse", "kw_square_group",
        "kw_square_free", "kw_square_order", "kw_square_get", "kw_square_to_string", "kw_weight_from_flat",
        "kw_weight_parse", "kw_weight_construct", "kw_weight_free", "kw_weight_order", "kw_weight_get",
        "kw_classify", "kw_decide", "kw_count_transversals", "kw_count_near_transversals",
        "kw_find_k_plex", "kw_verify_dichotomy", "typedef struct KwSquare KwSquare",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
