use std::ffi::{c_char, CStr, CString};
use std::ptr;

use kshadow_ffi::*;

fn cs(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    ks_string_free(s);
    out
}

unsafe fn last_error() -> String {
    let p = ks_last_error();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_str().unwrap().to_string()
}

unsafe fn group(text: &str) -> *mut KsGroup {
    let mut g = ptr::null_mut();
    assert_eq!(ks_group_parse(cs(text).as_ptr(), &mut g), KsStatus::Ok);
    g
}

unsafe fn graded(text: &str) -> *mut KsGraded {
    let mut g = ptr::null_mut();
    assert_eq!(ks_graded_parse(cs(text).as_ptr(), &mut g), KsStatus::Ok);
    g
}

unsafe fn show(g: *mut KsGroup) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(ks_group_to_string(g, &mut s), KsStatus::Ok);
    ks_group_free(g);
    take(s)
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(ks_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn group_accessors() {
    unsafe {
        let g = group("Z/3 + Z^2 + Z/4");
        let mut n = 0usize;
        assert_eq!(ks_group_free_rank(g, &mut n), KsStatus::Ok);
        assert_eq!(n, 2);
        assert_eq!(ks_group_torsion_count(g, &mut n), KsStatus::Ok);
        assert_eq!(n, 1);
        let mut s = ptr::null_mut();
        assert_eq!(ks_group_torsion_factor(g, 0, &mut s), KsStatus::Ok);
        assert_eq!(take(s), "12");
        assert_eq!(ks_group_torsion_factor(g, 1, &mut s), KsStatus::OutOfRange);
        assert!(last_error().contains("out of range"));
        assert_eq!(show(g), "Z^2 + Z/12");
        assert!(ks_last_error().is_null());
    }
}

#[test]
fn parse_errors_carry_position() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(ks_group_parse(cs("Z + Z/1").as_ptr(), &mut g), KsStatus::Parse);
        assert!(g.is_null());
        assert!(last_error().contains("position 7"), "{}", last_error());
        let mut h = ptr::null_mut();
        assert_eq!(ks_graded_parse(cs("[Z ; Z").as_ptr(), &mut h), KsStatus::Parse);
        let bad = [0xffu8, 0];
        assert_eq!(ks_group_parse(bad.as_ptr().cast(), &mut g), KsStatus::InvalidUtf8);
    }
}

#[test]
fn null_pointers_are_rejected() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(ks_group_parse(ptr::null(), &mut g), KsStatus::NullPointer);
        assert_eq!(ks_group_parse(cs("Z").as_ptr(), ptr::null_mut()), KsStatus::NullPointer);
        let mut n = 0usize;
        assert_eq!(ks_group_free_rank(ptr::null(), &mut n), KsStatus::NullPointer);
        assert!(last_error().contains("null"));
        ks_group_free(ptr::null_mut());
        ks_graded_free(ptr::null_mut());
        ks_string_free(ptr::null_mut());
    }
}

#[test]
fn bifunctors_and_dual() {
    unsafe {
        let z = group("Z");
        let z4 = group("Z/4");
        let z6 = group("Z/6");
        let cases = [
            (KsFunctor::Hom, z4, z6, "Z/2"),
            (KsFunctor::Ext, z4, z, "Z/4"),
            (KsFunctor::Tor, z4, z6, "Z/2"),
            (KsFunctor::Tensor, z, z6, "Z/6"),
            (KsFunctor::Hom, z4, z, "0"),
        ];
        for (f, g, h, want) in cases {
            let mut out = ptr::null_mut();
            assert_eq!(ks_bifunctor(f as u32, g, h, &mut out), KsStatus::Ok);
            assert_eq!(show(out), want, "{f:?}");
        }
        let mut out = ptr::null_mut();
        assert_eq!(ks_bifunctor(9, z, z, &mut out), KsStatus::OutOfRange);
        assert_eq!(ks_pontryagin_dual(z6, &mut out), KsStatus::Ok);
        assert_eq!(show(out), "Z/6");
        assert_ne!(ks_pontryagin_dual(z, &mut out), KsStatus::Ok);
        for g in [z, z4, z6] {
            ks_group_free(g);
        }
    }
}

#[test]
fn graded_and_kk() {
    unsafe {
        let a = graded("[Z/2 ; 0]");
        let b = graded("[Z ; 0]");
        let mut s = ptr::null_mut();
        assert_eq!(ks_graded_to_string(a, &mut s), KsStatus::Ok);
        assert_eq!(take(s), "[Z/2 ; 0]");
        let mut c = ptr::null_mut();
        assert_eq!(ks_graded_component(a, -1, &mut c), KsStatus::Ok);
        assert_eq!(show(c), "0");

        let (mut t, mut h, mut e) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
        assert_eq!(ks_kk(a, b, 1, &mut t, &mut h, &mut e), KsStatus::Ok);
        assert_eq!(show(t), "Z/2");
        assert_eq!(show(h), "0");
        assert_eq!(show(e), "Z/2");
        assert_eq!(ks_kk(a, b, 0, &mut t, ptr::null_mut(), ptr::null_mut()), KsStatus::Ok);
        assert_eq!(show(t), "0");
        ks_graded_free(a);
        ks_graded_free(b);
    }
}

#[test]
fn run_job_matches_cli_document() {
    let job = r#"{
        "schema_version": 1,
        "groups": { "A": "[Z/2 ; 0]" },
        "commands": [
            { "op": "kk", "a": "A", "b": "[Z ; 0]", "deg": 1 },
            { "op": "thm44", "a": "[Z ; 0]" }
        ]
    }"#;
    unsafe {
        let mut out = ptr::null_mut();
        let mut code = -1;
        assert_eq!(ks_run_job(cs(job).as_ptr(), &mut out, &mut code), KsStatus::Ok);
        let doc = take(out);
        assert_eq!(code, 2);
        let (want, want_code) = kshadow::cli::run_job_json(job);
        assert_eq!(doc, want);
        assert_eq!(code, want_code);
        assert!(doc.contains("\"kind\": \"hypothesis\""), "{doc}");

        assert_eq!(ks_run_job(cs("{").as_ptr(), &mut out, &mut code), KsStatus::Ok);
        assert_eq!(code, 1);
        assert!(take(out).contains("validation"));
        assert_eq!(
            ks_run_job(cs("{}").as_ptr(), &mut out, ptr::null_mut()),
            KsStatus::NullPointer
        );
    }
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/kshadow.h")).unwrap();
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/src/lib.rs")).unwrap();
    let names: Vec<&str> = src
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(names.len() >= 17, "{names:?}");
    for n in names {
        assert!(header.contains(&format!("{n}(")), "{n} missing from header");
    }
}
