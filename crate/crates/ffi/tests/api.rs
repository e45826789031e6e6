use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

use affhecke_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn group(name: &str) -> *mut AffheckeGroup {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { affhecke_group_new(c(name).as_ptr(), &mut g) }, AFFHECKE_OK);
    assert!(!g.is_null());
    g
}

fn take_string(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { affhecke_string_free(s) };
    out
}

fn last_error() -> String {
    let p = affhecke_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

#[test]
fn lengths_and_order() {
    let g = group("GL2");
    let mut len = 0usize;
    unsafe {
        assert_eq!(affhecke_length(g, c("t[1,0] * s1").as_ptr(), &mut len), AFFHECKE_OK);
        assert_eq!(len, 2);
        assert_eq!(affhecke_length(g, c("t[0,1] * s1").as_ptr(), &mut len), AFFHECKE_OK);
        assert_eq!(len, 0);
        let mut rank = 0usize;
        assert_eq!(affhecke_group_rank(g, &mut rank), AFFHECKE_OK);
        assert_eq!(rank, 2);
        let mut leq = false;
        assert_eq!(affhecke_bruhat_leq(g, c("omega(1)").as_ptr(), c("t[1,0]").as_ptr(), &mut leq), AFFHECKE_OK);
        assert!(leq);
        let mut s = ptr::null_mut();
        assert_eq!(affhecke_canonical_form(g, c("omega(1) * s0").as_ptr(), &mut s), AFFHECKE_OK);
        assert_eq!(take_string(s), "t[1,0]");
        affhecke_group_free(g);
    }
}

#[test]
fn kl_buffer_protocol() {
    let g = group("SL3");
    let (x, w) = (c("s1"), c("s1 * s2 * s0 * s2 * s1 * s0"));
    let mut len = 0usize;
    unsafe {
        let status = affhecke_kl_polynomial(g, c("e").as_ptr(), c("s1 * s0 * s1").as_ptr(), ptr::null_mut(), 0, &mut len);
        assert_eq!(status, AFFHECKE_BUFFER_TOO_SMALL);
        assert_eq!(len, 1);
        let mut buf = [0i64; 8];
        assert_eq!(affhecke_kl_polynomial(g, x.as_ptr(), w.as_ptr(), buf.as_mut_ptr(), buf.len(), &mut len), AFFHECKE_OK);
        assert!(len >= 1 && buf[0] == 1);
        assert_eq!(affhecke_kl_polynomial(g, w.as_ptr(), x.as_ptr(), buf.as_mut_ptr(), buf.len(), &mut len), AFFHECKE_OK);
        assert_eq!(len, 0);
        affhecke_group_free(g);
    }
}

#[test]
fn json_outputs() {
    let g = group("GL2");
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(affhecke_admissible_set_json(g, c("1,0").as_ptr(), &mut s), AFFHECKE_OK);
        let adm: Vec<String> = serde_json::from_str(&take_string(s)).unwrap();
        assert_eq!(adm.len(), 3);

        assert_eq!(affhecke_verify_theorem1_json(g, c("1,0").as_ptr(), &mut s), AFFHECKE_OK);
        let report: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
        assert_eq!(report["pass"], true);

        assert_eq!(affhecke_verify_theorem2_json(g, c("t[1,1]").as_ptr(), c("t[-1,0]").as_ptr(), &mut s), AFFHECKE_OK);
        let report: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
        assert_eq!(report["d"], 1);

        assert_eq!(affhecke_wakimoto_json(g, c("s1").as_ptr(), c("s0").as_ptr(), &mut s), AFFHECKE_OK);
        let terms: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
        assert_eq!(terms.as_array().unwrap().len(), 2);
        affhecke_group_free(g);
    }
}

#[test]
fn errors() {
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(affhecke_group_new(c("E9").as_ptr(), &mut g), AFFHECKE_CONFIG_ERROR);
        assert!(g.is_null());
        assert!(last_error().contains("E9"));
        assert_eq!(affhecke_group_new(ptr::null(), &mut g), AFFHECKE_NULL_POINTER);

        let g = group("GL2");
        let mut len = 0usize;
        assert_eq!(affhecke_length(g, c("s1 * q").as_ptr(), &mut len), AFFHECKE_PARSE_ERROR);
        assert!(last_error().contains("position 5"));
        assert_eq!(affhecke_length(g, c("t[1,0,0]").as_ptr(), &mut len), AFFHECKE_INVALID_ARGUMENT);
        assert_eq!(affhecke_length(g, c("e").as_ptr(), ptr::null_mut()), AFFHECKE_NULL_POINTER);
        let mut s = ptr::null_mut();
        assert_eq!(affhecke_admissible_set_json(g, c("0,1").as_ptr(), &mut s), AFFHECKE_INVALID_ARGUMENT);
        assert_eq!(affhecke_length(ptr::null(), c("e").as_ptr(), &mut len), AFFHECKE_NULL_POINTER);
        assert_eq!(affhecke_length(g, c("e").as_ptr(), &mut len), AFFHECKE_OK);
        assert!(affhecke_last_error().is_null());
        affhecke_group_free(g);
        affhecke_group_free(ptr::null_mut());
        affhecke_string_free(ptr::null_mut());
    }
}

#[test]
fn toml_groups_and_threads() {
    let toml = c("name = \"B2\"\ncartan = [[2, -1], [-2, 2]]\nlattice = \"adjoint\"\n");
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { affhecke_group_from_toml(toml.as_ptr(), &mut g) }, AFFHECKE_OK);
    let shared = g as usize;
    let handles: Vec<_> = (0..4)
        .map(|i| {
            std::thread::spawn(move || {
                let g = shared as *const AffheckeGroup;
                let w = c(["s1 * s2 * s1 * s0", "s0 * s2 * s1 * s2", "s2 * s0 * s2", "s1 * s0 * s1 * s2"][i]);
                let mut buf = [0i64; 4];
                let mut len = 0usize;
                let status = unsafe { affhecke_kl_polynomial(g, c("e").as_ptr(), w.as_ptr(), buf.as_mut_ptr(), 4, &mut len) };
                (status, len, buf[0])
            })
        })
        .collect();
    for h in handles {
        let (status, len, first) = h.join().unwrap();
        assert_eq!(status, AFFHECKE_OK);
        assert!(len == 0 || first == 1);
    }
    unsafe { affhecke_group_free(g) };
}
