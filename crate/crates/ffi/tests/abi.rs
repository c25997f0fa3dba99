use std::ffi::{CStr, CString};
use std::ptr;

use moebius_dual_ffi::*;

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    md_string_free(s);
    out
}

#[test]
fn partition_lattice_mu_bottom_top() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(md_poset_partitions(3, &mut p), MdStatus::Ok);
        assert_eq!(md_poset_len(p), 5);
        let mut mu = 0;
        assert_eq!(md_poset_mu(p, 0, 4, &mut mu), MdStatus::Ok);
        assert_eq!(mu, 2);
        let mut label = ptr::null_mut();
        assert_eq!(md_poset_label(p, 4, &mut label), MdStatus::Ok);
        assert_eq!(take(label), "{1 2 3}");
        md_poset_free(p);
    }
}

#[test]
fn dual_and_certificate() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(md_poset_subsets(2, &mut p), MdStatus::Ok);
        let json = CString::new(r#"{"rows":4,"cols":4,"entries":[["1/4","1/4","1/4","1/4"],["1/4","1/4","1/4","1/4"],["1/4","1/4","1/4","1/4"],["1/4","1/4","1/4","1/4"]]}"#).unwrap();
        let mut k = ptr::null_mut();
        assert_eq!(md_matrix_from_json(json.as_ptr(), &mut k), MdStatus::Ok);
        let mut q = ptr::null_mut();
        assert_eq!(md_dual(p, k, MdVariant::Zeta, &mut q), MdStatus::Ok);
        assert_eq!((md_matrix_rows(q), md_matrix_cols(q)), (4, 4));
        let mut e = ptr::null_mut();
        assert_eq!(md_matrix_entry(q, 3, 3, &mut e), MdStatus::Ok);
        assert_eq!(take(e), "1/1");
        let mut cert = ptr::null_mut();
        assert_eq!(
            md_certificate_json(p, k, MdVariant::Zeta, &mut cert),
            MdStatus::Ok
        );
        let v: serde_json::Value = serde_json::from_str(&take(cert)).unwrap();
        assert_eq!(v["condition_i"], true);
        let mut text = ptr::null_mut();
        assert_eq!(md_matrix_to_json(q, &mut text), MdStatus::Ok);
        let round = CString::new(take(text)).unwrap();
        let mut q2 = ptr::null_mut();
        assert_eq!(md_matrix_from_json(round.as_ptr(), &mut q2), MdStatus::Ok);
        let mut e2 = ptr::null_mut();
        assert_eq!(md_matrix_entry(q2, 0, 3, &mut e2), MdStatus::Ok);
        assert_eq!(take(e2), "1/4");
        for m in [k, q, q2] {
            md_matrix_free(m);
        }
        md_poset_free(p);
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let bad = CString::new(r#"{"rows":1,"cols":1,"entries":[[0.5]]}"#).unwrap();
        let mut m = ptr::null_mut();
        assert_eq!(md_matrix_from_json(bad.as_ptr(), &mut m), MdStatus::Parse);
        assert!(m.is_null());
        let msg = CStr::from_ptr(md_last_error_message()).to_str().unwrap();
        assert!(msg.contains("p/q"), "{msg}");

        let mut p = ptr::null_mut();
        assert_eq!(md_poset_partitions(20, &mut p), MdStatus::SizeOverflow);
        assert_eq!(md_poset_subsets(2, ptr::null_mut()), MdStatus::NullPointer);
        assert_eq!(md_poset_chain(3, &mut p), MdStatus::Ok);
        assert!(md_last_error_message().is_null());
        let mut mu = 0;
        assert_eq!(md_poset_mu(p, 0, 9, &mut mu), MdStatus::InvalidArgument);
        let mut wrong = ptr::null_mut();
        let two = CString::new(r#"{"rows":2,"cols":2,"entries":[["1","0"],["0","1"]]}"#).unwrap();
        assert_eq!(md_matrix_from_json(two.as_ptr(), &mut wrong), MdStatus::Ok);
        let mut q = ptr::null_mut();
        assert_eq!(
            md_dual(p, wrong, MdVariant::Moebius, &mut q),
            MdStatus::InvalidArgument
        );
        md_matrix_free(wrong);
        md_poset_free(p);
        md_poset_free(ptr::null_mut());
    }
}

#[test]
fn cannings_and_suite() {
    unsafe {
        let mut ok = false;
        let mut json = ptr::null_mut();
        assert_eq!(
            md_cannings_verify(MdModel::Moran, 3, 2, &mut ok, &mut json),
            MdStatus::Ok
        );
        assert!(ok);
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(v["T"], 2);
        assert_eq!(
            md_cannings_verify(MdModel::Moran, 1, 1, &mut ok, ptr::null_mut()),
            MdStatus::InvalidArgument
        );
        let mut passed = false;
        assert_eq!(
            md_verify_all(2, 2000, 1, &mut passed, ptr::null_mut()),
            MdStatus::Ok
        );
        assert!(passed);
    }
}

#[test]
fn header_matches_exports() {
    let header = include_str!("../include/moebius_dual.h");
    for name in [
        "md_last_error_message",
        "md_string_free",
        "md_poset_subsets",
        "md_poset_partitions",
        "md_poset_chain",
        "md_poset_free",
        "md_poset_len",
        "md_poset_label",
        "md_poset_mu",
        "md_poset_zeta",
        "md_poset_moebius",
        "md_matrix_from_json",
        "md_matrix_to_json",
        "md_matrix_rows",
        "md_matrix_cols",
        "md_matrix_entry",
        "md_matrix_free",
        "md_dual",
        "md_certificate_json",
        "md_cannings_verify",
        "md_verify_all",
    ] {
        assert!(
            header.contains(&format!("{name}(")),
            "{name} missing from header"
        );
    }
    assert!(header.contains("typedef struct MdPoset MdPoset;"));
}
