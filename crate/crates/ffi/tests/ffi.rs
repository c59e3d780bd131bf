use std::ffi::{CStr, CString};
use std::ptr;

use tanglebound_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(tb_last_error()) }
        .to_string_lossy()
        .into_owned()
}

fn ghz4() -> Vec<f64> {
    let mut a = vec![0.0; 32];
    a[0] = 0.5f64.sqrt();
    a[30] = 0.5f64.sqrt();
    a
}

#[test]
fn state_lifecycle() {
    let amps = ghz4();
    let mut s = ptr::null_mut();
    let st = unsafe { tb_state4_new(amps.as_ptr(), amps.len(), 0, &mut s) };
    assert_eq!(st, TbStatus::Ok);
    assert!(!s.is_null());
    assert_eq!(last_error(), "");

    let mut back = [0.0; 32];
    assert_eq!(
        unsafe { tb_state4_amps(s, back.as_mut_ptr()) },
        TbStatus::Ok
    );
    assert_eq!(back.to_vec(), amps);

    let mut inv = [0.0; 10];
    assert_eq!(
        unsafe { tb_invariants(s, TbTraced::A4 as u32, inv.as_mut_ptr()) },
        TbStatus::Ok
    );
    // GHZ4 purifies the two-branch GHZ mixture: only the 2-2 invariant survives
    assert!(inv[4].abs() > 1e-3);
    for k in [0, 1, 2, 3, 6, 7, 8, 9] {
        assert!(inv[k].abs() < 1e-14);
    }
    unsafe { tb_state4_free(s) };
    unsafe { tb_state4_free(ptr::null_mut()) };
}

#[test]
fn rejects_bad_input() {
    let mut s = ptr::null_mut();
    let amps = vec![0.0; 30];
    assert_eq!(
        unsafe { tb_state4_new(amps.as_ptr(), amps.len(), 0, &mut s) },
        TbStatus::InvalidArgument
    );
    assert!(last_error().contains("32"));
    assert!(s.is_null());

    let mut big = ghz4();
    big.iter_mut().for_each(|x| *x *= 2.0);
    assert_eq!(
        unsafe { tb_state4_new(big.as_ptr(), 32, 0, &mut s) },
        TbStatus::NotNormalized
    );
    assert_eq!(
        unsafe { tb_state4_new(big.as_ptr(), 32, 1, &mut s) },
        TbStatus::Ok
    );

    let zero = vec![0.0; 32];
    let mut z = ptr::null_mut();
    assert_eq!(
        unsafe { tb_state4_new(zero.as_ptr(), 32, 1, &mut z) },
        TbStatus::NotNormalized
    );

    let mut inv = [0.0; 10];
    assert_eq!(
        unsafe { tb_invariants(s, 1, inv.as_mut_ptr()) },
        TbStatus::InvalidArgument
    );
    let mut v = 0.0;
    assert_eq!(
        unsafe { tb_best_bound(s, 7, &mut v) },
        TbStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { tb_best_bound(ptr::null(), 0, &mut v) },
        TbStatus::NullPointer
    );
    assert_eq!(unsafe { tb_ghzw_bound(1.5, &mut v) }, TbStatus::OutOfRange);
    unsafe { tb_state4_free(s) };
}

#[test]
fn class_five_bound() {
    let a = [1.0, 0.0];
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { tb_class_representative(5, a.as_ptr(), 1, &mut s) },
        TbStatus::Ok
    );
    let mut v = 0.0;
    assert_eq!(
        unsafe { tb_best_bound(s, TbTriple::A1A2A3 as u32, &mut v) },
        TbStatus::Ok
    );
    assert!((v - 16.0 / 49.0).abs() < 1e-9);

    let mut c = TbCorrelation::default();
    assert_eq!(
        unsafe { tb_correlation(s, TbTriple::A1A2A3 as u32, &mut c) },
        TbStatus::Ok
    );
    assert!(c.n48 > 0.0 && c.three_way >= 0.0);

    let mut json = ptr::null_mut();
    assert_eq!(
        unsafe { tb_report_json(s, TbTriple::A1A2A3 as u32, &mut json) },
        TbStatus::Ok
    );
    let text = unsafe { CString::from_raw(json) }.into_string().unwrap();
    assert!(text.contains("\"triple\":\"A1A2A3\""));
    unsafe { tb_state4_free(s) };

    // class V takes one parameter
    let two = [1.0, 0.0, 2.0, 0.0];
    assert_eq!(
        unsafe { tb_class_representative(5, two.as_ptr(), 2, &mut s) },
        TbStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { tb_class_representative(10, ptr::null(), 0, &mut s) },
        TbStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { tb_class_representative(9, ptr::null(), 0, &mut s) },
        TbStatus::Ok
    );
    unsafe { tb_state4_free(s) };
}

#[test]
fn ghzw_values() {
    assert!((tb_ghzw_threshold() - 0.626851).abs() < 1e-5);
    let mut v = -1.0;
    assert_eq!(unsafe { tb_ghzw_bound(0.5, &mut v) }, TbStatus::Ok);
    assert_eq!(v, 0.0);
}

#[test]
fn string_free_accepts_null() {
    unsafe { tb_string_free(ptr::null_mut()) };
}

#[test]
fn header_lists_every_export() {
    let header = include_str!("../include/tanglebound.h");
    for name in [
        "tb_last_error",
        "tb_state4_new",
        "tb_state4_free",
        "tb_state4_amps",
        "tb_class_representative",
        "tb_invariants",
        "tb_correlation",
        "tb_best_bound",
        "tb_report_json",
        "tb_string_free",
        "tb_ghzw_threshold",
        "tb_ghzw_bound",
        "typedef struct TbState4 TbState4;",
    ] {
        assert!(header.contains(name), "{name}");
    }
}
