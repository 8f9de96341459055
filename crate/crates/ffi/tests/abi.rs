use std::ffi::CStr;
use std::ptr;

use eostrata_ffi::*;

fn last_error() -> String {
    let mut buf = [0 as std::ffi::c_char; 256];
    unsafe {
        eo_last_error(buf.as_mut_ptr(), buf.len());
        CStr::from_ptr(buf.as_ptr()).to_string_lossy().into_owned()
    }
}

#[test]
fn weyl_roundtrip() {
    unsafe {
        let mut w = ptr::null_mut();
        let vals = [2usize, 1, 4, 3];
        assert_eq!(eo_weyl_from_one_line(vals.as_ptr(), 4, &mut w), EoStatus::Ok);
        assert_eq!(eo_weyl_rank(w), 2);
        assert_eq!(eo_weyl_length(w), 1);
        let mut out = [0usize; 4];
        assert_eq!(eo_weyl_one_line(w, out.as_mut_ptr(), 4), EoStatus::Ok);
        assert_eq!(out, vals);
        assert_eq!(eo_weyl_one_line(w, out.as_mut_ptr(), 3), EoStatus::BufferTooSmall);
        let mut lifted = ptr::null_mut();
        assert_eq!(eo_weyl_lift(w, 3, &mut lifted), EoStatus::Ok);
        assert_eq!(eo_weyl_rank(lifted), 3);
        eo_weyl_free(lifted);
        eo_weyl_free(w);
    }
}

#[test]
fn errors_carry_messages() {
    unsafe {
        let mut w = ptr::null_mut();
        let vals = [2usize, 1, 3, 4];
        assert_eq!(eo_weyl_from_one_line(vals.as_ptr(), 4, &mut w), EoStatus::InvalidArgument);
        assert!(w.is_null());
        assert!(last_error().contains("symmetric permutation"));
        assert_eq!(eo_weyl_from_one_line(vals.as_ptr(), 4, ptr::null_mut()), EoStatus::NullPointer);
        let mut cen = ptr::null_mut();
        assert_eq!(eo_census_run(1, 4, 1, &mut cen), EoStatus::InvalidArgument);
        assert!(last_error().contains("not prime"));
    }
}

#[test]
fn census_through_abi() {
    unsafe {
        let mut cen = ptr::null_mut();
        assert_eq!(eo_census_run(1, 2, 2, &mut cen), EoStatus::Ok);
        assert_eq!(eo_census_len(cen), 2);
        assert!(eo_census_checks_pass(cen));
        let mut counts = Vec::new();
        for i in 0..2 {
            let mut n = 0u64;
            let mut label = ptr::null_mut();
            assert_eq!(eo_census_record(cen, i, &mut n, &mut label), EoStatus::Ok);
            assert_eq!(eo_weyl_length(label), i);
            eo_weyl_free(label);
            counts.push(n);
        }
        assert_eq!(counts, vec![5, 12]);
        let mut n = 0u64;
        assert_eq!(eo_census_record(cen, 2, &mut n, ptr::null_mut()), EoStatus::InvalidArgument);
        eo_census_free(cen);
    }
}

#[test]
fn classify_and_eo_type_agree() {
    unsafe {
        // the line spanned by (1, t) in F_16^2
        let codes = [1u32, 2];
        let mut label = ptr::null_mut();
        assert_eq!(eo_classify_lagrangian(2, 4, 1, codes.as_ptr(), &mut label), EoStatus::Ok);
        assert_eq!(eo_weyl_length(label), 1);
        let mut lifted = ptr::null_mut();
        assert_eq!(eo_weyl_lift(label, 2, &mut lifted), EoStatus::Ok);
        let mut eo = ptr::null_mut();
        assert_eq!(eo_type_of_lagrangian(2, 4, 1, 2, codes.as_ptr(), &mut eo), EoStatus::Ok);
        let (mut a, mut b) = ([0usize; 4], [0usize; 4]);
        eo_weyl_one_line(lifted, a.as_mut_ptr(), 4);
        eo_weyl_one_line(eo, b.as_mut_ptr(), 4);
        assert_eq!(a, b);
        for h in [label, lifted, eo] {
            eo_weyl_free(h);
        }
        let zero = [0u32, 0];
        assert_eq!(eo_classify_lagrangian(2, 4, 1, zero.as_ptr(), &mut label), EoStatus::InvalidArgument);
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(eo_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
