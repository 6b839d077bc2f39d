//! Exercises the C ABI through the exported symbols, exactly as a foreign
//! caller would: flat buffers in, out-pointers back, explicit frees.

use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

use nck_capi::*;

unsafe fn make_point_set(dim: usize, flat: &[f64]) -> *mut NckPointSet {
    let mut handle: *mut NckPointSet = ptr::null_mut();
    let status = nck_point_set_new(dim, flat.as_ptr(), flat.len() / dim, &mut handle);
    assert_eq!(status, NckStatus::NckOk);
    assert!(!handle.is_null());
    handle
}

#[test]
fn ball_and_diameter_through_the_abi() {
    unsafe {
        let ps = make_point_set(2, &[0.0, 0.0, 2.0, 0.0, 1.0, 0.1]);
        let mut diam = 0.0f64;
        assert_eq!(nck_diameter(ps, &mut diam), NckStatus::NckOk);
        assert!((diam - 2.0).abs() < 1e-12);

        let mut center = [0.0f64; 2];
        let mut radius = 0.0f64;
        assert_eq!(
            nck_chebyshev_ball(ps, 1e-9, 0, center.as_mut_ptr(), &mut radius),
            NckStatus::NckOk
        );
        assert!((radius - 1.0).abs() < 1e-9);
        assert!((center[0] - 1.0).abs() < 1e-9);

        let mut report = NckJungReport {
            diameter: 0.0,
            radius: 0.0,
            lower: 0.0,
            upper: 0.0,
            margin: 0.0,
            pass: 0,
        };
        assert_eq!(nck_jung_report(ps, 1e-9, &mut report), NckStatus::NckOk);
        assert_eq!(report.pass, 1);
        assert!(report.lower <= report.radius + 1e-9);
        nck_point_set_free(ps);
    }
}

#[test]
fn null_and_invalid_inputs_are_rejected() {
    unsafe {
        let mut handle: *mut NckPointSet = ptr::null_mut();
        assert_eq!(
            nck_point_set_new(2, ptr::null(), 3, &mut handle),
            NckStatus::NckNullPointer
        );
        // NaN coordinate
        let status = nck_point_set_new(1, [f64::NAN].as_ptr(), 1, &mut handle);
        assert_eq!(status, NckStatus::NckInvalidInput);
        let msg = CStr::from_ptr(nck_last_error_message());
        assert!(msg.to_string_lossy().contains("non-finite"));
        // zero points
        let status = nck_point_set_new(1, [0.0].as_ptr(), 0, &mut handle);
        assert_eq!(status, NckStatus::NckInvalidInput);

        let mut out = 0.0f64;
        assert_eq!(
            nck_diameter(ptr::null(), &mut out),
            NckStatus::NckNullPointer
        );
    }
}

/// A tiny two-member family document used by the family-level tests.
fn family_json() -> CString {
    let knots: Vec<f64> = (0..=16).map(|i| i as f64 / 16.0).collect();
    let fam = nck::function_space::Family::new(
        nck::function_space::Grid::new(knots.clone()).unwrap(),
        1,
        vec![
            ("id".into(), knots.iter().map(|&x| vec![x]).collect()),
            ("neg".into(), knots.iter().map(|&x| vec![1.0 - x]).collect()),
        ],
    )
    .unwrap();
    CString::new(nck::formats::family_to_json(&fam)).unwrap()
}

#[test]
fn family_json_round_trip_through_the_abi() {
    unsafe {
        let json = family_json();
        let mut fam: *mut NckFamily = ptr::null_mut();
        assert_eq!(nck_family_from_json(json.as_ptr(), &mut fam), NckStatus::NckOk);

        let mut dim = 0usize;
        let mut len = 0usize;
        assert_eq!(nck_family_dim(fam, &mut dim), NckStatus::NckOk);
        assert_eq!(nck_family_len(fam, &mut len), NckStatus::NckOk);
        assert_eq!((dim, len), (1, 2));

        let mut back: *mut c_char = ptr::null_mut();
        assert_eq!(nck_family_to_json(fam, &mut back), NckStatus::NckOk);
        assert_eq!(CStr::from_ptr(back).to_str().unwrap(), json.to_str().unwrap());
        nck_string_free(back);
        nck_family_free(fam);
    }
}

#[test]
fn bad_family_json_reports_parse_error() {
    unsafe {
        let json = CString::new("{\"a\": 0.0").unwrap();
        let mut fam: *mut NckFamily = ptr::null_mut();
        assert_eq!(
            nck_family_from_json(json.as_ptr(), &mut fam),
            NckStatus::NckParseError
        );
    }
}

#[test]
fn net_construction_and_bracket_through_the_abi() {
    unsafe {
        let json = family_json();
        let mut fam: *mut NckFamily = ptr::null_mut();
        assert_eq!(nck_family_from_json(json.as_ptr(), &mut fam), NckStatus::NckOk);

        let delta = 0.25;
        let mut omega = 0.0f64;
        assert_eq!(nck_modulus_omega(fam, delta, &mut omega), NckStatus::NckOk);
        assert!((omega - 0.25).abs() < 1e-12);

        let mut net: *mut NckFamily = ptr::null_mut();
        assert_eq!(
            nck_build_net(fam, delta, omega, 0.01, 0, 1e-9, &mut net),
            NckStatus::NckOk
        );
        let mut radius = f64::INFINITY;
        assert_eq!(nck_net_radius(fam, net, &mut radius), NckStatus::NckOk);
        assert!(radius <= 0.5 * omega + 0.01 + 1e-9);

        let mut bracket = NckBracket {
            omega_hat: 0.0,
            lower: 0.0,
            upper: 0.0,
            achieved: 0.0,
            epsilon: 0.0,
            pass: 0,
        };
        assert_eq!(
            nck_theorem_bracket(fam, delta, 0.01, 0, 1e-9, &mut bracket),
            NckStatus::NckOk
        );
        assert_eq!(bracket.pass, 1);
        assert!((bracket.omega_hat - omega).abs() < 1e-15);
        assert!(bracket.achieved <= bracket.upper + bracket.epsilon + 1e-9);

        // alpha below the measured modulus is a construction failure
        let mut tiny: *mut NckFamily = ptr::null_mut();
        assert_eq!(
            nck_build_net(fam, delta, omega / 10.0, 0.01, 0, 1e-9, &mut tiny),
            NckStatus::NckConstructionFailed
        );
        let msg = CStr::from_ptr(nck_last_error_message());
        assert!(msg.to_string_lossy().contains("alpha too small"));

        nck_family_free(net);
        nck_family_free(fam);
    }
}

#[test]
fn generated_header_declares_the_surface() {
    let header = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/include/nck.h"
    ))
    .expect("header is generated at build time");
    for symbol in [
        "typedef struct NckPointSet NckPointSet;",
        "typedef struct NckFamily NckFamily;",
        "NckStatus nck_point_set_new(",
        "NckStatus nck_chebyshev_ball(",
        "NckStatus nck_jung_report(",
        "NckStatus nck_family_from_json(",
        "NckStatus nck_build_net(",
        "NckStatus nck_theorem_bracket(",
        "void nck_string_free(",
        "const char *nck_last_error_message(void);",
    ] {
        assert!(header.contains(symbol), "header is missing {symbol:?}");
    }
}
