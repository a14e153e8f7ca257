use std::ffi::{CStr, CString};
use std::ptr;

use orthosps_ffi::*;

fn last_error() -> String {
    let msg = orthosps_last_error_message();
    assert!(!msg.is_null());
    unsafe { CStr::from_ptr(msg) }.to_str().unwrap().to_owned()
}

#[test]
fn generate_query_serialize_and_parse() {
    unsafe {
        let mut mo2 = ptr::null_mut();
        assert_eq!(orthosps_gen_mo(2, &mut mo2), OrthospsStatus::Ok);
        assert_eq!(orthosps_state_count(mo2), 4);
        assert_eq!(orthosps_property_count(mo2), 6);

        let mut count = 0;
        assert_eq!(orthosps_classical_property_count(mo2, &mut count), OrthospsStatus::Ok);
        assert_eq!(count, 2);
        assert_eq!(orthosps_classical_state_count(mo2, &mut count), OrthospsStatus::Ok);
        assert_eq!(count, 1);

        let mut text = ptr::null_mut();
        assert_eq!(orthosps_serialize(mo2, &mut text), OrthospsStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(orthosps_parse(text, &mut back), OrthospsStatus::Ok);
        assert_eq!(orthosps_property_count(back), 6);

        orthosps_string_free(text);
        orthosps_free(back);
        orthosps_free(mo2);
    }
}

#[test]
fn compose_and_check() {
    unsafe {
        let mut b2 = ptr::null_mut();
        let mut mo3 = ptr::null_mut();
        assert_eq!(orthosps_gen_boolean(2, &mut b2), OrthospsStatus::Ok);
        assert_eq!(orthosps_gen_mo(3, &mut mo3), OrthospsStatus::Ok);
        let parts = [b2 as *const _, mo3 as *const _];
        let mut both = ptr::null_mut();
        assert_eq!(orthosps_compose(parts.as_ptr(), 2, 7, &mut both), OrthospsStatus::Ok);
        assert_eq!(orthosps_property_count(both), 4 * 8);
        let mut count = 0;
        assert_eq!(orthosps_classical_state_count(both, &mut count), OrthospsStatus::Ok);
        assert_eq!(count, 3);
        let mut passed = -1;
        assert_eq!(orthosps_check(both, &mut passed), OrthospsStatus::Ok);
        assert_eq!(passed, 1);
        for h in [b2, mo3, both] {
            orthosps_free(h);
        }
    }
}

#[test]
fn errors_map_to_status_codes() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(orthosps_gen_mo(1, &mut out), OrthospsStatus::InvalidArgument);
        assert!(out.is_null());
        assert!(last_error().starts_with("InvalidParameter"));

        assert_eq!(orthosps_gen_boolean(40, &mut out), OrthospsStatus::TooLarge);

        let broken = CString::new("{ not json").unwrap();
        assert_eq!(orthosps_parse(broken.as_ptr(), &mut out), OrthospsStatus::Syntax);
        assert!(last_error().starts_with("SyntaxError"));

        let no_top = CString::new(
            r#"{"format_version":"1","states":["a","b"],"properties":[{"kappa":[],"perp":1},{"kappa":["a"],"perp":0}]}"#,
        )
        .unwrap();
        assert_eq!(orthosps_parse(no_top.as_ptr(), &mut out), OrthospsStatus::Invalid);
        assert!(last_error().starts_with("MissingTop"));

        assert_eq!(orthosps_parse(ptr::null(), &mut out), OrthospsStatus::NullPointer);
        assert_eq!(orthosps_compose(ptr::null(), 0, 0, &mut out), OrthospsStatus::InvalidArgument);
        let mut count = 0;
        assert_eq!(orthosps_classical_state_count(ptr::null(), &mut count), OrthospsStatus::NullPointer);
        assert_eq!(orthosps_state_count(ptr::null()), 0);
        orthosps_free(ptr::null_mut());
        orthosps_string_free(ptr::null_mut());
    }
}
