use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use entmix_ffi::*;

fn last_error() -> String {
    let p = entmix_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn construct(reference: &str) -> *mut EntmixState {
    let c = CString::new(reference).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { entmix_construct(c.as_ptr(), &mut out) }, EntmixStatus::Ok, "{reference}");
    out
}

#[test]
fn json_round_trip_through_handles() {
    let ghz = construct("ghz:n=3,d=3");
    let mut json = ptr::null_mut();
    unsafe {
        assert_eq!(entmix_state_to_json(ghz, &mut json), EntmixStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(entmix_state_from_json(json, &mut back), EntmixStatus::Ok);
        let (mut n, mut d, mut dim) = (0, 0, 0);
        assert_eq!(entmix_state_shape(back, &mut n, &mut d, &mut dim), EntmixStatus::Ok);
        assert_eq!((n, d, dim), (3, 3, 27));
        entmix_string_free(json);
        entmix_state_free(back);
        entmix_state_free(ghz);
    }
}

#[test]
fn detectors_agree_with_the_library() {
    unsafe {
        let mut bell = ptr::null_mut();
        assert_eq!(entmix_bell(2, &mut bell), EntmixStatus::Ok);
        let mut c = 0.0;
        assert_eq!(entmix_concurrence(bell, &mut c), EntmixStatus::Ok);
        assert!((c - 1.0).abs() < 1e-12);
        let mut min = 0.0;
        assert_eq!(entmix_ppt_min_eigenvalue(bell, [1usize].as_ptr(), 1, &mut min), EntmixStatus::Ok);
        assert!((min + 0.5).abs() < 1e-12);
        entmix_state_free(bell);

        let mut s = ptr::null_mut();
        assert_eq!(entmix_stormer(3.5, &mut s), EntmixStatus::Ok);
        let (mut p, mut detected) = (0.0, true);
        assert_eq!(entmix_purity(s, &mut p), EntmixStatus::Ok);
        assert!((p - entmix_stormer_purity(3.5)).abs() < 1e-12);
        assert_eq!(entmix_purity_detected(s, &mut detected), EntmixStatus::Ok);
        assert!(!detected);
        entmix_state_free(s);

        let mut dicke = ptr::null_mut();
        assert_eq!(entmix_dicke(4, 2, &mut dicke), EntmixStatus::Ok);
        let mut json = ptr::null_mut();
        assert_eq!(entmix_detect_json(dicke, &mut json), EntmixStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        assert_eq!(v["purity"]["detected"], true);
        entmix_string_free(json);
        entmix_state_free(dicke);
    }
}

#[test]
fn errors_map_to_status_codes() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(entmix_stormer(6.0, &mut out), EntmixStatus::Positivity);
        assert!(out.is_null());
        assert!(last_error().contains("alpha"));
        assert_eq!(entmix_ghz(13, 2, 0, &mut out), EntmixStatus::Capacity);
        assert_eq!(entmix_ghz(3, 3, 1, &mut out), EntmixStatus::InvalidArgument);
        assert_eq!(entmix_ghz(3, 2, 7, &mut out), EntmixStatus::InvalidArgument);
        assert_eq!(entmix_bell(4, &mut out), EntmixStatus::InvalidArgument);
        assert_eq!(entmix_w(3, ptr::null_mut()), EntmixStatus::NullPointer);
        assert_eq!(entmix_state_from_json(ptr::null(), &mut out), EntmixStatus::NullPointer);
        let bad = CString::new("{\"n\": 2,").unwrap();
        assert_eq!(entmix_state_from_json(bad.as_ptr(), &mut out), EntmixStatus::Parse);
        assert!(last_error().contains("line 1"));

        let mut value = 0.0;
        assert_eq!(entmix_purity(ptr::null(), &mut value), EntmixStatus::NullPointer);
        let ghz = construct("ghz:n=3");
        assert_eq!(entmix_concurrence(ghz, &mut value), EntmixStatus::Contract);
        assert_eq!(entmix_ppt_min_eigenvalue(ghz, [4usize].as_ptr(), 1, &mut value), EntmixStatus::Contract);
        entmix_state_free(ghz);
        entmix_state_free(ptr::null_mut());
        entmix_string_free(ptr::null_mut());
    }
}

fn target_dir() -> PathBuf {
    // test binaries live in <target>/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn header_compiles_and_links_from_c() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libentmix_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: static library or C compiler unavailable");
        return;
    }
    let exe = target_dir().join("entmix_ffi_smoke");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(manifest.join("tests").join("smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C smoke test failed to build");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}
