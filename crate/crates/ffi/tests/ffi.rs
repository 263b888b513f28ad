use std::ffi::{c_char, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use qheis_ffi::*;

fn z(re: f64) -> QheisComplex {
    QheisComplex { re, im: 0.0 }
}

fn params(h: f64, w: f64, d: u64) -> *mut QheisParams {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { qheis_params_new(z(h), z(w), z(1.0), z(0.3), d, &mut p) }, QheisStatus::Ok);
    p
}

fn last_error() -> String {
    let mut buf = vec![0 as c_char; 256];
    let n = unsafe { qheis_last_error(buf.as_mut_ptr(), buf.len()) };
    let bytes: Vec<u8> = buf[..n.min(255)].iter().map(|&b| b as u8).collect();
    String::from_utf8(bytes).unwrap()
}

#[test]
fn verify_qybe_through_the_abi() {
    let mut r = QheisCheckResult::default();
    let s = unsafe { qheis_verify(QheisCheck::Qybe, QheisPreset::TwoParameter, 3, 3, &mut r) };
    assert_eq!(s, QheisStatus::Ok);
    assert!(r.pass);
    assert_eq!(r.residual_terms, 0);
    let s = unsafe { qheis_verify(QheisCheck::Rtt, QheisPreset::TwoParameter, 3, 3, &mut r) };
    assert_eq!(s, QheisStatus::Ok);
    assert!(r.pass);
}

#[test]
fn failing_check_is_not_an_error() {
    let mut r = QheisCheckResult::default();
    let s = unsafe { qheis_verify(QheisCheck::URibbon, QheisPreset::TwoParameter, 3, 3, &mut r) };
    assert_eq!(s, QheisStatus::Ok);
    assert!(!r.pass);
    assert!(r.residual_terms > 0);
}

#[test]
fn rmatrix_entries() {
    let p = params(0.3, 0.2, 4);
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { qheis_rmatrix(p, p, false, &mut m) }, QheisStatus::Ok);
    assert_eq!(unsafe { (qheis_matrix_rows(m), qheis_matrix_cols(m)) }, (16, 16));
    let mut v = QheisComplex::default();
    // R|0,0⟩ = |0,0⟩
    assert_eq!(unsafe { qheis_matrix_get(m, 0, 0, &mut v) }, QheisStatus::Ok);
    assert!((v.re - 1.0).abs() < 1e-14 && v.im.abs() < 1e-14);
    assert_eq!(unsafe { qheis_matrix_get(m, 16, 0, &mut v) }, QheisStatus::OutOfRange);
    assert!(last_error().contains("outside"));

    let mut inv = ptr::null_mut();
    assert_eq!(unsafe { qheis_rmatrix(p, p, true, &mut inv) }, QheisStatus::Ok);
    // R^{-1}(e, e) R(e, e) = 1 on |0,0⟩
    let mut a = QheisComplex::default();
    let mut sum = 0.0;
    for k in 0..16 {
        let mut b = QheisComplex::default();
        unsafe {
            qheis_matrix_get(inv, 0, k, &mut a);
            qheis_matrix_get(m, k, 0, &mut b);
        }
        sum += a.re * b.re - a.im * b.im;
    }
    assert!((sum - 1.0).abs() < 1e-12);
    unsafe {
        qheis_matrix_free(m);
        qheis_matrix_free(inv);
        qheis_params_free(p);
    }
}

#[test]
fn braid_and_invariant() {
    let text = CString::new("B2: s1 s1 s1").unwrap();
    let mut b = ptr::null_mut();
    assert_eq!(unsafe { qheis_braid_parse(text.as_ptr(), &mut b) }, QheisStatus::Ok);
    assert_eq!(unsafe { (qheis_braid_strands(b), qheis_braid_writhe(b)) }, (2, 3));
    let p = params(0.05, 0.2, 8);
    let mut inv = QheisInvariant::default();
    assert_eq!(unsafe { qheis_link_invariant(b, p, 1e-6, &mut inv) }, QheisStatus::Ok);
    let word = qheis::braid::parse_braid("B2: s1 s1 s1").unwrap();
    let rp = qheis::fock::RepParams::real(0.05, 0.2, 1.0, 0.3, 8).unwrap();
    let direct = qheis::braid::link_invariant(&word, &rp, 1e-6);
    assert_eq!([inv.value.re, inv.value.im], direct.value);
    assert_eq!(inv.converged, direct.converged);
    assert_eq!(inv.strands, 2);
    unsafe {
        qheis_braid_free(b);
        qheis_params_free(p);
    }
}

#[test]
fn errors_map_to_status_codes() {
    let mut p = ptr::null_mut();
    let s = unsafe { qheis_params_new(z(0.1), z(0.0), z(1.0), z(0.0), 1, &mut p) };
    assert_eq!(s, QheisStatus::InvalidArgument);
    assert!(p.is_null());
    assert!(last_error().contains("cutoff"));

    let bad = CString::new("B2: s2").unwrap();
    let mut b = ptr::null_mut();
    assert_eq!(unsafe { qheis_braid_parse(bad.as_ptr(), &mut b) }, QheisStatus::ParseError);
    assert_eq!(unsafe { qheis_braid_parse(ptr::null(), &mut b) }, QheisStatus::NullPointer);

    let mut r = QheisCheckResult::default();
    assert_eq!(
        unsafe { qheis_verify(QheisCheck::Qybe, QheisPreset::StandardH, 0, 3, &mut r) },
        QheisStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { qheis_verify(QheisCheck::Qybe, QheisPreset::StandardH, 2, 2, ptr::null_mut()) },
        QheisStatus::NullPointer
    );

    let p1 = params(0.3, 0.2, 4);
    let p2 = params(0.3, 0.2, 5);
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { qheis_rmatrix(p1, p2, false, &mut m) }, QheisStatus::InvalidArgument);
    unsafe {
        qheis_params_free(p1);
        qheis_params_free(p2);
        // null handles are accepted by every destructor and accessor
        qheis_params_free(ptr::null_mut());
        qheis_braid_free(ptr::null_mut());
        qheis_matrix_free(ptr::null_mut());
        assert_eq!(qheis_matrix_rows(ptr::null()), 0);
    }
}

#[test]
fn last_error_truncates_and_reports_length() {
    let mut p = ptr::null_mut();
    unsafe { qheis_params_new(z(0.1), z(0.0), z(1.0), z(0.0), 0, &mut p) };
    let full = unsafe { qheis_last_error(ptr::null_mut(), 0) };
    let mut small = [0 as c_char; 8];
    let n = unsafe { qheis_last_error(small.as_mut_ptr(), small.len()) };
    assert_eq!(n, full);
    assert_eq!(small[7], 0);
}

/// Compiles a C program against the generated header and links it with the static library.
#[test]
fn c_program_links_against_the_header() {
    let Ok(cc) = Command::new("cc").arg("--version").output() else {
        eprintln!("no C compiler; skipping");
        return;
    };
    assert!(cc.status.success());
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let deps = std::env::current_exe().unwrap().parent().unwrap().to_path_buf();
    let lib = deps.parent().unwrap().join("libqheis_ffi.a");
    if !lib.exists() {
        let mut build = Command::new(env!("CARGO"));
        build.args(["build", "--lib", "-p", "qheis-ffi"]).current_dir(&manifest);
        if deps.parent().unwrap().ends_with("release") {
            build.arg("--release");
        }
        assert!(build.status().unwrap().success());
    }
    assert!(lib.exists(), "{}", lib.display());
    let dir = std::env::temp_dir().join(format!("qheis-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("main.c");
    std::fs::write(
        &src,
        r#"
#include <stdio.h>
#include "qheis.h"
int main(void) {
    QheisCheckResult r;
    if (qheis_verify(QHEIS_CHECK_QYBE, QHEIS_PRESET_STANDARD_H, 3, 1, &r) != QHEIS_STATUS_OK) return 2;
    QheisBraid *b = NULL;
    if (qheis_braid_parse("B2: s1", &b) != QHEIS_STATUS_OK) return 3;
    QheisBraid *bad = NULL;
    QheisStatus s = qheis_braid_parse("B2: s5", &bad);
    char msg[128];
    qheis_last_error(msg, sizeof msg);
    printf("%d %llu %lld %d %s\n", r.pass, (unsigned long long)r.residual_terms,
           (long long)qheis_braid_writhe(b), (int)s, msg);
    qheis_braid_free(b);
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.join("main");
    let out = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&exe).output().unwrap();
    assert_eq!(run.status.code(), Some(0));
    let stdout = String::from_utf8(run.stdout).unwrap();
    assert!(stdout.starts_with("1 0 1 3 braid parse error"), "{stdout}");
    std::fs::remove_dir_all(&dir).unwrap();
}
