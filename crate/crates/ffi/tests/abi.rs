//! Calls through the C ABI from Rust, and a C program built against the
//! generated header.

use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use billiards_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn take_string(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { billiards_string_free(s) };
    out
}

fn last_error() -> String {
    let e = billiards_last_error();
    assert!(!e.is_null());
    unsafe { CStr::from_ptr(e) }.to_string_lossy().into_owned()
}

fn load(name: &str) -> *mut BilliardsPartition {
    let mut p = ptr::null_mut();
    let s = unsafe { billiards_partition_load(cstr(name).as_ptr(), &mut p) };
    assert_eq!(s, BilliardsStatus::Ok);
    p
}

#[test]
fn partition_handles() {
    let p = load("example-7.5");
    let mut m = 0;
    assert_eq!(unsafe { billiards_partition_size(p, &mut m) }, BilliardsStatus::Ok);
    assert_eq!(m, 6);
    unsafe { billiards_partition_free(p) };
    unsafe { billiards_partition_free(ptr::null_mut()) };

    let mut q = ptr::null_mut();
    let s = unsafe { billiards_partition_load(cstr("no-such-partition").as_ptr(), &mut q) };
    assert_eq!(s, BilliardsStatus::InvalidInput);
    assert!(q.is_null());
    assert!(!last_error().is_empty());
}

#[test]
fn invalid_partition_file() {
    let dir = std::env::temp_dir().join(format!("billiards-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, r#"{"vertices":[[1,0,1],[1,1,1],[0,1,1],[-1,0,1],[0,-1,1]]}"#).unwrap();
    let mut q = ptr::null_mut();
    let s = unsafe { billiards_partition_load(cstr(path.to_str().unwrap()).as_ptr(), &mut q) };
    assert_ne!(s, BilliardsStatus::Ok);
    assert!(q.is_null());
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn null_arguments() {
    let mut m = 0;
    assert_eq!(unsafe { billiards_partition_size(ptr::null(), &mut m) }, BilliardsStatus::NullPointer);
    assert_eq!(unsafe { billiards_partition_load(ptr::null(), ptr::null_mut()) }, BilliardsStatus::NullPointer);
    let p = load("square");
    assert_eq!(unsafe { billiards_partition_size(p, ptr::null_mut()) }, BilliardsStatus::NullPointer);
    unsafe { billiards_partition_free(p) };
}

#[test]
fn exact_phi() {
    let mut out = ptr::null_mut();
    let s = unsafe { billiards_phi_exact(cstr("45:35420").as_ptr(), 6, &mut out) };
    assert_eq!(s, BilliardsStatus::Ok);
    assert_eq!(take_string(out), "32243/39075");

    let mut out = ptr::null_mut();
    let s = unsafe { billiards_phi_exact(cstr("45:35420").as_ptr(), 5, &mut out) };
    assert_eq!(s, BilliardsStatus::InvalidInput);
    assert!(out.is_null());
}

#[test]
fn orbit_json() {
    let p = load("example-7.5");
    let mut out = ptr::null_mut();
    let s = unsafe { billiards_orbit_json(p, ptr::null(), cstr("4091,-1302,101").as_ptr(), ptr::null(), 1000, &mut out) };
    assert_eq!(s, BilliardsStatus::Ok);
    let text = take_string(out);
    assert!(text.contains("\"cycle\":\"35420\""), "{text}");

    let s = unsafe { billiards_orbit_json(p, ptr::null(), ptr::null(), ptr::null(), 1000, &mut out) };
    assert_eq!(s, BilliardsStatus::InvalidInput);
    let s = unsafe { billiards_orbit_json(p, ptr::null(), cstr("4091,-1302,101").as_ptr(), ptr::null(), 2, &mut out) };
    assert_eq!(s, BilliardsStatus::IterationCap);
    unsafe { billiards_partition_free(p) };
}

#[test]
fn jsr_bracket() {
    let p = load("square");
    let (mut lo, mut hi, mut cert) = (0.0, 0.0, false);
    let s = unsafe { billiards_jsr(p, 2, 1e-9, &mut lo, &mut hi, &mut cert) };
    assert_eq!(s, BilliardsStatus::Ok);
    assert!(cert && (lo - (1.0 + 2f64.sqrt())).abs() < 1e-12 && hi - lo < 1e-9);
    let s = unsafe { billiards_jsr(p, 0, 1e-9, &mut lo, &mut hi, &mut cert) };
    assert_eq!(s, BilliardsStatus::InvalidInput);
    unsafe { billiards_partition_free(p) };
}

/// Directory holding the library artifacts of this build.
fn artifact_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_the_header() {
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let lib = artifact_dir().join("libbilliards_ffi.a");
    assert!(lib.exists(), "missing {}", lib.display());
    let dir = std::env::temp_dir().join(format!("billiards-c-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("main.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include <string.h>
#include "billiards.h"

int main(void) {
    BilliardsPartition *p = NULL;
    if (billiards_partition_load("example-7.5", &p) != BILLIARDS_STATUS_OK) return 1;
    size_t m = 0;
    if (billiards_partition_size(p, &m) != BILLIARDS_STATUS_OK || m != 6) return 2;
    char *phi = NULL;
    if (billiards_phi_exact("45:02453", 6, &phi) != BILLIARDS_STATUS_OK) return 3;
    if (strcmp(phi, "62873/78150") != 0) return 4;
    billiards_string_free(phi);
    if (billiards_partition_size(NULL, &m) != BILLIARDS_STATUS_NULL_POINTER) return 5;
    if (billiards_last_error() == NULL) return 6;
    billiards_partition_free(p);
    puts("ok");
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.join("main");
    let cc = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .expect("C compiler available");
    assert!(cc.status.success(), "{}", String::from_utf8_lossy(&cc.stderr));
    let run = Command::new(&exe).output().unwrap();
    assert_eq!(run.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
    std::fs::remove_dir_all(dir).unwrap();
}
