use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use grouptk_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let mut buf = vec![0 as std::ffi::c_char; 256];
    unsafe {
        gtk_last_error(buf.as_mut_ptr(), buf.len());
        CStr::from_ptr(buf.as_ptr()).to_string_lossy().into_owned()
    }
}

#[test]
fn catalog_group_and_order() {
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(gtk_group_catalog(c("Q8").as_ptr(), &mut g), GtkStatus::Ok);
        let mut order = 0;
        assert_eq!(gtk_group_order(g, &mut order), GtkStatus::Ok);
        assert_eq!(order, 8);
        gtk_group_free(g);
    }
}

#[test]
fn presentation_group() {
    let mut g = ptr::null_mut();
    unsafe {
        let text = c("gens: a, b | rels: a^2, b^2, (a*b)^5");
        assert_eq!(gtk_group_from_presentation(text.as_ptr(), &mut g), GtkStatus::Ok);
        let mut order = 0;
        gtk_group_order(g, &mut order);
        assert_eq!(order, 10);
        gtk_group_free(g);
        assert_eq!(gtk_group_from_presentation(c("gens: a | rels: a^").as_ptr(), &mut g), GtkStatus::InvalidInput);
    }
}

#[test]
fn pi_n_refuses_disconnected_tuple() {
    let mut g = ptr::null_mut();
    let mut inv = ptr::null_mut();
    unsafe {
        assert_eq!(gtk_group_catalog(c("V4").as_ptr(), &mut g), GtkStatus::Ok);
        let st = gtk_pi_n(g, c("N1,N2,N3,whole").as_ptr(), &mut inv);
        assert_eq!(st, GtkStatus::Hypothesis);
        assert!(last_error().contains("not connected"));
        gtk_group_free(g);
    }
}

#[test]
fn wu_n2_is_infinite_cyclic() {
    let mut inv = ptr::null_mut();
    unsafe {
        assert_eq!(gtk_wu(2, 3, &mut inv), GtkStatus::Ok);
        assert_eq!(gtk_invariants_free_rank(inv), 1);
        assert_eq!(gtk_invariants_torsion_len(inv), 0);
        let mut t = 0;
        assert_eq!(gtk_invariants_torsion_at(inv, 0, &mut t), GtkStatus::OutOfRange);
        gtk_invariants_free(inv);
    }
}

#[test]
fn null_arguments_are_rejected() {
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(gtk_group_catalog(ptr::null(), &mut g), GtkStatus::NullPointer);
        assert_eq!(gtk_group_catalog(c("C2").as_ptr(), ptr::null_mut()), GtkStatus::NullPointer);
        assert_eq!(gtk_group_order(ptr::null(), &mut 0), GtkStatus::NullPointer);
        gtk_group_free(ptr::null_mut());
        gtk_invariants_free(ptr::null_mut());
        gtk_string_free(ptr::null_mut());
    }
}

#[test]
fn run_json_reports_exit_codes() {
    let mut out = ptr::null_mut();
    let mut code = -1;
    unsafe {
        assert_eq!(gtk_run_json(c("wu --n 1 --class 2").as_ptr(), &mut out, &mut code), GtkStatus::Ok);
        let text = CStr::from_ptr(out).to_str().unwrap().to_string();
        gtk_string_free(out);
        assert_eq!(code, 0);
        assert!(text.contains("\"schema\": 1"));
        assert_eq!(gtk_run_json(c("pi --n 1 --group catalog:nosuch --subgroups whole").as_ptr(), &mut out, &mut code), GtkStatus::Ok);
        gtk_string_free(out);
        assert_eq!(code, 1);
    }
}

#[test]
fn header_is_generated() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/grouptk.h")).unwrap();
    for name in ["gtk_group_catalog", "gtk_pi_n", "gtk_wu", "gtk_run_json", "GTK_STATUS_HYPOTHESIS", "typedef struct GtkGroup GtkGroup"] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

fn target_dir() -> PathBuf {
    // tests run from <target>/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_static_library() {
    let dir = target_dir();
    let lib = dir.join("libgrouptk_ffi.a");
    let compiler = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if !lib.exists() || Command::new(&compiler).arg("--version").output().is_err() {
        eprintln!("skipping: no static library at {} or no C compiler", lib.display());
        return;
    }
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let out = std::env::temp_dir().join(format!("grouptk_smoke_{}", std::process::id()));
    let status = Command::new(&compiler)
        .arg(manifest.join("tests/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let run = Command::new(&out).output().unwrap();
    let _ = std::fs::remove_file(&out);
    assert!(run.status.success(), "smoke program exited with {:?}", run.status.code());
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
