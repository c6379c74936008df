use std::ffi::{CStr, CString};
use std::ptr;

use minimorph_ffi::*;

fn last_error() -> String {
    let p = mm_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn morphism(name: &str) -> *mut MmMorphism {
    let name = CString::new(name).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(
        unsafe { mm_morphism_new(name.as_ptr(), &mut m) },
        MmStatus::Ok
    );
    m
}

#[test]
fn eval_tension_conformality() {
    let m = morphism("phi-even:d=2,n=1");
    assert_eq!(unsafe { mm_morphism_n_vars(m) }, 5);
    let x = [1.0, 0.0, 0.0, 1.0, 0.0];
    let (mut re, mut im) = (f64::NAN, f64::NAN);
    unsafe {
        assert_eq!(mm_eval(m, x.as_ptr(), 5, &mut re, &mut im), MmStatus::Ok);
        // p(1, 0, 0) = a1 = 5i
        assert!(re.abs() < 1e-14 && (im - 5.0).abs() < 1e-14);
        assert_eq!(mm_tension(m, x.as_ptr(), 5, &mut re, &mut im), MmStatus::Ok);
        assert!(re.hypot(im) < 1e-10);
        assert_eq!(
            mm_conformality(m, x.as_ptr(), 5, &mut re, &mut im),
            MmStatus::Ok
        );
        assert!(re.hypot(im) < 1e-10);
        // zero set of the denominator
        let bad = [1.0, 0.0, 0.0, 0.0, 0.0];
        assert_eq!(
            mm_eval(m, bad.as_ptr(), 5, &mut re, &mut im),
            MmStatus::DomainViolation
        );
        assert!(last_error().contains("outside the domain"));
        mm_morphism_free(m);
    }
}

#[test]
fn null_and_bad_arguments() {
    let mut m = ptr::null_mut();
    unsafe {
        assert_eq!(mm_morphism_new(ptr::null(), &mut m), MmStatus::NullPointer);
        let name = CString::new("hopf").unwrap();
        assert_eq!(
            mm_morphism_new(name.as_ptr(), ptr::null_mut()),
            MmStatus::NullPointer
        );
        let bad = CString::new("phi-even:d=3").unwrap();
        assert_eq!(
            mm_morphism_new(bad.as_ptr(), &mut m),
            MmStatus::InvalidArgument
        );
        let invalid = [0xffu8, 0];
        assert_eq!(
            mm_morphism_new(invalid.as_ptr().cast(), &mut m),
            MmStatus::InvalidUtf8
        );
        let (mut re, mut im) = (0.0, 0.0);
        assert_eq!(
            mm_eval(ptr::null(), [0.0].as_ptr(), 1, &mut re, &mut im),
            MmStatus::NullPointer
        );
        assert_eq!(mm_morphism_n_vars(ptr::null()), 0);
        mm_morphism_free(ptr::null_mut());
        mm_patch_free(ptr::null_mut());
    }
    // a success clears the previous message
    let m = morphism("hopf");
    assert!(mm_last_error().is_null());
    unsafe { mm_morphism_free(m) };
}

#[test]
fn variety_point_examples() {
    let s = |v: &str| CString::new(v).unwrap();
    let mut q = MmQuintuple::default();
    unsafe {
        assert_eq!(
            mm_variety_point(s("5").as_ptr(), s("12").as_ptr(), 1, &mut q),
            MmStatus::Ok
        );
        assert_eq!(q.coeffs[0], [0.0, 13.0]);
        assert_eq!(
            mm_variety_point(s("3").as_ptr(), s("4").as_ptr(), 1, &mut q),
            MmStatus::Ok
        );
        assert_eq!(q.determinant, [0.0, 240.0]);
        assert!(q.regular);
        assert_eq!(
            mm_variety_point(s("1").as_ptr(), s("i").as_ptr(), 1, &mut q),
            MmStatus::DegenerateParameters
        );
        assert_eq!(
            mm_variety_point(s("3").as_ptr(), s("4").as_ptr(), 0, &mut q),
            MmStatus::InvalidArgument
        );
        assert_eq!(
            mm_variety_point(s("3x").as_ptr(), s("4").as_ptr(), 1, &mut q),
            MmStatus::Parse
        );
    }
}

#[test]
fn trace_and_export() {
    let name = CString::new("h4-quadric").unwrap();
    let mut p = ptr::null_mut();
    unsafe {
        assert_eq!(
            mm_trace(name.as_ptr(), 0.0, 5.0, 5, 5, 0.02, &mut p),
            MmStatus::Ok
        );
        assert_eq!(mm_patch_len(p), 25);
        let mut x = [0.0; 5];
        let mut h = 0.0;
        for k in 0..25 {
            assert_eq!(mm_patch_node(p, k, x.as_mut_ptr(), &mut h), MmStatus::Ok);
            let lorentz: f64 = x[..4].iter().map(|v| v * v).sum::<f64>() - x[4] * x[4];
            assert!((lorentz + 1.0).abs() < 1e-10);
            assert!(h < 5e-4);
        }
        let report = CStr::from_ptr(mm_patch_report(p)).to_str().unwrap();
        let v: serde_json::Value = serde_json::from_str(report).unwrap();
        assert_eq!(v["checks"][0]["name"], "projection");

        let dir = tempfile::tempdir().unwrap();
        let d = CString::new(dir.path().to_str().unwrap()).unwrap();
        let stem = CString::new("h4").unwrap();
        assert_eq!(mm_patch_write(p, d.as_ptr(), stem.as_ptr()), MmStatus::Ok);
        assert!(dir.path().join("h4.ply").exists());
        mm_patch_free(p);

        assert_eq!(
            mm_trace(name.as_ptr(), 0.0, 0.0, 3, 3, 0.02, &mut p),
            MmStatus::AlphaZero
        );
        assert_eq!(
            mm_trace(name.as_ptr(), 0.0, 5.0, 3, 3, 1.0, &mut p),
            MmStatus::InvalidArgument
        );
    }
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/minimorph.h"))
        .unwrap();
    for f in [
        "mm_last_error",
        "mm_version",
        "mm_morphism_new",
        "mm_morphism_free",
        "mm_eval",
        "mm_tension",
        "mm_conformality",
        "mm_variety_point",
        "mm_trace",
        "mm_patch_node",
        "mm_patch_write",
        "mm_patch_free",
        "MM_STATUS_ALPHA_ZERO",
    ] {
        assert!(h.contains(f), "{f} missing from header");
    }
    assert!(h.contains("typedef struct MmMorphism MmMorphism;"));
}

/// Compiles and runs a C program against the header and the static library
/// when a C compiler is on PATH.
#[test]
fn c_program_links_and_runs() {
    let Ok(exe) = std::env::current_exe() else {
        return;
    };
    let lib_dir = exe.parent().and_then(|d| d.parent()).unwrap().to_path_buf();
    let lib = lib_dir.join("libminimorph_ffi.a");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if !lib.exists()
        || std::process::Command::new(&cc)
            .arg("--version")
            .output()
            .is_err()
    {
        eprintln!("skipping: no C compiler or static library");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let bin = dir.path().join("smoke");
    let manifest = env!("CARGO_MANIFEST_DIR");
    let status = std::process::Command::new(&cc)
        .arg(format!("{manifest}/tests/c/smoke.c"))
        .arg(format!("-I{manifest}/include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = std::process::Command::new(&bin).output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}
