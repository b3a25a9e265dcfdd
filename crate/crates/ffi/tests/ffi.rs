use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;
use std::sync::OnceLock;

use clickbait_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let mut buf = vec![0 as c_char; 256];
    unsafe {
        cb_last_error(buf.as_mut_ptr(), buf.len());
        CStr::from_ptr(buf.as_ptr()).to_string_lossy().into_owned()
    }
}

/// One trained bundle per test binary; each test loads its own engine.
fn bundle_path() -> &'static Path {
    static P: OnceLock<PathBuf> = OnceLock::new();
    P.get_or_init(|| {
        let dir = std::env::temp_dir().join(format!("clickbait-ffi-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bundle.json");
        unsafe {
            let mut e = ptr::null_mut();
            assert_eq!(
                cb_engine_train(ptr::null(), 42, &mut e),
                CbStatus::Ok,
                "{}",
                last_error()
            );
            assert_eq!(
                cb_engine_save(e, c(path.to_str().unwrap()).as_ptr()),
                CbStatus::Ok
            );
            cb_engine_free(e);
        }
        path
    })
}

fn load() -> *mut CbEngine {
    let mut e = ptr::null_mut();
    let st = unsafe { cb_engine_load(c(bundle_path().to_str().unwrap()).as_ptr(), &mut e) };
    assert_eq!(st, CbStatus::Ok, "{}", last_error());
    e
}

#[test]
fn classify_through_the_abi() {
    let e = load();
    unsafe {
        assert_eq!(cb_engine_version(e), 1);
        let mut out = CbClassification {
            label: CbLabel::News,
            score: 0.0,
        };
        let t = c("This Rugby Fan's Super-Excited Reaction To Meeting Shane Williams Will Put You In A Good Mood");
        assert_eq!(cb_classify(e, t.as_ptr(), &mut out), CbStatus::Ok);
        assert_eq!(out.label, CbLabel::Clickbait);
        assert!(out.score > 0.0);
        assert_eq!(
            cb_classify(e, c("Parliament passes budget bill").as_ptr(), &mut out),
            CbStatus::Ok
        );
        assert_eq!(out.label, CbLabel::News);
        cb_engine_free(e);
    }
}

#[test]
fn profile_blocks_distance_one_variant() {
    let e = load();
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(
            cb_profile_new(e, CbMethod::Pattern as i32, ptr::null(), &mut p),
            CbStatus::Ok
        );
        let mut d = CbBlockDecision {
            block: 9,
            block_score: -1.0,
            click_score: -1.0,
        };
        let q = c("Which `Inside Amy Schumer' Character Are You");
        assert_eq!(cb_profile_decide(p, e, q.as_ptr(), &mut d), CbStatus::Ok);
        assert_eq!((d.block, d.block_score, d.click_score), (0, 0.0, 0.0));

        let mut inserted = -1;
        let h = c("Which Dead `Grey's Anatomy' Character Are You");
        let st = cb_profile_record(
            p,
            e,
            c("l1").as_ptr(),
            h.as_ptr(),
            CbAction::Blocked as i32,
            10,
            &mut inserted,
        );
        assert_eq!((st, inserted), (CbStatus::Ok, 1));
        let st = cb_profile_record(
            p,
            e,
            c("l1").as_ptr(),
            h.as_ptr(),
            CbAction::Blocked as i32,
            10,
            &mut inserted,
        );
        assert_eq!((st, inserted), (CbStatus::Ok, 0));

        assert_eq!(cb_profile_decide(p, e, q.as_ptr(), &mut d), CbStatus::Ok);
        assert_eq!(d.block, 1);
        assert!((d.block_score - 5.0 / 6.0).abs() < 1e-12);
        cb_profile_free(p);
        cb_engine_free(e);
    }
}

#[test]
fn errors_are_reported_not_raised() {
    unsafe {
        let mut e = ptr::null_mut();
        assert_eq!(
            cb_engine_load(c("/definitely/not/here.json").as_ptr(), &mut e),
            CbStatus::IoError
        );
        assert!(e.is_null());
        assert!(last_error().contains("/definitely/not/here.json"));
        assert_eq!(cb_engine_load(ptr::null(), &mut e), CbStatus::NullArgument);
        assert_eq!(
            cb_engine_load(c("x").as_ptr(), ptr::null_mut()),
            CbStatus::NullArgument
        );

        let dir = std::env::temp_dir().join(format!("clickbait-ffi-bad-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let bad = dir.join("bad.json");
        std::fs::write(&bad, "{not json").unwrap();
        assert_eq!(
            cb_engine_load(c(bad.to_str().unwrap()).as_ptr(), &mut e),
            CbStatus::DataError
        );

        let engine = load();
        let mut out = CbClassification {
            label: CbLabel::News,
            score: 0.0,
        };
        assert_eq!(
            cb_classify(engine, c("   ").as_ptr(), &mut out),
            CbStatus::InvalidArgument
        );
        let invalid = [0xffu8 as c_char, 0];
        assert_eq!(
            cb_classify(engine, invalid.as_ptr(), &mut out),
            CbStatus::InvalidUtf8
        );
        assert_eq!(
            cb_classify(ptr::null(), c("x").as_ptr(), &mut out),
            CbStatus::NullArgument
        );
        let mut p = ptr::null_mut();
        assert_eq!(
            cb_profile_new(engine, 7, ptr::null(), &mut p),
            CbStatus::InvalidArgument
        );
        assert!(last_error().contains("unknown method 7"));
        assert_eq!(
            cb_profile_new(engine, 0, c("/no/graph.txt").as_ptr(), &mut p),
            CbStatus::IoError
        );
        cb_engine_free(engine);
        cb_engine_free(ptr::null_mut());
        cb_profile_free(ptr::null_mut());
        assert_eq!(cb_engine_version(ptr::null()), 0);
    }
}

#[test]
fn last_error_truncates_and_reports_length() {
    unsafe {
        let mut e = ptr::null_mut();
        cb_engine_load(ptr::null(), &mut e);
        let full = cb_last_error(ptr::null_mut(), 0);
        assert_eq!(full, "path is null".len());
        let mut small = [1 as c_char; 5];
        assert_eq!(cb_last_error(small.as_mut_ptr(), small.len()), full);
        assert_eq!(CStr::from_ptr(small.as_ptr()).to_str().unwrap(), "path");
        assert_eq!(
            CStr::from_ptr(cb_version()).to_str().unwrap(),
            env!("CARGO_PKG_VERSION")
        );
    }
}

fn cc() -> Option<&'static str> {
    ["cc", "gcc", "clang"].into_iter().find(|c| {
        Command::new(c)
            .arg("--version")
            .output()
            .is_ok_and(|o| o.status.success())
    })
}

#[test]
fn header_compiles_as_c_and_cpp() {
    let Some(cc) = cc() else {
        panic!("no C compiler found; the header check needs cc, gcc or clang");
    };
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/clickbait.h");
    for lang in ["c", "c++"] {
        let out = Command::new(cc)
            .args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang])
            .arg(&header)
            .output()
            .unwrap();
        assert!(
            out.status.success(),
            "{lang}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

/// Link the static library into a C program and run it.
#[test]
fn c_program_links_and_runs() {
    let Some(cc) = cc() else {
        panic!("no C compiler found");
    };
    let deps = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    let lib = [
        deps.join("libclickbait_ffi.a"),
        deps.parent().unwrap().join("libclickbait_ffi.a"),
    ]
    .into_iter()
    .find(|p| p.exists())
    .expect("libclickbait_ffi.a is built alongside the tests");
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::temp_dir().join(format!("clickbait-ffi-smoke-{}", std::process::id()));
    let out = Command::new(cc)
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "link failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let run = Command::new(&exe).arg(bundle_path()).output().unwrap();
    assert!(
        run.status.success(),
        "smoke exited {:?}: {}",
        run.status.code(),
        String::from_utf8_lossy(&run.stdout)
    );
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok "));
}
