//! C ABI over the classifier and the blocker.
//!
//! Every function returns a `CbStatus`; on failure a message is kept per
//! thread and can be read with `cb_last_error`. Handles are opaque and must be
//! released with their `_free` function. A `CbEngine` is immutable and may be
//! shared between threads; a `CbProfile` must not be used from two threads at
//! once.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;
use std::sync::Arc;

use clickbait_core::annotation::conllu::bundled_treebank;
use clickbait_core::blocker::{Action, Blocker, ConceptGraph, Method, UserProfile};
use clickbait_core::classifier::TrainConfig;
use clickbait_core::corpus::{load_corpus, sample_corpus, CorpusFormat, Lexicons};
use clickbait_core::model::{Engine, ModelBundle};
use clickbait_core::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CbStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    DataError = 4,
    TrainingError = 5,
    IoError = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CbLabel {
    News = 0,
    Clickbait = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CbMethod {
    Pattern = 0,
    Topic = 1,
    Hybrid = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CbAction {
    Clicked = 0,
    Blocked = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CbClassification {
    pub label: CbLabel,
    pub score: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CbBlockDecision {
    /// 1 to block, 0 to allow.
    pub block: i32,
    pub block_score: f64,
    pub click_score: f64,
}

/// Opaque trained model.
pub struct CbEngine {
    engine: Engine,
}

/// Opaque per-user blocking profile.
pub struct CbProfile {
    blocker: Blocker,
    profile: UserProfile,
    method: Method,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

fn status_of(e: &Error) -> CbStatus {
    match e {
        Error::Io { .. } => CbStatus::IoError,
        Error::Training(_) => CbStatus::TrainingError,
        Error::InvalidArgument(_) => CbStatus::InvalidArgument,
        _ => CbStatus::DataError,
    }
}

fn fail(status: CbStatus, msg: impl Into<String>) -> CbStatus {
    set_error(msg);
    status
}

fn from_core(e: Error) -> CbStatus {
    fail(status_of(&e), e.to_string())
}

/// Run `f`, turning panics into `CbStatus::Panic`.
fn guard(f: impl FnOnce() -> CbStatus) -> CbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            fail(CbStatus::Panic, format!("panic: {msg}"))
        }
    }
}

/// # Safety
/// `p` is null or a valid NUL-terminated string.
unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, CbStatus> {
    if p.is_null() {
        return Err(fail(CbStatus::NullArgument, format!("{name} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(CbStatus::InvalidUtf8, format!("{name} is not valid UTF-8")))
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Copy the calling thread's last error message into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length excluding the NUL;
/// 0 when there is no error recorded.
///
/// # Safety
/// `buf` is null or points to at least `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn cb_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else {
            if !buf.is_null() && len > 0 {
                *buf = 0;
            }
            return 0;
        };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Load a model bundle written by `clickbait train` or `cb_engine_save`.
///
/// # Safety
/// `path` is a valid NUL-terminated string; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cb_engine_load(path: *const c_char, out: *mut *mut CbEngine) -> CbStatus {
    guard(|| {
        if out.is_null() {
            return fail(CbStatus::NullArgument, "out is null");
        }
        let path = tri!(str_arg(path, "path"));
        let bundle = tri!(ModelBundle::load(Path::new(path)).map_err(from_core));
        *out = Box::into_raw(Box::new(CbEngine {
            engine: Engine::new(bundle),
        }));
        CbStatus::Ok
    })
}

/// Train a bundle from a corpus file (JSON-Lines or TSV), or from the bundled
/// sample corpus when `corpus_path` is null. Slow: trains the annotators too.
///
/// # Safety
/// `corpus_path` is null or a valid NUL-terminated string; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cb_engine_train(
    corpus_path: *const c_char,
    seed: u64,
    out: *mut *mut CbEngine,
) -> CbStatus {
    guard(|| {
        if out.is_null() {
            return fail(CbStatus::NullArgument, "out is null");
        }
        let corpus = if corpus_path.is_null() {
            sample_corpus()
        } else {
            let p = Path::new(tri!(str_arg(corpus_path, "corpus_path")));
            tri!(load_corpus(p, CorpusFormat::from_path(p)).map_err(from_core)).headlines
        };
        let cfg = TrainConfig {
            seed,
            ..TrainConfig::default()
        };
        let bundle =
            tri!(
                ModelBundle::train(&corpus, &bundled_treebank(), Lexicons::bundled(), &cfg, 1)
                    .map_err(from_core)
            );
        *out = Box::into_raw(Box::new(CbEngine {
            engine: Engine::new(bundle),
        }));
        CbStatus::Ok
    })
}

/// # Safety
/// `engine` and `path` are valid.
#[no_mangle]
pub unsafe extern "C" fn cb_engine_save(engine: *const CbEngine, path: *const c_char) -> CbStatus {
    guard(|| {
        let Some(e) = engine.as_ref() else {
            return fail(CbStatus::NullArgument, "engine is null");
        };
        let path = tri!(str_arg(path, "path"));
        tri!(e.engine.bundle.save(Path::new(path)).map_err(from_core));
        CbStatus::Ok
    })
}

/// Release an engine. Null is ignored.
///
/// # Safety
/// `engine` came from `cb_engine_load` / `cb_engine_train` and is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cb_engine_free(engine: *mut CbEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

/// Model version stamped in the bundle; 0 for a null engine.
///
/// # Safety
/// `engine` is null or valid.
#[no_mangle]
pub unsafe extern "C" fn cb_engine_version(engine: *const CbEngine) -> u64 {
    engine.as_ref().map_or(0, |e| e.engine.version())
}

/// # Safety
/// `engine`, `text` and `out` are valid.
#[no_mangle]
pub unsafe extern "C" fn cb_classify(
    engine: *const CbEngine,
    text: *const c_char,
    out: *mut CbClassification,
) -> CbStatus {
    guard(|| {
        let Some(e) = engine.as_ref() else {
            return fail(CbStatus::NullArgument, "engine is null");
        };
        if out.is_null() {
            return fail(CbStatus::NullArgument, "out is null");
        }
        let text = tri!(str_arg(text, "text"));
        let c = tri!(e.engine.classify(text).map_err(from_core));
        let label = if c.label.is_clickbait() {
            CbLabel::Clickbait
        } else {
            CbLabel::News
        };
        *out = CbClassification {
            label,
            score: c.score,
        };
        CbStatus::Ok
    })
}

/// New empty profile; `method` is a `CbMethod` value. `graph_path` selects a concept graph file; null uses
/// the bundled graph.
///
/// # Safety
/// `engine` and `out` are valid; `graph_path` is null or a valid string.
#[no_mangle]
pub unsafe extern "C" fn cb_profile_new(
    engine: *const CbEngine,
    method: i32,
    graph_path: *const c_char,
    out: *mut *mut CbProfile,
) -> CbStatus {
    guard(|| {
        let Some(e) = engine.as_ref() else {
            return fail(CbStatus::NullArgument, "engine is null");
        };
        if out.is_null() {
            return fail(CbStatus::NullArgument, "out is null");
        }
        let graph = if graph_path.is_null() {
            ConceptGraph::bundled()
        } else {
            tri!(
                ConceptGraph::load(Path::new(tri!(str_arg(graph_path, "graph_path"))))
                    .map_err(from_core)
            )
        };
        let method = match method {
            m if m == CbMethod::Pattern as i32 => Method::Pattern,
            m if m == CbMethod::Topic as i32 => Method::Topic,
            m if m == CbMethod::Hybrid as i32 => Method::Hybrid,
            m => return fail(CbStatus::InvalidArgument, format!("unknown method {m}")),
        };
        let blocker = Blocker::new(&e.engine.bundle.lexicons, Arc::new(graph));
        *out = Box::into_raw(Box::new(CbProfile {
            blocker,
            profile: UserProfile::new(""),
            method,
        }));
        CbStatus::Ok
    })
}

/// # Safety
/// `profile` came from `cb_profile_new` and is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cb_profile_free(profile: *mut CbProfile) {
    if !profile.is_null() {
        drop(Box::from_raw(profile));
    }
}

/// Record a click or block (`action` is a `CbAction` value). `inserted` (optional) receives 0 when the
/// (link, timestamp) pair was already recorded.
///
/// # Safety
/// All pointers valid; `inserted` may be null.
#[no_mangle]
pub unsafe extern "C" fn cb_profile_record(
    profile: *mut CbProfile,
    engine: *const CbEngine,
    link: *const c_char,
    headline: *const c_char,
    action: i32,
    timestamp: i64,
    inserted: *mut i32,
) -> CbStatus {
    guard(|| {
        let (Some(p), Some(e)) = (profile.as_mut(), engine.as_ref()) else {
            return fail(CbStatus::NullArgument, "profile or engine is null");
        };
        let link = tri!(str_arg(link, "link"));
        let headline = tri!(str_arg(headline, "headline"));
        if headline.trim().is_empty() {
            return fail(CbStatus::InvalidArgument, "headline is empty");
        }
        let h = e.engine.annotate(headline.trim());
        let q = p.blocker.query(&h, None);
        let action = match action {
            a if a == CbAction::Clicked as i32 => Action::Clicked,
            a if a == CbAction::Blocked as i32 => Action::Blocked,
            a => return fail(CbStatus::InvalidArgument, format!("unknown action {a}")),
        };
        let added = p
            .profile
            .update(p.blocker.entry(link, &h, q, action, timestamp));
        if !inserted.is_null() {
            *inserted = i32::from(added);
        }
        CbStatus::Ok
    })
}

/// Block / allow decision for a headline under the profile's method.
///
/// # Safety
/// All pointers valid.
#[no_mangle]
pub unsafe extern "C" fn cb_profile_decide(
    profile: *const CbProfile,
    engine: *const CbEngine,
    headline: *const c_char,
    out: *mut CbBlockDecision,
) -> CbStatus {
    guard(|| {
        let (Some(p), Some(e)) = (profile.as_ref(), engine.as_ref()) else {
            return fail(CbStatus::NullArgument, "profile or engine is null");
        };
        if out.is_null() {
            return fail(CbStatus::NullArgument, "out is null");
        }
        let headline = tri!(str_arg(headline, "headline"));
        let h = e.engine.annotate(headline.trim());
        let d = p
            .blocker
            .decide(p.method, &p.blocker.query(&h, None), &p.profile);
        *out = CbBlockDecision {
            block: i32::from(d.is_block()),
            block_score: d.block_score,
            click_score: d.click_score,
        };
        CbStatus::Ok
    })
}
