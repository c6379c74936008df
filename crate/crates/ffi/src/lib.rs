//! C ABI for minimorph.
//!
//! Every fallible function returns an [`MmStatus`]; on failure the message is
//! available from [`mm_last_error`] on the same thread. Handles are opaque and
//! must be released with their `_free` function. Panics never cross the
//! boundary: they surface as `MM_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use num_complex::Complex64;

use minimorph::fibergeo::{write_patch_files, SurfacePatch};
use minimorph::fields::{conformality, tension};
use minimorph::morphisms::{lookup, MorphismSpec};
use minimorph::polyexact::{criticality_det, variety_point, Branch, GaussRat};
use minimorph::suite::{trace_report, RunConfig};
use minimorph::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    UnknownCatalogEntry = 4,
    DomainViolation = 5,
    DimensionMismatch = 6,
    DegenerateParameters = 7,
    AlphaZero = 8,
    NoConvergence = 9,
    ConvergedToCritical = 10,
    ExactModeUnavailable = 11,
    InvalidArgument = 12,
    Io = 13,
    OutOfRange = 14,
    Other = 15,
    Panic = 16,
}

impl From<&Error> for MmStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse(_) => MmStatus::Parse,
            Error::UnknownCatalogEntry(_) => MmStatus::UnknownCatalogEntry,
            Error::DomainViolation { .. } => MmStatus::DomainViolation,
            Error::DimensionMismatch { .. } => MmStatus::DimensionMismatch,
            Error::DegenerateParameters => MmStatus::DegenerateParameters,
            Error::AlphaZero => MmStatus::AlphaZero,
            Error::NoConvergence { .. } => MmStatus::NoConvergence,
            Error::ConvergedToCritical(_) | Error::RankDeficient(_) => {
                MmStatus::ConvergedToCritical
            }
            Error::ExactModeUnavailable(_) => MmStatus::ExactModeUnavailable,
            Error::InvalidArgument(_) => MmStatus::InvalidArgument,
            Error::Io(_) => MmStatus::Io,
            _ => MmStatus::Other,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Fail(MmStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(MmStatus::from(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(MmStatus::NullPointer, format!("`{what}` is null"))
}

/// Runs `f`, recording any error or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> MmStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MmStatus::Ok,
        Ok(Err(Fail(code, msg))) => {
            set_error(msg);
            code
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            MmStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(MmStatus::InvalidUtf8, format!("`{what}` is not UTF-8")))
}

unsafe fn slice_arg<'a>(p: *const f64, n: usize, what: &str) -> Result<&'a [f64], Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, n))
}

unsafe fn write_complex(z: Complex64, re: *mut f64, im: *mut f64) -> Result<(), Fail> {
    if re.is_null() || im.is_null() {
        return Err(null("out"));
    }
    *re = z.re;
    *im = z.im;
    Ok(())
}

/// Opaque handle to a catalog map.
pub struct MmMorphism {
    spec: MorphismSpec,
}

/// Opaque handle to a traced fiber patch.
pub struct MmPatch {
    patch: SurfacePatch,
    report_json: CString,
}

/// Message of the last failed call on this thread, or NULL. The pointer stays
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn mm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn mm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Looks up a catalog entry such as `s4-quadric` or `phi-odd:d=3,n=2`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mm_morphism_new(
    name: *const c_char,
    out: *mut *mut MmMorphism,
) -> MmStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let spec = lookup(str_arg(name, "name")?)?;
        *out = Box::into_raw(Box::new(MmMorphism { spec }));
        Ok(())
    })
}

/// # Safety
/// `m` must come from [`mm_morphism_new`] and not be used afterwards. NULL is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn mm_morphism_free(m: *mut MmMorphism) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Number of real variables of the map, 0 for NULL.
///
/// # Safety
/// `m` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mm_morphism_n_vars(m: *const MmMorphism) -> usize {
    m.as_ref().map_or(0, |m| m.spec.n_vars())
}

unsafe fn with_point(
    m: *const MmMorphism,
    x: *const f64,
    n: usize,
    f: impl FnOnce(&MorphismSpec, &[f64]) -> Result<Complex64, Error>,
    re: *mut f64,
    im: *mut f64,
) -> MmStatus {
    guard(|| {
        let m = m.as_ref().ok_or_else(|| null("morphism"))?;
        let x = slice_arg(x, n, "x")?;
        if n != m.spec.n_vars() {
            return Err(Error::DimensionMismatch {
                expected: m.spec.n_vars(),
                got: n,
            }
            .into());
        }
        let z = f(&m.spec, x)?;
        write_complex(z, re, im)
    })
}

/// Value of the map at `x[0..n]`.
///
/// # Safety
/// `m` must be a live handle, `x` must point to `n` doubles, `re` and `im`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn mm_eval(
    m: *const MmMorphism,
    x: *const f64,
    n: usize,
    re: *mut f64,
    im: *mut f64,
) -> MmStatus {
    with_point(m, x, n, |s, x| s.value(x), re, im)
}

/// Tension field of the map at `x` for the metric of its ambient space.
///
/// # Safety
/// As for [`mm_eval`].
#[no_mangle]
pub unsafe extern "C" fn mm_tension(
    m: *const MmMorphism,
    x: *const f64,
    n: usize,
    re: *mut f64,
    im: *mut f64,
) -> MmStatus {
    with_point(
        m,
        x,
        n,
        |s, x| tension(s.field(), x, &s.signature()),
        re,
        im,
    )
}

/// Conformality `kappa(phi, phi)` of the map at `x`.
///
/// # Safety
/// As for [`mm_eval`].
#[no_mangle]
pub unsafe extern "C" fn mm_conformality(
    m: *const MmMorphism,
    x: *const f64,
    n: usize,
    re: *mut f64,
    im: *mut f64,
) -> MmStatus {
    with_point(
        m,
        x,
        n,
        |s, x| conformality(s.field(), s.field(), x, &s.signature()),
        re,
        im,
    )
}

/// A point of the quadric coefficient variety in floating point, with the
/// exact regularity flag and criticality determinant.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct MmQuintuple {
    /// `a1, a2, b1, b2, b3` as (re, im) pairs.
    pub coeffs: [[f64; 2]; 5],
    pub determinant: [f64; 2],
    pub regular: bool,
}

/// Variety point over exact complex literals such as `3`, `5i` or `1/2-i`.
/// `branch` is `+1` or `-1`.
///
/// # Safety
/// `b1`, `b2` must be NUL-terminated strings and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mm_variety_point(
    b1: *const c_char,
    b2: *const c_char,
    branch: i32,
    out: *mut MmQuintuple,
) -> MmStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let b1: GaussRat = str_arg(b1, "b1")?.parse()?;
        let b2: GaussRat = str_arg(b2, "b2")?.parse()?;
        let branch = match branch {
            1 => Branch::Plus,
            -1 => Branch::Minus,
            other => {
                return Err(Fail(
                    MmStatus::InvalidArgument,
                    format!("branch must be 1 or -1, got {other}"),
                ))
            }
        };
        let q = variety_point(&b1, &b2, branch)?;
        let c = |g: &GaussRat| {
            let z = g.to_c64();
            [z.re, z.im]
        };
        *out = MmQuintuple {
            coeffs: [c(&q.a1), c(&q.a2), c(&q.b1), c(&q.b2), c(&q.b3)],
            determinant: c(&criticality_det(&q)),
            regular: q.is_regular(),
        };
        Ok(())
    })
}

/// Traces an `ni x nj` patch of the fiber `Phi = alpha` with step `h`
/// (the default settings otherwise), annotated with mean curvature.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mm_trace(
    name: *const c_char,
    alpha_re: f64,
    alpha_im: f64,
    ni: usize,
    nj: usize,
    h: f64,
    out: *mut *mut MmPatch,
) -> MmStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let name = str_arg(name, "name")?;
        let cfg = RunConfig {
            h,
            ..RunConfig::default()
        };
        let t = trace_report(
            name,
            Complex64::new(alpha_re, alpha_im),
            (ni, nj),
            None,
            &cfg,
        )?;
        let json = t.report.to_json()?;
        let patch = t.patch.ok_or_else(|| {
            Fail(
                MmStatus::NoConvergence,
                "no seed converged to the fiber; alpha is possibly not attained".into(),
            )
        })?;
        *out = Box::into_raw(Box::new(MmPatch {
            patch,
            report_json: CString::new(json).unwrap_or_default(),
        }));
        Ok(())
    })
}

/// # Safety
/// `p` must come from [`mm_trace`] and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn mm_patch_free(p: *mut MmPatch) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of nodes in the patch, 0 for NULL.
///
/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mm_patch_len(p: *const MmPatch) -> usize {
    p.as_ref().map_or(0, |p| p.patch.len())
}

/// Coordinates of node `k` into `xyz[0..5]` and its mean-curvature norm into
/// `curvature` (NaN when the estimator failed there).
///
/// # Safety
/// `p` must be a live handle, `xyz` must hold 5 doubles, `curvature` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn mm_patch_node(
    p: *const MmPatch,
    k: usize,
    xyz: *mut f64,
    curvature: *mut f64,
) -> MmStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("patch"))?;
        if xyz.is_null() || curvature.is_null() {
            return Err(null("out"));
        }
        let node = p.patch.nodes.get(k).ok_or_else(|| {
            Fail(
                MmStatus::OutOfRange,
                format!("node {k} out of range ({} nodes)", p.patch.len()),
            )
        })?;
        std::slice::from_raw_parts_mut(xyz, 5).copy_from_slice(&node.sample.point);
        *curvature = node.sample.mean_curvature_norm.unwrap_or(f64::NAN);
        Ok(())
    })
}

/// JSON report of the trace; valid while the handle lives.
///
/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mm_patch_report(p: *const MmPatch) -> *const c_char {
    p.as_ref().map_or(ptr::null(), |p| p.report_json.as_ptr())
}

/// Writes `<stem>.ply`, `<stem>.csv` and `<stem>.json` into `dir`.
///
/// # Safety
/// `p` must be a live handle; `dir` and `stem` NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn mm_patch_write(
    p: *const MmPatch,
    dir: *const c_char,
    stem: *const c_char,
) -> MmStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("patch"))?;
        let dir = str_arg(dir, "dir")?;
        let stem = str_arg(stem, "stem")?;
        write_patch_files(&p.patch, Path::new(dir), stem)?;
        Ok(())
    })
}
