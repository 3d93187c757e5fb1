//! C ABI over `grouptk`.
//!
//! Objects cross the boundary as opaque handles that the caller releases
//! with the matching `*_free` function. Every fallible call returns a
//! [`GtkStatus`]; the message of the last failure on the calling thread is
//! available through [`gtk_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use grouptk::cli::{resolve_subgroup, run_args, split_top};
use grouptk::colimit::{pi_n_colimit, NormalTuple};
use grouptk::finite::{catalog, realize, FiniteGroup, DEFAULT_COSET_LIMIT};
use grouptk::wu::{wu_group, WuConfiguration};
use grouptk::{parse_presentation, AbelianInvariants, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GtkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    Hypothesis = 4,
    Budget = 5,
    OutOfRange = 6,
    Panic = 7,
}

/// A finite group, optionally remembering its catalog name.
pub struct GtkGroup {
    name: Option<String>,
    group: FiniteGroup,
}

/// Abelian invariants `Z^r ⊕ Z/d_1 ⊕ .. ⊕ Z/d_k`.
pub struct GtkInvariants {
    free_rank: u64,
    torsion: Vec<u64>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> GtkStatus {
    match e {
        Error::Hypothesis(_) => GtkStatus::Hypothesis,
        Error::LimitExceeded { .. } | Error::BudgetExceeded(_) | Error::Overflow(_) => GtkStatus::Budget,
        _ => GtkStatus::InvalidInput,
    }
}

fn guard(f: impl FnOnce() -> Result<(), GtkStatus>) -> GtkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GtkStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            GtkStatus::Panic
        }
    }
}

fn fail(e: Error) -> GtkStatus {
    set_error(e.to_string());
    status_of(&e)
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, GtkStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(GtkStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        GtkStatus::InvalidUtf8
    })
}

fn check_out<T>(out: *mut T) -> Result<(), GtkStatus> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(GtkStatus::NullPointer);
    }
    Ok(())
}

fn invariants(inv: &AbelianInvariants) -> Result<Box<GtkInvariants>, GtkStatus> {
    let torsion = inv.torsion.iter().map(|t| u64::try_from(t).map_err(|_| fail(Error::Overflow("torsion coefficient")))).collect::<Result<_, _>>()?;
    Ok(Box::new(GtkInvariants { free_rank: inv.free_rank as u64, torsion }))
}

/// Copies the last error message into `buf` (always nul-terminated when
/// `len > 0`) and returns the full message length, or 0 if none.
///
/// # Safety
/// `buf` must point to `len` writable bytes or be null with `len == 0`.
#[no_mangle]
pub unsafe extern "C" fn gtk_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Looks up a catalog group such as `S3`, `C6` or `SG16_3`.
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gtk_group_catalog(name: *const c_char, out: *mut *mut GtkGroup) -> GtkStatus {
    guard(|| {
        check_out(out)?;
        let name = read_str(name)?;
        let group = catalog(name).map_err(fail)?;
        *out = Box::into_raw(Box::new(GtkGroup { name: Some(name.to_string()), group }));
        Ok(())
    })
}

/// Realizes a finite group from a presentation in the text format
/// `gens: a, b | rels: a^3, b^2, (b*a)^2`.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gtk_group_from_presentation(text: *const c_char, out: *mut *mut GtkGroup) -> GtkStatus {
    guard(|| {
        check_out(out)?;
        let p = parse_presentation(read_str(text)?).map_err(fail)?;
        let group = realize(&p, DEFAULT_COSET_LIMIT).map_err(fail)?;
        *out = Box::into_raw(Box::new(GtkGroup { name: None, group }));
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gtk_group_order(g: *const GtkGroup, out: *mut u64) -> GtkStatus {
    guard(|| {
        check_out(out)?;
        let g = g.as_ref().ok_or_else(|| {
            set_error("null group handle");
            GtkStatus::NullPointer
        })?;
        *out = g.group.order() as u64;
        Ok(())
    })
}

/// # Safety
/// `g` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gtk_group_free(g: *mut GtkGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// `π_n` of the colimit for the comma-separated subgroup list; returns
/// `GTK_STATUS_HYPOTHESIS` when the connectivity hypothesis fails.
///
/// # Safety
/// `g` must be a live handle, `subgroups` a nul-terminated string and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gtk_pi_n(g: *const GtkGroup, subgroups: *const c_char, out: *mut *mut GtkInvariants) -> GtkStatus {
    guard(|| {
        check_out(out)?;
        let g = g.as_ref().ok_or_else(|| {
            set_error("null group handle");
            GtkStatus::NullPointer
        })?;
        let specs = split_top(read_str(subgroups)?);
        let subs = specs.iter().map(|s| resolve_subgroup(g.name.as_deref(), &g.group, s)).collect::<Result<Vec<_>, _>>().map_err(fail)?;
        let t = NormalTuple::new(subs).map_err(fail)?;
        let report = pi_n_colimit(&t).map_err(fail)?;
        let inv = report.invariants.ok_or_else(|| fail(Error::NonAbelianQuotient("pi_n".into())))?;
        *out = Box::into_raw(invariants(&inv)?);
        Ok(())
    })
}

/// The truncated Wu quotient for `π_{n+1}(S²)` at nilpotency class `class`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gtk_wu(n: u32, class: u32, out: *mut *mut GtkInvariants) -> GtkStatus {
    guard(|| {
        check_out(out)?;
        let cfg = WuConfiguration::new(n as usize, class as usize).map_err(fail)?;
        let report = wu_group(&cfg).map_err(fail)?;
        *out = Box::into_raw(invariants(&report.invariants)?);
        Ok(())
    })
}

/// # Safety
/// `inv` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gtk_invariants_free_rank(inv: *const GtkInvariants) -> u64 {
    inv.as_ref().map_or(0, |i| i.free_rank)
}

/// # Safety
/// `inv` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gtk_invariants_torsion_len(inv: *const GtkInvariants) -> usize {
    inv.as_ref().map_or(0, |i| i.torsion.len())
}

/// # Safety
/// `inv` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gtk_invariants_torsion_at(inv: *const GtkInvariants, index: usize, out: *mut u64) -> GtkStatus {
    guard(|| {
        check_out(out)?;
        let inv = inv.as_ref().ok_or_else(|| {
            set_error("null invariants handle");
            GtkStatus::NullPointer
        })?;
        *out = *inv.torsion.get(index).ok_or_else(|| {
            set_error(format!("torsion index {index} out of range"));
            GtkStatus::OutOfRange
        })?;
        Ok(())
    })
}

/// # Safety
/// `inv` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gtk_invariants_free(inv: *mut GtkInvariants) {
    if !inv.is_null() {
        drop(Box::from_raw(inv));
    }
}

/// Runs a command line (whitespace separated, without the program name)
/// with JSON output. `*out_json` receives a string to release with
/// [`gtk_string_free`]; `*exit_code` the process exit code of the CLI.
///
/// # Safety
/// `args` must be a nul-terminated string; the outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn gtk_run_json(args: *const c_char, out_json: *mut *mut c_char, exit_code: *mut i32) -> GtkStatus {
    guard(|| {
        check_out(out_json)?;
        check_out(exit_code)?;
        let line = read_str(args)?;
        let argv = ["grouptk", "--json"].into_iter().map(String::from).chain(line.split_whitespace().map(String::from));
        let outcome = run_args(argv);
        let text = if outcome.stdout.is_empty() { outcome.stderr } else { outcome.stdout };
        *exit_code = outcome.code;
        *out_json = CString::new(text.replace('\0', " ")).expect("no interior nul").into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn gtk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
