//! C ABI over the misere engine.
//!
//! Every function returns a `MisereStatus`. Handles come from
//! `misere_engine_new` and must be released with `misere_engine_free`.
//! Positions are plain `uint32_t` ids valid only for the engine that made them.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use misere::{Convention, Engine, Error, Outcome, PositionId, QuotientStatus, SumPosition};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MisereStatus {
    Ok = 0,
    NullArg = 1,
    Parse = 2,
    InvalidArg = 3,
    BufferTooSmall = 4,
    Precondition = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MisereOutcome {
    L = 0,
    R = 1,
    N = 2,
    P = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MisereConvention {
    Misere = 0,
    Normal = 1,
}

/// Opaque engine handle.
pub struct MisereEngine {
    engine: Engine,
}

impl From<Outcome> for MisereOutcome {
    fn from(o: Outcome) -> Self {
        match o {
            Outcome::L => MisereOutcome::L,
            Outcome::R => MisereOutcome::R,
            Outcome::N => MisereOutcome::N,
            Outcome::P => MisereOutcome::P,
        }
    }
}

fn status_of(e: &Error) -> MisereStatus {
    match e {
        Error::Parse { .. } => MisereStatus::Parse,
        Error::Precondition(_) | Error::Unsupported(_) | Error::Resource(_) | Error::Diagnostics(_) => {
            MisereStatus::Precondition
        }
        Error::UnknownId(_) | Error::InvalidArgument(_) => MisereStatus::InvalidArg,
    }
}

fn guard(f: impl FnOnce() -> MisereStatus) -> MisereStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(MisereStatus::Panic)
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, MisereStatus> {
    if p.is_null() {
        return Err(MisereStatus::NullArg);
    }
    CStr::from_ptr(p).to_str().map_err(|_| MisereStatus::InvalidArg)
}

fn known(e: &Engine, id: u32) -> Result<PositionId, MisereStatus> {
    let p = PositionId(id);
    if e.store().contains(p) {
        Ok(p)
    } else {
        Err(MisereStatus::InvalidArg)
    }
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

#[no_mangle]
pub extern "C" fn misere_engine_new() -> *mut MisereEngine {
    catch_unwind(|| Box::into_raw(Box::new(MisereEngine { engine: Engine::new() }))).unwrap_or(std::ptr::null_mut())
}

/// # Safety
/// `engine` is null or a handle from `misere_engine_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn misere_engine_free(engine: *mut MisereEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

/// Parses a single position (sums are compiled into one tree).
///
/// # Safety
/// `engine` is a live handle, `expr` a NUL-terminated string, `out_id` writable.
#[no_mangle]
pub unsafe extern "C" fn misere_parse(engine: *const MisereEngine, expr: *const c_char, out_id: *mut u32) -> MisereStatus {
    guard(|| {
        if engine.is_null() || out_id.is_null() {
            return MisereStatus::NullArg;
        }
        let s = tri!(text(expr));
        match (*engine).engine.parse_position(s) {
            Ok(p) => {
                *out_id = p.0;
                MisereStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Outcome of a sum of positions.
///
/// # Safety
/// `ids` points at `len` ids (may be null when `len` is 0); `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn misere_sum_outcome(
    engine: *const MisereEngine,
    ids: *const u32,
    len: usize,
    convention: MisereConvention,
    out: *mut MisereOutcome,
) -> MisereStatus {
    guard(|| {
        if engine.is_null() || out.is_null() || (ids.is_null() && len > 0) {
            return MisereStatus::NullArg;
        }
        let e = &(*engine).engine;
        let raw: &[u32] = if len == 0 { &[] } else { std::slice::from_raw_parts(ids, len) };
        let mut comps = Vec::with_capacity(len);
        for &id in raw {
            comps.push(tri!(known(e, id)));
        }
        let conv = match convention {
            MisereConvention::Misere => Convention::Misere,
            MisereConvention::Normal => Convention::Normal,
        };
        *out = e.outcome(&SumPosition::new(comps), conv).into();
        MisereStatus::Ok
    })
}

/// # Safety
/// As for `misere_sum_outcome` with a single id.
#[no_mangle]
pub unsafe extern "C" fn misere_outcome(
    engine: *const MisereEngine,
    id: u32,
    convention: MisereConvention,
    out: *mut MisereOutcome,
) -> MisereStatus {
    misere_sum_outcome(engine, &id, 1, convention, out)
}

/// # Safety
/// `engine` is a live handle and `out_id` writable.
#[no_mangle]
pub unsafe extern "C" fn misere_conjugate(engine: *const MisereEngine, id: u32, out_id: *mut u32) -> MisereStatus {
    guard(|| {
        if engine.is_null() || out_id.is_null() {
            return MisereStatus::NullArg;
        }
        let e = &(*engine).engine;
        let p = tri!(known(e, id));
        *out_id = e.conjugate(p).0;
        MisereStatus::Ok
    })
}

/// Writes the canonical text of a position, NUL-terminated.
/// `needed` receives the required size including the terminator, also on
/// `BUFFER_TOO_SMALL`.
///
/// # Safety
/// `buf` has room for `len` bytes (may be null when `len` is 0).
#[no_mangle]
pub unsafe extern "C" fn misere_format(
    engine: *const MisereEngine,
    id: u32,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> MisereStatus {
    guard(|| {
        if engine.is_null() || (buf.is_null() && len > 0) {
            return MisereStatus::NullArg;
        }
        let e = &(*engine).engine;
        let p = tri!(known(e, id));
        let s = e.format_position(p);
        let n = s.len() + 1;
        if !needed.is_null() {
            *needed = n;
        }
        if len < n {
            return MisereStatus::BufferTooSmall;
        }
        std::ptr::copy_nonoverlapping(s.as_ptr(), buf as *mut u8, s.len());
        *buf.add(s.len()) = 0;
        MisereStatus::Ok
    })
}

/// Class count of the misère monoid of the closure of a comma-separated
/// generator list. `out_finite` is 1 when the quotient stabilized at the bounds.
///
/// # Safety
/// `generators` is NUL-terminated; outputs are writable.
#[no_mangle]
pub unsafe extern "C" fn misere_quotient_classes(
    engine: *const MisereEngine,
    generators: *const c_char,
    sum_bound: u32,
    context_bound: u32,
    out_classes: *mut u32,
    out_finite: *mut i32,
) -> MisereStatus {
    guard(|| {
        if engine.is_null() || out_classes.is_null() || out_finite.is_null() {
            return MisereStatus::NullArg;
        }
        let e = &(*engine).engine;
        let s = tri!(text(generators));
        let gens = match e.parse_list(s) {
            Ok(g) => g,
            Err(err) => return status_of(&err),
        };
        match e.compute_quotient(&gens, sum_bound as usize, context_bound as usize) {
            Ok(q) => {
                *out_classes = q.class_count() as u32;
                *out_finite = (q.report().status == QuotientStatus::FiniteVerifiedAtBound) as i32;
                MisereStatus::Ok
            }
            Err(err) => status_of(&err),
        }
    })
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn misere_status_message(status: MisereStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        MisereStatus::Ok => b"ok\0",
        MisereStatus::NullArg => b"null argument\0",
        MisereStatus::Parse => b"parse error\0",
        MisereStatus::InvalidArg => b"invalid argument\0",
        MisereStatus::BufferTooSmall => b"buffer too small\0",
        MisereStatus::Precondition => b"precondition failed\0",
        MisereStatus::Panic => b"internal panic\0",
    };
    s.as_ptr() as *const c_char
}
