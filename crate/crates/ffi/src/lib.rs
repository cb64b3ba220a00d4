//! C ABI over the cube model, the encoder and the planner.
//!
//! Handles are opaque pointers created by `rubiksat_*_new`/`_parse`/`encode`
//! and released by the matching `_free`. Every fallible call returns a
//! [`RubiksatStatus`]; the message for the last failure on the calling
//! thread is available from [`rubiksat_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Duration;

use rubiksat::cnf::{to_dimacs, AmoMethod};
use rubiksat::cube::{format_facelets, parse_facelets, parse_maneuver, CubeState};
use rubiksat::encoder::{encode, ColorBits, Encoding, EncodingConfig, Mode};
use rubiksat::error::PlanError;
use rubiksat::planner::{Engine, Outcome, Planner, SolveReport};
use rubiksat::sat::BackendConfig;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RubiksatStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Config = 4,
    /// No solution within the requested length.
    Unsolved = 5,
    /// Time limit reached.
    Unknown = 6,
    Backend = 7,
    BufferTooSmall = 8,
    Verification = 9,
    Io = 10,
    Panic = 11,
}

/// Opaque cube state.
pub struct RubiksatCube(CubeState);

/// Opaque CNF encoding.
pub struct RubiksatEncoding(Encoding);

/// Encoding options. `phase1_len < 0` means no phase split.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct RubiksatEncodingConfig {
    pub n_states: u32,
    pub at_most: bool,
    pub phase1_len: i32,
    pub two_bit_colors: bool,
    pub prune_opposite: bool,
    pub prune_same_face: bool,
    pub last_move: bool,
    pub pairwise_amo: bool,
    pub frame_split: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn fail(status: RubiksatStatus, message: impl Into<String>) -> RubiksatStatus {
    set_error(message);
    status
}

/// Runs `f`, turning panics into [`RubiksatStatus::Panic`].
fn guard(f: impl FnOnce() -> RubiksatStatus) -> RubiksatStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(RubiksatStatus::Panic, "internal panic"))
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, RubiksatStatus> {
    if p.is_null() {
        return Err(fail(RubiksatStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(RubiksatStatus::InvalidUtf8, "string is not UTF-8"))
}

/// Copies `s` plus a terminating NUL into `buf`.
unsafe fn write_buf(s: &str, buf: *mut c_char, len: usize) -> RubiksatStatus {
    if buf.is_null() {
        return fail(RubiksatStatus::NullPointer, "null output buffer");
    }
    if s.len() + 1 > len {
        return fail(RubiksatStatus::BufferTooSmall, format!("need {} bytes", s.len() + 1));
    }
    ptr::copy_nonoverlapping(s.as_ptr().cast::<c_char>(), buf, s.len());
    *buf.add(s.len()) = 0;
    RubiksatStatus::Ok
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn rubiksat_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

#[no_mangle]
pub extern "C" fn rubiksat_cube_new_solved() -> *mut RubiksatCube {
    Box::into_raw(Box::new(RubiksatCube(CubeState::solved())))
}

/// Parses a 54-letter facelet string (faces F L B R U D).
///
/// # Safety
/// `facelets` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rubiksat_cube_parse(facelets: *const c_char, out: *mut *mut RubiksatCube) -> RubiksatStatus {
    guard(|| {
        if out.is_null() {
            return fail(RubiksatStatus::NullPointer, "null output handle");
        }
        let s = match text(facelets) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match parse_facelets(s.trim()) {
            Ok(state) => {
                *out = Box::into_raw(Box::new(RubiksatCube(state)));
                RubiksatStatus::Ok
            }
            Err(e) => fail(RubiksatStatus::Parse, e.to_string()),
        }
    })
}

/// Applies a maneuver such as `R U2 F'` in place.
///
/// # Safety
/// `cube` must be a live handle; `maneuver` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn rubiksat_cube_apply(cube: *mut RubiksatCube, maneuver: *const c_char) -> RubiksatStatus {
    guard(|| {
        let Some(cube) = cube.as_mut() else {
            return fail(RubiksatStatus::NullPointer, "null cube");
        };
        let s = match text(maneuver) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match parse_maneuver(s) {
            Ok(mv) => {
                cube.0 = cube.0.apply_maneuver(&mv);
                RubiksatStatus::Ok
            }
            Err(e) => fail(RubiksatStatus::Parse, e.to_string()),
        }
    })
}

/// Writes the 54-letter facelet string; `len` must be at least 55.
///
/// # Safety
/// `cube` must be a live handle; `buf` must hold `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn rubiksat_cube_format(
    cube: *const RubiksatCube,
    buf: *mut c_char,
    len: usize,
) -> RubiksatStatus {
    guard(|| match cube.as_ref() {
        Some(c) => write_buf(&format_facelets(&c.0), buf, len),
        None => fail(RubiksatStatus::NullPointer, "null cube"),
    })
}

/// 1 if solved, 0 if not, -1 for a null handle.
///
/// # Safety
/// `cube` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rubiksat_cube_is_solved(cube: *const RubiksatCube) -> c_int {
    cube.as_ref().map_or(-1, |c| c_int::from(c.0.is_solved()))
}

/// 1 if the state lies in the phase-2 subgroup, 0 if not, -1 for null.
///
/// # Safety
/// `cube` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rubiksat_cube_is_h_state(cube: *const RubiksatCube) -> c_int {
    cube.as_ref().map_or(-1, |c| c_int::from(c.0.is_h_state()))
}

/// # Safety
/// `cube` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rubiksat_cube_free(cube: *mut RubiksatCube) {
    if !cube.is_null() {
        drop(Box::from_raw(cube));
    }
}

/// Defaults for an exact-length encoding of `moves` moves.
#[no_mangle]
pub extern "C" fn rubiksat_encoding_config_default(moves: u32) -> RubiksatEncodingConfig {
    RubiksatEncodingConfig {
        n_states: moves + 1,
        at_most: false,
        phase1_len: -1,
        two_bit_colors: false,
        prune_opposite: true,
        prune_same_face: false,
        last_move: true,
        pairwise_amo: false,
        frame_split: true,
    }
}

fn to_config(c: &RubiksatEncodingConfig) -> EncodingConfig {
    EncodingConfig {
        n_states: c.n_states as usize,
        mode: if c.at_most { Mode::AtMost } else { Mode::ExactLength },
        phase1_len: usize::try_from(c.phase1_len).ok(),
        color_bits: if c.two_bit_colors {
            ColorBits::TwoForPhase2
        } else {
            ColorBits::ThreeEverywhere
        },
        pruning_opposite: c.prune_opposite,
        pruning_same_face: c.prune_same_face,
        last_move_constraint: c.last_move,
        amo_method: if c.pairwise_amo {
            AmoMethod::Pairwise
        } else {
            AmoMethod::Product
        },
        frame_split: c.frame_split,
    }
}

/// # Safety
/// `cube` must be a live handle, `config` readable, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rubiksat_encode(
    cube: *const RubiksatCube,
    config: *const RubiksatEncodingConfig,
    out: *mut *mut RubiksatEncoding,
) -> RubiksatStatus {
    guard(|| {
        let (Some(cube), Some(config)) = (cube.as_ref(), config.as_ref()) else {
            return fail(RubiksatStatus::NullPointer, "null cube or config");
        };
        if out.is_null() {
            return fail(RubiksatStatus::NullPointer, "null output handle");
        }
        match encode(&cube.0, &to_config(config)) {
            Ok(enc) => {
                *out = Box::into_raw(Box::new(RubiksatEncoding(enc)));
                RubiksatStatus::Ok
            }
            Err(e) => fail(RubiksatStatus::Config, e.to_string()),
        }
    })
}

/// # Safety
/// `enc` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rubiksat_encoding_num_vars(enc: *const RubiksatEncoding) -> u64 {
    enc.as_ref().map_or(0, |e| e.0.formula.num_vars() as u64)
}

/// # Safety
/// `enc` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rubiksat_encoding_num_clauses(enc: *const RubiksatEncoding) -> u64 {
    enc.as_ref().map_or(0, |e| e.0.formula.num_clauses() as u64)
}

/// Writes the formula as DIMACS to `path`.
///
/// # Safety
/// `enc` must be a live handle; `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn rubiksat_encoding_write_dimacs(
    enc: *const RubiksatEncoding,
    path: *const c_char,
) -> RubiksatStatus {
    guard(|| {
        let Some(enc) = enc.as_ref() else {
            return fail(RubiksatStatus::NullPointer, "null encoding");
        };
        let path = match text(path) {
            Ok(p) => p,
            Err(status) => return status,
        };
        match std::fs::write(path, to_dimacs(&enc.0.formula)) {
            Ok(()) => RubiksatStatus::Ok,
            Err(e) => fail(RubiksatStatus::Io, format!("{path}: {e}")),
        }
    })
}

/// DIMACS text as a new string; release it with [`rubiksat_string_free`].
/// Null on a null handle.
///
/// # Safety
/// `enc` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rubiksat_encoding_dimacs(enc: *const RubiksatEncoding) -> *mut c_char {
    match enc.as_ref() {
        Some(e) => CString::new(to_dimacs(&e.0.formula)).map_or(ptr::null_mut(), CString::into_raw),
        None => {
            set_error("null encoding");
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `enc` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rubiksat_encoding_free(enc: *mut RubiksatEncoding) {
    if !enc.is_null() {
        drop(Box::from_raw(enc));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rubiksat_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn planner(timeout_ms: u64, template: EncodingConfig) -> Planner {
    let backend = BackendConfig::builtin().with_timeout(Duration::from_millis(timeout_ms.max(1)));
    Planner {
        template,
        engine: Engine::Direct(backend),
    }
}

unsafe fn report_into(result: Result<SolveReport, PlanError>, buf: *mut c_char, len: usize) -> RubiksatStatus {
    let report = match result {
        Ok(r) => r,
        Err(PlanError::Verification(m)) => return fail(RubiksatStatus::Verification, m),
        Err(e @ (PlanError::Backend(_) | PlanError::Orchestrator(_))) => {
            return fail(RubiksatStatus::Backend, e.to_string())
        }
        Err(e) => return fail(RubiksatStatus::Config, e.to_string()),
    };
    match (report.outcome, report.maneuver()) {
        (Outcome::Solved, Some(mv)) => write_buf(&mv.to_string(), buf, len),
        (Outcome::Unknown, _) => fail(RubiksatStatus::Unknown, "time limit reached"),
        _ => fail(RubiksatStatus::Unsolved, "no solution within the given length"),
    }
}

/// Shortest solution of at most `max_length` (<= 13) moves, written as
/// text into `buf`. Each length gets `timeout_ms`.
///
/// # Safety
/// `cube` must be a live handle; `buf` must hold `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn rubiksat_solve_optimal(
    cube: *const RubiksatCube,
    max_length: u32,
    timeout_ms: u64,
    buf: *mut c_char,
    len: usize,
) -> RubiksatStatus {
    guard(|| {
        let Some(cube) = cube.as_ref() else {
            return fail(RubiksatStatus::NullPointer, "null cube");
        };
        let p = planner(timeout_ms, EncodingConfig::exact(0));
        report_into(p.solve_optimal_shallow(&cube.0, max_length as usize), buf, len)
    })
}

/// Two-phase search within `budget` moves, trying each phase-1 length in
/// `sweep` in order.
///
/// # Safety
/// `cube` must be a live handle; `sweep` must hold `sweep_len` values;
/// `buf` must hold `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn rubiksat_solve_two_phase(
    cube: *const RubiksatCube,
    budget: u32,
    sweep: *const u32,
    sweep_len: usize,
    timeout_ms: u64,
    buf: *mut c_char,
    len: usize,
) -> RubiksatStatus {
    guard(|| {
        let Some(cube) = cube.as_ref() else {
            return fail(RubiksatStatus::NullPointer, "null cube");
        };
        if sweep.is_null() || sweep_len == 0 {
            return fail(RubiksatStatus::NullPointer, "empty phase-1 sweep");
        }
        let ks: Vec<usize> = std::slice::from_raw_parts(sweep, sweep_len)
            .iter()
            .map(|&k| k as usize)
            .collect();
        let p = planner(timeout_ms, EncodingConfig::at_most(0));
        report_into(p.solve_two_phase(&cube.0, budget as usize, &ks), buf, len)
    })
}
