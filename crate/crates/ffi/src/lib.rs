//! C ABI for `tanglebound`.
//!
//! States are opaque handles created by `tb_state4_new` or
//! `tb_class_representative` and released with `tb_state4_free`. Every
//! fallible call returns a `TbStatus`; on failure `tb_last_error` describes
//! the error for the calling thread. Strings returned by the library are
//! released with `tb_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tanglebound::bounds::best_bound;
use tanglebound::classes::{ClassId, ClassSpec};
use tanglebound::invariants::{correlation_summary, invariant_set, Traced, Triple};
use tanglebound::qstate::PureState4;
use tanglebound::rank2::{ghzw_bound, ghzw_threshold};
use tanglebound::{Error, C64};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotNormalized = 3,
    OutOfRange = 4,
    Numerical = 5,
    Panic = 6,
}

/// Qubit triples, passed as `uint32_t`.
#[repr(C)]
pub enum TbTriple {
    A1A2A3 = 0,
    A1A2A4 = 1,
    A1A3A4 = 2,
}

/// Traced qubits, passed as `uint32_t`.
#[repr(C)]
pub enum TbTraced {
    A2 = 2,
    A3 = 3,
    A4 = 4,
}

/// Degree-8 summary of one qubit triple.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct TbCorrelation {
    pub n48: f64,
    pub abs_i48: f64,
    pub tau48: f64,
    pub three_way: f64,
}

/// Opaque normalized four-qubit pure state.
pub struct TbState4(PureState4);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> TbStatus {
    match e {
        Error::NotNormalized(_) | Error::ZeroState => TbStatus::NotNormalized,
        Error::OutOfRange(_) => TbStatus::OutOfRange,
        _ if e.is_numerical() => TbStatus::Numerical,
        _ => TbStatus::InvalidArgument,
    }
}

fn fail(status: TbStatus, msg: &str) -> TbStatus {
    set_error(msg);
    status
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), TbStatus>) -> TbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            TbStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(_) => fail(TbStatus::Panic, "internal panic"),
    }
}

fn lift<T>(r: tanglebound::Result<T>) -> Result<T, TbStatus> {
    r.map_err(|e| fail(status_of(&e), &e.to_string()))
}

fn null() -> TbStatus {
    fail(TbStatus::NullPointer, "null pointer argument")
}

fn triple_of(t: u32) -> Result<Triple, TbStatus> {
    Triple::ALL
        .get(t as usize)
        .copied()
        .ok_or_else(|| fail(TbStatus::InvalidArgument, &format!("unknown triple {t}")))
}

fn traced_of(t: u32) -> Result<Traced, TbStatus> {
    match t {
        2 => Ok(Traced::A2),
        3 => Ok(Traced::A3),
        4 => Ok(Traced::A4),
        _ => Err(fail(
            TbStatus::InvalidArgument,
            &format!("cannot trace qubit {t}"),
        )),
    }
}

unsafe fn state_ref<'a>(s: *const TbState4) -> Result<&'a PureState4, TbStatus> {
    s.as_ref().map(|s| &s.0).ok_or_else(null)
}

/// Message for the last failed call on this thread; empty after success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn tb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Creates a state from 32 doubles (16 interleaved re/im amplitudes, index
/// `8 i1 + 4 i2 + 2 i3 + i4`). The amplitudes must be normalized unless
/// `normalize` is nonzero.
///
/// # Safety
/// `amps` must point to `len` readable doubles and `out` to a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tb_state4_new(
    amps: *const f64,
    len: usize,
    normalize: i32,
    out: *mut *mut TbState4,
) -> TbStatus {
    guard(|| {
        if amps.is_null() || out.is_null() {
            return Err(null());
        }
        *out = ptr::null_mut();
        if len != 32 {
            return Err(fail(
                TbStatus::InvalidArgument,
                &format!("expected 32 doubles, got {len}"),
            ));
        }
        let raw = std::slice::from_raw_parts(amps, len);
        let z: Vec<C64> = raw.chunks(2).map(|p| C64::new(p[0], p[1])).collect();
        let mut s = lift(PureState4::from_slice(&z))?;
        if normalize != 0 {
            s = lift(s.normalize())?;
        } else if !s.is_normalized() {
            return Err(fail(
                TbStatus::NotNormalized,
                &format!("squared norm {}", s.norm_sqr()),
            ));
        }
        *out = Box::into_raw(Box::new(TbState4(s)));
        Ok(())
    })
}

/// Releases a state; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tb_state4_free(s: *mut TbState4) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Copies the 16 amplitudes as 32 interleaved doubles into `out`.
///
/// # Safety
/// `s` must be a live handle and `out` must hold 32 doubles.
#[no_mangle]
pub unsafe extern "C" fn tb_state4_amps(s: *const TbState4, out: *mut f64) -> TbStatus {
    guard(|| {
        let s = state_ref(s)?;
        if out.is_null() {
            return Err(null());
        }
        let dst = std::slice::from_raw_parts_mut(out, 32);
        for (k, z) in s.amps().iter().enumerate() {
            dst[2 * k] = z.re;
            dst[2 * k + 1] = z.im;
        }
        Ok(())
    })
}

/// Normalized representative of class `class_id` (1-9). `params` holds
/// interleaved re/im pairs for the parameters the class takes, in a, b, c, d
/// order; `n_params` counts complex values.
///
/// # Safety
/// `params` must point to `2 * n_params` doubles (may be null when zero) and
/// `out` to a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tb_class_representative(
    class_id: u32,
    params: *const f64,
    n_params: usize,
    out: *mut *mut TbState4,
) -> TbStatus {
    guard(|| {
        if out.is_null() || (params.is_null() && n_params > 0) {
            return Err(null());
        }
        *out = ptr::null_mut();
        let id = (class_id as usize)
            .checked_sub(1)
            .and_then(|k| ClassId::ALL.get(k).copied())
            .ok_or_else(|| {
                fail(
                    TbStatus::InvalidArgument,
                    &format!("unknown class {class_id}"),
                )
            })?;
        let values: Vec<C64> = if n_params == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(params, 2 * n_params)
                .chunks(2)
                .map(|p| C64::new(p[0], p[1]))
                .collect()
        };
        let mut given = values.into_iter();
        let mut slots = [None; 4];
        for (slot, used) in slots.iter_mut().zip(id.params()) {
            if used {
                *slot = given.next();
            }
        }
        if given.next().is_some() {
            return Err(fail(TbStatus::InvalidArgument, "too many parameters"));
        }
        let spec = lift(ClassSpec::new(id, slots[0], slots[1], slots[2], slots[3]))?;
        let s = lift(spec.representative())?;
        *out = Box::into_raw(Box::new(TbState4(s)));
        Ok(())
    })
}

/// Invariant set for the traced qubit (2, 3 or 4) as 10 doubles:
/// re/im of the 4-0, 3-1, 2-2, 1-3 and 0-4 invariants.
///
/// # Safety
/// `s` must be a live handle and `out` must hold 10 doubles.
#[no_mangle]
pub unsafe extern "C" fn tb_invariants(s: *const TbState4, traced: u32, out: *mut f64) -> TbStatus {
    guard(|| {
        let s = state_ref(s)?;
        if out.is_null() {
            return Err(null());
        }
        let set = lift(invariant_set(s, traced_of(traced)?))?;
        let dst = std::slice::from_raw_parts_mut(out, 10);
        for (k, z) in set.coeffs().iter().enumerate() {
            dst[2 * k] = z.re;
            dst[2 * k + 1] = z.im;
        }
        Ok(())
    })
}

/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tb_correlation(
    s: *const TbState4,
    triple: u32,
    out: *mut TbCorrelation,
) -> TbStatus {
    guard(|| {
        let s = state_ref(s)?;
        if out.is_null() {
            return Err(null());
        }
        let c = lift(correlation_summary(s, triple_of(triple)?))?;
        *out = TbCorrelation {
            n48: c.n48,
            abs_i48: c.i48.norm(),
            tau48: c.tau48,
            three_way: c.three_way,
        };
        Ok(())
    })
}

/// Best certified upper bound on the three-tangle of the reduced state.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tb_best_bound(s: *const TbState4, triple: u32, out: *mut f64) -> TbStatus {
    guard(|| {
        let s = state_ref(s)?;
        if out.is_null() {
            return Err(null());
        }
        *out = lift(best_bound(s, triple_of(triple)?))?.best;
        Ok(())
    })
}

/// Full bound report as a JSON string; release with `tb_string_free`.
///
/// # Safety
/// `s` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tb_report_json(
    s: *const TbState4,
    triple: u32,
    out: *mut *mut c_char,
) -> TbStatus {
    guard(|| {
        let s = state_ref(s)?;
        if out.is_null() {
            return Err(null());
        }
        *out = ptr::null_mut();
        let report = lift(best_bound(s, triple_of(triple)?))?;
        let text = CString::new(report.to_json().to_string()).expect("JSON has no NULs");
        *out = text.into_raw();
        Ok(())
    })
}

/// # Safety
/// `p` must come from this library; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn tb_string_free(p: *mut c_char) {
    if !p.is_null() {
        drop(CString::from_raw(p));
    }
}

/// GHZ weight below which the GHZ/W mixture has zero three-tangle.
#[no_mangle]
pub extern "C" fn tb_ghzw_threshold() -> f64 {
    ghzw_threshold()
}

/// Three-tangle bound of the GHZ/W mixture with GHZ weight `p`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tb_ghzw_bound(p: f64, out: *mut f64) -> TbStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        *out = lift(ghzw_bound(p))?;
        Ok(())
    })
}
