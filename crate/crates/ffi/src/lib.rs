//! C ABI over `kweights`.
//!
//! Squares and weights cross the boundary as opaque handles that the caller
//! releases with the matching `*_free` function. Every fallible call returns
//! a `KwStatus`; on failure `kw_last_error` describes the problem. Results
//! are written through out-pointers only when the call succeeds.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use kweights::cli::dichotomy_report;
use kweights::feasibility::{decide_k_weight, WeightDecision};
use kweights::group::AbelianGroup;
use kweights::io::{parse_square, parse_weight};
use kweights::latin::{classify, LatinSquare, PartialWeightClass, WeightMatrix};
use kweights::plex::{count_near_transversals, count_transversals, find_k_plex, PlexOutcome, SearchBudget};
use kweights::weights::{one_weight_odd_at, two_weight, uniform_weight};
use kweights::Error;

/// Opaque latin square handle.
pub struct KwSquare(LatinSquare);

/// Opaque integer weight matrix handle.
pub struct KwWeight(WeightMatrix);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KwStatus {
    Ok = 0,
    NullPointer = 1,
    /// Malformed square, weight, group spec or text.
    InvalidInput = 2,
    /// Argument outside the supported range (anchor, k, order cap).
    OutOfRange = 3,
    Overflow = 4,
    /// A Rust panic was caught at the boundary.
    Internal = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KwClassKind {
    Exact = 0,
    Partial = 1,
    Unclassified = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KwPlexResult {
    Found = 0,
    Exhausted = 1,
    BudgetExceeded = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> KwStatus {
    match e {
        Error::IntegerOverflow => KwStatus::Overflow,
        Error::OrderTooLarge { .. }
        | Error::KOutOfRange { .. }
        | Error::IOutOfRange { .. }
        | Error::ElementOutOfRange { .. }
        | Error::InvalidAnchor { .. }
        | Error::EvenOrder(_)
        | Error::ZeroK => KwStatus::OutOfRange,
        _ => KwStatus::InvalidInput,
    }
}

/// Runs `f`, translating errors and panics into a status and last-error text.
fn guard(f: impl FnOnce() -> Result<(), (KwStatus, String)>) -> KwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => KwStatus::Ok,
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".to_string());
            KwStatus::Internal
        }
    }
}

fn lift(e: Error) -> (KwStatus, String) {
    (status_of(&e), e.to_string())
}

fn null() -> (KwStatus, String) {
    (KwStatus::NullPointer, "null pointer argument".to_string())
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, (KwStatus, String)> {
    p.as_ref().ok_or_else(null)
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, (KwStatus, String)> {
    p.as_mut().ok_or_else(null)
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, (KwStatus, String)> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (KwStatus::InvalidInput, "text is not UTF-8".to_string()))
}

/// Message for the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn kw_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn kw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a square from `n * n` row-major symbols in `0..n`.
///
/// # Safety
/// `symbols` must point to `n * n` readable values; `out_square` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kw_square_from_flat(
    n: usize,
    symbols: *const i64,
    out_square: *mut *mut KwSquare,
) -> KwStatus {
    guard(|| {
        let dst = out(out_square)?;
        if symbols.is_null() {
            return Err(null());
        }
        let len = n.checked_mul(n).ok_or((KwStatus::Overflow, "order too large".to_string()))?;
        let flat = std::slice::from_raw_parts(symbols, len);
        let rows: Vec<&[i64]> = flat.chunks(n.max(1)).collect();
        let square = LatinSquare::from_rows(&rows).map_err(lift)?;
        *dst = Box::into_raw(Box::new(KwSquare(square)));
        Ok(())
    })
}

/// Parses the whitespace-separated text format (`#` comments allowed).
///
/// # Safety
/// `source` must be a NUL-terminated string; `out_square` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kw_square_parse(source: *const c_char, out_square: *mut *mut KwSquare) -> KwStatus {
    guard(|| {
        let dst = out(out_square)?;
        let square = parse_square(text(source)?).map_err(lift)?;
        *dst = Box::into_raw(Box::new(KwSquare(square)));
        Ok(())
    })
}

/// Cayley table of a group given as `cyclic:N` or `sum:M1,M2,...`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out_square` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kw_square_group(spec: *const c_char, out_square: *mut *mut KwSquare) -> KwStatus {
    guard(|| {
        let dst = out(out_square)?;
        let group: AbelianGroup = text(spec)?.parse().map_err(lift)?;
        *dst = Box::into_raw(Box::new(KwSquare(group.cayley_table())));
        Ok(())
    })
}

/// # Safety
/// `square` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn kw_square_free(square: *mut KwSquare) {
    if !square.is_null() {
        drop(Box::from_raw(square));
    }
}

/// Order of the square, or 0 for NULL.
///
/// # Safety
/// `square` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kw_square_order(square: *const KwSquare) -> usize {
    square.as_ref().map_or(0, |s| s.0.order())
}

/// # Safety
/// `square` must be a live handle; `out_symbol` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kw_square_get(
    square: *const KwSquare,
    row: usize,
    col: usize,
    out_symbol: *mut usize,
) -> KwStatus {
    guard(|| {
        let s = &deref(square)?.0;
        let dst = out(out_symbol)?;
        if row >= s.order() || col >= s.order() {
            return Err((KwStatus::OutOfRange, format!("cell ({row}, {col}) outside order {}", s.order())));
        }
        *dst = s.get(row, col);
        Ok(())
    })
}

/// Renders the square in the text format; free the result with `kw_string_free`.
///
/// # Safety
/// `square` must be a live handle; `out_text` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kw_square_to_string(square: *const KwSquare, out_text: *mut *mut c_char) -> KwStatus {
    guard(|| {
        let s = &deref(square)?.0;
        let dst = out(out_text)?;
        *dst = CString::new(s.to_string()).expect("no NUL in digits").into_raw();
        Ok(())
    })
}

/// Builds a weight from `n * n` row-major entries.
///
/// # Safety
/// `entries` must point to `n * n` readable values; `out_weight` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kw_weight_from_flat(
    n: usize,
    entries: *const i64,
    out_weight: *mut *mut KwWeight,
) -> KwStatus {
    guard(|| {
        let dst = out(out_weight)?;
        if entries.is_null() {
            return Err(null());
        }
        let len = n.checked_mul(n).ok_or((KwStatus::Overflow, "order too large".to_string()))?;
        let w = WeightMatrix::from_flat(n, std::slice::from_raw_parts(entries, len).to_vec()).map_err(lift)?;
        *dst = Box::into_raw(Box::new(KwWeight(w)));
        Ok(())
    })
}

/// Parses a weight in the text format.
///
/// # Safety
/// `source` must be a NUL-terminated string; `out_weight` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kw_weight_parse(source: *const c_char, out_weight: *mut *mut KwWeight) -> KwStatus {
    guard(|| {
        let dst = out(out_weight)?;
        let w = parse_weight(text(source)?).map_err(lift)?;
        *dst = Box::into_raw(Box::new(KwWeight(w)));
        Ok(())
    })
}

/// Constructs the anchored 1-weight (odd order), the anchored 2-weight, or
/// the uniform n-weight, chosen by `k`.
///
/// # Safety
/// `square` must be a live handle; `out_weight` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kw_weight_construct(
    square: *const KwSquare,
    k: i64,
    anchor_row: usize,
    anchor_col: usize,
    out_weight: *mut *mut KwWeight,
) -> KwStatus {
    guard(|| {
        let s = &deref(square)?.0;
        let dst = out(out_weight)?;
        let n = s.order();
        if anchor_row >= n || anchor_col >= n {
            return Err((KwStatus::OutOfRange, format!("anchor ({anchor_row}, {anchor_col}) outside order {n}")));
        }
        let anchor = s.triple(anchor_row, anchor_col);
        let w = match k {
            1 => one_weight_odd_at(s, anchor).map_err(lift)?,
            2 => two_weight(s, anchor).map_err(lift)?,
            k if k == n as i64 => uniform_weight(s),
            _ => return Err((KwStatus::OutOfRange, format!("no construction for k = {k}"))),
        };
        *dst = Box::into_raw(Box::new(KwWeight(w)));
        Ok(())
    })
}

/// # Safety
/// `weight` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn kw_weight_free(weight: *mut KwWeight) {
    if !weight.is_null() {
        drop(Box::from_raw(weight));
    }
}

/// Order of the weight matrix, or 0 for NULL.
///
/// # Safety
/// `weight` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kw_weight_order(weight: *const KwWeight) -> usize {
    weight.as_ref().map_or(0, |w| w.0.order())
}

/// # Safety
/// `weight` must be a live handle; `out_value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kw_weight_get(
    weight: *const KwWeight,
    row: usize,
    col: usize,
    out_value: *mut i64,
) -> KwStatus {
    guard(|| {
        let w = &deref(weight)?.0;
        let dst = out(out_value)?;
        if row >= w.order() || col >= w.order() {
            return Err((KwStatus::OutOfRange, format!("cell ({row}, {col}) outside order {}", w.order())));
        }
        *dst = w.get(row, col);
        Ok(())
    })
}

/// Classifies `weight` as an exact, partial or unclassified k-weight of
/// `square`. `out_length` receives the partial length (the order for exact
/// weights, 0 when unclassified).
///
/// # Safety
/// Handles must be live; out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn kw_classify(
    square: *const KwSquare,
    weight: *const KwWeight,
    k: i64,
    out_kind: *mut KwClassKind,
    out_length: *mut usize,
) -> KwStatus {
    guard(|| {
        let s = &deref(square)?.0;
        let w = &deref(weight)?.0;
        let (kind_dst, len_dst) = (out(out_kind)?, out(out_length)?);
        let class = classify(s, w, k).map_err(lift)?;
        *len_dst = class.length(s.order()).unwrap_or(0);
        *kind_dst = match class {
            PartialWeightClass::Exact { .. } => KwClassKind::Exact,
            PartialWeightClass::Partial { .. } => KwClassKind::Partial,
            PartialWeightClass::Unclassified => KwClassKind::Unclassified,
        };
        Ok(())
    })
}

/// Decides whether `square` has a k-weight. On success `out_feasible` is 1
/// or 0; when feasible and `out_witness` is non-NULL a witness handle is
/// stored there (otherwise it is set to NULL).
///
/// # Safety
/// `square` must be live; `out_feasible` must be writable; `out_witness`
/// may be NULL.
#[no_mangle]
pub unsafe extern "C" fn kw_decide(
    square: *const KwSquare,
    k: i64,
    out_feasible: *mut i32,
    out_witness: *mut *mut KwWeight,
) -> KwStatus {
    guard(|| {
        let s = &deref(square)?.0;
        let feasible_dst = out(out_feasible)?;
        let decision = decide_k_weight(s, k).map_err(lift)?;
        *feasible_dst = i32::from(decision.is_feasible());
        if let Some(dst) = out_witness.as_mut() {
            *dst = match decision {
                WeightDecision::Feasible(w) => Box::into_raw(Box::new(KwWeight(w))),
                WeightDecision::Infeasible(_) => ptr::null_mut(),
            };
        }
        Ok(())
    })
}

/// # Safety
/// `square` must be live; `out_count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kw_count_transversals(square: *const KwSquare, out_count: *mut u64) -> KwStatus {
    guard(|| {
        let s = &deref(square)?.0;
        let dst = out(out_count)?;
        *dst = count_transversals(s).map_err(lift)?;
        Ok(())
    })
}

/// Counts near transversals; with `maximal_only` non-zero, only those whose
/// missing cell does not carry the missing symbol.
///
/// # Safety
/// `square` must be live; `out_count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kw_count_near_transversals(
    square: *const KwSquare,
    maximal_only: i32,
    out_count: *mut u64,
) -> KwStatus {
    guard(|| {
        let s = &deref(square)?.0;
        let dst = out(out_count)?;
        *dst = count_near_transversals(s, maximal_only != 0).map_err(lift)?;
        Ok(())
    })
}

/// Searches for a k-plex within `max_nodes` search nodes (0 for the default
/// budget). When found and `out_plex` is non-NULL, the 0/1 selection is
/// stored there as a weight handle.
///
/// # Safety
/// `square` must be live; `out_result` must be writable; `out_plex` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn kw_find_k_plex(
    square: *const KwSquare,
    k: i64,
    max_nodes: u64,
    out_result: *mut KwPlexResult,
    out_plex: *mut *mut KwWeight,
) -> KwStatus {
    guard(|| {
        let s = &deref(square)?.0;
        let result_dst = out(out_result)?;
        let budget = if max_nodes == 0 {
            SearchBudget::default()
        } else {
            SearchBudget { max_nodes }
        };
        let outcome = find_k_plex(s, k, budget).map_err(lift)?;
        let mut plex = ptr::null_mut();
        *result_dst = match outcome {
            PlexOutcome::Found(sel) => {
                plex = Box::into_raw(Box::new(KwWeight(sel.to_weight())));
                KwPlexResult::Found
            }
            PlexOutcome::Exhausted => KwPlexResult::Exhausted,
            PlexOutcome::BudgetExceeded => KwPlexResult::BudgetExceeded,
        };
        match out_plex.as_mut() {
            Some(dst) => *dst = plex,
            None => kw_weight_free(plex),
        }
        Ok(())
    })
}

/// Checks the transversal / maximal near transversal dichotomy for a group;
/// `out_holds` receives 1 when it holds.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out_holds` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kw_verify_dichotomy(spec: *const c_char, out_holds: *mut i32) -> KwStatus {
    guard(|| {
        let dst = out(out_holds)?;
        let group: AbelianGroup = text(spec)?.parse().map_err(lift)?;
        let order = group.order();
        if order > kweights::plex::MAX_NEAR_COUNT_ORDER {
            return Err(lift(Error::OrderTooLarge {
                order,
                cap: kweights::plex::MAX_NEAR_COUNT_ORDER,
            }));
        }
        *dst = i32::from(dichotomy_report(&group).map_err(lift)?.holds);
        Ok(())
    })
}
