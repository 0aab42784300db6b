// Copyright 2026 The qsearch Developers
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except
// in compliance with the License. You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
// or implied. See the License for the specific language governing permissions and limitations under
// the License.

//! C ABI for the qsearch simulation toolkit.
//!
//! The surface is a flat set of `qsearch_*` functions over one opaque handle
//! (`qsearch_state`, a state vector plus its query ledger) and plain result
//! structs. Every fallible call returns a [`QsearchStatus`]; on failure a
//! thread-local message is available via [`qsearch_last_error_message`].
//! The header `include/qsearch.h` is generated by cbindgen at build time.

use std::cell::RefCell;
use std::ffi::{CStr, CString, c_char};

use qsearch_core::circuit::Circuit;
use qsearch_core::refutation::{self, RoundSpec};
use qsearch_core::state::{QueryLedger, StateVector};
use qsearch_core::{Error, RegisterLayout, adversary, bound, grover};

/// Status code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QsearchStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Bad argument values (out-of-range indices, malformed rounds, …).
    InvalidArgument = 2,
    /// The requested register exceeds the qubit cap.
    CapacityExceeded = 3,
    /// Circuit text failed to parse.
    ParseError = 4,
    /// An asserted experiment invariant did not hold.
    InvariantViolation = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn fail(err: &Error) -> QsearchStatus {
    let message = CString::new(err.to_string()).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
    match err {
        Error::CapacityExceeded { .. } => QsearchStatus::CapacityExceeded,
        Error::Parse { .. } => QsearchStatus::ParseError,
        Error::Invariant(_) => QsearchStatus::InvariantViolation,
        _ => QsearchStatus::InvalidArgument,
    }
}

fn fail_null() -> QsearchStatus {
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = Some(CString::new("null pointer argument").unwrap())
    });
    QsearchStatus::NullPointer
}

/// A state vector together with its oracle-query ledger.
pub struct QsearchState {
    state: StateVector,
    ledger: QueryLedger,
}

/// Search outcome of [`qsearch_grover_run`].
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct QsearchGroverResult {
    /// Probability of measuring the marked index afterwards.
    pub success_probability: f64,
    /// `sin²((2t+1)·arcsin(1/√N))` at the same iteration count.
    pub closed_form: f64,
    /// Iterations maximizing the closed form.
    pub optimal_iterations: u64,
    /// Oracle queries spent (equals the iteration count).
    pub queries: u64,
}

/// Outcome of [`qsearch_refute_run`].
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct QsearchRefuteResult {
    /// Probability that the first ancilla register reads the marked index.
    pub reveal_probability: f64,
    /// 1/N.
    pub reveal_bound: f64,
    /// Optimal-guesser success from a full-register measurement.
    pub identification_probability: f64,
    /// 2/N.
    pub identification_bound: f64,
    /// Oracle queries spent (always 1).
    pub queries: u64,
    /// Marked index 0 coincides with the initial ancilla pattern; the
    /// reveal probability is degenerate there.
    pub degenerate_marked: bool,
    /// Both probabilities sat within their bounds (reveal skipped when
    /// degenerate).
    pub bounds_hold: bool,
}

/// Outcome of [`qsearch_adversary_run`].
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct QsearchAdversaryResult {
    pub max_success: f64,
    pub mean_success: f64,
    /// Best success any strategy with this many queries can reach.
    pub ceiling: f64,
    pub queries: u64,
    pub trials: u64,
    pub ceiling_respected: bool,
}

/// Library version as a static NUL-terminated string.
#[unsafe(no_mangle)]
pub extern "C" fn qsearch_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failure on this thread, or null if none. The pointer
/// stays valid until the next failing qsearch call on the same thread.
#[unsafe(no_mangle)]
pub extern "C" fn qsearch_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |msg| msg.as_ptr())
    })
}

/// Allocate a `num_qubits`-qubit state in the computational basis state
/// `basis_index`, with an empty query ledger.
///
/// # Safety
/// `out` must be a valid pointer; on `Ok` it receives a handle that must be
/// released with [`qsearch_state_free`].
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qsearch_state_new(
    num_qubits: u32,
    basis_index: u64,
    out: *mut *mut QsearchState,
) -> QsearchStatus {
    if out.is_null() {
        return fail_null();
    }
    match StateVector::new_basis(num_qubits as usize, basis_index) {
        Ok(state) => {
            let handle = Box::new(QsearchState {
                state,
                ledger: QueryLedger::new(),
            });
            unsafe { *out = Box::into_raw(handle) };
            QsearchStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Release a handle from [`qsearch_state_new`] or [`qsearch_circuit_run`].
/// Null is ignored.
///
/// # Safety
/// `state` must be a handle returned by this library, not yet freed.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qsearch_state_free(state: *mut QsearchState) {
    if !state.is_null() {
        drop(unsafe { Box::from_raw(state) });
    }
}

macro_rules! deref {
    ($ptr:expr) => {
        match unsafe { $ptr.as_ref() } {
            Some(r) => r,
            None => return fail_null(),
        }
    };
}

macro_rules! deref_mut {
    ($ptr:expr) => {
        match unsafe { $ptr.as_mut() } {
            Some(r) => r,
            None => return fail_null(),
        }
    };
}

macro_rules! write_out {
    ($out:expr, $value:expr) => {{
        let out = $out;
        if out.is_null() {
            return fail_null();
        }
        unsafe { *out = $value };
    }};
}

/// # Safety
/// `state` must be a live handle; `out` must be valid for writes.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qsearch_state_num_qubits(
    state: *const QsearchState,
    out: *mut u32,
) -> QsearchStatus {
    let handle = deref!(state);
    write_out!(out, handle.state.num_qubits() as u32);
    QsearchStatus::Ok
}

/// Oracle queries recorded on this handle so far.
///
/// # Safety
/// `state` must be a live handle; `out` must be valid for writes.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qsearch_state_queries(
    state: *const QsearchState,
    out: *mut u64,
) -> QsearchStatus {
    let handle = deref!(state);
    write_out!(out, handle.ledger.queries());
    QsearchStatus::Ok
}

/// Σ|amplitude|² of the state.
///
/// # Safety
/// `state` must be a live handle; `out` must be valid for writes.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qsearch_state_norm(
    state: *const QsearchState,
    out: *mut f64,
) -> QsearchStatus {
    let handle = deref!(state);
    write_out!(out, handle.state.norm_sq());
    QsearchStatus::Ok
}

/// Real and imaginary parts of one amplitude.
///
/// # Safety
/// `state` must be a live handle; `out_re` and `out_im` must be valid for
/// writes.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qsearch_state_amplitude(
    state: *const QsearchState,
    basis_index: u64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> QsearchStatus {
    let handle = deref!(state);
    if basis_index >= handle.state.dim() as u64 {
        return fail(&Error::IndexOutOfRange {
            index: basis_index,
            dim: handle.state.dim() as u64,
        });
    }
    let amp = handle.state.amplitude(basis_index as usize);
    write_out!(out_re, amp.re);
    write_out!(out_im, amp.im);
    QsearchStatus::Ok
}

/// Hadamard on one qubit.
///
/// # Safety
/// `state` must be a live handle.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qsearch_state_apply_h(
    state: *mut QsearchState,
    qubit: u32,
) -> QsearchStatus {
    let handle = deref_mut!(state);
    match handle.state.apply_h(qubit as usize) {
        Ok(()) => QsearchStatus::Ok,
        Err(e) => fail(&e),
    }
}

/// Bit flip on one qubit.
///
/// # Safety
/// `state` must be a live handle.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qsearch_state_apply_x(
    state: *mut QsearchState,
    qubit: u32,
) -> QsearchStatus {
    let handle = deref_mut!(state);
    match handle.state.apply_x(qubit as usize) {
        Ok(()) => QsearchStatus::Ok,
        Err(e) => fail(&e),
    }
}

/// CNOT.
///
/// # Safety
/// `state` must be a live handle.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qsearch_state_apply_cnot(
    state: *mut QsearchState,
    control: u32,
    target: u32,
) -> QsearchStatus {
    let handle = deref_mut!(state);
    match handle.state.apply_cnot(control as usize, target as usize) {
        Ok(()) => QsearchStatus::Ok,
        Err(e) => fail(&e),
    }
}

/// Toffoli.
///
/// # Safety
/// `state` must be a live handle.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qsearch_state_apply_ccx(
    state: *mut QsearchState,
    control0: u32,
    control1: u32,
    target: u32,
) -> QsearchStatus {
    let handle = deref_mut!(state);
    match handle
        .state
        .apply_ccx(control0 as usize, control1 as usize, target as usize)
    {
        Ok(()) => QsearchStatus::Ok,
        Err(e) => fail(&e),
    }
}

/// Flip oracle on a state of exactly `index_width + 1` qubits: flips the
/// flag qubit (the last one) where the index register equals `marked`, and
/// records one query on the handle's ledger.
///
/// # Safety
/// `state` must be a live handle.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qsearch_state_apply_oracle_flip(
    state: *mut QsearchState,
    index_width: u32,
    marked: u64,
) -> QsearchStatus {
    let handle = deref_mut!(state);
    let layout = match RegisterLayout::new(index_width as usize, 0) {
        Ok(layout) => layout,
        Err(e) => return fail(&e),
    };
    match handle
        .state
        .apply_oracle_flip(&layout, marked, &mut handle.ledger)
    {
        Ok(()) => QsearchStatus::Ok,
        Err(e) => fail(&e),
    }
}

/// Phase oracle: negates every basis state whose low `index_width` qubits
/// equal `marked`, and records one query.
///
/// # Safety
/// `state` must be a live handle.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qsearch_state_apply_oracle_phase(
    state: *mut QsearchState,
    index_width: u32,
    marked: u64,
) -> QsearchStatus {
    let handle = deref_mut!(state);
    match handle
        .state
        .apply_oracle_phase(index_width as usize, marked, &mut handle.ledger)
    {
        Ok(()) => QsearchStatus::Ok,
        Err(e) => fail(&e),
    }
}

/// Probability that measuring the listed qubits yields `value` (bit `j` of
/// `value` is the outcome of `qubits[j]`).
///
/// # Safety
/// `state` must be a live handle; `qubits` must point to `len` readable
/// `u32`s (or be unused when `len` is 0); `out` must be valid for writes.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qsearch_state_marginal(
    state: *const QsearchState,
    qubits: *const u32,
    len: usize,
    value: u64,
    out: *mut f64,
) -> QsearchStatus {
    let handle = deref!(state);
    let register: Vec<usize> = if len == 0 {
        Vec::new()
    } else {
        if qubits.is_null() {
            return fail_null();
        }
        unsafe { std::slice::from_raw_parts(qubits, len) }
            .iter()
            .map(|&q| q as usize)
            .collect()
    };
    match handle.state.marginal_prob(&register, value) {
        Ok(p) => {
            write_out!(out, p);
            QsearchStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// `arcsin(1/√N)`.
///
/// # Safety
/// `out` must be valid for writes.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qsearch_grover_angle(num_items: u64, out: *mut f64) -> QsearchStatus {
    match grover::grover_angle(num_items) {
        Ok(theta) => {
            write_out!(out, theta);
            QsearchStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// `sin²((2t+1)·arcsin(1/√N))`.
///
/// # Safety
/// `out` must be valid for writes.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qsearch_grover_closed_form(
    num_items: u64,
    iterations: u64,
    out: *mut f64,
) -> QsearchStatus {
    match grover::closed_form_success(num_items, iterations) {
        Ok(p) => {
            write_out!(out, p);
            QsearchStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Iterations maximizing the closed-form success, ties toward fewer.
///
/// # Safety
/// `out` must be valid for writes.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qsearch_grover_optimal_iterations(
    num_items: u64,
    out: *mut u64,
) -> QsearchStatus {
    match grover::optimal_iterations(num_items) {
        Ok(t) => {
            write_out!(out, t);
            QsearchStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Simulate a Grover run over `2^index_width` items.
///
/// # Safety
/// `out` must be valid for writes.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qsearch_grover_run(
    index_width: u32,
    marked: u64,
    iterations: u64,
    out: *mut QsearchGroverResult,
) -> QsearchStatus {
    if out.is_null() {
        return fail_null();
    }
    let run = || -> Result<QsearchGroverResult, Error> {
        let outcome = grover::run_grover(index_width as usize, marked, iterations)?;
        let num_items = 1u64 << index_width;
        Ok(QsearchGroverResult {
            success_probability: outcome.success_probability,
            closed_form: grover::closed_form_success(num_items, iterations)?,
            optimal_iterations: grover::optimal_iterations(num_items)?,
            queries: outcome.queries,
        })
    };
    match run() {
        Ok(result) => {
            unsafe { *out = result };
            QsearchStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Run the ancilla-copy pipeline: prepare, copy round, then the rounds
/// described by `rounds` (same grammar as the CLI: comma list of
/// `identity`, `hadamard`, `random:<k>`; null or empty means none).
///
/// # Safety
/// `rounds` must be null or a NUL-terminated string; `out` must be valid
/// for writes.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qsearch_refute_run(
    index_width: u32,
    marked: u64,
    ancilla_registers: u32,
    rounds: *const c_char,
    seed: u64,
    out: *mut QsearchRefuteResult,
) -> QsearchStatus {
    if out.is_null() {
        return fail_null();
    }
    let rounds_text = if rounds.is_null() {
        ""
    } else {
        match unsafe { CStr::from_ptr(rounds) }.to_str() {
            Ok(s) => s,
            Err(_) => {
                return fail(&Error::InvalidArgument(
                    "rounds string is not valid UTF-8".into(),
                ));
            }
        }
    };
    let run = || -> Result<QsearchRefuteResult, Error> {
        let specs = RoundSpec::parse_list(rounds_text, seed)?;
        let summary = refutation::run_refutation(
            index_width as usize,
            marked,
            ancilla_registers as usize,
            &specs,
        )?;
        let reveal_ok = summary.degenerate_marked
            || summary.reveal_probability <= summary.reveal_bound + 1e-12;
        let ident_ok =
            summary.identification_probability <= summary.identification_bound + 1e-12;
        Ok(QsearchRefuteResult {
            reveal_probability: summary.reveal_probability,
            reveal_bound: summary.reveal_bound,
            identification_probability: summary.identification_probability,
            identification_bound: summary.identification_bound,
            queries: summary.queries,
            degenerate_marked: summary.degenerate_marked,
            bounds_hold: reveal_ok && ident_ok,
        })
    };
    match run() {
        Ok(result) => {
            unsafe { *out = result };
            QsearchStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// `⌈arcsin(√(2^-p))·√(2^(n+m))⌉`.
///
/// # Safety
/// `out` must be valid for writes.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qsearch_bound_query_estimate(
    index_width: u32,
    ancilla_width: u32,
    exponent: u32,
    out: *mut u64,
) -> QsearchStatus {
    match bound::query_count_estimate(index_width, ancilla_width, exponent) {
        Ok(estimate) => {
            write_out!(out, estimate);
            QsearchStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// The ⌈⌉-free core of the query estimate, with a real exponent.
///
/// # Safety
/// `out` must be valid for writes.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qsearch_bound_query_estimate_real(
    index_width: u32,
    ancilla_width: u32,
    exponent: f64,
    out: *mut f64,
) -> QsearchStatus {
    match bound::query_count_real(index_width, ancilla_width, exponent) {
        Ok(estimate) => {
            write_out!(out, estimate);
            QsearchStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Seeded adversarial sweep: `trials` random circuits with `queries`
/// counted oracle calls each, scored with every ancilla pattern accepted.
///
/// # Safety
/// `out` must be valid for writes.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qsearch_adversary_run(
    index_width: u32,
    extra_qubits: u32,
    queries: u64,
    trials: u64,
    seed: u64,
    out: *mut QsearchAdversaryResult,
) -> QsearchStatus {
    if out.is_null() {
        return fail_null();
    }
    let config = adversary::AdversaryConfig::new(
        index_width as usize,
        extra_qubits as usize,
        queries,
        trials,
        seed,
    );
    match adversary::adversarial_search(&config) {
        Ok(report) => {
            unsafe {
                *out = QsearchAdversaryResult {
                    max_success: report.max_success,
                    mean_success: report.mean_success,
                    ceiling: report.ceiling,
                    queries: report.queries,
                    trials: report.trials,
                    ceiling_respected: report.ceiling_respected,
                }
            };
            QsearchStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Parse circuit text (the CLI grammar) and execute it from `|0…0⟩`,
/// returning a fresh state handle carrying the final state and ledger.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be valid for writes
/// and on `Ok` receives a handle to free with [`qsearch_state_free`].
#[unsafe(no_mangle)]
pub unsafe extern "C" fn qsearch_circuit_run(
    text: *const c_char,
    out: *mut *mut QsearchState,
) -> QsearchStatus {
    if text.is_null() || out.is_null() {
        return fail_null();
    }
    let source = match unsafe { CStr::from_ptr(text) }.to_str() {
        Ok(s) => s,
        Err(_) => {
            return fail(&Error::InvalidArgument(
                "circuit text is not valid UTF-8".into(),
            ));
        }
    };
    let run = || -> Result<(StateVector, QueryLedger), Error> {
        Circuit::parse(source)?.execute()
    };
    match run() {
        Ok((state, ledger)) => {
            let handle = Box::new(QsearchState { state, ledger });
            unsafe { *out = Box::into_raw(handle) };
            QsearchStatus::Ok
        }
        Err(e) => fail(&e),
    }
}
