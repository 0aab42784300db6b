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

//! Drive the C ABI the way a foreign binding would: raw pointers, status
//! codes, and the thread-local error message.

use std::ffi::CStr;
use std::ptr;

use qsearch_ffi::*;

fn new_state(num_qubits: u32, basis: u64) -> *mut QsearchState {
    let mut handle: *mut QsearchState = ptr::null_mut();
    let status = unsafe { qsearch_state_new(num_qubits, basis, &mut handle) };
    assert_eq!(status, QsearchStatus::Ok);
    assert!(!handle.is_null());
    handle
}

fn last_error() -> String {
    let ptr = qsearch_last_error_message();
    assert!(!ptr.is_null());
    unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_string()
}

#[test]
fn version_is_a_static_string() {
    let ptr = qsearch_version();
    assert!(!ptr.is_null());
    let version = unsafe { CStr::from_ptr(ptr) }.to_str().unwrap();
    assert_eq!(version, env!("CARGO_PKG_VERSION"));
}

#[test]
fn bell_state_through_the_handle_api() {
    let state = new_state(2, 0);
    unsafe {
        assert_eq!(qsearch_state_apply_h(state, 0), QsearchStatus::Ok);
        assert_eq!(qsearch_state_apply_cnot(state, 0, 1), QsearchStatus::Ok);

        let mut norm = 0.0;
        assert_eq!(qsearch_state_norm(state, &mut norm), QsearchStatus::Ok);
        assert!((norm - 1.0).abs() < 1e-12);

        let (mut re, mut im) = (0.0, 0.0);
        assert_eq!(
            qsearch_state_amplitude(state, 3, &mut re, &mut im),
            QsearchStatus::Ok
        );
        assert!((re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert_eq!(im, 0.0);

        let qubits = [1u32];
        let mut p = 0.0;
        assert_eq!(
            qsearch_state_marginal(state, qubits.as_ptr(), 1, 1, &mut p),
            QsearchStatus::Ok
        );
        assert!((p - 0.5).abs() < 1e-12);

        qsearch_state_free(state);
    }
}

#[test]
fn oracle_calls_accumulate_on_the_ledger() {
    let state = new_state(3, 0);
    unsafe {
        assert_eq!(qsearch_state_apply_h(state, 0), QsearchStatus::Ok);
        assert_eq!(qsearch_state_apply_h(state, 1), QsearchStatus::Ok);
        assert_eq!(
            qsearch_state_apply_oracle_flip(state, 2, 3),
            QsearchStatus::Ok
        );
        assert_eq!(
            qsearch_state_apply_oracle_phase(state, 2, 1),
            QsearchStatus::Ok
        );
        let mut queries = 0;
        assert_eq!(qsearch_state_queries(state, &mut queries), QsearchStatus::Ok);
        assert_eq!(queries, 2);
        qsearch_state_free(state);
    }
}

#[test]
fn errors_set_statuses_and_messages() {
    unsafe {
        let mut handle: *mut QsearchState = ptr::null_mut();
        assert_eq!(
            qsearch_state_new(99, 0, &mut handle),
            QsearchStatus::CapacityExceeded
        );
        assert!(handle.is_null());
        assert!(last_error().contains("cap"));

        assert_eq!(
            qsearch_state_new(2, 0, ptr::null_mut()),
            QsearchStatus::NullPointer
        );

        let state = new_state(2, 0);
        assert_eq!(
            qsearch_state_apply_h(state, 7),
            QsearchStatus::InvalidArgument
        );
        assert!(last_error().contains("out of range"));
        assert_eq!(
            qsearch_state_apply_cnot(state, 1, 1),
            QsearchStatus::InvalidArgument
        );
        let mut p = 0.0;
        assert_eq!(
            qsearch_state_marginal(state, ptr::null(), 2, 0, &mut p),
            QsearchStatus::NullPointer
        );
        qsearch_state_free(state);
        qsearch_state_free(ptr::null_mut()); // tolerated
    }
}

#[test]
fn grover_run_matches_the_closed_form() {
    unsafe {
        let mut result = QsearchGroverResult {
            success_probability: 0.0,
            closed_form: 0.0,
            optimal_iterations: 0,
            queries: 0,
        };
        assert_eq!(qsearch_grover_run(3, 5, 2, &mut result), QsearchStatus::Ok);
        assert!((result.success_probability - result.closed_form).abs() < 1e-10);
        assert!((result.closed_form - 121.0 / 128.0).abs() < 1e-14);
        assert_eq!(result.optimal_iterations, 2);
        assert_eq!(result.queries, 2);

        let mut theta = 0.0;
        assert_eq!(qsearch_grover_angle(1024, &mut theta), QsearchStatus::Ok);
        assert!((theta.sin() - 1.0 / 32.0).abs() < 1e-14);
        assert_eq!(
            qsearch_grover_angle(3, &mut theta),
            QsearchStatus::InvalidArgument
        );

        let mut t_star = 0;
        assert_eq!(
            qsearch_grover_optimal_iterations(1024, &mut t_star),
            QsearchStatus::Ok
        );
        assert_eq!(t_star, 25);
    }
}

#[test]
fn refute_run_reports_bounds() {
    unsafe {
        let rounds = c"random:3";
        let mut result = std::mem::zeroed::<QsearchRefuteResult>();
        assert_eq!(
            qsearch_refute_run(2, 3, 1, rounds.as_ptr(), 7, &mut result),
            QsearchStatus::Ok
        );
        assert_eq!(result.queries, 1);
        assert!((result.reveal_bound - 0.25).abs() < 1e-15);
        assert!((result.identification_bound - 0.5).abs() < 1e-15);
        assert!(result.bounds_hold);
        assert!(!result.degenerate_marked);

        // null rounds means no later rounds
        assert_eq!(
            qsearch_refute_run(1, 1, 1, ptr::null(), 0, &mut result),
            QsearchStatus::Ok
        );
        assert!((result.reveal_probability - 0.5).abs() < 1e-12);

        assert_eq!(
            qsearch_refute_run(2, 3, 1, c"bogus".as_ptr(), 0, &mut result),
            QsearchStatus::InvalidArgument
        );
    }
}

#[test]
fn bound_estimates_cross_the_abi() {
    unsafe {
        let mut estimate = 0u64;
        assert_eq!(
            qsearch_bound_query_estimate(4, 2, 2, &mut estimate),
            QsearchStatus::Ok
        );
        assert_eq!(estimate, 5);
        assert_eq!(
            qsearch_bound_query_estimate(4, 2, 9, &mut estimate),
            QsearchStatus::InvalidArgument
        );
        let mut real = 0.0;
        assert_eq!(
            qsearch_bound_query_estimate_real(4, 0, 0.0, &mut real),
            QsearchStatus::Ok
        );
        assert!((real - std::f64::consts::FRAC_PI_2 * 4.0).abs() < 1e-12);
    }
}

#[test]
fn adversary_run_is_deterministic_across_calls() {
    unsafe {
        let mut a = std::mem::zeroed::<QsearchAdversaryResult>();
        let mut b = std::mem::zeroed::<QsearchAdversaryResult>();
        assert_eq!(qsearch_adversary_run(2, 2, 1, 30, 9, &mut a), QsearchStatus::Ok);
        assert_eq!(qsearch_adversary_run(2, 2, 1, 30, 9, &mut b), QsearchStatus::Ok);
        assert_eq!(a.max_success.to_bits(), b.max_success.to_bits());
        assert_eq!(a.mean_success.to_bits(), b.mean_success.to_bits());
        assert!(a.ceiling_respected);
        assert_eq!(a.queries, 1);
        assert_eq!(a.trials, 30);

        assert_eq!(
            qsearch_adversary_run(2, 0, 1, 0, 0, &mut a),
            QsearchStatus::InvalidArgument
        );
    }
}

#[test]
fn circuit_text_runs_to_a_handle() {
    unsafe {
        let mut handle: *mut QsearchState = ptr::null_mut();
        let text = c"qubits 2\nh 0\ncx 0 1\n";
        assert_eq!(qsearch_circuit_run(text.as_ptr(), &mut handle), QsearchStatus::Ok);
        let mut qubits = 0;
        assert_eq!(qsearch_state_num_qubits(handle, &mut qubits), QsearchStatus::Ok);
        assert_eq!(qubits, 2);
        qsearch_state_free(handle);

        let broken = c"qubits 2\nfoo 0\n";
        assert_eq!(
            qsearch_circuit_run(broken.as_ptr(), &mut handle),
            QsearchStatus::ParseError
        );
        assert!(last_error().contains("line 2"));
    }
}
