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

//! Canonical Grover search with query accounting, plus the closed-form
//! success curve `sin²((2t+1)·arcsin(1/√N))` that serves as the reference
//! (and as the adversary harness's ceiling).

use std::f64::consts::FRAC_PI_4;

use crate::error::{Error, Result};
use crate::layout::RegisterLayout;
use crate::state::{QueryLedger, StateVector};

/// Result of a simulated search run.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchOutcome {
    /// Index-register width `n` (`N = 2^n`).
    pub index_width: usize,
    /// The marked index `d`.
    pub marked: u64,
    /// Iterations performed.
    pub iterations: u64,
    /// Probability of measuring `d` on the index register afterwards.
    pub success_probability: f64,
    /// Oracle queries recorded by the ledger.
    pub queries: u64,
}

fn check_num_items(num_items: u64) -> Result<u32> {
    if num_items < 2 || !num_items.is_power_of_two() {
        return Err(Error::InvalidArgument(format!(
            "item count must be a power of two >= 2, got {num_items}"
        )));
    }
    Ok(num_items.trailing_zeros())
}

/// The rotation angle θ = arcsin(1/√N) that one iteration advances by.
pub fn grover_angle(num_items: u64) -> Result<f64> {
    check_num_items(num_items)?;
    Ok((1.0 / (num_items as f64).sqrt()).asin())
}

/// Success probability after `iterations` queries: `sin²((2t+1)·θ)`.
pub fn closed_form_success(num_items: u64, iterations: u64) -> Result<f64> {
    let theta = grover_angle(num_items)?;
    let s = ((2 * iterations + 1) as f64 * theta).sin();
    Ok(s * s)
}

/// Best success achievable with at most `iterations` queries: the running
/// maximum of [`closed_form_success`]. The curve itself overshoots and
/// descends past the optimum, but spending fewer (or absorbable) queries is
/// always allowed, so the ceiling on any `t`-query strategy is the envelope.
pub fn optimal_success_envelope(num_items: u64, iterations: u64) -> Result<f64> {
    check_num_items(num_items)?;
    let mut best: f64 = 0.0;
    for t in 0..=iterations {
        best = best.max(closed_form_success(num_items, t)?);
    }
    Ok(best)
}

/// The iteration count that maximizes [`closed_form_success`], ties broken
/// toward fewer iterations.
///
/// Evaluates the two integers bracketing `π/(4θ) − 1/2` instead of trusting
/// a rounding rule, which matters at small `N`.
pub fn optimal_iterations(num_items: u64) -> Result<u64> {
    let theta = grover_angle(num_items)?;
    let x = FRAC_PI_4 / theta - 0.5;
    let lo = if x > 0.0 { x.floor() as u64 } else { 0 };
    let hi = lo + 1;
    let p_lo = closed_form_success(num_items, lo)?;
    let p_hi = closed_form_success(num_items, hi)?;
    Ok(if p_hi > p_lo + 1e-15 { hi } else { lo })
}

fn apply_diffusion(state: &mut StateVector, index_width: usize) -> Result<()> {
    let register: Vec<usize> = (0..index_width).collect();
    for &k in &register {
        state.apply_h(k)?;
    }
    state.apply_phase_on_pattern(&register, 0)?;
    for &k in &register {
        state.apply_h(k)?;
    }
    Ok(())
}

/// Simulate `iterations` Grover iterations (phase oracle + diffusion) over
/// `2^index_width` items with `marked` as the target.
pub fn run_grover(index_width: usize, marked: u64, iterations: u64) -> Result<SearchOutcome> {
    if index_width == 0 {
        return Err(Error::EmptyRegister);
    }
    if marked >= 1u64 << index_width {
        return Err(Error::IndexOutOfRange {
            index: marked,
            dim: 1u64 << index_width,
        });
    }
    let mut state = StateVector::new_basis(index_width, 0)?;
    for k in 0..index_width {
        state.apply_h(k)?;
    }
    let mut ledger = QueryLedger::new();
    for _ in 0..iterations {
        state.apply_oracle_phase(index_width, marked, &mut ledger)?;
        apply_diffusion(&mut state, index_width)?;
    }
    Ok(SearchOutcome {
        index_width,
        marked,
        iterations,
        success_probability: state.probability(marked as usize),
        queries: ledger.queries(),
    })
}

/// Same search with the oracle realized as flip → Z-on-flag → flip on an
/// explicit flag qubit. Two ledger entries per iteration; success
/// probabilities must match [`run_grover`] exactly.
pub fn run_grover_flip_oracle(
    index_width: usize,
    marked: u64,
    iterations: u64,
) -> Result<SearchOutcome> {
    if index_width == 0 {
        return Err(Error::EmptyRegister);
    }
    if marked >= 1u64 << index_width {
        return Err(Error::IndexOutOfRange {
            index: marked,
            dim: 1u64 << index_width,
        });
    }
    let layout = RegisterLayout::new(index_width, 0)?;
    let mut state = StateVector::new_basis(layout.total_qubits(), 0)?;
    for k in 0..index_width {
        state.apply_h(k)?;
    }
    let mut ledger = QueryLedger::new();
    for _ in 0..iterations {
        state.apply_oracle_flip(&layout, marked, &mut ledger)?;
        state.apply_z(layout.flag_qubit())?;
        state.apply_oracle_flip(&layout, marked, &mut ledger)?;
        apply_diffusion(&mut state, index_width)?;
    }
    let register: Vec<usize> = (0..index_width).collect();
    Ok(SearchOutcome {
        index_width,
        marked,
        iterations,
        success_probability: state.marginal_prob(&register, marked)?,
        queries: ledger.queries(),
    })
}
