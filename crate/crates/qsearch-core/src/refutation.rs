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

//! The ancilla-copy search scheme and its measurement analysis.
//!
//! The pipeline prepares a flag-marked uniform superposition, fans the index
//! register out into every ancilla register with flag-controlled Toffolis
//! (the copy round), then applies further flag-controlled rounds. Because
//! every round is controlled on the flag, the flag=0 branch never changes -
//! which is exactly why measuring the ancillas reveals the marked index with
//! probability at most 1/N, no better than one query plus guessing.

use num_complex::Complex64;
use rand::{Rng, seq::index::sample};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::layout::RegisterLayout;
use crate::state::{QueryLedger, StateVector};
use crate::unitary::{DenseUnitary, haar_from_rng, substream};

/// Pivot threshold for the Schmidt-rank elimination.
pub const SCHMIDT_TOL: f64 = 1e-9;

/// One round of the pipeline after state preparation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RoundSpec {
    /// Flag-controlled fan-out of the index register into every ancilla
    /// register. The only round that touches the index qubits (as controls).
    Copy,
    /// Do nothing.
    Identity,
    /// Flag-controlled Hadamard on every ancilla qubit.
    HadamardAncillas,
    /// Flag-controlled seeded Haar blocks on random ancilla qubits.
    Random { seed: u64 },
}

impl RoundSpec {
    /// Parse the CLI grammar: a comma list of `identity`, `hadamard`, and
    /// `random:<k>` (which expands to `k` seeded random rounds). Seeds are
    /// derived deterministically from `master_seed` and the round position.
    pub fn parse_list(text: &str, master_seed: u64) -> Result<Vec<RoundSpec>> {
        let mut rounds = Vec::new();
        for part in text.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            match part {
                "identity" => rounds.push(RoundSpec::Identity),
                "hadamard" => rounds.push(RoundSpec::HadamardAncillas),
                _ => {
                    let Some(count) = part.strip_prefix("random:") else {
                        return Err(Error::InvalidArgument(format!(
                            "unknown round `{part}` (expected identity, hadamard or random:<k>)"
                        )));
                    };
                    let count: u64 = count.parse().map_err(|_| {
                        Error::InvalidArgument(format!("bad round count in `{part}`"))
                    })?;
                    for _ in 0..count {
                        let seed = substream(master_seed, rounds.len() as u64).random();
                        rounds.push(RoundSpec::Random { seed });
                    }
                }
            }
        }
        Ok(rounds)
    }
}

/// Prepare `(1/√N)·Σ_{i≠d}|i,0⟩ + (1/√N)·|d,1⟩`, tensored with all-zero
/// ancilla registers: uniform Hadamards on the index register followed by
/// one flip oracle, so the ledger reads exactly 1.
pub fn prepare_marked_superposition(
    index_width: usize,
    marked: u64,
    ancilla_registers: usize,
) -> Result<(StateVector, RegisterLayout, QueryLedger)> {
    let layout = RegisterLayout::new(index_width, ancilla_registers)?;
    let mut state = StateVector::new_basis(layout.total_qubits(), 0)?;
    for k in layout.index_qubits() {
        state.apply_h(k)?;
    }
    let mut ledger = QueryLedger::new();
    state.apply_oracle_flip(&layout, marked, &mut ledger)?;
    Ok((state, layout, ledger))
}

/// The copy round: `CCX(flag, index_k, w_j[k])` for every ancilla register
/// `j` and bit `k`, writing the index into the ancillas on the flag=1
/// branch and leaving the flag=0 branch untouched.
pub fn apply_copy_round(state: &mut StateVector, layout: &RegisterLayout) -> Result<()> {
    check_layout(state, layout)?;
    let flag = layout.flag_qubit();
    for j in 0..layout.ancilla_registers() {
        let register = layout.ancilla_register(j)?;
        for (k, target) in register.enumerate() {
            state.apply_ccx(flag, k, target)?;
        }
    }
    Ok(())
}

/// Apply a dense block to `targets` controlled on the flag qubit. Targets
/// must be ancilla qubits: a round that touches the index register is
/// rejected, which is what keeps the flag=0 branch invariant.
pub fn apply_flag_controlled(
    state: &mut StateVector,
    layout: &RegisterLayout,
    targets: &[usize],
    block: &DenseUnitary,
) -> Result<()> {
    check_layout(state, layout)?;
    let ancillas = layout.ancilla_qubits();
    for &q in targets {
        if !ancillas.contains(&q) {
            return Err(Error::RoundTouchesIndex { qubit: q });
        }
    }
    state.apply_controlled_block(&[layout.flag_qubit()], targets, block)
}

/// Number of flag-controlled Haar blocks per random round.
fn random_round_blocks(ancilla_count: usize) -> usize {
    (ancilla_count / 4).clamp(1, 3)
}

/// Apply one round of the pipeline.
pub fn apply_round(state: &mut StateVector, layout: &RegisterLayout, spec: &RoundSpec) -> Result<()> {
    match spec {
        RoundSpec::Copy => apply_copy_round(state, layout),
        RoundSpec::Identity => {
            check_layout(state, layout)
        }
        RoundSpec::HadamardAncillas => {
            let h = DenseUnitary::hadamard();
            for q in layout.ancilla_qubits() {
                apply_flag_controlled(state, layout, &[q], &h)?;
            }
            Ok(())
        }
        RoundSpec::Random { seed } => {
            check_layout(state, layout)?;
            let ancillas: Vec<usize> = layout.ancilla_qubits().collect();
            if ancillas.is_empty() {
                return Ok(());
            }
            let mut rng = substream(*seed, 0);
            for _ in 0..random_round_blocks(ancillas.len()) {
                if ancillas.len() == 1 {
                    let block = haar_from_rng(&mut rng, 2);
                    apply_flag_controlled(state, layout, &[ancillas[0]], &block)?;
                } else {
                    let picked = sample(&mut rng, ancillas.len(), 2);
                    let targets = [ancillas[picked.index(0)], ancillas[picked.index(1)]];
                    let block = haar_from_rng(&mut rng, 4);
                    apply_flag_controlled(state, layout, &targets, &block)?;
                }
            }
            Ok(())
        }
    }
}

/// Prepare, copy, then apply the given later rounds.
pub fn pipeline_state(
    index_width: usize,
    marked: u64,
    ancilla_registers: usize,
    rounds: &[RoundSpec],
) -> Result<(StateVector, RegisterLayout, QueryLedger)> {
    let (mut state, layout, ledger) =
        prepare_marked_superposition(index_width, marked, ancilla_registers)?;
    apply_copy_round(&mut state, &layout)?;
    for spec in rounds {
        apply_round(&mut state, &layout, spec)?;
    }
    Ok((state, layout, ledger))
}

/// Probability that measuring the first ancilla register yields the pattern
/// `marked`. For `marked != 0` and flag-controlled rounds this never exceeds
/// 1/N; for `marked == 0` the ancillas read zeros on both branches, so the
/// value is 1 while conveying nothing (report it with a degeneracy warning).
pub fn ancilla_reveal_probability(
    state: &StateVector,
    layout: &RegisterLayout,
    marked: u64,
) -> Result<f64> {
    check_layout(state, layout)?;
    let register: Vec<usize> = layout.ancilla_register(0)?.collect();
    state.marginal_prob(&register, marked)
}

/// Average success of the optimal max-likelihood guesser of `d` from a
/// computational-basis measurement of the full register, with `d` uniform:
/// `(1/N)·Σ_outcomes max_d P(outcome|d)`, computed exactly by brute force
/// over the outcome table of every marked index.
pub fn identification_probability(layout: &RegisterLayout, rounds: &[RoundSpec]) -> Result<f64> {
    let num_items = layout.num_items();
    let dim = 1usize << layout.total_qubits();
    let max_table = (0..num_items)
        .into_par_iter()
        .map(|d| -> Result<Vec<f64>> {
            let (state, _, _) =
                pipeline_state(layout.index_width(), d, layout.ancilla_registers(), rounds)?;
            Ok(state.amplitudes().iter().map(|a| a.norm_sqr()).collect())
        })
        .try_reduce(
            || vec![0.0f64; dim],
            |mut acc, table| {
                for (a, t) in acc.iter_mut().zip(table) {
                    if t > *a {
                        *a = t;
                    }
                }
                Ok(acc)
            },
        )?;
    Ok(max_table.iter().sum::<f64>() / num_items as f64)
}

/// Schmidt rank of the state across the bipartition (`left` qubits | rest):
/// the rank of the amplitude matrix reshaped over that cut, by Gaussian
/// elimination with pivot threshold `tol`. Rank ≥ 2 witnesses entanglement.
pub fn schmidt_rank(state: &StateVector, left: &[usize], tol: f64) -> Result<usize> {
    let q = state.num_qubits();
    let mut is_left = vec![false; q];
    for &qubit in left {
        if qubit >= q {
            return Err(Error::QubitOutOfRange {
                qubit,
                num_qubits: q,
            });
        }
        if is_left[qubit] {
            return Err(Error::DuplicateQubit { qubit });
        }
        is_left[qubit] = true;
    }
    let right: Vec<usize> = (0..q).filter(|&k| !is_left[k]).collect();
    let rows = 1usize << left.len();
    let cols = 1usize << right.len();

    let mut matrix = vec![vec![Complex64::ZERO; cols]; rows];
    for (i, amp) in state.amplitudes().iter().enumerate() {
        let mut r = 0usize;
        for (j, &qubit) in left.iter().enumerate() {
            r |= (i >> qubit & 1) << j;
        }
        let mut c = 0usize;
        for (j, &qubit) in right.iter().enumerate() {
            c |= (i >> qubit & 1) << j;
        }
        matrix[r][c] = *amp;
    }

    let mut rank = 0usize;
    let mut pivot_row = 0usize;
    for col in 0..cols {
        let Some(best) = (pivot_row..rows).max_by(|&a, &b| {
            matrix[a][col]
                .norm()
                .partial_cmp(&matrix[b][col].norm())
                .unwrap()
        }) else {
            break;
        };
        if matrix[best][col].norm() <= tol {
            continue;
        }
        matrix.swap(pivot_row, best);
        let (upper, lower) = matrix.split_at_mut(pivot_row + 1);
        let pivot = &upper[pivot_row];
        for row in lower.iter_mut() {
            let factor = row[col] / pivot[col];
            if factor == Complex64::ZERO {
                continue;
            }
            for (dst, src) in row[col..].iter_mut().zip(&pivot[col..]) {
                *dst -= factor * src;
            }
        }
        rank += 1;
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }
    Ok(rank)
}

/// Everything the `refute` experiment reports for one `(n, d, M, rounds)`.
#[derive(Clone, Debug)]
pub struct RefutationSummary {
    pub index_width: usize,
    pub marked: u64,
    pub ancilla_registers: usize,
    /// Oracle queries spent (always 1: preparation costs one flip).
    pub queries: u64,
    pub reveal_probability: f64,
    /// 1/N.
    pub reveal_bound: f64,
    /// `marked == 0`: the ancilla pattern for 0 coincides with the initial
    /// pattern, so the reveal figure conveys nothing.
    pub degenerate_marked: bool,
    pub identification_probability: f64,
    /// 2/N.
    pub identification_bound: f64,
    /// Max amplitude deviation of the post-copy state from its stated form.
    pub copy_fixture_error: f64,
    /// Max amplitude drift of the flag=0 subspace across the later rounds.
    pub flag_zero_drift: f64,
}

/// Run the full pipeline for one marked index and collect the report data,
/// including the two probability bounds and the branch-invariance drift.
pub fn run_refutation(
    index_width: usize,
    marked: u64,
    ancilla_registers: usize,
    rounds: &[RoundSpec],
) -> Result<RefutationSummary> {
    let (mut state, layout, ledger) =
        prepare_marked_superposition(index_width, marked, ancilla_registers)?;
    apply_copy_round(&mut state, &layout)?;
    let copy_fixture_error = post_copy_fixture_error(&state, &layout, marked);

    let flag_bit = 1usize << layout.flag_qubit();
    let flag_zero_before: Vec<Complex64> = state
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(i, _)| i & flag_bit == 0)
        .map(|(_, a)| *a)
        .collect();

    for spec in rounds {
        apply_round(&mut state, &layout, spec)?;
    }

    let flag_zero_drift = state
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(i, _)| i & flag_bit == 0)
        .map(|(_, a)| *a)
        .zip(flag_zero_before)
        .map(|(after, before)| (after - before).norm())
        .fold(0.0f64, f64::max);

    let reveal_probability = ancilla_reveal_probability(&state, &layout, marked)?;
    let identification = identification_probability(&layout, rounds)?;
    let n_items = layout.num_items() as f64;
    Ok(RefutationSummary {
        index_width,
        marked,
        ancilla_registers,
        queries: ledger.queries(),
        reveal_probability,
        reveal_bound: 1.0 / n_items,
        degenerate_marked: marked == 0,
        identification_probability: identification,
        identification_bound: 2.0 / n_items,
        copy_fixture_error,
        flag_zero_drift,
    })
}

/// Basis index of `|index, flag, w, w, …⟩` with every ancilla register set
/// to the same pattern `w`.
pub fn branch_basis_index(layout: &RegisterLayout, index: u64, flag: bool, ancilla: u64) -> usize {
    let n = layout.index_width();
    let mut basis = index as usize;
    if flag {
        basis |= 1 << layout.flag_qubit();
    }
    for j in 0..layout.ancilla_registers() {
        basis |= (ancilla as usize) << (n + 1 + j * n);
    }
    basis
}

/// Max deviation of `state` from the stated post-copy form: amplitude 1/√N
/// on `|i, 0, 0…0⟩` for every `i ≠ d` and on `|d, 1, d…d⟩`, zero elsewhere.
pub fn post_copy_fixture_error(
    state: &StateVector,
    layout: &RegisterLayout,
    marked: u64,
) -> f64 {
    let amp = Complex64::new(1.0 / (layout.num_items() as f64).sqrt(), 0.0);
    let mut expected = vec![Complex64::ZERO; state.dim()];
    for i in 0..layout.num_items() {
        if i == marked {
            expected[branch_basis_index(layout, i, true, marked)] = amp;
        } else {
            expected[branch_basis_index(layout, i, false, 0)] = amp;
        }
    }
    state
        .amplitudes()
        .iter()
        .zip(expected)
        .map(|(a, e)| (a - e).norm())
        .fold(0.0, f64::max)
}

fn check_layout(state: &StateVector, layout: &RegisterLayout) -> Result<()> {
    if layout.total_qubits() != state.num_qubits() {
        return Err(Error::SizeMismatch {
            left: layout.total_qubits(),
            right: state.num_qubits(),
        });
    }
    Ok(())
}
