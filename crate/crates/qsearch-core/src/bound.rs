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

//! Success-probability accounting for searches that carry `m` ancilla
//! qubits next to an `n`-qubit index register.
//!
//! The success probability of accepting any ancilla pattern in a valid set
//! Ω is `Σ_{w∈Ω} |⟨ψ|(|τ⟩⊗|w⟩)|²`. When the per-pattern overlaps are close
//! to uniform this collapses to `|Ω|·term ≤ 2^m·term`, and driving the
//! overlap down to `2^-p` pushes the query count of amplitude amplification
//! to `⌈arcsin(√(2^-p))·√(2^(n+m))⌉`: which for `p = m` is still `Θ(√(2^n))`:
//! the ancillas buy nothing.

use crate::error::{Error, Result};
use crate::state::StateVector;

/// Default slack for the "overlaps are almost the same" test: the max/min
/// ratio of per-pattern overlaps may not exceed `1 + eps`.
pub const DEFAULT_UNIFORMITY_EPS: f64 = 0.05;

/// Everything one Ω-analysis of a state produces.
#[derive(Clone, Debug)]
pub struct AncillaAnalysis {
    /// Index-register width `n`.
    pub index_width: usize,
    /// Ancilla width `m`.
    pub ancilla_width: usize,
    /// Target index τ.
    pub target: u64,
    /// The valid patterns Ω, sorted and deduplicated.
    pub valid_patterns: Vec<u64>,
    /// Per-pattern `|⟨ψ|(|τ⟩⊗|w⟩)|²`, aligned with `valid_patterns`.
    pub overlap_sq: Vec<f64>,
    /// `Σ_{w∈Ω}` of the overlaps.
    pub pr_success: f64,
    /// `2^m · term` with `term` the common per-pattern overlap.
    pub bound_rhs: f64,
    /// Whether the overlaps passed the uniformity test.
    pub uniform: bool,
    /// `p` with `max overlap = 2^-p`; `None` when every overlap is zero.
    pub effective_exponent: Option<f64>,
}

fn split_widths(state: &StateVector, index_width: usize) -> Result<usize> {
    if index_width == 0 || index_width > state.num_qubits() {
        return Err(Error::InvalidArgument(format!(
            "index width {index_width} does not fit a {}-qubit state",
            state.num_qubits()
        )));
    }
    Ok(state.num_qubits() - index_width)
}

fn checked_patterns(patterns: &[u64], ancilla_width: usize) -> Result<Vec<u64>> {
    let dim = 1u64 << ancilla_width;
    let mut sorted: Vec<u64> = patterns.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for &w in &sorted {
        if w >= dim {
            return Err(Error::IndexOutOfRange { index: w, dim });
        }
    }
    Ok(sorted)
}

/// Per-pattern overlaps `|⟨ψ|(|τ⟩⊗|w⟩)|²` for the given patterns. The index
/// register is qubits `0..n`, the ancillas sit above it, so the overlap for
/// pattern `w` is the squared amplitude at basis index `τ + (w << n)`.
fn overlaps(
    state: &StateVector,
    index_width: usize,
    target: u64,
    patterns: &[u64],
) -> Result<Vec<f64>> {
    let ancilla_width = split_widths(state, index_width)?;
    if target >= 1u64 << index_width {
        return Err(Error::IndexOutOfRange {
            index: target,
            dim: 1u64 << index_width,
        });
    }
    let _ = ancilla_width;
    Ok(patterns
        .iter()
        .map(|&w| state.probability((target | w << index_width) as usize))
        .collect())
}

/// `Pr_success = Σ_{w∈Ω} |⟨ψ|(|τ⟩⊗|w⟩)|²`: the probability that measuring
/// the state yields index τ together with an ancilla pattern in Ω.
pub fn omega_success_probability(
    state: &StateVector,
    index_width: usize,
    target: u64,
    patterns: &[u64],
) -> Result<f64> {
    let ancilla_width = split_widths(state, index_width)?;
    let omega = checked_patterns(patterns, ancilla_width)?;
    Ok(overlaps(state, index_width, target, &omega)?.iter().sum())
}

/// The uniform-overlap bound: when the per-pattern overlaps pass the
/// max/min uniformity test, `pr = |Ω|·term` and `pr ≤ 2^m·term` with `term`
/// the common overlap. Returns `(pr, rhs, uniform)`; `rhs` and the bound are
/// only meaningful when `uniform` is true.
pub fn uniform_overlap_bound(
    state: &StateVector,
    index_width: usize,
    target: u64,
    patterns: &[u64],
    uniformity_eps: f64,
) -> Result<(f64, f64, bool)> {
    let analysis = analyze(state, index_width, target, patterns, uniformity_eps)?;
    Ok((analysis.pr_success, analysis.bound_rhs, analysis.uniform))
}

/// Full Ω-analysis: overlaps, success probability, uniformity verdict, the
/// `2^m·term` bound and the effective concentration exponent.
pub fn analyze(
    state: &StateVector,
    index_width: usize,
    target: u64,
    patterns: &[u64],
    uniformity_eps: f64,
) -> Result<AncillaAnalysis> {
    let ancilla_width = split_widths(state, index_width)?;
    let omega = checked_patterns(patterns, ancilla_width)?;
    let overlap_sq = overlaps(state, index_width, target, &omega)?;
    let pr_success: f64 = overlap_sq.iter().sum();

    let max = overlap_sq.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = overlap_sq.iter().copied().fold(f64::INFINITY, f64::min);
    // zero-overlap patterns fail uniformity: the ratio test needs min > 0
    let uniform = !omega.is_empty() && min > 0.0 && max / min <= 1.0 + uniformity_eps;
    let term = if omega.is_empty() {
        0.0
    } else {
        pr_success / omega.len() as f64
    };
    let bound_rhs = (1u64 << ancilla_width) as f64 * term;
    let effective_exponent = (max > 0.0).then(|| -max.log2());

    Ok(AncillaAnalysis {
        index_width,
        ancilla_width,
        target,
        valid_patterns: omega,
        overlap_sq,
        pr_success,
        bound_rhs,
        uniform,
        effective_exponent,
    })
}

/// ⌈⌉-free core of the query estimate:
/// `arcsin(√(2^-p)) · √(2^(n+m))`.
pub fn query_count_real(index_width: u32, ancilla_width: u32, exponent: f64) -> Result<f64> {
    let total = (index_width + ancilla_width) as f64;
    if !(0.0..=total).contains(&exponent) {
        return Err(Error::InvalidArgument(format!(
            "exponent {exponent} outside 0..={total}"
        )));
    }
    Ok((-exponent / 2.0).exp2().asin() * (total / 2.0).exp2())
}

/// Queries amplitude amplification needs to lift a `2^-p` overlap out of a
/// `2^(n+m)`-dimensional register: the ceiling of [`query_count_real`].
/// Monotone non-increasing in `p`.
pub fn query_count_estimate(index_width: u32, ancilla_width: u32, exponent: u32) -> Result<u64> {
    Ok(query_count_real(index_width, ancilla_width, exponent as f64)?.ceil() as u64)
}

/// Hadamard on every ancilla qubit (qubits `index_width..`), spreading
/// concentrated ancilla probability uniformly.
pub fn hadamard_average(state: &mut StateVector, index_width: usize) -> Result<()> {
    let _ = split_widths(state, index_width)?;
    for k in index_width..state.num_qubits() {
        state.apply_h(k)?;
    }
    Ok(())
}
