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

//! Empirical probe of whether extra qubits can beat the optimal search
//! curve: interleave arbitrary seeded unitaries with counted oracle queries
//! and compare the best observed success against the running maximum of
//! `sin²((2t+1)·arcsin(1/√N))`: the best any `t`-query strategy achieves.
//!
//! Success is scored with every ancilla pattern accepted (Ω = all), the most
//! generous reading available; that biases the harness against the
//! no-advantage thesis and so strengthens a negative result.

use rand::{Rng, seq::index::sample};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grover::optimal_success_envelope;
use crate::state::{QueryLedger, StateVector};
use crate::unitary::{haar_from_rng, substream};

/// Slack allowed over the closed-form ceiling before a trial counts as a
/// violation.
pub const CEILING_TOL: f64 = 1e-9;

/// Parameters of one adversarial sweep.
#[derive(Clone, Debug)]
pub struct AdversaryConfig {
    /// Index-register width `n`.
    pub index_width: usize,
    /// Ancilla qubits available to the unitaries.
    pub extra_qubits: usize,
    /// Oracle queries per trial.
    pub queries: u64,
    pub trials: u64,
    pub seed: u64,
    /// Qubits per random block (capped at the register size).
    pub block_qubits: usize,
    /// Haar blocks per interleaved unitary.
    pub depth: usize,
}

impl AdversaryConfig {
    pub fn new(index_width: usize, extra_qubits: usize, queries: u64, trials: u64, seed: u64) -> Self {
        AdversaryConfig {
            index_width,
            extra_qubits,
            queries,
            trials,
            seed,
            block_qubits: 2,
            depth: 3 * (index_width + extra_qubits),
        }
    }
}

/// Aggregate of one sweep of seeded trials.
#[derive(Clone, Debug)]
pub struct AdversaryReport {
    pub index_width: usize,
    pub extra_qubits: usize,
    pub queries: u64,
    pub trials: u64,
    pub seed: u64,
    pub max_success: f64,
    pub mean_success: f64,
    /// The best success any `t`-query strategy can reach:
    /// `max_{s ≤ t} sin²((2s+1)·arcsin(1/√N))`.
    pub ceiling: f64,
    /// No trial exceeded the ceiling by more than [`CEILING_TOL`].
    pub ceiling_respected: bool,
}

/// Paired sweeps with and without ancillas under matched seeds.
#[derive(Clone, Debug)]
pub struct AdvantageReport {
    pub baseline: AdversaryReport,
    pub with_ancillas: AdversaryReport,
    /// `with_ancillas.max_success - baseline.max_success`.
    pub max_difference: f64,
}

fn apply_random_layers(
    state: &mut StateVector,
    rng: &mut ChaCha8Rng,
    block_qubits: usize,
    depth: usize,
) -> Result<()> {
    let q = state.num_qubits();
    let width = block_qubits.min(q);
    for _ in 0..depth {
        let picked = sample(rng, q, width);
        let targets: Vec<usize> = picked.iter().collect();
        let block = haar_from_rng(rng, 1 << width);
        state.apply_controlled_block(&[], &targets, &block)?;
    }
    Ok(())
}

fn run_trial(config: &AdversaryConfig, trial: u64) -> Result<f64> {
    let mut rng = substream(config.seed, trial);
    let n = config.index_width;
    let marked: u64 = rng.random_range(0..1u64 << n);

    let mut state = StateVector::new_basis(n + config.extra_qubits, 0)?;
    let mut ledger = QueryLedger::new();
    apply_random_layers(&mut state, &mut rng, config.block_qubits, config.depth)?;
    for _ in 0..config.queries {
        state.apply_oracle_phase(n, marked, &mut ledger)?;
        apply_random_layers(&mut state, &mut rng, config.block_qubits, config.depth)?;
    }
    if ledger.queries() != config.queries {
        return Err(Error::Invariant(format!(
            "ledger read {} queries, expected {}",
            ledger.queries(),
            config.queries
        )));
    }
    // Ω = all: accept every ancilla pattern alongside the right index.
    let register: Vec<usize> = (0..n).collect();
    state.marginal_prob(&register, marked)
}

/// Run the seeded trials and report max/mean success against the ceiling.
/// Deterministic: trials use independent substreams of `seed` and the
/// aggregation order is fixed.
pub fn adversarial_search(config: &AdversaryConfig) -> Result<AdversaryReport> {
    if config.trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    if config.index_width == 0 {
        return Err(Error::EmptyRegister);
    }
    let successes: Vec<f64> = (0..config.trials)
        .into_par_iter()
        .map(|trial| run_trial(config, trial))
        .collect::<Result<_>>()?;

    let max_success = successes.iter().copied().fold(0.0f64, f64::max);
    let mean_success = successes.iter().sum::<f64>() / successes.len() as f64;
    let ceiling = optimal_success_envelope(1u64 << config.index_width, config.queries)?;
    Ok(AdversaryReport {
        index_width: config.index_width,
        extra_qubits: config.extra_qubits,
        queries: config.queries,
        trials: config.trials,
        seed: config.seed,
        max_success,
        mean_success,
        ceiling,
        ceiling_respected: max_success <= ceiling + CEILING_TOL,
    })
}

/// Paired max-success statistics for 0 vs 2 extra qubits under matched
/// seeds; neither column may exceed the closed-form ceiling.
pub fn ancilla_advantage_report(
    index_width: usize,
    queries: u64,
    trials: u64,
    seed: u64,
) -> Result<AdvantageReport> {
    let baseline = adversarial_search(&AdversaryConfig::new(index_width, 0, queries, trials, seed))?;
    let with_ancillas =
        adversarial_search(&AdversaryConfig::new(index_width, 2, queries, trials, seed))?;
    let max_difference = with_ancillas.max_success - baseline.max_success;
    Ok(AdvantageReport {
        baseline,
        with_ancillas,
        max_difference,
    })
}
