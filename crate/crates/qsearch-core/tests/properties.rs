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

//! Property suites over the simulation kernels: norm preservation,
//! involutions, linearity, little-endian indexing, marginal completeness,
//! oracle-form equivalence and circuit round-trips.

use num_complex::Complex64;
use proptest::prelude::*;

use qsearch_core::circuit::{Circuit, GateOp};
use qsearch_core::grover;
use qsearch_core::state::{QueryLedger, StateVector};
use qsearch_core::unitary::{random_state, random_unitary};

/// One randomly chosen gate on a `q`-qubit register.
#[derive(Clone, Debug)]
enum AnyGate {
    H(usize),
    X(usize),
    Z(usize),
    Cnot(usize, usize),
    Ccx(usize, usize, usize),
    Block { seed: u64, targets: Vec<usize> },
}

fn apply(state: &mut StateVector, gate: &AnyGate) {
    match gate {
        AnyGate::H(k) => state.apply_h(*k).unwrap(),
        AnyGate::X(k) => state.apply_x(*k).unwrap(),
        AnyGate::Z(k) => state.apply_z(*k).unwrap(),
        AnyGate::Cnot(c, t) => state.apply_cnot(*c, *t).unwrap(),
        AnyGate::Ccx(c0, c1, t) => state.apply_ccx(*c0, *c1, *t).unwrap(),
        AnyGate::Block { seed, targets } => {
            let block = random_unitary(1 << targets.len(), *seed).unwrap();
            state.apply_controlled_block(&[], targets, &block).unwrap();
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn norm_is_preserved_by_any_gate_sequence(
        q in 2usize..=6,
        seed in any::<u64>(),
        gates in proptest::collection::vec((0u8..6, any::<u64>()), 0..24),
    ) {
        let mut state = random_state(q, seed).unwrap();
        // decode the gate stream against this q
        for (kind, gseed) in gates {
            let k = (gseed % q as u64) as usize;
            let k2 = (k + 1 + (gseed >> 8) as usize % (q - 1)) % q;
            match kind {
                0 => state.apply_h(k).unwrap(),
                1 => state.apply_x(k).unwrap(),
                2 => state.apply_z(k).unwrap(),
                3 => state.apply_cnot(k, k2).unwrap(),
                4 => {
                    let block = random_unitary(2, gseed).unwrap();
                    state.apply_controlled_block(&[], &[k], &block).unwrap();
                }
                _ => {
                    let block = random_unitary(4, gseed).unwrap();
                    if k != k2 {
                        state.apply_controlled_block(&[], &[k, k2], &block).unwrap();
                    }
                }
            }
        }
        prop_assert!((state.norm_sq() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn elementary_gates_are_involutions(
        q in 3usize..=5,
        seed in any::<u64>(),
        gate in (0u8..4, any::<u64>()),
    ) {
        let original = random_state(q, seed).unwrap();
        let mut state = original.clone();
        let (kind, gseed) = gate;
        let k = (gseed % q as u64) as usize;
        let k2 = (k + 1) % q;
        let k3 = (k + 2) % q;
        for _ in 0..2 {
            match kind {
                0 => state.apply_h(k).unwrap(),
                1 => state.apply_x(k).unwrap(),
                2 => state.apply_cnot(k, k2).unwrap(),
                _ => state.apply_ccx(k, k2, k3).unwrap(),
            }
        }
        for (a, b) in state.amplitudes().iter().zip(original.amplitudes()) {
            prop_assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn gates_act_linearly(
        q in 2usize..=4,
        s1 in any::<u64>(),
        s2 in any::<u64>(),
        re in -1.0f64..1.0,
        im in -1.0f64..1.0,
        gate in arb_gate_static(),
    ) {
        let psi1 = random_state(q, s1).unwrap();
        let psi2 = random_state(q, s2).unwrap();
        let alpha = Complex64::new(re, im);
        let beta = Complex64::new(0.25, -0.5);
        let combined: Vec<Complex64> = psi1
            .amplitudes()
            .iter()
            .zip(psi2.amplitudes())
            .map(|(a, b)| alpha * a + beta * b)
            .collect();
        let mut combined = StateVector::from_amplitudes(q, combined).unwrap();

        let gate = gate.fit(q);
        let mut a = psi1.clone();
        let mut b = psi2.clone();
        apply(&mut a, &gate);
        apply(&mut b, &gate);
        apply(&mut combined, &gate);

        for ((c, x), y) in combined.amplitudes().iter().zip(a.amplitudes()).zip(b.amplitudes()) {
            prop_assert!((c - (alpha * x + beta * y)).norm() < 1e-12);
        }
    }

    #[test]
    fn marginals_sum_to_one(
        q in 2usize..=5,
        seed in any::<u64>(),
        pick in any::<u32>(),
    ) {
        let state = random_state(q, seed).unwrap();
        let register: Vec<usize> = (0..q).filter(|k| pick >> k & 1 == 1).collect();
        let register = if register.is_empty() { vec![0] } else { register };
        let mut total = 0.0;
        for value in 0..1u64 << register.len() {
            total += state.marginal_prob(&register, value).unwrap();
        }
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn circuit_text_round_trips(ops in arb_printable_circuit(5)) {
        let circuit = Circuit { num_qubits: 5, ops };
        let text = circuit.to_text().unwrap();
        prop_assert_eq!(Circuit::parse(&text).unwrap(), circuit);
    }
}

/// Gate description independent of q, resolved by `fit`.
#[derive(Clone, Debug)]
struct GatePick {
    kind: u8,
    seed: u64,
}

impl GatePick {
    fn fit(&self, q: usize) -> AnyGate {
        let k = (self.seed % q as u64) as usize;
        let k2 = (k + 1) % q;
        let k3 = (k + 2) % q;
        match self.kind {
            0 => AnyGate::H(k),
            1 => AnyGate::X(k),
            2 => AnyGate::Z(k),
            3 => AnyGate::Cnot(k, k2),
            4 if q >= 3 => AnyGate::Ccx(k, k2, k3),
            _ => AnyGate::Block {
                seed: self.seed,
                targets: if k == k2 { vec![k] } else { vec![k, k2] },
            },
        }
    }
}

fn arb_gate_static() -> impl Strategy<Value = GatePick> {
    (0u8..6, any::<u64>()).prop_map(|(kind, seed)| GatePick { kind, seed })
}

fn arb_printable_circuit(q: usize) -> impl Strategy<Value = Vec<GateOp>> {
    proptest::collection::vec(
        prop_oneof![
            (0..q).prop_map(|target| GateOp::H { target }),
            (0..q).prop_map(|target| GateOp::X { target }),
            proptest::sample::subsequence((0..q).collect::<Vec<_>>(), 2)
                .prop_map(|v| GateOp::Cnot { control: v[0], target: v[1] }),
            proptest::sample::subsequence((0..q).collect::<Vec<_>>(), 3)
                .prop_map(|v| GateOp::Ccx { controls: [v[0], v[1]], target: v[2] }),
            (0..1u64 << (q - 1)).prop_map(|marked| GateOp::OracleFlip { marked }),
        ],
        0..12,
    )
}

#[test]
fn x_gate_is_little_endian_exhaustively() {
    for q in 1..=4usize {
        for k in 0..q {
            for i in 0..1u64 << q {
                let mut state = StateVector::new_basis(q, i).unwrap();
                state.apply_x(k).unwrap();
                let expect = i ^ (1 << k);
                assert_eq!(
                    state.probability(expect as usize),
                    1.0,
                    "q={q} k={k} i={i}"
                );
            }
        }
    }
}

#[test]
fn oracle_forms_agree_for_all_marks_up_to_n6() {
    for n in 1..=6usize {
        let num_items = 1u64 << n;
        let t = grover::optimal_iterations(num_items).unwrap();
        for d in 0..num_items {
            for iters in [1, t] {
                let phase = grover::run_grover(n, d, iters).unwrap();
                let flip = grover::run_grover_flip_oracle(n, d, iters).unwrap();
                assert!(
                    (phase.success_probability - flip.success_probability).abs() < 1e-10,
                    "n={n} d={d} t={iters}"
                );
            }
        }
    }
}

#[test]
fn grover_success_is_independent_of_the_mark() {
    for n in 1..=5usize {
        let num_items = 1u64 << n;
        let t = grover::optimal_iterations(num_items).unwrap();
        let reference = grover::run_grover(n, 0, t).unwrap().success_probability;
        for d in 1..num_items {
            let p = grover::run_grover(n, d, t).unwrap().success_probability;
            assert!((p - reference).abs() < 1e-12, "n={n} d={d}");
        }
    }
}

#[test]
fn optimal_iterations_nearly_saturate() {
    for n in 2..=10u32 {
        let num_items = 1u64 << n;
        let t = grover::optimal_iterations(num_items).unwrap();
        let p = grover::closed_form_success(num_items, t).unwrap();
        assert!(
            p >= 1.0 - 1.0 / num_items as f64,
            "N={num_items}: {p} at t={t}"
        );
    }
}

#[test]
fn query_ledger_tracks_every_oracle_call() {
    let mut ledger = QueryLedger::new();
    let layout = qsearch_core::RegisterLayout::new(2, 0).unwrap();
    let mut state = StateVector::new_basis(3, 0).unwrap();
    for expected in 1..=5u64 {
        state.apply_oracle_flip(&layout, 1, &mut ledger).unwrap();
        assert_eq!(ledger.queries(), expected);
    }
}
