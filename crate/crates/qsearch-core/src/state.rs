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

//! Dense state-vector representation and the gate kernels everything else
//! builds on.
//!
//! A [`StateVector`] over `q` qubits holds `2^q` complex amplitudes; qubit
//! `k` is bit `k` (little-endian) of the amplitude index. Elementary gates
//! are applied in place by pairwise amplitude updates: no gate matrix is
//! ever materialized for H/X/Z/CNOT/CCX.

use std::f64::consts::FRAC_1_SQRT_2;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::layout::RegisterLayout;
use crate::unitary::DenseUnitary;

/// Default cap on the register size (2^26 amplitudes ≈ 1 GiB).
pub const DEFAULT_QUBIT_CAP: usize = 26;

/// Environment variable that overrides [`DEFAULT_QUBIT_CAP`].
pub const QUBIT_CAP_ENV: &str = "QSEARCH_QUBIT_CAP";

/// The active qubit cap: `QSEARCH_QUBIT_CAP` if set and parseable, else 26.
/// Read once per process.
pub fn qubit_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(QUBIT_CAP_ENV)
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
            .filter(|&c| c >= 1)
            .unwrap_or(DEFAULT_QUBIT_CAP)
    })
}

/// Count of oracle invocations: the resource every experiment accounts for.
///
/// Increments by exactly one per oracle application and is never decremented.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QueryLedger {
    queries: u64,
}

impl QueryLedger {
    pub fn new() -> Self {
        QueryLedger::default()
    }

    pub fn queries(&self) -> u64 {
        self.queries
    }

    fn record(&mut self) {
        self.queries += 1;
    }
}

/// Dense array of `2^q` complex amplitudes over `q` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Computational basis state `|index⟩` on `num_qubits` qubits.
    pub fn new_basis(num_qubits: usize, index: u64) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::EmptyRegister);
        }
        let cap = qubit_cap();
        if num_qubits > cap {
            return Err(Error::CapacityExceeded {
                requested: num_qubits,
                cap,
            });
        }
        let dim = 1u64 << num_qubits;
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, dim });
        }
        let mut amps = vec![Complex64::ZERO; dim as usize];
        amps[index as usize] = Complex64::ONE;
        Ok(StateVector { num_qubits, amps })
    }

    /// Build a state from raw amplitudes. Only the length is checked;
    /// normalization is the caller's responsibility.
    pub fn from_amplitudes(num_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::EmptyRegister);
        }
        let cap = qubit_cap();
        if num_qubits > cap {
            return Err(Error::CapacityExceeded {
                requested: num_qubits,
                cap,
            });
        }
        if amps.len() != 1usize << num_qubits {
            return Err(Error::InvalidArgument(format!(
                "{} amplitudes do not fill a {num_qubits}-qubit state",
                amps.len()
            )));
        }
        Ok(StateVector { num_qubits, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    /// `|amplitude|²` of a single basis state.
    pub fn probability(&self, index: usize) -> f64 {
        self.amps[index].norm_sqr()
    }

    /// Σ|amplitude|²; 1 within 1e-10 for any state produced by gates here.
    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.num_qubits {
            return Err(Error::QubitOutOfRange {
                qubit,
                num_qubits: self.num_qubits,
            });
        }
        Ok(())
    }

    fn check_distinct(&self, qubits: &[usize]) -> Result<()> {
        for (i, &q) in qubits.iter().enumerate() {
            self.check_qubit(q)?;
            if qubits[..i].contains(&q) {
                return Err(Error::DuplicateQubit { qubit: q });
            }
        }
        Ok(())
    }

    /// Hadamard on qubit `k`.
    pub fn apply_h(&mut self, k: usize) -> Result<()> {
        self.check_qubit(k)?;
        let bit = 1usize << k;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let a = self.amps[i];
                let b = self.amps[i | bit];
                self.amps[i] = (a + b) * FRAC_1_SQRT_2;
                self.amps[i | bit] = (a - b) * FRAC_1_SQRT_2;
            }
        }
        Ok(())
    }

    /// Bit flip (Pauli X) on qubit `k`: basis index `i` maps to `i XOR 2^k`.
    pub fn apply_x(&mut self, k: usize) -> Result<()> {
        self.check_qubit(k)?;
        let bit = 1usize << k;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                self.amps.swap(i, i | bit);
            }
        }
        Ok(())
    }

    /// Phase flip (Pauli Z) on qubit `k`.
    pub fn apply_z(&mut self, k: usize) -> Result<()> {
        self.check_qubit(k)?;
        let bit = 1usize << k;
        for i in 0..self.amps.len() {
            if i & bit != 0 {
                self.amps[i] = -self.amps[i];
            }
        }
        Ok(())
    }

    /// X on `target` where `control` is 1.
    pub fn apply_cnot(&mut self, control: usize, target: usize) -> Result<()> {
        self.check_distinct(&[control, target])?;
        let cbit = 1usize << control;
        let tbit = 1usize << target;
        for i in 0..self.amps.len() {
            if i & cbit != 0 && i & tbit == 0 {
                self.amps.swap(i, i | tbit);
            }
        }
        Ok(())
    }

    /// Toffoli: X on `target` where both controls are 1.
    pub fn apply_ccx(&mut self, control0: usize, control1: usize, target: usize) -> Result<()> {
        self.check_distinct(&[control0, control1, target])?;
        let c0 = 1usize << control0;
        let c1 = 1usize << control1;
        let tbit = 1usize << target;
        for i in 0..self.amps.len() {
            if i & c0 != 0 && i & c1 != 0 && i & tbit == 0 {
                self.amps.swap(i, i | tbit);
            }
        }
        Ok(())
    }

    /// Apply a dense unitary `block` to `targets` (ordered, little-endian
    /// within the block) on the subspace where every control qubit is 1;
    /// identity elsewhere.
    pub fn apply_controlled_block(
        &mut self,
        controls: &[usize],
        targets: &[usize],
        block: &DenseUnitary,
    ) -> Result<()> {
        let mut all: Vec<usize> = Vec::with_capacity(controls.len() + targets.len());
        all.extend_from_slice(controls);
        all.extend_from_slice(targets);
        self.check_distinct(&all)?;
        let bd = block.dim();
        if bd != 1usize << targets.len() {
            return Err(Error::BlockDimMismatch {
                dim: bd,
                targets: targets.len(),
            });
        }

        let control_mask: usize = controls.iter().map(|&q| 1usize << q).sum();
        let target_mask: usize = targets.iter().map(|&q| 1usize << q).sum();
        // spread[a] scatters block-row index a onto the target qubits
        let spread: Vec<usize> = (0..bd)
            .map(|a| {
                targets
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| a >> j & 1 == 1)
                    .map(|(_, &q)| 1usize << q)
                    .sum()
            })
            .collect();

        let mut scratch = vec![Complex64::ZERO; bd];
        for base in 0..self.amps.len() {
            if base & target_mask != 0 || base & control_mask != control_mask {
                continue;
            }
            for (a, s) in scratch.iter_mut().enumerate() {
                *s = self.amps[base | spread[a]];
            }
            for (row, &offset) in spread.iter().enumerate() {
                let mut acc = Complex64::ZERO;
                for (c, s) in scratch.iter().enumerate() {
                    acc += block.entry(row, c) * s;
                }
                self.amps[base | offset] = acc;
            }
        }
        Ok(())
    }

    /// Multiply by −1 every basis state whose `register` bits (in the listed
    /// qubit order) equal `pattern`. The reflection core shared by the phase
    /// oracle and the diffusion operator.
    pub fn apply_phase_on_pattern(&mut self, register: &[usize], pattern: u64) -> Result<()> {
        let (mask, want) = self.register_mask(register, pattern)?;
        for i in 0..self.amps.len() {
            if i & mask == want {
                self.amps[i] = -self.amps[i];
            }
        }
        Ok(())
    }

    /// Bit-flip oracle: flips the flag qubit exactly on basis states whose
    /// index register equals `marked`, and records one query.
    pub fn apply_oracle_flip(
        &mut self,
        layout: &RegisterLayout,
        marked: u64,
        ledger: &mut QueryLedger,
    ) -> Result<()> {
        if layout.total_qubits() != self.num_qubits {
            return Err(Error::SizeMismatch {
                left: layout.total_qubits(),
                right: self.num_qubits,
            });
        }
        let n = layout.index_width();
        if marked >= 1u64 << n {
            return Err(Error::IndexOutOfRange {
                index: marked,
                dim: 1u64 << n,
            });
        }
        let index_mask = (1usize << n) - 1;
        let want = marked as usize;
        let fbit = 1usize << layout.flag_qubit();
        for i in 0..self.amps.len() {
            if i & index_mask == want && i & fbit == 0 {
                self.amps.swap(i, i | fbit);
            }
        }
        ledger.record();
        Ok(())
    }

    /// Phase oracle: multiplies by −1 every basis state whose index register
    /// (qubits `0..index_width`) equals `marked`, and records one query.
    /// Equivalent to flip → Z-on-flag → flip, at a single query.
    pub fn apply_oracle_phase(
        &mut self,
        index_width: usize,
        marked: u64,
        ledger: &mut QueryLedger,
    ) -> Result<()> {
        if index_width == 0 || index_width > self.num_qubits {
            return Err(Error::QubitOutOfRange {
                qubit: index_width,
                num_qubits: self.num_qubits,
            });
        }
        if marked >= 1u64 << index_width {
            return Err(Error::IndexOutOfRange {
                index: marked,
                dim: 1u64 << index_width,
            });
        }
        let register: Vec<usize> = (0..index_width).collect();
        self.apply_phase_on_pattern(&register, marked)?;
        ledger.record();
        Ok(())
    }

    /// `⟨self|other⟩ = Σ conj(self_i)·other_i`.
    pub fn inner_product(&self, other: &StateVector) -> Result<Complex64> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::SizeMismatch {
                left: self.num_qubits,
                right: other.num_qubits,
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Probability that measuring the listed `register` qubits yields
    /// `value` (bit `j` of `value` is the outcome of qubit `register[j]`).
    pub fn marginal_prob(&self, register: &[usize], value: u64) -> Result<f64> {
        let (mask, want) = self.register_mask(register, value)?;
        Ok(self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & mask == want)
            .map(|(_, a)| a.norm_sqr())
            .sum())
    }

    fn register_mask(&self, register: &[usize], value: u64) -> Result<(usize, usize)> {
        self.check_distinct(register)?;
        if register.len() < 64 && value >= 1u64 << register.len() {
            return Err(Error::IndexOutOfRange {
                index: value,
                dim: 1u64 << register.len(),
            });
        }
        let mut mask = 0usize;
        let mut want = 0usize;
        for (j, &q) in register.iter().enumerate() {
            mask |= 1 << q;
            if value >> j & 1 == 1 {
                want |= 1 << q;
            }
        }
        Ok((mask, want))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unitary::{DenseUnitary, random_unitary};

    fn assert_close(a: Complex64, b: Complex64, tol: f64) {
        assert!((a - b).norm() < tol, "{a} != {b} (tol {tol})");
    }

    #[test]
    fn basis_state_construction() {
        let s = StateVector::new_basis(3, 5).unwrap();
        for (i, a) in s.amplitudes().iter().enumerate() {
            let want = if i == 5 { Complex64::ONE } else { Complex64::ZERO };
            assert_eq!(*a, want);
        }

        let s = StateVector::new_basis(1, 0).unwrap();
        assert_eq!(s.amplitudes(), &[Complex64::ONE, Complex64::ZERO]);

        let s = StateVector::new_basis(2, 3).unwrap();
        assert_eq!(
            s.amplitudes(),
            &[Complex64::ZERO, Complex64::ZERO, Complex64::ZERO, Complex64::ONE]
        );
    }

    #[test]
    fn basis_state_rejects_bad_inputs() {
        assert!(matches!(
            StateVector::new_basis(0, 0),
            Err(Error::EmptyRegister)
        ));
        assert!(matches!(
            StateVector::new_basis(qubit_cap() + 1, 0),
            Err(Error::CapacityExceeded { .. })
        ));
        assert!(matches!(
            StateVector::new_basis(2, 4),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn hadamard_on_zero_gives_plus() {
        let mut s = StateVector::new_basis(1, 0).unwrap();
        s.apply_h(0).unwrap();
        assert_close(s.amplitude(0), Complex64::new(FRAC_1_SQRT_2, 0.0), 1e-15);
        assert_close(s.amplitude(1), Complex64::new(FRAC_1_SQRT_2, 0.0), 1e-15);
        assert!(s.apply_h(1).is_err());
    }

    #[test]
    fn hadamard_is_an_involution() {
        let mut s = StateVector::new_basis(3, 6).unwrap();
        s.apply_h(1).unwrap();
        s.apply_h(1).unwrap();
        let want = StateVector::new_basis(3, 6).unwrap();
        for (a, b) in s.amplitudes().iter().zip(want.amplitudes()) {
            assert_close(*a, *b, 1e-12);
        }
    }

    #[test]
    fn hadamard_all_qubits_is_uniform() {
        let mut s = StateVector::new_basis(4, 0).unwrap();
        for k in 0..4 {
            s.apply_h(k).unwrap();
        }
        for a in s.amplitudes() {
            assert_close(*a, Complex64::new(0.25, 0.0), 1e-14);
        }
    }

    #[test]
    fn toffoli_truth_table() {
        // q0 and q1 set (basis 3), target q2 -> basis 7
        let mut s = StateVector::new_basis(3, 3).unwrap();
        s.apply_ccx(0, 1, 2).unwrap();
        assert_close(s.amplitude(7), Complex64::ONE, 1e-15);
        s.apply_ccx(0, 1, 2).unwrap();
        assert_close(s.amplitude(3), Complex64::ONE, 1e-12);
    }

    #[test]
    fn cnot_builds_bell_pair() {
        // (|00⟩+|10⟩)/√2 with control q0, target q1 → (|00⟩+|11⟩)/√2
        let mut s = StateVector::new_basis(2, 0).unwrap();
        s.apply_h(0).unwrap();
        s.apply_cnot(0, 1).unwrap();
        assert_close(s.amplitude(0), Complex64::new(FRAC_1_SQRT_2, 0.0), 1e-15);
        assert_close(s.amplitude(3), Complex64::new(FRAC_1_SQRT_2, 0.0), 1e-15);
        assert_eq!(s.probability(1), 0.0);
        assert_eq!(s.probability(2), 0.0);
    }

    #[test]
    fn duplicate_and_out_of_range_qubits_rejected() {
        let mut s = StateVector::new_basis(3, 0).unwrap();
        assert!(matches!(
            s.apply_cnot(1, 1),
            Err(Error::DuplicateQubit { qubit: 1 })
        ));
        assert!(matches!(
            s.apply_ccx(0, 1, 3),
            Err(Error::QubitOutOfRange { qubit: 3, .. })
        ));
    }

    #[test]
    fn controlled_block_with_x_equals_cnot() {
        let x = DenseUnitary::pauli_x();
        let mut s = StateVector::new_basis(2, 1).unwrap(); // |10⟩: q0 set
        s.apply_controlled_block(&[0], &[1], &x).unwrap();
        assert_close(s.amplitude(3), Complex64::ONE, 1e-15);
    }

    #[test]
    fn controlled_block_identity_is_noop() {
        let mut s = StateVector::new_basis(3, 0).unwrap();
        s.apply_h(0).unwrap();
        s.apply_h(2).unwrap();
        let before = s.clone();
        let id = DenseUnitary::identity(4).unwrap();
        s.apply_controlled_block(&[1], &[0, 2], &id).unwrap();
        assert_eq!(s, before);
    }

    #[test]
    fn uncontrolled_random_block_preserves_norm() {
        let u = random_unitary(4, 11).unwrap();
        let mut s = StateVector::new_basis(3, 0).unwrap();
        for k in 0..3 {
            s.apply_h(k).unwrap();
        }
        s.apply_controlled_block(&[], &[2, 0], &u).unwrap();
        assert!((s.norm_sq() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn oracle_flip_marks_exactly_one_branch() {
        let layout = RegisterLayout::new(2, 0).unwrap();
        let mut s = StateVector::new_basis(3, 0).unwrap();
        s.apply_h(0).unwrap();
        s.apply_h(1).unwrap();
        let mut ledger = QueryLedger::new();
        s.apply_oracle_flip(&layout, 3, &mut ledger).unwrap();
        assert_eq!(ledger.queries(), 1);
        // amplitude moved from |11,0⟩ (index 3) to |11,1⟩ (index 7)
        assert_eq!(s.probability(3), 0.0);
        assert!((s.probability(7) - 0.25).abs() < 1e-14);

        s.apply_oracle_flip(&layout, 3, &mut ledger).unwrap();
        assert_eq!(ledger.queries(), 2);
        assert!((s.probability(3) - 0.25).abs() < 1e-14);
        assert_eq!(s.probability(7), 0.0);
    }

    #[test]
    fn oracle_flip_rejects_out_of_range_mark() {
        let layout = RegisterLayout::new(2, 0).unwrap();
        let mut s = StateVector::new_basis(3, 0).unwrap();
        let mut ledger = QueryLedger::new();
        assert!(matches!(
            s.apply_oracle_flip(&layout, 4, &mut ledger),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert_eq!(ledger.queries(), 0);
    }

    #[test]
    fn phase_oracle_matches_flip_z_flip() {
        let layout = RegisterLayout::new(3, 0).unwrap();
        let mut phase = StateVector::new_basis(4, 0).unwrap();
        let mut flip = StateVector::new_basis(4, 0).unwrap();
        for k in 0..3 {
            phase.apply_h(k).unwrap();
            flip.apply_h(k).unwrap();
        }
        let mut lp = QueryLedger::new();
        let mut lf = QueryLedger::new();
        phase.apply_oracle_phase(3, 5, &mut lp).unwrap();
        flip.apply_oracle_flip(&layout, 5, &mut lf).unwrap();
        flip.apply_z(layout.flag_qubit()).unwrap();
        flip.apply_oracle_flip(&layout, 5, &mut lf).unwrap();
        for (a, b) in phase.amplitudes().iter().zip(flip.amplitudes()) {
            assert_close(*a, *b, 1e-14);
        }
        assert_eq!(lp.queries(), 1);
        assert_eq!(lf.queries(), 2);
    }

    #[test]
    fn inner_product_basics() {
        let mut plus = StateVector::new_basis(1, 0).unwrap();
        plus.apply_h(0).unwrap();
        let zero = StateVector::new_basis(1, 0).unwrap();
        let one = StateVector::new_basis(1, 1).unwrap();

        assert_close(plus.inner_product(&plus).unwrap(), Complex64::ONE, 1e-12);
        assert_close(zero.inner_product(&one).unwrap(), Complex64::ZERO, 1e-15);
        assert_close(
            plus.inner_product(&zero).unwrap(),
            Complex64::new(FRAC_1_SQRT_2, 0.0),
            1e-15,
        );
        assert!(plus.inner_product(&StateVector::new_basis(2, 0).unwrap()).is_err());
    }

    #[test]
    fn marginal_of_bell_pair() {
        let mut s = StateVector::new_basis(2, 0).unwrap();
        s.apply_h(0).unwrap();
        s.apply_cnot(0, 1).unwrap();
        assert!((s.marginal_prob(&[1], 1).unwrap() - 0.5).abs() < 1e-14);
        // full register of a basis state
        let b = StateVector::new_basis(3, 6).unwrap();
        assert_eq!(b.marginal_prob(&[0, 1, 2], 6).unwrap(), 1.0);
        assert_eq!(b.marginal_prob(&[0, 1, 2], 5).unwrap(), 0.0);
    }

    #[test]
    fn marginal_rejects_out_of_range_value() {
        let s = StateVector::new_basis(2, 0).unwrap();
        assert!(matches!(
            s.marginal_prob(&[0], 2),
            Err(Error::IndexOutOfRange { .. })
        ));
    }
}
