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

//! Qubit layout for search experiments: an index register, one flag qubit,
//! and zero or more ancilla registers that each mirror the index width.

use std::ops::Range;

use crate::error::{Error, Result};

/// Partition of a register into index qubits `0..n`, the flag qubit `n`, and
/// `M` ancilla registers of `n` qubits each, packed after the flag.
///
/// Qubit `k` is bit `k` (little-endian) of the basis-state index everywhere
/// in this crate, so the layout is fully determined by `(n, M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegisterLayout {
    index_width: usize,
    ancilla_registers: usize,
}

impl RegisterLayout {
    pub fn new(index_width: usize, ancilla_registers: usize) -> Result<Self> {
        if index_width == 0 {
            return Err(Error::EmptyRegister);
        }
        Ok(RegisterLayout {
            index_width,
            ancilla_registers,
        })
    }

    /// Width `n` of the index register (and of each ancilla register).
    pub fn index_width(&self) -> usize {
        self.index_width
    }

    /// Number `M` of ancilla registers.
    pub fn ancilla_registers(&self) -> usize {
        self.ancilla_registers
    }

    /// Total qubits: `n + 1 + M*n`.
    pub fn total_qubits(&self) -> usize {
        self.index_width + 1 + self.ancilla_registers * self.index_width
    }

    pub fn index_qubits(&self) -> Range<usize> {
        0..self.index_width
    }

    pub fn flag_qubit(&self) -> usize {
        self.index_width
    }

    /// Qubit range of ancilla register `j` (0-based).
    pub fn ancilla_register(&self, j: usize) -> Result<Range<usize>> {
        if j >= self.ancilla_registers {
            return Err(Error::InvalidArgument(format!(
                "ancilla register {j} out of range (have {})",
                self.ancilla_registers
            )));
        }
        let start = self.index_width + 1 + j * self.index_width;
        Ok(start..start + self.index_width)
    }

    /// All ancilla qubits, in ascending order.
    pub fn ancilla_qubits(&self) -> Range<usize> {
        self.index_width + 1..self.total_qubits()
    }

    /// Number of index patterns `N = 2^n`.
    pub fn num_items(&self) -> u64 {
        1u64 << self.index_width
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_is_disjoint_and_exhaustive() {
        let layout = RegisterLayout::new(3, 2).unwrap();
        assert_eq!(layout.total_qubits(), 3 + 1 + 6);
        assert_eq!(layout.flag_qubit(), 3);
        assert_eq!(layout.index_qubits(), 0..3);
        assert_eq!(layout.ancilla_register(0).unwrap(), 4..7);
        assert_eq!(layout.ancilla_register(1).unwrap(), 7..10);
        assert!(layout.ancilla_register(2).is_err());

        let mut seen = vec![false; layout.total_qubits()];
        for q in layout.index_qubits() {
            seen[q] = true;
        }
        seen[layout.flag_qubit()] = true;
        for j in 0..layout.ancilla_registers() {
            for q in layout.ancilla_register(j).unwrap() {
                assert!(!seen[q], "qubit {q} assigned twice");
                seen[q] = true;
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn zero_width_index_rejected() {
        assert!(RegisterLayout::new(0, 1).is_err());
    }
}
