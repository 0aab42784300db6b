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

//! Error type shared by all simulation and CLI modules.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// The requested register would exceed the configured qubit cap.
    #[error("register of {requested} qubits exceeds the cap of {cap} (2^{cap} amplitudes)")]
    CapacityExceeded { requested: usize, cap: usize },

    #[error("a state needs at least one qubit")]
    EmptyRegister,

    #[error("qubit {qubit} out of range for a {num_qubits}-qubit state")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },

    #[error("qubit {qubit} appears more than once")]
    DuplicateQubit { qubit: usize },

    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: u64, dim: u64 },

    #[error("states have different sizes: {left} vs {right} qubits")]
    SizeMismatch { left: usize, right: usize },

    #[error("block of dimension {dim} does not act on {targets} target qubits")]
    BlockDimMismatch { dim: usize, targets: usize },

    #[error("matrix dimension {dim} is not a power of two within the block cap of {cap}")]
    BadBlockDim { dim: usize, cap: usize },

    #[error("matrix is not unitary (max |U†U - I| = {max_dev:.3e})")]
    NotUnitary { max_dev: f64 },

    /// A later round tried to act on the index register.
    #[error("round acts on index-register qubit {qubit}; only flag and ancilla qubits are allowed")]
    RoundTouchesIndex { qubit: usize },

    #[error("{0}")]
    InvalidArgument(String),

    /// Circuit-text parse failure, with the 1-based source line.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// An asserted experiment invariant did not hold.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the CLI contract: 1 for invariant violations,
    /// 2 for bad input, 3 for capacity, 4 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invariant(_) => 1,
            Error::CapacityExceeded { .. } => 3,
            Error::Io(_) => 4,
            _ => 2,
        }
    }
}
