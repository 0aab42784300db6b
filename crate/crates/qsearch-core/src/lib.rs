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

//! State-vector experiments for unstructured search.
//!
//! The crate simulates searches over `N = 2^n` items exactly and accounts
//! for every oracle query:
//!
//! * [`grover`]: canonical amplitude amplification with the closed-form
//!   success curve `sin²((2t+1)·arcsin(1/√N))` as its reference.
//! * [`refutation`]: an ancilla-copy scheme that fans the marked index out
//!   into ancilla registers behind a flag qubit; measuring those ancillas
//!   identifies the mark with probability at most 1/N, no better than one
//!   query plus guessing.
//! * [`bound`]: success-probability accounting for searches carrying `m`
//!   ancilla qubits, and the query estimate showing the ancillas do not
//!   change the `Θ(√N)` cost.
//! * [`adversary`]: seeded random circuits interleaved with counted
//!   queries, checked against the optimal curve as a ceiling.
//! * [`circuit`], [`report`], [`cli`]: a line-oriented circuit language,
//!   bit-stable JSON/CSV reports, and the `qsearch` command-line front end.
//!
//! Qubit `k` is bit `k` (little-endian) of every basis index.

pub mod adversary;
pub mod bound;
pub mod circuit;
pub mod cli;
pub mod error;
pub mod grover;
pub mod layout;
pub mod refutation;
pub mod report;
pub mod state;
pub mod unitary;

pub use error::{Error, Result};
pub use layout::RegisterLayout;
pub use state::{DEFAULT_QUBIT_CAP, QUBIT_CAP_ENV, QueryLedger, StateVector, qubit_cap};
pub use unitary::{DenseUnitary, random_state, random_unitary};
