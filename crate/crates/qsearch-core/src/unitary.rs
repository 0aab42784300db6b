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

//! Dense unitary blocks and seeded Haar-style sampling.
//!
//! Random unitaries are drawn by filling a matrix with complex Gaussians and
//! orthonormalizing its columns (modified Gram–Schmidt). The positive-real
//! diagonal the elimination produces fixes the phase convention, so the same
//! seed always yields the same matrix.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::state::StateVector;

/// Largest dense block: 2^6 × 2^6.
pub const BLOCK_DIM_CAP: usize = 64;

/// Unitarity tolerance for validated blocks.
pub const UNITARY_TOL: f64 = 1e-10;

/// A dense `dim × dim` unitary, row-major, validated on construction.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseUnitary {
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseUnitary {
    /// Validate and wrap a row-major matrix. `dim` must be a power of two no
    /// larger than [`BLOCK_DIM_CAP`] and `U†U` must equal `I` within 1e-10.
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        check_block_dim(dim)?;
        if data.len() != dim * dim {
            return Err(Error::InvalidArgument(format!(
                "{} entries do not fill a {dim}x{dim} matrix",
                data.len()
            )));
        }
        let u = DenseUnitary { dim, data };
        let dev = u.unitarity_error();
        if dev > UNITARY_TOL {
            return Err(Error::NotUnitary { max_dev: dev });
        }
        Ok(u)
    }

    pub fn identity(dim: usize) -> Result<Self> {
        check_block_dim(dim)?;
        let mut data = vec![Complex64::ZERO; dim * dim];
        for r in 0..dim {
            data[r * dim + r] = Complex64::ONE;
        }
        Ok(DenseUnitary { dim, data })
    }

    /// The 2×2 Hadamard.
    pub fn hadamard() -> Self {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        DenseUnitary {
            dim: 2,
            data: vec![h, h, h, -h],
        }
    }

    /// The 2×2 Pauli X.
    pub fn pauli_x() -> Self {
        DenseUnitary {
            dim: 2,
            data: vec![Complex64::ZERO, Complex64::ONE, Complex64::ONE, Complex64::ZERO],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    /// `max |(U†U - I)_{rc}|` over all entries.
    pub fn unitarity_error(&self) -> f64 {
        let d = self.dim;
        let mut max_dev: f64 = 0.0;
        for r in 0..d {
            for c in 0..d {
                let mut acc = Complex64::ZERO;
                for k in 0..d {
                    acc += self.entry(k, r).conj() * self.entry(k, c);
                }
                let want = if r == c { Complex64::ONE } else { Complex64::ZERO };
                max_dev = max_dev.max((acc - want).norm());
            }
        }
        max_dev
    }
}

fn check_block_dim(dim: usize) -> Result<()> {
    if dim == 0 || !dim.is_power_of_two() || dim > BLOCK_DIM_CAP {
        return Err(Error::BadBlockDim {
            dim,
            cap: BLOCK_DIM_CAP,
        });
    }
    Ok(())
}

fn gaussian_complex<R: Rng>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * FRAC_1_SQRT_2
}

/// Haar-style unitary drawn from `rng`: complex-Gaussian matrix, columns
/// orthonormalized by modified Gram–Schmidt. Redraws in the (measure-zero)
/// event of a numerically degenerate column.
pub(crate) fn haar_from_rng<R: Rng>(rng: &mut R, dim: usize) -> DenseUnitary {
    loop {
        let mut cols: Vec<Vec<Complex64>> = (0..dim)
            .map(|_| (0..dim).map(|_| gaussian_complex(rng)).collect())
            .collect();
        let mut degenerate = false;
        for j in 0..dim {
            let (done, rest) = cols.split_at_mut(j);
            let current = &mut rest[0];
            for earlier in done.iter() {
                let proj: Complex64 = earlier
                    .iter()
                    .zip(current.iter())
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                for (dst, src) in current.iter_mut().zip(earlier) {
                    *dst -= proj * src;
                }
            }
            let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-9 {
                degenerate = true;
                break;
            }
            for z in cols[j].iter_mut() {
                *z /= norm;
            }
        }
        if degenerate {
            continue;
        }
        let mut data = vec![Complex64::ZERO; dim * dim];
        for (j, col) in cols.iter().enumerate() {
            for (i, z) in col.iter().enumerate() {
                data[i * dim + j] = *z;
            }
        }
        return DenseUnitary { dim, data };
    }
}

/// Seeded Haar-style unitary of the given power-of-two dimension.
/// Deterministic: the same `(dim, seed)` always yields the same matrix.
pub fn random_unitary(dim: usize, seed: u64) -> Result<DenseUnitary> {
    check_block_dim(dim)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(haar_from_rng(&mut rng, dim))
}

/// Seeded random normalized state on `num_qubits` qubits (complex-Gaussian
/// amplitudes, normalized).
pub fn random_state(num_qubits: usize, seed: u64) -> Result<StateVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_state_from_rng(&mut rng, num_qubits)
}

pub(crate) fn random_state_from_rng<R: Rng>(rng: &mut R, num_qubits: usize) -> Result<StateVector> {
    if num_qubits == 0 {
        return Err(Error::EmptyRegister);
    }
    let dim = 1usize << num_qubits;
    let mut amps: Vec<Complex64> = (0..dim).map(|_| gaussian_complex(rng)).collect();
    let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in amps.iter_mut() {
        *z /= norm;
    }
    StateVector::from_amplitudes(num_qubits, amps)
}

/// Independent deterministic substream `index` of a master `seed`.
pub fn substream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
