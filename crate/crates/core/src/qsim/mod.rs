//! Dense statevector simulation over qubits. Qubit 0 is the most significant
//! bit of the basis index.

mod circuit;
mod evolution;
mod gate;
pub mod gates;
mod hamiltonian;
mod random;
mod state;

pub use circuit::{apply_circuit, Circuit};
pub use evolution::{evolve, EvolutionMethod, Spectrum, MAX_EXACT_QUBITS};
pub use gate::GateOp;
pub use hamiltonian::{Hamiltonian, Pauli, PauliString};
pub use random::{haar_random_state, haar_unitary, random_circuit};
pub use state::{inner_product, QuantumState};
pub(crate) use state::same_size;

use num_complex::Complex64;

/// Largest register supported by the sampling helpers.
pub const MAX_QUBITS: usize = 14;

pub(crate) const NORM_TOL: f64 = 1e-10;

#[inline]
pub(crate) fn qubit_mask(n: usize, q: usize) -> usize {
    1 << (n - 1 - q)
}

/// `⟨a|b⟩` with conjugation on `a`.
#[inline]
pub(crate) fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    let mut re = 0.0;
    let mut im = 0.0;
    for (x, y) in a.iter().zip(b) {
        re += x.re * y.re + x.im * y.im;
        im += x.re * y.im - x.im * y.re;
    }
    Complex64::new(re, im)
}

pub(crate) fn apply_1q(amps: &mut [Complex64], n: usize, q: usize, m: &[Complex64]) {
    let stride = qubit_mask(n, q);
    let dim = amps.len();
    let mut base = 0;
    while base < dim {
        for i in base..base + stride {
            let j = i + stride;
            let (a0, a1) = (amps[i], amps[j]);
            amps[i] = m[0] * a0 + m[1] * a1;
            amps[j] = m[2] * a0 + m[3] * a1;
        }
        base += 2 * stride;
    }
}

/// Applies a 4×4 matrix whose local index is `(bit(q0) << 1) | bit(q1)`.
pub(crate) fn apply_2q(amps: &mut [Complex64], n: usize, q0: usize, q1: usize, m: &[Complex64]) {
    let m0 = qubit_mask(n, q0);
    let m1 = qubit_mask(n, q1);
    let both = m0 | m1;
    for i in 0..amps.len() {
        if i & both != 0 {
            continue;
        }
        let idx = [i, i | m1, i | m0, i | both];
        let v = [amps[idx[0]], amps[idx[1]], amps[idx[2]], amps[idx[3]]];
        for (r, &out) in idx.iter().enumerate() {
            let row = &m[4 * r..4 * r + 4];
            amps[out] = row[0] * v[0] + row[1] * v[1] + row[2] * v[2] + row[3] * v[3];
        }
    }
}

pub(crate) fn apply_matrix(amps: &mut [Complex64], n: usize, targets: &[usize], m: &[Complex64]) {
    match targets {
        [q] => apply_1q(amps, n, *q, m),
        [q0, q1] => apply_2q(amps, n, *q0, *q1, m),
        _ => unreachable!("gates act on one or two qubits"),
    }
}
