use super::{Circuit, GateOp, QuantumState, MAX_QUBITS};
use crate::{error::invalid, Result};
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

fn gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-distributed state: independent complex Gaussians, normalized.
pub fn haar_random_state(n: usize, seed: u64) -> Result<QuantumState> {
    if !(1..=MAX_QUBITS).contains(&n) {
        return Err(invalid(format!("haar_random_state needs 1 <= n <= {MAX_QUBITS}, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let amps = (0..1usize << n).map(|_| gaussian(&mut rng)).collect();
    QuantumState::from_unnormalized(n, amps)
}

/// Haar-distributed `dim × dim` unitary (row-major), by Gram–Schmidt on
/// Gaussian columns.
pub fn haar_unitary(dim: usize, rng: &mut impl Rng) -> Vec<Complex64> {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v: Vec<Complex64> = (0..dim).map(|_| gaussian(rng)).collect();
        for c in &cols {
            let proj = super::dot(c, &v);
            for (x, y) in v.iter_mut().zip(c) {
                *x -= proj * y;
            }
        }
        let norm = super::state::norm(&v);
        if norm < 1e-8 {
            continue;
        }
        for x in &mut v {
            *x /= norm;
        }
        cols.push(v);
    }
    let mut m = vec![Complex64::new(0.0, 0.0); dim * dim];
    for (j, col) in cols.iter().enumerate() {
        for (i, x) in col.iter().enumerate() {
            m[i * dim + j] = *x;
        }
    }
    m
}

/// `depth` layers; each layer pairs qubits by a seeded random matching and
/// puts an independent Haar 4×4 unitary on every pair.
pub fn random_circuit(n: usize, depth: usize, seed: u64) -> Result<Circuit> {
    if !(2..=MAX_QUBITS).contains(&n) {
        return Err(invalid(format!("random_circuit needs 2 <= n <= {MAX_QUBITS}, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut circuit = Circuit::new(n);
    let mut order: Vec<usize> = (0..n).collect();
    for _ in 0..depth {
        order.shuffle(&mut rng);
        for pair in order.chunks_exact(2) {
            let u = haar_unitary(4, &mut rng);
            circuit.push(GateOp::two(pair[0], pair[1], u, "haar")?)?;
        }
    }
    Ok(circuit)
}
