use super::{state::same_size, Hamiltonian, QuantumState};
use crate::{Error, Result};
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Largest register for which a dense eigendecomposition is attempted.
pub const MAX_EXACT_QUBITS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvolutionMethod {
    Exact,
    /// Symmetric second-order product formula; the splitting error per step is
    /// `O(dt³)`, so the total error over `steps` steps is `O(t³/steps²)`.
    Trotter { steps: usize },
}

/// Full eigendecomposition of a Hamiltonian, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct Spectrum {
    n_qubits: usize,
    energies: Vec<f64>,
    vectors: DMatrix<Complex64>,
}

impl Spectrum {
    pub fn of(h: &Hamiltonian) -> Result<Self> {
        let n = h.n_qubits();
        if n > MAX_EXACT_QUBITS {
            return Err(Error::TooLargeForExact {
                n_qubits: n,
                max: MAX_EXACT_QUBITS,
            });
        }
        let (values, vectors): (Vec<f64>, DMatrix<Complex64>) = match h.dense_real() {
            Some(m) => {
                let eig = SymmetricEigen::new(m);
                let v = eig.eigenvectors.map(|x| Complex64::new(x, 0.0));
                (eig.eigenvalues.iter().copied().collect(), v)
            }
            None => {
                let eig = SymmetricEigen::new(h.dense());
                (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
            }
        };
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        let energies = order.iter().map(|&k| values[k]).collect();
        let vectors = vectors.select_columns(&order);
        Ok(Self {
            n_qubits: n,
            energies,
            vectors,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    /// Eigenvectors as columns, in the order of [`Spectrum::energies`].
    pub fn vectors(&self) -> &DMatrix<Complex64> {
        &self.vectors
    }

    pub fn eigenstate(&self, k: usize) -> QuantumState {
        let amps = self.vectors.column(k).iter().copied().collect();
        QuantumState::from_raw_unchecked(self.n_qubits, amps)
    }

    /// `e^{−iHt}|state⟩`.
    pub fn evolve(&self, state: &QuantumState, t: f64) -> Result<QuantumState> {
        same_size(self.n_qubits, state.n_qubits())?;
        let psi = DVector::from_column_slice(state.amplitudes());
        let mut coeffs = self.vectors.ad_mul(&psi);
        for (c, e) in coeffs.iter_mut().zip(&self.energies) {
            *c *= Complex64::from_polar(1.0, -e * t);
        }
        let out = &self.vectors * coeffs;
        Ok(QuantumState::from_raw_unchecked(
            self.n_qubits,
            out.iter().copied().collect(),
        ))
    }
}

/// `e^{−iHt}|state⟩` by the requested method.
pub fn evolve(
    state: &QuantumState,
    h: &Hamiltonian,
    t: f64,
    method: EvolutionMethod,
) -> Result<QuantumState> {
    same_size(h.n_qubits(), state.n_qubits())?;
    match method {
        EvolutionMethod::Exact => Spectrum::of(h)?.evolve(state, t),
        EvolutionMethod::Trotter { steps } => trotter(state, h, t, steps),
    }
}

fn trotter(state: &QuantumState, h: &Hamiltonian, t: f64, steps: usize) -> Result<QuantumState> {
    if steps == 0 {
        return Err(crate::error::invalid("trotter evolution needs at least one step"));
    }
    let half = t / steps as f64 / 2.0;
    let mut v = state.amplitudes().to_vec();
    let terms = h.terms();
    for _ in 0..steps {
        for term in terms.iter().chain(terms.iter().rev()) {
            // exp(−iθP) = cos θ − i sin θ P for a Pauli string P.
            let theta = term.coefficient * half;
            let pv = term.pauli.apply(&v);
            let (c, s) = (theta.cos(), theta.sin());
            for (x, p) in v.iter_mut().zip(pv) {
                *x = *x * c - Complex64::i() * p * s;
            }
        }
    }
    Ok(QuantumState::from_raw_unchecked(state.n_qubits(), v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim::dot;
    use std::f64::consts::PI;

    fn fidelity_raw(a: &[Complex64], b: &[Complex64]) -> f64 {
        dot(a, b).norm_sqr()
    }

    fn ising(n: usize) -> Hamiltonian {
        let mut h = Hamiltonian::new(n);
        for q in 0..n {
            let mut s = vec!['I'; n];
            s[q] = 'X';
            h = h.with_term(-1.05, &s.iter().collect::<String>()).unwrap();
            s[q] = 'Z';
            h = h.with_term(0.5, &s.iter().collect::<String>()).unwrap();
            if q + 1 < n {
                let mut zz = vec!['I'; n];
                zz[q] = 'Z';
                zz[q + 1] = 'Z';
                h = h.with_term(1.0, &zz.iter().collect::<String>()).unwrap();
            }
        }
        h
    }

    #[test]
    fn zero_time_is_identity() {
        let s = QuantumState::from_bits("0110").unwrap();
        let out = evolve(&s, &ising(4), 0.0, EvolutionMethod::Exact).unwrap();
        assert!(fidelity_raw(out.amplitudes(), s.amplitudes()) > 1.0 - 1e-12);
    }

    #[test]
    fn z_for_time_pi_is_global_phase() {
        let h = Hamiltonian::new(1).with_term(1.0, "Z").unwrap();
        let s = QuantumState::zero(1).unwrap();
        let out = evolve(&s, &h, PI, EvolutionMethod::Exact).unwrap();
        assert!((out.amplitudes()[0] - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
        assert!(s.fidelity(&out).unwrap() > 1.0 - 1e-12);
    }

    #[test]
    fn energy_is_conserved() {
        let h = ising(5);
        let s = crate::qsim::haar_random_state(5, 3).unwrap();
        let e0 = h.expectation(&s).unwrap();
        let out = evolve(&s, &h, 2.7, EvolutionMethod::Exact).unwrap();
        assert!((h.expectation(&out).unwrap() - e0).abs() < 1e-8);
        assert!((out.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn complex_hamiltonian_spectrum() {
        let h = Hamiltonian::new(2)
            .with_term(0.8, "XY")
            .unwrap()
            .with_term(0.3, "ZI")
            .unwrap();
        let s = QuantumState::from_bits("01").unwrap();
        let exact = evolve(&s, &h, 1.3, EvolutionMethod::Exact).unwrap();
        let trot = evolve(&s, &h, 1.3, EvolutionMethod::Trotter { steps: 400 }).unwrap();
        assert!(exact.fidelity(&trot).unwrap() > 1.0 - 1e-8);
    }

    #[test]
    fn trotter_error_is_second_order() {
        let h = ising(4);
        let s = QuantumState::from_bits("0101").unwrap();
        let exact = evolve(&s, &h, 1.0, EvolutionMethod::Exact).unwrap();
        let err = |steps| {
            let out = evolve(&s, &h, 1.0, EvolutionMethod::Trotter { steps }).unwrap();
            crate::qsim::gates::max_abs_diff(out.amplitudes(), exact.amplitudes())
        };
        let (e1, e2) = (err(20), err(40));
        let ratio = e1 / e2;
        assert!(ratio > 3.5 && ratio < 4.5, "ratio {ratio}");
    }

    #[test]
    fn oversize_exact_is_rejected() {
        let h = Hamiltonian::new(13);
        assert!(matches!(Spectrum::of(&h), Err(Error::TooLargeForExact { .. })));
    }

    #[test]
    fn zero_trotter_steps_rejected() {
        let h = ising(2);
        let s = QuantumState::zero(2).unwrap();
        assert!(evolve(&s, &h, 1.0, EvolutionMethod::Trotter { steps: 0 }).is_err());
    }
}
