use super::{apply_matrix, state::same_size, GateOp, QuantumState};
use crate::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Ordered gate sequence; the gate count is the complexity charged to it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawCircuit")]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<GateOp>,
}

#[derive(Deserialize)]
struct RawCircuit {
    n_qubits: usize,
    gates: Vec<GateOp>,
}

impl TryFrom<RawCircuit> for Circuit {
    type Error = Error;

    fn try_from(raw: RawCircuit) -> Result<Self> {
        Self::from_gates(raw.n_qubits, raw.gates)
    }
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            gates: Vec::new(),
        }
    }

    pub fn from_gates(n_qubits: usize, gates: Vec<GateOp>) -> Result<Self> {
        let mut c = Self::new(n_qubits);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn push(&mut self, gate: GateOp) -> Result<()> {
        if gate.targets().iter().any(|&q| q >= self.n_qubits) {
            return Err(Error::InvalidTargets {
                targets: gate.targets().to_vec(),
                n_qubits: self.n_qubits,
            });
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn with(mut self, gate: GateOp) -> Result<Self> {
        self.push(gate)?;
        Ok(self)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[GateOp] {
        &self.gates
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// The adjoint circuit: reversed order, each gate daggered.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            n_qubits: self.n_qubits,
            gates: self.gates.iter().rev().map(GateOp::dagger).collect(),
        }
    }

    /// `other` applied after `self`.
    pub fn then(&self, other: &Circuit) -> Result<Circuit> {
        same_size(self.n_qubits, other.n_qubits)?;
        let mut gates = self.gates.clone();
        gates.extend(other.gates.iter().cloned());
        Ok(Circuit {
            n_qubits: self.n_qubits,
            gates,
        })
    }

    pub(crate) fn apply_in_place(&self, amps: &mut [Complex64]) {
        for g in &self.gates {
            apply_matrix(amps, self.n_qubits, g.targets(), g.matrix());
        }
    }

    pub fn apply(&self, state: &QuantumState) -> Result<QuantumState> {
        same_size(self.n_qubits, state.n_qubits())?;
        let mut amps = state.amplitudes().to_vec();
        self.apply_in_place(&mut amps);
        Ok(QuantumState::from_raw_unchecked(self.n_qubits, amps))
    }
}

/// `U|state⟩`; the input is left untouched.
pub fn apply_circuit(state: &QuantumState, circuit: &Circuit) -> Result<QuantumState> {
    circuit.apply(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim::gates;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn empty_circuit_is_identity() {
        let s = QuantumState::from_bits("101").unwrap();
        assert_eq!(apply_circuit(&s, &Circuit::new(3)).unwrap(), s);
    }

    #[test]
    fn x_flips_qubit_zero() {
        let c = Circuit::new(1)
            .with(GateOp::single(0, gates::x(), "X").unwrap())
            .unwrap();
        let out = apply_circuit(&QuantumState::zero(1).unwrap(), &c).unwrap();
        assert_eq!(out, QuantumState::basis(1, 1).unwrap());
    }

    #[test]
    fn cnot_builds_bell_pair() {
        let h = r(FRAC_1_SQRT_2);
        let s = QuantumState::new(2, vec![h, r(0.0), h, r(0.0)]).unwrap();
        let c = Circuit::new(2)
            .with(GateOp::two(0, 1, gates::cnot(), "CNOT").unwrap())
            .unwrap();
        let out = apply_circuit(&s, &c).unwrap();
        let expect = [h, r(0.0), r(0.0), h];
        assert!(gates::max_abs_diff(out.amplitudes(), &expect) < 1e-15);
    }

    #[test]
    fn reversed_cnot_uses_second_target_as_target() {
        // CNOT(1 -> 0) on |01> gives |11>.
        let c = Circuit::new(2)
            .with(GateOp::two(1, 0, gates::cnot(), "CNOT").unwrap())
            .unwrap();
        let out = c.apply(&QuantumState::from_bits("01").unwrap()).unwrap();
        assert_eq!(out, QuantumState::from_bits("11").unwrap());
    }

    #[test]
    fn gate_on_non_adjacent_qubits() {
        let c = Circuit::new(3)
            .with(GateOp::two(0, 2, gates::cnot(), "CNOT").unwrap())
            .unwrap();
        let out = c.apply(&QuantumState::from_bits("100").unwrap()).unwrap();
        assert_eq!(out, QuantumState::from_bits("101").unwrap());
    }

    #[test]
    fn hadamard_column() {
        let c = Circuit::new(1)
            .with(GateOp::single(0, gates::h(), "H").unwrap())
            .unwrap();
        let z = QuantumState::zero(1).unwrap();
        let v = z.inner(&c.apply(&z).unwrap()).unwrap();
        assert!((v.re - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn out_of_range_target_rejected() {
        let g = GateOp::single(3, gates::x(), "X").unwrap();
        assert!(Circuit::new(2).with(g).is_err());
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let s = QuantumState::zero(2).unwrap();
        assert!(matches!(
            apply_circuit(&s, &Circuit::new(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
