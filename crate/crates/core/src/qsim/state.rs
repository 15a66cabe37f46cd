use super::{dot, NORM_TOL};
use crate::{error::invalid, Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A normalized pure state on `n_qubits` qubits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawState")]
pub struct QuantumState {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

#[derive(Deserialize)]
struct RawState {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl TryFrom<RawState> for QuantumState {
    type Error = Error;

    fn try_from(raw: RawState) -> Result<Self> {
        Self::new(raw.n_qubits, raw.amplitudes)
    }
}

impl QuantumState {
    /// Validates length `2^n` and unit norm within 1e-10.
    pub fn new(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_length(n_qubits, amplitudes.len())?;
        let norm = norm(&amplitudes);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Rescales a nonzero vector to unit norm.
    pub fn from_unnormalized(n_qubits: usize, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        check_length(n_qubits, amplitudes.len())?;
        let norm = norm(&amplitudes);
        if norm < 1e-300 || !norm.is_finite() {
            return Err(invalid("cannot normalize a zero or non-finite vector"));
        }
        for a in &mut amplitudes {
            *a /= norm;
        }
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        let dim = dim_of(n_qubits)?;
        if index >= dim {
            return Err(invalid(format!(
                "basis index {index} out of range for {n_qubits} qubits"
            )));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    pub fn zero(n_qubits: usize) -> Result<Self> {
        Self::basis(n_qubits, 0)
    }

    /// Basis state from a bit string such as `"0110"` (leftmost = qubit 0).
    pub fn from_bits(bits: &str) -> Result<Self> {
        let mut index = 0;
        for ch in bits.chars() {
            index = index * 2
                + match ch {
                    '0' => 0,
                    '1' => 1,
                    _ => return Err(invalid(format!("invalid bit string {bits:?}"))),
                };
        }
        Self::basis(bits.len(), index)
    }

    /// Normalized `Σ_k c_k |s_k⟩`.
    pub fn superposition(terms: &[(Complex64, &QuantumState)]) -> Result<Self> {
        let first = terms
            .first()
            .ok_or_else(|| invalid("superposition needs at least one term"))?;
        let n = first.1.n_qubits;
        let mut acc = vec![Complex64::new(0.0, 0.0); first.1.dim()];
        for (c, s) in terms {
            same_size(n, s.n_qubits)?;
            for (x, y) in acc.iter_mut().zip(&s.amplitudes) {
                *x += c * y;
            }
        }
        Self::from_unnormalized(n, acc)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amplitudes)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &QuantumState) -> Result<Complex64> {
        same_size(self.n_qubits, other.n_qubits)?;
        Ok(dot(&self.amplitudes, &other.amplitudes))
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &QuantumState) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// `self ⊗ other`, with `self` on the leading qubits.
    pub fn tensor(&self, other: &QuantumState) -> QuantumState {
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        QuantumState {
            n_qubits: self.n_qubits + other.n_qubits,
            amplitudes,
        }
    }

    pub fn scaled_phase(&self, theta: f64) -> QuantumState {
        let ph = Complex64::from_polar(1.0, theta);
        QuantumState {
            n_qubits: self.n_qubits,
            amplitudes: self.amplitudes.iter().map(|a| a * ph).collect(),
        }
    }

    /// Probability of each computational basis outcome.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    pub(crate) fn from_raw_unchecked(n_qubits: usize, amplitudes: Vec<Complex64>) -> Self {
        debug_assert_eq!(amplitudes.len(), 1 << n_qubits);
        Self {
            n_qubits,
            amplitudes,
        }
    }
}

/// `⟨a|b⟩` with conjugation on `a`.
pub fn inner_product(a: &QuantumState, b: &QuantumState) -> Result<Complex64> {
    a.inner(b)
}

pub(crate) fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

pub(crate) fn same_size(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

fn dim_of(n_qubits: usize) -> Result<usize> {
    if n_qubits == 0 || n_qubits > 24 {
        return Err(invalid(format!("unsupported qubit count {n_qubits}")));
    }
    Ok(1 << n_qubits)
}

fn check_length(n_qubits: usize, len: usize) -> Result<()> {
    let expected = dim_of(n_qubits)?;
    if len != expected {
        return Err(Error::BadLength {
            expected,
            found: len,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn basis_overlaps() {
        let z = QuantumState::zero(1).unwrap();
        let o = QuantumState::basis(1, 1).unwrap();
        assert_eq!(inner_product(&z, &z).unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(inner_product(&z, &o).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn rejects_bad_norm_and_length() {
        let half = Complex64::new(0.5, 0.0);
        assert!(matches!(
            QuantumState::new(1, vec![half, half]),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            QuantumState::new(2, vec![Complex64::new(1.0, 0.0)]),
            Err(Error::BadLength { .. })
        ));
    }

    #[test]
    fn inner_conjugates_the_bra() {
        let i = Complex64::new(0.0, FRAC_1_SQRT_2);
        let r = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let a = QuantumState::new(1, vec![r, i]).unwrap();
        let plus = QuantumState::new(1, vec![r, r]).unwrap();
        let v = a.inner(&plus).unwrap();
        assert!((v - Complex64::new(0.5, -0.5)).norm() < 1e-15);
    }

    #[test]
    fn from_bits_is_msb_first() {
        let s = QuantumState::from_bits("10").unwrap();
        assert_eq!(s.amplitudes()[2], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = QuantumState::zero(1).unwrap();
        let b = QuantumState::zero(2).unwrap();
        assert!(matches!(a.inner(&b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn json_round_trip_validates() {
        let s = QuantumState::from_bits("01").unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert!(text.contains("\"amplitudes\":[[0.0,0.0],[1.0,0.0]"));
        let back: QuantumState = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        let bad = r#"{"n_qubits":1,"amplitudes":[[1.0,0.0],[1.0,0.0]]}"#;
        assert!(serde_json::from_str::<QuantumState>(bad).is_err());
    }
}
