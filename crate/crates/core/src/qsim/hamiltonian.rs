use super::{qubit_mask, state::same_size, QuantumState};
use crate::{error::invalid, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_char(c: char) -> Option<Pauli> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Tensor product of single-qubit Paulis; serialized as a string like `"XIZ"`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct PauliString {
    paulis: Vec<Pauli>,
}

impl PauliString {
    pub fn parse(s: &str) -> Result<Self> {
        let paulis = s
            .chars()
            .map(|c| Pauli::from_char(c).ok_or_else(|| invalid(format!("bad Pauli label {c:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if paulis.is_empty() {
            return Err(invalid("empty Pauli string"));
        }
        Ok(Self { paulis })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            paulis: vec![Pauli::I; n],
        }
    }

    /// Identity except for the listed `(qubit, pauli)` factors.
    pub fn sparse(n: usize, factors: &[(usize, Pauli)]) -> Result<Self> {
        let mut paulis = vec![Pauli::I; n];
        for &(q, p) in factors {
            if q >= n {
                return Err(invalid(format!("qubit {q} out of range for {n} qubits")));
            }
            paulis[q] = p;
        }
        Ok(Self { paulis })
    }

    pub fn n_qubits(&self) -> usize {
        self.paulis.len()
    }

    pub fn paulis(&self) -> &[Pauli] {
        &self.paulis
    }

    pub fn weight(&self) -> usize {
        self.paulis.iter().filter(|&&p| p != Pauli::I).count()
    }

    fn masks(&self) -> (usize, usize, usize) {
        let n = self.paulis.len();
        let (mut x, mut z, mut ny) = (0, 0, 0);
        for (q, p) in self.paulis.iter().enumerate() {
            let m = qubit_mask(n, q);
            match p {
                Pauli::I => {}
                Pauli::X => x |= m,
                Pauli::Z => z |= m,
                Pauli::Y => {
                    x |= m;
                    z |= m;
                    ny += 1;
                }
            }
        }
        (x, z, ny)
    }

    /// True when every matrix element is real (even number of `Y` factors).
    pub fn is_real(&self) -> bool {
        self.masks().2.is_multiple_of(2)
    }

    /// `P v`, using `P|i⟩ = i^{#Y} (−1)^{|i ∧ zmask|} |i ⊕ xmask⟩`.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let (x, z, ny) = self.masks();
        let global = Complex64::i().powu(ny as u32);
        let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
        for (i, a) in v.iter().enumerate() {
            let sign = if (i & z).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
            out[i ^ x] = global * a * sign;
        }
        out
    }

    pub fn apply_state(&self, s: &QuantumState) -> Result<QuantumState> {
        same_size(self.n_qubits(), s.n_qubits())?;
        Ok(QuantumState::from_raw_unchecked(
            s.n_qubits(),
            self.apply(s.amplitudes()),
        ))
    }

    pub fn dense(&self) -> DMatrix<Complex64> {
        let dim = 1 << self.n_qubits();
        let (x, z, ny) = self.masks();
        let global = Complex64::i().powu(ny as u32);
        let mut m = DMatrix::zeros(dim, dim);
        for i in 0..dim {
            let sign = if (i & z).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
            m[(i ^ x, i)] = global * sign;
        }
        m
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.paulis {
            write!(f, "{}", p.as_char())?;
        }
        Ok(())
    }
}

impl From<PauliString> for String {
    fn from(p: PauliString) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for PauliString {
    type Error = crate::Error;

    fn try_from(s: String) -> Result<Self> {
        Self::parse(&s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub coefficient: f64,
    pub pauli: PauliString,
}

/// `H = Σ_k c_k P_k` with real coefficients, Hermitian by construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hamiltonian {
    n_qubits: usize,
    terms: Vec<Term>,
}

impl Hamiltonian {
    pub fn new(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            terms: Vec::new(),
        }
    }

    pub fn add_term(&mut self, coefficient: f64, pauli: PauliString) -> Result<()> {
        same_size(self.n_qubits, pauli.n_qubits())?;
        if !coefficient.is_finite() {
            return Err(invalid("Hamiltonian coefficients must be finite"));
        }
        self.terms.push(Term { coefficient, pauli });
        Ok(())
    }

    pub fn with_term(mut self, coefficient: f64, pauli: &str) -> Result<Self> {
        self.add_term(coefficient, PauliString::parse(pauli)?)?;
        Ok(self)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|t| t.pauli.is_real())
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
        for t in &self.terms {
            for (o, p) in out.iter_mut().zip(t.pauli.apply(v)) {
                *o += p * t.coefficient;
            }
        }
        out
    }

    /// `⟨s|H|s⟩`.
    pub fn expectation(&self, s: &QuantumState) -> Result<f64> {
        same_size(self.n_qubits, s.n_qubits())?;
        Ok(super::dot(s.amplitudes(), &self.apply(s.amplitudes())).re)
    }

    pub fn dense(&self) -> DMatrix<Complex64> {
        let dim = 1 << self.n_qubits;
        let mut m = DMatrix::zeros(dim, dim);
        for t in &self.terms {
            m += t.pauli.dense() * Complex64::new(t.coefficient, 0.0);
        }
        m
    }

    /// Real symmetric matrix, available when every term is real.
    pub fn dense_real(&self) -> Option<DMatrix<f64>> {
        if !self.is_real() {
            return None;
        }
        Some(self.dense().map(|c| c.re))
    }
}
