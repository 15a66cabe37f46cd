use crate::qsim::{same_size, QuantumState};
use crate::{error::invalid, Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchComponent {
    pub weight: Complex64,
    pub state: QuantumState,
}

/// `|Ψ⟩ = Σ_i c_i |ψ_i⟩` with normalized, mutually orthogonal `|ψ_i⟩`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchDecomposition {
    pub parent: QuantumState,
    pub components: Vec<BranchComponent>,
    pub tolerance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Reconstruction { fidelity: f64 },
    Orthogonality { i: usize, j: usize, overlap: f64 },
    Normalization { weight_sum: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub reconstruction_fidelity: f64,
    pub weight_sum: f64,
    /// Largest `|⟨ψ_i|ψ_j⟩|` over `i ≠ j`, as `(i, j, overlap)`.
    pub worst_overlap: (usize, usize, f64),
    pub violations: Vec<Violation>,
}

impl BranchDecomposition {
    /// Builds a decomposition; call [`validate_decomposition`] or use
    /// [`BranchDecomposition::validated`] to enforce the invariants.
    pub fn new(parent: QuantumState, components: Vec<(Complex64, QuantumState)>, tolerance: f64) -> Result<Self> {
        if components.len() < 2 {
            return Err(invalid("a branch decomposition needs at least two components"));
        }
        for (_, s) in &components {
            same_size(parent.n_qubits(), s.n_qubits())?;
        }
        Ok(Self {
            parent,
            components: components
                .into_iter()
                .map(|(weight, state)| BranchComponent { weight, state })
                .collect(),
            tolerance,
        })
    }

    /// As [`BranchDecomposition::new`], rejecting any invariant breach.
    pub fn validated(parent: QuantumState, components: Vec<(Complex64, QuantumState)>, tolerance: f64) -> Result<Self> {
        let d = Self::new(parent, components, tolerance)?;
        let report = validate_decomposition(&d)?;
        if !report.ok {
            return Err(Error::InvalidDecomposition(describe(&report)));
        }
        Ok(d)
    }

    /// Parent taken as the exact sum of the weighted components.
    pub fn from_components(components: Vec<(Complex64, QuantumState)>, tolerance: f64) -> Result<Self> {
        let refs: Vec<(Complex64, &QuantumState)> = components.iter().map(|(c, s)| (*c, s)).collect();
        let parent = QuantumState::superposition(&refs)?;
        Self::validated(parent, components, tolerance)
    }

    pub fn n_qubits(&self) -> usize {
        self.parent.n_qubits()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn states(&self) -> Vec<QuantumState> {
        self.components.iter().map(|c| c.state.clone()).collect()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.components.iter().map(|c| c.weight.norm_sqr()).collect()
    }

    /// Every component tensored with `r` on trailing qubits.
    pub fn tensor_right(&self, r: &QuantumState) -> Result<Self> {
        Self::validated(
            self.parent.tensor(r),
            self.components.iter().map(|c| (c.weight, c.state.tensor(r))).collect(),
            self.tolerance,
        )
    }
}

fn describe(r: &ValidationReport) -> String {
    r.violations
        .iter()
        .map(|v| match v {
            Violation::Reconstruction { fidelity } => format!("reconstruction fidelity {fidelity:.6e}"),
            Violation::Orthogonality { i, j, overlap } => format!("|<psi_{i}|psi_{j}>| = {overlap:.6e}"),
            Violation::Normalization { weight_sum } => format!("sum of |c_i|^2 = {weight_sum:.6e}"),
        })
        .collect::<Vec<_>>()
        .join("; ")
}

/// Checks reconstruction, pairwise orthogonality and weight normalization.
pub fn validate_decomposition(d: &BranchDecomposition) -> Result<ValidationReport> {
    if d.components.len() < 2 {
        return Err(invalid("a branch decomposition needs at least two components"));
    }
    let n = d.n_qubits();
    let mut sum = vec![Complex64::new(0.0, 0.0); d.parent.dim()];
    for c in &d.components {
        same_size(n, c.state.n_qubits())?;
        for (x, y) in sum.iter_mut().zip(c.state.amplitudes()) {
            *x += c.weight * y;
        }
    }
    let fidelity = crate::qsim::dot(d.parent.amplitudes(), &sum).norm_sqr();
    let weight_sum: f64 = d.probabilities().iter().sum();
    let mut worst = (0, 1, 0.0f64);
    for i in 0..d.components.len() {
        for j in i + 1..d.components.len() {
            let o = d.components[i].state.inner(&d.components[j].state)?.norm();
            if o > worst.2 {
                worst = (i, j, o);
            }
        }
    }
    let tol = d.tolerance;
    let mut violations = Vec::new();
    if fidelity < 1.0 - tol {
        violations.push(Violation::Reconstruction { fidelity });
    }
    if worst.2 > tol {
        violations.push(Violation::Orthogonality {
            i: worst.0,
            j: worst.1,
            overlap: worst.2,
        });
    }
    if (weight_sum - 1.0).abs() > tol {
        violations.push(Violation::Normalization { weight_sum });
    }
    Ok(ValidationReport {
        ok: violations.is_empty(),
        reconstruction_fidelity: fidelity,
        weight_sum,
        worst_overlap: worst,
        violations,
    })
}
