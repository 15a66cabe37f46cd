use super::EXACT_TOL;
use crate::qsim::{PauliString, QuantumState};
use crate::{error::invalid, Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const ORTHONORMAL_TOL: f64 = 1e-8;

/// Codewords plus a set of Pauli error operators acting on them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawCode")]
pub struct CodeSpec {
    codewords: Vec<QuantumState>,
    errors: Vec<PauliString>,
}

#[derive(Deserialize)]
struct RawCode {
    codewords: Vec<QuantumState>,
    #[serde(default)]
    errors: Vec<PauliString>,
}

impl TryFrom<RawCode> for CodeSpec {
    type Error = Error;
    fn try_from(r: RawCode) -> Result<Self> {
        CodeSpec::new(r.codewords, r.errors)
    }
}

impl CodeSpec {
    pub fn new(codewords: Vec<QuantumState>, errors: Vec<PauliString>) -> Result<Self> {
        if codewords.len() < 2 {
            return Err(invalid("a code needs at least two codewords"));
        }
        let n = codewords[0].n_qubits();
        for s in codewords.iter().map(|c| c.n_qubits()).chain(errors.iter().map(|e| e.n_qubits())) {
            if s != n {
                return Err(Error::DimensionMismatch { expected: n, found: s });
            }
        }
        for i in 0..codewords.len() {
            for j in i + 1..codewords.len() {
                let overlap = codewords[i].inner(&codewords[j])?.norm();
                if overlap > ORTHONORMAL_TOL {
                    return Err(Error::NotOrthogonal { overlap });
                }
            }
        }
        Ok(Self { codewords, errors })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn n_qubits(&self) -> usize {
        self.codewords[0].n_qubits()
    }

    pub fn codewords(&self) -> &[QuantumState] {
        &self.codewords
    }

    pub fn errors(&self) -> &[PauliString] {
        &self.errors
    }
}

/// Gate cost of a Pauli error in two-qubit-gate units: `⌈weight/2⌉`.
pub fn error_complexity(p: &PauliString) -> usize {
    p.weight().div_ceil(2)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub errors: Vec<PauliString>,
    /// `λ_mn`, indexed `[m][n]`.
    pub lambda_mn: Vec<Vec<Complex64>>,
    /// `ε_mnij = ⟨ψ_i|E_m†E_n|ψ_j⟩ − λ_mn δ_ij`, indexed `[m][n][i][j]`.
    pub eps_mnij: Vec<Vec<Vec<Vec<Complex64>>>>,
    pub max_eps: f64,
    /// Largest error complexity `c` such that every supplied error of
    /// complexity at most `c` passes the exact condition.
    pub correctable_to: usize,
}

/// Residuals of the approximate Knill–Laflamme condition
/// `⟨ψ_i|E_m†E_n|ψ_j⟩ = λ_mn δ_ij + ε_mnij`, with `λ_mn` the least-squares fit
/// (the mean of the diagonal entries).
pub fn beny_oreshkov_residuals(code: &CodeSpec) -> ResidualReport {
    let k = code.codewords.len();
    let m_count = code.errors.len();
    // images[m][i] = E_m |ψ_i⟩
    let images: Vec<Vec<Vec<Complex64>>> = code
        .errors
        .iter()
        .map(|e| code.codewords.iter().map(|c| e.apply(c.amplitudes())).collect())
        .collect();
    let dot = |x: &[Complex64], y: &[Complex64]| -> Complex64 { x.iter().zip(y).map(|(a, b)| a.conj() * b).sum() };
    let mut lambda = vec![vec![Complex64::new(0.0, 0.0); m_count]; m_count];
    let mut eps = vec![vec![vec![vec![Complex64::new(0.0, 0.0); k]; k]; m_count]; m_count];
    // max |ε| restricted to pairs whose larger error complexity is `level`
    let levels: Vec<usize> = code.errors.iter().map(error_complexity).collect();
    let top = levels.iter().copied().max().unwrap_or(0);
    let mut worst_at = vec![0.0f64; top + 1];
    for m in 0..m_count {
        for n in 0..m_count {
            let g: Vec<Vec<Complex64>> = (0..k)
                .map(|i| (0..k).map(|j| dot(&images[m][i], &images[n][j])).collect())
                .collect();
            let lam = (0..k).map(|i| g[i][i]).sum::<Complex64>() / k as f64;
            lambda[m][n] = lam;
            let level = levels[m].max(levels[n]);
            for i in 0..k {
                for j in 0..k {
                    let e = if i == j { g[i][j] - lam } else { g[i][j] };
                    eps[m][n][i][j] = e;
                    worst_at[level] = worst_at[level].max(e.norm());
                }
            }
        }
    }
    let max_eps = worst_at.iter().copied().fold(0.0, f64::max);
    let mut correctable_to = 0;
    let mut worst = 0.0f64;
    for (c, w) in worst_at.iter().enumerate() {
        worst = worst.max(*w);
        if worst > EXACT_TOL {
            break;
        }
        if levels.contains(&c) {
            correctable_to = c;
        }
    }
    ResidualReport {
        errors: code.errors.clone(),
        lambda_mn: lambda,
        eps_mnij: eps,
        max_eps,
        correctable_to,
    }
}

/// Lower bound implied for codeword-pair complexities: for `Δ ≥ epsilon`
/// both interference and distinguishability complexities are at least
/// `floor = 2c`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexityFloor {
    pub c: usize,
    pub floor: usize,
    /// Largest residual among the errors the floor relies on.
    pub epsilon: f64,
}

pub fn code_complexity_floor(report: &ResidualReport) -> ComplexityFloor {
    let c = report.correctable_to;
    let levels: Vec<usize> = report.errors.iter().map(error_complexity).collect();
    let mut epsilon = 0.0f64;
    for (m, row) in report.eps_mnij.iter().enumerate() {
        for (n, block) in row.iter().enumerate() {
            if levels[m] <= c && levels[n] <= c {
                for e in block.iter().flatten() {
                    epsilon = epsilon.max(e.norm());
                }
            }
        }
    }
    ComplexityFloor { c, floor: 2 * c, epsilon }
}
