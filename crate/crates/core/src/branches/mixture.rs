use super::BranchDecomposition;
use crate::complexity::GateAlphabet;
use crate::qsim::{apply_matrix, Circuit, QuantumState};
use crate::{error::invalid, Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

const GAP_TOL: f64 = 1e-10;
const MAX_GAP_QUBITS: usize = 6;
const MAX_GAP_CIRCUITS: u64 = 50_000_000;

/// `ρ_diag = Σ p_i |ψ_i⟩⟨ψ_i|` alongside the pure alternatives
/// `|Ψ(θ)⟩ = Σ √p_i e^{iθ_i} |ψ_i⟩`, never materializing a density matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedStateModel {
    weights: Vec<f64>,
    states: Vec<QuantumState>,
    phases: Vec<f64>,
}

impl MixedStateModel {
    pub fn from_decomposition(d: &BranchDecomposition) -> Result<Self> {
        let weights = d.probabilities();
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(invalid(format!("branch weights sum to {total}, not 1")));
        }
        Ok(Self {
            weights,
            states: d.states(),
            phases: d.components.iter().map(|c| c.weight.arg()).collect(),
        })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn with_phases(&self, phases: Vec<f64>) -> Result<Self> {
        if phases.len() != self.states.len() {
            return Err(invalid("one phase per branch is required"));
        }
        Ok(Self {
            phases,
            ..self.clone()
        })
    }

    /// Outcome distribution of `U ρ(θ) U†` in the computational basis.
    pub fn pure_probabilities(&self, u: &Circuit) -> Result<Vec<f64>> {
        let images = self.images(u)?;
        Ok(pure_probs(&images, &self.weights, &self.phases))
    }

    /// Outcome distribution of `U ρ_diag U†`.
    pub fn diag_probabilities(&self, u: &Circuit) -> Result<Vec<f64>> {
        let images = self.images(u)?;
        Ok(diag_probs(&images, &self.weights))
    }

    fn images(&self, u: &Circuit) -> Result<Vec<Vec<Complex64>>> {
        self.states
            .iter()
            .map(|s| Ok(u.apply(s)?.into_amplitudes()))
            .collect()
    }
}

fn pure_probs(images: &[Vec<Complex64>], weights: &[f64], phases: &[f64]) -> Vec<f64> {
    let dim = images[0].len();
    (0..dim)
        .map(|m| {
            images
                .iter()
                .zip(weights)
                .zip(phases)
                .map(|((phi, p), t)| phi[m] * Complex64::from_polar(p.sqrt(), *t))
                .sum::<Complex64>()
                .norm_sqr()
        })
        .collect()
}

fn diag_probs(images: &[Vec<Complex64>], weights: &[f64]) -> Vec<f64> {
    let dim = images[0].len();
    (0..dim)
        .map(|m| images.iter().zip(weights).map(|(phi, p)| p * phi[m].norm_sqr()).sum())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairTerm {
    pub i: usize,
    pub j: usize,
    /// `√(p_i p_j)`
    pub weight: f64,
    /// `|P(m|U,+_ij) − P(m|U,−_ij)|`
    pub pure_difference: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub n_qubits: usize,
    pub branches: usize,
    pub circuit_budget: usize,
    pub circuits_enumerated: u64,
    pub phase_points: usize,
    /// Largest `|P(m|U,ρ(θ)) − P(m|U,ρ_diag)|` over all enumerated points.
    pub max_gap_found: f64,
    /// The pairwise-sum bound at the point attaining `max_gap_found`.
    pub bound_rhs: f64,
    pub per_pair_terms: Vec<PairTerm>,
    /// Worst `|gap − bound|`; for two branches the bound is an equality.
    pub max_equality_residual: Option<f64>,
    pub points_checked: u64,
    pub violations: u64,
    pub truncated: bool,
}

fn phase_grid(k: usize, points: usize, own: &[f64]) -> Vec<Vec<f64>> {
    let mut grid = vec![own.to_vec()];
    let total = points.pow((k - 1) as u32);
    for code in 0..total {
        let mut theta = vec![0.0; k];
        let mut c = code;
        for t in theta.iter_mut().skip(1) {
            *t = 2.0 * PI * (c % points) as f64 / points as f64;
            c /= points;
        }
        grid.push(theta);
    }
    grid
}

/// Exhaustive comparison of outcome probabilities between the pure state and
/// the branched mixture, over every alphabet circuit of at most
/// `circuit_budget` gates, every computational-basis outcome and a phase grid
/// of `phase_points` values per relative phase.
///
/// The gap never exceeds `Σ_{i>j} √(p_i p_j)·|P(m|U,+_ij) − P(m|U,−_ij)|`
/// (with `±_ij = (e^{iθ_i}ψ_i ± e^{iθ_j}ψ_j)/√2`), and for two branches the
/// two sides are equal. A breach is returned as an error.
pub fn rho_vs_diag_gap(d: &BranchDecomposition, circuit_budget: usize, phase_points: usize) -> Result<GapReport> {
    let n = d.n_qubits();
    if n > MAX_GAP_QUBITS {
        return Err(invalid(format!("gap enumeration supports at most {MAX_GAP_QUBITS} qubits")));
    }
    if phase_points == 0 {
        return Err(invalid("phase grid needs at least one point"));
    }
    let model = MixedStateModel::from_decomposition(d)?;
    let alphabet = GateAlphabet::default_alphabet().instantiate(n)?;
    let k = d.len();
    let grid = phase_grid(k, phase_points, model.phases());
    let weights = model.weights().to_vec();
    let base: Vec<Vec<Complex64>> = d.states().into_iter().map(|s| s.into_amplitudes()).collect();
    let dim = base[0].len();

    let mut report = GapReport {
        n_qubits: n,
        branches: k,
        circuit_budget,
        circuits_enumerated: 0,
        phase_points,
        max_gap_found: 0.0,
        bound_rhs: 0.0,
        per_pair_terms: Vec::new(),
        max_equality_residual: (k == 2).then_some(0.0),
        points_checked: 0,
        violations: 0,
        truncated: false,
    };
    let mut worst_violation: Option<String> = None;
    let a_len = alphabet.len() as u64;

    for m in 0..=circuit_budget {
        let level = a_len.saturating_pow(m as u32);
        if report.circuits_enumerated.saturating_add(level) > MAX_GAP_CIRCUITS {
            report.truncated = true;
            break;
        }
        let mut seq = vec![0usize; m];
        loop {
            let mut images = base.clone();
            for &g in &seq {
                let gate = &alphabet.gates()[g];
                for img in images.iter_mut() {
                    apply_matrix(img, n, gate.targets(), gate.matrix());
                }
            }
            report.circuits_enumerated += 1;
            let diag = diag_probs(&images, &weights);
            for theta in &grid {
                let pure = pure_probs(&images, &weights, theta);
                for outcome in 0..dim {
                    let gap = (pure[outcome] - diag[outcome]).abs();
                    let mut rhs = 0.0;
                    let mut terms = Vec::new();
                    for i in 0..k {
                        for j in 0..i {
                            let x = images[i][outcome] * Complex64::from_polar(1.0, theta[i]);
                            let y = images[j][outcome] * Complex64::from_polar(1.0, theta[j]);
                            let p_plus = (x + y).norm_sqr() / 2.0;
                            let p_minus = (x - y).norm_sqr() / 2.0;
                            let w = (weights[i] * weights[j]).sqrt();
                            let diff = (p_plus - p_minus).abs();
                            rhs += w * diff;
                            terms.push(PairTerm {
                                i,
                                j,
                                weight: w,
                                pure_difference: diff,
                            });
                        }
                    }
                    report.points_checked += 1;
                    if gap > rhs + GAP_TOL {
                        report.violations += 1;
                        worst_violation.get_or_insert_with(|| {
                            format!("gap {gap:.3e} > bound {rhs:.3e} at circuit {seq:?}, outcome {outcome}")
                        });
                    }
                    if let Some(res) = report.max_equality_residual.as_mut() {
                        *res = res.max((gap - rhs).abs());
                    }
                    if gap > report.max_gap_found {
                        report.max_gap_found = gap;
                        report.bound_rhs = rhs;
                        report.per_pair_terms = terms;
                    }
                }
            }
            // odometer over gate sequences of length m
            let mut pos = 0;
            while pos < m {
                seq[pos] += 1;
                if seq[pos] < alphabet.len() {
                    break;
                }
                seq[pos] = 0;
                pos += 1;
            }
            if pos == m {
                break;
            }
        }
    }
    if let Some(msg) = worst_violation {
        return Err(Error::InvariantViolated(format!("{} bound violations; first: {msg}", report.violations)));
    }
    if let Some(res) = report.max_equality_residual {
        if res > GAP_TOL {
            return Err(Error::InvariantViolated(format!("two-branch equality residual {res:.3e}")));
        }
    }
    Ok(report)
}
