use super::{validate_decomposition, BranchDecomposition};
use crate::complexity::{
    variational_upper_bound_with, ComplexityEstimate, ComplexityKind, ComplexityQuery, Enumerator, GateAlphabet,
    Probe, VariationalConfig, DEFAULT_MAX_EVALUATIONS,
};
use crate::qsim::QuantumState;
use crate::{error::invalid, Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum Estimator {
    Enumeration {
        alphabet: GateAlphabet,
        max_size: usize,
        max_evaluations: u64,
    },
    Variational {
        max_size: usize,
        seed: u64,
        config: VariationalConfig,
    },
}

impl Estimator {
    pub fn enumeration(max_size: usize) -> Self {
        Estimator::Enumeration {
            alphabet: GateAlphabet::default_alphabet(),
            max_size,
            max_evaluations: DEFAULT_MAX_EVALUATIONS,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairClass {
    Good,
    Robust,
    NotBranch,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairVerdict {
    pub i: usize,
    pub j: usize,
    /// Interference complexity at `Δ = ε`.
    pub ci: ComplexityEstimate,
    /// Distinguishability complexity at `Δ = 1 − ε`.
    pub cd: ComplexityEstimate,
    /// `ci.lower_bound − cd.upper_bound`, absent when the upper bound is unknown.
    pub margin: Option<i64>,
    pub class: PairClass,
    /// `ci.lower_bound / cd.upper_bound`; informational only.
    pub ci_cd_ratio: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchVerdict {
    pub pairs: Vec<PairVerdict>,
    pub overall_class: PairClass,
    pub epsilon: f64,
    pub good_threshold: i64,
    pub lambda: f64,
    pub truncated: bool,
}

/// `λ = κ·ln(1/p)` for a physical error rate `p`.
pub fn lambda_from_noise(kappa: f64, p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(invalid(format!("noise rate must lie in (0, 1), got {p}")));
    }
    Ok(kappa * (1.0 / p).ln())
}

fn classify(ci: &ComplexityEstimate, cd: &ComplexityEstimate, good_threshold: i64, lambda: f64) -> (Option<i64>, PairClass) {
    let Some(cd_upper) = cd.upper_bound else {
        return (None, PairClass::Inconclusive);
    };
    let margin = ci.lower_bound as i64 - cd_upper as i64;
    let class = if margin >= good_threshold {
        if ci.lower_bound as f64 > (lambda * cd_upper as f64).exp() {
            PairClass::Robust
        } else {
            PairClass::Good
        }
    } else if ci.truncated {
        // A larger budget could still raise the certified lower bound.
        PairClass::Inconclusive
    } else {
        PairClass::NotBranch
    };
    (Some(margin), class)
}

/// Classifies every pair of branches: `𝒞_I` at `ε` (certified lower bound)
/// against `𝒞_D` at `1 − ε` (witness upper bound).
pub fn assess_branches(
    d: &BranchDecomposition,
    epsilon: f64,
    estimator: &Estimator,
    good_threshold: i64,
    lambda: f64,
) -> Result<BranchVerdict> {
    if !(epsilon > 0.0 && epsilon <= 0.25) {
        return Err(invalid(format!("epsilon must lie in (0, 0.25], got {epsilon}")));
    }
    let report = validate_decomposition(d)?;
    if !report.ok {
        return Err(Error::InvalidDecomposition(format!("{:?}", report.violations)));
    }
    let k = d.len();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let estimates = pair_estimates(&d.states(), &pairs, epsilon, estimator)?;

    let mut verdicts = Vec::with_capacity(pairs.len());
    for (&(i, j), (ci, cd)) in pairs.iter().zip(estimates) {
        let (margin, class) = classify(&ci, &cd, good_threshold, lambda);
        debug_assert!(class != PairClass::Robust || margin.is_some_and(|m| m >= good_threshold));
        let ci_cd_ratio = cd
            .upper_bound
            .filter(|&u| u > 0)
            .map(|u| ci.lower_bound as f64 / u as f64);
        verdicts.push(PairVerdict {
            i,
            j,
            ci,
            cd,
            margin,
            class,
            ci_cd_ratio,
        });
    }
    let classes: Vec<PairClass> = verdicts.iter().map(|v| v.class).collect();
    let overall_class = if classes.iter().all(|&c| c == PairClass::Robust) {
        PairClass::Robust
    } else if classes.iter().all(|&c| matches!(c, PairClass::Good | PairClass::Robust)) {
        PairClass::Good
    } else if classes.contains(&PairClass::NotBranch) {
        PairClass::NotBranch
    } else {
        PairClass::Inconclusive
    };
    let truncated = verdicts.iter().any(|v| v.ci.truncated || v.cd.truncated);
    Ok(BranchVerdict {
        pairs: verdicts,
        overall_class,
        epsilon,
        good_threshold,
        lambda,
        truncated,
    })
}

/// `𝒞_I` at `ε` and `𝒞_D` at `1 − ε` for each listed pair of `states`.
pub(crate) fn pair_estimates(
    states: &[QuantumState],
    pairs: &[(usize, usize)],
    epsilon: f64,
    estimator: &Estimator,
) -> Result<Vec<(ComplexityEstimate, ComplexityEstimate)>> {
    Ok(match estimator {
        Estimator::Enumeration {
            alphabet,
            max_size,
            max_evaluations,
        } => {
            let inst = alphabet.instantiate(states[0].n_qubits())?;
            let probes: Vec<Probe> = pairs
                .iter()
                .flat_map(|&(i, j)| {
                    [
                        Probe::new(ComplexityKind::InterferenceProxy, i, j, epsilon),
                        Probe::new(ComplexityKind::DistinguishabilityProxy, i, j, 1.0 - epsilon),
                    ]
                })
                .collect();
            let results = Enumerator::new(&inst, *max_size)
                .with_max_evaluations(*max_evaluations)
                .run(states, &probes)?;
            results
                .chunks(2)
                .zip(probes.chunks(2))
                .map(|(r, p)| {
                    (
                        r[0].estimate(&inst, p[0].kind, p[0].delta, 0, *max_size),
                        r[1].estimate(&inst, p[1].kind, p[1].delta, 0, *max_size),
                    )
                })
                .collect()
        }
        Estimator::Variational { max_size, seed, config } => pairs
            .par_iter()
            .map(|&(i, j)| -> Result<_> {
                let run = |kind, delta| {
                    let q = ComplexityQuery::new(kind, states[i].clone(), states[j].clone(), delta)?
                        .with_max_size(*max_size)
                        .with_seed(*seed);
                    variational_upper_bound_with(&q, config)
                };
                Ok((
                    run(ComplexityKind::InterferenceProxy, epsilon)?,
                    run(ComplexityKind::DistinguishabilityProxy, 1.0 - epsilon)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?,
    })
}
