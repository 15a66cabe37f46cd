use crate::branches::{pair_estimates, Estimator};
use crate::complexity::{objective_value, ComplexityEstimate, ComplexityKind};
use crate::qsim::{Circuit, Hamiltonian, QuantumState, Spectrum};
use crate::{error::invalid, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write;

/// Largest register tracked with exact evolution.
const MAX_TRACK_QUBITS: usize = 10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrackConfig {
    /// Objective evaluated for the fixed initial witness.
    pub witness_kind: ComplexityKind,
    /// Fresh estimates use `𝒞_I` at `ε` and `𝒞_D` at `1 − ε`.
    pub epsilon: f64,
    pub estimator: Estimator,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvolutionSample {
    pub t: f64,
    pub witness_objective: f64,
    pub ci: ComplexityEstimate,
    pub cd: ComplexityEstimate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvolutionTrajectory {
    pub witness_kind: ComplexityKind,
    pub epsilon: f64,
    pub samples: Vec<EvolutionSample>,
}

impl EvolutionTrajectory {
    pub fn to_csv(&self) -> String {
        let upper = |e: &ComplexityEstimate| e.upper_bound.map_or("unknown".to_string(), |u| u.to_string());
        let mut out = String::from("t,witness_objective,ci_lower,ci_upper,cd_lower,cd_upper\n");
        for s in &self.samples {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                s.t,
                s.witness_objective,
                s.ci.lower_bound,
                upper(&s.ci),
                s.cd.lower_bound,
                upper(&s.cd)
            );
        }
        out
    }
}

/// Evolves `a0` and `b0` under `h` and records, at each time, the objective
/// reached by the stale initial witness together with fresh complexity
/// estimates. Estimator truncation is recorded per sample.
pub fn track_complexity_under_evolution(
    a0: &QuantumState,
    b0: &QuantumState,
    h: &Hamiltonian,
    witness0: &Circuit,
    t_grid: &[f64],
    config: &TrackConfig,
) -> Result<EvolutionTrajectory> {
    if h.n_qubits() > MAX_TRACK_QUBITS {
        return Err(invalid(format!("tracking supports at most {MAX_TRACK_QUBITS} qubits")));
    }
    if t_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(invalid("the time grid must be strictly increasing"));
    }
    let spectrum = Spectrum::of(h)?;
    let samples = t_grid
        .par_iter()
        .map(|&t| -> Result<EvolutionSample> {
            let states = [spectrum.evolve(a0, t)?, spectrum.evolve(b0, t)?];
            let witness_objective = objective_value(config.witness_kind, witness0, &states[0], &states[1])?;
            let (ci, cd) = pair_estimates(&states, &[(0, 1)], config.epsilon, &config.estimator)?
                .pop()
                .expect("one pair requested");
            Ok(EvolutionSample {
                t,
                witness_objective,
                ci,
                cd,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EvolutionTrajectory {
        witness_kind: config.witness_kind,
        epsilon: config.epsilon,
        samples,
    })
}
