use super::{gates, NORM_TOL};
use crate::{error::invalid, Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A unitary on one or two distinct qubits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGate")]
pub struct GateOp {
    targets: Vec<usize>,
    matrix: Vec<Complex64>,
    label: Option<String>,
}

#[derive(Deserialize)]
struct RawGate {
    targets: Vec<usize>,
    matrix: Vec<Complex64>,
    #[serde(default)]
    label: Option<String>,
}

impl TryFrom<RawGate> for GateOp {
    type Error = Error;

    fn try_from(raw: RawGate) -> Result<Self> {
        Self::new(raw.targets, raw.matrix, raw.label)
    }
}

impl GateOp {
    /// `matrix` is row-major, 2×2 for one target or 4×4 for two.
    pub fn new(targets: Vec<usize>, matrix: Vec<Complex64>, label: Option<String>) -> Result<Self> {
        let dim = match targets.len() {
            1 => 2,
            2 if targets[0] != targets[1] => 4,
            _ => {
                return Err(Error::InvalidTargets {
                    targets,
                    n_qubits: 0,
                })
            }
        };
        if matrix.len() != dim * dim {
            return Err(invalid(format!(
                "gate on {} qubit(s) needs a {dim}x{dim} matrix, got {} entries",
                targets.len(),
                matrix.len()
            )));
        }
        let deviation = gates::unitarity_deviation(&matrix, dim);
        if deviation.is_nan() || deviation > NORM_TOL {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self {
            targets,
            matrix,
            label,
        })
    }

    pub fn single(q: usize, matrix: Vec<Complex64>, label: &str) -> Result<Self> {
        Self::new(vec![q], matrix, Some(label.to_string()))
    }

    pub fn two(q0: usize, q1: usize, matrix: Vec<Complex64>, label: &str) -> Result<Self> {
        Self::new(vec![q0, q1], matrix, Some(label.to_string()))
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn matrix(&self) -> &[Complex64] {
        &self.matrix
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn dim(&self) -> usize {
        1 << self.targets.len()
    }

    pub fn dagger(&self) -> GateOp {
        GateOp {
            targets: self.targets.clone(),
            matrix: gates::dagger(&self.matrix, self.dim()),
            label: self.label.as_ref().map(|l| dagger_label(l)),
        }
    }

    /// Same gate acting on relabelled qubits.
    pub fn remapped(&self, map: impl Fn(usize) -> usize) -> GateOp {
        GateOp {
            targets: self.targets.iter().map(|&q| map(q)).collect(),
            matrix: self.matrix.clone(),
            label: self.label.clone(),
        }
    }
}

fn dagger_label(label: &str) -> String {
    match label.strip_suffix("dg") {
        Some(base) => base.to_string(),
        None => format!("{label}dg"),
    }
}
