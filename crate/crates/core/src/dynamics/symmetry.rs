use crate::complexity::{objective_value, ComplexityKind};
use crate::qsim::{Circuit, Hamiltonian, QuantumState, Spectrum};
use crate::{error::invalid, Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const COMMUTATOR_TOL: f64 = 1e-8;
const EIGEN_TOL: f64 = 1e-6;
/// Allowed total variation of the distinguishability objective.
const FREEZE_TOL: f64 = 1e-6;

/// Dense matrix of a circuit, column `k` being the image of basis state `k`.
pub fn circuit_unitary(c: &Circuit) -> Result<DMatrix<Complex64>> {
    let n = c.n_qubits();
    let dim = 1usize << n;
    let mut m = DMatrix::zeros(dim, dim);
    for k in 0..dim {
        let col = c.apply(&QuantumState::basis(n, k)?)?;
        m.set_column(k, &nalgebra::DVector::from_column_slice(col.amplitudes()));
    }
    Ok(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FreezeSample {
    pub t: f64,
    pub distinguishability: f64,
    pub interference: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetryFreezeReport {
    /// Frobenius norm of `[U_sym, H]`.
    pub commutator_norm: f64,
    /// Eigenphases of `U_sym` on `a` and `b`.
    pub phase_a: f64,
    pub phase_b: f64,
    pub distinct_phases: bool,
    pub samples: Vec<FreezeSample>,
    /// `max − min` of the distinguishability objective over the grid.
    pub total_variation: f64,
    pub frozen: bool,
}

fn eigenphase(u: &Circuit, s: &QuantumState, name: &str) -> Result<Complex64> {
    let overlap = s.inner(&u.apply(s)?)?;
    if (overlap.norm() - 1.0).abs() > EIGEN_TOL {
        return Err(invalid(format!(
            "state {name} is not an eigenstate of the symmetry (|<s|U|s>| = {})",
            overlap.norm()
        )));
    }
    Ok(overlap)
}

/// Evolves `a` and `b` under `h` and evaluates the fixed symmetry circuit
/// `u_sym` on them at every time in `t_grid`. A symmetry of `h` cannot gain
/// distinguishing power over time, and cannot map one symmetry sector into
/// another, so its interference objective stays near zero.
pub fn symmetry_freeze_check(
    a: &QuantumState,
    b: &QuantumState,
    h: &Hamiltonian,
    u_sym: &Circuit,
    t_grid: &[f64],
) -> Result<SymmetryFreezeReport> {
    let u = circuit_unitary(u_sym)?;
    let hd = h.dense();
    if u.nrows() != hd.nrows() {
        return Err(Error::DimensionMismatch {
            expected: hd.nrows(),
            found: u.nrows(),
        });
    }
    let commutator_norm = (&u * &hd - &hd * &u).norm();
    if commutator_norm > COMMUTATOR_TOL {
        return Err(Error::NotCommuting { norm: commutator_norm });
    }
    let pa = eigenphase(u_sym, a, "a")?;
    let pb = eigenphase(u_sym, b, "b")?;
    let spectrum = Spectrum::of(h)?;
    let mut samples = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let (at, bt) = (spectrum.evolve(a, t)?, spectrum.evolve(b, t)?);
        samples.push(FreezeSample {
            t,
            distinguishability: objective_value(ComplexityKind::DistinguishabilityProxy, u_sym, &at, &bt)?,
            interference: objective_value(ComplexityKind::InterferenceProxy, u_sym, &at, &bt)?,
        });
    }
    let (lo, hi) = samples.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| {
        (lo.min(s.distinguishability), hi.max(s.distinguishability))
    });
    let total_variation = if samples.is_empty() { 0.0 } else { hi - lo };
    Ok(SymmetryFreezeReport {
        commutator_norm,
        phase_a: pa.arg(),
        phase_b: pb.arg(),
        distinct_phases: (pa - pb).norm() > EIGEN_TOL,
        samples,
        total_variation,
        frozen: total_variation <= FREEZE_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{mixed_field_ising, xxz_chain};
    use crate::qsim::{gates, GateOp};
    use std::f64::consts::PI;

    fn z_rotations(n: usize) -> Circuit {
        let g = |q| {
            let zero = Complex64::new(0.0, 0.0);
            let m = vec![Complex64::from_polar(1.0, PI / 4.0), zero, zero, Complex64::from_polar(1.0, -PI / 4.0)];
            GateOp::single(q, m, "rz").unwrap()
        };
        Circuit::from_gates(n, (0..n).map(g).collect()).unwrap()
    }

    #[test]
    fn xxz_sector_pair_is_frozen() {
        let h = xxz_chain(4, 1.0, 0.5).unwrap();
        let a = QuantumState::from_bits("0100").unwrap();
        let b = QuantumState::from_bits("1011").unwrap();
        let r = symmetry_freeze_check(&a, &b, &h, &z_rotations(4), &[0.0, 1.0, 2.0, 5.0]).unwrap();
        assert!(r.commutator_norm <= 1e-8);
        assert!(r.distinct_phases);
        assert!(r.frozen, "{}", r.total_variation);
        assert!((r.samples[0].distinguishability - 2.0).abs() < 1e-9);
        assert!(r.samples.iter().all(|s| s.interference < 1e-9));
    }

    #[test]
    fn identity_symmetry_is_trivial() {
        let h = xxz_chain(3, 1.0, 1.0).unwrap();
        let id = Circuit::new(3);
        let a = QuantumState::from_bits("001").unwrap();
        let b = QuantumState::from_bits("110").unwrap();
        let r = symmetry_freeze_check(&a, &b, &h, &id, &[0.0, 1.0]).unwrap();
        assert!(!r.distinct_phases);
        assert!(r.samples.iter().all(|s| s.distinguishability < 1e-12 && s.interference < 1e-12));
        let same = symmetry_freeze_check(&a, &a, &h, &z_rotations(3), &[0.0, 3.0]).unwrap();
        assert!(same.samples.iter().all(|s| s.distinguishability < 1e-12));
    }

    #[test]
    fn non_commuting_symmetry_rejected() {
        let h = mixed_field_ising(3, 1.0, -1.05, 0.5).unwrap();
        let a = QuantumState::from_bits("001").unwrap();
        let b = QuantumState::from_bits("110").unwrap();
        let x = Circuit::new(3).with(GateOp::single(0, gates::x(), "X").unwrap()).unwrap();
        assert!(matches!(
            symmetry_freeze_check(&a, &b, &h, &x, &[0.0]),
            Err(Error::NotCommuting { .. })
        ));
    }
}
