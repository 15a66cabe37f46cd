//! Standard gate matrices, row-major. Two-qubit matrices use the local index
//! `(bit(first target) << 1) | bit(second target)`.

use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

const fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

const O: Complex64 = c(0.0, 0.0);
const ONE: Complex64 = c(1.0, 0.0);

pub fn identity(dim: usize) -> Vec<Complex64> {
    let mut m = vec![O; dim * dim];
    for i in 0..dim {
        m[i * dim + i] = ONE;
    }
    m
}

pub fn x() -> Vec<Complex64> {
    vec![O, ONE, ONE, O]
}

pub fn y() -> Vec<Complex64> {
    vec![O, c(0.0, -1.0), c(0.0, 1.0), O]
}

pub fn z() -> Vec<Complex64> {
    vec![ONE, O, O, c(-1.0, 0.0)]
}

pub fn h() -> Vec<Complex64> {
    let r = c(FRAC_1_SQRT_2, 0.0);
    vec![r, r, r, -r]
}

pub fn s() -> Vec<Complex64> {
    vec![ONE, O, O, c(0.0, 1.0)]
}

pub fn sdg() -> Vec<Complex64> {
    vec![ONE, O, O, c(0.0, -1.0)]
}

pub fn t() -> Vec<Complex64> {
    vec![ONE, O, O, c(FRAC_1_SQRT_2, FRAC_1_SQRT_2)]
}

pub fn tdg() -> Vec<Complex64> {
    vec![ONE, O, O, c(FRAC_1_SQRT_2, -FRAC_1_SQRT_2)]
}

/// Controlled-NOT with the first target as control.
pub fn cnot() -> Vec<Complex64> {
    vec![
        ONE, O, O, O, //
        O, ONE, O, O, //
        O, O, O, ONE, //
        O, O, ONE, O,
    ]
}

pub fn cz() -> Vec<Complex64> {
    let mut m = identity(4);
    m[15] = c(-1.0, 0.0);
    m
}

/// `CNOT · (H ⊗ I)`: maps `|00⟩` to the Bell state `(|00⟩+|11⟩)/√2`.
pub fn bell() -> Vec<Complex64> {
    matmul(&cnot(), &kron(&h(), &identity(2)), 4)
}

pub fn kron(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut m = vec![O; 16];
    for r0 in 0..2 {
        for r1 in 0..2 {
            for c0 in 0..2 {
                for c1 in 0..2 {
                    m[(r0 * 2 + r1) * 4 + c0 * 2 + c1] = a[r0 * 2 + c0] * b[r1 * 2 + c1];
                }
            }
        }
    }
    m
}

/// Row-major product of two `dim × dim` matrices.
pub fn matmul(a: &[Complex64], b: &[Complex64], dim: usize) -> Vec<Complex64> {
    let mut m = vec![O; dim * dim];
    for i in 0..dim {
        for k in 0..dim {
            let aik = a[i * dim + k];
            if aik == O {
                continue;
            }
            for j in 0..dim {
                m[i * dim + j] += aik * b[k * dim + j];
            }
        }
    }
    m
}

pub fn dagger(m: &[Complex64], dim: usize) -> Vec<Complex64> {
    let mut d = vec![O; dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            d[j * dim + i] = m[i * dim + j].conj();
        }
    }
    d
}

/// Largest entrywise deviation of `M†M` from the identity.
pub fn unitarity_deviation(m: &[Complex64], dim: usize) -> f64 {
    let p = matmul(&dagger(m, dim), m, dim);
    let mut worst: f64 = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            let target = if i == j { ONE } else { O };
            worst = worst.max((p[i * dim + j] - target).norm());
        }
    }
    worst
}

pub fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_gates_are_unitary() {
        for m in [x(), y(), z(), h(), s(), sdg(), t(), tdg()] {
            assert!(unitarity_deviation(&m, 2) < 1e-15);
        }
        for m in [cnot(), cz(), bell(), kron(&x(), &z())] {
            assert!(unitarity_deviation(&m, 4) < 1e-15);
        }
    }

    #[test]
    fn t_squared_is_s() {
        assert!(max_abs_diff(&matmul(&t(), &t(), 2), &s()) < 1e-15);
    }

    #[test]
    fn y_equals_i_x_z() {
        let xz = matmul(&x(), &z(), 2);
        let ixz: Vec<_> = xz.iter().map(|v| v * c(0.0, 1.0)).collect();
        assert!(max_abs_diff(&ixz, &y()) < 1e-15);
    }

    #[test]
    fn bell_maps_zero_to_bell_pair() {
        let b = bell();
        // first column
        assert!((b[0].re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((b[12].re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(b[4].norm() < 1e-15 && b[8].norm() < 1e-15);
    }
}
