use crate::qsim::{Hamiltonian, Pauli, PauliString};
use crate::Result;

/// Default chaotic couplings `(J, g, h)` for [`mixed_field_ising`].
pub const MIXED_FIELD_ISING: (f64, f64, f64) = (1.0, -1.05, 0.5);

/// Open-chain mixed-field Ising model
/// `H = J Σ Z_i Z_{i+1} + g Σ X_i + h Σ Z_i`.
pub fn mixed_field_ising(n: usize, j: f64, g: f64, h: f64) -> Result<Hamiltonian> {
    let mut ham = Hamiltonian::new(n);
    for i in 0..n.saturating_sub(1) {
        ham.add_term(j, PauliString::sparse(n, &[(i, Pauli::Z), (i + 1, Pauli::Z)])?)?;
    }
    for i in 0..n {
        ham.add_term(g, PauliString::sparse(n, &[(i, Pauli::X)])?)?;
        ham.add_term(h, PauliString::sparse(n, &[(i, Pauli::Z)])?)?;
    }
    Ok(ham)
}

/// Open-chain XXZ model `H = Σ jxy (X_i X_{i+1} + Y_i Y_{i+1}) + jz Z_i Z_{i+1}`,
/// which conserves total `Z`.
pub fn xxz_chain(n: usize, jxy: f64, jz: f64) -> Result<Hamiltonian> {
    let mut ham = Hamiltonian::new(n);
    for i in 0..n.saturating_sub(1) {
        for (p, c) in [(Pauli::X, jxy), (Pauli::Y, jxy), (Pauli::Z, jz)] {
            ham.add_term(c, PauliString::sparse(n, &[(i, p), (i + 1, p)])?)?;
        }
    }
    Ok(ham)
}
