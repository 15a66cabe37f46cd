use crate::qsim::{gates, Circuit, GateOp};
use crate::{error::invalid, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabeledMatrix {
    pub label: String,
    pub matrix: Vec<Complex64>,
}

impl LabeledMatrix {
    fn new(label: &str, matrix: Vec<Complex64>) -> Self {
        Self {
            label: label.to_string(),
            matrix,
        }
    }
}

/// A named discrete gate set. One-qubit entries are placed on every qubit and
/// two-qubit entries on every ordered pair; placements that coincide up to a
/// global phase with an earlier one are dropped.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateAlphabet {
    pub name: String,
    pub one_qubit: Vec<LabeledMatrix>,
    pub two_qubit: Vec<LabeledMatrix>,
}

fn clifford_t() -> Vec<LabeledMatrix> {
    vec![
        LabeledMatrix::new("X", gates::x()),
        LabeledMatrix::new("Y", gates::y()),
        LabeledMatrix::new("Z", gates::z()),
        LabeledMatrix::new("H", gates::h()),
        LabeledMatrix::new("S", gates::s()),
        LabeledMatrix::new("Sdg", gates::sdg()),
        LabeledMatrix::new("T", gates::t()),
        LabeledMatrix::new("Tdg", gates::tdg()),
    ]
}

impl GateAlphabet {
    /// `{X,Y,Z,H,S,S†,T,T†}` per qubit; per pair the nine two-qubit Pauli
    /// products, CNOT, CZ, and the Bell-pair preparation `CNOT·(H⊗I)` with its
    /// inverse.
    ///
    /// The two-qubit Pauli products let one gate act on two qubits at once,
    /// which is what the 2-qubit-gate unit of complexity charges.
    pub fn default_alphabet() -> Self {
        let paulis = [("X", gates::x()), ("Y", gates::y()), ("Z", gates::z())];
        let mut two_qubit = Vec::new();
        for (la, a) in &paulis {
            for (lb, b) in &paulis {
                two_qubit.push(LabeledMatrix::new(&format!("{la}{lb}"), gates::kron(a, b)));
            }
        }
        let bell = gates::bell();
        two_qubit.push(LabeledMatrix::new("CNOT", gates::cnot()));
        two_qubit.push(LabeledMatrix::new("CZ", gates::cz()));
        two_qubit.push(LabeledMatrix::new("BELL", bell.clone()));
        two_qubit.push(LabeledMatrix::new("BELLdg", gates::dagger(&bell, 4)));
        Self {
            name: "default".into(),
            one_qubit: clifford_t(),
            two_qubit,
        }
    }

    /// `{X,Y,Z,H,S,S†,T,T†}` per qubit plus CNOT on every ordered pair.
    pub fn clifford_t_cnot() -> Self {
        Self {
            name: "clifford_t_cnot".into(),
            one_qubit: clifford_t(),
            two_qubit: vec![LabeledMatrix::new("CNOT", gates::cnot())],
        }
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "default" => Ok(Self::default_alphabet()),
            "clifford_t_cnot" => Ok(Self::clifford_t_cnot()),
            _ => Err(invalid(format!("unknown gate alphabet {name:?}"))),
        }
    }

    /// All placements on `n` qubits in canonical order: one-qubit gates by
    /// qubit then entry, then two-qubit gates by unordered pair `i<j`, entry,
    /// and orientation `(i,j)` before `(j,i)`.
    pub fn instantiate(&self, n: usize) -> Result<InstantiatedAlphabet> {
        if n == 0 {
            return Err(invalid("alphabet needs at least one qubit"));
        }
        let mut out: Vec<GateOp> = Vec::new();
        let mut push = |g: GateOp| {
            if !out.iter().any(|h| same_action(h, &g)) {
                out.push(g);
            }
        };
        for q in 0..n {
            for e in &self.one_qubit {
                push(GateOp::single(q, e.matrix.clone(), &e.label)?);
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for e in &self.two_qubit {
                    push(GateOp::two(i, j, e.matrix.clone(), &e.label)?);
                    push(GateOp::two(j, i, e.matrix.clone(), &e.label)?);
                }
            }
        }
        let inverse = out
            .iter()
            .map(|g| out.iter().position(|h| is_inverse(g, h)))
            .collect();
        Ok(InstantiatedAlphabet {
            name: self.name.clone(),
            n_qubits: n,
            gates: out,
            inverse,
        })
    }
}

/// The gate's matrix written with targets in ascending order.
fn canonical(g: &GateOp) -> (Vec<usize>, Vec<Complex64>) {
    match g.targets() {
        [a, b] if a > b => {
            let swap = swap_matrix();
            let m = gates::matmul(&gates::matmul(&swap, g.matrix(), 4), &swap, 4);
            (vec![*b, *a], m)
        }
        t => (t.to_vec(), g.matrix().to_vec()),
    }
}

fn swap_matrix() -> Vec<Complex64> {
    let mut m = vec![Complex64::new(0.0, 0.0); 16];
    for (r, c) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
        m[r * 4 + c] = Complex64::new(1.0, 0.0);
    }
    m
}

/// Equal up to a global phase.
fn phase_equal(a: &[Complex64], b: &[Complex64]) -> bool {
    let k = match a.iter().position(|x| x.norm() > 1e-6) {
        Some(k) => k,
        None => return false,
    };
    if b[k].norm() < 1e-6 {
        return false;
    }
    let phase = b[k] / a[k];
    a.iter().zip(b).all(|(x, y)| (x * phase - y).norm() < 1e-10)
}

fn same_action(g: &GateOp, h: &GateOp) -> bool {
    let (tg, mg) = canonical(g);
    let (th, mh) = canonical(h);
    tg == th && phase_equal(&mg, &mh)
}

fn is_inverse(g: &GateOp, h: &GateOp) -> bool {
    let (tg, mg) = canonical(g);
    let (th, mh) = canonical(h);
    if tg != th {
        return false;
    }
    let d = if tg.len() == 1 { 2 } else { 4 };
    phase_equal(&gates::matmul(&mg, &mh, d), &gates::identity(d))
}

/// An alphabet placed on a concrete register.
#[derive(Clone, Debug)]
pub struct InstantiatedAlphabet {
    name: String,
    n_qubits: usize,
    gates: Vec<GateOp>,
    inverse: Vec<Option<usize>>,
}

impl InstantiatedAlphabet {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[GateOp] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Index of the gate cancelling `g` up to phase, if present.
    pub fn inverse_of(&self, g: usize) -> Option<usize> {
        self.inverse[g]
    }

    pub fn is_inverse_closed(&self) -> bool {
        self.inverse.iter().all(Option::is_some)
    }

    pub fn circuit(&self, seq: &[usize]) -> Circuit {
        Circuit::from_gates(self.n_qubits, seq.iter().map(|&g| self.gates[g].clone()).collect())
            .expect("alphabet gates are in range")
    }

    /// Number of sequences of length `m` with no adjacent inverse pair.
    pub fn sequences_of_length(&self, m: usize) -> u128 {
        if m == 0 {
            return 1;
        }
        let a = self.gates.len();
        let mut count: Vec<u128> = vec![1; a];
        for _ in 1..m {
            let total: u128 = count.iter().sum();
            count = (0..a)
                .map(|g| {
                    // sequences ending in g: all predecessors except g's inverse
                    let blocked = self.inverse[g].map_or(0, |h| count[h]);
                    total - blocked
                })
                .collect();
        }
        count.iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_sizes() {
        let a = GateAlphabet::default_alphabet();
        for (n, size) in [(1, 8), (2, 32), (3, 72), (4, 128), (5, 200), (8, 512)] {
            assert_eq!(a.instantiate(n).unwrap().len(), size, "n={n}");
        }
    }

    #[test]
    fn literal_alphabet_sizes() {
        let a = GateAlphabet::clifford_t_cnot();
        assert_eq!(a.instantiate(3).unwrap().len(), 3 * 8 + 6);
    }

    #[test]
    fn alphabets_are_inverse_closed() {
        for a in [GateAlphabet::default_alphabet(), GateAlphabet::clifford_t_cnot()] {
            let inst = a.instantiate(3).unwrap();
            assert!(inst.is_inverse_closed());
            for g in 0..inst.len() {
                assert_eq!(inst.inverse_of(inst.inverse_of(g).unwrap()), Some(g));
            }
        }
    }

    #[test]
    fn canonical_order_starts_with_single_qubit_x() {
        let inst = GateAlphabet::default_alphabet().instantiate(2).unwrap();
        assert_eq!(inst.gates()[0].label(), Some("X"));
        assert_eq!(inst.gates()[8].targets(), &[1]);
        assert_eq!(inst.gates()[16].label(), Some("XX"));
    }

    #[test]
    fn t_and_tdg_are_mutual_inverses() {
        let inst = GateAlphabet::default_alphabet().instantiate(1).unwrap();
        let t = inst.gates().iter().position(|g| g.label() == Some("T")).unwrap();
        let tdg = inst.inverse_of(t).unwrap();
        assert_eq!(inst.gates()[tdg].label(), Some("Tdg"));
    }

    #[test]
    fn sequence_count_matches_closed_form() {
        let inst = GateAlphabet::default_alphabet().instantiate(3).unwrap();
        let a = inst.len() as u128;
        assert_eq!(inst.sequences_of_length(3), a * (a - 1) * (a - 1));
    }
}
