//! Relative, distinguishability and interference complexities between two
//! states.
//!
//! Lower bounds come from exhaustive enumeration over a discrete
//! [`GateAlphabet`] and are certified only relative to that alphabet. Upper
//! bounds come with an explicit witness circuit.

mod alphabet;
mod enumerate;
mod variational;

pub use alphabet::{GateAlphabet, InstantiatedAlphabet, LabeledMatrix};
pub use enumerate::{Enumerator, Probe, ProbeResult, DEFAULT_MAX_EVALUATIONS};
pub use variational::{variational_upper_bound, variational_upper_bound_with, PairSchedule, VariationalConfig};

use crate::qsim::{dot, same_size, Circuit, QuantumState};
use crate::{error::invalid, Result};
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Slack allowed when comparing an objective against its threshold.
pub const THRESHOLD_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplexityKind {
    /// `|⟨b|U|a⟩| ≥ Δ`
    Relative,
    /// `|⟨a|U|a⟩ − ⟨b|U|b⟩| ≥ 2Δ`
    DistinguishabilityProxy,
    /// `|⟨a|U|b⟩| + |⟨b|U|a⟩| ≥ 2Δ`
    InterferenceProxy,
}

impl ComplexityKind {
    pub const ALL: [ComplexityKind; 3] = [
        ComplexityKind::Relative,
        ComplexityKind::DistinguishabilityProxy,
        ComplexityKind::InterferenceProxy,
    ];

    pub fn threshold(self, delta: f64) -> f64 {
        match self {
            ComplexityKind::Relative => delta,
            _ => 2.0 * delta,
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            ComplexityKind::Relative => "R",
            ComplexityKind::DistinguishabilityProxy => "D",
            ComplexityKind::InterferenceProxy => "I",
        }
    }

    /// Objective given the original states and their images under `U`.
    #[inline]
    pub(crate) fn evaluate(
        self,
        a: &[Complex64],
        b: &[Complex64],
        ua: &[Complex64],
        ub: &[Complex64],
    ) -> f64 {
        match self {
            ComplexityKind::Relative => dot(b, ua).norm(),
            ComplexityKind::DistinguishabilityProxy => (dot(a, ua) - dot(b, ub)).norm(),
            ComplexityKind::InterferenceProxy => dot(a, ub).norm() + dot(b, ua).norm(),
        }
    }
}

pub(crate) fn meets(value: f64, threshold: f64) -> bool {
    value >= threshold - THRESHOLD_TOL
}

/// The kind's objective for circuit `u` on the pair `(a, b)`.
pub fn objective_value(
    kind: ComplexityKind,
    u: &Circuit,
    a: &QuantumState,
    b: &QuantumState,
) -> Result<f64> {
    same_size(a.n_qubits(), b.n_qubits())?;
    let ua = u.apply(a)?;
    let ub = u.apply(b)?;
    Ok(kind.evaluate(
        a.amplitudes(),
        b.amplitudes(),
        ua.amplitudes(),
        ub.amplitudes(),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateMethod {
    Enumeration,
    Constructive,
    Variational,
}

#[derive(Clone, Debug)]
pub struct ComplexityQuery {
    pub kind: ComplexityKind,
    pub a: QuantumState,
    pub b: QuantumState,
    pub delta: f64,
    pub alphabet: GateAlphabet,
    pub max_size: usize,
    pub seed: u64,
}

impl ComplexityQuery {
    /// Query with the default alphabet, `max_size = 3` and seed 0.
    pub fn new(kind: ComplexityKind, a: QuantumState, b: QuantumState, delta: f64) -> Result<Self> {
        same_size(a.n_qubits(), b.n_qubits())?;
        if !(delta > 0.0 && delta <= 1.0) {
            return Err(invalid(format!("delta must lie in (0, 1], got {delta}")));
        }
        Ok(Self {
            kind,
            a,
            b,
            delta,
            alphabet: GateAlphabet::default_alphabet(),
            max_size: 3,
            seed: 0,
        })
    }

    pub fn with_max_size(mut self, max_size: usize) -> Self {
        self.max_size = max_size;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_alphabet(mut self, alphabet: GateAlphabet) -> Self {
        self.alphabet = alphabet;
        self
    }

    pub fn threshold(&self) -> f64 {
        self.kind.threshold(self.delta)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexityEstimate {
    pub kind: ComplexityKind,
    pub delta: f64,
    pub lower_bound: usize,
    pub lower_bound_scope: String,
    #[serde(with = "upper_bound_serde")]
    pub upper_bound: Option<usize>,
    pub achieved_value: f64,
    pub witness: Option<Circuit>,
    pub method: EstimateMethod,
    pub seed: u64,
    pub max_size: usize,
    pub truncated: bool,
}

impl ComplexityEstimate {
    /// Exact value when the lower and upper bounds coincide.
    pub fn exact(&self) -> Option<usize> {
        self.upper_bound.filter(|&u| u == self.lower_bound)
    }
}

/// Upper bounds serialize as an integer or the string `"unknown"`.
pub mod upper_bound_serde {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<usize>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match v {
            Some(n) => s.serialize_u64(*n as u64),
            None => s.serialize_str("unknown"),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<usize>, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(usize),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => Ok(Some(n)),
            Raw::S(s) if s == "unknown" => Ok(None),
            Raw::S(s) => Err(serde::de::Error::custom(format!("bad upper bound {s:?}"))),
        }
    }
}

/// Certified (alphabet-relative) lower bound and first witness by exhaustive
/// enumeration of all circuits up to `q.max_size` gates.
pub fn brute_force_estimate(q: &ComplexityQuery) -> Result<ComplexityEstimate> {
    brute_force_estimate_with_budget(q, DEFAULT_MAX_EVALUATIONS)
}

pub fn brute_force_estimate_with_budget(q: &ComplexityQuery, max_evaluations: u64) -> Result<ComplexityEstimate> {
    let alphabet = q.alphabet.instantiate(q.a.n_qubits())?;
    let enumerator = Enumerator::new(&alphabet, q.max_size).with_max_evaluations(max_evaluations);
    let probe = Probe::new(q.kind, 0, 1, q.delta);
    let states = [q.a.clone(), q.b.clone()];
    let result = enumerator.run(&states, &[probe])?.remove(0);
    Ok(result.into_estimate(&alphabet, q))
}

/// Upper bound from a caller-supplied circuit; certifies no lower bound.
pub fn witness_estimate(q: &ComplexityQuery, circuit: &Circuit) -> Result<ComplexityEstimate> {
    let value = objective_value(q.kind, circuit, &q.a, &q.b)?;
    let ok = meets(value, q.threshold());
    Ok(ComplexityEstimate {
        kind: q.kind,
        delta: q.delta,
        lower_bound: 0,
        lower_bound_scope: "none".into(),
        upper_bound: ok.then_some(circuit.gate_count()),
        achieved_value: value,
        witness: ok.then(|| circuit.clone()),
        method: EstimateMethod::Constructive,
        seed: q.seed,
        max_size: q.max_size,
        truncated: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim::{gates, GateOp};

    fn bits(s: &str) -> QuantumState {
        QuantumState::from_bits(s).unwrap()
    }

    #[test]
    fn interference_identity_on_orthogonal_pair_is_zero() {
        let v = objective_value(ComplexityKind::InterferenceProxy, &Circuit::new(2), &bits("00"), &bits("11")).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn xxx_interferes_fully() {
        let mut c = Circuit::new(3);
        for q in 0..3 {
            c.push(GateOp::single(q, gates::x(), "X").unwrap()).unwrap();
        }
        let v = objective_value(ComplexityKind::InterferenceProxy, &c, &bits("000"), &bits("111")).unwrap();
        assert!((v - 2.0).abs() < 1e-15);
    }

    #[test]
    fn z_distinguishes_ghz_branches() {
        let c = Circuit::new(3).with(GateOp::single(0, gates::z(), "Z").unwrap()).unwrap();
        let v = objective_value(ComplexityKind::DistinguishabilityProxy, &c, &bits("000"), &bits("111")).unwrap();
        assert!((v - 2.0).abs() < 1e-15);
    }

    #[test]
    fn bell_interference_is_one_gate() {
        let q = ComplexityQuery::new(ComplexityKind::InterferenceProxy, bits("00"), bits("11"), 0.9).unwrap();
        let e = brute_force_estimate(&q).unwrap();
        assert_eq!((e.lower_bound, e.upper_bound), (1, Some(1)));
        let w = e.witness.unwrap();
        assert!(objective_value(q.kind, &w, &q.a, &q.b).unwrap() >= 1.8 - THRESHOLD_TOL);
    }

    #[test]
    fn identical_states_have_zero_relative_complexity() {
        let q = ComplexityQuery::new(ComplexityKind::Relative, bits("0"), bits("0"), 1.0).unwrap();
        let e = brute_force_estimate(&q).unwrap();
        assert_eq!((e.lower_bound, e.upper_bound), (0, Some(0)));
        assert!(e.witness.unwrap().is_empty());
    }

    #[test]
    fn ghz_distinguishability_witness_is_z0() {
        let q = ComplexityQuery::new(ComplexityKind::DistinguishabilityProxy, bits("000"), bits("111"), 0.9).unwrap();
        let e = brute_force_estimate(&q).unwrap();
        assert_eq!(e.upper_bound, Some(1));
        let w = e.witness.unwrap();
        assert_eq!(w.gates()[0].label(), Some("Z"));
        assert_eq!(w.gates()[0].targets(), &[0]);
    }

    #[test]
    fn unreached_threshold_reports_unknown() {
        let q = ComplexityQuery::new(ComplexityKind::InterferenceProxy, bits("0000"), bits("1111"), 0.9)
            .unwrap()
            .with_max_size(1);
        let e = brute_force_estimate(&q).unwrap();
        assert_eq!(e.lower_bound, 2);
        assert_eq!(e.upper_bound, None);
        assert!(e.witness.is_none());
        assert!(!e.truncated);
        let json = serde_json::to_string(&e).unwrap();
        assert!(json.contains("\"upper_bound\":\"unknown\""));
        let back: ComplexityEstimate = serde_json::from_str(&json).unwrap();
        assert_eq!(back.upper_bound, None);
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let q = ComplexityQuery::new(ComplexityKind::InterferenceProxy, bits("0000"), bits("1111"), 0.9)
            .unwrap()
            .with_max_size(3);
        let e = brute_force_estimate_with_budget(&q, 1000).unwrap();
        assert!(e.truncated);
        assert_eq!(e.upper_bound, None);
        assert!(e.lower_bound <= 2);
    }

    #[test]
    fn delta_range_is_enforced() {
        assert!(ComplexityQuery::new(ComplexityKind::Relative, bits("0"), bits("1"), 0.0).is_err());
        assert!(ComplexityQuery::new(ComplexityKind::Relative, bits("0"), bits("1"), 1.5).is_err());
    }

    #[test]
    fn constructive_witness() {
        let q = ComplexityQuery::new(ComplexityKind::InterferenceProxy, bits("00"), bits("11"), 0.5).unwrap();
        let c = Circuit::new(2)
            .with(GateOp::two(0, 1, gates::kron(&gates::x(), &gates::x()), "XX").unwrap())
            .unwrap();
        let e = witness_estimate(&q, &c).unwrap();
        assert_eq!(e.upper_bound, Some(1));
        assert_eq!(e.method, EstimateMethod::Constructive);
        let e = witness_estimate(&q, &Circuit::new(2)).unwrap();
        assert_eq!(e.upper_bound, None);
    }
}
