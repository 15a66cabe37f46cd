use num_complex::Complex64;
use proptest::prelude::*;
use wavebranch::complexity::{
    brute_force_estimate, brute_force_estimate_with_budget, objective_value, variational_upper_bound,
    variational_upper_bound_with, witness_estimate, ComplexityKind, ComplexityQuery, EstimateMethod, Enumerator,
    GateAlphabet, PairSchedule, Probe, VariationalConfig,
};
use wavebranch::qsim::{gates, haar_random_state, Circuit, GateOp, QuantumState};

const KINDS: [ComplexityKind; 3] = [
    ComplexityKind::Relative,
    ComplexityKind::DistinguishabilityProxy,
    ComplexityKind::InterferenceProxy,
];

fn bits(s: &str) -> QuantumState {
    QuantumState::from_bits(s).unwrap()
}

/// Smallest circuit size meeting the threshold, by plain recursion over all
/// gate sequences (no pruning).
fn naive_min_size(kind: ComplexityKind, a: &QuantumState, b: &QuantumState, delta: f64, max: usize) -> Option<usize> {
    let inst = GateAlphabet::default_alphabet().instantiate(a.n_qubits()).unwrap();
    let threshold = match kind {
        ComplexityKind::Relative => delta,
        _ => 2.0 * delta,
    };
    let meets = |c: &Circuit| objective_value(kind, c, a, b).unwrap() >= threshold - 1e-9;
    let mut frontier = vec![Circuit::new(a.n_qubits())];
    for size in 0..=max {
        if frontier.iter().any(meets) {
            return Some(size);
        }
        if size == max {
            break;
        }
        frontier = frontier
            .iter()
            .flat_map(|c| inst.gates().iter().map(move |g| c.clone().with(g.clone()).unwrap()))
            .collect();
    }
    None
}

#[test]
fn objective_examples() {
    let (a, b) = (bits("000"), bits("111"));
    let id = Circuit::new(3);
    assert_eq!(objective_value(ComplexityKind::InterferenceProxy, &id, &a, &b).unwrap(), 0.0);
    let mut xxx = Circuit::new(3);
    for q in 0..3 {
        xxx.push(GateOp::single(q, gates::x(), "X").unwrap()).unwrap();
    }
    assert!((objective_value(ComplexityKind::InterferenceProxy, &xxx, &a, &b).unwrap() - 2.0).abs() < 1e-12);
    let z0 = Circuit::new(3).with(GateOp::single(0, gates::z(), "Z").unwrap()).unwrap();
    assert!((objective_value(ComplexityKind::DistinguishabilityProxy, &z0, &a, &b).unwrap() - 2.0).abs() < 1e-12);
    assert!(objective_value(ComplexityKind::Relative, &id, &a, &bits("00")).is_err());
}

#[test]
fn enumeration_examples() {
    let q = ComplexityQuery::new(ComplexityKind::InterferenceProxy, bits("00"), bits("11"), 0.9).unwrap();
    let e = brute_force_estimate(&q).unwrap();
    assert_eq!((e.lower_bound, e.upper_bound), (1, Some(1)));
    assert_eq!(e.lower_bound_scope, "alphabet:default");

    let q = ComplexityQuery::new(ComplexityKind::Relative, bits("0"), bits("0"), 1.0).unwrap();
    let e = brute_force_estimate(&q).unwrap();
    assert_eq!((e.lower_bound, e.upper_bound), (0, Some(0)));
    assert!(e.witness.unwrap().is_empty());

    let q = ComplexityQuery::new(ComplexityKind::DistinguishabilityProxy, bits("000"), bits("111"), 0.9).unwrap();
    let e = brute_force_estimate(&q).unwrap();
    assert_eq!(e.upper_bound, Some(1));
    let w = e.witness.unwrap();
    assert_eq!(w.gates()[0].targets(), &[0]);
    assert_eq!(w.gates()[0].label(), Some("Z"));
}

#[test]
fn unfound_sets_lower_to_budget_plus_one() {
    let a = haar_random_state(3, 1).unwrap();
    let b = haar_random_state(3, 2).unwrap();
    let q = ComplexityQuery::new(ComplexityKind::DistinguishabilityProxy, a, b, 1.0).unwrap().with_max_size(1);
    let e = brute_force_estimate(&q).unwrap();
    if e.upper_bound.is_none() {
        assert_eq!(e.lower_bound, 2);
        assert!(!e.truncated);
    }
}

#[test]
fn budget_truncation_is_flagged() {
    let a = haar_random_state(3, 3).unwrap();
    let b = haar_random_state(3, 4).unwrap();
    let q = ComplexityQuery::new(ComplexityKind::InterferenceProxy, a, b, 0.99).unwrap().with_max_size(3);
    let e = brute_force_estimate_with_budget(&q, 1000).unwrap();
    assert!(e.truncated);
    assert!(e.upper_bound.is_none());
    assert!(e.lower_bound <= 2);
}

#[test]
fn delta_out_of_range_rejected() {
    assert!(ComplexityQuery::new(ComplexityKind::Relative, bits("0"), bits("1"), 0.0).is_err());
    assert!(ComplexityQuery::new(ComplexityKind::Relative, bits("0"), bits("1"), 1.5).is_err());
}

#[test]
fn constructive_witness_gives_upper_bound_only() {
    let mut xx = Circuit::new(2);
    xx.push(GateOp::single(0, gates::x(), "X").unwrap()).unwrap();
    xx.push(GateOp::single(1, gates::x(), "X").unwrap()).unwrap();
    let q = ComplexityQuery::new(ComplexityKind::InterferenceProxy, bits("00"), bits("11"), 0.9).unwrap();
    let e = witness_estimate(&q, &xx).unwrap();
    assert_eq!(e.method, EstimateMethod::Constructive);
    assert_eq!((e.lower_bound, e.upper_bound), (0, Some(2)));
}

#[test]
fn alphabet_sizes_and_inverse_closure() {
    for (n, size) in [(1, 8), (2, 32), (3, 72), (4, 128), (5, 200)] {
        let inst = GateAlphabet::default_alphabet().instantiate(n).unwrap();
        assert_eq!(inst.len(), size);
        assert!(inst.is_inverse_closed());
    }
}

#[test]
fn variational_examples() {
    let b = haar_random_state(4, 17).unwrap();
    let q = ComplexityQuery::new(ComplexityKind::Relative, bits("0000"), b.clone(), 0.9)
        .unwrap()
        .with_max_size(8)
        .with_seed(3);
    let e = variational_upper_bound(&q, 4, &PairSchedule::RoundRobin).unwrap();
    let w = e.witness.as_ref().expect("a witness within 8 blocks");
    assert!(objective_value(ComplexityKind::Relative, w, &bits("0000"), &b).unwrap() >= 0.9 - 1e-9);
    assert_eq!(e.lower_bound, 0);

    let q = ComplexityQuery::new(ComplexityKind::InterferenceProxy, bits("00"), bits("11"), 0.99)
        .unwrap()
        .with_max_size(2)
        .with_seed(1);
    let cfg = VariationalConfig::default();
    let e = variational_upper_bound_with(&q, &cfg).unwrap();
    assert_eq!(e.upper_bound, Some(1));
    assert_eq!(e, variational_upper_bound_with(&q, &cfg).unwrap());
}

#[test]
fn thread_count_does_not_change_results() {
    let a = haar_random_state(3, 8).unwrap();
    let b = haar_random_state(3, 9).unwrap();
    let states = vec![a, b];
    let probes: Vec<Probe> = KINDS.iter().map(|&k| Probe::new(k, 0, 1, 0.45)).collect();
    let inst = GateAlphabet::default_alphabet().instantiate(3).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| Enumerator::new(&inst, 2).run(&states, &probes).unwrap())
    };
    assert_eq!(run(1), run(3));
}

fn pair(seed: u64) -> (QuantumState, QuantumState) {
    (haar_random_state(2, seed).unwrap(), haar_random_state(2, seed + 7919).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn enumeration_agrees_with_naive_oracle(seed in 0u64..5000, k in 0usize..3, di in 0usize..4) {
        let delta = [0.2, 0.45, 0.7, 0.9][di];
        let (a, b) = pair(seed);
        let q = ComplexityQuery::new(KINDS[k], a.clone(), b.clone(), delta).unwrap().with_max_size(2);
        let e = brute_force_estimate(&q).unwrap();
        let oracle = naive_min_size(KINDS[k], &a, &b, delta, 2);
        prop_assert_eq!(e.upper_bound, oracle);
        match oracle {
            Some(m) => prop_assert_eq!(e.lower_bound, m),
            None => prop_assert_eq!(e.lower_bound, 3),
        }
    }

    #[test]
    fn witnesses_are_sound(seed in 0u64..5000, k in 0usize..3) {
        let (a, b) = pair(seed);
        let q = ComplexityQuery::new(KINDS[k], a.clone(), b.clone(), 0.6).unwrap().with_max_size(2);
        let e = brute_force_estimate(&q).unwrap();
        if let Some(w) = &e.witness {
            let v = objective_value(KINDS[k], w, &a, &b).unwrap();
            prop_assert!(v >= KINDS[k].threshold(0.6) - 1e-9);
            prop_assert_eq!(Some(w.gate_count()), e.upper_bound);
            prop_assert!(e.lower_bound <= w.gate_count());
        }
    }

    #[test]
    fn monotone_symmetric_phase_invariant(seed in 0u64..5000, k in 0usize..3, theta in 0.0f64..std::f64::consts::TAU) {
        let (a, b) = pair(seed);
        let est = |x: &QuantumState, y: &QuantumState, d: f64| {
            let e = brute_force_estimate(&ComplexityQuery::new(KINDS[k], x.clone(), y.clone(), d).unwrap().with_max_size(2)).unwrap();
            (e.lower_bound, e.upper_bound)
        };
        let lo = est(&a, &b, 0.3);
        let hi = est(&a, &b, 0.8);
        prop_assert!(lo.0 <= hi.0);
        prop_assert!(lo.1.map_or(usize::MAX, |u| u) <= hi.1.map_or(usize::MAX, |u| u));
        prop_assert_eq!(est(&b, &a, 0.8), hi);
        let phased = QuantumState::superposition(&[(Complex64::from_polar(1.0, theta), &b)]).unwrap();
        prop_assert_eq!(est(&a, &phased, 0.8), hi);
    }
}
