use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::{FRAC_1_SQRT_2, PI};
use wavebranch::branches::Estimator;
use wavebranch::complexity::ComplexityKind;
use wavebranch::dynamics::{
    eth_diagnostic, integrate_flow, mixed_field_ising, symmetry_freeze_check, track_complexity_under_evolution,
    xxz_chain, FlowParams, Observable, TrackConfig, MIXED_FIELD_ISING,
};
use wavebranch::qsim::{gates, Circuit, GateOp, PauliString, QuantumState};

fn z_rotations(n: usize) -> Circuit {
    let zero = Complex64::new(0.0, 0.0);
    let m = vec![Complex64::from_polar(1.0, PI / 4.0), zero, zero, Complex64::from_polar(1.0, -PI / 4.0)];
    Circuit::from_gates(n, (0..n).map(|q| GateOp::single(q, m.clone(), "rz").unwrap()).collect()).unwrap()
}

fn pair(x: &str, y: &str, sign: f64) -> QuantumState {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    QuantumState::superposition(&[(h, &QuantumState::from_bits(x).unwrap()), (h * sign, &QuantumState::from_bits(y).unwrap())]).unwrap()
}

#[test]
fn flow_invariant_is_conserved() {
    for (k, rate) in [(1.0, 1.0), (2.0, 5.0)] {
        for c0 in [0.5, 5.0] {
            let tr = integrate_flow(c0, c0, &FlowParams::new(k, rate, 1e-3, 10.0)).unwrap();
            assert!(tr.max_drift() <= 1e-6, "k={k} rate={rate} c0={c0}: {}", tr.max_drift());
            assert_eq!(tr.samples.len(), 10_001);
        }
    }
}

#[test]
fn zero_start_is_a_fixed_point() {
    let tr = integrate_flow(3.0, 0.0, &FlowParams::new(1.0, 1.0, 1e-2, 2.0)).unwrap();
    assert!(tr.cd_fixed_point && !tr.ci_fixed_point);
    assert!(tr.samples.iter().all(|s| s.c_d == 0.0));
    assert!(integrate_flow(-1.0, 0.0, &FlowParams::new(1.0, 1.0, 1e-2, 2.0)).is_err());
}

#[test]
fn late_growth_is_linear() {
    let tr = integrate_flow(50.0, 50.0, &FlowParams::new(1.0, 2.0, 1e-2, 10.0)).unwrap();
    let last = tr.samples.last().unwrap();
    // slope approaches `rate` once C ≫ k
    assert!((last.c_i - 50.0 - 20.0).abs() < 1.0, "{}", last.c_i);
}

#[test]
fn sector_superpositions_stay_frozen() {
    let h = xxz_chain(4, 1.0, 0.5).unwrap();
    let a = pair("0100", "0010", 1.0);
    let b = pair("1011", "0111", -1.0);
    let r = symmetry_freeze_check(&a, &b, &h, &z_rotations(4), &[0.0, 0.5, 1.0, 2.0, 5.0]).unwrap();
    assert!(r.commutator_norm <= 1e-8);
    assert!(r.distinct_phases);
    assert!(r.frozen && r.total_variation <= 1e-6);
    // phases e^{±iπ/2} differ by 2
    assert!(r.samples.iter().all(|s| (s.distinguishability - 2.0).abs() < 1e-9 && s.interference < 1e-9));
}

#[test]
fn mixed_sector_state_is_rejected() {
    let h = xxz_chain(4, 1.0, 0.5).unwrap();
    let a = pair("0100", "0110", 1.0);
    let b = QuantumState::from_bits("1011").unwrap();
    assert!(symmetry_freeze_check(&a, &b, &h, &z_rotations(4), &[0.0]).is_err());
    let (j, g, hz) = MIXED_FIELD_ISING;
    let ising = mixed_field_ising(4, j, g, hz).unwrap();
    let a = QuantumState::from_bits("0100").unwrap();
    assert!(symmetry_freeze_check(&a, &b, &ising, &z_rotations(4), &[0.0]).is_err());
}

#[test]
fn ghz_tracking_starts_at_the_static_verdict() {
    let n = 4;
    let (j, g, hz) = MIXED_FIELD_ISING;
    let h = mixed_field_ising(n, j, g, hz).unwrap();
    let a = QuantumState::from_bits("0000").unwrap();
    let b = QuantumState::from_bits("1111").unwrap();
    let x = |q| GateOp::single(q, gates::x(), "X").unwrap();
    let witness = Circuit::from_gates(n, (0..n).map(x).collect()).unwrap();
    let cfg = TrackConfig {
        witness_kind: ComplexityKind::InterferenceProxy,
        epsilon: 0.1,
        estimator: Estimator::enumeration(2),
    };
    let tr = track_complexity_under_evolution(&a, &b, &h, &witness, &[0.0, 0.5, 1.0], &cfg).unwrap();
    let s0 = &tr.samples[0];
    assert!((s0.witness_objective - 2.0).abs() < 1e-12);
    assert_eq!(s0.ci.lower_bound, 2);
    assert_eq!(s0.cd.upper_bound, Some(1));
    // the stale witness loses its grip once the branches spread
    assert!(tr.samples[2].witness_objective < s0.witness_objective);
    assert!(track_complexity_under_evolution(&a, &b, &h, &witness, &[1.0, 0.5], &cfg).is_err());
}

#[test]
fn eth_window_covers_middle_third() {
    let (j, g, hz) = MIXED_FIELD_ISING;
    let h = mixed_field_ising(6, j, g, hz).unwrap();
    let obs = Observable::pauli(PauliString::parse("IIZIII").unwrap()).unwrap();
    let r = eth_diagnostic(&h, &[obs], 1.0 / 3.0).unwrap();
    let (s, e) = r.window;
    assert!(e > s && e - s >= 20 && e - s <= 23, "{:?}", r.window);
    assert!(r.max_diag_gap > 0.0 && r.max_diag_gap <= 2.0);
    assert!(r.max_offdiag <= 1.0 + 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn flow_gap_never_shrinks(cd0 in 0.0f64..10.0, extra in 0.01f64..10.0, k in 0.2f64..5.0, rate in 0.2f64..5.0) {
        let tr = integrate_flow(cd0 + extra, cd0, &FlowParams::new(k, rate, 1e-2, 3.0)).unwrap();
        for w in tr.samples.windows(2) {
            prop_assert!(w[1].c_i - w[1].c_d >= w[0].c_i - w[0].c_d - 1e-12);
        }
    }
}
