use proptest::prelude::*;
use wavebranch::codes::{
    beny_oreshkov_residuals, classify_region, code_complexity_floor, surface_logical_rate, CodeSpec, Region,
    SurfaceCodeModel,
};
use wavebranch::complexity::{brute_force_estimate, ComplexityKind, ComplexityQuery};
use wavebranch::examples::parity_codewords;
use wavebranch::qsim::{PauliString, QuantumState};

fn single_qubit_paulis(n: usize, letters: &str) -> Vec<PauliString> {
    let mut out = vec![PauliString::parse(&"I".repeat(n)).unwrap()];
    for q in 0..n {
        for c in letters.chars() {
            let mut s: Vec<char> = vec!['I'; n];
            s[q] = c;
            out.push(PauliString::parse(&s.iter().collect::<String>()).unwrap());
        }
    }
    out
}

fn binom(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Expected number of failing length-`l` chains among `L`: each fails when
/// at least `⌈l/2⌉` of its qubits flip.
fn binomial_tail_rate(big_l: u32, l: u32, p: f64) -> f64 {
    let tail: f64 = (l.div_ceil(2)..=l)
        .map(|k| binom(l, k) * p.powi(k as i32) * (1.0 - p).powi((l - k) as i32))
        .sum();
    big_l as f64 * tail
}

#[test]
fn repetition_code_residuals() {
    let words = vec![QuantumState::from_bits("000").unwrap(), QuantumState::from_bits("111").unwrap()];
    let r = beny_oreshkov_residuals(&CodeSpec::new(words.clone(), single_qubit_paulis(3, "X")).unwrap());
    assert!(r.max_eps <= 1e-12);
    let mut errors = single_qubit_paulis(3, "X");
    errors.push(PauliString::parse("ZII").unwrap());
    let r = beny_oreshkov_residuals(&CodeSpec::new(words, errors).unwrap());
    assert!(r.max_eps >= 1.0 - 1e-9);
}

#[test]
fn parity_code_cross_block_product_is_flagged() {
    let (zero, one, _) = parity_codewords(2, 2).unwrap();
    let errors = single_qubit_paulis(4, "Z");
    let r = beny_oreshkov_residuals(&CodeSpec::new(vec![zero, one], errors.clone()).unwrap());
    // Z on qubit 0 (block one) and qubit 2 (block two): Z₀Z₂ maps one codeword to the other
    let (m, n) = (1, 3);
    assert_eq!(errors[m].to_string(), "ZIII");
    assert_eq!(errors[n].to_string(), "IIZI");
    assert!((r.eps_mnij[m][n][0][1].norm() - 1.0).abs() <= 1e-9);
    // same-block products act identically on both words
    assert!(r.eps_mnij[1][2][0][1].norm() <= 1e-12);
    assert_eq!(r.correctable_to, 0);
}

#[test]
fn shor_floor_matches_brute_force() {
    let (zero, one, _) = parity_codewords(3, 3).unwrap();
    let r = beny_oreshkov_residuals(&CodeSpec::new(vec![zero.clone(), one.clone()], single_qubit_paulis(9, "XYZ")).unwrap());
    let f = code_complexity_floor(&r);
    assert_eq!((f.c, f.floor), (1, 2));
    assert!(f.epsilon <= 1e-12);
    for kind in [ComplexityKind::InterferenceProxy, ComplexityKind::DistinguishabilityProxy] {
        let q = ComplexityQuery::new(kind, zero.clone(), one.clone(), 0.05).unwrap().with_max_size(f.floor - 1);
        let e = brute_force_estimate(&q).unwrap();
        assert!(e.lower_bound >= f.floor, "{kind:?}: {}", e.lower_bound);
    }
}

#[test]
fn surface_rate_reference_point() {
    let r = surface_logical_rate(&SurfaceCodeModel::new(100, 3, 1e-3).unwrap(), 1.0).unwrap();
    assert!((r.logical_rate - 3.0e-4).abs() <= 1e-12);
}

#[test]
fn surface_rate_tracks_binomial_tail() {
    for l in 1..=7 {
        let m = SurfaceCodeModel::new(100, l, 1e-3).unwrap();
        let ratio = surface_logical_rate(&m, 1.0).unwrap().logical_rate / binomial_tail_rate(100, l, 1e-3);
        assert!((0.95..=1.05).contains(&ratio), "l = {l}: {ratio}");
        let gaps: Vec<f64> = [1e-2, 1e-3, 1e-4]
            .iter()
            .map(|&p| {
                let m = SurfaceCodeModel::new(100, l, p).unwrap();
                (surface_logical_rate(&m, 1.0).unwrap().logical_rate / binomial_tail_rate(100, l, p) - 1.0).abs()
            })
            .collect();
        assert!(gaps[1] <= gaps[0] + 1e-12 && gaps[2] <= gaps[1] + 1e-12, "l = {l}: {gaps:?}");
    }
}

#[test]
fn surface_model_validation() {
    assert!(SurfaceCodeModel::new(2, 3, 1e-3).is_err());
    assert!(SurfaceCodeModel::new(3, 0, 1e-3).is_err());
    assert!(SurfaceCodeModel::new(3, 3, 0.5).is_err());
}

proptest! {
    #[test]
    fn region_is_consistent(ci in 0u64..60, cd in 0u64..20, floor in 1u64..10, good in 1u64..5, lambda in 0.1f64..3.0) {
        let r = classify_region(ci, cd, floor, good, lambda);
        let code = ci.min(cd) >= floor;
        let branch = ci >= cd + good;
        prop_assert_eq!(matches!(r, Region::GoodCode | Region::Both), code);
        prop_assert_eq!(matches!(r, Region::GoodBranch | Region::RobustBranch | Region::Both), branch);
        if r == Region::RobustBranch {
            prop_assert!(ci as f64 > (lambda * cd as f64).exp());
        }
    }

    #[test]
    fn logical_rate_decreases_with_short_length(l in 1u32..30, p in 1e-5f64..1e-2) {
        let lo = surface_logical_rate(&SurfaceCodeModel::new(100, l, p).unwrap(), 1.0).unwrap();
        let hi = surface_logical_rate(&SurfaceCodeModel::new(100, l + 2, p).unwrap(), 1.0).unwrap();
        prop_assert!(hi.logical_rate < lo.logical_rate);
        prop_assert!(hi.robust_l_min > lo.robust_l_min);
    }
}
