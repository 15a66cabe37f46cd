use super::inequalities::OracleBudget;
use crate::complexity::{ComplexityKind, GateAlphabet, Probe, ProbeResult, DEFAULT_MAX_EVALUATIONS};
use crate::qsim::{haar_random_state, QuantumState};
use crate::{error::invalid, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// `count` mutually orthonormal Haar-distributed states on `n` qubits
/// (Gram–Schmidt on independent Haar draws).
pub fn random_orthogonal_states(n: usize, count: usize, seed: u64) -> Result<Vec<QuantumState>> {
    if count > 1usize << n {
        return Err(invalid(format!("cannot fit {count} orthogonal states in {n} qubits")));
    }
    let mut out: Vec<Vec<Complex64>> = Vec::with_capacity(count);
    let mut draw = 0u64;
    while out.len() < count {
        let seed_k = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(draw);
        draw += 1;
        let mut v = haar_random_state(n, seed_k)?.into_amplitudes();
        for _ in 0..2 {
            for u in &out {
                let c: Complex64 = u.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                v.iter_mut().zip(u).for_each(|(y, x)| *y -= c * x);
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            v.iter_mut().for_each(|x| *x /= norm);
            out.push(v);
        }
    }
    out.into_iter().map(|v| QuantumState::new(n, v)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyConfig {
    pub deltas: Vec<f64>,
    /// Relative phases applied to `b` for the phase-invariance check.
    pub phases: Vec<f64>,
    pub triangle_delta: f64,
    pub budget: OracleBudget,
}

impl Default for PropertyConfig {
    fn default() -> Self {
        Self {
            deltas: vec![0.1, 0.5, 0.9],
            phases: vec![PI / 2.0, PI, 7.0 * PI / 4.0],
            triangle_delta: 0.9,
            budget: OracleBudget {
                alphabet: GateAlphabet::default_alphabet(),
                max_size: 3,
                max_evaluations: DEFAULT_MAX_EVALUATIONS,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyOutcome {
    pub property: String,
    pub checks: usize,
    pub violations: usize,
    pub inconclusive: usize,
    /// One line per violation.
    pub details: Vec<String>,
}

impl PropertyOutcome {
    fn new(property: &str) -> Self {
        Self {
            property: property.into(),
            checks: 0,
            violations: 0,
            inconclusive: 0,
            details: Vec::new(),
        }
    }

    fn record(&mut self, verdict: Option<bool>, detail: impl FnOnce() -> String) {
        self.checks += 1;
        match verdict {
            Some(true) => {}
            Some(false) => {
                self.violations += 1;
                self.details.push(detail());
            }
            None => self.inconclusive += 1,
        }
    }
}

/// Outcomes aggregated by property over many instances.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PropertySummary {
    pub instances: usize,
    pub properties: BTreeMap<String, PropertyOutcome>,
    pub total_checks: usize,
    pub total_violations: usize,
    pub total_inconclusive: usize,
}

impl PropertySummary {
    pub fn add(&mut self, outcomes: Vec<PropertyOutcome>) {
        self.instances += 1;
        for o in outcomes {
            self.total_checks += o.checks;
            self.total_violations += o.violations;
            self.total_inconclusive += o.inconclusive;
            let slot = self
                .properties
                .entry(o.property.clone())
                .or_insert_with(|| PropertyOutcome::new(&o.property));
            slot.checks += o.checks;
            slot.violations += o.violations;
            slot.inconclusive += o.inconclusive;
            slot.details.extend(o.details);
        }
    }

    pub fn violations_of(&self, property: &str) -> usize {
        self.properties.get(property).map_or(0, |o| o.violations)
    }
}

fn upper(r: &ProbeResult) -> f64 {
    r.upper_bound.map_or(f64::INFINITY, |u| u as f64)
}

fn fmt_bounds(r: &ProbeResult) -> String {
    match r.upper_bound {
        Some(u) => format!("[{}, {u}]", r.lower_bound),
        None => format!("[{}, unknown]", r.lower_bound),
    }
}

/// Certified comparison `left ≤ right`: `Some(false)` only when the bounds
/// prove the opposite.
fn certified_le(left_lo: f64, left_hi: f64, right_lo: f64, right_hi: f64) -> Option<bool> {
    if left_hi <= right_lo {
        Some(true)
    } else if left_lo > right_hi {
        Some(false)
    } else {
        None
    }
}

/// Checks the elementary complexity properties on one instance of three
/// mutually orthogonal states, using a single enumeration pass:
/// monotonicity in Δ, symmetry, relative-phase invariance, the relative-state
/// sandwich of the interference proxy, the product-state ceiling of the
/// distinguishability proxy, the conjugate-basis relation and the triangle
/// property.
pub fn pair_property_instance(
    a: &QuantumState,
    b: &QuantumState,
    c: &QuantumState,
    config: &PropertyConfig,
) -> Result<Vec<PropertyOutcome>> {
    let n = a.n_qubits();
    let deltas = &config.deltas;
    if deltas.iter().any(|&d| !(d > 0.0 && d <= 1.0)) {
        return Err(invalid("every delta must lie in (0, 1]"));
    }
    // states: a, b, c, 0…0, (a+b)/√2, (a−b)/√2, e^{iθ}b ...
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let mut states = vec![
        a.clone(),
        b.clone(),
        c.clone(),
        QuantumState::zero(n)?,
        QuantumState::superposition(&[(h, a), (h, b)])?,
        QuantumState::superposition(&[(h, a), (-h, b)])?,
    ];
    for &t in &config.phases {
        states.push(b.scaled_phase(t));
    }
    let (ia, ib, ic, iz, ip, im) = (0, 1, 2, 3, 4, 5);

    let mut probes: Vec<Probe> = Vec::new();
    let mut index: BTreeMap<(u8, usize, usize, u64), usize> = BTreeMap::new();
    let kind_id = |k: ComplexityKind| ComplexityKind::ALL.iter().position(|&x| x == k).unwrap() as u8;
    let mut probe = |kind: ComplexityKind, x: usize, y: usize, delta: f64| -> usize {
        *index.entry((kind_id(kind), x, y, delta.to_bits())).or_insert_with(|| {
            probes.push(Probe::new(kind, x, y, delta));
            probes.len() - 1
        })
    };

    use ComplexityKind::{DistinguishabilityProxy as D, InterferenceProxy as I, Relative as R};
    // (kind, delta) -> probe index for the forward pair
    let mut fwd = Vec::new();
    let mut rev = Vec::new();
    let mut phased = Vec::new();
    for &kind in &ComplexityKind::ALL {
        for &d in deltas {
            fwd.push(probe(kind, ia, ib, d));
            rev.push(probe(kind, ib, ia, d));
            let per: Vec<usize> = (0..config.phases.len()).map(|k| probe(kind, ia, 6 + k, d)).collect();
            phased.push(per);
        }
    }
    let mut sandwich = Vec::new();
    let mut ceiling = Vec::new();
    let mut conjugate = Vec::new();
    for &d in deltas {
        sandwich.push((probe(R, ia, ib, d / 2.0), probe(I, ia, ib, d / 2.0), probe(R, ia, ib, d)));
        ceiling.push((probe(D, ia, ib, d), probe(R, iz, ia, d), probe(R, iz, ib, d)));
        conjugate.push((probe(D, ia, ib, d), probe(I, ip, im, d)));
    }
    let td = config.triangle_delta;
    let tri = (
        probe(R, ia, ic, 2.0 * td * td - 1.0),
        probe(R, ia, ib, td),
        probe(R, ib, ic, td),
    );

    let r = config.budget.run(&states, &probes)?;

    let mut mono = PropertyOutcome::new("monotonicity");
    let mut sym = PropertyOutcome::new("symmetry");
    let mut phase = PropertyOutcome::new("phase_invariance");
    let nd = deltas.len();
    let mut order: Vec<usize> = (0..nd).collect();
    order.sort_by(|&x, &y| deltas[x].total_cmp(&deltas[y]));
    for (ki, kind) in ComplexityKind::ALL.iter().enumerate() {
        for w in order.windows(2) {
            let (lo, hi) = (&r[fwd[ki * nd + w[0]]], &r[fwd[ki * nd + w[1]]]);
            let ok = lo.lower_bound <= hi.lower_bound && upper(lo) <= upper(hi);
            mono.record(Some(ok), || {
                format!(
                    "{}: delta {} gives {} but delta {} gives {}",
                    kind.short_name(),
                    deltas[w[0]],
                    fmt_bounds(lo),
                    deltas[w[1]],
                    fmt_bounds(hi)
                )
            });
        }
        for (di, &d) in deltas.iter().enumerate() {
            let k = ki * nd + di;
            let same = |x: &ProbeResult, y: &ProbeResult| x.lower_bound == y.lower_bound && x.upper_bound == y.upper_bound;
            let (f, s) = (&r[fwd[k]], &r[rev[k]]);
            sym.record(Some(same(f, s)), || {
                format!("{} at delta {d}: (a,b) {} vs (b,a) {}", kind.short_name(), fmt_bounds(f), fmt_bounds(s))
            });
            for (pi, &t) in config.phases.iter().enumerate() {
                let p = &r[phased[k][pi]];
                phase.record(Some(same(f, p)), || {
                    format!("{} at delta {d}, phase {t}: {} vs {}", kind.short_name(), fmt_bounds(f), fmt_bounds(p))
                });
            }
        }
    }

    let mut sand = PropertyOutcome::new("ci_sandwich");
    let mut ceil = PropertyOutcome::new("cd_product_ceiling");
    let mut conj = PropertyOutcome::new("conjugate_basis");
    for (di, &d) in deltas.iter().enumerate() {
        let (rh, ih, rf) = (&r[sandwich[di].0], &r[sandwich[di].1], &r[sandwich[di].2]);
        let below = certified_le(rh.lower_bound as f64, upper(rh), ih.lower_bound as f64, upper(ih));
        let above = certified_le(ih.lower_bound as f64, upper(ih), rf.lower_bound as f64, upper(rf));
        let verdict = match (below, above) {
            (Some(false), _) | (_, Some(false)) => Some(false),
            (Some(true), Some(true)) => Some(true),
            _ => None,
        };
        sand.record(verdict, || {
            format!(
                "delta {d}: R(d/2) {} , I(d/2) {} , R(d) {}",
                fmt_bounds(rh),
                fmt_bounds(ih),
                fmt_bounds(rf)
            )
        });

        let (cd, ra, rb) = (&r[ceiling[di].0], &r[ceiling[di].1], &r[ceiling[di].2]);
        let (min_lo, min_hi) = (
            ra.lower_bound.min(rb.lower_bound) as f64,
            upper(ra).min(upper(rb)),
        );
        ceil.record(certified_le(cd.lower_bound as f64, upper(cd), min_lo, min_hi), || {
            format!(
                "delta {d}: D(a,b) {} exceeds min(R(0,a) {}, R(0,b) {})",
                fmt_bounds(cd),
                fmt_bounds(ra),
                fmt_bounds(rb)
            )
        });

        let (cd, ic) = (&r[conjugate[di].0], &r[conjugate[di].1]);
        conj.record(certified_le(ic.lower_bound as f64, upper(ic), cd.lower_bound as f64, upper(cd)), || {
            format!("delta {d}: I(a+b, a-b) {} exceeds D(a,b) {}", fmt_bounds(ic), fmt_bounds(cd))
        });
    }

    let mut triangle = PropertyOutcome::new("triangle");
    let (ac, ab, bc) = (&r[tri.0], &r[tri.1], &r[tri.2]);
    triangle.record(
        certified_le(
            ac.lower_bound as f64,
            upper(ac),
            (ab.lower_bound + bc.lower_bound) as f64,
            upper(ab) + upper(bc),
        ),
        || format!("R(a,c) {} exceeds R(a,b) {} + R(b,c) {}", fmt_bounds(ac), fmt_bounds(ab), fmt_bounds(bc)),
    );

    Ok(vec![mono, sym, phase, sand, ceil, conj, triangle])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_states_are_orthonormal() {
        let s = random_orthogonal_states(3, 5, 11).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let o = s[i].inner(&s[j]).unwrap().norm();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((o - want).abs() < 1e-10);
            }
        }
        assert!(random_orthogonal_states(1, 3, 0).is_err());
    }

    #[test]
    fn random_states_are_seeded() {
        assert_eq!(random_orthogonal_states(2, 2, 4).unwrap(), random_orthogonal_states(2, 2, 4).unwrap());
        assert_ne!(random_orthogonal_states(2, 2, 4).unwrap(), random_orthogonal_states(2, 2, 5).unwrap());
    }

    #[test]
    fn basis_instance_has_no_violations_of_proven_properties() {
        let a = QuantumState::from_bits("00").unwrap();
        let b = QuantumState::from_bits("11").unwrap();
        let c = QuantumState::from_bits("01").unwrap();
        let out = pair_property_instance(&a, &b, &c, &PropertyConfig::default()).unwrap();
        for o in &out {
            if o.property != "cd_product_ceiling" {
                assert_eq!(o.violations, 0, "{o:?}");
            }
            assert!(o.checks > 0);
        }
    }

    #[test]
    fn summary_aggregates() {
        let mut s = PropertySummary::default();
        let mut o = PropertyOutcome::new("symmetry");
        o.record(Some(false), || "x".into());
        o.record(None, String::new);
        s.add(vec![o.clone()]);
        s.add(vec![o]);
        assert_eq!(s.instances, 2);
        assert_eq!(s.violations_of("symmetry"), 2);
        assert_eq!(s.total_inconclusive, 2);
        assert_eq!(s.total_checks, 4);
    }
}
