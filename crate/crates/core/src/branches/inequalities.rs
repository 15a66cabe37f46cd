use super::BranchDecomposition;
use crate::complexity::{ComplexityKind, Enumerator, GateAlphabet, Probe, ProbeResult, DEFAULT_MAX_EVALUATIONS};
use crate::qsim::QuantumState;
use crate::{error::invalid, Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

const ORTHO_TOL: f64 = 1e-8;

/// Exhaustive-enumeration settings used as the oracle for inequality checks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleBudget {
    pub alphabet: GateAlphabet,
    pub max_size: usize,
    pub max_evaluations: u64,
}

impl OracleBudget {
    pub fn new(max_size: usize) -> Self {
        Self {
            alphabet: GateAlphabet::default_alphabet(),
            max_size,
            max_evaluations: DEFAULT_MAX_EVALUATIONS,
        }
    }

    pub(crate) fn run(&self, states: &[QuantumState], probes: &[Probe]) -> Result<Vec<ProbeResult>> {
        let n = states[0].n_qubits();
        let inst = self.alphabet.instantiate(n)?;
        Enumerator::new(&inst, self.max_size)
            .with_max_evaluations(self.max_evaluations)
            .run(states, probes)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Holds,
    Violated,
    Inconclusive,
}

/// Certified range of an integer quantity; `None` means unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lower: Option<i64>,
    pub upper: Option<i64>,
}

impl Interval {
    fn from_f64(lo: f64, hi: f64) -> Self {
        let conv = |x: f64| x.is_finite().then_some(x as i64);
        Self {
            lower: conv(lo),
            upper: conv(hi),
        }
    }
}

/// Bounds `[lower, upper]` on a complexity, with explicit trivial cases.
#[derive(Clone, Copy, Debug)]
struct Range {
    lo: f64,
    hi: f64,
}

impl Range {
    fn of(r: &ProbeResult) -> Self {
        Self {
            lo: r.lower_bound as f64,
            hi: r.upper_bound.map_or(f64::INFINITY, |u| u as f64),
        }
    }

    fn zero() -> Self {
        Self { lo: 0.0, hi: 0.0 }
    }

    fn infinite() -> Self {
        Self {
            lo: f64::INFINITY,
            hi: f64::INFINITY,
        }
    }

    fn minus(self, other: Range) -> Range {
        Range {
            lo: self.lo - other.hi,
            hi: self.hi - other.lo,
        }
    }

    fn min_of(items: impl IntoIterator<Item = Range>) -> Range {
        items.into_iter().fold(Range::infinite(), |acc, r| Range {
            lo: acc.lo.min(r.lo),
            hi: acc.hi.min(r.hi),
        })
    }

    fn max(self, other: Range) -> Range {
        Range {
            lo: self.lo.max(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    fn interval(self) -> Interval {
        Interval::from_f64(self.lo, self.hi)
    }
}

fn leq(left: Range, right: Range) -> CheckStatus {
    if left.hi <= right.lo {
        CheckStatus::Holds
    } else if left.lo > right.hi {
        CheckStatus::Violated
    } else {
        CheckStatus::Inconclusive
    }
}

/// One inequality with certified ranges for both sides.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SideBySide {
    pub name: String,
    pub left: Interval,
    pub relation: String,
    pub right: Interval,
    pub status: CheckStatus,
}

impl SideBySide {
    fn le(name: &str, left: Range, right: Range) -> Self {
        Self {
            name: name.into(),
            left: left.interval(),
            relation: "<=".into(),
            right: right.interval(),
            status: leq(left, right),
        }
    }

    fn ge(name: &str, left: Range, right: Range) -> Self {
        Self {
            name: name.into(),
            left: left.interval(),
            relation: ">=".into(),
            right: right.interval(),
            status: leq(right, left),
        }
    }
}

fn check_orthogonal(states: &[&QuantumState]) -> Result<()> {
    for i in 0..states.len() {
        for j in i + 1..states.len() {
            let overlap = states[i].inner(states[j])?.norm();
            if overlap > ORTHO_TOL {
                return Err(Error::NotOrthogonal { overlap });
            }
        }
    }
    Ok(())
}

fn uniform_phases(points: usize) -> Vec<f64> {
    (0..points).map(|k| 2.0 * PI * k as f64 / points as f64).collect()
}

fn combo(x: &QuantumState, cx: f64, y: &QuantumState, cy: Complex64) -> Result<QuantumState> {
    QuantumState::superposition(&[(Complex64::new(cx, 0.0), x), (cy, y)])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MergeReport {
    pub p: f64,
    pub epsilon: f64,
    pub theta_points: usize,
    pub checks: Vec<SideBySide>,
    pub violations: usize,
    pub inconclusive: usize,
}

/// Compares two-branch complexities of `(a, b)` and `(a, c)` with those of `a`
/// against the merged state `√p·b + e^{iθ}√(1−p)·c`:
/// `𝒞_D(a,b,1−ε/p) ≤ 𝒞_D(a,merged,1−ε)` and
/// `𝒞_I(a,b,ε/√p) ≥ min_θ 𝒞_I(a,merged_θ,ε)`, plus the same with `b ↔ c`,
/// `p ↔ 1−p`.
pub fn merge_bound_check(
    a: &QuantumState,
    b: &QuantumState,
    c: &QuantumState,
    p: f64,
    epsilon: f64,
    theta_points: usize,
    budget: &OracleBudget,
) -> Result<MergeReport> {
    if !(p > 0.0 && p < 1.0) {
        return Err(invalid(format!("p must lie in (0, 1), got {p}")));
    }
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(invalid(format!("epsilon must lie in (0, 1/2), got {epsilon}")));
    }
    if theta_points < 8 {
        return Err(invalid("the merge check needs a phase grid of at least 8 points"));
    }
    check_orthogonal(&[a, b, c])?;
    let (sp, sq) = (p.sqrt(), (1.0 - p).sqrt());
    let thetas = uniform_phases(theta_points);
    // states: a, b, c, merged_θ for each θ (θ = 0 first)
    let mut states = vec![a.clone(), b.clone(), c.clone()];
    for &t in &thetas {
        states.push(combo(b, sp, c, Complex64::from_polar(sq, t))?);
    }
    let merged = |k: usize| 3 + k;
    use ComplexityKind::{DistinguishabilityProxy as D, InterferenceProxy as I};

    // Side thresholds outside (0, 1] are the trivial complexities 0 or ∞.
    let mut probes = Vec::new();
    let slot = |kind, x, y, delta: f64, probes: &mut Vec<Probe>| -> Option<usize> {
        if delta <= 0.0 || delta > 1.0 {
            None
        } else {
            probes.push(Probe::new(kind, x, y, delta));
            Some(probes.len() - 1)
        }
    };
    let d_ab = slot(D, 0, 1, 1.0 - epsilon / p, &mut probes);
    let d_ac = slot(D, 0, 2, 1.0 - epsilon / (1.0 - p), &mut probes);
    let d_m = slot(D, 0, merged(0), 1.0 - epsilon, &mut probes);
    let i_ab = slot(I, 0, 1, epsilon / sp, &mut probes);
    let i_ac = slot(I, 0, 2, epsilon / sq, &mut probes);
    let i_m: Vec<Option<usize>> = (0..thetas.len())
        .map(|k| slot(I, 0, merged(k), epsilon, &mut probes))
        .collect();
    let results = budget.run(&states, &probes)?;
    let range = |s: Option<usize>, delta_nonpositive: bool| match s {
        Some(k) => Range::of(&results[k]),
        None if delta_nonpositive => Range::zero(),
        None => Range::infinite(),
    };
    let right_d = range(d_m, false);
    let right_i = Range::min_of(i_m.iter().map(|&s| range(s, false)));
    let checks = vec![
        SideBySide::le("distinguish_a_b", range(d_ab, true), right_d),
        SideBySide::le("distinguish_a_c", range(d_ac, true), right_d),
        SideBySide::ge("interfere_a_b", range(i_ab, false), right_i),
        SideBySide::ge("interfere_a_c", range(i_ac, false), right_i),
    ];
    Ok(MergeReport {
        p,
        epsilon,
        theta_points,
        violations: checks.iter().filter(|c| c.status == CheckStatus::Violated).count(),
        inconclusive: checks.iter().filter(|c| c.status == CheckStatus::Inconclusive).count(),
        checks,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThreeBranchReport {
    pub epsilon: f64,
    pub phase_points: usize,
    /// Branchiness of the split `[a | b, c]`.
    pub b1: Interval,
    /// Branchiness of the split `[a, b | c]`.
    pub b2: Interval,
    pub checks: Vec<SideBySide>,
    pub violations: usize,
    pub inconclusive: usize,
}

/// Checks that the two bipartite splittings of `(a + e^{iθ}b + e^{iφ}c)/√3`
/// bound the pairwise margins of the three-branch splitting, with the pair
/// margins taken at `√2·ε` (interference) and `1 − 2ε` (distinguishability).
pub fn three_branch_compatibility(
    a: &QuantumState,
    b: &QuantumState,
    c: &QuantumState,
    epsilon: f64,
    phase_points: usize,
    budget: &OracleBudget,
) -> Result<ThreeBranchReport> {
    if phase_points < 4 {
        return Err(invalid("the three-branch check needs a phase grid of at least 4 points"));
    }
    if !(epsilon > 0.0 && epsilon <= 0.25) {
        return Err(invalid(format!("epsilon must lie in (0, 0.25], got {epsilon}")));
    }
    check_orthogonal(&[a, b, c])?;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let phases = uniform_phases(phase_points);
    // states: a, b, c, (b + e^{iφ}c)/√2 ..., (a + e^{iθ}b)/√2 ...
    let mut states = vec![a.clone(), b.clone(), c.clone()];
    for &t in &phases {
        states.push(combo(b, h, c, Complex64::from_polar(h, t))?);
    }
    for &t in &phases {
        states.push(combo(a, h, b, Complex64::from_polar(h, t))?);
    }
    let bc = |k: usize| 3 + k;
    let ab = |k: usize| 3 + phase_points + k;
    use ComplexityKind::{DistinguishabilityProxy as D, InterferenceProxy as I};
    let pair_i = (2f64.sqrt() * epsilon).min(1.0);
    let pair_d = 1.0 - 2.0 * epsilon;
    let mut probes = Vec::new();
    for k in 0..phase_points {
        probes.push(Probe::new(I, 0, bc(k), epsilon));
    }
    probes.push(Probe::new(D, 0, bc(0), 1.0 - epsilon));
    for k in 0..phase_points {
        probes.push(Probe::new(I, ab(k), 2, epsilon));
    }
    probes.push(Probe::new(D, ab(0), 2, 1.0 - epsilon));
    let pair_base = probes.len();
    for (x, y) in [(0, 1), (1, 2), (2, 0)] {
        probes.push(Probe::new(I, x, y, pair_i));
        probes.push(Probe::new(D, x, y, pair_d));
    }
    let r = budget.run(&states, &probes)?;
    let g = phase_points;
    let b1 = Range::min_of((0..g).map(|k| Range::of(&r[k]))).minus(Range::of(&r[g]));
    let b2 = Range::min_of((0..g).map(|k| Range::of(&r[g + 1 + k]))).minus(Range::of(&r[2 * g + 1]));
    let margin = |k: usize| Range::of(&r[pair_base + 2 * k]).minus(Range::of(&r[pair_base + 2 * k + 1]));
    let checks = vec![
        SideBySide::ge("margin_a_b", margin(0), b1),
        SideBySide::ge("margin_b_c", margin(1), b2),
        SideBySide::ge("margin_c_a", margin(2), b1.max(b2)),
    ];
    Ok(ThreeBranchReport {
        epsilon,
        phase_points,
        b1: b1.interval(),
        b2: b2.interval(),
        violations: checks.iter().filter(|c| c.status == CheckStatus::Violated).count(),
        inconclusive: checks.iter().filter(|c| c.status == CheckStatus::Inconclusive).count(),
        checks,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IrreversibilityRow {
    pub i: usize,
    pub j: usize,
    pub delta: f64,
    /// Certified lower bound on `𝒞_I(ψ_i, ψ_j, Δ)`.
    pub ci_lower: usize,
    /// Witness upper bound on `𝒞_R(Ψ_t, Ψ_0, Δ)`.
    #[serde(with = "crate::complexity::upper_bound_serde")]
    pub cr_upper: Option<usize>,
    pub preparation_cost: usize,
    pub status: CheckStatus,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IrreversibilityReport {
    pub rows: Vec<IrreversibilityRow>,
    pub violations: usize,
    pub inconclusive: usize,
}

impl IrreversibilityReport {
    pub fn rows_at(&self, delta: f64) -> impl Iterator<Item = &IrreversibilityRow> {
        self.rows.iter().filter(move |r| (r.delta - delta).abs() < 1e-12)
    }
}

/// `𝒞_I(ψ_i, ψ_j, Δ) ≤ 𝒞_R(Ψ_t, Ψ_0, Δ) + 𝒞(Ψ_0)` for every branch pair and
/// every `Δ` in `deltas`. `preparation_cost` may be omitted when `psi0` is a
/// computational basis state (cost 0).
pub fn irreversibility_check(
    psi0: &QuantumState,
    branches: &BranchDecomposition,
    preparation_cost: Option<usize>,
    deltas: &[f64],
    budget: &OracleBudget,
) -> Result<IrreversibilityReport> {
    let cost = match preparation_cost {
        Some(c) => c,
        None => {
            let is_basis = psi0.amplitudes().iter().filter(|a| a.norm() > 1e-12).count() == 1;
            if !is_basis {
                return Err(invalid(
                    "psi0 is not a computational basis state; supply its preparation cost",
                ));
            }
            0
        }
    };
    if deltas.iter().any(|&d| !(d > 0.0 && d <= 1.0)) {
        return Err(invalid("every delta must lie in (0, 1]"));
    }
    let k = branches.len();
    let mut states = branches.states();
    let t_idx = states.len();
    states.push(branches.parent.clone());
    states.push(psi0.clone());
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let mut probes = Vec::new();
    for &delta in deltas {
        probes.push(Probe::new(ComplexityKind::Relative, t_idx, t_idx + 1, delta));
        for &(i, j) in &pairs {
            probes.push(Probe::new(ComplexityKind::InterferenceProxy, i, j, delta));
        }
    }
    let r = budget.run(&states, &probes)?;
    let mut rows = Vec::new();
    let stride = 1 + pairs.len();
    for (di, &delta) in deltas.iter().enumerate() {
        let cr = &r[di * stride];
        for (pi, &(i, j)) in pairs.iter().enumerate() {
            let ci = &r[di * stride + 1 + pi];
            let status = match cr.upper_bound {
                None => CheckStatus::Inconclusive,
                Some(u) if ci.lower_bound <= u + cost => CheckStatus::Holds,
                Some(_) => CheckStatus::Violated,
            };
            rows.push(IrreversibilityRow {
                i,
                j,
                delta,
                ci_lower: ci.lower_bound,
                cr_upper: cr.upper_bound,
                preparation_cost: cost,
                status,
            });
        }
    }
    Ok(IrreversibilityReport {
        violations: rows.iter().filter(|r| r.status == CheckStatus::Violated).count(),
        inconclusive: rows.iter().filter(|r| r.status == CheckStatus::Inconclusive).count(),
        rows,
    })
}
