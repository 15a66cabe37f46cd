use super::{meets, ComplexityEstimate, ComplexityKind, ComplexityQuery, EstimateMethod, InstantiatedAlphabet};
use crate::qsim::{apply_matrix, QuantumState};
use crate::{error::invalid, Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;

/// Default cap on the number of enumerated circuits per run.
pub const DEFAULT_MAX_EVALUATIONS: u64 = 2_000_000_000;

/// One threshold question about states `a` and `b` of a shared state list.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Probe {
    pub kind: ComplexityKind,
    pub a: usize,
    pub b: usize,
    pub delta: f64,
}

impl Probe {
    pub fn new(kind: ComplexityKind, a: usize, b: usize, delta: f64) -> Self {
        Self { kind, a, b, delta }
    }

    fn threshold(&self) -> f64 {
        self.kind.threshold(self.delta)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeResult {
    /// Every circuit with fewer gates was enumerated and failed.
    pub lower_bound: usize,
    pub upper_bound: Option<usize>,
    /// Alphabet indices of the first circuit (canonical order) meeting the
    /// threshold.
    pub witness: Option<Vec<usize>>,
    /// Witness value, or the best value seen when no witness was found.
    pub achieved_value: f64,
    pub truncated: bool,
}

impl ProbeResult {
    pub fn estimate(
        &self,
        alphabet: &InstantiatedAlphabet,
        kind: ComplexityKind,
        delta: f64,
        seed: u64,
        max_size: usize,
    ) -> ComplexityEstimate {
        ComplexityEstimate {
            kind,
            delta,
            lower_bound: self.lower_bound,
            lower_bound_scope: format!("alphabet:{}", alphabet.name()),
            upper_bound: self.upper_bound,
            achieved_value: self.achieved_value,
            witness: self.witness.as_ref().map(|w| alphabet.circuit(w)),
            method: EstimateMethod::Enumeration,
            seed,
            max_size,
            truncated: self.truncated,
        }
    }

    pub(crate) fn into_estimate(self, alphabet: &InstantiatedAlphabet, q: &ComplexityQuery) -> ComplexityEstimate {
        self.estimate(alphabet, q.kind, q.delta, q.seed, q.max_size)
    }
}

/// Iterative-deepening enumeration of all alphabet circuits, answering many
/// probes over a shared list of states in a single pass.
///
/// Sizes are searched in increasing order; within a size, sequences are
/// visited lexicographically by alphabet index and sequences containing an
/// adjacent gate/inverse pair are skipped. Work is split across threads by the
/// first gate and merged in canonical order, so results do not depend on the
/// thread count.
pub struct Enumerator<'a> {
    alphabet: &'a InstantiatedAlphabet,
    max_size: usize,
    max_evaluations: u64,
}

type Hit = Option<(Vec<usize>, f64)>;

impl<'a> Enumerator<'a> {
    pub fn new(alphabet: &'a InstantiatedAlphabet, max_size: usize) -> Self {
        Self {
            alphabet,
            max_size,
            max_evaluations: DEFAULT_MAX_EVALUATIONS,
        }
    }

    pub fn with_max_evaluations(mut self, max_evaluations: u64) -> Self {
        self.max_evaluations = max_evaluations;
        self
    }

    pub fn run(&self, states: &[QuantumState], probes: &[Probe]) -> Result<Vec<ProbeResult>> {
        let n = self.alphabet.n_qubits();
        for s in states {
            if s.n_qubits() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: s.n_qubits(),
                });
            }
        }
        if probes.iter().any(|p| p.a >= states.len() || p.b >= states.len()) {
            return Err(invalid("probe refers to a state index out of range"));
        }
        let dim = 1usize << n;
        let orig: Vec<Complex64> = states.iter().flat_map(|s| s.amplitudes().iter().copied()).collect();
        let seg = |k: usize| k * dim..(k + 1) * dim;

        let mut hits: Vec<Option<(usize, Vec<usize>, f64)>> = vec![None; probes.len()];
        let mut best = vec![0.0f64; probes.len()];
        for (k, p) in probes.iter().enumerate() {
            let (a, b) = (&orig[seg(p.a)], &orig[seg(p.b)]);
            let v = p.kind.evaluate(a, b, a, b);
            best[k] = v;
            if meets(v, p.threshold()) {
                hits[k] = Some((0, Vec::new(), v));
            }
        }

        let mut evaluated: u128 = 1;
        let mut searched_through = 0;
        let mut truncated = false;
        for m in 1..=self.max_size {
            let needed: Vec<usize> = (0..probes.len()).filter(|&k| hits[k].is_none()).collect();
            if needed.is_empty() {
                break;
            }
            let count = self.alphabet.sequences_of_length(m);
            if evaluated + count > self.max_evaluations as u128 {
                truncated = true;
                break;
            }
            let (level_hits, level_best) = self.search_level(m, dim, &orig, probes, &needed);
            for (j, &k) in needed.iter().enumerate() {
                best[k] = best[k].max(level_best[j]);
                if let Some((seq, v)) = &level_hits[j] {
                    hits[k] = Some((m, seq.clone(), *v));
                }
            }
            evaluated += count;
            searched_through = m;
        }

        Ok(probes
            .iter()
            .enumerate()
            .map(|(k, _)| match &hits[k] {
                Some((size, seq, v)) => ProbeResult {
                    lower_bound: *size,
                    upper_bound: Some(*size),
                    witness: Some(seq.clone()),
                    achieved_value: *v,
                    truncated: false,
                },
                None => ProbeResult {
                    lower_bound: searched_through + 1,
                    upper_bound: None,
                    witness: None,
                    achieved_value: best[k],
                    truncated,
                },
            })
            .collect())
    }

    fn search_level(
        &self,
        m: usize,
        dim: usize,
        orig: &[Complex64],
        probes: &[Probe],
        needed: &[usize],
    ) -> (Vec<Hit>, Vec<f64>) {
        let a_len = self.alphabet.len();
        let chunk = (rayon::current_num_threads().max(1) * 4).min(a_len.max(1));
        let mut hits: Vec<Hit> = vec![None; needed.len()];
        let mut best = vec![0.0f64; needed.len()];
        let mut start = 0;
        while start < a_len {
            let end = (start + chunk).min(a_len);
            // Probes already answered by an earlier first gate are dropped.
            let open: Vec<usize> = (0..needed.len()).filter(|&j| hits[j].is_none()).collect();
            if open.is_empty() {
                break;
            }
            let open_probes: Vec<usize> = open.iter().map(|&j| needed[j]).collect();
            let results: Vec<(Vec<Hit>, Vec<f64>)> = (start..end)
                .into_par_iter()
                .map(|g0| {
                    let mut w = Walker::new(self.alphabet, dim, orig, probes, &open_probes, m);
                    w.run(g0);
                    (w.hits, w.best)
                })
                .collect();
            for (sub_hits, sub_best) in results {
                for (i, &j) in open.iter().enumerate() {
                    best[j] = best[j].max(sub_best[i]);
                    if hits[j].is_none() {
                        hits[j] = sub_hits[i].clone();
                    }
                }
            }
            start = end;
        }
        (hits, best)
    }
}

struct Walker<'a> {
    alphabet: &'a InstantiatedAlphabet,
    dim: usize,
    n: usize,
    orig: &'a [Complex64],
    probes: &'a [Probe],
    needed: &'a [usize],
    tracked: Vec<usize>,
    bufs: Vec<Vec<Complex64>>,
    seq: Vec<usize>,
    m: usize,
    hits: Vec<Hit>,
    best: Vec<f64>,
    remaining: usize,
}

impl<'a> Walker<'a> {
    fn new(
        alphabet: &'a InstantiatedAlphabet,
        dim: usize,
        orig: &'a [Complex64],
        probes: &'a [Probe],
        needed: &'a [usize],
        m: usize,
    ) -> Self {
        let mut tracked: Vec<usize> = needed.iter().flat_map(|&k| [probes[k].a, probes[k].b]).collect();
        tracked.sort_unstable();
        tracked.dedup();
        let mut bufs = vec![vec![Complex64::new(0.0, 0.0); orig.len()]; m + 1];
        bufs[0].copy_from_slice(orig);
        Self {
            alphabet,
            dim,
            n: alphabet.n_qubits(),
            orig,
            probes,
            needed,
            tracked,
            bufs,
            seq: Vec::with_capacity(m),
            m,
            hits: vec![None; needed.len()],
            best: vec![0.0; needed.len()],
            remaining: needed.len(),
        }
    }

    fn run(&mut self, first: usize) {
        self.step(0, first);
    }

    /// Applies gate `g` on top of `bufs[depth]` and recurses; returns true
    /// once every needed probe has been answered.
    fn step(&mut self, depth: usize, g: usize) -> bool {
        let gate = &self.alphabet.gates()[g];
        {
            let (lo, hi) = self.bufs.split_at_mut(depth + 1);
            let (src, dst) = (&lo[depth], &mut hi[0]);
            for &s in &self.tracked {
                let r = s * self.dim..(s + 1) * self.dim;
                dst[r.clone()].copy_from_slice(&src[r.clone()]);
                apply_matrix(&mut dst[r], self.n, gate.targets(), gate.matrix());
            }
        }
        self.seq.push(g);
        let done = if depth + 1 == self.m {
            self.evaluate()
        } else {
            let skip = self.alphabet.inverse_of(g);
            let mut done = false;
            for next in 0..self.alphabet.len() {
                if Some(next) == skip {
                    continue;
                }
                if self.step(depth + 1, next) {
                    done = true;
                    break;
                }
            }
            done
        };
        self.seq.pop();
        done
    }

    fn evaluate(&mut self) -> bool {
        let cur = &self.bufs[self.m];
        let d = self.dim;
        for (j, &k) in self.needed.iter().enumerate() {
            if self.hits[j].is_some() {
                continue;
            }
            let p = &self.probes[k];
            let v = p.kind.evaluate(
                &self.orig[p.a * d..(p.a + 1) * d],
                &self.orig[p.b * d..(p.b + 1) * d],
                &cur[p.a * d..(p.a + 1) * d],
                &cur[p.b * d..(p.b + 1) * d],
            );
            if v > self.best[j] {
                self.best[j] = v;
            }
            if meets(v, p.threshold()) {
                self.hits[j] = Some((self.seq.clone(), v));
                self.remaining -= 1;
            }
        }
        self.remaining == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexity::{objective_value, GateAlphabet};
    use crate::qsim::haar_random_state;

    /// Straightforward reference: every sequence of length m, no pruning,
    /// no early exit, built with the public circuit API.
    fn naive_min(
        alphabet: &InstantiatedAlphabet,
        kind: ComplexityKind,
        a: &QuantumState,
        b: &QuantumState,
        delta: f64,
        max_size: usize,
    ) -> Option<usize> {
        let a_len = alphabet.len();
        for m in 0..=max_size {
            let total = a_len.pow(m as u32);
            for code in 0..total {
                let mut seq = Vec::with_capacity(m);
                let mut c = code;
                for _ in 0..m {
                    seq.push(c % a_len);
                    c /= a_len;
                }
                let v = objective_value(kind, &alphabet.circuit(&seq), a, b).unwrap();
                if v >= kind.threshold(delta) - 1e-9 {
                    return Some(m);
                }
            }
        }
        None
    }

    #[test]
    fn agrees_with_naive_enumeration() {
        let alphabet = GateAlphabet::default_alphabet().instantiate(2).unwrap();
        for seed in 0..6 {
            let a = haar_random_state(2, 100 + seed).unwrap();
            let b = haar_random_state(2, 200 + seed).unwrap();
            let states = [a.clone(), b.clone()];
            for kind in ComplexityKind::ALL {
                for delta in [0.3, 0.6, 0.95] {
                    let got = Enumerator::new(&alphabet, 2)
                        .run(&states, &[Probe::new(kind, 0, 1, delta)])
                        .unwrap()
                        .remove(0);
                    let want = naive_min(&alphabet, kind, &a, &b, delta, 2);
                    assert_eq!(got.upper_bound, want, "seed {seed} {kind:?} {delta}");
                    match want {
                        Some(m) => assert_eq!(got.lower_bound, m),
                        None => assert_eq!(got.lower_bound, 3),
                    }
                }
            }
        }
    }

    #[test]
    fn multi_probe_matches_single_probe_runs() {
        let alphabet = GateAlphabet::default_alphabet().instantiate(3).unwrap();
        let states = [
            haar_random_state(3, 1).unwrap(),
            haar_random_state(3, 2).unwrap(),
            QuantumState::zero(3).unwrap(),
        ];
        let probes: Vec<Probe> = ComplexityKind::ALL
            .iter()
            .flat_map(|&k| [Probe::new(k, 0, 1, 0.4), Probe::new(k, 2, 0, 0.5), Probe::new(k, 1, 2, 0.8)])
            .collect();
        let joint = Enumerator::new(&alphabet, 2).run(&states, &probes).unwrap();
        for (p, r) in probes.iter().zip(&joint) {
            let single = Enumerator::new(&alphabet, 2).run(&states, &[*p]).unwrap().remove(0);
            assert_eq!(&single, r);
        }
    }

    #[test]
    fn witnesses_reach_their_threshold() {
        let alphabet = GateAlphabet::default_alphabet().instantiate(3).unwrap();
        let a = haar_random_state(3, 7).unwrap();
        let b = haar_random_state(3, 8).unwrap();
        for kind in ComplexityKind::ALL {
            let r = Enumerator::new(&alphabet, 2)
                .run(&[a.clone(), b.clone()], &[Probe::new(kind, 0, 1, 0.5)])
                .unwrap()
                .remove(0);
            if let Some(w) = r.witness {
                let v = objective_value(kind, &alphabet.circuit(&w), &a, &b).unwrap();
                assert!(v >= kind.threshold(0.5) - 1e-9);
                assert!((v - r.achieved_value).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn results_do_not_depend_on_thread_count() {
        let alphabet = GateAlphabet::default_alphabet().instantiate(3).unwrap();
        let states = [haar_random_state(3, 11).unwrap(), haar_random_state(3, 12).unwrap()];
        let probes = [
            Probe::new(ComplexityKind::Relative, 0, 1, 0.7),
            Probe::new(ComplexityKind::InterferenceProxy, 0, 1, 0.45),
        ];
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| Enumerator::new(&alphabet, 2).run(&states, &probes).unwrap())
        };
        assert_eq!(run(1), run(3));
    }
}
