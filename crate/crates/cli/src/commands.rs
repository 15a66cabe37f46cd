use crate::{Artifact, Cli, CliError, Command, Format, GlobalOpts};
use clap::{Args, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use wavebranch::branches::{
    pair_property_instance, assess_branches, merge_bound_check, random_orthogonal_states, rho_vs_diag_gap,
    three_branch_compatibility, CheckStatus, Estimator, OracleBudget, PropertyConfig, PropertySummary,
};
use wavebranch::codes::{
    beny_oreshkov_residuals, classify_region, code_complexity_floor, surface_logical_rate, CodeSpec, SurfaceCodeModel,
};
use wavebranch::complexity::{
    brute_force_estimate, variational_upper_bound_with, ComplexityKind, ComplexityQuery, GateAlphabet,
    VariationalConfig,
};
use wavebranch::dynamics::{
    eth_size_sweep, integrate_flow, mixed_field_ising, symmetry_freeze_check, track_complexity_under_evolution,
    xxz_chain, FlowParams, Observable, TrackConfig, MIXED_FIELD_ISING,
};
use wavebranch::examples::{self, ExampleFixture};
use wavebranch::json::{self, Versioned};
use wavebranch::qsim::{gates, Circuit, GateOp, Pauli, PauliString, QuantumState};

type Result<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn need_seed(opts: &GlobalOpts, what: &str) -> Result<u64> {
    opts.seed.ok_or_else(|| usage(format!("{what} is stochastic; pass --seed")))
}

fn emit_json<T: Serialize>(payload: &T, truncated: bool) -> Result<Artifact> {
    let mut body = json::to_string(&Versioned::new(payload))?;
    body.push('\n');
    Ok(Artifact { body, truncated })
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| usage(format!("cannot parse {what} entry '{x}'"))))
        .collect()
}

const STOCHASTIC_EXAMPLES: [&str; 3] = ["product_plus_random", "two_random_circuits", "distinguishing_qubit"];

fn load_fixture(opts: &GlobalOpts, name: &str, n: usize) -> Result<ExampleFixture> {
    let seed = if STOCHASTIC_EXAMPLES.contains(&name) {
        need_seed(opts, &format!("example '{name}'"))?
    } else {
        opts.seed.unwrap_or(0)
    };
    Ok(examples::by_name(name, n, seed)?)
}

pub fn run(cli: &Cli) -> Result<Artifact> {
    let o = &cli.opts;
    if o.budget == Some(0) {
        return Err(usage("--budget must be positive"));
    }
    match &cli.command {
        Command::Example(a) => emit_json(&load_fixture(o, &a.name, a.n)?, false),
        Command::Estimate(a) => estimate(o, a),
        Command::Verdict(a) => verdict(o, a),
        Command::Qec(a) => qec(o, a),
        Command::Surface(a) => {
            let m = SurfaceCodeModel::new(a.long, a.short, a.p)?;
            #[derive(Serialize)]
            struct Out {
                model: SurfaceCodeModel,
                c: f64,
                rate: wavebranch::codes::SurfaceRate,
            }
            emit_json(&Out { model: m, c: a.c, rate: surface_logical_rate(&m, a.c)? }, false)
        }
        Command::Flow(a) => flow(o, a),
        Command::Evolve(a) => evolve(o, a),
        Command::Props(a) => props(o, a),
        Command::Gap(a) => {
            let f = load_fixture(o, &a.example, a.n)?;
            let r = rho_vs_diag_gap(&f.decomposition, o.budget.unwrap_or(2), a.phases)?;
            let truncated = r.truncated;
            emit_json(&r, truncated)
        }
    }
}

#[derive(Debug, Args)]
pub struct ExampleArgs {
    /// One of: ghz, product_plus_random, two_random_circuits, parity_codewords,
    /// tensor_branches, distinguishing_qubit.
    pub name: String,
    #[arg(long, default_value_t = 4)]
    pub n: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Relative,
    Distinguishability,
    Interference,
}

impl From<KindArg> for ComplexityKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Relative => ComplexityKind::Relative,
            KindArg::Distinguishability => ComplexityKind::DistinguishabilityProxy,
            KindArg::Interference => ComplexityKind::InterferenceProxy,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Enumeration,
    Variational,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[arg(long)]
    pub example: String,
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Accuracy; defaults to epsilon, or 1 - epsilon for distinguishability.
    #[arg(long)]
    pub delta: Option<f64>,
    /// Branch indices, e.g. "0,1".
    #[arg(long, default_value = "0,1")]
    pub pair: String,
    #[arg(long, value_enum, default_value = "enumeration")]
    pub method: MethodArg,
    #[arg(long, default_value = "default")]
    pub alphabet: String,
}

fn pick_pair(f: &ExampleFixture, pair: &str) -> Result<(QuantumState, QuantumState)> {
    let idx: Vec<usize> = parse_list(pair, "pair")?;
    let states = f.decomposition.states();
    match idx[..] {
        [i, j] if i < states.len() && j < states.len() => Ok((states[i].clone(), states[j].clone())),
        _ => Err(usage(format!("--pair must name two of the {} branches", states.len()))),
    }
}

fn estimate(o: &GlobalOpts, a: &EstimateArgs) -> Result<Artifact> {
    let f = load_fixture(o, &a.example, a.n)?;
    let (x, y) = pick_pair(&f, &a.pair)?;
    let kind: ComplexityKind = a.kind.into();
    let delta = a.delta.unwrap_or(match kind {
        ComplexityKind::DistinguishabilityProxy => 1.0 - o.epsilon,
        _ => o.epsilon,
    });
    let q = ComplexityQuery::new(kind, x, y, delta)?
        .with_max_size(o.budget.unwrap_or(3))
        .with_alphabet(GateAlphabet::by_name(&a.alphabet)?);
    let est = match a.method {
        MethodArg::Enumeration => brute_force_estimate(&q.with_seed(o.seed.unwrap_or(0)))?,
        MethodArg::Variational => {
            let seed = need_seed(o, "variational search")?;
            variational_upper_bound_with(&q.with_seed(seed), &VariationalConfig::default())?
        }
    };
    let truncated = est.truncated;
    emit_json(&est, truncated)
}

#[derive(Debug, Args)]
pub struct VerdictArgs {
    #[arg(long)]
    pub example: String,
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "enumeration")]
    pub method: MethodArg,
}

fn estimator(o: &GlobalOpts, method: MethodArg, default_size: usize) -> Result<Estimator> {
    let size = o.budget.unwrap_or(default_size);
    Ok(match method {
        MethodArg::Enumeration => Estimator::enumeration(size),
        MethodArg::Variational => Estimator::Variational {
            max_size: size,
            seed: need_seed(o, "variational search")?,
            config: VariationalConfig::default(),
        },
    })
}

fn verdict(o: &GlobalOpts, a: &VerdictArgs) -> Result<Artifact> {
    let f = load_fixture(o, &a.example, a.n)?;
    let v = assess_branches(&f.decomposition, o.epsilon, &estimator(o, a.method, 3)?, o.threshold, o.lambda)?;
    let truncated = v.truncated;
    emit_json(&v, truncated)
}

#[derive(Debug, Args)]
pub struct QecArgs {
    /// "repetition", "parity", or a path to a code JSON file.
    #[arg(long, default_value = "repetition")]
    pub code: String,
    /// Comma-separated Pauli strings; defaults depend on the built-in code.
    #[arg(long)]
    pub errors: Option<String>,
    #[arg(long, default_value_t = 2)]
    pub m1: usize,
    #[arg(long, default_value_t = 2)]
    pub m2: usize,
    /// Certified interference lower bound, for region classification.
    #[arg(long)]
    pub ci: Option<u64>,
    /// Distinguishability upper bound, for region classification.
    #[arg(long)]
    pub cd: Option<u64>,
    /// Code-like threshold on min(ci, cd); defaults to the computed floor.
    /// A zero floor certifies nothing, so then no pair counts as code-like.
    #[arg(long)]
    pub floor: Option<u64>,
}

fn single_paulis(n: usize, p: Pauli) -> Vec<String> {
    let mut v = vec!["I".repeat(n)];
    for q in 0..n {
        let mut s: Vec<char> = vec!['I'; n];
        s[q] = p.as_char();
        v.push(s.into_iter().collect());
    }
    v
}

fn qec(o: &GlobalOpts, a: &QecArgs) -> Result<Artifact> {
    let (codewords, default_errors): (Vec<QuantumState>, Vec<String>) = match a.code.as_str() {
        "repetition" => (
            vec![QuantumState::from_bits("000")?, QuantumState::from_bits("111")?],
            single_paulis(3, Pauli::X),
        ),
        "parity" => {
            let (z, one, _) = examples::parity_codewords(a.m1, a.m2)?;
            (vec![z, one], single_paulis(a.m1 * a.m2, Pauli::Z))
        }
        path => {
            let text = std::fs::read_to_string(path).map_err(CliError::Io)?;
            let code = CodeSpec::from_json(&text)?;
            let errs = code.errors().iter().map(|e| e.to_string()).collect();
            (code.codewords().to_vec(), errs)
        }
    };
    let errors: Vec<String> = match &a.errors {
        Some(list) => parse_list(list, "error")?,
        None => default_errors,
    };
    let errors = errors
        .iter()
        .map(|s| PauliString::parse(s))
        .collect::<wavebranch::Result<Vec<_>>>()?;
    let code = CodeSpec::new(codewords, errors)?;
    let residuals = beny_oreshkov_residuals(&code);
    let floor = code_complexity_floor(&residuals);
    let region = match (a.ci, a.cd) {
        (Some(ci), Some(cd)) => {
            let thr = o.threshold.max(0) as u64;
            let code_thr = a.floor.unwrap_or(match floor.floor {
                0 => u64::MAX,
                f => f as u64,
            });
            Some(classify_region(ci, cd, code_thr, thr, o.lambda))
        }
        (None, None) => None,
        _ => return Err(usage("--ci and --cd must be given together")),
    };
    #[derive(Serialize)]
    struct Out {
        residuals: wavebranch::codes::ResidualReport,
        floor: wavebranch::codes::ComplexityFloor,
        region: Option<wavebranch::codes::Region>,
    }
    emit_json(&Out { residuals, floor, region }, false)
}

#[derive(Debug, Args)]
pub struct SurfaceArgs {
    /// Long cycle length L.
    #[arg(long)]
    pub long: u32,
    /// Short cycle length l.
    #[arg(long)]
    pub short: u32,
    /// Physical error rate per round.
    #[arg(long)]
    pub p: f64,
    /// Constant in the robustness threshold exp(c l ln(1/p)).
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
}

#[derive(Debug, Args)]
pub struct FlowArgs {
    #[arg(long, default_value_t = 1.0)]
    pub k: f64,
    #[arg(long, default_value_t = 1.0)]
    pub rate: f64,
    #[arg(long)]
    pub ci0: f64,
    #[arg(long)]
    pub cd0: f64,
    #[arg(long, default_value_t = 10.0)]
    pub t_end: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    #[arg(long, default_value_t = 0.0)]
    pub switchback: f64,
}

fn flow(o: &GlobalOpts, a: &FlowArgs) -> Result<Artifact> {
    let mut p = FlowParams::new(a.k, a.rate, a.dt, a.t_end);
    p.switchback_c = a.switchback;
    let tr = integrate_flow(a.ci0, a.cd0, &p)?;
    match o.format.unwrap_or(Format::Csv) {
        Format::Csv => Ok(Artifact { body: tr.to_csv(), truncated: false }),
        Format::Json => emit_json(&tr, false),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EvolveMode {
    /// Stale-witness decay and fresh bounds for GHZ branches under a chaotic chain.
    Track,
    /// Distinguishability freezing under an XXZ symmetry.
    Symmetry,
    /// Eigenstate thermalization statistics across system sizes.
    Eth,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[arg(long, value_enum, default_value = "track")]
    pub mode: EvolveMode,
    #[arg(long, default_value_t = 6)]
    pub n: usize,
    /// Comma-separated sample times.
    #[arg(long, default_value = "0,1,2")]
    pub times: String,
    /// Comma-separated sizes for the eth sweep.
    #[arg(long, default_value = "6,8,10")]
    pub sizes: String,
    #[arg(long, default_value_t = 1.0 / 3.0)]
    pub window: f64,
}

fn evolve(o: &GlobalOpts, a: &EvolveArgs) -> Result<Artifact> {
    let times: Vec<f64> = parse_list(&a.times, "time")?;
    let (j, g, h) = MIXED_FIELD_ISING;
    match a.mode {
        EvolveMode::Track => {
            let f = examples::ghz(a.n, Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0), Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0))?;
            let s = f.decomposition.states();
            let mut witness = Circuit::new(a.n);
            for q in 0..a.n {
                witness.push(GateOp::single(q, gates::x(), "X")?)?;
            }
            let cfg = TrackConfig {
                witness_kind: ComplexityKind::InterferenceProxy,
                epsilon: o.epsilon,
                estimator: Estimator::enumeration(o.budget.unwrap_or(1)),
            };
            let ham = mixed_field_ising(a.n, j, g, h)?;
            let tr = track_complexity_under_evolution(&s[0], &s[1], &ham, &witness, &times, &cfg)?;
            let truncated = tr.samples.iter().any(|s| s.ci.truncated || s.cd.truncated);
            match o.format.unwrap_or(Format::Csv) {
                Format::Csv => Ok(Artifact { body: tr.to_csv(), truncated }),
                Format::Json => emit_json(&tr, truncated),
            }
        }
        EvolveMode::Symmetry => {
            let n = 4;
            let ham = xxz_chain(n, 1.0, 0.5)?;
            let mut u = Circuit::new(n);
            let zero = Complex64::new(0.0, 0.0);
            let rz = vec![
                Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4),
                zero,
                zero,
                Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4),
            ];
            for q in 0..n {
                u.push(GateOp::single(q, rz.clone(), "rz")?)?;
            }
            let a_state = QuantumState::from_bits("0100")?;
            let b_state = QuantumState::from_bits("1011")?;
            let r = symmetry_freeze_check(&a_state, &b_state, &ham, &u, &times)?;
            emit_json(&r, false)
        }
        EvolveMode::Eth => {
            let sizes: Vec<usize> = parse_list(&a.sizes, "size")?;
            let sweep = eth_size_sweep(
                &sizes,
                |n| mixed_field_ising(n, j, g, h),
                |n| Observable::pauli(PauliString::sparse(n, &[(n / 2, Pauli::Z)])?),
                a.window,
            )?;
            emit_json(&sweep, false)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Single-pair properties only.
    Pairs,
    /// Merge and three-branch checks only.
    Merge,
    All,
}

#[derive(Debug, Args)]
pub struct PropsArgs {
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value_t = 100)]
    pub instances: usize,
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
}

#[derive(Default, Serialize)]
struct SuiteCounts {
    instances: usize,
    checks: usize,
    violations: usize,
    inconclusive: usize,
}

impl SuiteCounts {
    fn add<'a>(&mut self, statuses: impl IntoIterator<Item = &'a CheckStatus>) {
        self.instances += 1;
        for s in statuses {
            self.checks += 1;
            match s {
                CheckStatus::Violated => self.violations += 1,
                CheckStatus::Inconclusive => self.inconclusive += 1,
                CheckStatus::Holds => {}
            }
        }
    }
}

fn props(o: &GlobalOpts, a: &PropsArgs) -> Result<Artifact> {
    let seed = need_seed(o, "the property suite")?;
    let mut config = PropertyConfig::default();
    config.budget.max_size = o.budget.unwrap_or(config.budget.max_size);
    let oracle = OracleBudget::new(config.budget.max_size);
    let mut pairs = PropertySummary::default();
    let mut merge = SuiteCounts::default();
    let mut three = SuiteCounts::default();
    for i in 0..a.instances {
        let s = random_orthogonal_states(a.n, 3, seed.wrapping_add(i as u64))?;
        if a.suite != Suite::Merge {
            pairs.add(pair_property_instance(&s[0], &s[1], &s[2], &config)?);
        }
        if a.suite != Suite::Pairs {
            let p = 0.25 + 0.5 * ((i * 7 % 11) as f64 / 10.0);
            let m = merge_bound_check(&s[0], &s[1], &s[2], p, o.epsilon, 8, &oracle)?;
            merge.add(m.checks.iter().map(|c| &c.status));
            let t = three_branch_compatibility(&s[0], &s[1], &s[2], o.epsilon, 4, &oracle)?;
            three.add(t.checks.iter().map(|c| &c.status));
        }
    }
    let total_violations = pairs.total_violations + merge.violations + three.violations;
    let truncated = pairs.total_inconclusive + merge.inconclusive + three.inconclusive > 0;
    #[derive(Serialize)]
    struct Out {
        n_qubits: usize,
        seed: u64,
        max_size: usize,
        pair_properties: PropertySummary,
        merge_bounds: SuiteCounts,
        three_branch: SuiteCounts,
        total_violations: usize,
    }
    emit_json(
        &Out {
            n_qubits: a.n,
            seed,
            max_size: config.budget.max_size,
            pair_properties: pairs,
            merge_bounds: merge,
            three_branch: three,
            total_violations,
        },
        truncated,
    )
}

#[derive(Debug, Args)]
pub struct GapArgs {
    #[arg(long)]
    pub example: String,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Phase grid points per relative phase.
    #[arg(long, default_value_t = 8)]
    pub phases: usize,
}
