use crate::qsim::{Hamiltonian, PauliString, Spectrum, MAX_EXACT_QUBITS};
use crate::{error::invalid, Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A named Hermitian observable.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Observable {
    pub name: String,
    pub operator: Hamiltonian,
}

impl Observable {
    pub fn pauli(p: PauliString) -> Result<Self> {
        let mut op = Hamiltonian::new(p.n_qubits());
        let name = p.to_string();
        op.add_term(1.0, p)?;
        Ok(Self { name, operator: op })
    }

    pub fn new(name: &str, operator: Hamiltonian) -> Self {
        Self {
            name: name.into(),
            operator,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObservableStats {
    pub name: String,
    /// `max_k |O_kk − O_{k+1,k+1}|` over adjacent eigenstates in the window.
    pub max_diag_gap: f64,
    pub median_diag_gap: f64,
    /// `max_{k≠m} |O_km|` over the window.
    pub max_offdiag: f64,
    pub median_offdiag: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EthReport {
    pub n_qubits: usize,
    /// Half-open range of eigenstate indices (ascending energy).
    pub window: (usize, usize),
    pub max_diag_gap: f64,
    pub max_offdiag: f64,
    pub observables: Vec<ObservableStats>,
}

fn median(mut v: Vec<f64>) -> f64 {
    if v.is_empty() {
        return 0.0;
    }
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

/// Diagonal and off-diagonal matrix elements of each observable between
/// energy eigenstates in the middle `window_fraction` of the spectrum.
pub fn eth_diagnostic(h: &Hamiltonian, observables: &[Observable], window_fraction: f64) -> Result<EthReport> {
    let n = h.n_qubits();
    if n > MAX_EXACT_QUBITS {
        return Err(Error::TooLargeForExact {
            n_qubits: n,
            max: MAX_EXACT_QUBITS,
        });
    }
    if !(window_fraction > 0.0 && window_fraction <= 1.0) {
        return Err(invalid("window fraction must lie in (0, 1]"));
    }
    for o in observables {
        if o.operator.n_qubits() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: o.operator.n_qubits(),
            });
        }
    }
    let spectrum = Spectrum::of(h)?;
    let dim = 1usize << n;
    let width = ((dim as f64 * window_fraction).round() as usize).clamp(2.min(dim), dim);
    let start = (dim - width) / 2;
    let v = spectrum.vectors().columns(start, width).into_owned();
    let mut stats = Vec::with_capacity(observables.len());
    for o in observables {
        let mut ov = DMatrix::<Complex64>::zeros(dim, width);
        for k in 0..width {
            let col: Vec<Complex64> = v.column(k).iter().copied().collect();
            let img = o.operator.apply(&col);
            ov.set_column(k, &nalgebra::DVector::from_vec(img));
        }
        let m = v.ad_mul(&ov);
        let diag_gaps: Vec<f64> = (0..width.saturating_sub(1))
            .map(|k| (m[(k, k)].re - m[(k + 1, k + 1)].re).abs())
            .collect();
        let offdiag: Vec<f64> = (0..width)
            .flat_map(|r| (0..width).filter(move |&c| c != r).map(move |c| (r, c)))
            .map(|(r, c)| m[(r, c)].norm())
            .collect();
        stats.push(ObservableStats {
            name: o.name.clone(),
            max_diag_gap: diag_gaps.iter().copied().fold(0.0, f64::max),
            median_diag_gap: median(diag_gaps),
            max_offdiag: offdiag.iter().copied().fold(0.0, f64::max),
            median_offdiag: median(offdiag),
        });
    }
    Ok(EthReport {
        n_qubits: n,
        window: (start, start + width),
        max_diag_gap: stats.iter().map(|s| s.max_diag_gap).fold(0.0, f64::max),
        max_offdiag: stats.iter().map(|s| s.max_offdiag).fold(0.0, f64::max),
        observables: stats,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EthSweepRow {
    pub n_qubits: usize,
    pub median_diag_gap: f64,
    pub max_diag_gap: f64,
    pub median_offdiag: f64,
    pub max_offdiag: f64,
}

/// Statistics of the first observable across system sizes, with fitted
/// exponential decay rates `c` in `statistic ≈ A·e^{−c·n}` (least squares on
/// the logarithm of the medians). The rates are descriptive only.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EthSweep {
    pub rows: Vec<EthSweepRow>,
    pub diag_decay_rate: Option<f64>,
    pub offdiag_decay_rate: Option<f64>,
}

fn fit_decay(points: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points.iter().filter(|p| p.1 > 0.0).map(|&(x, y)| (x, y.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| -sxy / sxx)
}

/// Runs [`eth_diagnostic`] for each size with the Hamiltonian and observable
/// produced by the builders.
pub fn eth_size_sweep(
    sizes: &[usize],
    hamiltonian: impl Fn(usize) -> Result<Hamiltonian>,
    observable: impl Fn(usize) -> Result<Observable>,
    window_fraction: f64,
) -> Result<EthSweep> {
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let rep = eth_diagnostic(&hamiltonian(n)?, &[observable(n)?], window_fraction)?;
        let s = &rep.observables[0];
        rows.push(EthSweepRow {
            n_qubits: n,
            median_diag_gap: s.median_diag_gap,
            max_diag_gap: s.max_diag_gap,
            median_offdiag: s.median_offdiag,
            max_offdiag: s.max_offdiag,
        });
    }
    let pts = |f: fn(&EthSweepRow) -> f64| rows.iter().map(|r| (r.n_qubits as f64, f(r))).collect::<Vec<_>>();
    Ok(EthSweep {
        diag_decay_rate: fit_decay(&pts(|r| r.median_diag_gap)),
        offdiag_decay_rate: fit_decay(&pts(|r| r.median_offdiag)),
        rows,
    })
}
