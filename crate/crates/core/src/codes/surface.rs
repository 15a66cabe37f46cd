use crate::{error::invalid, Result};
use serde::{Deserialize, Serialize};

/// An `L × l` rectangular surface code under i.i.d. errors at rate `p`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceCodeModel {
    pub long_length: u32,
    pub short_length: u32,
    pub p: f64,
}

impl SurfaceCodeModel {
    pub fn new(long_length: u32, short_length: u32, p: f64) -> Result<Self> {
        if short_length < 1 || long_length < short_length {
            return Err(invalid(format!(
                "need L >= l >= 1, got L = {long_length}, l = {short_length}"
            )));
        }
        if !(p > 0.0 && p < 0.5) {
            return Err(invalid(format!("physical error rate must lie in (0, 1/2), got {p}")));
        }
        Ok(Self { long_length, short_length, p })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceRate {
    /// `l!·L·p^⌈l/2⌉ / (⌈l/2⌉!·⌊l/2⌋!)`.
    pub logical_rate: f64,
    /// Stirling-type asymptotic form; undefined for `l = 1`.
    pub asymptotic_rate: Option<f64>,
    /// `exp(c·l·ln(1/p))` for the supplied `c`.
    pub robust_l_min: f64,
}

fn ln_factorial(k: u32) -> f64 {
    (2..=k).map(|x| (x as f64).ln()).sum()
}

/// Leading-order rate of logical relative-phase errors and the long-cycle
/// length needed for adversarial robustness at constant `c_const`.
pub fn surface_logical_rate(m: &SurfaceCodeModel, c_const: f64) -> Result<SurfaceRate> {
    let m = SurfaceCodeModel::new(m.long_length, m.short_length, m.p)?;
    let (l, big_l, p) = (m.short_length, m.long_length as f64, m.p);
    let (up, down) = (l.div_ceil(2), l / 2);
    let ln_rate = ln_factorial(l) - ln_factorial(up) - ln_factorial(down) + big_l.ln() + up as f64 * p.ln();
    let lf = l as f64;
    let asymptotic_rate = (l > 1).then(|| {
        big_l * (2.0 * lf / (std::f64::consts::PI * (lf + 1.0).powi(2))).sqrt()
            * (4.0 * lf * lf / (lf * lf - 1.0) * p).powf(lf / 2.0 + 1.0)
    });
    Ok(SurfaceRate {
        logical_rate: ln_rate.exp(),
        asymptotic_rate,
        robust_l_min: (c_const * lf * (1.0 / p).ln()).exp(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_by_hundred() {
        let r = surface_logical_rate(&SurfaceCodeModel::new(100, 3, 1e-3).unwrap(), 1.0).unwrap();
        assert!((r.logical_rate - 3e-4).abs() < 1e-15);
        assert!((r.robust_l_min - 1e9).abs() / 1e9 < 1e-9);
    }

    #[test]
    fn single_site() {
        for p in [0.01, 0.2, 0.4] {
            let r = surface_logical_rate(&SurfaceCodeModel { long_length: 1, short_length: 1, p }, 2.0).unwrap();
            assert!((r.logical_rate - p).abs() < 1e-15);
            assert!(r.asymptotic_rate.is_none());
        }
    }

    #[test]
    fn rejects_bad_models() {
        assert!(SurfaceCodeModel::new(5, 3, 0.5).is_err());
        assert!(SurfaceCodeModel::new(2, 3, 0.1).is_err());
        assert!(SurfaceCodeModel::new(3, 0, 0.1).is_err());
    }
}
