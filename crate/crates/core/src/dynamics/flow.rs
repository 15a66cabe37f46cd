use crate::{error::invalid, Result};
use serde::{Deserialize, Serialize};
use std::fmt::Write;

/// Growth rate `dC/dt` as a function of the current complexity.
pub trait RateFunction {
    fn rate(&self, c: f64) -> f64;

    /// Quantity conserved along exact trajectories, if one is known in
    /// closed form.
    fn invariant(&self, _c: f64, _t: f64) -> Option<f64> {
        None
    }
}

/// `dC/dt = rate·C/(C + k)`: exponential growth while `C ≪ k`, linear growth
/// at `rate` once `C ≫ k`. Conserves `C + k·ln(C/k) − rate·t`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Saturating {
    pub k: f64,
    pub rate: f64,
}

impl RateFunction for Saturating {
    fn rate(&self, c: f64) -> f64 {
        self.rate * c / (c + self.k)
    }

    fn invariant(&self, c: f64, t: f64) -> Option<f64> {
        (c > 0.0).then(|| c + self.k * (c / self.k).ln() - self.rate * t)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlowParams {
    pub k: f64,
    pub rate: f64,
    /// Constant offset carried as metadata; it does not enter the flow.
    pub switchback_c: f64,
    pub dt: f64,
    pub t_end: f64,
}

impl FlowParams {
    pub fn new(k: f64, rate: f64, dt: f64, t_end: f64) -> Self {
        Self {
            k,
            rate,
            switchback_c: 0.0,
            dt,
            t_end,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.k > 0.0 && self.rate > 0.0 && self.dt > 0.0) {
            return Err(invalid("flow parameters need k > 0, rate > 0 and dt > 0"));
        }
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            return Err(invalid("t_end must be finite and nonnegative"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlowSample {
    pub t: f64,
    pub c_i: f64,
    pub c_d: f64,
    /// Largest change of the conserved quantity over the tracks that have
    /// one (tracks starting at the fixed point `C = 0` are excluded).
    pub invariant_drift: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlowTrajectory {
    pub params: FlowParams,
    pub samples: Vec<FlowSample>,
    pub ci_fixed_point: bool,
    pub cd_fixed_point: bool,
}

impl FlowTrajectory {
    pub fn max_drift(&self) -> f64 {
        self.samples.iter().map(|s| s.invariant_drift).fold(0.0, f64::max)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,c_i,c_d,invariant_drift\n");
        for s in &self.samples {
            let _ = writeln!(out, "{},{},{},{:e}", s.t, s.c_i, s.c_d, s.invariant_drift);
        }
        out
    }
}

fn rk4_step(f: &impl RateFunction, c: f64, dt: f64) -> f64 {
    let k1 = f.rate(c);
    let k2 = f.rate(c + 0.5 * dt * k1);
    let k3 = f.rate(c + 0.5 * dt * k2);
    let k4 = f.rate(c + dt * k3);
    c + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
}

/// Integrates both complexity tracks under the saturating flow.
pub fn integrate_flow(ci0: f64, cd0: f64, p: &FlowParams) -> Result<FlowTrajectory> {
    integrate_flow_with(&Saturating { k: p.k, rate: p.rate }, ci0, cd0, p)
}

/// Fixed-step fourth-order Runge–Kutta integration of `dC/dt = f(C)` for the
/// interference and distinguishability tracks independently.
pub fn integrate_flow_with(f: &impl RateFunction, ci0: f64, cd0: f64, p: &FlowParams) -> Result<FlowTrajectory> {
    p.validate()?;
    if !(ci0 >= 0.0 && cd0 >= 0.0 && ci0.is_finite() && cd0.is_finite()) {
        return Err(invalid("initial complexities must be finite and nonnegative"));
    }
    let steps = (p.t_end / p.dt).round() as usize;
    let inv0 = [f.invariant(ci0, 0.0), f.invariant(cd0, 0.0)];
    let drift = |c: [f64; 2], t: f64| -> f64 {
        c.iter()
            .zip(&inv0)
            .filter_map(|(&c, i0)| Some((f.invariant(c, t)? - (*i0)?).abs()))
            .fold(0.0, f64::max)
    };
    let mut c = [ci0, cd0];
    let mut samples = Vec::with_capacity(steps + 1);
    samples.push(FlowSample {
        t: 0.0,
        c_i: ci0,
        c_d: cd0,
        invariant_drift: 0.0,
    });
    for s in 1..=steps {
        // C = 0 is an exact fixed point; skip the arithmetic so it stays 0.
        for x in &mut c {
            if *x != 0.0 {
                *x = rk4_step(f, *x, p.dt);
            }
        }
        let t = s as f64 * p.dt;
        samples.push(FlowSample {
            t,
            c_i: c[0],
            c_d: c[1],
            invariant_drift: drift(c, t),
        });
    }
    Ok(FlowTrajectory {
        params: *p,
        samples,
        ci_fixed_point: ci0 == 0.0,
        cd_fixed_point: cd0 == 0.0,
    })
}
