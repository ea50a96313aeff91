//! Adaptive Dormand–Prince 5(4) integration with PI step-size control.
//!
//! Output is produced at a prescribed list of times by clipping steps so they
//! land on each output time exactly; no dense interpolation is involved.

use crate::error::{Error, Result};

/// Mixed error tolerance `atol + rtol * |y|` per component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rtol: f64,
    pub atol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            rtol: 1e-9,
            atol: 1e-12,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IntegratorStats {
    pub accepted: usize,
    pub rejected: usize,
    pub evaluations: usize,
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    pub stats: IntegratorStats,
}

/// Failure with the last accepted time and state attached.
#[derive(Debug, Clone)]
pub struct IntegrationFailure {
    pub error: Error,
    pub t: f64,
    pub y: Vec<f64>,
    pub stats: IntegratorStats,
}

#[derive(Debug, Clone, Copy)]
pub struct IntegratorOptions {
    pub tol: Tolerance,
    pub max_steps: usize,
    /// Steps below `min_step_fraction * |t_end - t_start|` count as collapse.
    pub min_step_fraction: f64,
}

impl Default for IntegratorOptions {
    fn default() -> Self {
        Self {
            tol: Tolerance::default(),
            max_steps: 1_000_000,
            min_step_fraction: 1e-12,
        }
    }
}

const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
/// Difference between the 5th- and 4th-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

const SAFETY: f64 = 0.9;
const FAC_MIN: f64 = 0.2;
const FAC_MAX: f64 = 10.0;
const BETA: f64 = 0.04;
const EXPO1: f64 = 0.2 - BETA * 0.75;

fn err_norm(err: &[f64], y: &[f64], y_new: &[f64], tol: Tolerance) -> f64 {
    let s: f64 = err
        .iter()
        .zip(y.iter().zip(y_new))
        .map(|(&e, (&a, &b))| {
            let sc = tol.atol + tol.rtol * a.abs().max(b.abs());
            (e / sc).powi(2)
        })
        .sum();
    (s / err.len().max(1) as f64).sqrt()
}

/// Integrates `y' = rhs(t, y)` from `times[0]` and returns the state at every
/// entry of `times` (which must be strictly monotone). `observe` sees every
/// accepted step.
pub fn integrate<F, O>(
    mut rhs: F,
    y0: &[f64],
    times: &[f64],
    opts: IntegratorOptions,
    mut observe: O,
) -> std::result::Result<Solution, IntegrationFailure>
where
    F: FnMut(f64, &[f64], &mut [f64]) -> Result<()>,
    O: FnMut(f64, &[f64]),
{
    let dim = y0.len();
    let mut stats = IntegratorStats::default();
    let t_start = times[0];
    let t_end = *times.last().unwrap();
    let span = (t_end - t_start).abs();
    let dir = if t_end >= t_start { 1.0 } else { -1.0 };
    let tol = opts.tol;

    let mut t = t_start;
    let mut y = y0.to_vec();
    let mut out_states = vec![y.clone()];
    let fail = |error: Error, t: f64, y: &[f64], stats: IntegratorStats| IntegrationFailure {
        error,
        t,
        y: y.to_vec(),
        stats,
    };
    if times.len() == 1 || span == 0.0 {
        return Ok(Solution {
            times: times.to_vec(),
            states: vec![y; times.len()],
            stats,
        });
    }

    let mut k: Vec<Vec<f64>> = vec![vec![0.0; dim]; 7];
    if let Err(e) = rhs(t, &y, &mut k[0]) {
        return Err(fail(e, t, &y, stats));
    }
    stats.evaluations += 1;

    // initial step (Hairer's heuristic)
    let mut h = {
        let sc: Vec<f64> = y.iter().map(|v| tol.atol + tol.rtol * v.abs()).collect();
        let norm = |v: &[f64]| {
            (v.iter().zip(&sc).map(|(a, s)| (a / s).powi(2)).sum::<f64>() / dim.max(1) as f64)
                .sqrt()
        };
        let d0 = norm(&y);
        let d1 = norm(&k[0]);
        let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
        let h0 = h0.min(span);
        let y1: Vec<f64> = y.iter().zip(&k[0]).map(|(a, f)| a + dir * h0 * f).collect();
        let mut f1 = vec![0.0; dim];
        if let Err(e) = rhs(t + dir * h0, &y1, &mut f1) {
            return Err(fail(e, t, &y, stats));
        }
        stats.evaluations += 1;
        let df: Vec<f64> = f1.iter().zip(&k[0]).map(|(a, b)| a - b).collect();
        let d2 = norm(&df) / h0;
        let dm = d1.max(d2);
        let h1 = if dm <= 1e-15 {
            (h0 * 1e-3).max(1e-6)
        } else {
            (0.01 / dm).powf(0.2)
        };
        (100.0 * h0).min(h1).min(span)
    };

    let mut fac_old: f64 = 1e-4;
    let mut stage = vec![0.0; dim];
    let mut y_new = vec![0.0; dim];
    let mut err = vec![0.0; dim];
    let mut next_out = 1;
    let snap = 1e-14 * span;

    while next_out < times.len() {
        if stats.accepted + stats.rejected >= opts.max_steps {
            return Err(fail(
                Error::TooManySteps {
                    t,
                    max_steps: opts.max_steps,
                },
                t,
                &y,
                stats,
            ));
        }
        if h < opts.min_step_fraction * span {
            return Err(fail(
                Error::StepCollapse {
                    t,
                    h,
                    hankel: Vec::new(),
                },
                t,
                &y,
                stats,
            ));
        }
        let target = times[next_out];
        let remaining = (target - t) * dir;
        let (step, lands) = if h >= remaining - snap {
            (remaining, true)
        } else {
            (h, false)
        };
        let hs = dir * step;

        let mut rhs_failed = None;
        for s in 1..7 {
            for i in 0..dim {
                let mut acc = 0.0;
                for (r, kr) in k.iter().enumerate().take(s) {
                    acc += A[s][r] * kr[i];
                }
                stage[i] = y[i] + hs * acc;
            }
            let ts = if s >= 5 { t + hs } else { t + C[s] * hs };
            if let Err(e) = rhs(ts, &stage, &mut k[s]) {
                rhs_failed = Some(e);
                break;
            }
            stats.evaluations += 1;
        }
        if let Some(e) = rhs_failed {
            return Err(fail(e, t, &y, stats));
        }
        // stage 7 was evaluated at the 5th-order solution
        y_new.copy_from_slice(&stage);
        for i in 0..dim {
            err[i] = hs * (0..7).map(|r| E[r] * k[r][i]).sum::<f64>();
        }
        let e = err_norm(&err, &y, &y_new, tol);

        let fac11 = e.powf(EXPO1);
        if e <= 1.0 {
            let fac = (fac11 / fac_old.powf(BETA) / SAFETY).clamp(1.0 / FAC_MAX, 1.0 / FAC_MIN);
            fac_old = e.max(1e-4);
            stats.accepted += 1;
            t = if lands { target } else { t + hs };
            std::mem::swap(&mut y, &mut y_new);
            k.swap(0, 6);
            observe(t, &y);
            if !y.iter().all(|v| v.is_finite()) {
                return Err(fail(
                    Error::StepCollapse {
                        t,
                        h: step,
                        hankel: Vec::new(),
                    },
                    t,
                    &y,
                    stats,
                ));
            }
            if lands {
                out_states.push(y.clone());
                next_out += 1;
            }
            let proposed = step / fac;
            // a clipped step says nothing about the admissible size
            h = if lands { proposed.max(h) } else { proposed };
        } else {
            stats.rejected += 1;
            h = step / (1.0 / FAC_MIN).min(fac11 / SAFETY);
        }
    }

    Ok(Solution {
        times: times.to_vec(),
        states: out_states,
        stats,
    })
}

/// Uniform grid of `count >= 2` times including both ends.
pub fn uniform_times(t0: f64, t1: f64, count: usize) -> Vec<f64> {
    let count = count.max(2);
    (0..count)
        .map(|i| {
            if i + 1 == count {
                t1
            } else {
                t0 + (t1 - t0) * i as f64 / (count - 1) as f64
            }
        })
        .collect()
}
