//! The closed differential system satisfied by `a_n`, `b_n`, `gamma_n` and the
//! normalised ladder node values as the endpoints move.
//!
//! The state at fixed `n` is
//!
//! ```text
//! theta_j      = Theta_n(x_j)     / W'(x_j)
//! theta_prev_j = Theta_{n-1}(x_j) / W'(x_j)
//! omega_j      = Omega_n(x_j)     / W'(x_j)
//! ```
//!
//! together with `a_n`, `b_n`, `gamma_n`. With `c_jk = (xdot_j - xdot_k) / (x_j - x_k)`
//! and `g = gamma_n' / gamma_n`:
//!
//! ```text
//! a'/a          =  1/2 sum_k (theta_k - theta_prev_k) xdot_k
//! b'            =  sum_k ((x_k - b) theta_k - 2 omega_k) xdot_k
//! g             = -1/2 sum_k xdot_k theta_k
//! theta_j'      =  2 g theta_j - 2 sum_{k!=j} c_jk (theta_k omega_j - theta_j omega_k)
//! theta_prev_j' = -2 g_prev theta_prev_j + 2 sum_{k!=j} c_jk (theta_prev_k omega_j - theta_prev_j omega_k)
//! omega_j'      =  a^2 sum_{k!=j} c_jk (theta_j theta_prev_k - theta_k theta_prev_j)
//! ```
//!
//! where `g_prev = a'/a + g` follows from `gamma_{n-1} = a_n gamma_n`.
//! Everything here is cross-checked against [`direct_state`], which rebuilds
//! the state from quadrature at any `t`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ladder::{ladder_from_transforms, node_transforms};
use crate::ode::{integrate, uniform_times, IntegratorOptions, IntegratorStats, Tolerance};
use crate::orthopoly::{hankel_det, moments, stieltjes_procedure};
use crate::quadrature::DEFAULT_NPTS;
use crate::weight::{GeneralizedJacobiWeight, NodeData};

#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionState {
    pub t: f64,
    pub n: usize,
    pub a: f64,
    pub b: f64,
    pub gamma: f64,
    pub theta: Vec<f64>,
    pub theta_prev: Vec<f64>,
    pub omega: Vec<f64>,
}

/// Time derivative of an [`EvolutionState`].
#[derive(Debug, Clone, PartialEq)]
pub struct StateRates {
    pub a: f64,
    pub b: f64,
    pub gamma: f64,
    pub theta: Vec<f64>,
    pub theta_prev: Vec<f64>,
    pub omega: Vec<f64>,
}

impl EvolutionState {
    pub fn m(&self) -> usize {
        self.theta.len()
    }

    /// Flat layout `[a, b, gamma, theta.., theta_prev.., omega..]`.
    pub fn to_vec(&self) -> Vec<f64> {
        let mut v = vec![self.a, self.b, self.gamma];
        v.extend(&self.theta);
        v.extend(&self.theta_prev);
        v.extend(&self.omega);
        v
    }

    pub fn from_slice(t: f64, n: usize, y: &[f64]) -> Self {
        let m = (y.len() - 3) / 3;
        Self {
            t,
            n,
            a: y[0],
            b: y[1],
            gamma: y[2],
            theta: y[3..3 + m].to_vec(),
            theta_prev: y[3 + m..3 + 2 * m].to_vec(),
            omega: y[3 + 2 * m..3 + 3 * m].to_vec(),
        }
    }

    /// `[sum theta, sum theta_prev, sum x theta, sum x theta_prev, sum omega]`.
    pub fn conserved_sums(&self, x: &[f64]) -> [f64; 5] {
        let dot = |v: &[f64]| v.iter().zip(x).map(|(a, b)| a * b).sum::<f64>();
        [
            self.theta.iter().sum(),
            self.theta_prev.iter().sum(),
            dot(&self.theta),
            dot(&self.theta_prev),
            self.omega.iter().sum(),
        ]
    }
}

impl StateRates {
    pub fn to_vec(&self) -> Vec<f64> {
        let mut v = vec![self.a, self.b, self.gamma];
        v.extend(&self.theta);
        v.extend(&self.theta_prev);
        v.extend(&self.omega);
        v
    }
}

/// Values the five conserved sums take for a weight with exponent sum `alpha_sum`.
pub fn expected_sums(n: usize, alpha_sum: f64) -> [f64; 5] {
    let n = n as f64;
    [
        0.0,
        0.0,
        2.0 * n + 1.0 + alpha_sum,
        2.0 * n - 1.0 + alpha_sum,
        n + 0.5 * alpha_sum,
    ]
}

/// Builds the state at `t` from scratch: Stieltjes procedure for the
/// coefficients, then endpoint transforms for the ladder values.
pub fn direct_state(
    w: &GeneralizedJacobiWeight,
    n: usize,
    t: f64,
    npts: usize,
) -> Result<EvolutionState> {
    if n == 0 {
        return Err(Error::IndexOutOfRange { index: 0, max: 0 });
    }
    let table = stieltjes_procedure(w, t, n, npts)?;
    let nodes = w.node_data(t)?;
    let tr = node_transforms(w, &table, &nodes, n, npts)?;
    let lv = ladder_from_transforms(w, &table, &nodes, n, &tr);
    let norm = |v: &[f64]| -> Vec<f64> { v.iter().zip(&nodes.wprime).map(|(a, d)| a / d).collect() };
    Ok(EvolutionState {
        t,
        n,
        a: table.a[n],
        b: table.b[n],
        gamma: table.gamma[n],
        theta: norm(&lv.theta),
        theta_prev: norm(lv.theta_prev.as_deref().unwrap()),
        omega: norm(&lv.omega),
    })
}

/// Right-hand side of the deformation system.
pub fn evolution_rhs(state: &EvolutionState, nodes: &NodeData) -> Result<StateRates> {
    let m = state.m();
    if nodes.m() != m {
        return Err(Error::LengthMismatch(format!(
            "state has {m} nodes, node data has {}",
            nodes.m()
        )));
    }
    if !nodes.x.windows(2).all(|p| p[0] < p[1]) {
        return Err(Error::NonDistinctEndpoints { t: nodes.t });
    }
    let (x, xd) = (&nodes.x, &nodes.xdot);
    let (th, tp, om) = (&state.theta, &state.theta_prev, &state.omega);

    let mut a_log = 0.0;
    let mut b_rate = 0.0;
    let mut g = 0.0;
    for k in 0..m {
        a_log += 0.5 * (th[k] - tp[k]) * xd[k];
        b_rate += ((x[k] - state.b) * th[k] - 2.0 * om[k]) * xd[k];
        g -= 0.5 * xd[k] * th[k];
    }
    let g_prev = a_log + g;
    let a2 = state.a * state.a;

    let mut theta = vec![0.0; m];
    let mut theta_prev = vec![0.0; m];
    let mut omega = vec![0.0; m];
    for j in 0..m {
        let mut s_th = 0.0;
        let mut s_tp = 0.0;
        let mut s_om = 0.0;
        for k in (0..m).filter(|&k| k != j) {
            let c = (xd[j] - xd[k]) / (x[j] - x[k]);
            s_th += c * (th[k] * om[j] - th[j] * om[k]);
            s_tp += c * (tp[k] * om[j] - tp[j] * om[k]);
            s_om += c * (th[j] * tp[k] - th[k] * tp[j]);
        }
        theta[j] = 2.0 * g * th[j] - 2.0 * s_th;
        theta_prev[j] = -2.0 * g_prev * tp[j] + 2.0 * s_tp;
        omega[j] = a2 * s_om;
    }
    Ok(StateRates {
        a: state.a * a_log,
        b: b_rate,
        gamma: state.gamma * g,
        theta,
        theta_prev,
        omega,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct EvolveOptions {
    pub tol: Tolerance,
    /// Number of uniformly spaced output times, both ends included.
    pub samples: usize,
    /// Gauss points per piece for initialisation and diagnostics.
    pub npts: usize,
    /// Project onto the exact conserved sums at every output time.
    pub reproject: bool,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        Self {
            tol: Tolerance::default(),
            samples: 20,
            npts: DEFAULT_NPTS,
            reproject: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct EvolutionReport {
    pub n: usize,
    pub samples: Vec<EvolutionState>,
    pub stats: IntegratorStats,
    /// Conserved sums of the initial state.
    pub initial_sums: [f64; 5],
    /// Largest absolute change of each conserved sum over all accepted steps.
    pub max_drift: [f64; 5],
    pub min_a: f64,
    pub min_gamma: f64,
}

impl EvolutionReport {
    pub fn drift(&self) -> f64 {
        self.max_drift.iter().cloned().fold(0.0, crate::nan_max)
    }
}

/// Hankel determinants `H_1..=H_order` of the moments at `t`.
pub fn hankel_profile(
    w: &GeneralizedJacobiWeight,
    t: f64,
    order: usize,
    npts: usize,
) -> Result<Vec<f64>> {
    let mu = moments(w, t, 2 * order.max(1) - 2, npts)?;
    (1..=order).map(|k| hankel_det(&mu, k)).collect()
}

/// A step collapse within `1e-8` of the support width from a node
/// coincidence is reported as a collision rather than a pole candidate.
pub(crate) fn nodes_nearly_meet(w: &GeneralizedJacobiWeight, t: f64) -> bool {
    let x = w.trajectory().positions(t);
    let width = x[x.len() - 1] - x[0];
    x.windows(2).any(|p| p[1] - p[0] <= 1e-8 * width.abs())
}

/// Integrates the deformation system for fixed `n` from `t0` to `t1`.
pub fn evolve(
    w: &GeneralizedJacobiWeight,
    n: usize,
    t0: f64,
    t1: f64,
    opts: EvolveOptions,
) -> Result<EvolutionReport> {
    let init = direct_state(w, n, t0, opts.npts).map_err(|e| Error::InitFailure(e.to_string()))?;
    let times = uniform_times(t0, t1, opts.samples);
    let x0 = w.trajectory().positions(t0);
    let initial_sums = init.conserved_sums(&x0);
    let expected = expected_sums(n, w.alpha_sum());

    let mut max_drift = [0.0; 5];
    let mut min_a = init.a;
    let mut min_gamma = init.gamma;
    let mut stats = IntegratorStats::default();
    let mut samples = vec![init.clone()];
    let iopts = IntegratorOptions {
        tol: opts.tol,
        ..Default::default()
    };

    let segments: Vec<&[f64]> = if opts.reproject {
        times.windows(2).collect()
    } else {
        vec![&times[..]]
    };
    let mut y = init.to_vec();
    for seg in segments {
        let mut observe = |t: f64, y: &[f64]| {
            let s = EvolutionState::from_slice(t, n, y);
            let sums = s.conserved_sums(&w.trajectory().positions(t));
            for i in 0..5 {
                max_drift[i] = f64::max(max_drift[i], (sums[i] - initial_sums[i]).abs());
            }
            min_a = min_a.min(s.a);
            min_gamma = min_gamma.min(s.gamma);
        };
        let rhs = |t: f64, y: &[f64], dy: &mut [f64]| -> Result<()> {
            let nodes = w.node_data(t)?;
            let r = evolution_rhs(&EvolutionState::from_slice(t, n, y), &nodes)?;
            dy.copy_from_slice(&r.to_vec());
            Ok(())
        };
        let sol = match integrate(rhs, &y, seg, iopts, &mut observe) {
            Ok(sol) => sol,
            Err(f) => {
                return Err(match f.error {
                    Error::NonDistinctEndpoints { .. } => Error::EndpointCollision { last_good_t: f.t },
                    Error::StepCollapse { .. } if nodes_nearly_meet(w, f.t) => {
                        Error::EndpointCollision { last_good_t: f.t }
                    }
                    Error::StepCollapse { t, h, .. } => Error::StepCollapse {
                        t,
                        h,
                        hankel: hankel_profile(w, f.t, n + 1, opts.npts).unwrap_or_default(),
                    },
                    other => other,
                })
            }
        };
        stats.accepted += sol.stats.accepted;
        stats.rejected += sol.stats.rejected;
        stats.evaluations += sol.stats.evaluations;
        for (&t, ys) in sol.times.iter().zip(&sol.states).skip(1) {
            let mut s = EvolutionState::from_slice(t, n, ys);
            if opts.reproject {
                project_onto_sums(&mut s, &w.trajectory().positions(t), &expected);
                y = s.to_vec();
            }
            samples.push(s);
        }
    }
    if !(min_a > 0.0 && min_gamma > 0.0) {
        return Err(Error::StepCollapse {
            t: samples.last().map_or(t0, |s| s.t),
            h: 0.0,
            hankel: Vec::new(),
        });
    }
    Ok(EvolutionReport {
        n,
        samples,
        stats,
        initial_sums,
        max_drift,
        min_a,
        min_gamma,
    })
}

/// Least-norm correction of `theta`, `theta_prev` and `omega` so the five
/// sums take their exact values.
fn project_onto_sums(s: &mut EvolutionState, x: &[f64], expected: &[f64; 5]) {
    let m = x.len() as f64;
    let sx: f64 = x.iter().sum();
    let sxx: f64 = x.iter().map(|v| v * v).sum();
    let det = m * sxx - sx * sx;
    let fix = |v: &mut Vec<f64>, want_sum: f64, want_xsum: f64| {
        let r0 = v.iter().sum::<f64>() - want_sum;
        let r1 = v.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() - want_xsum;
        // solve [[m, sx], [sx, sxx]] l = r
        let l0 = (sxx * r0 - sx * r1) / det;
        let l1 = (m * r1 - sx * r0) / det;
        for (vi, xi) in v.iter_mut().zip(x) {
            *vi -= l0 + l1 * xi;
        }
    };
    fix(&mut s.theta, expected[0], expected[2]);
    fix(&mut s.theta_prev, expected[1], expected[3]);
    let shift = (s.omega.iter().sum::<f64>() - expected[4]) / m;
    s.omega.iter_mut().for_each(|v| *v -= shift);
}

/// Relative deviations of one evolved sample from direct recomputation.
#[derive(Debug, Clone, PartialEq)]
pub struct Deviation {
    pub t: f64,
    pub a: f64,
    pub b: f64,
    pub gamma: f64,
    pub theta: f64,
    pub theta_prev: f64,
    pub omega: f64,
    /// [`node_identity_residual`] of the evolved sample.
    pub ladder_residual: f64,
}

impl Deviation {
    /// Largest deviation among the state components.
    pub fn max(&self) -> f64 {
        [self.a, self.b, self.gamma, self.theta, self.theta_prev, self.omega]
            .into_iter()
            .fold(0.0, crate::nan_max)
    }
}

fn vec_dev(e: &[f64], d: &[f64]) -> f64 {
    let num = e.iter().zip(d).map(|(a, b)| (a - b).abs()).fold(0.0, crate::nan_max);
    let den = d.iter().map(|v| v.abs()).fold(0.0, crate::nan_max);
    if den > 0.0 {
        num / den
    } else {
        num
    }
}

/// Scalars are compared relative to their own size; `b` relative to
/// `max(|b|, half the support width)` since it may vanish by symmetry.
/// Vector groups use max-norms.
pub fn verify_against_direct(
    w: &GeneralizedJacobiWeight,
    report: &EvolutionReport,
    npts: usize,
) -> Result<Vec<Deviation>> {
    let n = report.n;
    report
        .samples
        .par_iter()
        .map(|s| {
            let d = direct_state(w, n, s.t, npts)?;
            let nodes = w.node_data(s.t)?;
            let half_width = 0.5 * nodes.width();
            Ok(Deviation {
                t: s.t,
                a: (s.a - d.a).abs() / d.a.abs(),
                b: (s.b - d.b).abs() / d.b.abs().max(half_width),
                gamma: (s.gamma - d.gamma).abs() / d.gamma.abs(),
                theta: vec_dev(&s.theta, &d.theta),
                theta_prev: vec_dev(&s.theta_prev, &d.theta_prev),
                omega: vec_dev(&s.omega, &d.omega),
                ladder_residual: node_identity_residual(s, w.alpha()),
            })
        })
        .collect()
}

/// `a^2 theta_j theta_prev_j - omega_j^2 + alpha_j^2 / 4` over the largest
/// term. The combination vanishes at every node for exact ladder values.
pub fn node_identity_residual(s: &EvolutionState, alpha: &[f64]) -> f64 {
    let mut worst = 0.0_f64;
    let mut scale = 0.0_f64;
    for j in 0..s.m() {
        let t1 = s.a * s.a * s.theta[j] * s.theta_prev[j];
        let t2 = s.omega[j] * s.omega[j];
        let t3 = 0.25 * alpha[j] * alpha[j];
        worst = crate::nan_max(worst, (t1 - t2 + t3).abs());
        scale = scale.max(t1.abs()).max(t2).max(t3);
    }
    if scale > 0.0 {
        worst / scale
    } else {
        worst
    }
}

/// `max |(direct(t+h) - direct(t-h)) / 2h - rhs(direct(t))|` for each `h`.
pub fn rhs_consistency(
    w: &GeneralizedJacobiWeight,
    n: usize,
    t: f64,
    steps: &[f64],
    npts: usize,
) -> Result<Vec<f64>> {
    let state = direct_state(w, n, t, npts)?;
    let rates = evolution_rhs(&state, &w.node_data(t)?)?.to_vec();
    steps
        .iter()
        .map(|&h| {
            let plus = direct_state(w, n, t + h, npts)?.to_vec();
            let minus = direct_state(w, n, t - h, npts)?.to_vec();
            Ok(plus
                .iter()
                .zip(&minus)
                .zip(&rates)
                .map(|((p, q), r)| ((p - q) / (2.0 * h) - r).abs())
                .fold(0.0, crate::nan_max))
        })
        .collect()
}

/// Finite-difference check of the formulas for `d p_n / dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeDerivativeCheck {
    /// Centred difference of `p_n(x, .)` at fixed `x`.
    pub fd: f64,
    /// Ladder-based expression for the partial derivative.
    pub rhs: f64,
    pub residual: f64,
    /// Same comparison along each endpoint `x_j(t)`.
    pub node_fd: Vec<f64>,
    pub node_rhs: Vec<f64>,
    pub node_residual: Vec<f64>,
}

impl TimeDerivativeCheck {
    pub fn max_residual(&self) -> f64 {
        self.node_residual.iter().cloned().fold(self.residual, f64::max)
    }
}

/// Compares
///
/// ```text
/// dp_n/dt (x) = g p_n(x) - sum_k xdot_k [(omega_k - alpha_k/2) p_n(x) - a_n theta_k p_{n-1}(x)] / (x - x_k)
/// ```
///
/// and its version along `x_j(t)` (the `k = j` terms cancel and `xdot_k`
/// becomes `xdot_j - xdot_k`) with centred differences of step `h`.
pub fn pn_time_derivative_check(
    w: &GeneralizedJacobiWeight,
    n: usize,
    x: f64,
    t: f64,
    h: f64,
    npts: usize,
) -> Result<TimeDerivativeCheck> {
    let nodes = w.node_data(t)?;
    if let Some(node) = nodes.x.iter().position(|&xk| xk == x) {
        return Err(Error::NodeCollision { node, v: 0.0 });
    }
    let state = direct_state(w, n, t, npts)?;
    let table = stieltjes_procedure(w, t, n, npts)?;
    let alpha = w.alpha();
    let m = nodes.m();
    let g = -0.5 * (0..m).map(|k| nodes.xdot[k] * state.theta[k]).sum::<f64>();
    let bracket = |k: usize, p: f64, p_prev: f64| {
        (state.omega[k] - 0.5 * alpha[k]) * p - state.a * state.theta[k] * p_prev
    };

    let pv = table.eval(n, x)?;
    let rhs = g * pv.p
        - (0..m)
            .map(|k| nodes.xdot[k] * bracket(k, pv.p, pv.p_prev) / (x - nodes.x[k]))
            .sum::<f64>();

    let tp = stieltjes_procedure(w, t + h, n, npts)?;
    let tm = stieltjes_procedure(w, t - h, n, npts)?;
    let fd = (tp.eval(n, x)?.p - tm.eval(n, x)?.p) / (2.0 * h);

    let xp = w.trajectory().positions(t + h);
    let xm = w.trajectory().positions(t - h);
    let mut node_fd = Vec::with_capacity(m);
    let mut node_rhs = Vec::with_capacity(m);
    for j in 0..m {
        node_fd.push((tp.eval(n, xp[j])?.p - tm.eval(n, xm[j])?.p) / (2.0 * h));
        let pj = table.eval(n, nodes.x[j])?;
        let sum: f64 = (0..m)
            .filter(|&k| k != j)
            .map(|k| {
                (nodes.xdot[j] - nodes.xdot[k]) * bracket(k, pj.p, pj.p_prev)
                    / (nodes.x[j] - nodes.x[k])
            })
            .sum();
        node_rhs.push(g * pj.p + sum);
    }
    let node_residual = node_fd
        .iter()
        .zip(&node_rhs)
        .map(|(a, b)| (a - b).abs())
        .collect();
    Ok(TimeDerivativeCheck {
        fd,
        rhs,
        residual: (fd - rhs).abs(),
        node_fd,
        node_rhs,
        node_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::EndpointTrajectory;

    fn m3(traj: EndpointTrajectory) -> GeneralizedJacobiWeight {
        GeneralizedJacobiWeight::new(vec![0.5, 0.5, 0.5], vec![1.0, 1.0], traj).unwrap()
    }

    #[test]
    fn zero_velocity_gives_zero_rates() {
        let w = m3(EndpointTrajectory::fixed(&[-1.0, 0.2, 1.0]));
        let s = direct_state(&w, 3, 0.0, 64).unwrap();
        let r = evolution_rhs(&s, &w.node_data(0.0).unwrap()).unwrap();
        assert!(r.to_vec().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn translation_rates() {
        let w = m3(EndpointTrajectory::affine(&[-1.0, 0.2, 1.0], &[1.0, 1.0, 1.0]));
        let s = direct_state(&w, 4, 0.0, 64).unwrap();
        let r = evolution_rhs(&s, &w.node_data(0.0).unwrap()).unwrap();
        assert!(r.a.abs() < 1e-12, "{}", r.a);
        assert!((r.b - 1.0).abs() < 1e-12, "{}", r.b);
        assert!(r.gamma.abs() < 1e-12 * s.gamma);
        for v in r.theta.iter().chain(&r.theta_prev).chain(&r.omega) {
            assert!(v.abs() < 1e-12);
        }
    }

    #[test]
    fn dilation_rates() {
        let x0 = [-1.0, 0.2, 1.0];
        let w = m3(EndpointTrajectory::affine(&x0, &x0));
        let s = direct_state(&w, 4, 0.0, 64).unwrap();
        let r = evolution_rhs(&s, &w.node_data(0.0).unwrap()).unwrap();
        assert!((r.a / s.a - 1.0).abs() < 1e-11);
        assert!((r.b - s.b).abs() < 1e-11);
    }

    #[test]
    fn initial_sums_match_leading_coefficients() {
        let w = m3(EndpointTrajectory::fixed(&[-1.0, 0.2, 1.0]));
        for n in 1..=8 {
            let s = direct_state(&w, n, 0.0, 64).unwrap();
            let sums = s.conserved_sums(&[-1.0, 0.2, 1.0]);
            let want = expected_sums(n, 1.5);
            for i in 0..5 {
                assert!((sums[i] - want[i]).abs() < 1e-9, "n={n} i={i}: {} vs {}", sums[i], want[i]);
            }
            assert!(node_identity_residual(&s, w.alpha()) < 1e-12);
        }
    }

    #[test]
    fn fixed_endpoints_keep_state() {
        let w = m3(EndpointTrajectory::fixed(&[-1.0, 0.2, 1.0]));
        let rep = evolve(&w, 3, 0.0, 1.0, EvolveOptions { samples: 5, ..Default::default() }).unwrap();
        let y0 = rep.samples[0].to_vec();
        for s in &rep.samples {
            for (a, b) in s.to_vec().iter().zip(&y0) {
                assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0));
            }
        }
    }

    #[test]
    fn collision_is_reported() {
        let w = m3(EndpointTrajectory::affine(&[-1.0, 0.2, 1.0], &[0.0, 1.0, 0.0]));
        match evolve(&w, 2, 0.0, 1.5, EvolveOptions::default()) {
            Err(Error::EndpointCollision { last_good_t }) => assert!(last_good_t <= 0.8 && last_good_t > 0.7),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn requires_positive_exponents() {
        let w = GeneralizedJacobiWeight::fixed(vec![0.0, 0.5], &[-1.0, 1.0]).unwrap();
        assert!(matches!(
            evolve(&w, 2, 0.0, 1.0, EvolveOptions::default()),
            Err(Error::InitFailure(_))
        ));
    }

    #[test]
    fn projection_hits_targets() {
        let w = m3(EndpointTrajectory::fixed(&[-1.0, 0.2, 1.0]));
        let mut s = direct_state(&w, 2, 0.0, 64).unwrap();
        s.theta[0] += 1e-3;
        s.omega[2] -= 1e-3;
        let want = expected_sums(2, 1.5);
        project_onto_sums(&mut s, &[-1.0, 0.2, 1.0], &want);
        let got = s.conserved_sums(&[-1.0, 0.2, 1.0]);
        for i in 0..5 {
            assert!((got[i] - want[i]).abs() < 1e-12);
        }
    }
}
