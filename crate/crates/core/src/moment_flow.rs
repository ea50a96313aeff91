//! Linear flow of the integrals
//!
//! ```text
//! nu_{n,j} = int w(u) prod_k (u - x_k)^beta_k (u - x_j)^{-1} du,
//! beta_1 = n + 1, beta_2 = ... = beta_m = 1,
//! ```
//!
//! which obey
//! `nu_j' = sum_{k != j} (xdot_j - xdot_k)(alpha_k + beta_k)(nu_j - nu_k) / (x_j - x_k)`.
//! The integrand is a polynomial times the weight, so plain absorbed
//! quadrature gives initial values and independent checks.

use crate::error::{Error, Result};
use crate::evolution::{hankel_profile, nodes_nearly_meet, EvolveOptions};
use crate::ode::{integrate, uniform_times, IntegratorOptions, IntegratorStats};
use crate::quadrature::DiscreteMeasure;
use crate::weight::{GeneralizedJacobiWeight, NodeData};

#[derive(Debug, Clone, PartialEq)]
pub struct MomentState {
    pub n: usize,
    pub t: f64,
    pub nu: Vec<f64>,
}

/// `[n + 1, 1, ..., 1]`.
pub fn betas(n: usize, m: usize) -> Vec<f64> {
    let mut b = vec![1.0; m];
    b[0] = n as f64 + 1.0;
    b
}

/// `nu_{n,j}` for all `j` by quadrature.
pub fn nu_by_quadrature(
    w: &GeneralizedJacobiWeight,
    n: usize,
    t: f64,
    npts: usize,
) -> Result<MomentState> {
    let x = w.trajectory().positions(t);
    let measure = DiscreteMeasure::new(w, t, npts)?;
    let nu = (0..x.len())
        .map(|j| {
            measure.integrate(|u| {
                let lead = (u - x[0]).powi(if j == 0 { n as i32 } else { n as i32 + 1 });
                lead * x
                    .iter()
                    .enumerate()
                    .skip(1)
                    .filter(|&(k, _)| k != j)
                    .map(|(_, &xk)| u - xk)
                    .product::<f64>()
            })
        })
        .collect();
    Ok(MomentState { n, t, nu })
}

pub fn moment_rhs(nu: &[f64], nodes: &NodeData, alpha: &[f64], beta: &[f64]) -> Result<Vec<f64>> {
    let m = nodes.m();
    if nu.len() != m || alpha.len() != m || beta.len() != m {
        return Err(Error::LengthMismatch(format!(
            "moment flow with {m} nodes: nu {}, alpha {}, beta {}",
            nu.len(),
            alpha.len(),
            beta.len()
        )));
    }
    if !nodes.x.windows(2).all(|p| p[0] < p[1]) {
        return Err(Error::NonDistinctEndpoints { t: nodes.t });
    }
    let (x, xd) = (&nodes.x, &nodes.xdot);
    Ok((0..m)
        .map(|j| {
            (0..m)
                .filter(|&k| k != j)
                .map(|k| (xd[j] - xd[k]) * (alpha[k] + beta[k]) * (nu[j] - nu[k]) / (x[j] - x[k]))
                .sum()
        })
        .collect())
}

#[derive(Debug, Clone)]
pub struct MomentReport {
    pub n: usize,
    pub samples: Vec<MomentState>,
    pub stats: IntegratorStats,
}

/// Integrates the flow from an arbitrary initial vector.
pub fn evolve_moment_vector(
    w: &GeneralizedJacobiWeight,
    n: usize,
    nu0: &[f64],
    t0: f64,
    t1: f64,
    opts: EvolveOptions,
) -> Result<MomentReport> {
    let beta = betas(n, w.m());
    let times = uniform_times(t0, t1, opts.samples);
    let rhs = |t: f64, y: &[f64], dy: &mut [f64]| -> Result<()> {
        let nodes = w.node_data(t)?;
        dy.copy_from_slice(&moment_rhs(y, &nodes, w.alpha(), &beta)?);
        Ok(())
    };
    let iopts = IntegratorOptions {
        tol: opts.tol,
        ..Default::default()
    };
    let sol = integrate(rhs, nu0, &times, iopts, |_, _| {}).map_err(|f| match f.error {
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
    })?;
    Ok(MomentReport {
        n,
        samples: sol
            .times
            .iter()
            .zip(sol.states)
            .map(|(&t, nu)| MomentState { n, t, nu })
            .collect(),
        stats: sol.stats,
    })
}

/// Integrates the flow from quadrature initial values at `t0`.
pub fn evolve_moments(
    w: &GeneralizedJacobiWeight,
    n: usize,
    t0: f64,
    t1: f64,
    opts: EvolveOptions,
) -> Result<MomentReport> {
    let init = nu_by_quadrature(w, n, t0, opts.npts).map_err(|e| Error::InitFailure(e.to_string()))?;
    evolve_moment_vector(w, n, &init.nu, t0, t1, opts)
}

/// `mu_n = int w (u - x_1)^n` against `nu_{n,1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuIdentity {
    pub mu: f64,
    pub nu1: f64,
    /// `|mu - nu1| / |mu|`.
    pub gap: f64,
}

impl MuIdentity {
    /// Whether the two values agree to relative tolerance `tol`.
    pub fn within(&self, tol: f64) -> bool {
        self.gap <= tol
    }
}

pub fn check_mu_identity(
    w: &GeneralizedJacobiWeight,
    n: usize,
    t: f64,
    npts: usize,
) -> Result<MuIdentity> {
    let x1 = w.trajectory().positions(t)[0];
    let mu = DiscreteMeasure::new(w, t, npts)?.integrate(|u| (u - x1).powi(n as i32));
    let nu1 = nu_by_quadrature(w, n, t, npts)?.nu[0];
    Ok(MuIdentity {
        mu,
        nu1,
        gap: (mu - nu1).abs() / mu.abs(),
    })
}

/// Smallest Hankel determinant `H_1..=H_order` over the given times.
pub fn min_hankel_along(
    w: &GeneralizedJacobiWeight,
    times: &[f64],
    order: usize,
    npts: usize,
) -> Result<f64> {
    let mut min = f64::INFINITY;
    for &t in times {
        for h in hankel_profile(w, t, order, npts)? {
            min = min.min(h);
        }
    }
    Ok(min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::EndpointTrajectory;
    use std::f64::consts::PI;

    #[test]
    fn zero_and_translation_velocities() {
        let x = [-1.0, 0.3, 1.0];
        let alpha = [0.5, 0.5, 0.5];
        let beta = betas(2, 3);
        let nu = [1.0, -2.0, 0.5];
        let fixed = NodeData::new(0.0, x.to_vec(), vec![0.0; 3]).unwrap();
        assert!(moment_rhs(&nu, &fixed, &alpha, &beta).unwrap().iter().all(|&v| v == 0.0));
        let shift = NodeData::new(0.0, x.to_vec(), vec![1.0; 3]).unwrap();
        assert!(moment_rhs(&nu, &shift, &alpha, &beta).unwrap().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn rhs_matches_quadrature_difference() {
        let w = GeneralizedJacobiWeight::new(
            vec![0.5, 1.5],
            vec![1.0],
            EndpointTrajectory::affine(&[-1.0, 1.0], &[0.3, 1.0]),
        )
        .unwrap();
        let h = 1e-4;
        for n in 0..4 {
            let s = nu_by_quadrature(&w, n, 0.2, 64).unwrap();
            let r = moment_rhs(&s.nu, &w.node_data(0.2).unwrap(), w.alpha(), &betas(n, 2)).unwrap();
            let p = nu_by_quadrature(&w, n, 0.2 + h, 64).unwrap();
            let q = nu_by_quadrature(&w, n, 0.2 - h, 64).unwrap();
            for j in 0..2 {
                let fd = (p.nu[j] - q.nu[j]) / (2.0 * h);
                assert!((fd - r[j]).abs() <= 1e-6 * r[j].abs().max(1.0), "n={n} j={j}: {fd} vs {}", r[j]);
            }
        }
    }

    #[test]
    fn chebyshev_second_kind_mass() {
        let w = GeneralizedJacobiWeight::fixed(vec![0.5, 0.5], &[-1.0, 1.0]).unwrap();
        let id = check_mu_identity(&w, 0, 0.0, 64).unwrap();
        assert!((id.mu - PI / 2.0).abs() < 1e-14);
        // nu_{0,1} = int w (u - 1) du = -pi/2 for this weight
        assert!((id.nu1 + PI / 2.0).abs() < 1e-14);
        assert!((id.gap - 2.0).abs() < 1e-13);
        assert!(!id.within(1e-6) && id.within(2.5));
    }

    #[test]
    fn symmetric_weight_signs() {
        // nu_{n,1} = int w (u+1)^n (u-1) < 0 and nu_{n,2} = int w (u+1)^{n+1} > 0
        let w = GeneralizedJacobiWeight::fixed(vec![0.5, 0.5], &[-1.0, 1.0]).unwrap();
        for n in 0..5 {
            let s = nu_by_quadrature(&w, n, 0.0, 64).unwrap();
            assert!(s.nu[0] < 0.0 && s.nu[1] > 0.0);
        }
    }
}
