//! Orthonormal polynomials for generalized Jacobi weights whose endpoints move
//! with a parameter `t`.
//!
//! The crate computes recurrence coefficients and Laguerre ladder node values
//! by quadrature, integrates the closed differential system those quantities
//! satisfy as the endpoints move, integrates the linear flow of the weight's
//! moments, and cross-checks every flow against direct recomputation.
//!
//! Module map:
//! - [`weight`]: weights, endpoint trajectories, node interpolation
//! - [`quadrature`]: Gauss–Jacobi rules, composite integration, endpoint Stieltjes transforms
//! - [`orthopoly`]: Stieltjes procedure, polynomial evaluation, moments, Hankel determinants
//! - [`ladder`]: `Theta_n`/`Omega_n` node values and their identities
//! - [`evolution`]: the deformation flow of `(a_n, b_n, gamma_n, Theta, Omega)`
//! - [`moment_flow`]: the linear flow of the moment-like integrals `nu_{n,j}`
//! - [`config`]: JSON run configuration
//! - [`cli`]: commands and CSV output

pub mod cli;
pub mod config;
pub mod error;
pub mod evolution;
pub mod ladder;
pub mod moment_flow;
pub mod ode;
pub mod orthopoly;
pub mod quadrature;
pub mod weight;

pub use error::{Error, Result};

/// `max` that propagates NaN, for accumulating diagnostics.
pub(crate) fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}
pub use evolution::{evolve, EvolutionReport, EvolutionState};
pub use ladder::{ladder_init, ladder_step, LadderValues};
pub use ode::Tolerance;
pub use orthopoly::{stieltjes_procedure, RecurrenceTable};
pub use quadrature::{gauss_jacobi_rule, integrate_against_weight, QuadratureRule, DEFAULT_NPTS};
pub use weight::{EndpointTrajectory, GeneralizedJacobiWeight, NodeData};
