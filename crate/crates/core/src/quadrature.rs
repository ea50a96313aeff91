//! Gauss–Jacobi rules and composite integration against a generalized Jacobi weight.
//!
//! On each piece `[x_j, x_{j+1}]` the two endpoint factors are absorbed into a
//! Gauss–Jacobi rule on `[-1, 1]`; what remains (the piece constant, the far
//! endpoint factors and the integrand) is smooth on the closed piece.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, SymmetricEigen};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::weight::{GeneralizedJacobiWeight, NodeData};

/// Default number of Gauss points per piece.
pub const DEFAULT_NPTS: usize = 64;

/// Gauss rule for `(1 - s)^beta_right (1 + s)^beta_left` on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub beta_left: f64,
    pub beta_right: f64,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&s, &w)| w * f(s))
            .sum()
    }
}

/// `int_{-1}^{1} (1 - s)^a (1 + s)^b ds = 2^{a+b+1} Γ(a+1) Γ(b+1) / Γ(a+b+2)`.
pub fn jacobi_mass(beta_left: f64, beta_right: f64) -> f64 {
    let (a, b) = (beta_right, beta_left);
    ((a + b + 1.0) * std::f64::consts::LN_2 + ln_gamma(a + 1.0) + ln_gamma(b + 1.0)
        - ln_gamma(a + b + 2.0))
    .exp()
}

/// Monic Jacobi recurrence `(diag, offdiag^2)` for the reference weight.
fn jacobi_recurrence(npts: usize, beta_left: f64, beta_right: f64) -> (Vec<f64>, Vec<f64>) {
    let (a, b) = (beta_right, beta_left);
    let ab = a + b;
    let diag = (0..npts)
        .map(|k| {
            if k == 0 {
                (b - a) / (ab + 2.0)
            } else {
                let s = 2.0 * k as f64 + ab;
                (b * b - a * a) / (s * (s + 2.0))
            }
        })
        .collect();
    let off2 = (1..npts)
        .map(|k| {
            let k = k as f64;
            let s = 2.0 * k + ab;
            if k == 1.0 {
                // the general formula is 0/0 when a + b = -1
                4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab).powi(2) * (3.0 + ab))
            } else {
                4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0))
            }
        })
        .collect();
    (diag, off2)
}

/// Gauss–Jacobi rule from the eigen-decomposition of the Jacobi matrix.
pub fn gauss_jacobi_rule(npts: usize, beta_left: f64, beta_right: f64) -> Result<QuadratureRule> {
    if !(beta_left.is_finite() && beta_left > -1.0) {
        return Err(Error::BadExponent {
            index: 0,
            value: beta_left,
        });
    }
    if !(beta_right.is_finite() && beta_right > -1.0) {
        return Err(Error::BadExponent {
            index: 1,
            value: beta_right,
        });
    }
    if npts == 0 {
        return Err(Error::IndexOutOfRange { index: 0, max: 0 });
    }
    let (diag, off2) = jacobi_recurrence(npts, beta_left, beta_right);
    let mut t = DMatrix::<f64>::zeros(npts, npts);
    for (i, &d) in diag.iter().enumerate() {
        t[(i, i)] = d;
    }
    for (i, &o) in off2.iter().enumerate() {
        let o = o.sqrt();
        t[(i, i + 1)] = o;
        t[(i + 1, i)] = o;
    }
    let eig = SymmetricEigen::new(t);
    let mass = jacobi_mass(beta_left, beta_right);
    let mut pairs: Vec<(f64, f64)> = (0..npts)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)];
            (eig.eigenvalues[i], mass * v0 * v0)
        })
        .collect();
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
    Ok(QuadratureRule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
        beta_left,
        beta_right,
    })
}

type RuleKey = (usize, u64, u64);

/// Shared, memoised rule. Rules only depend on `npts` and the two exponents,
/// which stay fixed along a deformation.
pub fn cached_rule(npts: usize, beta_left: f64, beta_right: f64) -> Result<Arc<QuadratureRule>> {
    static CACHE: OnceLock<Mutex<HashMap<RuleKey, Arc<QuadratureRule>>>> = OnceLock::new();
    let key = (npts, beta_left.to_bits(), beta_right.to_bits());
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(rule) = cache.lock().unwrap().get(&key) {
        return Ok(Arc::clone(rule));
    }
    let rule = Arc::new(gauss_jacobi_rule(npts, beta_left, beta_right)?);
    cache.lock().unwrap().insert(key, Arc::clone(&rule));
    Ok(rule)
}

/// Discretisation of `w(., t) du` as points and positive masses.
#[derive(Debug, Clone)]
pub struct DiscreteMeasure {
    pub points: Vec<f64>,
    pub masses: Vec<f64>,
}

impl DiscreteMeasure {
    /// Composite absorbed rule over all `m - 1` pieces.
    pub fn new(w: &GeneralizedJacobiWeight, t: f64, npts: usize) -> Result<Self> {
        let nodes = w.node_data(t)?;
        let alpha = w.alpha();
        let mut points = Vec::with_capacity(npts * (nodes.m() - 1));
        let mut masses = Vec::with_capacity(points.capacity());
        for j in 0..nodes.m() - 1 {
            let rule = cached_rule(npts, alpha[j], alpha[j + 1])?;
            piece_samples(w, &nodes, j, &rule, alpha[j], alpha[j + 1], |u, mass| {
                points.push(u);
                masses.push(mass);
            });
        }
        Ok(Self { points, masses })
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.points
            .iter()
            .zip(&self.masses)
            .map(|(&u, &m)| m * f(u))
            .sum()
    }
}

/// Feeds `(u, mass)` for piece `j`, where `mass` already contains the rule
/// weight, the Jacobian and every factor of `w` except the absorbed ones.
/// `exp_left`/`exp_right` are the exponents the rule absorbed at `x_j`/`x_{j+1}`.
fn piece_samples<F: FnMut(f64, f64)>(
    w: &GeneralizedJacobiWeight,
    nodes: &NodeData,
    j: usize,
    rule: &QuadratureRule,
    exp_left: f64,
    exp_right: f64,
    mut sink: F,
) {
    let (lo, hi) = (nodes.x[j], nodes.x[j + 1]);
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    let scale = w.pieces()[j] * half.powf(exp_left + exp_right + 1.0);
    for (&s, &lambda) in rule.nodes.iter().zip(&rule.weights) {
        let u = mid + half * s;
        let smooth: f64 = nodes
            .x
            .iter()
            .zip(w.alpha())
            .enumerate()
            .filter(|&(k, _)| k != j && k != j + 1)
            .map(|(_, (&xk, &a))| (u - xk).abs().powf(a))
            .product();
        sink(u, scale * lambda * smooth);
    }
}

/// `int w(u, t) f(u) du` with `npts` absorbed Gauss points per piece.
pub fn integrate_against_weight<F: Fn(f64) -> f64>(
    w: &GeneralizedJacobiWeight,
    f: F,
    t: f64,
    npts: usize,
) -> Result<f64> {
    Ok(DiscreteMeasure::new(w, t, npts)?.integrate(f))
}

/// `q(x_j) = int w(u) p(u) / (x_j - u) du` at endpoint `j`.
///
/// On the pieces adjacent to `x_j` the factor `|u - x_j|^alpha_j / (x_j - u)`
/// becomes `±|u - x_j|^(alpha_j - 1)` and is absorbed into the rule, which is
/// admissible exactly when `alpha_j > 0`.
pub fn stieltjes_at_node<P: Fn(f64) -> f64>(
    w: &GeneralizedJacobiWeight,
    p: P,
    j: usize,
    t: f64,
    npts: usize,
) -> Result<f64> {
    let nodes = w.node_data(t)?;
    stieltjes_at_node_with(w, &nodes, p, j, npts)
}

/// As [`stieltjes_at_node`] with node data already evaluated.
pub fn stieltjes_at_node_with<P: Fn(f64) -> f64>(
    w: &GeneralizedJacobiWeight,
    nodes: &NodeData,
    p: P,
    j: usize,
    npts: usize,
) -> Result<f64> {
    let m = nodes.m();
    if j >= m {
        return Err(Error::IndexOutOfRange {
            index: j,
            max: m - 1,
        });
    }
    let alpha = w.alpha();
    if alpha[j] <= 0.0 {
        return Err(Error::DivergentTransform {
            node: j,
            alpha: alpha[j],
        });
    }
    let xj = nodes.x[j];
    let mut total = 0.0;
    for piece in 0..m - 1 {
        let (el, er, sign) = if piece + 1 == j {
            // left of x_j: x_j - u > 0
            (alpha[piece], alpha[j] - 1.0, 1.0)
        } else if piece == j {
            (alpha[j] - 1.0, alpha[piece + 1], -1.0)
        } else {
            (alpha[piece], alpha[piece + 1], 0.0)
        };
        let rule = cached_rule(npts, el, er)?;
        let mut acc = 0.0;
        piece_samples(w, nodes, piece, &rule, el, er, |u, mass| {
            acc += if sign == 0.0 {
                mass * p(u) / (xj - u)
            } else {
                sign * mass * p(u)
            };
        });
        total += acc;
    }
    Ok(total)
}
